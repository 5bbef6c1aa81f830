import numpy as np
import scipy.linalg

from .base import OperatorNotHermitian, Basis, Boundary

# Relative to the largest matrix element
HERMITIAN_TOLERANCE = 1e-12


class HermitianOperator(object):
    """
    Dense complex Hermitian matrix with a labelled basis.

    Args:
        entries (array-like): Square matrix. It is copied and stored read-only.
        basis (Basis): The basis the matrix is written in, or None.
        labels (list[str]): One label per basis vector. Defaults to
            'e_0', 'e_1', ...
        boundary (Boundary): Boundary of the ladder this operator was built
            from, when there is one.

    Raises:
        OperatorNotHermitian: if the matrix is not square, or
            max|H - H^dagger| exceeds 1e-12 times max|H_ij|.
    """
    def __init__(self, entries, basis=None, labels=None, boundary=None):
        m = np.array(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise OperatorNotHermitian("Operator must be a square matrix, got shape {}"
                                       .format(m.shape))
        scale = np.max(np.abs(m)) if m.size else 0.0
        deviation = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if deviation > HERMITIAN_TOLERANCE * scale:
            raise OperatorNotHermitian("max|H - H^dagger| = {:.3g} exceeds tolerance"
                                       .format(deviation))
        m.setflags(write=False)
        self._entries = m

        if labels is None:
            labels = ['e_{}'.format(i) for i in range(m.shape[0])]
        if len(labels) != m.shape[0]:
            raise ValueError("Expected {} labels, got {}".format(m.shape[0], len(labels)))
        self._labels = tuple(labels)
        self._basis = Basis(basis) if basis is not None else None
        self._boundary = Boundary(boundary) if boundary is not None else None

    @property
    def dim(self):
        return self._entries.shape[0]

    @property
    def entries(self):
        return self._entries

    @property
    def basis(self):
        return self._basis

    @property
    def labels(self):
        return self._labels

    @property
    def boundary(self):
        return self._boundary

    def index(self, label):
        """
        Position of a basis label.

        Example:
            >>> h.entries[h.index('a_0'), h.index('b_0')]
        """
        try:
            return self._labels.index(label)
        except ValueError:
            raise KeyError("No basis vector labelled '{}'".format(label))

    def block(self, i, j):
        """The 2x2 block coupling rung i to rung j (interleaved bases only)."""
        return self._entries[2 * i:2 * i + 2, 2 * j:2 * j + 2]

    def eigenvalues(self):
        """Eigenvalues in ascending order."""
        return scipy.linalg.eigvalsh(self._entries)

    def __repr__(self):
        basis = self._basis.value if self._basis is not None else 'unlabelled'
        return "<HermitianOperator: dim={} basis={}>".format(self.dim, basis)
