import logging

import numpy as np
import scipy.linalg

from ..lattice.operator import HermitianOperator
from ..table import ResultTable

logger = logging.getLogger(__name__)


class EigenvalueTable(ResultTable):
    """Sorted eigenvalues of one operator."""
    columns = ('index', 'energy')

    def __init__(self, eigenvalues):
        self.eigenvalues = np.sort(np.asarray(eigenvalues, dtype=float))

    def rows(self):
        return [(i, float(e)) for i, e in enumerate(self.eigenvalues)]

    def __repr__(self):
        return "<EigenvalueTable: {} levels>".format(len(self.eigenvalues))


def eigensystem(h):
    """
    Full eigendecomposition of a Hermitian operator.

    Args:
        h (HermitianOperator or array): The operator. A bare matrix is
            checked for Hermiticity first.

    Returns:
        (numpy.ndarray, numpy.ndarray): Eigenvalues in ascending order and
        the matching orthonormal eigenvectors as columns.

    Raises:
        OperatorNotHermitian: for a non-Hermitian matrix.

    Example:
        >>> values, vectors = eigensystem(build_hamiltonian(LadderSpec()))
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    values, vectors = scipy.linalg.eigh(h.entries)
    logger.debug("Diagonalized %r, spectrum [%.6g, %.6g]", h, values[0], values[-1])
    return values, vectors
