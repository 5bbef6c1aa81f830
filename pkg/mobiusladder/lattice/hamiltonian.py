"""
Site-basis Hamiltonian of the ladder and its pseudo-spin decomposition.

The site basis is interleaved, (a_0, b_0, a_1, b_1, ...), so that rung j
occupies the 2x2 block starting at index 2j. Writing A_j = (a_j, b_j),

    H = sum_j A_j^dagger M_j A_j - xi sum_j (A_j^dagger A_{j+1} + h.c.),
    M_j = eps_j sigma_z - V_j sigma_x,

with A_N = sigma_x A_0 on a Moebius ladder and A_N = A_0 on an ordinary
ring. The rung rotation c_{j,up} = exp(-i phi_j/2) (a_j - b_j)/sqrt(2),
c_{j,down} = (a_j + b_j)/sqrt(2) turns the twisted closure into an ordinary
periodic one and moves the twist into the hopping of the up channel.
"""
import logging

import numpy as np

from .base import Basis, Boundary, Channel, LadderInvalidType
from .operator import HermitianOperator

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def site_labels(n_sites):
    return [fmt.format(j) for j in range(n_sites) for fmt in ('a_{}', 'b_{}')]


def pseudospin_labels(n_sites):
    return [fmt.format(j) for j in range(n_sites) for fmt in ('c_{}_up', 'c_{}_down')]


def channel_labels(n_sites, channel):
    return ['c_{}_{}'.format(j, Channel(channel).value) for j in range(n_sites)]


class PseudoSpinForm(object):
    """
    The gauge structure exposed by the pseudo-spin rotation.

    Args:
        omega_field (array): (N, 3) texture vectors Omega_j; the on-site
            block of rung j is Omega_j . sigma.
        twist_matrix (array): 2x2 diagonal Q; the hopping block is -xi Q.
    """
    def __init__(self, omega_field, twist_matrix):
        self._omega = np.array(omega_field, dtype=float)
        self._twist = np.array(twist_matrix, dtype=complex)
        if self._omega.ndim != 2 or self._omega.shape[1] != 3:
            raise ValueError("omega_field must have shape (N, 3)")
        if self._twist.shape != (2, 2) or self._twist[0, 1] != 0 or self._twist[1, 0] != 0:
            raise ValueError("twist_matrix must be a diagonal 2x2 matrix")
        if not np.allclose(np.abs(np.diag(self._twist)), 1.0, atol=1e-12):
            raise ValueError("twist_matrix entries must be pure phases")
        self._omega.setflags(write=False)
        self._twist.setflags(write=False)

    @property
    def omega_field(self):
        return self._omega

    @property
    def twist_matrix(self):
        return self._twist

    def __repr__(self):
        return "<PseudoSpinForm: N={} Q=diag({:.6g}, {:.6g})>".format(
            len(self._omega), self._twist[0, 0], self._twist[1, 1])


def build_hamiltonian(spec):
    """
    Builds the 2N x 2N site-basis Hamiltonian.

    Args:
        spec (LadderSpec): The ladder.

    Returns:
        HermitianOperator in the SITE_AB basis.
    """
    n = spec.n_sites
    xi = spec.hopping
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(n):
        h[2 * j:2 * j + 2, 2 * j:2 * j + 2] = (spec.onsite_bias[j] * SIGMA_Z
                                               - spec.rung_couplings[j] * SIGMA_X)
    hop = -xi * IDENTITY
    for j in range(n - 1):
        h[2 * j:2 * j + 2, 2 * j + 2:2 * j + 4] = hop
        h[2 * j + 2:2 * j + 4, 2 * j:2 * j + 2] = hop.conj().T

    if spec.boundary is Boundary.MOEBIUS:
        closing = -xi * SIGMA_X
    else:
        closing = -xi * IDENTITY
    last = 2 * (n - 1)
    h[last:last + 2, 0:2] = closing
    h[0:2, last:last + 2] = closing.conj().T
    logger.debug("Built %s site Hamiltonian with N=%d", spec.boundary.value, n)
    return HermitianOperator(h, Basis.SITE_AB, site_labels(n), boundary=spec.boundary)


def _rung_unitary(n_sites, twisted):
    u = np.zeros((2 * n_sites, 2 * n_sites), dtype=complex)
    for j in range(n_sites):
        p = np.exp(-1j * np.pi * j / n_sites) if twisted else 1.0
        u[2 * j:2 * j + 2, 2 * j:2 * j + 2] = np.array([[p, -p], [1, 1]]) / np.sqrt(2)
    return u


def rung_unitary(spec):
    """
    Block-diagonal unitary U taking site amplitudes to pseudo-spin amplitudes.

    A state psi in the site basis has pseudo-spin amplitudes U psi, and an
    operator H becomes U H U^dagger. Moebius ladders get the phase
    exp(-i phi_j/2) on the up component; ordinary rings get none.
    """
    return _rung_unitary(spec.n_sites, spec.boundary is Boundary.MOEBIUS)


def to_pseudospin_basis(h):
    """
    Rewrites a Moebius site-basis Hamiltonian in the pseudo-spin basis.

    Args:
        h (HermitianOperator): Output of :func:`build_hamiltonian` for a
            Moebius ladder.

    Returns:
        (HermitianOperator, PseudoSpinForm): The rotated operator with
        on-site blocks Omega_j . sigma, hopping -xi Q and periodic closure,
        and the extracted Omega field and Q.

    Raises:
        LadderInvalidType: for ordinary-ring input or a non-site basis.
    """
    if h.basis is not Basis.SITE_AB:
        raise LadderInvalidType("Expected a site-basis operator, got basis {}"
                                .format(h.basis))
    if h.boundary is not Boundary.MOEBIUS:
        raise LadderInvalidType("The pseudo-spin rotation needs the twisted boundary, "
                                "got {}".format(h.boundary))
    n = h.dim // 2
    u = _rung_unitary(n, twisted=True)
    m = u @ h.entries @ u.conj().T
    m = 0.5 * (m + m.conj().T)

    omega = np.empty((n, 3))
    for j in range(n):
        blk = m[2 * j:2 * j + 2, 2 * j:2 * j + 2]
        # blk = [[Oz, Ox - i Oy], [Ox + i Oy, -Oz]]
        omega[j] = (blk[0, 1].real, -blk[0, 1].imag, 0.5 * (blk[0, 0] - blk[1, 1]).real)
    form = PseudoSpinForm(omega, np.diag([np.exp(1j * np.pi / n), 1.0]))
    op = HermitianOperator(m, Basis.PSEUDO_SPIN, pseudospin_labels(n), boundary=h.boundary)
    return op, form


def _ring(onsite, hop):
    n = len(onsite)
    m = np.diag(np.asarray(onsite, dtype=complex))
    for j in range(n):
        k = (j + 1) % n
        m[j, k] += -hop
        m[k, j] += -np.conj(hop)
    return m


def channel_hamiltonians(spec):
    """
    The two decoupled N-site rings of an unbiased ladder.

    H_up = +V_j - (xi_up shift + h.c.) and H_down = -V_j - (xi shift + h.c.),
    both with periodic closure. On a Moebius ladder xi_up = xi exp(i pi/N);
    on an ordinary ring both channels are untwisted.

    Args:
        spec (LadderSpec): Ladder with eps_j = 0.

    Returns:
        (HermitianOperator, HermitianOperator): H_up and H_down.

    Raises:
        LadderInvalidType: if any eps_j is nonzero.
    """
    if spec.has_bias:
        raise LadderInvalidType("Channels only decouple for zero on-site bias")
    n = spec.n_sites
    twist = np.exp(1j * np.pi / n) if spec.boundary is Boundary.MOEBIUS else 1.0
    up = _ring(spec.rung_couplings, spec.hopping * twist)
    down = _ring(-spec.rung_couplings, spec.hopping)
    return (HermitianOperator(up, Basis.PSEUDO_SPIN, channel_labels(n, Channel.UP),
                              boundary=spec.boundary),
            HermitianOperator(down, Basis.PSEUDO_SPIN, channel_labels(n, Channel.DOWN),
                              boundary=spec.boundary))


def channel_dispersion(n_sites, hopping, zeeman, channel, boundary=Boundary.MOEBIUS):
    """
    Closed-form levels of one channel, sorted ascending.

    E_down(n) = -V - 2 xi cos(2 pi n/N) and, on a Moebius ladder,
    E_up(n) = V - 2 xi cos((2n+1) pi/N). Ordinary rings use the untwisted
    form for both channels.
    """
    channel = Channel(channel)
    n = np.arange(n_sites)
    if channel is Channel.UP and Boundary(boundary) is Boundary.MOEBIUS:
        k = (2 * n + 1) * np.pi / n_sites
    else:
        k = 2 * np.pi * n / n_sites
    return np.sort(channel.sign * zeeman - 2 * hopping * np.cos(k))


def loop_phase(h, channel=None):
    """
    Gauge-invariant phase picked up by going once round a channel.

    The product of the normalized bonds -H_{j,j+1}/|H_{j,j+1}| round the
    loop: -1 for the up channel of a Moebius ladder, +1 otherwise.

    Args:
        h (HermitianOperator): A pseudo-spin operator (dim 2N, give the
            channel) or a single channel ring (dim N, channel omitted).
        channel (Channel): Which channel to follow in a 2N operator.
    """
    m = h.entries
    if channel is None:
        idx = np.arange(h.dim)
    else:
        idx = np.arange(Channel(channel).offset, h.dim, 2)
    n = len(idx)
    bonds = np.array([-m[idx[j], idx[(j + 1) % n]] for j in range(n)])
    if np.any(bonds == 0):
        raise LadderInvalidType("Loop is broken: a bond along the channel vanishes")
    return complex(np.prod(bonds / np.abs(bonds)))
