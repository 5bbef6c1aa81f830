"""
Pseudo-spin coherence of an electron released from site a_0.

a_0 is an equal superposition of the two channels, so the state factorizes
at t = 0. Each channel then spreads round the ring with its own propagator
and the overlap

    D(t) = <psi_down(t)|psi_up(t)> = 1/2 sum_j G_down(j, t)^* G_up(j, t)

measures how much pseudo-spin coherence is left. The winding expansion
of both propagators gives the closed form

    D(t) = 1/2 exp(-2iVt) sum_d (-i)^d J_{dN}(2 xi' t),  xi' = 2 xi sin(pi/2N).

The series also carries the closed form in the opposite phase convention,
1/2 exp(2iVt) sum_d i^d J_{dN}(2 xi' t), which is the complex conjugate.
"""
import logging

import numpy as np
import scipy.special

from ..lattice.base import Boundary, Channel
from ..lattice.spec import LadderSpec
from ..table import ResultTable
from .propagate import WINDING_MARGIN, WavepacketState, _twist_angle, _winding_sum, evolve_many

logger = logging.getLogger(__name__)

# |D| may exceed 1/2 by this much before it is treated as an error
COHERENCE_SLACK = 1e-12


class CoherenceOutOfRange(Exception):
    """Raised when |D| exceeds 1/2 by more than numerical noise"""
    pass


def _envelope(n_sites, hopping, time_grid):
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.sqrt(n_sites / (2 * np.pi * hopping * np.asarray(time_grid, dtype=float)))


def _bessel_closed_form(n_sites, xi_prime, zeeman, time_grid):
    out = np.empty(len(time_grid), dtype=complex)
    for i, t in enumerate(time_grid):
        x = 2 * xi_prime * t
        dmax = int(np.floor((x + WINDING_MARGIN) / n_sites))
        deltas = np.arange(-dmax, dmax + 1)
        total = np.sum((1j ** deltas) * scipy.special.jv(deltas * n_sites, x))
        out[i] = 0.5 * np.exp(2j * zeeman * t) * total
    return out


class DecoherenceSeries(ResultTable):
    """
    D(t) from direct evolution next to its two closed forms.

    Args:
        time_grid (array): Times.
        d_direct (array): Overlap from unitary evolution.
        d_bessel (array): 1/2 exp(2iVt) sum_d i^d J_{dN}(2 xi' t).
        d_winding (array): 1/2 sum_j G_down^* G_up from the winding sums.
        envelope (array): sqrt(N / (2 pi xi t)).
        xi_prime (float): 2 xi sin(theta/2), zero without a twist.
    """
    columns = ('t', 'ReD_direct', 'ImD_direct', 'absD_direct', 'absD_bessel', 'envelope',
               'entropy')

    def __init__(self, time_grid, d_direct, d_bessel, d_winding, envelope, xi_prime):
        self.time_grid = np.asarray(time_grid, dtype=float)
        self.d_direct = np.asarray(d_direct, dtype=complex)
        self.d_bessel = np.asarray(d_bessel, dtype=complex)
        self.d_winding = np.asarray(d_winding, dtype=complex)
        self.envelope = np.asarray(envelope, dtype=float)
        self.xi_prime = xi_prime

    @classmethod
    def concatenate(cls, series):
        series = list(series)
        return cls(np.concatenate([s.time_grid for s in series]),
                   np.concatenate([s.d_direct for s in series]),
                   np.concatenate([s.d_bessel for s in series]),
                   np.concatenate([s.d_winding for s in series]),
                   np.concatenate([s.envelope for s in series]),
                   series[0].xi_prime)

    def rows(self):
        entropy = entanglement_entropy(self).entropy
        return [(float(t), float(d.real), float(d.imag), float(abs(d)), float(abs(b)),
                 float(e), float(s))
                for t, d, b, e, s in zip(self.time_grid, self.d_direct, self.d_bessel,
                                         self.envelope, entropy)]

    def __repr__(self):
        return "<DecoherenceSeries: {} times, xi'={:.6g}>".format(len(self.time_grid), self.xi_prime)


class EntanglementSeries(ResultTable):
    """Von Neumann entropy of the reduced pseudo-spin state."""
    columns = ('t', 'entropy')

    def __init__(self, time_grid, entropy):
        self.time_grid = np.asarray(time_grid, dtype=float)
        self.entropy = np.asarray(entropy, dtype=float)

    def rows(self):
        return [(float(t), float(s)) for t, s in zip(self.time_grid, self.entropy)]


def decoherence_factor(n_sites, hopping, zeeman, time_grid, boundary=Boundary.MOEBIUS):
    """
    Decoherence factor of an electron started on a_0.

    Args:
        n_sites (int): N.
        hopping (float): xi.
        zeeman (float): Uniform rung coupling V.
        time_grid (array): Nonnegative, ascending times.
        boundary (Boundary): PERIODIC gives the untwisted control, where
            |D| stays at 1/2.

    Returns:
        DecoherenceSeries

    Examples:
        >>> series = decoherence_factor(50, 1.0, 50.0, np.linspace(0, 75, 2000))
        >>> abs(series.d_direct[0])
        0.5
    """
    time_grid = np.asarray(time_grid, dtype=float)
    if time_grid.ndim != 1 or np.any(time_grid < 0) or np.any(np.diff(time_grid) < 0):
        raise ValueError("time_grid must be a nonnegative ascending sequence")
    spec = LadderSpec(n_sites=n_sites, hopping=hopping, rung_couplings=zeeman, boundary=boundary)

    states = evolve_many(spec, WavepacketState.localized(spec), time_grid)
    d_direct = np.array([np.vdot(s.channel_amplitudes(Channel.DOWN),
                                 s.channel_amplitudes(Channel.UP)) for s in states])

    theta_up = _twist_angle(Channel.UP, n_sites, boundary)
    theta_down = _twist_angle(Channel.DOWN, n_sites, boundary)
    d_winding = np.empty(len(time_grid), dtype=complex)
    for i, t in enumerate(time_grid):
        g_up = _winding_sum(t, theta_up, n_sites, hopping)
        g_down = _winding_sum(t, theta_down, n_sites, hopping)
        d_winding[i] = 0.5 * np.exp(-2j * zeeman * t) * np.vdot(g_down, g_up)

    xi_prime = 2 * hopping * np.sin((theta_up - theta_down) / 2)
    d_bessel = _bessel_closed_form(n_sites, xi_prime, zeeman, time_grid)
    logger.debug("Decoherence factor for N=%d over %d times", n_sites, len(time_grid))
    return DecoherenceSeries(time_grid, d_direct, d_bessel, d_winding,
                             _envelope(n_sites, hopping, time_grid), xi_prime)


def entropy_from_coherence(coherence):
    """
    Entropy of a pseudo-spin whose reduced density matrix has eigenvalues
    1/2 +- |D|.

    Args:
        coherence (array): |D| values.

    Raises:
        CoherenceOutOfRange: if any |D| exceeds 1/2 by more than 1e-12.

    Examples:
        >>> entropy_from_coherence([0.5, 0.25, 0.0])
        array([0.        , 0.56233514, 0.69314718])
    """
    coherence = np.abs(np.asarray(coherence, dtype=float))
    excess = coherence - 0.5
    if np.any(excess > COHERENCE_SLACK):
        raise CoherenceOutOfRange("|D| = {!r} exceeds 1/2".format(coherence.max()))
    if np.any(excess > 0):
        logger.warning("Clipping |D| = %r to 1/2", coherence.max())
        coherence = np.minimum(coherence, 0.5)
    return scipy.special.entr(0.5 + coherence) + scipy.special.entr(0.5 - coherence)


def entanglement_entropy(series):
    """
    Pseudo-spin entanglement entropy along a DecoherenceSeries.

    Returns:
        EntanglementSeries
    """
    return EntanglementSeries(series.time_grid, entropy_from_coherence(np.abs(series.d_direct)))
