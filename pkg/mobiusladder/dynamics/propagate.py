"""
Unitary evolution of a single electron on an unbiased ladder.

With eps_j = 0 and a uniform rung coupling V the pseudo-spin channels
decouple, H = diag(H_up, H_down), and each channel is a ring with hopping
xi exp(i theta_chi) and a constant on-site term +-V. The constant is
applied as a phase; the kinetic part is diagonalized once per channel.

On an infinite chain with bond phase theta the propagator is
exp(i j (pi/2 - theta)) J_j(2 xi t). On the ring the images j + kN add up:

    G_chi(j, t) = exp(-+ i V t) sum_k exp(i j_k (pi/2 - theta_chi)) J_{j_k}(2 xi t),

with theta_up = pi/N on a Moebius ladder and zero otherwise.
"""
import logging

import numpy as np
import scipy.linalg
import scipy.special

from ..lattice.base import Basis, Boundary, Channel, LadderInvalidType
from ..lattice.hamiltonian import channel_hamiltonians, rung_unitary

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
# |J_m(x)| < 1e-16 once |m| > x + this
WINDING_MARGIN = 40


class WavepacketInvalidData(ValueError):
    """Raised when a wavepacket is not normalized or has the wrong shape"""
    pass


class WavepacketState(object):
    """
    One-electron state on a ladder of N rungs.

    Args:
        amplitudes (array): 2N complex amplitudes, interleaved per rung:
            (a_j, b_j) in the site basis, (c_j_up, c_j_down) in the
            pseudo-spin basis.
        time (float): t >= 0, in units of 1/xi.
        basis (Basis): SITE_AB or PSEUDO_SPIN.

    Raises:
        WavepacketInvalidData: unless the norm is 1 to within 1e-10.
    """
    def __init__(self, amplitudes, time=0.0, basis=Basis.PSEUDO_SPIN):
        amps = np.array(amplitudes, dtype=complex)
        if amps.ndim != 1 or len(amps) % 2:
            raise WavepacketInvalidData("amplitudes must be a vector of even length, "
                                        "got shape {}".format(amps.shape))
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > NORM_TOLERANCE:
            raise WavepacketInvalidData("Wavepacket norm is {!r}, expected 1".format(norm))
        if time < 0:
            raise WavepacketInvalidData("time must be >= 0, got {}".format(time))
        amps.setflags(write=False)
        self._amplitudes = amps
        self._time = float(time)
        self._basis = Basis(basis)
        if self._basis not in (Basis.SITE_AB, Basis.PSEUDO_SPIN):
            raise WavepacketInvalidData("Wavepackets live in the site or pseudo-spin "
                                        "basis, got {}".format(self._basis))

    @classmethod
    def localized(cls, spec, rung=0, edge='a', basis=Basis.PSEUDO_SPIN):
        """
        An electron sitting on one site.

        Args:
            spec (LadderSpec): The ladder.
            rung (int): Rung index j.
            edge (str): 'a' or 'b'.
            basis (Basis): Basis to express the state in.

        Example:
            >>> psi = WavepacketState.localized(LadderSpec(n_sites=50))
            >>> psi.channel_amplitudes(Channel.UP)[0]
            (0.7071067811865475+0j)
        """
        if edge not in ('a', 'b'):
            raise WavepacketInvalidData("edge must be 'a' or 'b', got {!r}".format(edge))
        if not 0 <= rung < spec.n_sites:
            raise WavepacketInvalidData("rung must lie in [0, {}), got {}"
                                        .format(spec.n_sites, rung))
        amps = np.zeros(2 * spec.n_sites, dtype=complex)
        amps[2 * rung + (0 if edge == 'a' else 1)] = 1.0
        return cls(amps, basis=Basis.SITE_AB).to_basis(spec, basis)

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def time(self):
        return self._time

    @property
    def basis(self):
        return self._basis

    @property
    def n_sites(self):
        return len(self._amplitudes) // 2

    def norm(self):
        return float(np.linalg.norm(self._amplitudes))

    def to_basis(self, spec, basis):
        """The same state written in another basis of the given ladder."""
        basis = Basis(basis)
        if basis is self._basis:
            return self
        u = rung_unitary(spec)
        if basis is Basis.PSEUDO_SPIN:
            amps = u @ self._amplitudes
        else:
            amps = u.conj().T @ self._amplitudes
        return WavepacketState(amps, self._time, basis)

    def channel_amplitudes(self, channel):
        """The N amplitudes of one channel (pseudo-spin basis only)."""
        if self._basis is not Basis.PSEUDO_SPIN:
            raise LadderInvalidType("Channel amplitudes need the pseudo-spin basis")
        return self._amplitudes[Channel(channel).offset::2]

    def __repr__(self):
        return "<WavepacketState: N={} t={} basis={}>".format(
            self.n_sites, self._time, self._basis.value)


def _check_decoupled(spec):
    if spec.has_bias:
        raise LadderInvalidType("Evolution needs eps_j = 0; the channels mix under a bias")
    if not spec.is_uniform:
        raise LadderInvalidType("Evolution needs a uniform rung coupling V_j = V")


def _channel_evolution(spec, channel, times, amplitudes):
    """
    exp(-i H_chi t) applied to one channel's amplitudes, shape (len(times), N).
    """
    up, down = channel_hamiltonians(spec)
    h = up if channel is Channel.UP else down
    zeeman = channel.sign * spec.rung_couplings[0]
    kinetic = h.entries - zeeman * np.eye(h.dim)
    values, vectors = scipy.linalg.eigh(kinetic)
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, values))
    coefficients = vectors.conj().T @ amplitudes
    out = (phases * coefficients) @ vectors.T
    return out * np.exp(-1j * zeeman * times)[:, None]


def evolve_many(spec, initial, times):
    """
    Evolves a wavepacket to several elapsed times, diagonalizing once.

    Args:
        spec (LadderSpec): Unbiased ladder with uniform V.
        initial (WavepacketState): State at time t0.
        times (array): Elapsed times t >= 0.

    Returns:
        list[WavepacketState]: States at t0 + t, in the basis of initial.

    Raises:
        LadderInvalidType: for a biased or inhomogeneous ladder.
    """
    _check_decoupled(spec)
    if initial.n_sites != spec.n_sites:
        raise WavepacketInvalidData("Wavepacket has {} rungs, ladder has {}"
                                    .format(initial.n_sites, spec.n_sites))
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise WavepacketInvalidData("Elapsed times must be >= 0")
    psi = initial.to_basis(spec, Basis.PSEUDO_SPIN)
    out = np.empty((len(times), 2 * spec.n_sites), dtype=complex)
    for channel in Channel:
        out[:, channel.offset::2] = _channel_evolution(spec, channel, times,
                                                       psi.channel_amplitudes(channel))
    logger.debug("Evolved %r over %d times", initial, len(times))
    return [WavepacketState(a, initial.time + t, Basis.PSEUDO_SPIN).to_basis(spec, initial.basis)
            for a, t in zip(out, times)]


def evolve(spec, initial, t):
    """
    Evolves a wavepacket by exp(-i H t).

    Example:
        >>> spec = LadderSpec(n_sites=50, rung_couplings=50.0)
        >>> psi = evolve(spec, WavepacketState.localized(spec), 1.0)
    """
    return evolve_many(spec, initial, [t])[0]


def channel_propagators(spec, times, rung=0):
    """
    G_chi(j, t) = <j|exp(-i H_chi t)|rung> for every site and time.

    Returns:
        dict: Channel -> complex array of shape (len(times), N).
    """
    _check_decoupled(spec)
    start = np.zeros(spec.n_sites, dtype=complex)
    start[rung] = 1.0
    return {channel: _channel_evolution(spec, channel, times, start) for channel in Channel}


def _twist_angle(channel, n_sites, boundary):
    if Channel(channel) is Channel.UP and Boundary(boundary) is Boundary.MOEBIUS:
        return np.pi / n_sites
    return 0.0


def _winding_sum(t, theta, n_sites, hopping):
    """
    sum_k exp(i j_k (pi/2 - theta)) J_{j_k}(2 xi t) for j = 0..N-1.
    """
    x = 2 * hopping * t
    cutoff = int(np.floor(x + WINDING_MARGIN))
    orders = np.arange(-cutoff, cutoff + 1)
    terms = np.exp(1j * orders * (np.pi / 2 - theta)) * scipy.special.jv(orders, x)
    out = np.zeros(n_sites, dtype=complex)
    np.add.at(out, orders % n_sites, terms)
    return out


def propagator_bessel(j, t, channel, n_sites, hopping, zeeman=0.0, boundary=Boundary.MOEBIUS):
    """
    Ring propagator from its winding-number expansion.

    Args:
        j (int): Displacement along the ring.
        t (float): Time.
        channel (Channel): UP or DOWN.
        n_sites (int): N.
        hopping (float): xi.
        zeeman (float): V. The default leaves out the exp(-+ i V t) phase.
        boundary (Boundary): MOEBIUS twists the up channel.

    Returns:
        complex

    Example:
        >>> abs(propagator_bessel(0, 1.0, Channel.UP, 50, 1.0))  # J_0(2)
        0.2238907791412357
    """
    channel = Channel(channel)
    theta = _twist_angle(channel, n_sites, boundary)
    g = _winding_sum(t, theta, n_sites, hopping)[j % n_sites]
    return complex(g * np.exp(-1j * channel.sign * zeeman * t))
