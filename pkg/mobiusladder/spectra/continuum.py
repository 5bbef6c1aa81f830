"""
Continuum limit of the ladder: a pseudo-spin on a ring under a
spin-dependent flux.

The kinetic levels are E_{n,up} = (n - 1/2)^2 + V and E_{n,down} = n^2 - V
(the up channel sees half a flux quantum). A perpendicular field eps adds
H' whose only nonzero elements are

    <n up|H'|n down> = <n up|H'|n+1 down> = eps/2,

so each up level talks to two down levels. Second-order shifts follow
in closed form. The up levels n and 1-n are degenerate; only the pair
(0, 1) is coupled at second order, through |1 down>, and is handled by
:func:`stark_doublet`.
"""
import logging

import numpy as np
import scipy.linalg

from ..lattice.base import Basis, Boundary, Channel
from ..lattice.operator import HermitianOperator
from ..table import ResultTable

logger = logging.getLogger(__name__)

# |denominator| below this fraction of 4 V^2 means perturbation theory fails
DEGENERACY_FRACTION = 1e-3


class NearDegeneracy(Exception):
    """Raised when a second-order Stark denominator is too close to zero"""
    def __init__(self, n, channel, zeeman, denominator):
        self.n = n
        self.channel = Channel(channel)
        self.zeeman = zeeman
        self.denominator = denominator
        super().__init__("Stark shift undefined for n={} channel={} V={}: denominator {:.6g}"
                         .format(n, self.channel.value, zeeman, denominator))


def level_energy(n, channel, zeeman, boundary=Boundary.MOEBIUS):
    """Zeroth-order continuum level. Ordinary rings have no half-flux shift."""
    channel = Channel(channel)
    if channel is Channel.UP:
        k = n - 0.5 if Boundary(boundary) is Boundary.MOEBIUS else n
        return k ** 2 + zeeman
    return n ** 2 - zeeman


def stark_shift(n, channel, zeeman, field):
    """
    Second-order Stark shift of a continuum level.

    Args:
        n (int): Angular quantum number.
        channel (Channel): UP or DOWN.
        zeeman (float): Rung splitting V.
        field (float): Field energy eps.

    Returns:
        float

    Raises:
        NearDegeneracy: when |denominator| < 1e-3 * 4 V^2.
    """
    channel = Channel(channel)
    v = zeeman
    if channel is Channel.UP:
        numerator = v - n - 1 / 8
        denominator = 3 * n ** 2 - 8 * v * n + (4 * v ** 2 - v - 3 / 16)
        sign = 1
    else:
        numerator = v - n + 5 / 8
        denominator = 3 * n ** 2 - (8 * v + 3) * n + (4 * v ** 2 + 5 * v + 9 / 16)
        sign = -1
    if denominator == 0 or abs(denominator) < DEGENERACY_FRACTION * 4 * v ** 2:
        raise NearDegeneracy(n, channel, zeeman, denominator)
    return sign * field ** 2 * numerator / denominator


def stark_doublet(zeeman, field):
    """
    Second-order shifts of the degenerate up levels n = 0 and n = 1.

    Both couple to |1 down>, so the shifts are the eigenvalues of a 2x2
    effective Hamiltonian rather than the individual closed forms; the
    closed forms only give the centroid.

    Returns:
        (float, float): lower and upper shift.
    """
    first = stark_shift(0, Channel.UP, zeeman, field)
    second = stark_shift(1, Channel.UP, zeeman, field)
    gap = level_energy(0, Channel.UP, zeeman) - level_energy(1, Channel.DOWN, zeeman)
    if gap == 0:
        raise NearDegeneracy(0, Channel.UP, zeeman, gap)
    mixing = field ** 2 / 4 / gap
    centre = 0.5 * (first + second)
    half_split = np.hypot(0.5 * (first - second), mixing)
    return centre - half_split, centre + half_split


class LevelTable(ResultTable):
    """
    Continuum levels with their Stark shifts.

    Args:
        n (list[int]): Quantum numbers.
        channel (list[Channel]): Channel of each row.
        energy (list[float]): Zeroth-order energies.
        shift (list[float]): Second-order shifts (zero when not computed).
        zeeman (float): V used for the energies.
        boundary (Boundary): MOEBIUS for the half-flux ring, PERIODIC for
            the ordinary control.
    """
    columns = ('n', 'channel', 'energy', 'shift')

    def __init__(self, n, channel, energy, shift, zeeman, boundary=Boundary.MOEBIUS):
        self.n = [int(i) for i in n]
        self.channel = [Channel(c) for c in channel]
        self.energy = np.asarray(energy, dtype=float)
        self.shift = np.asarray(shift, dtype=float)
        self.zeeman = zeeman
        self.boundary = Boundary(boundary)
        if not (len(self.n) == len(self.channel) == len(self.energy) == len(self.shift)):
            raise ValueError("LevelTable columns must have equal length")
        if not (np.all(np.isfinite(self.energy)) and np.all(np.isfinite(self.shift))):
            raise ValueError("LevelTable energies must be finite")

    def rows(self):
        return [(n, c.value, float(e), float(s))
                for n, c, e, s in zip(self.n, self.channel, self.energy, self.shift)]

    def lookup(self, n, channel):
        """
        (energy, shift) of one level, or None if it is not in the table.
        """
        channel = Channel(channel)
        for i, (m, c) in enumerate(zip(self.n, self.channel)):
            if m == n and c is channel:
                return self.energy[i], self.shift[i]
        return None

    def with_stark_shifts(self, field):
        """
        A copy of this table with the shift column filled in.

        Raises:
            NearDegeneracy: for any level too close to a resonance.
        """
        if self.boundary is not Boundary.MOEBIUS:
            raise ValueError("Closed-form Stark shifts are only known for the Moebius ring")
        shifts = [stark_shift(n, c, self.zeeman, field) for n, c in zip(self.n, self.channel)]
        return LevelTable(self.n, self.channel, self.energy, shifts, self.zeeman, self.boundary)

    def __repr__(self):
        return "<LevelTable: {} levels, V={}>".format(len(self.n), self.zeeman)


def continuum_levels(n_range, zeeman, boundary=Boundary.MOEBIUS):
    """
    Zeroth-order levels for every n in n_range and both channels.

    Example:
        >>> continuum_levels(range(-2, 3), 50.0).lookup(0, 'up')
        (50.25, 0.0)
    """
    ns, channels, energies = [], [], []
    for n in n_range:
        for channel in (Channel.UP, Channel.DOWN):
            ns.append(n)
            channels.append(channel)
            energies.append(level_energy(n, channel, zeeman, boundary))
    return LevelTable(ns, channels, energies, np.zeros(len(ns)), zeeman, boundary)


class ContinuumModel(object):
    """
    Truncated plane-wave x pseudo-spin representation of the continuum
    Hamiltonian.

    Basis vector |n, chi> sits at index 2 (n + n_max) + (0 for up, 1 for down).
    """
    def __init__(self, momentum_cutoff, zeeman, field, matrix):
        self.momentum_cutoff = momentum_cutoff
        self.zeeman = zeeman
        self.field = field
        self.matrix = matrix

    def index(self, n, channel):
        if abs(n) > self.momentum_cutoff:
            raise KeyError("n={} lies outside the cutoff {}".format(n, self.momentum_cutoff))
        return _continuum_index(n, channel, self.momentum_cutoff)

    @property
    def momenta(self):
        return range(-self.momentum_cutoff, self.momentum_cutoff + 1)

    def eigenvalues(self):
        return scipy.linalg.eigvalsh(self.matrix.entries)

    def __repr__(self):
        return "<ContinuumModel: n_max={s.momentum_cutoff} V={s.zeeman} eps={s.field}>".format(s=self)


def _continuum_index(n, channel, n_max):
    return 2 * (n + n_max) + Channel(channel).offset


def build_continuum(n_max=8, zeeman=50.0, field=0.0):
    """
    Builds the truncated continuum Hamiltonian.

    Args:
        n_max (int): Momentum cutoff, n in [-n_max, n_max]. At least 2.
        zeeman (float): Rung splitting V.
        field (float): Field energy eps.

    Returns:
        ContinuumModel
    """
    if isinstance(n_max, bool) or not isinstance(n_max, (int, np.integer)) or n_max < 2:
        raise ValueError("n_max must be an integer >= 2, got {!r}".format(n_max))
    dim = 2 * (2 * n_max + 1)
    m = np.zeros((dim, dim), dtype=complex)
    labels = [None] * dim
    for n in range(-n_max, n_max + 1):
        up = _continuum_index(n, Channel.UP, n_max)
        down = _continuum_index(n, Channel.DOWN, n_max)
        labels[up] = '|{},up>'.format(n)
        labels[down] = '|{},down>'.format(n)
        m[up, up] = level_energy(n, Channel.UP, zeeman)
        m[down, down] = level_energy(n, Channel.DOWN, zeeman)
        m[up, down] = m[down, up] = field / 2
        if n + 1 <= n_max:
            above = _continuum_index(n + 1, Channel.DOWN, n_max)
            m[up, above] = m[above, up] = field / 2
    matrix = HermitianOperator(m, Basis.MOMENTUM_SPIN, labels)
    return ContinuumModel(n_max, zeeman, field, matrix)


class StarkComparison(ResultTable):
    """
    Perturbative levels next to the nearest eigenvalue of the continuum
    diagonalization.

    ``shift`` is always the closed form. ``E_perturbative`` is E0 + shift
    except for the coupled up levels n = 0 and n = 1, which get the lower and
    upper root of :func:`stark_doublet`.
    """
    columns = ('n', 'channel', 'E0', 'shift', 'E_perturbative', 'E_exact')

    def __init__(self, levels, perturbative, exact):
        self.levels = levels
        self.perturbative = np.asarray(perturbative, dtype=float)
        self.exact = np.asarray(exact, dtype=float)

    def rows(self):
        return [(n, channel, energy, shift, float(p), float(x))
                for (n, channel, energy, shift), p, x
                in zip(self.levels.rows(), self.perturbative, self.exact)]

    def __repr__(self):
        return "<StarkComparison: {} levels>".format(len(self.exact))


def _perturbative_energies(levels, field):
    energies = levels.energy + levels.shift
    pair = [levels.lookup(n, Channel.UP) for n in (0, 1)]
    if None in pair:
        return energies
    lower, upper = stark_doublet(levels.zeeman, field)
    for i, (n, channel) in enumerate(zip(levels.n, levels.channel)):
        if channel is Channel.UP and n in (0, 1):
            energies[i] = levels.energy[i] + (lower if n == 0 else upper)
    return energies


def compare_with_continuum(levels, model):
    """
    Pairs each shifted level with the closest exact eigenvalue of model.

    Args:
        levels (LevelTable): Moebius levels with Stark shifts filled in.
        model (ContinuumModel): Diagonalized at the same V and eps.

    Returns:
        StarkComparison
    """
    exact = model.eigenvalues()
    targets = _perturbative_energies(levels, model.field)
    nearest = [exact[np.argmin(np.abs(exact - t))] for t in targets]
    logger.info("Matched %d levels against a %d-dimensional continuum model",
                len(targets), model.matrix.dim)
    return StarkComparison(levels, targets, nearest)
