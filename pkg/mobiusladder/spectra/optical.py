"""
Golden-rule absorption spectra with Lorentzian line shapes.

A spectrum is a list of (center, weight) peaks, one per allowed transition,
broadened into a curve on a frequency grid. Three sources are understood:

  * a :class:`LevelTable` of the Moebius continuum: transitions
    |n up> <-> |n down> and |n up> <-> |n+1 down>, each with element eps/2;
  * a :class:`LevelTable` with the periodic boundary: only
    |n up> <-> |n down>, with element eps;
  * a :class:`LadderSpec`: the lattice itself, with the dipole operator
    (eps/w) z acting between the lower and the upper band.
"""
import logging

import numpy as np
import scipy.linalg

from ..lattice.base import Boundary, Channel
from ..lattice.geometry import build_geometry
from ..lattice.hamiltonian import build_hamiltonian
from ..lattice.spec import LadderSpec
from ..table import ResultTable
from .continuum import LevelTable

logger = logging.getLogger(__name__)

# Peak centers closer than this are one line
MERGE_TOLERANCE = 1e-9
# Weights below this fraction of the strongest line are dropped
WEIGHT_CUTOFF = 1e-14

OCCUPATIONS = ('all', 'ground')


def lorentzian(omega, center, broadening):
    """
    Area-normalized Lorentzian eta/pi / ((omega - center)^2 + eta^2).
    """
    omega = np.asarray(omega, dtype=float)
    return broadening / np.pi / ((omega - center) ** 2 + broadening ** 2)


class PeakTable(ResultTable):
    """Merged transition lines, sorted by center."""
    columns = ('center', 'weight')

    def __init__(self, centers, weights):
        self.centers = np.asarray(centers, dtype=float)
        self.weights = np.asarray(weights, dtype=float)

    def rows(self):
        return [(float(c), float(w)) for c, w in zip(self.centers, self.weights)]

    def __repr__(self):
        return "<PeakTable: {} peaks>".format(len(self.centers))


class OpticalSpectrum(ResultTable):
    """
    Broadened absorption curve together with the lines it is made of.

    Args:
        omega_grid (array): Frequencies.
        intensity (array): Sum of weighted Lorentzians on omega_grid.
        broadening (float): Lorentzian half-width eta.
        peaks (PeakTable): The lines.
    """
    columns = ('omega', 'intensity')

    def __init__(self, omega_grid, intensity, broadening, peaks):
        self.omega_grid = np.asarray(omega_grid, dtype=float)
        self.intensity = np.asarray(intensity, dtype=float)
        self.broadening = broadening
        self.peaks = peaks
        if self.omega_grid.shape != self.intensity.shape:
            raise ValueError("omega_grid and intensity must have the same length")

    @property
    def peak_list(self):
        return self.peaks.rows()

    def rows(self):
        return [(float(w), float(i)) for w, i in zip(self.omega_grid, self.intensity)]

    def __repr__(self):
        return "<OpticalSpectrum: {} points, {} peaks, eta={}>".format(
            len(self.omega_grid), len(self.peaks.centers), self.broadening)


def _merge_peaks(centers, weights):
    if len(centers) == 0:
        return PeakTable([], [])
    order = np.argsort(centers, kind='stable')
    centers = np.asarray(centers, dtype=float)[order]
    weights = np.asarray(weights, dtype=float)[order]

    merged_c, merged_w = [], []
    group_c, group_w = [centers[0]], [weights[0]]
    for c, w in zip(centers[1:], weights[1:]):
        if c - group_c[0] <= MERGE_TOLERANCE:
            group_c.append(c)
            group_w.append(w)
            continue
        merged_c.append(np.mean(group_c))
        merged_w.append(np.sum(group_w))
        group_c, group_w = [c], [w]
    merged_c.append(np.mean(group_c))
    merged_w.append(np.sum(group_w))

    merged_c = np.array(merged_c)
    merged_w = np.array(merged_w)
    keep = merged_w > WEIGHT_CUTOFF * merged_w.max() if merged_w.max() > 0 else merged_w > 0
    return PeakTable(merged_c[keep], merged_w[keep])


def _continuum_lines(levels, field, occupation):
    """(center, weight) for every allowed pair present in the table."""
    moebius = levels.boundary is Boundary.MOEBIUS
    element = field / 2 if moebius else field
    offsets = (0, 1) if moebius else (0,)

    initial = None
    if occupation == 'ground':
        downs = {n: sum(levels.lookup(n, c))
                 for n, c in zip(levels.n, levels.channel) if c is Channel.DOWN}
        lowest = min(downs.values())
        initial = {n for n, e in downs.items() if e - lowest <= MERGE_TOLERANCE}

    centers, weights = [], []
    for n in sorted(set(levels.n)):
        up = levels.lookup(n, Channel.UP)
        if up is None:
            continue
        for offset in offsets:
            if initial is not None and n + offset not in initial:
                continue
            down = levels.lookup(n + offset, Channel.DOWN)
            if down is None:
                continue
            centers.append(abs(sum(up) - sum(down)))
            weights.append(abs(element) ** 2)
    return centers, weights


def _lattice_lines(spec, field, occupation):
    """(center, weight) for dipole transitions between the two lattice bands."""
    bare = spec.replace(onsite_bias=0.0, field_strength=None)
    h = build_hamiltonian(bare)
    values, vectors = scipy.linalg.eigh(h.entries)
    # interleaved (z_a0, z_b0, z_a1, ...)
    heights = build_geometry(bare).positions[:, :, 2].reshape(-1)
    dipole = (field / bare.half_width) * heights

    n = bare.n_sites
    lower = range(n)
    if occupation == 'ground':
        lower = [i for i in lower if values[i] - values[0] <= MERGE_TOLERANCE]
    elements = vectors[:, n:].conj().T @ (dipole[:, None] * vectors[:, list(lower)])

    centers, weights = [], []
    for fi in range(n):
        for k, i in enumerate(lower):
            centers.append(values[n + fi] - values[i])
            weights.append(abs(elements[fi, k]) ** 2)
    return centers, weights


def optical_spectrum(levels_source, omega_grid, broadening=0.1, field=0.1, occupation='all'):
    """
    Absorption spectrum by Fermi's golden rule.

    Every allowed transition contributes a Lorentzian of width ``broadening``
    weighted by the squared matrix element. With ``occupation='all'`` every
    lower level is taken as occupied; ``'ground'`` keeps only transitions
    out of the lowest level (and anything degenerate with it).

    Args:
        levels_source (LevelTable or LadderSpec): Continuum levels (the
            table's boundary picks the selection rules) or a lattice.
        omega_grid (array): Frequencies to evaluate the curve at.
        broadening (float): eta > 0.
        field (float): Field energy eps > 0.
        occupation (str): 'all' or 'ground'.

    Returns:
        OpticalSpectrum

    Examples:
        >>> levels = continuum_levels(range(-2, 3), 50.0)
        >>> spectrum = optical_spectrum(levels, np.linspace(95, 105, 2001))
        >>> len(spectrum.peaks.centers)
        7
    """
    if not broadening > 0:
        raise ValueError("broadening must be > 0, got {}".format(broadening))
    if not field > 0:
        raise ValueError("field must be > 0, got {}".format(field))
    if occupation not in OCCUPATIONS:
        raise ValueError("occupation must be one of {}, got '{}'".format(OCCUPATIONS, occupation))

    if isinstance(levels_source, LevelTable):
        centers, weights = _continuum_lines(levels_source, field, occupation)
    elif isinstance(levels_source, LadderSpec):
        centers, weights = _lattice_lines(levels_source, field, occupation)
    else:
        raise TypeError("levels_source must be a LevelTable or a LadderSpec, got {}"
                        .format(type(levels_source).__name__))

    peaks = _merge_peaks(centers, weights)
    omega_grid = np.asarray(omega_grid, dtype=float)
    intensity = np.zeros_like(omega_grid)
    for c, w in zip(peaks.centers, peaks.weights):
        intensity += w * lorentzian(omega_grid, c, broadening)
    logger.debug("Optical spectrum: %d transitions merged into %d peaks",
                 len(centers), len(peaks.centers))
    return OpticalSpectrum(omega_grid, intensity, broadening, peaks)
