"""
Two-terminal Landauer transmission through a ladder ring.

Each lead is a semi-infinite uniform chain (on-site eps_lead, hopping t_l)
attached by a tunneling bond t_c to one a-site of the ring. Eliminating
the lead leaves a retarded self-energy on that site,

    Sigma(E) = t_c^2 g_s(E - eps_lead),

with g_s the surface Green's function of the chain. The device Green's
function is G = [E - H - Sigma_L - Sigma_R]^-1 and, both broadenings being
rank one, T(E) = Gamma_L Gamma_R |G_RL|^2 with Gamma = -2 Im Sigma.
"""
import logging
import warnings

import numpy as np
import scipy.linalg

from ..lattice.base import LadderInvalidData
from ..lattice.hamiltonian import build_hamiltonian
from ..lattice.operator import HermitianOperator
from ..lattice.validators import _validate_integer, _validate_real
from ..table import ResultTable

logger = logging.getLogger(__name__)

# Energy offset applied once when the device matrix is singular at E
ENERGY_SHIFT = 1e-9

DECIMATION_BROADENING = 1e-10
DECIMATION_TOLERANCE = 1e-12
DECIMATION_MAX_ITERATIONS = 10000
# Relative residual of g = 1/(z - eps - t^2 g) accepted from the decimation
DECIMATION_RESIDUAL = 1e-4


class SingularMatrix(Exception):
    """Raised when E - H - Sigma cannot be inverted at an energy"""
    def __init__(self, energy, message=None):
        self.energy = energy
        if message is None:
            message = "Device matrix is singular at E={!r}".format(energy)
        super().__init__(message)


class DecimationNotConverged(Exception):
    """Raised when the iterative surface Green's function does not converge"""
    pass


def lead_self_energy(energy, hopping, tunneling=None, onsite=0.0):
    """
    Retarded self-energy of a semi-infinite chain, closed form.

    Inside the lead band |x| <= 2|t_l|, x = E - eps_lead,

        g_s = (x - i sqrt(4 t_l^2 - x^2)) / (2 t_l^2),

    and outside it the decaying real root
    g_s = (x - sign(x) sqrt(x^2 - 4 t_l^2)) / (2 t_l^2).

    Args:
        energy (float): E.
        hopping (float): Lead hopping t_l.
        tunneling (float): Lead-device bond t_c. Defaults to t_l.
        onsite (float): Lead on-site energy eps_lead.

    Returns:
        complex: Sigma, with Im Sigma <= 0.

    Examples:
        >>> lead_self_energy(0.0, 1.0)
        -1j
        >>> lead_self_energy(3.0, 1.0)
        (0.3819660112501051+0j)
    """
    if tunneling is None:
        tunneling = hopping
    if tunneling == 0:
        return 0j
    if hopping == 0:
        raise LadderInvalidData("A lead with zero hopping cannot carry current")
    x = energy - onsite
    t2 = hopping ** 2
    if abs(x) <= 2 * abs(hopping):
        g = (x - 1j * np.sqrt(4 * t2 - x ** 2)) / (2 * t2)
    else:
        g = (x - np.sign(x) * np.sqrt(x ** 2 - 4 * t2)) / (2 * t2)
    return complex(tunneling ** 2 * g)


def surface_green_decimation(energy, hopping, onsite=0.0, broadening=DECIMATION_BROADENING,
                             tolerance=DECIMATION_TOLERANCE,
                             max_iterations=DECIMATION_MAX_ITERATIONS):
    """
    Surface Green's function of a semi-infinite chain by renormalization-
    decimation.

    Each step halves the chain: the effective couplings alpha and beta are
    squared through the bulk propagator until they vanish, leaving
    g_s = 1 / (z - eps_s).

    Args:
        energy (float): E, evaluated at z = E + i*broadening.
        hopping (float): Chain hopping t_l.
        onsite (float): Chain on-site energy.

    At the band centre the first steps scale with 1/broadening and the
    result loses about eps/broadening^2 of precision, so broadenings much
    below 1e-4 there end in DecimationNotConverged rather than a value.

    Returns:
        complex: g_s

    Raises:
        DecimationNotConverged: after max_iterations steps, or when the
            result does not satisfy the surface Dyson equation.
    """
    z = energy + 1j * broadening
    eps_s = eps_b = complex(onsite)
    alpha = beta = complex(hopping)
    for i in range(max_iterations):
        g = 1.0 / (z - eps_b)
        eps_s += alpha * g * beta
        eps_b += alpha * g * beta + beta * g * alpha
        alpha = alpha * g * alpha
        beta = beta * g * beta
        if abs(alpha) < tolerance and abs(beta) < tolerance:
            break
    else:
        raise DecimationNotConverged("No convergence at E={} after {} iterations"
                                     .format(energy, max_iterations))

    g_s = 1.0 / (z - eps_s)
    residual = abs(g_s - 1.0 / (z - onsite - hopping ** 2 * g_s))
    if not np.isfinite(residual) or residual > DECIMATION_RESIDUAL * abs(g_s):
        raise DecimationNotConverged(
            "Decimation at E={} stopped at g={} with Dyson residual {:.3g}; "
            "increase the broadening".format(energy, g_s, residual))
    logger.debug("Decimation at E=%g converged in %d steps", energy, i + 1)
    return g_s


class LeadSpec(object):
    """
    A pair of identical single-channel leads.

    Args:
        hopping (float): Lead hopping t_l (>= 0). Zero detaches the leads.
        attach_left (int): Rung whose a-site the left lead touches.
        attach_right (int): Rung for the right lead. Defaults to N/2, which
            needs an even ring.
        onsite (float): Lead on-site energy; shifts the lead band to
            [eps_lead - 2 t_l, eps_lead + 2 t_l].
        tunneling (float): Lead-ring bond t_c, defaults to hopping.
        wide_band (bool): Replace the chain by a constant Sigma = -i t_c^2/t_l.
    """
    def __init__(self, hopping=1.0, attach_left=0, attach_right=None, onsite=0.0,
                 tunneling=None, wide_band=False):
        self.hopping = _validate_real(hopping, 'lead_hopping', nonnegative=True)
        self.attach_left = _validate_integer(attach_left, 'attach_left', minimum=0)
        self.attach_right = (None if attach_right is None
                             else _validate_integer(attach_right, 'attach_right', minimum=0))
        self.onsite = _validate_real(onsite, 'lead_onsite')
        self.tunneling = (self.hopping if tunneling is None
                          else _validate_real(tunneling, 'tunneling'))
        self.wide_band = bool(wide_band)
        if self.wide_band and self.hopping == 0 and self.tunneling != 0:
            raise LadderInvalidData("wide_band leads need a nonzero hopping")

    def attachment(self, n_sites):
        """
        Basis indices (2 j_L, 2 j_R) of the two contacted a-sites.

        Raises:
            LadderInvalidData: for out-of-range or coincident rungs, or an
                odd ring with the default right contact.
        """
        right = self.attach_right
        if right is None:
            if n_sites % 2:
                raise LadderInvalidData("The default antipodal contact needs an even "
                                        "n_sites, got {}".format(n_sites))
            right = n_sites // 2
        for name, j in (('attach_left', self.attach_left), ('attach_right', right)):
            if j >= n_sites:
                raise LadderInvalidData("{} must be < n_sites={}, got {}".format(name, n_sites, j))
        if right == self.attach_left:
            raise LadderInvalidData("Both leads are attached to rung {}".format(right))
        return 2 * self.attach_left, 2 * right

    def self_energy(self, energy):
        if self.tunneling == 0:
            return 0j
        if self.wide_band:
            return -1j * self.tunneling ** 2 / abs(self.hopping)
        return lead_self_energy(energy, self.hopping, self.tunneling, self.onsite)

    def swapped(self, n_sites):
        """The same leads with the left and right contacts exchanged."""
        left, right = self.attachment(n_sites)
        return LeadSpec(self.hopping, attach_left=right // 2, attach_right=left // 2,
                        onsite=self.onsite, tunneling=self.tunneling, wide_band=self.wide_band)

    def __repr__(self):
        return ("<LeadSpec: t_l={s.hopping} t_c={s.tunneling} onsite={s.onsite} "
                "at ({s.attach_left}, {s.attach_right})>".format(s=self))


def device_green(energy, h, leads):
    """
    Retarded Green's function of the ring with both leads attached.

    Args:
        energy (float): E.
        h (HermitianOperator): Site-basis Hamiltonian of the ring.
        leads (LeadSpec): The leads.

    Returns:
        numpy.ndarray: G(E), dense.

    Raises:
        SingularMatrix: when E - H - Sigma is singular or too ill-conditioned
            to solve. Only possible at real E where Gamma = 0.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    left, right = leads.attachment(h.dim // 2)
    sigma = leads.self_energy(energy)
    a = energy * np.eye(h.dim, dtype=complex) - h.entries
    a[left, left] -= sigma
    a[right, right] -= sigma
    with warnings.catch_warnings(), np.errstate(divide='ignore', invalid='ignore'):
        warnings.simplefilter('error', scipy.linalg.LinAlgWarning)
        try:
            g = scipy.linalg.solve(a, np.eye(h.dim, dtype=complex))
        except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
            raise SingularMatrix(energy)
    # Diagonal systems may be divided through without a pivot check
    if not np.all(np.isfinite(g)):
        raise SingularMatrix(energy)
    return g


class TransmissionCurve(ResultTable):
    """
    T(E) on an energy grid, with the lead self-energies used at each point.

    Args:
        energy_grid (array): Energies.
        transmission (array): T(E).
        sigma_left (array): Sigma_L(E), complex.
        sigma_right (array): Sigma_R(E), complex.
    """
    columns = ('E', 'T', 'ReSigma_L', 'ImSigma_L', 'ReSigma_R', 'ImSigma_R')

    def __init__(self, energy_grid, transmission, sigma_left, sigma_right):
        self.energy_grid = np.asarray(energy_grid, dtype=float)
        self.transmission = np.asarray(transmission, dtype=float)
        self.sigma_left = np.asarray(sigma_left, dtype=complex)
        self.sigma_right = np.asarray(sigma_right, dtype=complex)

    @property
    def gamma_left(self):
        return -2 * self.sigma_left.imag

    @property
    def gamma_right(self):
        return -2 * self.sigma_right.imag

    @classmethod
    def concatenate(cls, curves):
        """Joins curves computed on consecutive pieces of one grid."""
        curves = list(curves)
        return cls(np.concatenate([c.energy_grid for c in curves]),
                   np.concatenate([c.transmission for c in curves]),
                   np.concatenate([c.sigma_left for c in curves]),
                   np.concatenate([c.sigma_right for c in curves]))

    def rows(self):
        return [(float(e), float(t), float(sl.real), float(sl.imag), float(sr.real), float(sr.imag))
                for e, t, sl, sr in zip(self.energy_grid, self.transmission,
                                        self.sigma_left, self.sigma_right)]

    def __repr__(self):
        return "<TransmissionCurve: {} points, max T={:.3g}>".format(
            len(self.energy_grid), self.transmission.max() if len(self.transmission) else 0.0)


def transmission(spec, leads, energy_grid):
    """
    Landauer transmission of a ladder between two leads.

    A singular device matrix at a grid energy is retried once at
    E + 1e-9 (a warning is logged); the grid value reported is unchanged.

    Args:
        spec (LadderSpec): The ring.
        leads (LeadSpec): The leads.
        energy_grid (array): Energies.

    Returns:
        TransmissionCurve

    Raises:
        SingularMatrix: if the shifted energy is singular too.

    Example:
        >>> curve = transmission(LadderSpec(), LeadSpec(onsite=50.0),
        ...                      np.linspace(48.1, 51.9, 2000))
    """
    h = build_hamiltonian(spec)
    left, right = leads.attachment(spec.n_sites)
    energy_grid = np.asarray(energy_grid, dtype=float)
    values = np.empty(len(energy_grid))
    sig_l = np.empty(len(energy_grid), dtype=complex)
    sig_r = np.empty(len(energy_grid), dtype=complex)

    for i, e in enumerate(energy_grid):
        try:
            g = device_green(e, h, leads)
            evaluated = e
        except SingularMatrix:
            logger.warning("Singular device matrix at E=%r, retrying at E+%g", e, ENERGY_SHIFT)
            evaluated = e + ENERGY_SHIFT
            g = device_green(evaluated, h, leads)
        sigma = leads.self_energy(evaluated)
        gamma = -2 * sigma.imag
        sig_l[i] = sig_r[i] = sigma
        values[i] = gamma * gamma * abs(g[right, left]) ** 2

    logger.debug("Transmission of %r over %d energies", spec, len(energy_grid))
    return TransmissionCurve(energy_grid, values, sig_l, sig_r)
