import logging

import numpy as np
import pytest
import scipy.signal

from ..lattice import HermitianOperator, LadderInvalidData, LadderSpec, build_hamiltonian
from ..transport import (DecimationNotConverged, LeadSpec, SingularMatrix, TransmissionCurve,
                         device_green, lead_self_energy, surface_green_decimation, transmission)
from .fixtures import N_SPECTRUM, V_SPECTRUM, XI

# Conduction-band window away from the band edges
CONDUCTION_GRID = np.linspace(V_SPECTRUM - 2 * XI + 0.1, V_SPECTRUM + 2 * XI - 0.1, 2000)


def _ring(boundary='moebius', n_sites=N_SPECTRUM, zeeman=V_SPECTRUM):
    return LadderSpec(n_sites=n_sites, hopping=XI, rung_couplings=zeeman, boundary=boundary)


class TestLeadSelfEnergy:
    """
    Test the closed-form and decimated lead self-energies.
    """

    def test_band_centre(self):
        assert lead_self_energy(0.0, 1.0) == pytest.approx(-1j, abs=1e-15)

    def test_outside_band(self):
        """
        Outside the band the decaying root is real
        """
        assert lead_self_energy(3.0, 1.0) == pytest.approx((3 - np.sqrt(5)) / 2, abs=1e-15)
        assert lead_self_energy(-3.0, 1.0) == pytest.approx(-(3 - np.sqrt(5)) / 2, abs=1e-15)
        assert lead_self_energy(3.0, 1.0).imag == 0

    def test_retarded_sign(self):
        energies = np.linspace(-5, 5, 101)
        assert all(lead_self_energy(e, 1.3, onsite=0.4).imag <= 0 for e in energies)

    def test_onsite_shifts_band(self):
        assert lead_self_energy(50.0, 1.0, onsite=50.0) == pytest.approx(-1j, abs=1e-15)

    def test_tunneling_scales(self):
        assert lead_self_energy(0.5, 1.0, tunneling=0.5) == pytest.approx(
            0.25 * lead_self_energy(0.5, 1.0), abs=1e-15)

    def test_detached(self):
        assert lead_self_energy(0.5, 1.0, tunneling=0.0) == 0j
        with pytest.raises(LadderInvalidData):
            lead_self_energy(0.5, 0.0, tunneling=1.0)

    @pytest.mark.parametrize('energy', [-1.3, 0.7, 3.0])
    def test_decimation_agrees(self, energy):
        assert surface_green_decimation(energy, 1.0) == pytest.approx(
            lead_self_energy(energy, 1.0), abs=1e-6)

    def test_decimation_wider_band(self):
        g = surface_green_decimation(1.0, 2.0, onsite=0.5)
        assert g == pytest.approx(lead_self_energy(1.0, 2.0, onsite=0.5) / 4, abs=1e-6)

    def test_decimation_band_centre(self):
        """
        At the band centre the decimation needs a finite broadening; it then
        matches the closed form at the same complex energy
        """
        eta = 1e-3
        g = surface_green_decimation(0.0, 1.0, broadening=eta)
        expected = -1j * (np.sqrt(4 + eta ** 2) - eta) / 2
        assert g == pytest.approx(expected, abs=1e-6)
        assert g == pytest.approx(-1j, abs=1e-3)

    def test_decimation_band_centre_default_broadening(self):
        """
        With the default broadening E = 0 gives -i or refuses, never a wrong value
        """
        try:
            g = surface_green_decimation(0.0, 1.0)
        except DecimationNotConverged as exc:
            assert 'residual' in str(exc)
        else:
            assert g == pytest.approx(-1j, abs=1e-6)

    def test_decimation_not_converged(self):
        with pytest.raises(DecimationNotConverged):
            surface_green_decimation(0.3, 1.0, max_iterations=1)


class TestLeadSpec:
    def test_default_attachment(self):
        assert LeadSpec().attachment(12) == (0, 12)

    def test_explicit_attachment(self):
        assert LeadSpec(attach_left=2, attach_right=5).attachment(7) == (4, 10)

    def test_odd_ring_needs_right_contact(self):
        with pytest.raises(LadderInvalidData, match='even'):
            LeadSpec().attachment(5)

    def test_out_of_range(self):
        with pytest.raises(LadderInvalidData, match='attach_right'):
            LeadSpec(attach_right=12).attachment(12)

    def test_same_rung(self):
        with pytest.raises(LadderInvalidData, match='rung 3'):
            LeadSpec(attach_left=3, attach_right=3).attachment(12)

    def test_negative_hopping(self):
        with pytest.raises(LadderInvalidData, match='lead_hopping'):
            LeadSpec(hopping=-1.0)

    def test_wide_band(self):
        leads = LeadSpec(hopping=2.0, tunneling=1.0, wide_band=True)
        assert leads.self_energy(123.0) == pytest.approx(-0.5j)

    def test_swapped(self):
        swapped = LeadSpec(attach_left=1, onsite=3.0).swapped(12)
        assert swapped.attachment(12) == (12, 2)
        assert swapped.onsite == 3.0


class TestDeviceGreen:
    def test_reflection_symmetry(self):
        """
        The ordinary ring with antipodal leads is symmetric under j -> -j
        """
        h = build_hamiltonian(_ring('periodic'))
        g = device_green(50.3, h, LeadSpec(onsite=V_SPECTRUM))
        n = N_SPECTRUM
        perm = [2 * ((-j) % n) + s for j in range(n) for s in (0, 1)]
        assert g[np.ix_(perm, perm)] == pytest.approx(g, abs=1e-10)

    def test_inverse(self):
        h = build_hamiltonian(_ring())
        leads = LeadSpec(onsite=V_SPECTRUM)
        energy = 50.7
        g = device_green(energy, h, leads)
        a = energy * np.eye(h.dim) - h.entries
        sigma = leads.self_energy(energy)
        a[0, 0] -= sigma
        a[N_SPECTRUM, N_SPECTRUM] -= sigma
        assert a @ g == pytest.approx(np.eye(h.dim), abs=1e-10)

    def test_singular(self):
        h = HermitianOperator(np.zeros((8, 8)))
        with pytest.raises(SingularMatrix) as info:
            device_green(0.0, h, LeadSpec(hopping=0.0))
        assert info.value.energy == 0.0

    def test_singular_diagonal_not_returned(self):
        """
        A diagonal matrix with a zero entry is refused, not divided through
        """
        h = HermitianOperator(np.diag([0.0, 1.0, 2.0, 3.0]))
        with pytest.raises(SingularMatrix):
            device_green(0.0, h, LeadSpec(hopping=0.0))
        g = device_green(0.5, h, LeadSpec(hopping=0.0))
        assert np.all(np.isfinite(g))
        assert np.diag(g) == pytest.approx(1 / (0.5 - np.array([0.0, 1.0, 2.0, 3.0])))


class TestTransmission:
    """
    Test Landauer transmission through both rings.
    """

    def test_moebius_suppression(self):
        """
        The half flux of the up channel blocks the conduction band
        """
        curve = transmission(_ring(), LeadSpec(onsite=V_SPECTRUM), CONDUCTION_GRID)
        assert curve.transmission.max() < 1e-6

    def test_periodic_resonances(self):
        curve = transmission(_ring('periodic'), LeadSpec(onsite=V_SPECTRUM), CONDUCTION_GRID)
        assert curve.transmission.max() > 0.5

    def test_suppression_shrinks_with_rung_coupling(self):
        """
        The residual leaks through the far-off down channel
        """
        maxima = []
        for zeeman in (25.0, 50.0, 100.0):
            grid = np.linspace(zeeman - 1.9, zeeman + 1.9, 401)
            curve = transmission(_ring(n_sites=4, zeeman=zeeman), LeadSpec(onsite=zeeman), grid)
            maxima.append(curve.transmission.max())
        assert maxima[0] > maxima[1] > maxima[2]

    @pytest.mark.parametrize('boundary', ['moebius', 'periodic'])
    @pytest.mark.parametrize('lead_hopping', [0.5, 1.0, 2.0])
    def test_unitarity(self, boundary, lead_hopping):
        grid = V_SPECTRUM + 2 * lead_hopping * np.linspace(-0.99, 0.99, 400)
        curve = transmission(_ring(boundary), LeadSpec(hopping=lead_hopping, onsite=V_SPECTRUM),
                             grid)
        assert np.all(curve.transmission >= 0)
        assert np.all(curve.transmission <= 1 + 1e-9)

    @pytest.mark.parametrize('boundary', ['moebius', 'periodic'])
    def test_reciprocity(self, boundary):
        leads = LeadSpec(onsite=V_SPECTRUM, attach_left=1, attach_right=5)
        grid = np.linspace(48.1, 51.9, 300)
        forward = transmission(_ring(boundary), leads, grid)
        backward = transmission(_ring(boundary), leads.swapped(N_SPECTRUM), grid)
        assert np.max(np.abs(forward.transmission - backward.transmission)) < 1e-10

    def test_valence_band_similar(self):
        """
        The untwisted down channel carries the valence band on both rings
        """
        grid = np.linspace(-V_SPECTRUM - 2 * XI + 0.1, -V_SPECTRUM + 2 * XI - 0.1, 2000)
        leads = LeadSpec(onsite=-V_SPECTRUM)
        counts = []
        for boundary in ('moebius', 'periodic'):
            curve = transmission(_ring(boundary), leads, grid)
            peaks, _ = scipy.signal.find_peaks(curve.transmission, prominence=1e-3)
            counts.append(len(peaks))
        assert counts[0] == counts[1]
        assert counts[0] > 0

    @pytest.mark.parametrize('boundary', ['moebius', 'periodic'])
    def test_gap(self, boundary):
        grid = np.linspace(-1.5, 1.5, 61)
        curve = transmission(_ring(boundary), LeadSpec(), grid)
        assert curve.transmission.max() < 1e-8

    def test_detached_leads(self):
        curve = transmission(_ring(), LeadSpec(hopping=0.0), np.linspace(48.1, 51.9, 11))
        assert np.all(curve.transmission == 0)

    def test_gamma_vanishes_outside_lead_band(self):
        grid = np.array([47.0, 50.0, 53.0])
        curve = transmission(_ring(), LeadSpec(onsite=V_SPECTRUM), grid)
        assert curve.gamma_left[0] == 0
        assert curve.gamma_right[2] == 0
        assert curve.gamma_left[1] == pytest.approx(2.0)

    def test_singular_energy_retried(self, caplog):
        spec = LadderSpec(n_sites=4, hopping=0.0, rung_couplings=0.0)
        with caplog.at_level(logging.WARNING):
            curve = transmission(spec, LeadSpec(hopping=0.0), [0.0])
        assert curve.energy_grid[0] == 0.0
        assert np.all(np.isfinite(curve.transmission))
        assert curve.transmission[0] == 0
        assert 'retrying' in caplog.text

    def test_table(self):
        grid = np.linspace(48.1, 51.9, 20)
        curve = transmission(_ring(), LeadSpec(onsite=V_SPECTRUM), grid)
        assert curve.columns == ('E', 'T', 'ReSigma_L', 'ImSigma_L', 'ReSigma_R', 'ImSigma_R')
        assert len(curve) == 20
        joined = TransmissionCurve.concatenate([
            transmission(_ring(), LeadSpec(onsite=V_SPECTRUM), grid[:7]),
            transmission(_ring(), LeadSpec(onsite=V_SPECTRUM), grid[7:]),
        ])
        assert joined.rows() == curve.rows()
