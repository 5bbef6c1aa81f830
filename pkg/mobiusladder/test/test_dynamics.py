import logging

import numpy as np
import pytest
import scipy.signal
import scipy.special

from ..lattice import Basis, Boundary, Channel, LadderInvalidType, LadderSpec
from ..dynamics import (CoherenceOutOfRange, DecoherenceSeries, WavepacketInvalidData,
                        WavepacketState, channel_propagators, decoherence_factor,
                        entanglement_entropy, entropy_from_coherence, evolve, evolve_many,
                        propagator_bessel)
from .fixtures import J0_FIRST_ROOT, N_DYNAMICS, V_SPECTRUM, XI


def _ladder(boundary='moebius', zeeman=V_SPECTRUM):
    return LadderSpec(n_sites=N_DYNAMICS, hopping=XI, rung_couplings=zeeman, boundary=boundary)


class TestWavepacketState:
    """
    Test construction and basis changes of wavepackets.
    """

    def test_localized(self):
        """
        a_0 is an equal superposition of the two channels
        """
        psi = WavepacketState.localized(_ladder())
        assert psi.basis is Basis.PSEUDO_SPIN
        assert psi.channel_amplitudes(Channel.UP)[0] == pytest.approx(1 / np.sqrt(2))
        assert psi.channel_amplitudes(Channel.DOWN)[0] == pytest.approx(1 / np.sqrt(2))
        assert psi.norm() == pytest.approx(1.0, abs=1e-15)

    def test_b_edge(self):
        psi = WavepacketState.localized(_ladder(), edge='b')
        assert psi.channel_amplitudes(Channel.UP)[0] == pytest.approx(-1 / np.sqrt(2))

    def test_round_trip_basis(self):
        spec = _ladder()
        psi = WavepacketState.localized(spec, rung=7, basis=Basis.SITE_AB)
        back = psi.to_basis(spec, Basis.PSEUDO_SPIN).to_basis(spec, Basis.SITE_AB)
        assert back.amplitudes == pytest.approx(psi.amplitudes, abs=1e-15)

    def test_not_normalized(self):
        with pytest.raises(WavepacketInvalidData, match='norm'):
            WavepacketState([1.0, 1.0])

    def test_odd_length(self):
        with pytest.raises(WavepacketInvalidData):
            WavepacketState([1.0, 0.0, 0.0])

    def test_bad_rung(self):
        with pytest.raises(WavepacketInvalidData, match='rung'):
            WavepacketState.localized(_ladder(), rung=N_DYNAMICS)

    def test_channels_need_pseudo_spin(self):
        psi = WavepacketState.localized(_ladder(), basis=Basis.SITE_AB)
        with pytest.raises(LadderInvalidType):
            psi.channel_amplitudes(Channel.UP)


class TestEvolution:
    """
    Test unitary evolution against the winding-number propagators.
    """

    def test_matches_bessel_form(self):
        spec = _ladder()
        psi = evolve(spec, WavepacketState.localized(spec), 1.0)
        assert psi.time == 1.0
        for channel in Channel:
            expected = [propagator_bessel(j, 1.0, channel, N_DYNAMICS, XI, V_SPECTRUM)
                        for j in range(N_DYNAMICS)]
            assert psi.channel_amplitudes(channel) == pytest.approx(
                np.array(expected) / np.sqrt(2), abs=1e-10)

    def test_propagators(self):
        spec = _ladder('periodic', zeeman=3.0)
        times = [0.0, 2.5, 10.0]
        propagators = channel_propagators(spec, times)
        assert propagators[Channel.UP].shape == (3, N_DYNAMICS)
        for i, t in enumerate(times):
            g = propagator_bessel(4, t, Channel.DOWN, N_DYNAMICS, XI, 3.0, Boundary.PERIODIC)
            assert propagators[Channel.DOWN][i, 4] == pytest.approx(g, abs=1e-10)

    def test_short_time_bessel(self):
        """
        Before the packet has gone round the ring G(0, t) = J_0(2 xi t)
        """
        g = propagator_bessel(0, 1.0, Channel.UP, N_DYNAMICS, XI)
        assert abs(g) == pytest.approx(scipy.special.jv(0, 2.0), abs=1e-14)

    def test_norm_conserved(self):
        spec = _ladder()
        states = evolve_many(spec, WavepacketState.localized(spec), np.linspace(0, 60, 13))
        assert all(abs(s.norm() - 1) < 1e-12 for s in states)

    def test_keeps_basis(self):
        spec = _ladder()
        psi = WavepacketState.localized(spec, basis=Basis.SITE_AB)
        assert evolve(spec, psi, 3.0).basis is Basis.SITE_AB

    def test_biased_ladder_refused(self):
        spec = LadderSpec(n_sites=8, onsite_bias=0.1)
        with pytest.raises(LadderInvalidType):
            evolve(spec, WavepacketState.localized(spec), 1.0)

    def test_varying_coupling_refused(self):
        spec = LadderSpec(n_sites=4, rung_couplings=[1.0, 2.0, 1.0, 2.0])
        with pytest.raises(LadderInvalidType):
            evolve(spec, WavepacketState.localized(spec), 1.0)

    def test_size_mismatch(self):
        with pytest.raises(WavepacketInvalidData):
            evolve(_ladder(), WavepacketState.localized(LadderSpec(n_sites=4)), 1.0)


class TestDecoherence:
    """
    Test the decoherence factor and its closed forms.
    """

    @pytest.fixture(scope='class')
    def series(self):
        return decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, np.linspace(0, 75, 2000))

    def test_starts_coherent(self, series):
        assert abs(series.d_direct[0]) == pytest.approx(0.5, abs=1e-14)
        assert series.d_direct[0] == pytest.approx(0.5, abs=1e-14)

    def test_winding_sum_agrees(self, series):
        """
        The forms agree past t = N / (2 xi), after the packet has gone round
        """
        assert series.time_grid[-1] > N_DYNAMICS / (2 * XI)
        assert np.max(np.abs(series.d_direct - series.d_winding)) < 1e-10

    def test_bessel_form_is_conjugate(self, series):
        assert np.max(np.abs(series.d_bessel - np.conj(series.d_direct))) < 1e-10

    def test_first_zero(self, series):
        """
        |D| ~ |J_0(2 xi' t)|/2 first vanishes near t = 19.14 for N = 50
        """
        xi_prime = 2 * XI * np.sin(np.pi / (2 * N_DYNAMICS))
        assert series.xi_prime == pytest.approx(xi_prime, rel=1e-14)
        predicted = J0_FIRST_ROOT / (2 * xi_prime)
        assert predicted == pytest.approx(19.14, abs=0.01)

        window = (series.time_grid > 10) & (series.time_grid < 25)
        t_zero = series.time_grid[window][np.argmin(np.abs(series.d_direct[window]))]
        assert t_zero == pytest.approx(predicted, rel=0.01)

    def test_below_envelope(self, series):
        """
        |D| stays under half the spreading envelope sqrt(N / (2 pi xi t))
        """
        window = (series.time_grid >= 5) & (series.time_grid <= 20)
        ratio = np.abs(series.d_direct[window]) / (0.5 * series.envelope[window])
        assert ratio.max() <= 1.2
        assert ratio.max() >= 0.5

        peaks, _ = scipy.signal.find_peaks(np.abs(series.d_direct[window]))
        assert np.all(np.abs(series.d_direct[window][peaks])
                      <= 0.6 * series.envelope[window][peaks])

    def test_independent_of_rung_coupling(self, series):
        other = decoherence_factor(N_DYNAMICS, XI, 5.0, series.time_grid)
        assert np.abs(other.d_direct) == pytest.approx(np.abs(series.d_direct), abs=1e-10)

    def test_periodic_stays_coherent(self):
        series = decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, np.linspace(0, 30, 301),
                                    Boundary.PERIODIC)
        assert np.abs(series.d_direct) == pytest.approx(np.full(301, 0.5), abs=1e-12)
        assert series.xi_prime == 0
        assert np.abs(series.d_bessel) == pytest.approx(np.full(301, 0.5), abs=1e-12)

    def test_bad_grid(self):
        with pytest.raises(ValueError, match='ascending'):
            decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, [0.0, 2.0, 1.0])
        with pytest.raises(ValueError):
            decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, [-1.0, 0.0])

    def test_table(self, series):
        assert series.columns == ('t', 'ReD_direct', 'ImD_direct', 'absD_direct', 'absD_bessel',
                                  'envelope', 'entropy')
        first = series.rows()[0]
        assert first[0] == 0.0
        assert first[5] == np.inf
        assert first[6] == pytest.approx(0.0, abs=1e-12)

    def test_concatenate(self):
        grid = np.linspace(0, 10, 21)
        whole = decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, grid)
        parts = DecoherenceSeries.concatenate([
            decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, grid[:8]),
            decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, grid[8:]),
        ])
        assert parts.d_direct == pytest.approx(whole.d_direct, abs=1e-13)
        assert len(parts) == 21


class TestEntanglementEntropy:
    def test_values(self):
        s = entropy_from_coherence([0.5, 0.25, 0.0])
        quarter = -0.75 * np.log(0.75) - 0.25 * np.log(0.25)
        assert s == pytest.approx(np.array([0.0, quarter, np.log(2)]))

    def test_grows_to_ln2_at_first_zero(self):
        grid = np.linspace(0, 30, 3001)
        entropy = entanglement_entropy(decoherence_factor(N_DYNAMICS, XI, V_SPECTRUM, grid))
        assert entropy.entropy[0] == pytest.approx(0.0, abs=1e-12)
        assert entropy.entropy.max() == pytest.approx(np.log(2), abs=1e-4)
        assert entropy.columns == ('t', 'entropy')

    def test_roundoff_clipped(self, caplog):
        with caplog.at_level(logging.WARNING):
            s = entropy_from_coherence([0.5 + 1e-14])
        assert s[0] == 0.0
        assert 'Clipping' in caplog.text

    def test_out_of_range(self):
        with pytest.raises(CoherenceOutOfRange):
            entropy_from_coherence([0.6])
