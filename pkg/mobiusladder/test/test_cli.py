import csv
import json
import os

import pytest

from .. import __version__
from ..cli import EXIT_CONFIG, EXIT_NUMERICAL, main
from ..lattice import LadderSpec, build_hamiltonian
from .fixtures import (BAD_N_SITES_CONFIG, DECOHERENCE_CONFIG, OPTICAL_CONFIG,
                       RESONANT_STARK_CONFIG, SPECTRUM_CONFIG, STARK_CONFIG,
                       TRANSMISSION_CONFIG)


def _read_csv(path):
    """(header lines, column names, rows) of a result file."""
    with open(path, newline='') as fh:
        lines = fh.read().split('\n')
    header = [line for line in lines if line.startswith('#')]
    body = [line for line in lines if line and not line.startswith('#')]
    rows = list(csv.reader(body))
    return header, rows[0], rows[1:]


@pytest.fixture
def run(tmp_path):
    def run(experiment, text, *args):
        path = tmp_path / '{}.cfg'.format(experiment)
        path.write_text(text)
        out = tmp_path / 'out'
        status = main([experiment, '--config', str(path), '--out', str(out)] + list(args))
        return status, out
    return run


class TestCommandLine:
    """
    Test the mobiusladder command end to end.
    """

    def test_spectrum(self, run, capsys):
        status, out = run('spectrum', SPECTRUM_CONFIG)
        assert status == 0
        header, columns, rows = _read_csv(str(out / 'spectrum_moebius.csv'))
        assert header[0] == '# experiment = spectrum'
        assert '# boundary = both' in header
        assert columns == ['index', 'energy']
        assert len(rows) == 24
        assert float(rows[0][1]) < float(rows[-1][1])
        assert os.path.exists(str(out / 'spectrum_periodic.csv'))
        printed = capsys.readouterr().out
        assert '(24 rows)' in printed
        assert printed.count('wrote ') == 2

    def test_stark(self, run):
        status, out = run('stark', STARK_CONFIG)
        assert status == 0
        _, columns, rows = _read_csv(str(out / 'stark_moebius.csv'))
        assert columns == ['n', 'channel', 'E0', 'shift', 'E_perturbative', 'E_exact']
        assert len(rows) == 10
        for row in rows:
            assert abs(float(row[4]) - float(row[5])) < 1e-6

    def test_optical(self, run):
        status, out = run('optical', OPTICAL_CONFIG)
        assert status == 0
        _, columns, rows = _read_csv(str(out / 'optical_moebius.csv'))
        assert columns == ['omega', 'intensity']
        assert len(rows) == 501
        _, columns, rows = _read_csv(str(out / 'peaks_periodic.csv'))
        assert columns == ['center', 'weight']
        assert [float(r[0]) for r in rows] == [100.0]

    def test_transmission(self, run):
        status, out = run('transmission', TRANSMISSION_CONFIG)
        assert status == 0
        _, columns, moebius = _read_csv(str(out / 'transmission_moebius.csv'))
        _, _, periodic = _read_csv(str(out / 'transmission_periodic.csv'))
        assert columns == ['E', 'T', 'ReSigma_L', 'ImSigma_L', 'ReSigma_R', 'ImSigma_R']
        assert max(float(r[1]) for r in moebius) < 1e-6
        assert max(float(r[1]) for r in periodic) > 0.5

    def test_decoherence_json(self, run):
        status, out = run('decoherence', DECOHERENCE_CONFIG, '--format', 'json')
        assert status == 0
        with open(str(out / 'decoherence_moebius.json')) as fh:
            data = json.load(fh)
        assert data['parameters']['n_sites'] == '50'
        assert data['parameters']['t_max'] == 'auto'
        assert data['columns'][0] == 't'
        assert len(data['rows']) == 2000
        assert data['rows'][0][3] == pytest.approx(0.5, abs=1e-14)

    def test_floats_round_trip(self, run):
        """
        Values are written with enough digits to read back exactly
        """
        status, out = run('spectrum', SPECTRUM_CONFIG)
        assert status == 0
        _, _, rows = _read_csv(str(out / 'spectrum_moebius.csv'))
        values = build_hamiltonian(LadderSpec()).eigenvalues()
        assert [float(r[1]) for r in rows] == list(values)


class TestExitStatus:
    """
    Test the exit status and messages of failed runs.
    """

    def test_bad_config(self, run, capsys):
        status, out = run('spectrum', BAD_N_SITES_CONFIG)
        assert status == EXIT_CONFIG == 1
        err = capsys.readouterr().err
        assert "configuration error: line 2: 'n_sites'" in err
        assert not os.path.exists(str(out))

    def test_missing_file(self, tmp_path, capsys):
        status = main(['spectrum', '--config', str(tmp_path / 'nowhere.cfg')])
        assert status == EXIT_CONFIG
        assert 'configuration error' in capsys.readouterr().err

    def test_experiment_mismatch(self, run, capsys):
        status, _ = run('stark', SPECTRUM_CONFIG)
        assert status == EXIT_CONFIG
        assert "'experiment'" in capsys.readouterr().err

    def test_resonant_stark(self, run, capsys):
        status, _ = run('stark', RESONANT_STARK_CONFIG)
        assert status == EXIT_NUMERICAL == 2
        assert 'numerical error: Stark shift undefined' in capsys.readouterr().err

    def test_unknown_experiment(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(['phonons', '--config', str(tmp_path / 'run.cfg')])
        assert info.value.code == EXIT_CONFIG

    def test_config_required(self):
        with pytest.raises(SystemExit) as info:
            main(['spectrum'])
        assert info.value.code == EXIT_CONFIG

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(['--version'])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out
