import logging
import os

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import ConfigInvalidData
from .dynamics import DecoherenceSeries, decoherence_factor
from .lattice import build_hamiltonian
from .spectra import (EigenvalueTable, build_continuum, compare_with_continuum,
                      continuum_levels, optical_spectrum)
from .transport import TransmissionCurve, transmission

"""Runs one configured experiment and writes its result files"""

logger = logging.getLogger(__name__)

MAX_WORKERS_ENV = 'MOBIUSLADDER_MAX_WORKERS'


def max_workers_from_env(environ=None):
    """
    Worker cap from MOBIUSLADDER_MAX_WORKERS, or the CPU count.

    Raises:
        ConfigInvalidData: if the variable is set to anything but a
            positive integer.
    """
    environ = os.environ if environ is None else environ
    value = environ.get(MAX_WORKERS_ENV)
    if value is None or value == '':
        return os.cpu_count() or 1
    try:
        workers = int(value)
    except ValueError:
        workers = 0
    if workers < 1:
        raise ConfigInvalidData("must be a positive integer, got '{}'".format(value),
                                key=MAX_WORKERS_ENV)
    return workers


class ExperimentRunner(object):
    """
    Runs the experiment a RunConfig describes.

    Grid evaluations are split into contiguous chunks and handed to a pool
    of worker threads; results are reassembled in grid order and files are
    written one after another.

    Args:
        config (RunConfig): A configuration; it is validated first.
        max_workers (int): Pool size. Defaults to :func:`max_workers_from_env`.

    Examples:
        >>> with ExperimentRunner(RunConfig.from_file('run.cfg')) as runner:
        ...     written = runner.run()
    """
    def __init__(self, config, max_workers=None):
        config.validate_data(raise_on_invalid=True)
        self.config = config
        self.max_workers = max_workers if max_workers is not None else max_workers_from_env()
        self._pool = ThreadPoolExecutor(max_workers=self.max_workers)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self._pool.shutdown(wait=True)

    def _chunked(self, func, grid):
        chunks = [c for c in np.array_split(np.asarray(grid), self.max_workers) if len(c)]
        futures = [self._pool.submit(func, c) for c in chunks]
        return [f.result() for f in futures]

    def spectrum(self, spec):
        return EigenvalueTable(build_hamiltonian(spec).eigenvalues())

    def stark(self, spec):
        c = self.config
        levels = continuum_levels(range(c.n_low, c.n_high + 1), c.rung_coupling)
        levels = levels.with_stark_shifts(c.field)
        model = build_continuum(c.cutoff, c.rung_coupling, c.field)
        return compare_with_continuum(levels, model)

    def optical(self, spec):
        c = self.config
        if c.mode == 'discrete':
            source = spec
        else:
            source = continuum_levels(range(c.n_low, c.n_high + 1), c.rung_coupling,
                                      spec.boundary)
        return optical_spectrum(source, c.omega_grid(), broadening=c.broadening,
                                field=c.field, occupation=c.occupation)

    def transmission(self, spec):
        leads = self.config.lead_spec()
        curves = self._chunked(lambda grid: transmission(spec, leads, grid),
                               self.config.energy_grid())
        return TransmissionCurve.concatenate(curves)

    def decoherence(self, spec):
        def evaluate(grid):
            return decoherence_factor(spec.n_sites, spec.hopping, spec.rung_couplings[0],
                                      grid, spec.boundary)
        return DecoherenceSeries.concatenate(self._chunked(evaluate, self.config.time_grid()))

    def results(self):
        """
        Computes every table without writing anything.

        Returns:
            list[(str, ResultTable)]: file stem and table, in output order.
        """
        experiment = self.config.experiment
        method = getattr(self, experiment)
        out = []
        for spec in self.config.ladder_specs():
            logger.info("Running %s on %r", experiment, spec)
            table = method(spec)
            stem = '{}_{}'.format(experiment, spec.boundary.value)
            out.append((stem, table))
            if experiment == 'optical':
                out.append(('peaks_{}'.format(spec.boundary.value), table.peaks))
        return out

    def run(self):
        """
        Computes and writes every output file of the experiment.

        Returns:
            list[(str, ResultTable)]: the written paths and their tables.
        """
        c = self.config
        os.makedirs(c.output_dir, exist_ok=True)
        header = c.header_lines()
        written = []
        for stem, table in self.results():
            path = os.path.join(c.output_dir, '{}.{}'.format(stem, c.format))
            table.write(path, header=header, fmt=c.format)
            logger.info("Wrote %s", path)
            written.append((path, table))
        return written
