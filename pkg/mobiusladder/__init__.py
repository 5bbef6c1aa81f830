__version__ = '0.1.0'

from .lattice import (Basis, Boundary, Channel, HermitianOperator, LadderSpec,
                      build_hamiltonian, to_pseudospin_basis)
from .config import RunConfig
from .runner import ExperimentRunner
