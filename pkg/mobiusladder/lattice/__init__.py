from .base import (Basis, Boundary, Channel, LadderInvalidData, LadderInvalidType,
                   OperatorNotHermitian)
from .spec import LadderSpec
from .geometry import SiteCoordinates, build_geometry, embed
from .operator import HermitianOperator
from .hamiltonian import (PseudoSpinForm, build_hamiltonian, channel_dispersion,
                          channel_hamiltonians, loop_phase, rung_unitary,
                          to_pseudospin_basis)

__all__ = ['Basis', 'Boundary', 'Channel', 'LadderInvalidData', 'LadderInvalidType',
           'OperatorNotHermitian', 'LadderSpec', 'SiteCoordinates', 'build_geometry',
           'embed', 'HermitianOperator', 'PseudoSpinForm', 'build_hamiltonian',
           'channel_dispersion', 'channel_hamiltonians', 'loop_phase', 'rung_unitary',
           'to_pseudospin_basis']
