from .propagate import (WavepacketInvalidData, WavepacketState, channel_propagators, evolve,
                        evolve_many, propagator_bessel)
from .decoherence import (CoherenceOutOfRange, DecoherenceSeries, EntanglementSeries,
                          decoherence_factor, entanglement_entropy, entropy_from_coherence)

__all__ = ['WavepacketInvalidData', 'WavepacketState', 'channel_propagators', 'evolve',
           'evolve_many', 'propagator_bessel', 'CoherenceOutOfRange', 'DecoherenceSeries',
           'EntanglementSeries', 'decoherence_factor', 'entanglement_entropy',
           'entropy_from_coherence']
