from .eigen import EigenvalueTable, eigensystem
from .continuum import (ContinuumModel, LevelTable, NearDegeneracy, StarkComparison,
                        build_continuum, compare_with_continuum, continuum_levels,
                        level_energy, stark_doublet, stark_shift)
from .optical import OpticalSpectrum, PeakTable, lorentzian, optical_spectrum

__all__ = ['EigenvalueTable', 'eigensystem', 'ContinuumModel', 'LevelTable',
           'NearDegeneracy', 'StarkComparison', 'build_continuum', 'compare_with_continuum',
           'continuum_levels', 'level_energy', 'stark_doublet', 'stark_shift',
           'OpticalSpectrum', 'PeakTable', 'lorentzian', 'optical_spectrum']
