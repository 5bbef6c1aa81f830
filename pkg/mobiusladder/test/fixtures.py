import textwrap

# Ladder used for the spectra and transport runs
N_SPECTRUM = 12
V_SPECTRUM = 50.0
XI = 1.0

# Ladder used for the decoherence runs
N_DYNAMICS = 50

STARK_CUTOFF = 8
STARK_FIELD = 0.1

# Closed-form second-order shifts at n = 0, V = 50, per eps^2
STARK_UP_0 = 49.875 / 9949.8125
STARK_DOWN_0 = -50.625 / 10250.5625

# First root of J_0
J0_FIRST_ROOT = 2.404825557695773


def config_text(body):
    return textwrap.dedent(body).lstrip('\n')


SPECTRUM_CONFIG = config_text("""
    # 24-level spectrum for both boundaries
    experiment = spectrum
    n_sites = 12
    rung_coupling = 50.0   # V
    hopping = 1.0
    boundary = both
    """)

STARK_CONFIG = config_text("""
    experiment = stark
    rung_coupling = 50.0
    field = 0.1
    cutoff = 8
    n_low = -2
    n_high = 2
    """)

OPTICAL_CONFIG = config_text("""
    experiment = optical
    rung_coupling = 50.0
    boundary = both
    broadening = 0.1
    omega_points = 501
    """)

TRANSMISSION_CONFIG = config_text("""
    experiment = transmission
    n_sites = 12
    rung_coupling = 50.0
    lead_hopping = 1.0
    lead_onsite = auto
    band = conduction
    energy_min = 48.1
    energy_max = 51.9
    energy_points = 200
    boundary = both
    """)

DECOHERENCE_CONFIG = config_text("""
    experiment = decoherence
    n_sites = 50
    rung_coupling = 50.0
    hopping = 1.0
    """)

# n_sites has to be at least 3
BAD_N_SITES_CONFIG = config_text("""
    experiment = spectrum
    n_sites = -4
    """)

# 4 V^2 - V - 3/16 vanishes at V = 3/8, so the n = 0 up level is resonant
RESONANT_STARK_CONFIG = config_text("""
    experiment = stark
    rung_coupling = 0.375
    n_low = 0
    n_high = 0
    """)
