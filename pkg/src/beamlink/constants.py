from enum import Enum, unique

# speed of light in vacuum, m/s (exact)
C = 299792458.0

# Moon defaults: gravitational parameter (km^3/s^2), mean radius (km),
# sidereal rotation period (s, 27.3217 days)
MOON_MU = 4902.800066
MOON_RADIUS = 1737.4
MOON_ROTATION_PERIOD = 2360591.5

# Kepler's equation, Newton iteration on the eccentric anomaly.
KEPLER_TOLERANCE = 1e-12
KEPLER_MAX_ITERATIONS = 50

# Visibility window boundaries are refined to this resolution (s).
WINDOW_REFINEMENT = 1e-3

# Radial capture integral tolerances. The absolute floor is in watts.
QUAD_EPSREL = 1e-9
QUAD_EPSABS = 1e-20
QUAD_LIMIT = 200

# Below this |zeta| the Airy pattern is evaluated by its series.
PATTERN_SERIES_THRESHOLD = 1e-4

# Monte Carlo draws are generated in fixed blocks, one generator stream per
# block, so results do not depend on the number of workers.
BLOCK_SIZE = 2 ** 16

DEFAULT_N_SAMPLES = 1000000
DEFAULT_N_BINS = 200


@unique
class Tracking(str, Enum):
    """
    How a dish keeps its boresight on the far end of the link.
    """

    FULL = 'full'
    RECEIVE_ONLY = 'receive_only'
    FIXED = 'fixed'


@unique
class Target(str, Enum):
    """
    Where a Monte Carlo end-to-end power distribution is taken.
    """

    LLO = 'llo'
    LSP = 'lsp'
    MALAPERT = 'malapert'
