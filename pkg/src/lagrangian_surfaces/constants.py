"""Numerical tolerances and the constants of the elliptic CMC showcase."""

import math

# algebraic identities (round-off only)
EPS_ALG = 1e-10
# integrated or discretized quantities
EPS_ODE = 1e-6

DEFAULT_STEP = 1e-3

# verdict and drift gates
VERDICT_THRESHOLD = 100 * EPS_ODE
DRIFT_LIMIT = 100 * EPS_ODE

AGM_TOLERANCE = 1e-15
AGM_MAX_ITERATIONS = 32

# smallest |gamma_1| accepted by the Lagrangian angle formula
POLE_THRESHOLD = 1e-8

SQRT5 = math.sqrt(5.0)

# rho = 3/2, lambda = mu = 0 elliptic solutions
CMC_RHO = 1.5
CMC_ARGUMENT_SCALE = 5.0 ** 0.25
CMC_SPHERE_MODULUS = math.sqrt((5.0 - SQRT5) / 10.0)
CMC_HYPERBOLIC_MODULUS = math.sqrt((5.0 + SQRT5) / 10.0)
CMC_SPHERE_AMPLITUDE = math.sqrt((SQRT5 - 1.0) / 2.0)
CMC_HYPERBOLIC_AMPLITUDE = math.sqrt((SQRT5 + 1.0) / 2.0)
# phase factor (dn - i g sn) / sqrt(dn^2 + g^2 sn^2) of the second component
CMC_SPHERE_PHASE_RATIO = math.sqrt((5.0 + 2.0 * SQRT5) / 5.0)
CMC_HYPERBOLIC_PHASE_RATIO = math.sqrt((5.0 - 2.0 * SQRT5) / 5.0)

SIGNIFICANT_DIGITS = 9
