"""Shared polynomial tables used by both kernel backends.

Both lanes evaluate literally the same polynomials so that results agree
to rounding regardless of backend.
"""

import math

import numpy as np

# Si(x) = x * P(x^2) for |x| <= SI_SERIES_CUTOFF, P(u) = sum c_k u^k,
# c_k = (-1)^k / ((2k+1) (2k+1)!).  26 terms keep the truncation error
# below 1e-21 at the cutoff; the alternating-sum rounding stays < 5e-15.
SI_SERIES_CUTOFF = 8.0
SI_COEF = np.array(
    [(-1.0) ** k / ((2 * k + 1) * math.factorial(2 * k + 1)) for k in range(26)]
)

# Second antiderivative of sinc: S2(y) = y Si(y) + cos y - 1 = y^2 * Q(y^2)
# for |y| <= S2_SERIES_CUTOFF, Q(u) = sum d_k u^k, d_k = (-1)^k/((2k+1)(2k+2)!).
# The series form avoids the cancellation of the closed form near y = 0.
S2_SERIES_CUTOFF = 2.0
S2_COEF = np.array(
    [(-1.0) ** k / ((2 * k + 1) * math.factorial(2 * k + 2)) for k in range(14)]
)

# Lentz continued-fraction settings for the auxiliary function
# K(ix) = g(x) - i f(x) used when |x| > SI_SERIES_CUTOFF.  Convergence is
# slowest just above the cutoff (~40 iterations at x = 8).
SI_CF_MAXIT = 120
SI_CF_FIXED_ITERS = 80
SI_CF_EPS = 1e-17

SINC_SERIES_CUTOFF = 1e-4
