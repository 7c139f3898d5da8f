"""Independent reference computations used by the tests.

Plain bisection and library routines that share no code path with the
package's Newton solvers.
"""

import math

import numpy as np
from scipy import integrate, special


def bisect(f, lo, hi, tol=1e-14, max_iter=400):
    """Root of a sign-changing ``f`` on ``[lo, hi]`` by bisection only."""
    flo = f(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def gamma_q(a, y):
    return float(special.gammaincc(a, y))


def gamma_q_inv(a, q):
    return float(special.gammainccinv(a, q))


def lambert_w(x, k):
    return float(np.real(special.lambertw(x, k)))


def quad(f, lo, hi):
    return integrate.quad(f, lo, hi, limit=200, epsabs=1e-12, epsrel=1e-12)[0]


def power_exp_root(beta, x):
    """Unbounded root of ``t**beta e**-t = x`` by bisection on the log form."""
    g = lambda t: t - beta * math.log(t) + math.log(x)
    lo = max(beta, 1e-12)
    hi = lo + 1.0
    while g(hi) < 0:
        hi *= 2.0
    return bisect(g, lo, hi)
