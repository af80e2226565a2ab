"""Closed-form bounds and the two real-valued optimizations.

Everything that is compared against a count is an exact ``int`` or
``Fraction``; floating point is confined to :func:`gamma_r`, :func:`m_rsp`
and :func:`gamma_via_m`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .setcore import ValidationError

GOLDEN = (math.sqrt(5) - 1) / 2
GRID_STEP = 1e-4
BISECTION_STEPS = 200


def _f(n: int, t: int) -> int:
    return sum(comb(n, k) << (n - k) for k in range(t))


def f_bound(n: int, t: int) -> int:
    """f(n, t) = sum_{k<t} C(n,k) 2^(n-k): the cross-avoiding disjoint-pair bound."""
    if not 1 <= t <= n:
        raise ValidationError(f"need 1 <= t <= n, got n={n}, t={t}")
    return _f(n, t)


def f_recurrence_check(nmax: int) -> bool:
    """f(n,t) == 2 f(n-1,t) + f(n-1,t-1) for 2 <= n <= nmax, 1 <= t < n, with f(.,0) = 0."""
    if nmax < 2:
        raise ValidationError("nmax must be at least 2")
    for n in range(2, nmax + 1):
        for t in range(1, n):
            prev_t1 = _f(n - 1, t - 1) if t > 1 else 0
            if f_bound(n, t) != 2 * f_bound(n - 1, t) + prev_t1:
                return False
    return True


def single_family_bound(n: int, t: int) -> Fraction:
    """(f(n,t) - 1) / 2, the single t-avoiding family bound."""
    return Fraction(f_bound(n, t) - 1, 2)


def frankl_wilson_size_bound(n: int, s: int) -> int:
    if not 0 <= s <= n:
        raise ValidationError(f"need 0 <= s <= n, got n={n}, s={s}")
    return sum(comb(n, k) for k in range(s + 1))


def l_cross_bound(n: int, s: int) -> int:
    """sum_{k<s} C(n,k) 2^(n-k) for any s >= 0 (s = 0 gives 0)."""
    return _f(n, s)


def classification_inequality_sides(n: int, l: int) -> tuple[int, int]:
    """Both sides of the t=2 classification inequality, doubled to clear 2^-1.

    The third term's coefficient n-1-l vanishes at l = n-1, the only place
    its exponent goes negative, so doubling suffices.
    """
    if n < 3 or not 1 <= l <= n - 1:
        raise ValidationError(f"need n >= 3 and 1 <= l <= n-1, got n={n}, l={l}")
    lhs = (n - 1 + l) << (n - 1)
    lhs += (l + 1) << (n - l)
    if n - 1 - l:
        lhs += (n - 1 - l) << (n - 1 - l)
    rhs = n << n
    return lhs, rhs


def check_inequality_2_1(n: int, l: int) -> bool:
    lhs, rhs = classification_inequality_sides(n, l)
    return lhs < rhs


# ---------------------------------------------------------------------------
# real-valued optimization


def gamma_objective(alpha: float | np.ndarray, r: int) -> float | np.ndarray:
    return alpha**r * (1 - alpha) ** r + r * alpha ** (r + 1) * (1 - alpha) ** (r - 1)


@dataclass(frozen=True)
class GammaResult:
    r: int
    alpha_star: float
    gamma: float
    tolerance: float


def _golden_max(fn, lo: float, hi: float, tol: float) -> float:
    """Argmax of a unimodal ``fn`` on [lo, hi] to within ``tol``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fn(d)
    return (a + b) / 2


def _grid_then_golden(fn_vec, fn, tol: float) -> float:
    grid = np.linspace(0.0, 1.0, int(round(1 / GRID_STEP)) + 1)
    values = fn_vec(grid)
    i = int(np.argmax(values))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, grid.size - 1)])
    return _golden_max(fn, lo, hi, tol)


def gamma_r(r: int, tol: float = 1e-9) -> GammaResult:
    """gamma_r = max over [0,1] of a^r (1-a)^r + r a^(r+1) (1-a)^(r-1)."""
    if r < 3:
        raise ValidationError(f"gamma_r needs r >= 3, got {r}")
    if tol <= 0:
        raise ValidationError("tol must be positive")
    # Near the optimum the objective is flat to double precision, so the
    # refinement compares exact rational values of the polynomial.
    alpha = _grid_then_golden(
        lambda a: gamma_objective(a, r),
        lambda a: gamma_objective(Fraction(a), r),
        tol,
    )
    return GammaResult(r, alpha, float(gamma_objective(Fraction(alpha), r)), tol)


def clique_density(q: float, r: int) -> float:
    """q^r + r q^(r-1) (1-q) = r q^(r-1) - (r-1) q^r, increasing on [0, 1]."""
    return r * q ** (r - 1) - (r - 1) * q**r


def solve_q(p: float, r: int) -> float:
    """The root q in [0, 1] of q^r + r q^(r-1) (1-q) = p, by fixed-step bisection."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(BISECTION_STEPS):
        mid = (lo + hi) / 2
        if clique_density(mid, r) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def m_rsp(r: int, s: int, p: float) -> float:
    """M_{r,s,p} = max{(1-p^(1/r))^s + s p^(1/r) (1-p^(1/r))^(s-1), (1-q)^s}."""
    if r < 2 or s < 2:
        raise ValidationError(f"need r, s >= 2, got r={r}, s={s}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p={p} outside [0, 1]")
    root = p ** (1.0 / r)
    first = (1 - root) ** s + s * root * (1 - root) ** (s - 1)
    q = solve_q(p, r)
    return max(first, (1 - q) ** s)


def gamma_via_m(r: int, tol: float = 1e-9) -> float:
    """max over a in [0,1] of a^r M_{r,r,a^r}."""
    if r < 3:
        raise ValidationError(f"need r >= 3, got {r}")

    def fn(a: float) -> float:
        return a**r * m_rsp(r, r, a**r)

    alpha = _grid_then_golden(np.vectorize(fn), fn, tol)
    return fn(alpha)


def gamma_stationarity_residual(alpha: float) -> float:
    """4a^2 - a - 1, which vanishes at the r = 3 maximizer."""
    return 4 * alpha * alpha - alpha - 1
