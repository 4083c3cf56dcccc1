"""Closed forms: monomial and diagonal lct, stratified beta, homogeneous fibers, the d^r bound."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence


class ClosedFormError(ValueError):
    pass


def _exponents(a: Sequence[int], positive: bool = False) -> tuple:
    a = tuple(int(x) for x in a)
    if not a:
        raise ClosedFormError("empty exponent vector")
    if any(x < 0 for x in a):
        raise ClosedFormError(f"negative exponent in {a}")
    if positive and any(x < 1 for x in a):
        raise ClosedFormError(f"all exponents must be >= 1, got {a}")
    if not any(a):
        raise ClosedFormError("exponent vector is zero")
    return a


def lct_monomial(a: Sequence[int]) -> Fraction:
    """lct of x_1^a_1 ... x_n^a_n: min over a_i > 0 of 1/a_i."""
    a = _exponents(a)
    return min(Fraction(1, x) for x in a if x)


def lct_diagonal(a: Sequence[int]) -> Fraction:
    """lct of x_1^a_1 + ... + x_n^a_n: min(1, sum 1/a_i)."""
    a = _exponents(a, positive=True)
    return min(Fraction(1), sum(Fraction(1, x) for x in a))


def beta_monomial(a: Sequence[int], m: int) -> int:
    """Largest stratum n*m(m+1)/2 - sum nu_i(nu_i+1)/2 over nu in {0..m}^n with sum a_i nu_i >= m."""
    a = _exponents(a)
    if m < 1:
        raise ClosedFormError("m must be >= 1")
    n = len(a)
    total = n * m * (m + 1) // 2
    best = None
    for nu in itertools.product(range(m + 1), repeat=n):
        if sum(x * y for x, y in zip(a, nu)) >= m:
            v = total - sum(x * (x + 1) // 2 for x in nu)
            if best is None or v > best:
                best = v
    return best


def beta_monomial_limit(a: Sequence[int]) -> Fraction:
    a = _exponents(a)
    return len(a) - Fraction(1, sum(x * x for x in a))


def homog_fiber_dims(n: int, d: int, m_max: int) -> dict:
    """Fiber and total jet dimensions for a degree-d cone with isolated singularity in A^n.

    F_m = mn for m <= d-1, else n(d-1) + D_{m-d}; D_m = max((m+1)(n-1), F_m).
    """
    if n < 2 or d < 1 or m_max < 0:
        raise ClosedFormError("need n >= 2, d >= 1, m_max >= 0")
    F, D = [], []
    for m in range(m_max + 1):
        f = m * n if m <= d - 1 else n * (d - 1) + D[m - d]
        F.append(f)
        D.append(max((m + 1) * (n - 1), f))
    rows = [{"m": m, "fiber": F[m], "dim": D[m], "main_component": (m + 1) * (n - 1),
             "pure": F[m] <= (m + 1) * (n - 1), "irreducible": F[m] < (m + 1) * (n - 1)}
            for m in range(m_max + 1)]
    return {"n": n, "d": d, "F": F, "D": D, "rows": rows,
            "pure_dimensional": d <= n, "irreducible": d < n}


def prop54_rhs(d: int, r: int, j: int) -> Fraction:
    out = Fraction(d)
    for i in range(1, r):
        out *= Fraction(j * d + i, j + i)
    return out


def prop54_check(n: int, d: int, r: int, j_max: int) -> dict:
    """Evaluate d * prod_{i<r} (jd+i)/(j+i) for j <= j_max against n.

    The values increase to d^r; pure-dimensional r-iterated jet schemes of a
    degree-d hypersurface singularity in A^n force d^r <= n.
    """
    if d < 1 or r < 2 or j_max < 1 or n < 1:
        raise ClosedFormError("need d >= 1, r >= 2, j_max >= 1, n >= 1")
    values = [prop54_rhs(d, r, j) for j in range(1, j_max + 1)]
    monotone = all(x <= y for x, y in zip(values, values[1:]))
    limit = d ** r
    bounded = all(v <= limit for v in values)
    first_exceed = next((j for j, v in enumerate(values, 1) if v > n), None)
    passes = limit <= n
    return {"n": n, "d": d, "r": r, "rhs": [{"j": j, "value": v} for j, v in enumerate(values, 1)],
            "nondecreasing": monotone, "bounded_by_limit": bounded, "limit": limit,
            "necessary_condition_holds": passes, "first_j_exceeding_n": first_exceed,
            "verdict": "necessary condition passes" if passes else "not pure-dimensional"}
