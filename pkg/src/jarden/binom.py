"""Generalized binomial coefficients ``(r|k)_u`` of the u-sequence.

Three independent routes compute the same value:

``genbinom_pascal``
    division-free recurrence
    ``(n|k) = u_{k+1}*(n-1|k) - q*u_{n-k-1}*(n-1|k-1)``; total, used by default.
``genbinom_limit``
    replaces ``q`` by an indeterminate ``z``, divides the polynomial products
    ``v_r...v_{r-k+1} / v_k...v_1`` exactly and substitutes ``z = q``.
``genbinom_quotient``
    the plain product quotient, only defined when ``u_1...u_k != 0``.

The first two agree even when some ``u_j`` vanish, which is the case the
quotient form cannot handle.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .arith import ONE, DensePoly, Scalarish, poly_eval, poly_exact_div, poly_mul, scalar
from .errors import DegenerateDenominator, NonIntegralValue
from .sequences import u_term


@dataclass(frozen=True)
class GenBinomQuery:
    p: Fraction
    q: Fraction
    r: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "p", scalar(self.p))
        object.__setattr__(self, "q", scalar(self.q))
        if self.r < 0:
            raise ValueError("r must be non-negative")


_rows_lock = threading.Lock()
_rows: dict = {}


def pascal_row(p: Scalarish, q: Scalarish, r: int) -> Tuple[Fraction, ...]:
    """Row ``((r|0)_u, ..., (r|r)_u)`` of the generalized Pascal triangle."""
    p, q = scalar(p), scalar(q)
    if r < 0:
        raise ValueError("r must be non-negative")
    with _rows_lock:
        rows = _rows.setdefault((p, q), [(Fraction(1),)])
        u = [u_term(p, q, j) for j in range(r + 2)]
        while len(rows) <= r:
            n = len(rows)
            prev = rows[-1]
            row = [Fraction(1)]
            for k in range(1, n):
                row.append(u[k + 1] * prev[k] - q * u[n - k - 1] * prev[k - 1])
            row.append(Fraction(1))
            rows.append(tuple(row))
        return rows[r]


def genbinom_pascal(query: GenBinomQuery) -> Fraction:
    if query.k < 0 or query.k > query.r:
        return Fraction(0)
    return pascal_row(query.p, query.q, query.r)[query.k]


@lru_cache(maxsize=256)
def v_polys(p: Fraction, r: int) -> Tuple[DensePoly, ...]:
    """``v_0(z), ..., v_r(z)`` with ``v_j = p*v_{j-1} - z*v_{j-2}``."""
    out = [DensePoly(), ONE]
    z = DensePoly((0, 1))
    while len(out) <= r:
        out.append(out[-1] * p - z * out[-2])
    return tuple(out[: r + 1])


@lru_cache(maxsize=256)
def w_polys(q: Fraction, r: int) -> Tuple[DensePoly, ...]:
    """``w_0(t), ..., w_r(t)`` with ``w_j = t*w_{j-1} - q*w_{j-2}``.

    Deformation in ``p`` rather than ``q``; needed at ``p = 0`` where every
    even ``v_j(z)`` vanishes identically.
    """
    out = [DensePoly(), ONE]
    t = DensePoly((0, 1))
    while len(out) <= r:
        out.append(t * out[-1] - out[-2] * q)
    return tuple(out[: r + 1])


def limit_polynomial(p: Scalarish, q: Scalarish, r: int, k: int) -> Tuple[DensePoly, Fraction]:
    """Exact quotient polynomial for ``(r|k)_u`` and the point to evaluate it at."""
    p, q = scalar(p), scalar(q)
    if p != 0:
        seq, at = v_polys(p, r), q
    else:
        seq, at = w_polys(q, r), p
    num, den = ONE, ONE
    for j in range(k):
        num = poly_mul(num, seq[r - j])
        den = poly_mul(den, seq[j + 1])
    return poly_exact_div(num, den), at


def genbinom_limit(query: GenBinomQuery) -> Fraction:
    if not 0 <= query.k <= query.r:
        raise ValueError("limit route needs 0 <= k <= r")
    poly, at = limit_polynomial(query.p, query.q, query.r, query.k)
    return poly_eval(poly, at)


def genbinom_quotient(query: GenBinomQuery) -> Fraction:
    p, q, r, k = query.p, query.q, query.r, query.k
    if k < 0 or k > r:
        return Fraction(0)
    num = den = Fraction(1)
    for j in range(1, k + 1):
        uj = u_term(p, q, j)
        if uj == 0:
            raise DegenerateDenominator(f"u_{j} = 0 makes the quotient undefined", index=j)
        den *= uj
        num *= u_term(p, q, r - j + 1)
    return num / den


def genbinom(p: Scalarish, q: Scalarish, r: int, k: int, route: str = "pascal") -> Fraction:
    query = GenBinomQuery(p, q, r, k)
    try:
        fn = ROUTES[route]
    except KeyError:
        raise ValueError(f"unknown route {route!r}") from None
    return fn(query)


ROUTES = {
    "pascal": genbinom_pascal,
    "limit": genbinom_limit,
    "quotient": genbinom_quotient,
}


def gaussian_binomial(m: int, n: int) -> DensePoly:
    """``prod_{j=1..n} (1 - z^{m+j}) / (1 - z^j)`` as an exact polynomial.

    Factors are multiplied and divided alternately; every partial quotient
    is itself a Gaussian binomial, so the divisions stay exact and small.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    result = ONE
    for j in range(1, n + 1):
        result = poly_mul(result, DensePoly.monomial(-1, m + j) + 1)
        result = poly_exact_div(result, DensePoly.monomial(-1, j) + 1)
    return result


@dataclass(frozen=True)
class IntegralityReport:
    p: int
    q: int
    r: int
    values: Tuple[Fraction, ...]

    @property
    def all_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def integrality_check(p: int, q: int, r: int) -> IntegralityReport:
    """Check every ``(r|k)_u`` is an integer when ``p`` and ``q`` are."""
    if Fraction(p).denominator != 1 or Fraction(q).denominator != 1:
        raise ValueError("integrality_check needs integer p and q")
    p, q = int(p), int(q)
    row = pascal_row(p, q, r)
    for k, value in enumerate(row):
        if value.denominator != 1:
            raise NonIntegralValue(p, q, r, k, value)
    return IntegralityReport(p, q, r, row)


def binom_row(p: Scalarish, q: Scalarish, r: int, route: str = "pascal") -> List[Fraction]:
    if route == "pascal":
        return list(pascal_row(p, q, r))
    return [genbinom(p, q, r, k, route) for k in range(r + 1)]
