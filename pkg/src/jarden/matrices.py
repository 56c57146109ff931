"""Power-of-companion matrices and their characteristic polynomials.

``build_A(n)`` is the ``(n+1) x (n+1)`` matrix whose ``(r, c)`` entry is
``C(r, n-c) * p^(r+c-n) * (-q)^(n-c)``; ``build_Q(n)`` is the ``n x n``
matrix similar to ``build_A(n-1)`` through the exchange matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from .arith import DensePoly, Scalarish, format_scalar, scalar
from .binom import genbinom_quotient, pascal_row, GenBinomQuery


@dataclass(frozen=True)
class ExactMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(scalar(x) for x in row) for row in self.rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, rc) -> Fraction:
        r, c = rc
        return self.rows[r][c]

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @classmethod
    def exchange(cls, n: int) -> ExactMatrix:
        """Ones on the counter-diagonal; its own inverse."""
        return cls(tuple(tuple(int(r + c == n - 1) for c in range(n)) for r in range(n)))

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        cols = list(zip(*other.rows))
        return ExactMatrix(
            tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.rows)
        )

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def to_lists(self) -> List[List[str]]:
        return [[format_scalar(x) for x in row] for row in self.rows]

    def __str__(self) -> str:
        cells = self.to_lists()
        width = max((len(s) for row in cells for s in row), default=1)
        return "\n".join("[" + " ".join(s.rjust(width) for s in row) + "]" for row in cells)


def build_A(n: int, p: Scalarish, q: Scalarish) -> ExactMatrix:
    p, q = scalar(p), scalar(q)
    size = n + 1
    rows = []
    for r in range(size):
        row = []
        for c in range(size):
            j = n - c
            if 0 <= j <= r:
                row.append(comb(r, j) * p ** (r + c - n) * (-q) ** j)
            else:
                row.append(Fraction(0))
        rows.append(row)
    return ExactMatrix(rows)


def build_Q(n: int, p: Scalarish, q: Scalarish) -> ExactMatrix:
    p, q = scalar(p), scalar(q)
    rows = []
    for r in range(1, n + 1):
        row = []
        for c in range(1, n + 1):
            top, bottom = n - c, r - 1
            if 0 <= bottom <= top:
                row.append(comb(top, bottom) * p ** (top - bottom) * (-q) ** bottom)
            else:
                row.append(Fraction(0))
        rows.append(row)
    return ExactMatrix(rows)


def similarity_check(n: int, p: Scalarish, q: Scalarish) -> bool:
    """Whether ``build_A(n-1) == E @ build_Q(n).T @ E``."""
    if n < 1:
        raise ValueError("n must be positive")
    E = ExactMatrix.exchange(n)
    return build_A(n - 1, p, q) == E @ build_Q(n, p, q).transpose() @ E


def char_poly(mat: ExactMatrix) -> DensePoly:
    """Monic ``det(x*I - M)`` by the Faddeev-LeVerrier recursion.

    Only divisions by the integers ``1..n`` occur, so the result is exact
    over the rationals.
    """
    n = mat.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        AM = mat @ M
        coeffs[n - k] = -AM.trace() / k
        c = coeffs[n - k]
        M = ExactMatrix(
            tuple(tuple(x + c if i == j else x for j, x in enumerate(row)) for i, row in enumerate(AM.rows))
        )
    return DensePoly(coeffs)


def binomial_charpoly_coefficients(n: int, p: Scalarish, q: Scalarish) -> List[Fraction]:
    """``(-1)^i q^(i(i-1)/2) (n|i)_u`` for ``i = 0..n``."""
    q = scalar(q)
    row = pascal_row(p, q, n)
    return [(-1) ** i * q ** (i * (i - 1) // 2) * row[i] for i in range(n + 1)]


def quotient_charpoly_coefficients(n: int, p: Scalarish, q: Scalarish) -> List[Fraction]:
    """Product-quotient form of the same coefficients; needs ``u_1...u_n != 0``."""
    p, q = scalar(p), scalar(q)
    return [
        (-1) ** i * q ** (i * (i - 1) // 2) * genbinom_quotient(GenBinomQuery(p, q, n, i))
        for i in range(n + 1)
    ]


def reversed_coefficients(poly: DensePoly, dim: int) -> List[Fraction]:
    """Ascending-power form with constant term 1, from a monic polynomial."""
    return [poly[dim - i] for i in range(dim + 1)]


def verify_charpoly_coefficients(n: int, p: Scalarish, q: Scalarish) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    poly = char_poly(build_Q(n, p, q))
    return reversed_coefficients(poly, n) == binomial_charpoly_coefficients(n, p, q)


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        pv = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out
