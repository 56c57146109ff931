"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` values; :data:`ExactScalar` is an
alias kept so signatures read in the vocabulary of the rest of the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionByZeroPoly, InexactDivision

ExactScalar = Fraction
Scalarish = Union[Fraction, int, str]

NEG_INFINITY = -math.inf


def scalar(value: Scalarish) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-7/4"`` or
    ``"0.25"``. Floats are rejected because they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_scalar(value: Fraction) -> str:
    """Serialize as ``"num/den"``, dropping the denominator when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _strip(coeffs: Iterable[Fraction]) -> tuple:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class DensePoly:
    """Immutable polynomial with exact coefficients in ascending power order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalarish] = ()):
        self._coeffs = _strip(scalar(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs) -> DensePoly:
        # trusted path: coeffs already Fractions
        obj = object.__new__(cls)
        obj._coeffs = _strip(coeffs)
        return obj

    @classmethod
    def constant(cls, c: Scalarish) -> DensePoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: Scalarish, power: int) -> DensePoly:
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [c])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self):
        """Integer degree, or ``-inf`` for the zero polynomial."""
        if not self._coeffs:
            return NEG_INFINITY
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, DensePoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"DensePoly({[format_scalar(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "z") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if power == 0:
                body = format_scalar(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{format_scalar(mag)}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __add__(self, other):
        other = _as_poly(other)
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly._raw(-c for c in self._coeffs)

    def __sub__(self, other):
        return poly_add(self, -_as_poly(other))

    def __rsub__(self, other):
        return poly_add(_as_poly(other), -self)

    def __mul__(self, other):
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = DensePoly._raw((Fraction(1),))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, at: Scalarish) -> Fraction:
        return poly_eval(self, at)


def _as_poly(value) -> DensePoly:
    if isinstance(value, DensePoly):
        return value
    return DensePoly.constant(value)


ZERO = DensePoly()
ONE = DensePoly((1,))
Z = DensePoly((0, 1))


def poly_add(a: DensePoly, b: DensePoly) -> DensePoly:
    ca, cb = a.coeffs, b.coeffs
    if len(ca) < len(cb):
        ca, cb = cb, ca
    out = list(ca)
    for i, c in enumerate(cb):
        out[i] += c
    return DensePoly._raw(out)


def poly_mul(a: DensePoly, b: DensePoly) -> DensePoly:
    ca, cb = a.coeffs, b.coeffs
    if not ca or not cb:
        return ZERO
    out = [Fraction(0)] * (len(ca) + len(cb) - 1)
    nz_b = [(j, c) for j, c in enumerate(cb) if c]
    for i, x in enumerate(ca):
        if not x:
            continue
        for j, y in nz_b:
            out[i + j] += x * y
    return DensePoly._raw(out)


def poly_divmod(a: DensePoly, b: DensePoly) -> tuple:
    """Classical long division; returns ``(quotient, remainder)``."""
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    db = len(b.coeffs) - 1
    lead = b.coeffs[-1]
    # only nonzero divisor terms below the lead take part in the update
    tail = [(j, c) for j, c in enumerate(b.coeffs[:-1]) if c]
    rem = list(a.coeffs)
    if len(rem) <= db:
        return ZERO, a
    quot = [Fraction(0)] * (len(rem) - db)
    for shift in range(len(rem) - 1 - db, -1, -1):
        top = rem[shift + db]
        if not top:
            continue
        t = top / lead
        quot[shift] = t
        rem[shift + db] = Fraction(0)
        for j, c in tail:
            rem[shift + j] -= t * c
    return DensePoly._raw(quot), DensePoly._raw(rem)


def poly_exact_div(a: DensePoly, b: DensePoly) -> DensePoly:
    """Return ``t`` with ``a == b * t``; raise :class:`InexactDivision` otherwise."""
    quot, rem = poly_divmod(a, b)
    if not rem.is_zero():
        raise InexactDivision(f"({a}) / ({b}) leaves remainder {rem}")
    return quot


def poly_eval(a: DensePoly, at: Scalarish) -> Fraction:
    x = scalar(at)
    acc = Fraction(0)
    for c in reversed(a.coeffs):
        acc = acc * x + c
    return acc


def poly_product(factors: Sequence[DensePoly]) -> DensePoly:
    out = ONE
    for f in factors:
        out = poly_mul(out, f)
    return out
