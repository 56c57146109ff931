"""Linear recurrences annihilating products of second-order sequences.

A :class:`RecurrenceRelation` with coefficients ``(c_0, ..., c_d)`` states
``sum_i c_i * X(m - i) == 0``. Relations are normalized with ``c_0 == 1``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from .arith import Scalarish, format_scalar, scalar
from .binom import genbinom_quotient, pascal_row, GenBinomQuery
from .errors import HypothesisViolated, InsufficientWindow
from .sequences import SequenceDef, SequenceWindow, term, u_term


@dataclass(frozen=True)
class RecurrenceRelation:
    p: Fraction
    q: Fraction
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", scalar(self.p))
        object.__setattr__(self, "q", scalar(self.q))
        coeffs = tuple(scalar(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("relation must have c_0 == 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def residual(self, X: Callable[[int], Fraction], m: int) -> Fraction:
        return sum((c * X(m - i) for i, c in enumerate(self.coeffs) if c), Fraction(0))

    def compose(self, other: RecurrenceRelation) -> RecurrenceRelation:
        """Coefficient convolution; annihilates sums of solutions of either factor."""
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RecurrenceRelation(self.p, self.q, tuple(out))

    def next_value(self, history: Sequence[Fraction]) -> Fraction:
        """Extend forward: ``X(m)`` from ``X(m-1), ..., X(m-d)`` (most recent first)."""
        return -sum((c * history[i - 1] for i, c in enumerate(self.coeffs) if i and c), Fraction(0))

    def __str__(self) -> str:
        return " ".join(format_scalar(c) for c in self.coeffs)


def jarden_relation(p: Scalarish, q: Scalarish, n: int) -> RecurrenceRelation:
    """Order ``n+1`` relation annihilating any product of ``n`` solutions.

    ``c_i = (-1)^i * q^(i(i-1)/2) * (n+1|i)_u``, with the binomials taken from
    the division-free Pascal route so vanishing ``u_j`` are harmless.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    p, q = scalar(p), scalar(q)
    row = pascal_row(p, q, n + 1)
    coeffs = tuple((-1) ** i * q ** (i * (i - 1) // 2) * row[i] for i in range(n + 2))
    return RecurrenceRelation(p, q, coeffs)


def quotient_relation(p: Scalarish, q: Scalarish, n: int) -> RecurrenceRelation:
    """Same coefficients via raw ``u``-quotients; raises when some ``u_j`` vanishes."""
    if n < 1:
        raise ValueError("n must be positive")
    p, q = scalar(p), scalar(q)
    coeffs = []
    for i in range(n + 2):
        binom = genbinom_quotient(GenBinomQuery(p, q, n + 1, i))
        coeffs.append((-1) ** i * q ** (i * (i - 1) // 2) * binom)
    return RecurrenceRelation(p, q, tuple(coeffs))


def degenerate_relation(p: Scalarish, q: Scalarish, n: int, k: int) -> RecurrenceRelation:
    """Short relation ``X(m) = u_{k+1}^n * X(m-k)``, valid when ``u_k == 0``."""
    if k < 1:
        raise ValueError("k must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    p, q = scalar(p), scalar(q)
    uk = u_term(p, q, k)
    if uk != 0:
        raise HypothesisViolated(f"u_{k} = {format_scalar(uk)} is not zero")
    coeffs = [Fraction(1)] + [Fraction(0)] * (k - 1) + [-u_term(p, q, k + 1) ** n]
    return RecurrenceRelation(p, q, tuple(coeffs))


@dataclass(frozen=True)
class ProductSpec:
    factors: Tuple[SequenceDef, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("a product needs at least one factor")
        if len({f.params for f in factors}) != 1:
            raise ValueError("all factors must share (p, q)")
        object.__setattr__(self, "factors", factors)

    @property
    def p(self) -> Fraction:
        return self.factors[0].p

    @property
    def q(self) -> Fraction:
        return self.factors[0].q

    def __call__(self, m: int) -> Fraction:
        return eval_product(self, m)


def eval_product(spec: ProductSpec, m: int) -> Fraction:
    out = Fraction(1)
    for f in spec.factors:
        out *= term(f, m)
    return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked: int
    first_failure: Optional[int] = None
    residual: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.ok


Stream = Union[Callable[[int], Fraction], Mapping, SequenceWindow]


def _lookup(values: Stream) -> Callable[[int], Fraction]:
    if isinstance(values, SequenceWindow):
        def get(m):
            if m not in values:
                raise InsufficientWindow(f"index {m} outside window")
            return values[m]
        return get
    if isinstance(values, Mapping):
        def get(m):
            try:
                return values[m]
            except KeyError:
                raise InsufficientWindow(f"index {m} missing from stream") from None
        return get
    if callable(values):
        return values
    raise TypeError("values must be a callable, mapping or SequenceWindow")


def verify_relation(rel: RecurrenceRelation, values: Stream, m_range: Iterable[int]) -> VerificationReport:
    """Check ``sum_i c_i X(m-i) == 0`` for every ``m`` in ``m_range``.

    Returns a failing report at the first nonzero residual.
    """
    ms = list(m_range)
    if not ms:
        return VerificationReport(True, 0)
    get = _lookup(values)
    if isinstance(values, (Mapping, SequenceWindow)):
        lo, hi = min(ms) - rel.order, max(ms)
        for m in (lo, hi):
            get(m)  # raises InsufficientWindow on a short stream
    checked = 0
    for m in ms:
        res = rel.residual(get, m)
        checked += 1
        if res != 0:
            return VerificationReport(False, checked, m, res)
    return VerificationReport(True, checked)
