"""Second-order recurrences ``x_r = p*x_{r-1} - q*x_{r-2}``.

Every sequence is determined by ``(p, q, x0, x1)``. The *u-sequence* has
``x0 = 0, x1 = 1`` and the companion sequence has ``x0 = 2, x1 = p``.
Negative indices run the recurrence backwards and need ``q != 0``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .arith import Scalarish, format_scalar, scalar
from .errors import BackwardUndefined, IdentityViolation


@dataclass(frozen=True)
class SequenceDef:
    p: Fraction
    q: Fraction
    x0: Fraction
    x1: Fraction

    def __post_init__(self):
        for name in ("p", "q", "x0", "x1"):
            object.__setattr__(self, name, scalar(getattr(self, name)))

    @classmethod
    def u(cls, p: Scalarish, q: Scalarish) -> SequenceDef:
        return cls(p, q, 0, 1)

    @classmethod
    def companion(cls, p: Scalarish, q: Scalarish) -> SequenceDef:
        p = scalar(p)
        return cls(p, q, 2, p)

    @property
    def params(self) -> tuple:
        return (self.p, self.q)

    def __call__(self, r: int) -> Fraction:
        return term(self, r)

    def __str__(self) -> str:
        return " ".join(format_scalar(v) for v in (self.p, self.q, self.x0, self.x1))


class _TermCache:
    """Per-definition prefix tables, extended on demand under a lock."""

    def __init__(self, limit: int = 512):
        self._lock = threading.Lock()
        self._forward: dict = {}
        self._backward: dict = {}
        self._limit = limit

    def clear(self):
        with self._lock:
            self._forward.clear()
            self._backward.clear()

    def forward(self, d: SequenceDef, r: int) -> Fraction:
        with self._lock:
            table = self._forward.get(d)
            if table is None:
                if len(self._forward) >= self._limit:
                    self._forward.clear()
                table = self._forward[d] = [d.x0, d.x1]
            p, q = d.p, d.q
            while len(table) <= r:
                table.append(p * table[-1] - q * table[-2])
            return table[r]

    def backward(self, d: SequenceDef, r: int) -> Fraction:
        # table[i] holds x_{1-i}: x_1, x_0, x_{-1}, ...
        with self._lock:
            table = self._backward.get(d)
            if table is None:
                if len(self._backward) >= self._limit:
                    self._backward.clear()
                table = self._backward[d] = [d.x1, d.x0]
            p, q = d.p, d.q
            need = 1 - r
            while len(table) <= need:
                table.append((p * table[-1] - table[-2]) / q)
            return table[need]


_cache = _TermCache()


def term(d: SequenceDef, r: int) -> Fraction:
    """Exact ``x_r``; negative ``r`` uses ``x_{r-2} = (p*x_{r-1} - x_r)/q``."""
    r = int(r)
    if r >= 0:
        return _cache.forward(d, r)
    if d.q == 0:
        raise BackwardUndefined(f"x_{r} is undefined when q = 0")
    return _cache.backward(d, r)


def u_term(p: Scalarish, q: Scalarish, r: int) -> Fraction:
    return term(SequenceDef.u(p, q), r)


def companion_term(p: Scalarish, q: Scalarish, r: int) -> Fraction:
    return term(SequenceDef.companion(p, q), r)


def index_add(d: SequenceDef, m: int, r: int) -> Fraction:
    """Evaluate ``u_{m+1}*x_{r+1} - q*u_m*x_r`` and check it equals ``x_{m+r+1}``."""
    rhs = u_term(d.p, d.q, m + 1) * term(d, r + 1) - d.q * u_term(d.p, d.q, m) * term(d, r)
    lhs = term(d, m + r + 1)
    if lhs != rhs:
        raise IdentityViolation(
            f"x_{m + r + 1} = {lhs} but u_{m + 1}x_{r + 1} - q u_{m} x_{r} = {rhs}"
        )
    return rhs


@dataclass(frozen=True)
class SequenceWindow:
    """Materialized slice ``x_start, ..., x_{start+len-1}`` of a sequence."""

    definition: SequenceDef
    start_index: int
    values: tuple = field(default=())

    def __post_init__(self):
        vals = tuple(scalar(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        p, q = self.definition.p, self.definition.q
        for i in range(len(vals) - 2):
            if vals[i + 2] != p * vals[i + 1] - q * vals[i]:
                raise ValueError(f"window breaks the recurrence at offset {i + 2}")

    @property
    def stop_index(self) -> int:
        return self.start_index + len(self.values)

    def __contains__(self, m: int) -> bool:
        return self.start_index <= m < self.stop_index

    def __getitem__(self, m: int) -> Fraction:
        if m not in self:
            raise IndexError(m)
        return self.values[m - self.start_index]

    def __len__(self) -> int:
        return len(self.values)


def window(d: SequenceDef, start: int, stop: int) -> SequenceWindow:
    """Terms with indices in ``range(start, stop)``."""
    return SequenceWindow(d, start, tuple(term(d, r) for r in range(start, stop)))


def terms(d: SequenceDef, start: int, stop: int) -> List[Fraction]:
    return [term(d, r) for r in range(start, stop)]
