"""Identity proving for expressions over recurrence sequences.

An identity such as ``F[2n+1] = F[n+1]^2 + F[n]^2`` is proved by building a
recurrence that both sides satisfy and checking as many consecutive values
as its order. Each monomial of degree ``d`` (total index multiplier over its
sequence factors) satisfies the Jarden relation for ``d``; the sides of the
identity are sums of such monomials, so the coefficient convolution of the
relations over all degrees present annihilates both.

Grammar (whitespace-insensitive)::

    identity := expr "=" expr
    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := "-" factor | base ("^" INT)?
    base     := RATIONAL | NAME "[" affine "]" | "(" expr ")" | "det" matrix
    matrix   := "[" row ("," row)* "]"
    row      := "[" expr ("," expr)* "]"
    affine   := affine in n with a non-negative multiplier, e.g. 2n+1, 3*n-2, n, 4
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import FrozenSet, List, Mapping, Optional, Tuple, Union

from .arith import format_scalar, scalar
from .errors import (
    HeterogeneousParams,
    IdentitySyntaxError,
    NonAffineIndex,
    ParseError,
    UnknownSequence,
    UnsoundAnnihilator,
    UnsupportedExponent,
)
from .matrices import det
from .recurrence import RecurrenceRelation, jarden_relation, verify_relation
from .sequences import SequenceDef, term

RESERVED = {"n", "det"}


class SequenceEnv(Mapping):
    """Named sequences that all share one ``(p, q)``."""

    def __init__(self, defs: Mapping[str, SequenceDef]):
        defs = dict(defs)
        if not defs:
            raise ValueError("environment must define at least one sequence")
        for name in defs:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in RESERVED:
                raise ValueError(f"invalid sequence name {name!r}")
        params = {d.params for d in defs.values()}
        if len(params) != 1:
            raise HeterogeneousParams("all sequences in an environment must share (p, q)")
        self._defs = defs
        self.p, self.q = next(iter(params))

    def __getitem__(self, name: str) -> SequenceDef:
        return self._defs[name]

    def __iter__(self):
        return iter(self._defs)

    def __len__(self) -> int:
        return len(self._defs)

    def __repr__(self) -> str:
        return f"SequenceEnv({self._defs!r})"

    def to_text(self) -> str:
        return "".join(f"{name} {d}\n" for name, d in self._defs.items())


def parse_env(text: str) -> SequenceEnv:
    """Parse lines ``NAME p q x0 x1``; ``#`` starts a comment."""
    defs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ParseError(f"line {lineno}: expected 'NAME p q x0 x1', got {raw!r}")
        name, *nums = parts
        if name in defs:
            raise ParseError(f"line {lineno}: duplicate sequence {name!r}")
        try:
            defs[name] = SequenceDef(*(scalar(x) for x in nums))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not defs:
        raise ParseError("environment file defines no sequences")
    try:
        return SequenceEnv(defs)
    except HeterogeneousParams:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_env(path: Union[str, Path]) -> SequenceEnv:
    return parse_env(Path(path).read_text())


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Ref:
    name: str
    mult: int
    offset: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Det:
    rows: Tuple[Tuple["Expr", ...], ...]


Expr = Union[Const, Ref, Neg, Add, Sub, Mul, Pow, Det]


@dataclass(frozen=True)
class Identity:
    left: Expr
    right: Expr
    p: Fraction
    q: Fraction

    @property
    def degrees(self) -> FrozenSet[int]:
        return degrees(self.left) | degrees(self.right)

    def text(self) -> str:
        return pretty(self.left) + " = " + pretty(self.right)

    def __str__(self) -> str:
        return self.text()


# -- tokenizer / parser -------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


@dataclass(frozen=True)
class _Tok:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            toks.append(_Tok("INT", m.group(1), m.start()))
        elif m.group(2):
            toks.append(_Tok("NAME", m.group(2), m.start()))
        else:
            ch = m.group(3)
            if ch not in "=+-*^/()[],":
                raise IdentitySyntaxError(f"unexpected character {ch!r}", m.start())
            toks.append(_Tok("OP", ch, m.start()))
    toks.append(_Tok("END", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, env: Optional[SequenceEnv]):
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind == "OP" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.fail(repr(text))

    def fail(self, *expected: str):
        t = self.tok
        found = "end of input" if t.kind == "END" else repr(t.text)
        raise IdentitySyntaxError(f"unexpected {found}", t.pos, expected)

    def int_token(self) -> int:
        if self.tok.kind != "INT":
            self.fail("integer")
        return int(self.advance().text)

    def identity(self) -> Tuple[Expr, Expr]:
        left = self.expr()
        self.expect("=")
        right = self.expr()
        if self.tok.kind != "END":
            self.fail("'+'", "'-'", "'*'", "end of input")
        return left, right

    def expr(self) -> Expr:
        node = self.term()
        while True:
            if self.accept("+"):
                node = Add(node, self.term())
            elif self.accept("-"):
                node = Sub(node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while self.accept("*"):
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.accept("-"):
            return Neg(self.factor())
        node = self.base()
        if self.accept("^"):
            if self.accept("-"):
                raise UnsupportedExponent("exponent must be a positive integer")
            if self.tok.kind != "INT":
                if self.tok.kind == "OP" and self.tok.text == "(" or self.tok.kind == "NAME":
                    raise UnsupportedExponent("exponent must be a positive integer literal")
                self.fail("integer exponent")
            e = self.int_token()
            if self.accept("/"):
                raise UnsupportedExponent("exponent must be an integer")
            if e < 1:
                raise UnsupportedExponent("exponent must be at least 1")
            node = Pow(node, e)
        return node

    def base(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            num = int(self.advance().text)
            if self.accept("/"):
                den = self.int_token()
                if den == 0:
                    raise IdentitySyntaxError("zero denominator", self.toks[self.i - 1].pos)
                return Const(Fraction(num, den))
            return Const(Fraction(num))
        if t.kind == "NAME" and t.text == "det":
            self.advance()
            return self.matrix()
        if t.kind == "NAME":
            return self.seqref()
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.fail("number", "sequence reference", "'('", "'det'")

    def matrix(self) -> Det:
        start = self.tok.pos
        self.expect("[")
        rows = [self.row()]
        while self.accept(","):
            rows.append(self.row())
        self.expect("]")
        if any(len(r) != len(rows) for r in rows):
            raise IdentitySyntaxError("determinant matrix must be square", start)
        return Det(tuple(rows))

    def row(self) -> Tuple[Expr, ...]:
        self.expect("[")
        items = [self.expr()]
        while self.accept(","):
            items.append(self.expr())
        self.expect("]")
        return tuple(items)

    def seqref(self) -> Ref:
        name_tok = self.advance()
        name = name_tok.text
        if self.env is not None and name not in self.env:
            raise UnknownSequence(f"unknown sequence {name!r} at position {name_tok.pos}")
        self.expect("[")
        mult, offset = self.affine()
        self.expect("]")
        return Ref(name, mult, offset)

    def affine(self) -> Tuple[int, int]:
        mult = offset = 0
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            a, b = self.affine_term()
            mult += sign * a
            offset += sign * b
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        if mult < 0:
            raise NonAffineIndex("index multiplier of n must be non-negative")
        return mult, offset

    def affine_term(self) -> Tuple[int, int]:
        coeff, n_count, seen = 1, 0, False
        while True:
            t = self.tok
            if t.kind == "INT":
                coeff *= int(self.advance().text)
            elif t.kind == "NAME" and t.text == "n":
                self.advance()
                n_count += 1
            elif t.kind == "NAME" or (t.kind == "OP" and t.text in "(^/"):
                raise NonAffineIndex(f"index is not affine in n at position {t.pos}")
            else:
                if not seen:
                    self.fail("integer", "'n'")
                break
            seen = True
            if self.accept("*"):
                continue
            if self.tok.kind == "NAME" and self.tok.text == "n":
                continue  # implicit product such as 2n
            if self.tok.kind == "OP" and self.tok.text in "(^/":
                raise NonAffineIndex(f"index is not affine in n at position {self.tok.pos}")
            break
        if n_count > 1:
            raise NonAffineIndex("index is not affine in n (power of n)")
        return (coeff, 0) if n_count else (0, coeff)


def parse_expr(text: str, env: Optional[SequenceEnv] = None) -> Expr:
    parser = _Parser(text, env)
    node = parser.expr()
    if parser.tok.kind != "END":
        parser.fail("end of input")
    return normalize(node)


def parse_identity(text: str, env: SequenceEnv) -> Identity:
    if not isinstance(env, SequenceEnv):
        env = SequenceEnv(env)
    left, right = _Parser(text, env).identity()
    return Identity(normalize(left), normalize(right), env.p, env.q)


# -- normalization / printing -------------------------------------------------


def normalize(node: Expr) -> Expr:
    """Fold negated constants; everything else is kept as written."""
    if isinstance(node, Neg):
        arg = normalize(node.arg)
        if isinstance(arg, Const):
            return Const(-arg.value)
        return Neg(arg)
    if isinstance(node, (Add, Sub, Mul)):
        return type(node)(normalize(node.left), normalize(node.right))
    if isinstance(node, Pow):
        return Pow(normalize(node.base), node.exp)
    if isinstance(node, Det):
        return Det(tuple(tuple(normalize(x) for x in row) for row in node.rows))
    return node


_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}


def _prec(node: Expr) -> int:
    if isinstance(node, Const):
        return 3 if node.value < 0 else 5
    return _PREC.get(type(node), 5)


def _affine_text(mult: int, offset: int) -> str:
    if mult == 0:
        return str(offset)
    text = "n" if mult == 1 else f"{mult}*n"
    if offset > 0:
        text += f"+{offset}"
    elif offset < 0:
        text += f"-{-offset}"
    return text


def pretty(node: Expr, min_prec: int = 0) -> str:
    if isinstance(node, Const):
        text = format_scalar(node.value)
    elif isinstance(node, Ref):
        text = f"{node.name}[{_affine_text(node.mult, node.offset)}]"
    elif isinstance(node, Add):
        text = f"{pretty(node.left, 1)} + {pretty(node.right, 2)}"
    elif isinstance(node, Sub):
        text = f"{pretty(node.left, 1)} - {pretty(node.right, 2)}"
    elif isinstance(node, Mul):
        text = f"{pretty(node.left, 2)}*{pretty(node.right, 3)}"
    elif isinstance(node, Neg):
        text = "-" + pretty(node.arg, 3)
    elif isinstance(node, Pow):
        text = f"{pretty(node.base, 5)}^{node.exp}"
    elif isinstance(node, Det):
        rows = ", ".join("[" + ", ".join(pretty(x) for x in row) + "]" for row in node.rows)
        text = f"det[{rows}]"
    else:
        raise TypeError(f"not an expression node: {node!r}")
    if _prec(node) < min_prec:
        return f"({text})"
    return text


# -- degrees and evaluation ---------------------------------------------------


def _sumset(a: FrozenSet[int], b: FrozenSet[int]) -> FrozenSet[int]:
    return frozenset(x + y for x in a for y in b)


def degrees(node: Expr) -> FrozenSet[int]:
    """Degrees of the monomials that formal expansion of ``node`` produces."""
    if isinstance(node, Const):
        return frozenset({0})
    if isinstance(node, Ref):
        return frozenset({node.mult})
    if isinstance(node, Neg):
        return degrees(node.arg)
    if isinstance(node, (Add, Sub)):
        return degrees(node.left) | degrees(node.right)
    if isinstance(node, Mul):
        return _sumset(degrees(node.left), degrees(node.right))
    if isinstance(node, Pow):
        base = degrees(node.base)
        out = base
        for _ in range(node.exp - 1):
            out = _sumset(out, base)
        return out
    if isinstance(node, Det):
        size = len(node.rows)
        cell = [[degrees(x) for x in row] for row in node.rows]
        out = frozenset()
        for perm in itertools.permutations(range(size)):
            acc = frozenset({0})
            for r, c in enumerate(perm):
                acc = _sumset(acc, cell[r][c])
            out |= acc
        return out
    raise TypeError(f"not an expression node: {node!r}")


def degree(node: Expr) -> int:
    return max(degrees(node))


def evaluate(node: Expr, env: Mapping[str, SequenceDef], n: int) -> Fraction:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Ref):
        return term(env[node.name], node.mult * n + node.offset)
    if isinstance(node, Neg):
        return -evaluate(node.arg, env, n)
    if isinstance(node, Add):
        return evaluate(node.left, env, n) + evaluate(node.right, env, n)
    if isinstance(node, Sub):
        return evaluate(node.left, env, n) - evaluate(node.right, env, n)
    if isinstance(node, Mul):
        return evaluate(node.left, env, n) * evaluate(node.right, env, n)
    if isinstance(node, Pow):
        return evaluate(node.base, env, n) ** node.exp
    if isinstance(node, Det):
        return det([[evaluate(x, env, n) for x in row] for row in node.rows])
    raise TypeError(f"not an expression node: {node!r}")


# -- proving ------------------------------------------------------------------


def annihilator_for(ast: Identity) -> RecurrenceRelation:
    """Convolution of the Jarden relations for every degree present in ``ast``."""
    rel = RecurrenceRelation(ast.p, ast.q, (1,))
    for d in sorted(ast.degrees):
        rel = rel.compose(jarden_relation(ast.p, ast.q, d))
    return rel


SOUNDNESS = (
    "each side is a sum of monomials of the listed degrees; a degree-d monomial "
    "satisfies the Jarden relation of order d+1, so the convolution annihilates "
    "left - right; c_0 = 1, hence agreement on `order` consecutive indices "
    "propagates forward (and backward when the trailing coefficient is nonzero)"
)


@dataclass(frozen=True)
class ProofCertificate:
    identity: str
    p: Fraction
    q: Fraction
    annihilator: RecurrenceRelation
    n0: int
    checked: Tuple[Tuple[int, Fraction, Fraction], ...]
    degrees: Tuple[int, ...] = ()
    soundness: str = SOUNDNESS

    @property
    def order(self) -> int:
        return self.annihilator.order

    @property
    def checked_indices(self) -> List[int]:
        return [n for n, _, _ in self.checked]

    @property
    def scope(self) -> str:
        return f"all n >= {self.n0}"

    @property
    def extends_to_all_integers(self) -> bool:
        return self.q != 0 and self.annihilator.coeffs[-1] != 0

    def to_dict(self) -> dict:
        return {
            "kind": "proof",
            "identity": self.identity,
            "p": format_scalar(self.p),
            "q": format_scalar(self.q),
            "degrees": list(self.degrees),
            "annihilator": [format_scalar(c) for c in self.annihilator.coeffs],
            "order": self.order,
            "n0": self.n0,
            "checked": [
                {"n": n, "left": format_scalar(a), "right": format_scalar(b)} for n, a, b in self.checked
            ],
            "scope": self.scope,
            "extends_to_all_integers": self.extends_to_all_integers,
            "soundness": self.soundness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ProofCertificate:
        p, q = scalar(data["p"]), scalar(data["q"])
        rel = RecurrenceRelation(p, q, tuple(scalar(c) for c in data["annihilator"]))
        checked = tuple((int(c["n"]), scalar(c["left"]), scalar(c["right"])) for c in data["checked"])
        return cls(
            identity=data["identity"],
            p=p,
            q=q,
            annihilator=rel,
            n0=int(data["n0"]),
            checked=checked,
            degrees=tuple(data.get("degrees", ())),
            soundness=data.get("soundness", SOUNDNESS),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class Counterexample:
    identity: str
    n: int
    left: Fraction
    right: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": "counterexample",
            "identity": self.identity,
            "n": self.n,
            "left": format_scalar(self.left),
            "right": format_scalar(self.right),
        }


def _side(node: Expr, env: Mapping[str, SequenceDef]):
    return lambda n: evaluate(node, env, n)


def prove(
    ast: Identity, env: SequenceEnv, n0: int = 0, audit_factor: int = 3
) -> Union[ProofCertificate, Counterexample]:
    """Prove ``ast`` for all ``n >= n0`` or return the first failing index.

    After the initial values agree, the annihilator is re-checked against each
    side separately over ``audit_factor * order`` further indices; a failure
    raises :class:`UnsoundAnnihilator` instead of emitting a certificate.
    """
    rel = annihilator_for(ast)
    order = rel.order
    checked = []
    for n in range(n0, n0 + order):
        a = evaluate(ast.left, env, n)
        b = evaluate(ast.right, env, n)
        if a != b:
            return Counterexample(ast.text(), n, a, b)
        checked.append((n, a, b))
    if audit_factor:
        window = range(n0 + order, n0 + order + audit_factor * order)
        for label, node in (("left", ast.left), ("right", ast.right)):
            report = verify_relation(rel, _side(node, env), window)
            if not report:
                raise UnsoundAnnihilator(
                    f"annihilator fails on the {label} side at n = {report.first_failure}"
                )
    return ProofCertificate(
        identity=ast.text(),
        p=ast.p,
        q=ast.q,
        annihilator=rel,
        n0=n0,
        checked=tuple(checked),
        degrees=tuple(sorted(ast.degrees)),
    )


def prove_text(text: str, env: SequenceEnv, n0: int = 0) -> Union[ProofCertificate, Counterexample]:
    return prove(parse_identity(text, env), env, n0)


def check_certificate(cert: ProofCertificate, env: SequenceEnv, extra_factor: int = 3) -> bool:
    """Replay ``cert`` independently of :func:`prove`.

    Re-parses the identity, recomputes the recorded initial values, and checks
    the recorded annihilator on both sides over ``extra_factor * order``
    indices past the initial window.
    """
    try:
        ast = parse_identity(cert.identity, env)
        rel = cert.annihilator
        if (ast.p, ast.q) != (cert.p, cert.q) or (rel.p, rel.q) != (cert.p, cert.q):
            return False
        if rel.coeffs[0] != 1 or len(cert.checked) != rel.order:
            return False
        expected = list(range(cert.n0, cert.n0 + rel.order))
        if cert.checked_indices != expected:
            return False
        for n, a, b in cert.checked:
            if a != b:
                return False
            if evaluate(ast.left, env, n) != a or evaluate(ast.right, env, n) != b:
                return False
        window = range(cert.n0 + rel.order, cert.n0 + rel.order + extra_factor * max(rel.order, 1))
        for node in (ast.left, ast.right):
            if not verify_relation(rel, _side(node, env), window):
                return False
    except (ParseError, ArithmeticError, ValueError):
        return False
    return True


def exhaustive_recheck(ast: Identity, env: SequenceEnv, start: int, count: int) -> Optional[int]:
    """First ``n`` in ``[start, start+count)`` where the sides differ, else ``None``."""
    for n in range(start, start + count):
        if evaluate(ast.left, env, n) != evaluate(ast.right, env, n):
            return n
    return None
