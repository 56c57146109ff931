"""Exception hierarchy shared by every module of the package."""


class JardenError(Exception):
    """Base class for all errors raised by :mod:`jarden`."""


class InexactDivision(JardenError, ArithmeticError):
    """Polynomial long division left a nonzero remainder."""


class DivisionByZeroPoly(JardenError, ZeroDivisionError):
    """Division by the zero polynomial."""


class BackwardUndefined(JardenError, ValueError):
    """A negative index was requested for a sequence with ``q == 0``."""


class IdentityViolation(JardenError, AssertionError):
    """A checked algebraic identity failed (indicates a bug, not bad input)."""


class DegenerateDenominator(JardenError, ZeroDivisionError):
    """The product quotient form needs ``u_1 ... u_k != 0``."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonIntegralValue(JardenError, ArithmeticError):
    """A generalized binomial coefficient with integer ``p, q`` was not an integer."""

    def __init__(self, p, q, r, k, value):
        super().__init__(f"({r}|{k})_u = {value} is not integral for p={p}, q={q}")
        self.p, self.q, self.r, self.k, self.value = p, q, r, k, value


class HypothesisViolated(JardenError, ValueError):
    """The precondition of a construction (e.g. ``u_k == 0``) does not hold."""


class InsufficientWindow(JardenError, ValueError):
    """A value stream does not cover the indices a check needs."""


class ParseError(JardenError, ValueError):
    """Base class for identity and environment parsing failures."""


class IdentitySyntaxError(ParseError):
    """Malformed identity text."""

    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if position is not None:
            detail += f" at position {position}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownSequence(ParseError):
    pass


class NonAffineIndex(ParseError):
    pass


class HeterogeneousParams(ParseError):
    """Sequences in one environment do not share ``(p, q)``."""


class UnsupportedExponent(ParseError):
    pass


class UnsoundAnnihilator(JardenError, RuntimeError):
    """The constructed annihilator failed to annihilate one side of an identity."""
