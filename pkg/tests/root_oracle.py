"""Root-based oracle working in Q[s]/(s^2 - D) with D = p^2 - 4q.

The characteristic roots are (p +- s)/2. Quantities symmetric in the two
roots come out with a zero s-component, which the helpers assert.
"""

from fractions import Fraction


class QuadInt:
    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        self.a, self.b, self.D = Fraction(a), Fraction(b), Fraction(D)

    def __add__(self, o):
        o = self._lift(o)
        return QuadInt(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.D)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return QuadInt(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = QuadInt(1, 0, self.D)
        for _ in range(e):
            out = out * self
        return out

    def _lift(self, o):
        return o if isinstance(o, QuadInt) else QuadInt(o, 0, self.D)

    def rational(self):
        assert self.b == 0, "expected a root-symmetric quantity"
        return self.a


def roots(p, q):
    D = Fraction(p) ** 2 - 4 * Fraction(q)
    half = Fraction(1, 2)
    return QuadInt(half * p, half, D), QuadInt(half * p, -half, D)


def jarden_coeffs_from_roots(p, q, n):
    """Coefficients of prod_{i=0..n} (1 - sigma^i tau^(n-i) x)."""
    sigma, tau = roots(p, q)
    poly = [QuadInt(1, 0, sigma.D)]
    for i in range(n + 1):
        lam = sigma**i * tau ** (n - i)
        nxt = poly + [QuadInt(0, 0, sigma.D)]
        for j in range(len(poly)):
            nxt[j + 1] = nxt[j + 1] - lam * poly[j]
        poly = nxt
    return [c.rational() for c in poly]


def u_from_roots(p, q, r):
    """u_r = sum_{i=0}^{r-1} sigma^(r-1-i) tau^i."""
    sigma, tau = roots(p, q)
    acc = QuadInt(0, 0, sigma.D)
    for i in range(r):
        acc = acc + sigma ** (r - 1 - i) * tau**i
    return acc.rational()
