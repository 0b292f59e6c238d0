"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as coefficient vectors in the power basis
1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic polynomial.
Only what the symmetry orbits need is implemented: ring operations, division,
equality, hashing and conversion to complex.
"""

from fractions import Fraction
from functools import lru_cache
import cmath
import math


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Integer coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    # x^m - 1 divided by every Phi_k with k | m, k < m
    num = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            num = _exact_div_int(num, list(cyclotomic_polynomial(k)))
    return tuple(num)


def _exact_div_int(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


def _reduce(coeffs, m):
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * phi[j]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(Fraction(x) for x in c)


class Cyclotomic:
    """An element of Q(zeta_m) with zeta_m = exp(2 pi i / m)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        self.order = int(order)
        self.coeffs = _reduce(coeffs, self.order)

    @classmethod
    def root(cls, order, k=1):
        """zeta_order ** k."""
        k %= order
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return cls(order, c)

    @classmethod
    def _raw(cls, order, coeffs):
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    def _lift(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ: %d vs %d" % (self.order, other.order))
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = [Fraction(0)] * len(self.coeffs)
            c[0] = Fraction(other)
            return Cyclotomic._raw(self.order, tuple(c))
        return NotImplemented

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic._raw(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(self.order, prod)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self._lift(1 / self.coeffs[0])
        # solve (multiplication-by-self matrix) * x = e_0
        n = len(self.coeffs)
        cols = []
        basis = Cyclotomic.root(self.order, 0)
        z = Cyclotomic.root(self.order, 1)
        for _ in range(n):
            cols.append((self * basis).coeffs)
            basis = basis * z
        rows = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(n):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        return Cyclotomic._raw(self.order, tuple(rows[i][n] for i in range(n)))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._lift(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Cyclotomic) and other.order != self.order:
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __complex__(self):
        w = cmath.exp(2j * math.pi / self.order)
        return complex(sum(complex(float(c)) * w ** k for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        terms = ["%s*z^%d" % (c, k) for k, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(%d, %s)" % (self.order, " + ".join(terms) or "0")
