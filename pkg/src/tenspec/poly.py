"""Multivariate and univariate polynomials over exact or floating coefficients.

Two coefficient domains are used throughout the package:

* ``"exact"``: :class:`fractions.Fraction`, or :class:`~tenspec.cyclotomic.Cyclotomic`
  when a root of unity enters (symmetry orbits).
* ``"float"``: Python ``complex``.

Mixing the two raises :class:`~tenspec.errors.DomainMismatchError`; convert with
``to_float()`` first.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
import math
import numbers
import re

from .cyclotomic import Cyclotomic
from .errors import DomainMismatchError

__all__ = [
    "MPoly",
    "UPoly",
    "to_coeff",
    "coeff_domain",
    "monomials",
    "univariate_interpolate",
    "vanishing_order",
    "parse_rational",
    "format_rational",
]


def parse_rational(text):
    """Parse ``"p/q"``, ``"p"`` or a decimal string into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError("expected a rational string, got %r" % (text,))
    return Fraction(text.strip())


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def to_coeff(c):
    """Normalize a scalar to a Fraction, Cyclotomic or complex."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, numbers.Integral):
        return Fraction(int(c))
    if isinstance(c, Cyclotomic):
        return c.to_fraction() if c.is_rational() else c
    if isinstance(c, numbers.Complex):
        return complex(c)
    if isinstance(c, str):
        return parse_rational(c)
    raise TypeError("unsupported coefficient %r" % (c,))


def coeff_domain(c):
    return "float" if isinstance(c, complex) else "exact"


def _merge_domain(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise DomainMismatchError("mixed exact and floating coefficients")


def monomials(nvars, degree):
    """Exponent tuples of the given total degree, in graded-lex order (x0 > x1 > ...)."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _glex_key(e):
    return (sum(e), e)


class MPoly:
    """Sparse multivariate polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("nvars", "terms", "domain")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        clean = {}
        domain = None
        for e, c in (terms or {}).items():
            e = tuple(int(i) for i in e)
            if len(e) != self.nvars or min(e, default=0) < 0:
                raise ValueError("bad exponent tuple %r for %d variables" % (e, self.nvars))
            c = to_coeff(c)
            if c == 0:
                continue
            domain = _merge_domain(domain, coeff_domain(c))
            clean[e] = c
        self.terms = clean
        self.domain = domain

    @classmethod
    def _make(cls, nvars, terms, domain):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.domain = domain if terms else None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars):
        return cls._make(nvars, {}, None)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise IndexError("variable index %d out of range" % i)
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def from_coefficients(cls, nvars, degree, coeffs):
        """Homogeneous form from coefficients listed in graded-lex monomial order."""
        mons = monomials(nvars, degree)
        if len(coeffs) != len(mons):
            raise ValueError("expected %d coefficients, got %d" % (len(mons), len(coeffs)))
        return cls(nvars, dict(zip(mons, coeffs)))

    # basic queries

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0) if self.domain != "float" else 0j)

    def coefficients(self, degree):
        """Coefficients of the degree-``degree`` part in graded-lex monomial order."""
        zero = 0j if self.domain == "float" else Fraction(0)
        return [self.terms.get(e, zero) for e in monomials(self.nvars, degree)]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _glex_key(kv[0]), reverse=True)

    def to_float(self):
        return MPoly._make(self.nvars, {e: complex(c) for e, c in self.terms.items()}, "float")

    # arithmetic

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch: %d vs %d" % (self.nvars, other.nvars))
        return _merge_domain(self.domain, other.domain)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (numbers.Number, Cyclotomic)):
                other = MPoly.constant(self.nvars, other)
            else:
                return NotImplemented
        dom = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly._make(self.nvars, out, dom)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make(self.nvars, {e: -c for e, c in self.terms.items()}, self.domain)

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (numbers.Number, Cyclotomic)):
                other = MPoly.constant(self.nvars, other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (numbers.Number, Cyclotomic)):
                c = to_coeff(other)
                if self.domain == "float" and isinstance(c, Fraction):
                    c = complex(c)  # rational scalars act on float polynomials
                dom = _merge_domain(self.domain, coeff_domain(c))
                if c == 0:
                    return MPoly.zero(self.nvars)
                return MPoly._make(self.nvars, {e: v * c for e, v in self.terms.items()}, dom)
            return NotImplemented
        dom = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._make(self.nvars, {e: c for e, c in out.items() if c != 0}, dom)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, MPoly):
            return NotImplemented
        c = to_coeff(scalar)
        if isinstance(c, Fraction):
            return self * (1 / c)
        if isinstance(c, Cyclotomic):
            return self * c.inverse()
        return self * (1 / c)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.constant(self.nvars, 1) if self.domain != "float" else MPoly.constant(self.nvars, 1 + 0j)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (numbers.Number, Cyclotomic)):
            return self == MPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and evaluation

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has %d coordinates, expected %d" % (len(point), self.nvars))
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    __call__ = evaluate

    def partial(self, i):
        if not 0 <= i < self.nvars:
            raise IndexError("variable index %d out of range" % i)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return MPoly._make(self.nvars, out, self.domain)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def substitute_linear(self, matrix):
        """Return p(A x): each x_i is replaced by sum_j A[i][j] x_j."""
        n = self.nvars
        images = [MPoly(n, {tuple(int(j == k) for k in range(n)): matrix[i][j] for j in range(n)}) for i in range(n)]
        out = MPoly.zero(n)
        powers = [dict() for _ in range(n)]

        def power(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        for e, c in self.terms.items():
            term = MPoly.constant(n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def permute_variables(self, perm):
        """Rename x_i -> x_perm[i]."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.nvars
            for i, k in enumerate(e):
                f[perm[i]] = k
            out[tuple(f)] = c
        return MPoly._make(self.nvars, out, self.domain)

    def scale_variables(self, factors):
        """Return p(a_0 x_0, ..., a_n x_n)."""
        out = {}
        dom = self.domain
        for e, c in self.terms.items():
            v = c
            for a, k in zip(factors, e):
                if k:
                    v = v * to_coeff(a) ** k
            if v != 0:
                dom = _merge_domain(dom, coeff_domain(to_coeff(v)))
                out[e] = to_coeff(v)
        return MPoly._make(self.nvars, out, dom)

    # text format

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            if isinstance(c, Fraction):
                cs = format_rational(c)
            elif isinstance(c, complex):
                im = repr(c.imag)
                cs = "(%r%sj)" % (c.real, im if im[0] == "-" else "+" + im)
            else:
                raise ValueError("cyclotomic coefficients have no text form")
            factors = [cs]
            for i, k in enumerate(e):
                if k == 1:
                    factors.append("x%d" % i)
                elif k > 1:
                    factors.append("x%d^%d" % (i, k))
            parts.append("*".join(factors))
        return "+".join(parts)

    @classmethod
    def from_text(cls, text, nvars=None):
        parsed = [_parse_term(t) for t in _split_terms(text)]
        width = max((max(e, default=-1) + 1 for _, e in parsed), default=0)
        if nvars is None:
            nvars = max(width, 1)
        elif width > nvars:
            raise ValueError("variable index exceeds nvars=%d" % nvars)
        out = MPoly.zero(nvars)
        for c, exps in parsed:
            e = [0] * nvars
            for i, k in exps.items():
                e[i] += k
            out = out + MPoly(nvars, {tuple(e): c})
        return out

    def __repr__(self):
        return "MPoly(%d, %s)" % (self.nvars, self.to_text() if self.domain != "exact" or all(
            isinstance(c, Fraction) for c in self.terms.values()) else dict(self.terms))

    __str__ = to_text


def _split_terms(text):
    text = text.replace(" ", "")
    terms, depth, cur = [], 0, ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and cur[-1] not in "*^/":
            terms.append(cur)
            cur = "" if ch == "+" else "-"
            continue
        cur += ch
    if cur:
        terms.append(cur)
    return [t for t in terms if t not in ("", "0")]


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_term(term):
    sign = 1
    if term.startswith("-"):
        sign, term = -1, term[1:]
    coeff = Fraction(1)
    exps = {}
    for factor in term.split("*"):
        m = _VAR.match(factor)
        if m:
            i = int(m.group(1))
            exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
        elif factor.startswith("("):
            coeff = coeff * complex(factor.strip("()").replace(" ", ""))
        else:
            coeff = coeff * parse_rational(factor)
    return (coeff * sign, exps)


class UPoly:
    """Dense univariate polynomial, coefficients listed from degree 0 upward."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [to_coeff(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        doms = {coeff_domain(x) for x in c}
        if len(doms) > 1:
            raise DomainMismatchError("mixed exact and floating coefficients")
        self.coeffs = tuple(c)

    @property
    def domain(self):
        if not self.coeffs:
            return None
        return coeff_domain(self.coeffs[0])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def __call__(self, x):
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def _zero(self):
        return 0j if self.domain == "float" else Fraction(0)

    def __add__(self, other):
        other = other if isinstance(other, UPoly) else UPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, UPoly) else UPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * to_coeff(other) for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = UPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        q = [0] * max(0, len(rem) - dq)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            q[i - dq] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = rem[i - dq + j] - c * b
        return UPoly(q), UPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self):
        return UPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return UPoly([c * inv for c in self.coeffs])

    def gcd(self, other):
        """Monic gcd; exact domains only."""
        if self.domain == "float" or other.domain == "float":
            raise DomainMismatchError("gcd is only defined for exact coefficients")
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: pairs (factor, multiplicity) with monic squarefree factors."""
        if self.degree < 1:
            return []
        f = self.monic()
        if _squarefree_mod_p(f):
            return [(f, 1)]
        fp = f.derivative()
        a = f.gcd(fp)
        b = f.exact_div(a)
        c = fp.exact_div(a)
        d = c - b.derivative()
        out = []
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if a.degree > 0:
                out.append((a, i))
            i += 1
        return out

    def to_float(self):
        return UPoly([complex(c) for c in self.coeffs])

    def __repr__(self):
        return "UPoly(%r)" % (list(self.coeffs),)


_PRIME = 2 ** 61 - 1


def _squarefree_mod_p(f):
    """Cheap certificate: gcd(f, f') = 1 modulo a large prime implies f is squarefree over Q.

    A nontrivial rational gcd divides f in Z[x] with leading coefficient dividing
    that of f, so it survives reduction modulo any prime not dividing the lead.
    """
    if not all(isinstance(c, (int, Fraction)) for c in f.coeffs):
        return False
    L = 1
    for c in f.coeffs:
        L = math.lcm(L, Fraction(c).denominator)
    ints = [int(Fraction(c) * L) % _PRIME for c in f.coeffs]
    if ints[-1] == 0:
        return False

    def trim(a):
        while a and a[-1] == 0:
            a.pop()
        return a

    def mod(a, b):
        a = list(a)
        inv = pow(b[-1], _PRIME - 2, _PRIME)
        while len(a) >= len(b):
            c = a[-1] * inv % _PRIME
            shift = len(a) - len(b)
            for j, x in enumerate(b):
                a[shift + j] = (a[shift + j] - c * x) % _PRIME
            trim(a)
        return a

    a = trim(ints)
    b = trim([k * c % _PRIME for k, c in enumerate(ints)][1:])
    while b:
        a, b = b, mod(a, b)
    return len(a) == 1


def univariate_interpolate(samples, degree):
    """Polynomial of degree <= ``degree`` through ``samples`` = [(node, value), ...].

    Newton divided differences; exact when the samples are exact. Extra samples
    beyond ``degree + 1`` are used as a consistency check.
    """
    samples = [(to_coeff(x), to_coeff(y)) for x, y in samples]
    if len(samples) < degree + 1:
        raise ValueError("need at least %d samples, got %d" % (degree + 1, len(samples)))
    nodes = [x for x, _ in samples]
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate interpolation nodes")
    xs = nodes[: degree + 1]
    table = [y for _, y in samples[: degree + 1]]
    for level in range(1, degree + 1):
        for i in range(degree, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    poly = UPoly([table[degree]])
    for i in range(degree - 1, -1, -1):
        poly = poly * UPoly([-xs[i], 1]) + UPoly([table[i]])
    for x, y in samples[degree + 1:]:
        v = poly(x)
        if (v != y) if poly.domain != "float" else abs(v - y) > 1e-9 * (1 + abs(y)):
            raise ValueError("samples are not consistent with degree %d" % degree)
    return poly


def vanishing_order(p):
    """Largest k with t^k dividing p; ``math.inf`` for the zero polynomial."""
    if p.is_zero():
        return math.inf
    for k, c in enumerate(p.coeffs):
        if c != 0:
            return k
    return math.inf
