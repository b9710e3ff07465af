"""Exact arithmetic in Q and in a simple number field K = Q(a).

A field is described by a monic minimal polynomial over Q in the variable
``t``; degree 1 means K = Q.  Elements are stored as canonical residues,
i.e. polynomials in the generator of degree < deg(K) with Fraction
coefficients.  Everything here is exact; no floats anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence


class FieldMismatchError(ValueError):
    """Raised when combining elements of different number fields."""


class FieldExtensionNeeded(ValueError):
    """Raised when a computation would leave the base field.

    ``certificate`` is the offending irreducible (over K, as far as this
    package can tell) polynomial, as a list of FieldElement coefficients.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


# ---------------------------------------------------------------------------
# rational polynomial helpers (lists of Fractions, low degree first)
# ---------------------------------------------------------------------------

def _qtrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quo = [Fraction(0)] * max(0, len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] / lead
        if c:
            quo[k - dd] = c
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    return quo, _qtrim(num[:dd])


def _rational_roots(coeffs):
    """All rational roots of a Q-polynomial, via the rational root test."""
    p = _qtrim([Fraction(c) for c in coeffs])
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = []
    low = 0
    while low < len(p) and p[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
        p = p[low:]
    if len(p) <= 1:
        return roots
    den_lcm = 1
    for c in p:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand in roots:
                    continue
                if _qeval(ints, cand) == 0:
                    roots.append(cand)
    return roots


def _qeval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n):
    n = abs(n)
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_is_square(q):
    """Return sqrt(q) as a Fraction if q is a rational square, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn = _isqrt(n)
    rd = _isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _isqrt(n):
    import math
    return math.isqrt(n)


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------

class NumberField:
    """K = Q[t]/(m) for a monic polynomial m of degree >= 1.

    Degree 1 means plain Q.  Irreducibility is fully verified (by the
    rational root test) only for degree <= 3; for higher degrees a rational
    root still rejects the polynomial, but compositeness without rational
    roots goes undetected and ``irreducibility_verified`` is left False.
    """

    def __init__(self, minpoly: Sequence = (0, 1)):
        coeffs = tuple(Fraction(c) for c in minpoly)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial needs degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        if 2 <= self.degree:
            if _rational_roots(coeffs):
                raise ValueError("minimal polynomial has a rational root, "
                                 "so it is reducible over Q")
        self.irreducibility_verified = self.degree <= 3
        self._zero = FieldElement(self, (Fraction(0),) * self.degree)
        self._one = self.element(1)

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls((0, 1))

    @classmethod
    def from_string(cls, text: str) -> "NumberField":
        """Parse a minimal polynomial such as ``t^2+t+1`` or ``t^2-5``."""
        terms = _parse_univariate(text, "t")
        deg = max(terms) if terms else 0
        coeffs = [terms.get(i, Fraction(0)) for i in range(deg + 1)]
        return cls(coeffs)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def zero(self) -> "FieldElement":
        return self._zero

    def one(self) -> "FieldElement":
        return self._one

    def gen(self) -> "FieldElement":
        """The residue class of t (for K = Q this is the rational -m[0])."""
        if self.degree == 1:
            return self.element(-self.minpoly[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldElement(self, tuple(c))

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError("element of a different field")
            return value
        if isinstance(value, (int, Fraction)):
            c = [Fraction(0)] * self.degree
            c[0] = Fraction(value)
            return FieldElement(self, tuple(c))
        coeffs = [Fraction(v) for v in value]
        return FieldElement(self, self._reduce(coeffs))

    def _reduce(self, coeffs):
        if len(coeffs) > self.degree:
            _, rem = _qdivmod(coeffs, list(self.minpoly))
            coeffs = rem
        coeffs = list(coeffs) + [Fraction(0)] * (self.degree - len(coeffs))
        return tuple(coeffs)

    def parse(self, text: str) -> "FieldElement":
        """Parse an element in the ``a`` syntax, e.g. ``-3/2*a+7``."""
        terms = _parse_univariate(text, "a")
        deg = max(terms) if terms else 0
        coeffs = [terms.get(i, Fraction(0)) for i in range(deg + 1)]
        return self.element(coeffs)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.is_rational:
            return "NumberField(Q)"
        return "NumberField(t: %s)" % format_minpoly(self)


class FieldElement:
    """A canonical residue in a NumberField.  Immutable."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("%s is not rational" % self)
        return self.coeffs[0]

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in
                                              zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in
                                              zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = self.field.degree
        if n == 1:
            return FieldElement(self.field,
                                (self.coeffs[0] * other.coeffs[0],))
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via extended gcd with the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverting zero field element")
        n = self.field.degree
        if n == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        # extended Euclid in Q[t] for gcd(residue, minpoly) = 1
        r0, r1 = list(self.field.minpoly), _qtrim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while True:
            quo, rem = _qdivmod(r0, r1)
            if not rem:
                break
            s_new = _qsub(s0, _qmul(quo, s1))
            r0, r1, s0, s1 = r1, rem, s1, s_new
        if len(r1) != 1:
            # the residue shares a factor with an unverified minimal polynomial
            raise ZeroDivisionError("element is a zero divisor; the declared "
                                    "minimal polynomial is reducible")
        inv = [c / r1[0] for c in s1]
        return FieldElement(self.field, self.field._reduce(inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- equality and ordering ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.minpoly, self.coeffs))
        return self._hash

    def sort_key(self):
        """Deterministic total order on elements of one field (not algebraic)."""
        return tuple(self.coeffs)

    def __repr__(self):
        return format_element(self)


QQ = NumberField.rationals()


def _qsub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _qtrim(out)


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    return _qtrim(out)


# ---------------------------------------------------------------------------
# univariate polynomials over K (lists of FieldElement, low degree first)
# ---------------------------------------------------------------------------

def poly_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def poly_degree(p) -> int:
    p = poly_trim(p)
    return len(p) - 1 if p else -1


def poly_eval(p, x: FieldElement) -> FieldElement:
    acc = x.field.zero()
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def poly_mul(p, q, field):
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return []
    out = [field.zero()] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def poly_divmod(num, den, field):
    num, den = poly_trim(num), poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [field.zero()] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    lead_inv = den[-1].inverse()
    for k in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[k] * lead_inv
        if c.is_zero():
            continue
        quo[k - len(den) + 1] = c
        for j, dj in enumerate(den):
            rem[k - len(den) + 1 + j] = rem[k - len(den) + 1 + j] - c * dj
    return quo, poly_trim(rem[:len(den) - 1])


def poly_gcd(p, q, field):
    """Monic gcd in K[t]."""
    p, q = poly_trim(p), poly_trim(q)
    while q:
        _, r = poly_divmod(p, q, field)
        p, q = q, r
    if p:
        inv = p[-1].inverse()
        p = [c * inv for c in p]
    return p


def poly_derivative(p, field):
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_resultant(p, q, field) -> FieldElement:
    """Resultant of two K[t] polynomials by the Euclidean algorithm."""
    p, q = poly_trim(p), poly_trim(q)
    res = field.one()
    while True:
        if not q:
            return field.zero() if len(p) > 1 else res
        if len(q) == 1:
            return res * q[0] ** (len(p) - 1)
        _, r = poly_divmod(p, q, field)
        dp, dq, dr = len(p) - 1, len(q) - 1, len(r) - 1
        sign = field.element((-1) ** (dp * dq))
        res = res * sign * q[-1] ** (dp - dr)
        p, q = q, r


def poly_interpolate(xs, ys, field):
    """Lagrange interpolation over K at rational nodes."""
    n = len(xs)
    out = [field.zero()] * n
    for i in range(n):
        num = [field.one()]
        den = field.one()
        for j in range(n):
            if i == j:
                continue
            num = poly_mul(num, [field.element(-xs[j]), field.one()], field)
            den = den * field.element(xs[i] - xs[j])
        scale = ys[i] * den.inverse()
        for k, c in enumerate(num):
            out[k] = out[k] + scale * c
    return poly_trim(out)


def poly_squarefree_part(p, field):
    """p divided by gcd(p, p'), monic."""
    p = poly_trim(p)
    d = poly_derivative(p, field)
    g = poly_gcd(p, d, field)
    if len(g) <= 1:
        inv = p[-1].inverse()
        return [c * inv for c in p]
    quo, rem = poly_divmod(p, g, field)
    assert not rem
    inv = quo[-1].inverse()
    return [c * inv for c in quo]


class RootsResult(NamedTuple):
    roots: list
    remaining_degree: int
    cofactor: list


def find_roots_in_field(f: Sequence[FieldElement], field: NumberField = None) -> RootsResult:
    """All roots of f that lie in K, plus the degree of the unsplit cofactor.

    Complete for K = Q (any degree, by the rational root test) and for
    quadratic K (by reduction to a rational bivariate system).  For fields of
    degree >= 3 only rational roots and roots of low-degree cofactors are
    found; any possibly-unsplit part is reported through remaining_degree.
    """
    f = poly_trim(f)
    if not f:
        raise ValueError("root-finding on the zero polynomial")
    if field is None:
        field = f[0].field
    roots = []
    work = list(f)

    def divide_out(r):
        nonlocal work
        while True:
            quo, rem = poly_divmod(work, [field.zero() - r, field.one()], field)
            if rem:
                break
            work = quo
            if poly_degree(work) < 1:
                break

    for r in _roots_once(work, field):
        if r not in roots:
            roots.append(r)
    for r in roots:
        divide_out(r)
    # the division can reveal nothing new for complete strategies, but keep
    # looping for the generic fallback until no further roots appear
    progressed = True
    while progressed and poly_degree(work) >= 1:
        progressed = False
        for r in _roots_once(work, field):
            if r not in roots:
                roots.append(r)
                divide_out(r)
                progressed = True
    roots.sort(key=lambda e: e.sort_key())
    return RootsResult(roots, max(poly_degree(work), 0), work)


def _roots_once(f, field):
    deg = poly_degree(f)
    if deg < 1:
        return []
    if deg == 1:
        return [(-f[0]) / f[1]]
    if field.is_rational:
        coeffs = [c.as_fraction() for c in f]
        return [field.element(r) for r in _rational_roots(coeffs)]
    found = list(_rational_roots_in_extension(f, field))
    if deg == 2:
        found.extend(r for r in _quadratic_roots(f, field) if r not in found)
    elif field.degree == 2:
        found.extend(r for r in _quadratic_field_roots(f, field)
                     if r not in found)
    return found


def _rational_roots_in_extension(f, field):
    """Rational roots of f in K[t]: common rational roots of the coordinates."""
    coord = None
    for j in range(field.degree):
        cj = _qtrim([c.coeffs[j] for c in f])
        if cj:
            coord = cj if coord is None else _qgcd(coord, cj)
    if coord is None:
        return
    for r in _rational_roots(coord):
        cand = field.element(r)
        if poly_eval(f, cand).is_zero():
            yield cand


def _qgcd(p, q):
    p, q = list(p), list(q)
    while _qtrim(q):
        _, r = _qdivmod(p, q)
        p, q = q, r
    p = _qtrim(p)
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def sqrt_in_field(d: FieldElement):
    """A square root of d in K, or None.  Complete for deg K <= 2."""
    field = d.field
    if d.is_zero():
        return field.zero()
    if field.is_rational:
        r = rational_is_square(d.as_fraction())
        return None if r is None else field.element(r)
    if field.degree != 2:
        if d.is_rational():
            r = rational_is_square(d.coeffs[0])
            if r is not None:
                return field.element(r)
        return None
    # (x + y*a)^2 = d over the quadratic field with a^2 = -p*a - q
    p, q = field.minpoly[1], field.minpoly[0]
    d0, d1 = d.coeffs[0], d.coeffs[1]
    candidates = []
    if d1 == 0:
        r = rational_is_square(d0)
        if r is not None:
            candidates.append((r, Fraction(0)))
        denom = Fraction(p) ** 2 / 4 - q
        if denom != 0:
            y2 = d0 / denom
            ry = rational_is_square(y2)
            if ry is not None and ry != 0:
                candidates.append((p * ry / 2, ry))
    else:
        # y(2x - p y) = d1 and x^2 - q y^2 = d0 reduce to a biquadratic in y
        a4 = Fraction(p) ** 2 - 4 * q
        a2 = 2 * p * d1 - 4 * d0
        a0 = d1 ** 2
        for y2 in _quadratic_rational_roots(a4, a2, a0):
            ry = rational_is_square(y2)
            if ry is None or ry == 0:
                continue
            for y in (ry, -ry):
                x = (d1 + p * y * y) / (2 * y)
                candidates.append((x, y))
    for x, y in candidates:
        cand = field.element((x, y))
        if cand * cand == d:
            return cand
    return None


def _quadratic_rational_roots(a, b, c):
    """Rational roots of a*y^2 + b*y + c (a may be zero)."""
    if a == 0:
        if b == 0:
            return []
        return [Fraction(-c, 1) / b]
    disc = b * b - 4 * a * c
    r = rational_is_square(disc)
    if r is None:
        return []
    return sorted({(-b + r) / (2 * a), (-b - r) / (2 * a)})


def _quadratic_roots(f, field):
    """Roots in K of a quadratic with K coefficients."""
    c, b, a = f[0], f[1], f[2]
    disc = b * b - field.element(4) * a * c
    s = sqrt_in_field(disc)
    if s is None:
        return []
    two_a = field.element(2) * a
    r1 = (-b + s) / two_a
    r2 = (-b - s) / two_a
    return [r1] if r1 == r2 else [r1, r2]


def _quadratic_field_roots(f, field):
    """Roots in a quadratic K of arbitrary-degree f, by rational coordinates.

    Writing a candidate root as x + y*a turns f(x + y*a) = 0 into two
    polynomial equations over Q, solved exactly with a resultant.
    """
    gen = field.gen()
    n = poly_degree(f)
    # powers (x + y a)^k expanded as pairs of Q[x, y] dicts {(i, j): coeff}
    one = {(0, 0): Fraction(1)}
    p_m, q_m = field.minpoly[1], field.minpoly[0]

    def pair_mul(u, v):
        # (u0 + a u1)(v0 + a v1) with a^2 = -p a - q
        u0, u1 = u
        v0, v1 = v
        w0, w1, w2 = {}, {}, {}
        for (i, j), cu in u0.items():
            for (k, l), cv in v0.items():
                _acc(w0, (i + k, j + l), cu * cv)
        for (i, j), cu in u0.items():
            for (k, l), cv in v1.items():
                _acc(w1, (i + k, j + l), cu * cv)
        for (i, j), cu in u1.items():
            for (k, l), cv in v0.items():
                _acc(w1, (i + k, j + l), cu * cv)
        for (i, j), cu in u1.items():
            for (k, l), cv in v1.items():
                _acc(w2, (i + k, j + l), cu * cv)
        for key, c in w2.items():
            _acc(w0, key, -q_m * c)
            _acc(w1, key, -p_m * c)
        return (_clean(w0), _clean(w1))

    base = ({(1, 0): Fraction(1)}, {(0, 1): Fraction(1)})  # x + y a
    powers = [(one, {})]
    for _ in range(n):
        powers.append(pair_mul(powers[-1], base))
    P, Q = {}, {}
    for k, coeff in enumerate(f):
        c0, c1 = coeff.coeffs[0], coeff.coeffs[1]
        p0, p1 = powers[k]
        # (c0 + a c1)(p0 + a p1)
        for key, c in p0.items():
            _acc(P, key, c0 * c)
            _acc(Q, key, c1 * c)
        for key, c in p1.items():
            _acc(Q, key, c0 * c)
            _acc(P, key, -q_m * c1 * c)
            _acc(Q, key, -p_m * c1 * c)
    P, Q = _clean(P), _clean(Q)
    ys = _bivariate_rational_solutions(P, Q)
    out = []
    for x0, y0 in ys:
        cand = field.element((x0, y0))
        if poly_eval(f, cand).is_zero() and cand not in out:
            out.append(cand)
    return out


def _acc(d, key, val):
    if val == 0:
        return
    cur = d.get(key)
    if cur is None:
        d[key] = val
    else:
        cur += val
        if cur == 0:
            del d[key]
        else:
            d[key] = cur


def _clean(d):
    return {k: v for k, v in d.items() if v != 0}


def _to_y_coeffs(poly, x_as_main=False):
    """Bivariate dict -> dense list over Q[x] (inner lists indexed by x-deg)."""
    if not poly:
        return []
    if x_as_main:
        poly = {(j, i): c for (i, j), c in poly.items()}
    ydeg = max(j for _, j in poly)
    xdeg = max(i for i, _ in poly)
    out = [[Fraction(0)] * (xdeg + 1) for _ in range(ydeg + 1)]
    for (i, j), c in poly.items():
        out[j][i] = c
    return [_qtrim(row) for row in out]


def _bivariate_rational_solutions(P, Q):
    """Common rational zeros of two coprime polynomials in Q[x, y]."""
    res = _resultant_y(P, Q)
    if res is None:
        res = _resultant_y({(j, i): c for (i, j), c in P.items()},
                           {(j, i): c for (i, j), c in Q.items()})
        if res is None:
            raise NotImplementedError("degenerate bivariate system")
        xs = [] if not _qtrim(list(res)) else _rational_roots(res)
        sols = []
        for y0 in xs:
            sols.extend((x0, y0) for x0 in
                        _common_univariate_roots(P, Q, y_value=y0))
        return sols
    xs = [] if not _qtrim(list(res)) else _rational_roots(res)
    sols = []
    for x0 in xs:
        sols.extend((x0, y0) for y0 in
                    _common_univariate_roots(P, Q, x_value=x0))
    return sols


def _common_univariate_roots(P, Q, x_value=None, y_value=None):
    def substitute(poly):
        out = {}
        for (i, j), c in poly.items():
            if x_value is not None:
                _acc(out, j, c * x_value ** i)
            else:
                _acc(out, i, c * y_value ** j)
        deg = max(out) if out else 0
        return _qtrim([out.get(k, Fraction(0)) for k in range(deg + 1)])

    p1, p2 = substitute(P), substitute(Q)
    if not p1 and not p2:
        return []
    if not p1:
        return _rational_roots(p2)
    if not p2:
        return _rational_roots(p1)
    g = _qgcd(p1, p2)
    if len(g) <= 1:
        return []
    return _rational_roots(g)


def _resultant_y(P, Q):
    """Res_y of two bivariate dicts, as a Q[x] list; None if degenerate."""
    A = _to_y_coeffs(P)
    B = _to_y_coeffs(Q)
    if len(A) <= 1 or len(B) <= 1:
        return None
    # Sylvester determinant over Q[x] via expansion into Q(x) is avoided;
    # use evaluation-interpolation on rational points instead.
    m, n = len(A) - 1, len(B) - 1
    bound = m * max((len(r) - 1 for r in B), default=0) + \
        n * max((len(r) - 1 for r in A), default=0)
    points, values = [], []
    x0 = 0
    while len(points) < bound + 1:
        xv = Fraction(x0)
        a = _qtrim([_qeval(row, xv) for row in A])
        b = _qtrim([_qeval(row, xv) for row in B])
        if len(a) == m + 1 and len(b) == n + 1:
            points.append(xv)
            values.append(_univariate_resultant(a, b))
        x0 = -x0 + (1 if x0 <= 0 else 0)
        if abs(x0) > 4 * (bound + 5):
            return None
    return _interpolate(points, values)


def _univariate_resultant(a, b):
    """Resultant of two Q-polynomials by the Euclidean algorithm."""
    a, b = _qtrim(list(a)), _qtrim(list(b))
    res = Fraction(1)
    while True:
        if not b:
            return Fraction(0) if len(a) > 1 else res
        if len(b) == 1:
            return res * b[0] ** (len(a) - 1)
        _, r = _qdivmod(a, b)
        da, db, dr = len(a) - 1, len(b) - 1, len(r) - 1
        res *= Fraction((-1) ** (da * db)) * b[-1] ** (da - dr)
        a, b = b, r


def _interpolate(xs, ys):
    """Lagrange interpolation over Q, dense output."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if i == j:
                continue
            num = _qmul(num, [-xs[j], Fraction(1)])
            den *= xs[i] - xs[j]
        scale = ys[i] / den
        for k, c in enumerate(num):
            out[k] += scale * c
    return _qtrim(out)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[a-zA-Z]|\^|\*|\+|-|\(|\))")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("bad token at %r" % text[pos:pos + 12])
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Tiny recursive-descent parser shared by the element and form syntax.

    ``atom(name)`` must produce a value for a single-letter variable; the
    value type needs +, -, * and ** with int exponents, and scalar
    multiplication with Fraction.
    """

    def __init__(self, tokens, atom, const):
        self.tokens = tokens
        self.pos = 0
        self.atom = atom
        self.const = const

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        val = self.sum()
        if self.peek() is not None:
            raise ValueError("trailing input at token %r" % self.peek())
        return val

    def sum(self):
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        val = self.product()
        if sign < 0:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.product()
            val = val - rhs if op == "-" else val + rhs
        return val

    def product(self):
        val = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                val = val * self.power()
            elif tok is not None and (tok[0].isdigit() or tok[0].isalpha()
                                      or tok == "("):
                val = val * self.power()
            else:
                return val

    def power(self):
        base = self.factor()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a positive integer")
            return base ** int(tok)
        return base

    def factor(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok == "(":
            val = self.sum()
            if self.take() != ")":
                raise ValueError("missing closing parenthesis")
            return val
        if tok[0].isdigit():
            return self.const(Fraction(tok))
        if tok.isalpha():
            return self.atom(tok)
        raise ValueError("unexpected token %r" % tok)


def _parse_univariate(text, letter):
    """Parse into {power: Fraction} for a single variable polynomial."""

    class Poly(dict):
        def __add__(self, other):
            out = Poly(self)
            for k, v in other.items():
                out[k] = out.get(k, Fraction(0)) + v
            return out

        def __sub__(self, other):
            out = Poly(self)
            for k, v in other.items():
                out[k] = out.get(k, Fraction(0)) - v
            return out

        def __neg__(self):
            return Poly({k: -v for k, v in self.items()})

        def __mul__(self, other):
            out = Poly()
            for i, a in self.items():
                for j, b in other.items():
                    out[i + j] = out.get(i + j, Fraction(0)) + a * b
            return out

        def __pow__(self, e):
            out = Poly({0: Fraction(1)})
            for _ in range(e):
                out = out * self
            return out

    def atom(name):
        if name != letter:
            raise ValueError("unknown variable %r (expected %r)" %
                             (name, letter))
        return Poly({1: Fraction(1)})

    parser = _ExprParser(tokenize(text), atom, lambda q: Poly({0: q}))
    result = parser.parse()
    return {k: v for k, v in result.items() if v != 0}


def format_element(e: FieldElement) -> str:
    """Render in the field syntax: rationals as p/q, the generator as ``a``."""
    parts = []
    for i, c in enumerate(e.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(_fmt_q(c))
            continue
        var = "a" if i == 1 else "a^%d" % i
        if c == 1:
            term = var
        elif c == -1:
            term = "-" + var
        else:
            term = "%s*%s" % (_fmt_q(c), var)
        parts.append(term)
    if not parts:
        return "0"
    text = parts[0]
    for term in parts[1:]:
        text += term if term.startswith("-") else "+" + term
    return text


def format_minpoly(field: NumberField) -> str:
    parts = []
    for i in range(field.degree, -1, -1):
        c = field.minpoly[i]
        if c == 0:
            continue
        if i == 0:
            term = _fmt_q(c)
        else:
            var = "t" if i == 1 else "t^%d" % i
            if c == 1:
                term = var
            elif c == -1:
                term = "-" + var
            else:
                term = "%s*%s" % (_fmt_q(c), var)
        parts.append(term)
    text = parts[0]
    for term in parts[1:]:
        text += term if term.startswith("-") else "+" + term
    return text


def _fmt_q(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def format_poly_in_t(coeffs: Iterable[FieldElement]) -> str:
    """Render a K[t] polynomial (certificates use this form)."""
    parts = []
    for i, c in reversed(list(enumerate(coeffs))):
        if c.is_zero():
            continue
        body = format_element(c)
        if i == 0:
            parts.append(body)
            continue
        var = "t" if i == 1 else "t^%d" % i
        if body == "1":
            parts.append(var)
        elif body == "-1":
            parts.append("-" + var)
        elif "+" in body or ("-" in body[1:]):
            parts.append("(%s)*%s" % (body, var))
        else:
            parts.append("%s*%s" % (body, var))
    if not parts:
        return "0"
    text = parts[0]
    for term in parts[1:]:
        text += term if term.startswith("-") else "+" + term
    return text
