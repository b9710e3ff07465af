"""Homogeneous polynomials in (X:Y:Z) over a number field, and the
projective differential forms attached to plane foliations.

The 2-form basis is fixed as (dY^dZ, dZ^dX, dX^dY); monomial normalization
uses graded lexicographic order with X > Y > Z.
"""

from __future__ import annotations

from fractions import Fraction
from .numfield import (
    QQ, FieldElement, NumberField, _ExprParser, format_element, poly_gcd,
    tokenize,
)

VARS = ("X", "Y", "Z")


class HomogeneousForm:
    """A homogeneous trivariate polynomial; zero coefficients are not stored."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: NumberField, degree: int, coeffs: dict):
        self.field = field
        self.degree = degree
        clean = {}
        for expo, c in coeffs.items():
            if sum(expo) != degree:
                raise ValueError("exponent %r does not have degree %d" %
                                 (expo, degree))
            if not c.is_zero():
                clean[expo] = c
        self.coeffs = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def variable(cls, field: NumberField, index: int) -> "HomogeneousForm":
        expo = [0, 0, 0]
        expo[index] = 1
        return cls(field, 1, {tuple(expo): field.one()})

    @classmethod
    def constant(cls, field: NumberField, value) -> "HomogeneousForm":
        return cls(field, 0, {(0, 0, 0): field.element(value)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    # -- ring structure ---------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("forms over different fields")

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding forms of degrees %d and %d" %
                             (self.degree, other.degree))
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            cur = out.get(expo)
            out[expo] = c if cur is None else cur + c
        return HomogeneousForm(self.field, self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogeneousForm(self.field, self.degree,
                               {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            k = self.field.element(other)
            return HomogeneousForm(self.field, self.degree,
                                   {e: c * k for e, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for (i, j, k), a in self.coeffs.items():
            for (p, q, r), b in other.coeffs.items():
                key = (i + p, j + q, k + r)
                cur = out.get(key)
                v = a * b
                out[key] = v if cur is None else cur + v
        return HomogeneousForm(self.field, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = HomogeneousForm.constant(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, HomogeneousForm)
                and self.field == other.field and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree,
                     tuple(sorted((e, c.coeffs) for e, c in self.coeffs.items()))))

    # -- calculus and evaluation ------------------------------------------

    def partial(self, index: int) -> "HomogeneousForm":
        out = {}
        for expo, c in self.coeffs.items():
            if expo[index] == 0:
                continue
            new = list(expo)
            new[index] -= 1
            out[tuple(new)] = c * expo[index]
        return HomogeneousForm(self.field, max(self.degree - 1, 0), out)

    def evaluate(self, point) -> FieldElement:
        x, y, z = (self.field.element(v) for v in point)
        acc = self.field.zero()
        for (i, j, k), c in self.coeffs.items():
            acc = acc + c * x ** i * y ** j * z ** k
        return acc

    def compose_linear(self, matrix) -> "HomogeneousForm":
        """Substitute (X, Y, Z) -> matrix * (X, Y, Z) (rows give new inputs)."""
        images = []
        for row in matrix:
            img = HomogeneousForm(self.field, 1, {})
            for idx, c in enumerate(row):
                ce = self.field.element(c)
                if not ce.is_zero():
                    img = img + HomogeneousForm.variable(self.field, idx) * ce
            images.append(img)
        out = HomogeneousForm(self.field, self.degree, {})
        for (i, j, k), c in self.coeffs.items():
            term = HomogeneousForm.constant(self.field, 1)
            for img, e in zip(images, (i, j, k)):
                term = term * img ** e
            out = out + term * c
        return out

    def dehomogenize(self, index: int) -> dict:
        """Set variable ``index`` to 1; keys are exponent pairs of the others."""
        keep = [i for i in range(3) if i != index]
        out = {}
        for expo, c in self.coeffs.items():
            key = (expo[keep[0]], expo[keep[1]])
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return {k: v for k, v in out.items() if not v.is_zero()}

    def leading(self):
        """Leading (exponent, coefficient) in graded lex order, X > Y > Z."""
        if self.is_zero():
            raise ValueError("zero form has no leading term")
        expo = max(self.coeffs)
        return expo, self.coeffs[expo]

    def monic(self) -> "HomogeneousForm":
        if self.is_zero():
            return self
        _, lead = self.leading()
        inv = lead.inverse()
        return HomogeneousForm(self.field, self.degree,
                               {e: c * inv for e, c in self.coeffs.items()})

    def coefficient_vector(self, order=None):
        if order is None:
            order = monomials(self.degree)
        return [self.coeffs.get(e, self.field.zero()) for e in order]

    def __repr__(self):
        return format_form(self)


def monomials(degree: int):
    """All exponent triples of the given degree, graded lex, X > Y > Z."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return out


def divides(d: HomogeneousForm, f: HomogeneousForm):
    """Exact division test; returns the quotient or None."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return HomogeneousForm(f.field, max(f.degree - d.degree, 0), {})
    if f.degree < d.degree:
        return None
    lead_e, lead_c = d.leading()
    lead_inv = lead_c.inverse()
    rem = dict(f.coeffs)
    quo = {}
    while rem:
        expo = max(rem)
        coeff = rem[expo]
        step = tuple(a - b for a, b in zip(expo, lead_e))
        if min(step) < 0:
            return None
        factor = coeff * lead_inv
        quo[step] = factor
        for de, dc in d.coeffs.items():
            key = tuple(s + t for s, t in zip(step, de))
            cur = rem.get(key, f.field.zero()) - factor * dc
            if cur.is_zero():
                rem.pop(key, None)
            else:
                rem[key] = cur
    return HomogeneousForm(f.field, f.degree - d.degree, quo)


# ---------------------------------------------------------------------------
# gcd of homogeneous forms
# ---------------------------------------------------------------------------

def gcd3(*forms: HomogeneousForm) -> HomogeneousForm:
    """A gcd of homogeneous forms, monic in graded lex order."""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of all-zero forms")
    g = nonzero[0]
    for f in nonzero[1:]:
        g = _gcd_pair(g, f)
        if g.degree == 0:
            break
    return g.monic()


def _gcd_pair(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    field = f.field
    fz = min(e[2] for e in f.coeffs)
    gz = min(e[2] for e in g.coeffs)
    fb = _to_bivariate(f)
    gb = _to_bivariate(g)
    gcd_b = _bi_gcd(fb, gb, field)
    result = _homogenize_bivariate(gcd_b, field)
    z = HomogeneousForm.variable(field, 2)
    return result * z ** min(fz, gz)


def _to_bivariate(f: HomogeneousForm):
    """Dense K[X][Y] coefficients of f(X, Y, 1), as lists over Y-degree."""
    de = f.dehomogenize(2)
    ydeg = max(j for _, j in de)
    xdeg = max(i for i, _ in de)
    field = f.field
    rows = [[field.zero()] * (xdeg + 1) for _ in range(ydeg + 1)]
    for (i, j), c in de.items():
        rows[j][i] = c
    from .numfield import poly_trim
    return [poly_trim(r) for r in rows]


def _bi_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _bi_content(p, field):
    cont = []
    for row in p:
        if row:
            cont = poly_gcd(cont, row, field) if cont else _monic(row, field)
        if len(cont) == 1:
            break
    return cont or [field.one()]


def _monic(p, field):
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _uni_divmod(num, den, field):
    from .numfield import poly_divmod
    return poly_divmod(num, den, field)


def _bi_primitive(p, field):
    cont = _bi_content(p, field)
    if len(cont) == 1 and cont[0] == field.one():
        return p, cont
    out = []
    for row in p:
        if not row:
            out.append([])
            continue
        quo, rem = _uni_divmod(row, cont, field)
        assert not rem
        out.append(quo)
    return out, cont


def _bi_pseudo_rem(f, g, field):
    """Pseudo-remainder of f by g, both K[X][Y] dense in Y."""
    from .numfield import poly_mul as umul, poly_trim
    f = [list(r) for r in f]
    dg = len(g) - 1
    lead = g[-1]
    while len(f) - 1 >= dg and _bi_trim(f):
        df = len(f) - 1
        top = f[-1]
        # f := lead * f - top * g * Y^(df - dg)
        new = []
        for j in range(df):
            row = umul(f[j], lead, field)
            if j - (df - dg) >= 0:
                sub = umul(g[j - (df - dg)], top, field)
                row = _uni_sub(row, sub, field)
            new.append(poly_trim(row))
        f = _bi_trim(new)
        if not f:
            break
    return f


def _uni_sub(a, b, field):
    from .numfield import poly_trim
    out = list(a) + [field.zero()] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return poly_trim(out)


def _bi_gcd(f, g, field):
    f, g = _bi_trim([list(r) for r in f]), _bi_trim([list(r) for r in g])
    if not f:
        return g
    if not g:
        return f
    if len(f) == 1 and len(g) == 1:
        return [poly_gcd(f[0], g[0], field)]
    if len(f) == 1:
        cont_g = _bi_content(g, field)
        return [poly_gcd(f[0], cont_g, field)]
    if len(g) == 1:
        cont_f = _bi_content(f, field)
        return [poly_gcd(g[0], cont_f, field)]
    fp, fc = _bi_primitive(f, field)
    gp, gc = _bi_primitive(g, field)
    cont = poly_gcd(fc, gc, field)
    a, b = fp, gp
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _bi_pseudo_rem(a, b, field)
        if not r:
            break
        r, _ = _bi_primitive(r, field)
        a, b = b, r
        if len(b) == 1:
            b = [[field.one()]]
            break
    gcd_pp = b
    return [_bi_trim_row(umul_row(row, cont, field)) for row in gcd_pp]


def umul_row(row, cont, field):
    from .numfield import poly_mul
    return poly_mul(row, cont, field) if row else []


def _bi_trim_row(row):
    from .numfield import poly_trim
    return poly_trim(row)


def _homogenize_bivariate(p, field):
    total = 0
    for j, row in enumerate(p):
        for i, c in enumerate(row):
            if not c.is_zero():
                total = max(total, i + j)
    out = {}
    for j, row in enumerate(p):
        for i, c in enumerate(row):
            if not c.is_zero():
                out[(i, j, total - i - j)] = c
    return HomogeneousForm(field, total, out)


# ---------------------------------------------------------------------------
# projective forms
# ---------------------------------------------------------------------------

class ProjectiveOneForm:
    """A dX + B dY + C dZ with the Euler relation XA + YB + ZC = 0 and
    gcd(A, B, C) = 1."""

    def __init__(self, A: HomogeneousForm, B: HomogeneousForm,
                 C: HomogeneousForm, check: bool = True):
        self.A, self.B, self.C = A, B, C
        self.field = A.field
        if check:
            degs = {f.degree for f in (A, B, C) if not f.is_zero()}
            if len(degs) != 1:
                raise ValueError("components must share one degree")
            x, y, z = (HomogeneousForm.variable(self.field, i)
                       for i in range(3))
            if not (x * A + y * B + z * C).is_zero():
                raise ValueError("Euler condition X*A + Y*B + Z*C = 0 fails")
            g = gcd3(A, B, C)
            if g.degree != 0:
                raise ValueError("components share the factor %s" %
                                 format_form(g))

    @property
    def coefficient_degree(self) -> int:
        for f in (self.A, self.B, self.C):
            if not f.is_zero():
                return f.degree
        raise ValueError("zero 1-form")

    def components(self):
        return self.A, self.B, self.C

    def __repr__(self):
        return ("(%s) dX + (%s) dY + (%s) dZ" %
                (format_form(self.A), format_form(self.B),
                 format_form(self.C)))


class ProjectiveTwoForm:
    """P dY^dZ + Q dZ^dX + R dX^dY."""

    def __init__(self, P, Q, R):
        self.P, self.Q, self.R = P, Q, R

    def components(self):
        return self.P, self.Q, self.R

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero() and self.R.is_zero()


def foliation_degree(omega: ProjectiveOneForm) -> int:
    """Degree r of the foliation; the coefficients have degree r + 1."""
    return omega.coefficient_degree - 1


def wedge_one_forms(p, q, r, omega: ProjectiveOneForm) -> ProjectiveTwoForm:
    """(p dX + q dY + r dZ) ^ omega on the fixed 2-form basis."""
    A, B, C = omega.components()
    return ProjectiveTwoForm(q * C - r * B, r * A - p * C, p * B - q * A)


def wedge_d(G: HomogeneousForm, omega: ProjectiveOneForm) -> ProjectiveTwoForm:
    """dG ^ omega."""
    return wedge_one_forms(G.partial(0), G.partial(1), G.partial(2), omega)


def is_invariant_curve(G: HomogeneousForm, omega: ProjectiveOneForm) -> bool:
    """True iff G divides every component of dG ^ omega."""
    if G.is_zero():
        raise ValueError("invariance test on the zero form")
    two_form = wedge_d(G, omega)
    return all(divides(G, comp) is not None
               for comp in two_form.components())


def is_first_integral(F: HomogeneousForm, G: HomogeneousForm,
                      omega: ProjectiveOneForm) -> bool:
    """True iff d(F/G) ^ omega = 0, with G^2 cleared."""
    if G.is_zero():
        raise ValueError("zero denominator")
    if F.degree != G.degree:
        raise ValueError("numerator and denominator degrees differ")
    p = G * F.partial(0) - F * G.partial(0)
    q = G * F.partial(1) - F * G.partial(1)
    r = G * F.partial(2) - F * G.partial(2)
    return wedge_one_forms(p, q, r, omega).is_zero()


def one_form_from_pencil(F: HomogeneousForm,
                         G: HomogeneousForm) -> ProjectiveOneForm:
    """The 1-form G dF - F dG with common factors removed.

    This is the foliation whose first integral is F/G; handy for building
    test inputs from an explicit rational function.
    """
    comps = [G * F.partial(i) - F * G.partial(i) for i in range(3)]
    g = gcd3(*comps)
    if g.degree > 0:
        comps = [divides(g, c) for c in comps]
    return ProjectiveOneForm(*comps)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

def parse_form(text: str, field: NumberField = None) -> HomogeneousForm:
    """Parse e.g. ``X^3*Y+4*Y^4`` or ``(8*a-1)*X^2+4*a*X*Y`` over the field."""
    if field is None:
        field = QQ

    class Node:
        __slots__ = ("terms",)

        def __init__(self, terms):
            self.terms = terms      # {(i, j, k): FieldElement}

        def __add__(self, other):
            out = dict(self.terms)
            for e, c in other.terms.items():
                out[e] = out.get(e, field.zero()) + c
            return Node(out)

        def __sub__(self, other):
            out = dict(self.terms)
            for e, c in other.terms.items():
                out[e] = out.get(e, field.zero()) - c
            return Node(out)

        def __neg__(self):
            return Node({e: -c for e, c in self.terms.items()})

        def __mul__(self, other):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = out.get(key, field.zero()) + c1 * c2
            return Node(out)

        def __pow__(self, e):
            out = Node({(0, 0, 0): field.one()})
            for _ in range(e):
                out = out * self
            return out

    def atom(name):
        if name in VARS:
            expo = [0, 0, 0]
            expo[VARS.index(name)] = 1
            return Node({tuple(expo): field.one()})
        if name == "a":
            if field.is_rational:
                raise ValueError("generator 'a' used without a field: line")
            return Node({(0, 0, 0): field.gen()})
        raise ValueError("unknown variable %r" % name)

    node = _ExprParser(tokenize(text), atom,
                       lambda q: Node({(0, 0, 0): field.element(q)})).parse()
    terms = {e: c for e, c in node.terms.items() if not c.is_zero()}
    if not terms:
        return HomogeneousForm(field, 0, {})
    degrees = {sum(e) for e in terms}
    if len(degrees) != 1:
        raise ValueError("polynomial %r is not homogeneous" % text)
    return HomogeneousForm(field, degrees.pop(), terms)


def format_form(f: HomogeneousForm) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for expo in sorted(f.coeffs, reverse=True):
        c = f.coeffs[expo]
        mono = "*".join(
            (v if e == 1 else "%s^%d" % (v, e))
            for v, e in zip(VARS, expo) if e > 0)
        body = format_element(c)
        if not mono:
            parts.append(body)
        elif body == "1":
            parts.append(mono)
        elif body == "-1":
            parts.append("-" + mono)
        elif "+" in body or "-" in body[1:]:
            parts.append("(%s)*%s" % (body, mono))
        else:
            parts.append("%s*%s" % (body, mono))
    text = parts[0]
    for term in parts[1:]:
        text += term if term.startswith("-") else "+" + term
    return text
