"""Resolution of plane foliation singularities over the base field: local
blow-ups, simplicity and dicriticalness tests, and assembly of the dicritical
configuration.

Everything is restricted to points expressible over K.  When a singular point
escapes the field, its whole conjugate orbit is analyzed symbolically in the
quotient algebra K[t]/(cofactor); orbits certified simple are ignored (they
are never blown up), anything else aborts with the irreducible cofactor as a
machine-readable certificate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from .cluster import (
    Configuration, InfinitelyNearPoint, normalize_point, root_chart_images,
)
from .numfield import (
    FieldElement, FieldExtensionNeeded, NumberField, find_roots_in_field,
    format_poly_in_t, poly_degree, poly_divmod, poly_eval, poly_gcd,
    poly_interpolate, poly_mul, poly_resultant, poly_squarefree_part,
    poly_trim, rational_is_square,
)
from .polyforms import HomogeneousForm, ProjectiveOneForm
from .linsys import root_scalar_series


class ResolutionError(RuntimeError):
    pass


class DepthCapExceeded(ResolutionError):
    pass


# ---------------------------------------------------------------------------
# scalar bivariate helpers: dicts (i, j) -> FieldElement, variables (u, v)
# ---------------------------------------------------------------------------

def _bi_add_term(out, key, val):
    cur = out.get(key)
    if cur is None:
        out[key] = val
    else:
        s = cur + val
        if s.is_zero():
            del out[key]
        else:
            out[key] = s


def _bi_scale(poly, k):
    if k.is_zero():
        return {}
    return {key: c * k for key, c in poly.items()}


def _bi_partial(poly, index):
    out = {}
    for (i, j), c in poly.items():
        e = (i, j)[index]
        if e:
            key = (i - 1, j) if index == 0 else (i, j - 1)
            _bi_add_term(out, key, c * e)
    return out


def _bi_eval(poly, x, y, field):
    acc = field.zero()
    for (i, j), c in poly.items():
        acc = acc + c * x ** i * y ** j
    return acc


def _bi_order(poly):
    return min((i + j for i, j in poly), default=None)


def _u_valuation(poly):
    return min((i for i, _ in poly), default=None)


def _shift_v(poly, c, field):
    """(u, v) -> (u, v + c)."""
    if c.is_zero():
        return dict(poly)
    powers = {0: field.one()}

    def cpow(e):
        if e not in powers:
            powers[e] = cpow(e - 1) * c
        return powers[e]

    from math import comb
    out = {}
    for (i, j), coeff in poly.items():
        for k in range(j + 1):
            _bi_add_term(out, (i, k), coeff * (cpow(j - k) * comb(j, k)))
    return out


def _subst_chart1(poly):
    """v = u*w: monomial u^i v^j -> u^(i+j) w^j."""
    out = {}
    for (i, j), c in poly.items():
        _bi_add_term(out, (i + j, j), c)
    return out


def _subst_chart2(poly):
    """(u, v) = (v'*u', u'): monomial u^i v^j -> u'^(i+j) v'^i."""
    out = {}
    for (i, j), c in poly.items():
        _bi_add_term(out, (i + j, i), c)
    return out


def _divide_u(poly, k):
    if k == 0:
        return dict(poly)
    out = {}
    for (i, j), c in poly.items():
        assert i >= k
        out[(i - k, j)] = c
    return out


def _coeffs_at_u0(poly, field):
    """The restriction to the exceptional u = 0, as a K[w] list."""
    deg = max((j for i, j in poly if i == 0), default=-1)
    out = [field.zero()] * (deg + 1)
    for (i, j), c in poly.items():
        if i == 0:
            out[j] = c
    return poly_trim(out)


# ---------------------------------------------------------------------------
# local foliations
# ---------------------------------------------------------------------------

class LocalFoliation:
    """omega = a du + b dv around the origin, polynomial coefficients."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: NumberField, a: dict, b: dict):
        self.field = field
        self.a = a
        self.b = b

    def order(self) -> int:
        orders = [o for o in (_bi_order(self.a), _bi_order(self.b))
                  if o is not None]
        if not orders:
            raise ResolutionError("zero local 1-form")
        return min(orders)

    def is_singular(self) -> bool:
        return self.order() >= 1

    def linear_data(self) -> Tuple[FieldElement, FieldElement]:
        """(trace, determinant) of the linear part of the dual vector field."""
        zero = self.field.zero()
        a_u = self.a.get((1, 0), zero)
        a_v = self.a.get((0, 1), zero)
        b_u = self.b.get((1, 0), zero)
        b_v = self.b.get((0, 1), zero)
        return (a_v - b_u, a_u * b_v - a_v * b_u)

    def translate(self, c: FieldElement) -> "LocalFoliation":
        return LocalFoliation(self.field, _shift_v(self.a, c, self.field),
                              _shift_v(self.b, c, self.field))


def local_at_plane_point(omega: ProjectiveOneForm, origin) -> LocalFoliation:
    """Pull the projective 1-form back to the canonical chart at the point."""
    field = omega.field
    origin = normalize_point(tuple(field.element(v) for v in origin))
    images = root_chart_images(origin, field)
    a: dict = {}
    b: dict = {}
    for comp, (cu, cv, _) in zip(omega.components(), images):
        if comp.is_zero():
            continue
        series = root_scalar_series(comp, origin)
        if not cu.is_zero():
            for key, c in series.items():
                _bi_add_term(a, key, c * cu)
        if not cv.is_zero():
            for key, c in series.items():
                _bi_add_term(b, key, c * cv)
    return LocalFoliation(field, a, b)


def _ratio_is_positive_rational(c: FieldElement) -> bool:
    """Does r^2 - c r + 1 = 0 have a positive rational root?"""
    if not c.is_rational():
        return False
    cq = c.as_fraction()
    if cq < 2:
        # real rational roots need disc >= 0, and their product is 1
        return False
    return rational_is_square(cq * cq - 4) is not None


def is_simple(omega: LocalFoliation) -> bool:
    """Seidenberg-final singularities: eigenvalue ratio not a positive
    rational, including saddle-nodes; nilpotent linear part is not simple."""
    if not omega.is_singular():
        raise ResolutionError("simplicity test at a non-singular point")
    trace, det = omega.linear_data()
    if det.is_zero():
        return not trace.is_zero()
    c = (trace * trace - 2 * det) / det
    return not _ratio_is_positive_rational(c)


class BlowUpResult(NamedTuple):
    dicritical: bool
    chart1: list            # (c, LocalFoliation at the point, simple flag)
    chart2: Optional[LocalFoliation]
    chart2_singular: bool


def blow_up_local(omega: LocalFoliation, debug: bool = False) -> BlowUpResult:
    """One blow-up at the origin; locates the singular points on the
    exceptional divisor and decides dicriticalness."""
    if not omega.is_singular():
        raise ResolutionError("blow-up at a non-singular point")
    field = omega.field
    a1 = dict(_subst_chart1(omega.a))
    wb = {}
    for (i, j), c in _subst_chart1(omega.b).items():
        _bi_add_term(wb, (i, j + 1), c)
    for key, c in wb.items():
        _bi_add_term(a1, key, c)
    b1 = {(i + 1, j): c for (i, j), c in _subst_chart1(omega.b).items()}
    vals = [v for v in (_u_valuation(a1), _u_valuation(b1)) if v is not None]
    k = min(vals)
    a1 = _divide_u(a1, k)
    b1 = _divide_u(b1, k)
    dicritical = any(i == 0 for i, _ in b1)

    # singular points on u = 0 in chart 1
    a0 = _coeffs_at_u0(a1, field)
    b0 = _coeffs_at_u0(b1, field)
    if not a0 and not b0:
        raise ResolutionError("exceptional divisor inside the singular locus")
    g = poly_gcd(a0, b0, field) if (a0 and b0) else (a0 or b0)
    children = []
    if poly_degree(g) >= 1:
        g = poly_squarefree_part(g, field)
        roots, remaining, cofactor = find_roots_in_field(g, field)
        if remaining > 0:
            _require_orbit_simple(a1, b1, cofactor, field,
                                  point=lambda t: (field.zero(), t))
        for c in sorted(roots, key=lambda e: e.sort_key()):
            child = LocalFoliation(field, a1, b1).translate(c)
            children.append((c, child, is_simple(child)))

    # chart 2: (u, v) = (v'u', u')
    sa = {}
    for (i, j), c in _subst_chart2(omega.a).items():
        _bi_add_term(sa, (i, j + 1), c)
    a2 = dict(_subst_chart2(omega.b))
    for key, c in sa.items():
        _bi_add_term(a2, key, c)
    b2 = {(i + 1, j): c for (i, j), c in _subst_chart2(omega.a).items()}
    vals2 = [v for v in (_u_valuation(a2), _u_valuation(b2)) if v is not None]
    k2 = min(vals2)
    assert k2 == k
    a2 = _divide_u(a2, k2)
    b2 = _divide_u(b2, k2)
    if debug:
        dic2 = any(i == 0 for i, _ in b2)
        assert dic2 == dicritical
    omega2 = LocalFoliation(field, a2, b2)
    zero = field.zero()
    sing2 = (_bi_eval(a2, zero, zero, field).is_zero()
             and _bi_eval(b2, zero, zero, field).is_zero())
    return BlowUpResult(dicritical, children, omega2, sing2)


# ---------------------------------------------------------------------------
# conjugate orbits outside K: exact simplicity certification
# ---------------------------------------------------------------------------

def _require_orbit_simple(a, b, modulus, field, point):
    """Certify that all conjugate singular points cut out by ``modulus`` are
    simple; raise FieldExtensionNeeded otherwise.

    ``point(t)`` gives the (u, v) coordinates of the orbit as K[t]/(modulus)
    elements, t being the residue of the variable; a, b are the bivariate
    coefficients of the ambient local 1-form.
    """
    g = poly_squarefree_part(modulus, field)
    one = field.one()
    t_elt = [field.zero(), one]
    u0, v0 = point(t_elt)
    u0 = _alg_reduce(u0 if isinstance(u0, list) else [u0], g, field)
    v0 = _alg_reduce(v0 if isinstance(v0, list) else [v0], g, field)

    def jac_entry(poly, index):
        part = _bi_partial(poly, index)
        return _alg_eval_bivariate(part, u0, v0, g, field)

    a_u, a_v = jac_entry(a, 0), jac_entry(a, 1)
    b_u, b_v = jac_entry(b, 0), jac_entry(b, 1)
    trace = _alg_sub(a_v, b_u, field)
    det = _alg_sub(_alg_mul(a_u, b_v, g, field),
                   _alg_mul(a_v, b_u, g, field), field)

    certificate = format_poly_in_t(g)
    g0 = poly_gcd(g, det, field) if poly_trim(det) else list(g)
    if poly_degree(g0) >= 1:
        g00 = poly_gcd(g0, trace, field) if poly_trim(trace) else list(g0)
        if poly_degree(g00) >= 1:
            raise FieldExtensionNeeded(
                "a conjugate singular point with nilpotent linear part lies "
                "outside the base field (certificate %s)" % certificate,
                certificate=g)
    g1, rem = poly_divmod(g, g0, field) if poly_degree(g0) >= 1 else (list(g), [])
    assert not rem
    if poly_degree(g1) < 1:
        return
    # candidates for a rational eigenvalue-ratio invariant c = (tr^2-2det)/det
    e_poly = _alg_sub(_alg_mul(trace, trace, g1, field),
                      _alg_scale(_alg_reduce(det, g1, field), field.element(2), field),
                      field)
    deg = poly_degree(g1)
    nodes, values = [], []
    c_val = 0
    while len(nodes) < deg + 1:
        cq = Fraction(c_val)
        shifted = _alg_sub(e_poly,
                           _alg_scale(_alg_reduce(det, g1, field),
                                      field.element(cq), field), field)
        values.append(poly_resultant(g1, shifted, field))
        nodes.append(cq)
        c_val = -c_val + (1 if c_val <= 0 else 0)
    res_in_c = poly_interpolate(nodes, values, field)
    roots, _, _ = find_roots_in_field(res_in_c, field) \
        if poly_degree(res_in_c) >= 1 else ([], 0, [])
    for root in roots:
        if root.is_rational() and _ratio_is_positive_rational(root):
            raise FieldExtensionNeeded(
                "a conjugate singular point outside the base field is not "
                "simple (certificate %s)" % certificate, certificate=g)


def _alg_reduce(p, modulus, field):
    p = poly_trim(list(p))
    if poly_degree(p) >= poly_degree(modulus):
        p = poly_divmod(p, modulus, field)[1]
    return p


def _alg_mul(p, q, modulus, field):
    return _alg_reduce(poly_mul(p, q, field), modulus, field)


def _alg_sub(p, q, field):
    out = list(p) + [field.zero()] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return poly_trim(out)


def _alg_scale(p, k, field):
    return poly_trim([c * k for c in p])


def _alg_eval_bivariate(poly, u0, v0, modulus, field):
    """Evaluate a K-bivariate polynomial at algebra-valued coordinates."""
    acc = []
    upow = {0: [field.one()]}
    vpow = {0: [field.one()]}

    def power(cache, base, e):
        if e not in cache:
            cache[e] = _alg_mul(power(cache, base, e - 1), base, modulus, field)
        return cache[e]

    for (i, j), c in poly.items():
        term = _alg_mul(power(upow, u0, i), power(vpow, v0, j), modulus, field)
        term = _alg_scale(term, c, field)
        acc = _alg_sub(acc, _alg_scale(term, field.element(-1), field), field)
    return _alg_reduce(acc, modulus, field)


def _alg_inverse(p, modulus, field):
    """Inverse in K[t]/(modulus); raises FieldExtensionNeeded on a zero
    divisor (the modulus then splits and the orbit needs case analysis)."""
    r0, r1 = list(modulus), poly_trim(list(p))
    s0, s1 = [], [field.one()]
    while True:
        quo, rem = poly_divmod(r0, r1, field)
        if not rem:
            break
        s_new = _alg_sub(s0, poly_mul(quo, s1, field), field)
        r0, r1, s0, s1 = r1, rem, s1, s_new
    if poly_degree(r1) != 0:
        raise FieldExtensionNeeded(
            "zero divisor in the escape algebra (certificate %s)" %
            format_poly_in_t(modulus), certificate=modulus)
    inv_lead = r1[0].inverse()
    return _alg_reduce([c * inv_lead for c in s1], modulus, field)


# ---------------------------------------------------------------------------
# global singular locus
# ---------------------------------------------------------------------------

class EscapedOrbit(NamedTuple):
    kind: str               # "affine-y" | "affine-x" | "infinity"
    modulus: list           # K[t] polynomial cutting out the orbit
    data: tuple


class SingularLocus(NamedTuple):
    points: list            # normalized projective points over K
    complete: bool
    escaped: list           # EscapedOrbit entries


def singular_points(omega: ProjectiveOneForm) -> SingularLocus:
    """Common zeros of A, B, C over K, chart by chart, with completeness."""
    field = omega.field
    A, B, C = omega.components()
    points = []
    escaped = []

    # affine chart Z = 1: common zeros of the two dehomogenized components
    pair = [f.dehomogenize(2) for f in (A, B) if not f.is_zero()]
    if len(pair) < 2:
        pair = [f.dehomogenize(2) for f in (A, B, C) if not f.is_zero()][:2]
    p, q = pair
    affine_pts, affine_escaped = _solve_affine(p, q, field)
    points.extend((x, y, field.one()) for x, y in affine_pts)
    escaped.extend(affine_escaped)

    # the line Z = 0: points (x:1:0) and (1:0:0)
    univs = []
    for f in (A, B, C):
        coeffs = _restrict_to_infinity(f, field)
        if coeffs:
            univs.append(coeffs)
    g = univs[0]
    for other in univs[1:]:
        g = poly_gcd(g, other, field)
        if poly_degree(g) < 1:
            break
    if poly_degree(g) >= 1:
        g = poly_squarefree_part(g, field)
        roots, remaining, cofactor = find_roots_in_field(g, field)
        for r in roots:
            points.append((r, field.one(), field.zero()))
        if remaining > 0:
            escaped.append(EscapedOrbit("infinity", cofactor, ()))
    one, zero = field.one(), field.zero()
    if all(f.evaluate((one, zero, zero)).is_zero() for f in (A, B, C)):
        points.append((one, zero, zero))
    points = [normalize_point(pt) for pt in points]
    return SingularLocus(points, not escaped, escaped)


def _restrict_to_infinity(form: HomogeneousForm, field):
    """Coefficients of f(x, 1, 0) as a K[x] list."""
    out = [field.zero()] * (form.degree + 1)
    for (i, j, k), c in form.coeffs.items():
        if k == 0:
            out[i] = out[i] + c
    return poly_trim(out)


def _solve_affine(p, q, field):
    """Common zeros in K^2 of two coprime bivariate polynomials, plus the
    conjugate orbits that escape K."""
    points = []
    escaped = []
    p_y = max((j for _, j in p), default=0)
    q_y = max((j for _, j in q), default=0)
    if p_y == 0 or q_y == 0:
        uni, other = (p, q) if p_y == 0 else (q, p)
        ux = _bi_to_x_poly(uni, field)
        roots, remaining, cofactor = find_roots_in_field(
            poly_squarefree_part(ux, field), field)
        if remaining > 0:
            escaped.append(EscapedOrbit("affine-x", cofactor, (p, q)))
        for x0 in roots:
            for y0 in _y_roots_at(other, x0, None, field, escaped, (p, q)):
                points.append((x0, y0))
        return points, escaped
    rx = _resultant_in_y(p, q, field)
    if not rx:
        raise ResolutionError("degenerate affine singular system")
    roots, remaining, cofactor = find_roots_in_field(
        poly_squarefree_part(rx, field), field)
    if remaining > 0:
        escaped.append(EscapedOrbit("affine-x", cofactor, (p, q)))
    for x0 in roots:
        for y0 in _y_roots_at(p, x0, q, field, escaped, (p, q)):
            points.append((x0, y0))
    return points, escaped


def _y_roots_at(p, x0, q, field, escaped, pair):
    py = _bi_eval_x(p, x0, field)
    if q is not None:
        qy = _bi_eval_x(q, x0, field)
        g = poly_gcd(py, qy, field) if (py and qy) else (py or qy)
    else:
        g = py
    if poly_degree(g) < 1:
        return []
    g = poly_squarefree_part(g, field)
    roots, remaining, cofactor = find_roots_in_field(g, field)
    if remaining > 0:
        escaped.append(EscapedOrbit("affine-y", cofactor, (x0, pair)))
    return sorted(roots, key=lambda e: e.sort_key())


def _bi_to_x_poly(poly, field):
    deg = max((i for i, _ in poly), default=-1)
    out = [field.zero()] * (deg + 1)
    for (i, j), c in poly.items():
        assert j == 0
        out[i] = out[i] + c
    return poly_trim(out)


def _bi_eval_x(poly, x0, field):
    """Substitute x = x0, leaving a K[y] list."""
    deg = max((j for _, j in poly), default=-1)
    out = [field.zero()] * (deg + 1)
    for (i, j), c in poly.items():
        out[j] = out[j] + c * x0 ** i
    return poly_trim(out)


def _resultant_in_y(p, q, field):
    """Res_y of bivariate dicts over K, by evaluation-interpolation in x."""
    p_rows = _to_y_rows(p, field)
    q_rows = _to_y_rows(q, field)
    m, n = len(p_rows) - 1, len(q_rows) - 1
    xdeg_p = max((len(r) - 1 for r in p_rows if r), default=0)
    xdeg_q = max((len(r) - 1 for r in q_rows if r), default=0)
    bound = m * xdeg_q + n * xdeg_p + 1
    nodes, values = [], []
    x_val = 0
    attempts = 0
    while len(nodes) < bound:
        xe = field.element(Fraction(x_val))
        pe = poly_trim([poly_eval(r, xe) if r else field.zero()
                        for r in p_rows])
        qe = poly_trim([poly_eval(r, xe) if r else field.zero()
                        for r in q_rows])
        if len(pe) == m + 1 and len(qe) == n + 1:
            nodes.append(Fraction(x_val))
            values.append(poly_resultant(pe, qe, field))
        x_val = -x_val + (1 if x_val <= 0 else 0)
        attempts += 1
        if attempts > 8 * bound + 32:
            raise ResolutionError("resultant evaluation kept degenerating")
    return poly_interpolate(nodes, values, field)


def _to_y_rows(poly, field):
    """Bivariate dict -> list over y-degree of K[x] coefficient lists."""
    ydeg = max(j for _, j in poly)
    acc = [dict() for _ in range(ydeg + 1)]
    for (i, j), c in poly.items():
        acc[j][i] = c
    rows = []
    for row in acc:
        if not row:
            rows.append([])
            continue
        deg = max(row)
        rows.append(poly_trim([row.get(i, field.zero())
                               for i in range(deg + 1)]))
    return rows


# ---------------------------------------------------------------------------
# building the dicritical configuration
# ---------------------------------------------------------------------------

class _Node:
    __slots__ = ("origin", "chart", "c", "parent", "children", "dicritical",
                 "local")

    def __init__(self, origin=None, chart=None, c=None, parent=None):
        self.origin = origin
        self.chart = chart
        self.c = c
        self.parent = parent
        self.children = []
        self.dicritical = False
        self.local = None


def build_configuration(omega: ProjectiveOneForm,
                        depth_cap: int = 50,
                        debug: bool = False) -> Configuration:
    """Blow up the non-simple singularities iteratively and return the
    configuration of dicritical points (B_F with its N_F partition)."""
    field = omega.field
    locus = singular_points(omega)
    for orbit in locus.escaped:
        _analyze_escaped_orbit(omega, orbit, field)
    roots = []
    for pt in locus.points:
        local = local_at_plane_point(omega, pt)
        if not local.is_singular():
            raise ResolutionError("computed singular point is not singular")
        if is_simple(local):
            continue
        node = _Node(origin=pt)
        node.local = local
        roots.append(node)
    for node in roots:
        _expand(node, depth_cap, debug)
    roots.sort(key=lambda nd: tuple(c.sort_key() for c in nd.origin))
    ordered = []
    for node in roots:
        if _collect_dicritical(node):
            _emit(node, ordered)
    names = {}
    named = []
    for i, node in enumerate(ordered):
        name = "q%d" % (i + 1)
        names[id(node)] = name
        if node.origin is not None:
            rec = InfinitelyNearPoint(name, origin=node.origin,
                                      dicritical=node.dicritical)
        else:
            rec = InfinitelyNearPoint(name, parent=names[id(node.parent)],
                                      chart=node.chart,
                                      c=node.c if node.chart == 1 else None,
                                      dicritical=node.dicritical)
        named.append(rec)
    return Configuration(named, field)


def _expand(node: _Node, depth_left: int, debug: bool):
    if depth_left <= 0:
        raise DepthCapExceeded("resolution exceeded the depth cap")
    result = blow_up_local(node.local, debug=debug)
    node.dicritical = result.dicritical
    for c, child_local, simple in result.chart1:
        if simple:
            continue
        child = _Node(chart=1, c=c, parent=node)
        child.local = child_local
        node.children.append(child)
    if result.chart2_singular and not is_simple(result.chart2):
        child = _Node(chart=2, parent=node)
        child.local = result.chart2
        node.children.append(child)
    for child in node.children:
        _expand(child, depth_left - 1, debug)


def _collect_dicritical(node: _Node) -> bool:
    """Prune to B_F: keep nodes with a dicritical divisor above or at them."""
    kept_children = []
    any_dicritical = node.dicritical
    for child in node.children:
        if _collect_dicritical(child):
            kept_children.append(child)
            any_dicritical = True
    node.children = kept_children
    return any_dicritical


def _emit(node: _Node, out):
    out.append(node)
    chart1 = sorted((ch for ch in node.children if ch.chart == 1),
                    key=lambda ch: ch.c.sort_key())
    chart2 = [ch for ch in node.children if ch.chart == 2]
    for ch in chart1 + chart2:
        _emit(ch, out)


def _analyze_escaped_orbit(omega, orbit: EscapedOrbit, field):
    if orbit.kind == "affine-y":
        x0, (p, q) = orbit.data
        _require_orbit_simple_ambient(p, q, orbit.modulus, field,
                                      u0=[x0], v0=[field.zero(), field.one()])
    elif orbit.kind == "affine-x":
        p, q = orbit.data
        t_elt = [field.zero(), field.one()]
        y0 = _solve_y_in_algebra(p, q, orbit.modulus, field)
        _require_orbit_simple_ambient(p, q, orbit.modulus, field,
                                      u0=t_elt, v0=y0)
    elif orbit.kind == "infinity":
        # chart Y = 1: omega = A(x,1,z) dx + C(x,1,z) dz at (t, 0)
        A, _, C = omega.components()
        p = A.dehomogenize(1)
        q = C.dehomogenize(1)
        _require_orbit_simple_ambient(p, q, orbit.modulus, field,
                                      u0=[field.zero(), field.one()],
                                      v0=[field.zero()])
    else:
        raise ResolutionError("unknown escape kind %r" % orbit.kind)


def _require_orbit_simple_ambient(p, q, modulus, field, u0, v0):
    """Simplicity over the orbit algebra for an ambient 1-form p dx + q dy."""
    _require_orbit_simple(p, q, modulus, field,
                          point=lambda t: (u0, v0))


def _solve_y_in_algebra(p, q, modulus, field):
    """The y-coordinate over K[t]/(modulus) via a gcd in the algebra; the
    orbit must have exactly one y per conjugate."""
    g = poly_squarefree_part(modulus, field)
    py = _rows_mod(p, g, field)
    qy = _rows_mod(q, g, field)
    gy = _algebra_poly_gcd(py, qy, g, field)
    if len(gy) != 2:
        raise FieldExtensionNeeded(
            "conjugate singular points need a further extension "
            "(certificate %s)" % format_poly_in_t(g), certificate=g)
    lead_inv = _alg_inverse(gy[1], g, field)
    neg = _alg_scale(_alg_mul(gy[0], lead_inv, g, field),
                     field.element(-1), field)
    return neg


def _rows_mod(p, modulus, field):
    """Bivariate dict -> list over y-degree of K[t]/(modulus) elements."""
    ydeg = max(j for _, j in p)
    rows = [[] for _ in range(ydeg + 1)]
    acc = [dict() for _ in range(ydeg + 1)]
    for (i, j), c in p.items():
        acc[j][i] = acc[j].get(i, field.zero()) + c
    out = []
    for row in acc:
        if not row:
            out.append([])
            continue
        deg = max(row)
        lst = poly_trim([row.get(i, field.zero()) for i in range(deg + 1)])
        out.append(_alg_reduce(lst, modulus, field))
    while out and not out[-1]:
        out.pop()
    return out


def _algebra_poly_gcd(p, q, modulus, field):
    """Monic gcd in (K[t]/(modulus))[y] by Euclid; raises on zero divisors."""
    p, q = [list(r) for r in p], [list(r) for r in q]

    def trim(f):
        while f and not poly_trim(f[-1]):
            f.pop()
        return f

    p, q = trim(p), trim(q)
    while q:
        lead_inv = _alg_inverse(q[-1], modulus, field)
        rem = [list(r) for r in p]
        while len(rem) >= len(q) and trim(rem):
            shift = len(rem) - len(q)
            factor = _alg_mul(rem[-1], lead_inv, modulus, field)
            for i, qc in enumerate(q):
                sub = _alg_mul(factor, qc, modulus, field)
                rem[shift + i] = _alg_sub(rem[shift + i], sub, field)
            rem = trim(rem)
            if len(rem) < len(q):
                break
        p, q = q, rem
    lead_inv = _alg_inverse(p[-1], modulus, field)
    return [_alg_mul(r, lead_inv, modulus, field) for r in p]
