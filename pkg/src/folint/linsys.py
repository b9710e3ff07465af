"""Linear systems of plane curves through a configuration: exact h^0 of
the direct image of O(D), explicit bases, and effective multiplicities of
concrete curves along the configuration.

The conditions are produced by the virtual-transform traversal: at each
point, monomials of local order below the virtual multiplicity are linear
conditions on the generic coefficients; passing to a child substitutes the
blow-up chart map, discards the constrained monomials and divides by the
chart exponent.  Negative virtual multiplicities impose no condition and
are clamped to zero.
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .cluster import Configuration, DivisorClass, root_chart_images
from .numfield import FieldElement
from .polyforms import HomogeneousForm, monomials

Series = Dict[Tuple[int, int], list]


# ---------------------------------------------------------------------------
# scalar bivariate helpers (dicts (i, j) -> FieldElement)
# ---------------------------------------------------------------------------

def _bi_mul(a, b, field):
    out = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            key = (i + k, j + l)
            cur = out.get(key)
            v = ca * cb
            if cur is None:
                out[key] = v
            else:
                out[key] = cur + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bi_pow(base, e, field, cache):
    if e in cache:
        return cache[e]
    if e == 0:
        result = {(0, 0): field.one()}
    else:
        result = _bi_mul(_bi_pow(base, e - 1, field, cache), base, field)
    cache[e] = result
    return result


def root_scalar_series(form: HomogeneousForm, origin) -> dict:
    """The local equation of the curve at a plane point, in chart coordinates."""
    field = form.field
    images = root_chart_images(origin, field)
    polys = []
    for cu, cv, c1 in images:
        img = {}
        for key, c in (((1, 0), cu), ((0, 1), cv), ((0, 0), c1)):
            if not c.is_zero():
                img[key] = c
        polys.append(img)
    caches = [{}, {}, {}]
    out = {}
    for (i, j, k), coeff in form.coeffs.items():
        term = _bi_mul(_bi_pow(polys[0], i, field, caches[0]),
                       _bi_pow(polys[1], j, field, caches[1]), field)
        term = _bi_mul(term, _bi_pow(polys[2], k, field, caches[2]), field)
        for key, c in term.items():
            cur = out.get(key)
            v = coeff * c
            out[key] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _scalar_chart1(series, drop, divide, c, field):
    """v = u*(w + c): reindex monomials, dropping total degree < ``drop``."""
    powers = {0: field.one()}

    def cpow(e):
        if e not in powers:
            powers[e] = cpow(e - 1) * c
        return powers[e]

    out = {}
    for (i, j), coeff in series.items():
        if i + j < drop:
            continue
        base = i + j - divide
        for k in range(j + 1):
            factor = comb(j, k)
            scale = cpow(j - k) * factor
            if scale.is_zero():
                continue
            key = (base, k)
            v = coeff * scale
            cur = out.get(key)
            out[key] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _scalar_chart2(series, drop, divide):
    """u = s*v in child coordinates (u', v') = (v, s)."""
    out = {}
    for (i, j), coeff in series.items():
        if i + j < drop:
            continue
        key = (i + j - divide, i)
        cur = out.get(key)
        out[key] = coeff if cur is None else cur + coeff
    return out


def _scalar_descend(series, child_point, drop, divide, field):
    if child_point.chart == 1:
        return _scalar_chart1(series, drop, divide, child_point.c, field)
    return _scalar_chart2(series, drop, divide)


# ---------------------------------------------------------------------------
# effective multiplicities and strict transforms
# ---------------------------------------------------------------------------

def effective_multiplicities(form: HomogeneousForm,
                             config: Configuration) -> List[int]:
    """Multiplicity at every configuration point of the successive strict
    transforms of the curve."""
    if form.is_zero():
        raise ValueError("multiplicities of the zero form")
    field = config.field
    if form.field != field:
        raise ValueError("form and configuration over different fields")
    mults = [0] * config.size
    local = {}
    for idx, point in enumerate(config.points):
        if point.is_root():
            series = root_scalar_series(form, point.origin)
        else:
            parent = config.parent_idx[idx]
            m = mults[parent]
            series = _scalar_descend(local[parent], point, m, m, field)
        mults[idx] = min((i + j for i, j in series), default=0)
        local[idx] = series
    return mults


def strict_class(form: HomogeneousForm, config: Configuration) -> DivisorClass:
    return config.divisor(form.degree, effective_multiplicities(form, config))


def total_valuations(mults, config: Configuration):
    """Valuation of the total transform along each exceptional divisor."""
    vals = [0] * config.size
    for i in range(config.size):
        vals[i] = mults[i] + sum(vals[j] for j in config.prox_to[i])
    return vals


# ---------------------------------------------------------------------------
# the linear system of a divisor class
# ---------------------------------------------------------------------------

def _vec_series_root(config: Configuration, root_idx: int, degree: int):
    """Vector-valued local series of the generic degree-d form at a root."""
    field = config.field
    order = monomials(degree)
    n = len(order)
    images = root_chart_images(config.points[root_idx].origin, field)
    polys = []
    for cu, cv, c1 in images:
        img = {}
        for key, c in (((1, 0), cu), ((0, 1), cv), ((0, 0), c1)):
            if not c.is_zero():
                img[key] = c
        polys.append(img)
    caches = [{}, {}, {}]
    zero = field.zero()
    out: Series = {}
    for t, (i, j, k) in enumerate(order):
        term = _bi_mul(_bi_pow(polys[0], i, field, caches[0]),
                       _bi_pow(polys[1], j, field, caches[1]), field)
        term = _bi_mul(term, _bi_pow(polys[2], k, field, caches[2]), field)
        for key, c in term.items():
            vec = out.get(key)
            if vec is None:
                vec = [zero] * n
                out[key] = vec
            vec[t] = vec[t] + c
    return out


def _root_series_cached(config, root_idx, degree):
    # cached on the configuration itself so the entries share its lifetime
    cache = getattr(config, "_root_series_cache", None)
    if cache is None:
        cache = {}
        config._root_series_cache = cache
    key = (root_idx, degree)
    if key not in cache:
        if len(cache) > 64:
            cache.clear()
        cache[key] = _vec_series_root(config, root_idx, degree)
    return cache[key]


def _vec_chart1(series: Series, drop, divide, c, field, n):
    powers = {0: field.one()}

    def cpow(e):
        if e not in powers:
            powers[e] = cpow(e - 1) * c
        return powers[e]

    zero = field.zero()
    out: Series = {}
    for (i, j), vec in series.items():
        if i + j < drop:
            continue
        base = i + j - divide
        for k in range(j + 1):
            scale = cpow(j - k) * comb(j, k)
            if scale.is_zero():
                continue
            key = (base, k)
            acc = out.get(key)
            if acc is None:
                acc = [zero] * n
                out[key] = acc
            for t, v in enumerate(vec):
                if not v.is_zero():
                    acc[t] = acc[t] + v * scale
    return out


def _vec_chart2(series: Series, drop, divide, field, n):
    zero = field.zero()
    out: Series = {}
    for (i, j), vec in series.items():
        if i + j < drop:
            continue
        key = (i + j - divide, i)
        acc = out.get(key)
        if acc is None:
            acc = [zero] * n
            out[key] = acc
        for t, v in enumerate(vec):
            if not v.is_zero():
                acc[t] = acc[t] + v
    return out


def condition_rows(D: DivisorClass, config: Configuration):
    """Linear conditions on the generic degree-d coefficients cut out by the
    virtual transform of D; negative multiplicities are clamped to zero."""
    if D.d < 0:
        raise ValueError("negative degree %d" % D.d)
    field = config.field
    n = len(monomials(D.d))
    clamped = [max(v, 0) for v in D.e]
    rows = []
    local = {}
    for idx, point in enumerate(config.points):
        if point.is_root():
            series = _root_series_cached(config, idx, D.d)
        else:
            parent = config.parent_idx[idx]
            e_p = clamped[parent]
            prev = local[parent]
            if point.chart == 1:
                series = _vec_chart1(prev, e_p, e_p, point.c, field, n)
            else:
                series = _vec_chart2(prev, e_p, e_p, field, n)
        local[idx] = series
        e_q = clamped[idx]
        for (i, j), vec in series.items():
            if i + j < e_q:
                rows.append(vec)
    return rows


def h0(D: DivisorClass, config: Configuration) -> int:
    """dim H^0 of the direct image on the plane of O(D)."""
    n = len(monomials(D.d))
    rows = condition_rows(D, config)
    return n - linalg.rank(rows, config.field)


def basis(D: DivisorClass, config: Configuration) -> List[HomogeneousForm]:
    """A basis of the linear system, as degree-d forms."""
    order = monomials(D.d)
    rows = condition_rows(D, config)
    field = config.field
    if rows:
        kernel = linalg.nullspace(rows, field)
    else:
        kernel = [[field.one() if i == t else field.zero()
                   for i in range(len(order))] for t in range(len(order))]
    out = []
    for vec in kernel:
        coeffs = {order[t]: v for t, v in enumerate(vec) if not v.is_zero()}
        out.append(HomogeneousForm(field, D.d, coeffs))
    return out


def same_span(forms_a: Sequence[HomogeneousForm],
              forms_b: Sequence[HomogeneousForm]) -> bool:
    """Spans are compared by ranks of stacked coefficient matrices."""
    if not forms_a and not forms_b:
        return True
    degree = (forms_a[0] if forms_a else forms_b[0]).degree
    field = (forms_a[0] if forms_a else forms_b[0]).field
    order = monomials(degree)
    rows_a = [f.coefficient_vector(order) for f in forms_a]
    rows_b = [f.coefficient_vector(order) for f in forms_b]
    ra = linalg.rank(rows_a, field)
    rb = linalg.rank(rows_b, field)
    rab = linalg.rank(rows_a + rows_b, field)
    return ra == rb == rab


