import random
from fractions import Fraction

import pytest

from folint import linalg
from folint.cluster import Configuration, InfinitelyNearPoint, load_configuration
from folint.linsys import (
    basis, condition_rows, effective_multiplicities, h0, same_span,
    strict_class, total_valuations,
)
from folint.numfield import QQ, NumberField
from folint.polyforms import HomogeneousForm, monomials, parse_form

from test_cluster import fig1_config, fig2_config, pt


# ---------------------------------------------------------------------------
# independent Taylor oracle for configurations of plane points
# ---------------------------------------------------------------------------

def taylor_h0(D, config):
    """Brute-force oracle: impose vanishing of all dehomogenized partial
    derivatives of order < e_q at each plane point, by direct symbolic
    differentiation of every monomial."""
    field = config.field
    order = monomials(D.d)
    rows = []
    for idx, point in enumerate(config.points):
        e_q = max(D.e[idx], 0)
        if e_q == 0:
            continue
        origin = point.origin
        pivot = next(i for i, v in enumerate(origin) if not v.is_zero())
        others = [i for i in range(3) if i != pivot]
        affine = [origin[i] / origin[pivot] for i in others]
        for a in range(e_q):
            for b in range(e_q - a):
                row = []
                for (i, j, k) in order:
                    expo = (i, j, k)
                    da, db = expo[others[0]], expo[others[1]]
                    if da < a or db < b:
                        row.append(field.zero())
                        continue
                    scale = 1
                    for step in range(a):
                        scale *= da - step
                    for step in range(b):
                        scale *= db - step
                    val = field.element(scale) * affine[0] ** (da - a) \
                        * affine[1] ** (db - b)
                    row.append(val)
                rows.append(row)
    return len(order) - linalg.rank(rows, field)


def plane_points_config(coords, field=QQ):
    points = [InfinitelyNearPoint("p%d" % i, origin=c, dicritical=True)
              for i, c in enumerate(coords)]
    return Configuration(points, field)


def test_h0_no_conditions():
    config = plane_points_config([(0, 0, 1)])
    for d in range(5):
        D = config.divisor(d, [0])
        assert h0(D, config) == (d + 1) * (d + 2) // 2


def test_h0_single_point_multiplicities():
    config = plane_points_config([(0, 0, 1)])
    assert h0(config.divisor(1, [1]), config) == 2
    assert h0(config.divisor(2, [2]), config) == 3
    assert h0(config.divisor(3, [-2]), config) == 10  # clamped to zero


def test_h0_matches_taylor_oracle_bulk():
    """Acceptance 7(a): >= 200 random ordinary-point systems, d <= 6."""
    rng = random.Random(20240813)
    candidates = [(x, y, 1) for x in range(-2, 3) for y in range(-2, 3)]
    checked = 0
    while checked < 205:
        d = rng.randint(1, 6)
        npts = rng.randint(1, 6)
        coords = rng.sample(candidates, npts)
        config = plane_points_config(coords)
        e = [rng.randint(-1, min(d, 3)) for _ in range(npts)]
        D = config.divisor(d, e)
        assert h0(D, config) == taylor_h0(D, config)
        checked += 1


def test_h0_monotone_in_multiplicities():
    rng = random.Random(7)
    coords = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    config = plane_points_config(coords)
    for _ in range(40):
        e = [rng.randint(0, 2) for _ in range(4)]
        D = config.divisor(3, e)
        i = rng.randrange(4)
        bigger = list(e)
        bigger[i] += 1
        assert h0(config.divisor(3, bigger), config) <= h0(D, config)


def test_effective_multiplicities_smooth_line():
    config = plane_points_config([(0, 0, 1)])
    X = parse_form("X")
    assert effective_multiplicities(X, config) == [1]


def test_effective_multiplicities_cusp():
    # Y^2 Z - X^3 at (0:0:1): blow up once; in the x-direction chart the
    # strict transform is y^2 - x, multiplicity 1 at the origin (c = 0)
    points = [pt("q1", origin=(0, 0, 1)),
              pt("q2", parent="q1", chart=1, c=QQ.element(0), dicritical=True)]
    config = Configuration(points, QQ)
    cusp = parse_form("Y^2*Z-X^3")
    assert effective_multiplicities(cusp, config) == [2, 1]


def test_effective_multiplicities_additive():
    config = fig1_config()
    f = parse_form("X-Z")
    g = parse_form("X*Y+Y^2-X*Z")
    prod = f * g
    mf = effective_multiplicities(f, config)
    mg = effective_multiplicities(g, config)
    mp = effective_multiplicities(prod, config)
    assert mp == [a + b for a, b in zip(mf, mg)]
    assert strict_class(prod, config) == \
        strict_class(f, config) + strict_class(g, config)


def test_fig2_line_classes():
    """The strict transforms of Y = 0 and Z = 0 on the fig2 tree."""
    config = fig2_config()
    # fig2's abstract chart data was chosen to match the true resolution:
    # Y = 0 passes q1 and q4; Z = 0 passes q4 and q5
    T = config.divisor(10, [2, 1, 1, 8, 2, 2, 2, 2, 2, 2, 2, 1, 1])
    y_class = config.divisor(1, [1, 0, 0, 1] + [0] * 9)
    z_class = config.divisor(1, [0, 0, 0, 1, 1] + [0] * 8)
    assert T.intersect(y_class) == 0
    assert T.intersect(z_class) == 0


def test_membership_reverification():
    # every basis element's total transform dominates the clamped system
    config = fig1_config()
    D = config.divisor(2, [1, 1, 1, 0, 0, 0, -1, 0, 0, 0])
    clamped = [max(v, 0) for v in D.e]
    for f in basis(D, config):
        mults = effective_multiplicities(f, config)
        vf = total_valuations(mults, config)
        ve = total_valuations(clamped, config)
        assert all(a >= b for a, b in zip(vf, ve))


def test_same_span():
    f1 = parse_form("X^2+Y*Z")
    f2 = parse_form("X*Y")
    g1 = f1 + f2
    g2 = f1 - f2
    assert same_span([f1, f2], [g1, g2])
    assert not same_span([f1], [f2])


def test_basis_dimension_agrees():
    config = fig1_config()
    D = config.divisor(4, [2, 2, 1, 1, 1, 1, 1, 1, 1, 1])
    forms = basis(D, config)
    assert len(forms) == h0(D, config)
    for f in forms:
        assert f.degree == 4
