import random
from fractions import Fraction

from folint.cones import (
    RationalCone, cone_equal, contains, dual, exists_negative_square, lorentz,
    rank_of_classes,
)

# Picard coordinates (L*, E_W*, E_1*, E_2*, E_3*) for the 4-point family
# configuration: strict exceptional classes plus one line class
V0_GENS = [
    (0, 1, 0, 0, 0),        # E~_W
    (0, 0, 1, -1, -1),      # E~_1
    (0, 0, 0, 1, -1),       # E~_2
    (0, 0, 0, 0, 1),        # E~_3
]
LINE_W12 = (1, -1, -1, -1, 0)

V1_DUAL_EXPECTED = sorted([
    (1, 0, 0, 0, 0),
    (1, -1, 0, 0, 0),
    (1, 0, -1, 0, 0),
    (2, 0, -1, -1, 0),
    (3, 0, -2, -1, -1),
])


def test_dual_of_family_cone_rays():
    v1 = RationalCone(V0_GENS + [LINE_W12])
    d = dual(v1)
    assert d.lineality == []
    assert d.extremal_rays == V1_DUAL_EXPECTED
    assert all(lorentz(r, r) >= 0 for r in d.extremal_rays)
    assert not exists_negative_square(RationalCone(d.extremal_rays))


def test_contains():
    cone = RationalCone(V0_GENS)
    for g in cone.generators:
        assert contains(cone, g)
    assert not contains(cone, tuple(-v for v in V0_GENS[3]))
    # nonnegative combinations stay inside
    rng = random.Random(5)
    for _ in range(20):
        combo = [0] * 5
        for g in cone.generators:
            k = rng.randint(0, 4)
            combo = [a + k * b for a, b in zip(combo, g)]
        if any(combo):
            assert contains(cone, combo)
    # anything with a positive line coordinate is outside V0
    assert not contains(cone, LINE_W12)


def test_exists_negative_square_basics():
    assert exists_negative_square(RationalCone([(0, 1, 0, 0, 0)]))
    assert exists_negative_square(RationalCone([(1, 1, 0), (-1, 1, 0)]))
    assert not exists_negative_square(RationalCone([(1, 0, 0), (1, 1, 0)]))
    # a single null line
    assert not exists_negative_square(RationalCone([(1, 1, 0), (-1, -1, 0)]))


def test_dual_certificate_tightness():
    cone = RationalCone(V0_GENS + [LINE_W12])
    d = dual(cone)
    for ray in d.extremal_rays:
        tight = [g for g in cone.generators if lorentz(ray, g) == 0]
        assert rank_of_classes(tight) >= cone.dim - 1


def _random_cone(rng, dim, count):
    gens = []
    while len(gens) < count:
        v = tuple(rng.randint(-3, 3) for _ in range(dim))
        if any(v):
            gens.append(v)
    return RationalCone(gens)


def test_dual_dual_identity_bulk():
    """Acceptance 7(b): dual of dual on >= 100 random cones, dim <= 8."""
    rng = random.Random(20240812)
    checked = 0
    while checked < 110:
        dim = rng.randint(2, 8)
        cone = _random_cone(rng, dim, rng.randint(1, dim + 2))
        dd = dual(dual(cone))
        assert cone_equal(cone, dd)
        checked += 1


def test_dual_dual_canonical_rays_lower_dimensional():
    # a 2-dimensional cone inside Q^4
    cone = RationalCone([(1, 1, 0, 0), (1, 0, 1, 0)])
    dd = dual(dual(cone))
    assert cone_equal(cone, dd)
    assert sorted(dd.extremal_rays) == sorted(cone.generators)


def test_negative_square_against_witness_search():
    """Acceptance 7(c): one-sided agreement with randomized witness search."""
    rng = random.Random(999)
    checked = 0
    while checked < 210:
        dim = rng.randint(2, 6)
        cone = _random_cone(rng, dim, rng.randint(1, dim + 1))
        found = None
        for _ in range(120):
            coeffs = [rng.randint(0, 5) for _ in cone.generators]
            x = [0] * dim
            for k, g in zip(coeffs, cone.generators):
                x = [a + k * b for a, b in zip(x, g)]
            if any(x) and lorentz(x, x) < 0:
                found = x
                break
        if found is not None:
            assert exists_negative_square(cone)
        checked += 1


def test_rank_of_classes():
    assert rank_of_classes([(1, 0, 0), (0, 0, 1)]) == 2
    assert rank_of_classes([(1, 2, 3), (2, 4, 6)]) == 1
    assert rank_of_classes([(0, 0), (0, 0)]) == 0


def test_dual_of_full_space_cone():
    # the dual of a spanning cone with interior is pointed
    cone = RationalCone([(1, 0), (0, 1), (-1, -1)])
    d = dual(cone)
    assert d.extremal_rays == []
    assert d.lineality == []


def test_primitive_normalization_and_dedup():
    cone = RationalCone([(2, 4), (1, 2), (3, 0)])
    assert cone.generators == [(1, 2), (1, 0)]
