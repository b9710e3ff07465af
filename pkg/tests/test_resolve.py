import pytest

from folint.cluster import dump_configuration, load_configuration
from folint.numfield import QQ, FieldExtensionNeeded, NumberField
from folint.polyforms import HomogeneousForm, ProjectiveOneForm, parse_form
from folint.resolve import (
    LocalFoliation, blow_up_local, build_configuration, is_simple,
    local_at_plane_point, singular_points,
)


def local(a_terms, b_terms, field=QQ):
    a = {k: field.element(v) for k, v in a_terms.items()}
    b = {k: field.element(v) for k, v in b_terms.items()}
    return LocalFoliation(field, a, b)


PENCIL = ProjectiveOneForm(HomogeneousForm.variable(QQ, 1),
                           -HomogeneousForm.variable(QQ, 0),
                           HomogeneousForm(QQ, 1, {}))


def test_is_simple_saddle():
    # dual vector field u d/du - v d/dv: ratio -1
    saddle = local({(0, 1): 1}, {(1, 0): 1})
    assert is_simple(saddle)


def test_is_simple_node_ratio_two():
    # dual vector field u d/du + 2 v d/dv: ratio 2 is a positive rational
    node = local({(0, 1): 2}, {(1, 0): -1})
    assert not is_simple(node)


def test_is_simple_saddle_node_and_nilpotent():
    saddle_node = local({(0, 1): 1}, {(0, 2): 1})   # eigenvalues 1, 0
    assert is_simple(saddle_node)
    nilpotent = local({(0, 2): 1}, {(2, 0): 1})
    assert not is_simple(nilpotent)


def test_is_simple_complex_ratio():
    # trace 1, det 1: c = -1, so r^2 + r + 1 has no rational root -> simple
    f = local({(1, 0): 1, (0, 1): 1}, {(0, 1): 1})
    assert is_simple(f)


def test_blow_up_radial_is_dicritical():
    radial = local({(0, 1): 1}, {(1, 0): -1})
    result = blow_up_local(radial, debug=True)
    assert result.dicritical
    assert result.chart1 == []
    assert not result.chart2_singular


def test_blow_up_saddle():
    saddle = local({(0, 1): 1}, {(1, 0): 1})
    result = blow_up_local(saddle, debug=True)
    assert not result.dicritical
    assert len(result.chart1) == 1
    c, child, simple = result.chart1[0]
    assert c.is_zero()
    assert simple
    assert result.chart2_singular
    assert is_simple(result.chart2)


def test_blow_up_cusp_first_step_non_dicritical():
    # omega for the cuspidal foliation d(y^2 - x^3) = -3x^2 dx + 2y dy
    cusp = local({(2, 0): -3}, {(0, 1): 2})
    result = blow_up_local(cusp, debug=True)
    assert not result.dicritical


def test_singular_points_pencil_of_lines():
    locus = singular_points(PENCIL)
    assert locus.complete
    assert len(locus.points) == 1
    x, y, z = locus.points[0]
    assert x.is_zero() and y.is_zero() and z == QQ.one()


def test_build_configuration_pencil_of_lines():
    config = build_configuration(PENCIL)
    assert config.size == 1
    assert config.points[0].dicritical
    assert config.points[0].origin == (QQ.zero(), QQ.zero(), QQ.one())


def test_escaped_dicritical_points_abort_with_certificate():
    # this pencil has base points over Q(sqrt 3); resolving over Q must stop
    # with the irreducible certificate rather than guessing
    f1 = parse_form("X*Z+3*Y*Z-Y^2")
    f2 = parse_form("Y*Z+3*X*Z-X^2")
    from folint.polyforms import one_form_from_pencil
    omega = one_form_from_pencil(f1, f2)
    with pytest.raises(FieldExtensionNeeded) as err:
        build_configuration(omega)
    assert err.value.certificate is not None


def test_escaped_simple_points_are_skipped():
    # family foliation at a = 5/9: the pair (1 : +-sqrt(14)/3 : 1) is
    # singular but simple; the resolution must certify that in the quotient
    # algebra and carry on over Q
    a = "5/9"
    A = parse_form("Z*(%s*X*Z-Y^2+Z^2)" % a)
    B = parse_form("Z*(X^2-Z^2)")
    C = parse_form("X*Y^2-%s*X^2*Z-X*Z^2-X^2*Y+Y*Z^2" % a)
    omega = ProjectiveOneForm(A, B, C)
    locus = singular_points(omega)
    assert not locus.complete
    config = build_configuration(omega)
    assert config.size == 4
    assert sum(1 for p in config.points if p.dicritical) == 2


def test_round_trip_of_emitted_configuration():
    config = build_configuration(PENCIL)
    text = dump_configuration(config)
    again = load_configuration(text)
    assert again.proximity_matrix() == config.proximity_matrix()


def test_depth_cap_is_an_error():
    from folint.resolve import DepthCapExceeded
    omega = ProjectiveOneForm(
        parse_form("2*Y*Z^5"), parse_form("-7*Y^5*Z-3*X*Z^5+Y*Z^5"),
        parse_form("7*Y^6+X*Y*Z^4-Y^2*Z^4"))
    with pytest.raises(DepthCapExceeded):
        build_configuration(omega, depth_cap=2)
