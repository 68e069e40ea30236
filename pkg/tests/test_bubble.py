from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_aut
from plane_cremona.bubble import (
    INF,
    BubblePoint,
    ConfigurationError,
    conic_marked_aut,
    conic_through,
    curve_under,
    localize,
    multiplicity,
    passes_through,
    proximate,
    proximate_by_transform,
    satellite,
    transform_point,
)
from plane_cremona.exact_algebra import ProjAut, ProjPoint, field
from plane_cremona.map_language import parse_form, parse_point

Q = field(())


def pt(text):
    return parse_point(text)


def form(text):
    return parse_form(text)


def same_curve(a, b):
    return a.normalized() == b.normalized()


# -- localisation and incidence

def test_localize_conic_through_tangent_point():
    loc = localize(form("x^2 + y*z"), pt("([0:0:1], 0)"))
    assert loc.vanishes() and loc.multiplicity == 1


def test_localize_line_at_its_point():
    assert localize(form("y"), pt("[1:0:0]")).vanishes()


def test_localize_misses_collinear_third_point():
    assert not localize(form("x^2 + y*z"), pt("([1:0:0], 0, 0)")).vanishes()


def test_passes_through():
    assert passes_through(form("z - 2y"), pt("([1:0:0], 2)"))
    assert not passes_through(form("z - 2y"), pt("([1:0:0], 3)"))
    assert not passes_through(form("x"), pt("[1:0:0]"))
    C = form("x*z - x*y - y*z")
    for text in ["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 1)", "([1:0:0], 1, 1)"]:
        assert passes_through(C, pt(text)), text


@pytest.mark.parametrize("curve, point, m", [
    ("x^2 + y*z", "[0:0:1]", 1),
    ("x*y", "[0:0:1]", 2),
    ("x", "[0:1:0]", 1),
    ("x", "[1:0:0]", 0),
    ("y^2*z - x^3", "[0:0:1]", 2),
    ("y^2*z - x^3", "([0:0:1], 0)", 1),
    ("x^3 + y^3 + x*y*z", "[0:0:1]", 2),
])
def test_multiplicity(curve, point, m):
    assert multiplicity(form(curve), pt(point)) == m


def test_infinity_direction():
    # INF at [1:0:0] is the direction of the line y = 0
    assert passes_through(form("y"), pt("([1:0:0], inf)"))
    assert not passes_through(form("z"), pt("([1:0:0], inf)"))
    assert passes_through(form("z"), pt("([1:0:0], 0)"))


# -- proximity

@pytest.mark.parametrize("p, q, prox, sat", [
    ("([1:0:0], 0)", "[1:0:0]", True, False),
    ("([1:0:0], 0, inf)", "[1:0:0]", True, True),
    ("([1:0:0], 0, 5)", "[1:0:0]", False, False),
    ("([1:0:0], 0, inf, 0)", "[1:0:0]", True, True),
    ("([1:0:0], 0, inf, 1)", "[1:0:0]", False, False),
    ("([1:0:0], 0, 5)", "([1:0:0], 0)", True, False),
    ("[0:1:0]", "[1:0:0]", False, False),
])
def test_proximity_examples(p, q, prox, sat):
    assert proximate(pt(p), pt(q)) is prox
    assert satellite(pt(p), pt(q)) is sat


TAIL = st.lists(st.one_of(st.just(INF), st.integers(-2, 2)), min_size=1, max_size=5)


@settings(max_examples=200, deadline=None)
@given(TAIL, st.integers(0, 4))
def test_proximate_agrees_with_transform(tail, cut):
    vals = tuple(INF if t is INF else Q(t) for t in tail)
    p = BubblePoint(ProjPoint.of([1, 2, 1]), vals)
    q = BubblePoint(p.base, vals[:min(cut, len(vals))])
    assert proximate(p, q) == proximate_by_transform(p, q)


# -- conics through five points

T_VALUES = [Fraction(2), Fraction(-3), Fraction(5, 7)]


def _points(texts, t):
    return [pt(s.replace("T", str(t))) for s in texts]


CONFIGS = {
    "four proper, one near": (
        ["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]", "([1:0:0], T)"],
        "x*z - T*x*y + (T - 1)*y*z"),
    "three proper, chain of two": (
        ["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 1)", "([1:0:0], 1, T)"],
        "x*z - x*y - T*y*z"),
    "three proper, two near distinct points": (
        ["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 1)", "([0:1:0], 1)"],
        "x*y - y*z - x*z"),
}

# Formulas as printed for the remaining configurations, and the formulas the
# chart conventions actually produce (same conic family, parameter changed).
PRINTED = {
    "two chains of lengths three and two": (
        ["[1:0:0]", "[0:1:0]", "([1:0:0], inf)", "([0:1:0], inf)", "([1:0:0], inf, T)"],
        "T*x*y - z^2", "x*y - T*z^2"),
    "one proper plus chain of four": (
        ["[1:0:0]", "[0:1:0]", "([1:0:0], inf)", "([1:0:0], inf, 1)", "([1:0:0], inf, 1, T)"],
        "x*y + T*y*z - z^2", "x*y - T*y*z - z^2"),
    "chain of five": (
        ["[1:0:0]", "([1:0:0], inf)", "([1:0:0], inf, 1)", "([1:0:0], inf, 1, 0)",
         "([1:0:0], inf, 1, 0, T)"],
        "x*y - z^2 + T*y^2", "x*y - T*y^2 - z^2"),
}


@pytest.mark.parametrize("name", CONFIGS)
@pytest.mark.parametrize("t", T_VALUES)
def test_conic_through_configurations(name, t):
    texts, expected = CONFIGS[name]
    C = conic_through(_points(texts, t))
    assert same_curve(C, form(expected.replace("T", f"({t})")))


@pytest.mark.parametrize("name", PRINTED)
@pytest.mark.parametrize("t", T_VALUES)
def test_conic_through_chain_configurations(name, t):
    texts, _, derived = PRINTED[name]
    pts = _points(texts, t)
    C = conic_through(pts)
    assert same_curve(C, form(derived.replace("T", f"({t})")))
    assert all(passes_through(C, p) for p in pts)


@pytest.mark.xfail(strict=True, reason="printed formulas use a different parametrisation "
                                       "of the last point than the chart conventions")
@pytest.mark.parametrize("name", PRINTED)
def test_conic_through_printed_formulas(name):
    texts, printed, _ = PRINTED[name]
    t = T_VALUES[0]
    assert same_curve(conic_through(_points(texts, t)), form(printed.replace("T", f"({t})")))


def test_printed_formulas_match_after_reparametrisation():
    # t -> 1/t for the first family, t -> -t for the other two
    for (name, (texts, printed, _)), sub in zip(PRINTED.items(), ["1/T", "-T", "-T"]):
        for t in T_VALUES:
            C = conic_through(_points(texts, t))
            want = printed.replace("T", "(" + sub.replace("T", f"({t})") + ")")
            assert same_curve(C, form(want)), name


@pytest.mark.parametrize("texts, reason", [
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 0)", "([1:0:0], 0, 0)"], "collinear"),
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:0]", "[1:1:1]"], "collinear"),
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 1)", "([1:0:0], 1, inf)"], "satellite"),
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "([1:0:0], 1)", "([1:0:0], 2)"], "first neighbourhood"),
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]", "([1:2:1], 1, 1)"], "without the point"),
    (["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]"], "exactly five"),
])
def test_conic_configuration_errors(texts, reason):
    with pytest.raises(ConfigurationError, match=reason):
        conic_through([pt(s) for s in texts])


# -- automorphisms between marked conics

E = [ProjPoint.of(c) for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1])]


def test_marked_aut_identity():
    C = form("x*z - y^2")
    marks = [E[0], E[2], E[3]]
    assert conic_marked_aut(C, marks, C, marks).is_identity()


def test_marked_aut_between_conics():
    C1, C2 = form("x^2 + y*z"), form("x*z - y^2")
    a = conic_marked_aut(C1, [], C2, [])
    assert same_curve(curve_under(C1, a), C2)


def test_marked_aut_swap():
    C = form("x*z - y^2")
    a = conic_marked_aut(C, [E[0]], C, [E[2]])
    assert a(E[0]) == E[2]
    assert same_curve(curve_under(C, a), C)
    assert conic_marked_aut(C, [E[0], E[2], E[3]], C, [E[2], E[0], E[3]]) == \
        ProjAut.of([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def test_marked_aut_random(rng):
    C1 = form("x*z - y^2")
    for _ in range(5):
        g = random_aut(rng)
        C2 = curve_under(C1, g)
        marks1 = [ProjPoint.of([1, 0, 0]), ProjPoint.of([1, 1, 1]), ProjPoint.of([1, 2, 4])]
        marks2 = [g(p) for p in marks1]
        a = conic_marked_aut(C1, marks1, C2, marks2)
        assert same_curve(curve_under(C1, a), C2)
        assert [a(p) for p in marks1] == marks2
        assert a == g


def test_marked_aut_rejects_bad_marks():
    C = form("x*z - y^2")
    with pytest.raises(ConfigurationError, match="not on the conic"):
        conic_marked_aut(C, [E[1]], C, [E[0]])
    with pytest.raises(ConfigurationError, match="not an irreducible conic"):
        conic_marked_aut(form("x*y"), [], C, [])


# -- automorphisms acting on bubble points

def test_transform_proper_point():
    A = ProjAut.of([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert transform_point(pt("[1:2:3]"), A).same(pt("[2:1:3]"))


def test_transform_preserves_incidence(rng):
    C = form("x*z - x*y - y*z")
    p = pt("([1:0:0], 1, 1)")
    for _ in range(5):
        g = random_aut(rng)
        assert passes_through(curve_under(C, g), transform_point(p, g))


def test_transform_composes(rng):
    points = [pt(s) for s in ["([1:0:0], 0, inf)", "([1:2:1], 3)", "([0:1:0], inf, 1, 0)",
                              "([1:1:0], -1, 2)"]]
    for p in points:
        A, B = random_aut(rng), random_aut(rng)
        left = transform_point(transform_point(p, A), B)
        assert left.same(transform_point(p, B @ A))
        assert transform_point(transform_point(p, A), A.inverse()).same(p)


def test_transform_preserves_proximity(rng):
    p, q = pt("([1:0:0], 0, inf)"), pt("[1:0:0]")
    for _ in range(3):
        g = random_aut(rng)
        assert satellite(transform_point(p, g), transform_point(q, g))
