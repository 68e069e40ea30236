import random

import pytest

from conftest import random_aut
from plane_cremona.bubble import BubblePoint
from plane_cremona.catalog import NORMAL_FORMS, normal_form_at, normal_form_map
from plane_cremona.classify import classify
from plane_cremona.cremona import (
    RHO,
    SIGMA,
    TAU,
    CremonaMap,
    NotBirational,
    apply_aut,
    base_point_multiplicity,
    compose,
    compose_all,
    degree_drop,
    identity_map,
    inverse_from_decomposition,
    proper_base_points,
    resolve_base_points,
    solve_post,
)
from plane_cremona.exact_algebra import AlgebraError, ProjAut, ProjPoint, UnsupportedField
from plane_cremona.lengths import instantiate_factors, mixed_factors, sample_values, sigma_factors
from plane_cremona.map_language import parse_decomposition, parse_map, parse_point


def entries(tree):
    return [(str(p), m) for p, m in tree.entries]


@pytest.mark.parametrize("q", [SIGMA, RHO, TAU], ids=["sigma", "rho", "tau"])
def test_quadratic_involutions(q):
    assert compose(q, q).same(identity_map())


def test_compose_cancels_common_factor():
    m = compose(SIGMA, SIGMA)
    assert m.degree == 1
    assert [str(f) for f in m.components] == ["x", "y", "z"]


def test_compose_with_automorphisms(rng):
    for _ in range(5):
        A, B = random_aut(rng), random_aut(rng)
        lhs = compose(CremonaMap.from_aut(A), CremonaMap.from_aut(B))
        assert lhs.same(CremonaMap.from_aut(A @ B))


def test_compose_is_associative(rng):
    for _ in range(3):
        A = CremonaMap.from_aut(random_aut(rng))
        m = compose_all([SIGMA, A, RHO, random_aut(rng), TAU])
        assert compose(compose(SIGMA, A), RHO).same(compose_all([SIGMA, A, RHO]))
        assert m.degree <= 8


def test_evaluation():
    assert SIGMA(ProjPoint.of([1, 2, 3])) == ProjPoint.of([6, 3, 2])


def test_from_polys_divides_common_factor():
    m = parse_map("[x^2*y : x*y*z : x*z^2]")
    assert m.degree == 2 and m.same(parse_map("[x*y : y*z : z^2]"))


def test_resolve_first_normal_form():
    tree = resolve_base_points(parse_map("[x*z^2 + y^3 : y*z^2 : z^3]"))
    assert entries(tree) == [
        ("[1:0:0]", 2), ("([1:0:0], 0)", 1), ("([1:0:0], 0, inf)", 1),
        ("([1:0:0], 0, inf, -1)", 1), ("([1:0:0], 0, inf, -1, 0)", 1)]
    assert tree.satellites == ((2, 0),)
    assert sorted(tree.arrows) == [(1, 0), (2, 0), (2, 1), (3, 2), (4, 3)]
    assert tree.noether_ok() and tree.proximity_ok()


def test_resolve_sigma():
    tree = resolve_base_points(SIGMA)
    assert sorted(entries(tree)) == [("[0:0:1]", 1), ("[0:1:0]", 1), ("[1:0:0]", 1)]
    assert tree.arrows == ()


def test_resolve_tau_is_a_chain():
    tree = resolve_base_points(TAU)
    assert [p.order for p in tree.points] == [0, 1, 2]
    assert len(tree.arrows) == 2 and tree.satellites == ()


def test_resolve_two_parameter_normal_form():
    tree = resolve_base_points(normal_form_at(31, {"a": 2, "b": 3}))
    assert tree.mults[0] == 2 and str(tree.points[0]) == "[0:0:1]"
    assert sorted(str(p) for p in tree.points[1:]) == ["[0:1:0]", "[1:0:0]", "[1:1:1]", "[2:3:1]"]
    assert tree.line is None


def test_resolve_symbolic_parameter():
    tree = resolve_base_points(normal_form_map(28))
    assert tree.noether_ok()
    assert tree.line is not None


@pytest.mark.parametrize("n", sorted(NORMAL_FORMS))
def test_noether_and_proximity_for_catalog(n):
    tree = resolve_base_points(normal_form_at(n, sample_values(n)))
    assert sum(m * m for m in tree.mults) == 8
    assert sum(tree.mults) == 6
    assert tree.proximity_ok()


def test_resolution_errors():
    with pytest.raises(NotBirational, match="Noether"):
        resolve_base_points(parse_map("[x^2 : y^2 : z^2]"))
    with pytest.raises(UnsupportedField):
        resolve_base_points(parse_map("[x^2 + y^2 : x*z : y*z]"))
    with pytest.raises(AlgebraError):
        resolve_base_points(identity_map())


def test_base_point_multiplicity():
    phi = parse_map("[x*z^2 + y^3 : y*z^2 : z^3]")
    assert base_point_multiplicity(phi, parse_point("[1:0:0]")) == 2
    assert base_point_multiplicity(phi, parse_point("([1:0:0], 0, inf)")) == 1
    assert base_point_multiplicity(phi, parse_point("([1:0:0], 1)")) == 0
    assert base_point_multiplicity(phi, parse_point("[0:1:0]")) == 0


def test_proper_base_points_after_conjugation(rng):
    for _ in range(3):
        A = random_aut(rng)
        m = apply_aut(SIGMA, A, ProjAut.identity())
        want = sorted(str(A.inverse()(p)) for p in proper_base_points(SIGMA))
        assert sorted(str(p) for p in proper_base_points(m)) == want


@pytest.mark.parametrize("d, m1, m2, m3, expected", [
    (3, 2, 1, 1, 2), (3, 2, 0, 0, 4), (3, 0, 0, 0, 6), (2, 1, 1, 1, 1), (1, 0, 0, 0, 2)])
def test_degree_drop(d, m1, m2, m3, expected):
    assert degree_drop(d, m1, m2, m3) == expected


def test_degree_drop_matches_composition():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.choice(sorted(NORMAL_FORMS))
        phi = normal_form_at(n, sample_values(n))
        pts = [ProjPoint.of([rng.randint(-3, 3) for _ in range(3)]) for _ in range(3)]
        try:
            A = ProjAut.of([[pts[j].coords[i] for j in range(3)] for i in range(3)])
        except AlgebraError:
            continue
        q = compose_all([A, SIGMA, A.inverse()])
        mults = [base_point_multiplicity(phi, BubblePoint(p)) for p in pts]
        assert compose(phi, q).degree == degree_drop(3, *mults)


def test_apply_aut_identity():
    I = ProjAut.identity()
    assert apply_aut(SIGMA, I, I).same(SIGMA)


def test_apply_aut_gives_other_representative():
    psi = apply_aut(normal_form_map(24), parse_decomposition("[x : x+y : x+y+z]")[0],
                    ProjAut.identity())
    assert psi.degree == 3 and classify(psi).type == 24


def test_solve_post(rng):
    B = random_aut(rng)
    phi = normal_form_map(10)
    assert solve_post(compose(CremonaMap.from_aut(B), phi), phi) == B
    assert solve_post(normal_form_map(10), normal_form_map(11)) is None


def test_inverse_of_sigma():
    assert inverse_from_decomposition([SIGMA]).same(SIGMA)


@pytest.mark.parametrize("n, factors, expected", [
    (17, "mixed", 7), (2, "sigma", 8), (8, "sigma", 2), (3, "sigma", 5), (5, "sigma", 3),
    (14, "sigma", 15), (15, "sigma", 14), (7, "sigma", 17)])
def test_inverse_types(n, factors, expected):
    fs = mixed_factors(n) if factors == "mixed" else sigma_factors(n)
    inv = inverse_from_decomposition(instantiate_factors(fs, sample_values(n)))
    assert classify(inv).type == expected
