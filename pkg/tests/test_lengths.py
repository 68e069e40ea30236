import pytest

from conftest import height_samples

from plane_cremona.bubble import BubblePoint
from plane_cremona.catalog import CLASSICAL, LENGTH_EQUALS_BOUND, NORMAL_FORMS, TAU as TAU_TEXT, normal_form_at, normal_form_map
from plane_cremona.cremona import SIGMA, TAU, compose, resolve_base_points
from plane_cremona.exact_algebra import ProjPoint
from plane_cremona.lengths import (
    height_at,
    heights,
    is_de_jonquieres,
    length_facts,
    mixed_factors,
    oq_lower_bound,
    ordinary_involution,
    quadratic_kind,
    sample_values,
    sigma_factors,
    transport_point,
    verify_decomposition,
)
from plane_cremona.map_language import parse_decomposition, parse_map, parse_point

PHI_1 = parse_map("[x*z^2 + y^3 : y*z^2 : z^3]")
E = [ProjPoint.of(c) for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]


def phi(n):
    return normal_form_at(n, sample_values(n))


def test_heights_of_first_normal_form():
    h = heights(PHI_1)
    assert h.heights == (1, 2, 3, 4, 5) and h.max_height == 5
    assert h.loads == {0: 5}


def test_heights_of_sigma():
    assert heights(SIGMA).heights == (1, 1, 1)


def test_height_of_type_8():
    assert heights(phi(8)).max_height == 4


def test_height_at():
    assert height_at(PHI_1, parse_point("([1:0:0], 0, inf)")) == 3
    assert height_at(PHI_1, parse_point("[0:1:0]")) == 0


@pytest.mark.parametrize("m, bound", [(PHI_1, 5), (phi(21), 2), (TAU, 3), (SIGMA, 1)])
def test_lower_bound_examples(m, bound):
    assert oq_lower_bound(m) == bound


def test_de_jonquieres():
    assert is_de_jonquieres(PHI_1) and is_de_jonquieres(SIGMA)
    # the triangular map (x, y) -> (x, y + x^4) has a triple point at [0:1:0]
    m = parse_map("[x*z^3 : y*z^3 + x^4 : z^4]")
    assert m.degree == 4 and is_de_jonquieres(m)
    assert oq_lower_bound(m) >= 3


@pytest.mark.parametrize("n", sorted(NORMAL_FORMS))
def test_lower_bound_against_length(n):
    bound = oq_lower_bound(phi(n))
    assert bound <= NORMAL_FORMS[n].length
    if n in LENGTH_EQUALS_BOUND:
        assert bound == NORMAL_FORMS[n].length


def test_quadratic_kinds():
    assert quadratic_kind(SIGMA) == "ordinary"
    assert quadratic_kind(parse_map("[x*y : z^2 : y*z]")) == "second"
    assert quadratic_kind(TAU) == "third"


def test_verify_row_21():
    rep = verify_decomposition(normal_form_map(21), sigma_factors(21))
    assert rep["equal"] and rep["counts"]["sigma"] == 2
    assert rep["degree_checks_ok"]


def test_verify_tau_factorization():
    rep = verify_decomposition(parse_map(TAU_TEXT), parse_decomposition(CLASSICAL["tau"]))
    assert rep["equal"] and rep["counts"]["sigma"] == 4
    assert rep["intermediate_degrees"][-1] == 2


def test_verify_type_7_with_two_rho():
    rep = verify_decomposition(normal_form_map(7), parse_decomposition(CLASSICAL[7]))
    assert rep["equal"] and rep["counts"] == {"sigma": 0, "rho": 2, "tau": 0}


def test_verify_reports_mismatch():
    rep = verify_decomposition(normal_form_map(7), parse_decomposition("sigma o [y:x:z] o sigma"))
    assert rep["equal"] is False
    assert verify_decomposition(None, [SIGMA])["equal"] is None


@pytest.mark.parametrize("n, q, oq", [(1, 3, 6), (17, 2, 4), (31, 2, 2), (8, 2, 5)])
def test_length_facts(n, q, oq):
    f = length_facts(n)
    assert (f["q"], f["oq"]) == (q, oq)
    assert f["consistent"]
    assert f["q_witness"]["quadratic_count"] == q


def test_length_facts_bounds_type_1():
    f = length_facts(1)
    assert f["lower_bound"] == 5 and f["upper_bound"] == 6


def test_mixed_factor_counts():
    assert verify_decomposition(None, mixed_factors(1))["quadratic_count"] == 3
    assert verify_decomposition(None, mixed_factors(17))["quadratic_count"] == 2


# -- the point bijection of an ordinary quadratic involution

def test_ordinary_involution():
    rho, A = ordinary_involution(E)
    assert rho.same(SIGMA) and A.is_identity()
    P = [ProjPoint.of(c) for c in ([1, 2, 1], [0, 1, 3], [2, -1, 1])]
    rho, _ = ordinary_involution(P)
    assert compose(rho, rho).degree == 1
    assert sorted(map(str, resolve_base_points(rho).points)) == sorted(str(BubblePoint(p)) for p in P)


@pytest.mark.parametrize("src, dst", [
    ("[0:0:1]", "[0:0:1]"),
    ("[2:3:5]", "[15:10:6]"),
    ("[1:2:0]", "([0:0:1], 1/2)"),
    ("[0:1:5]", "([1:0:0], 1/5)"),
    ("([0:0:1], 2)", "[2:1:0]"),
    ("([0:0:1], inf)", "([1:0:0], 0)"),
    ("([1:2:0], 1)", "([0:0:1], 1/2, 1/2)"),
])
def test_transport_examples(src, dst):
    assert transport_point(parse_point(src), E).same(parse_point(dst))


def test_transport_is_involution():
    P = [ProjPoint.of(c) for c in ([1, 2, 1], [0, 1, 3], [2, -1, 1])]
    for text in ["[1:1:1]", "[3:4:5]", "([1:2:1], 3)", "([1:1:1], 2, 0)", "[1:3:2]"]:
        p = parse_point(text)
        assert transport_point(transport_point(p, P), P).same(p)


def test_transport_rejects_collinear_points():
    with pytest.raises(ValueError):
        transport_point(parse_point("[1:1:1]"), [E[0], E[1], ProjPoint.of([1, 1, 0])])


def test_height_changes_by_at_most_one():
    samples, _ = height_samples(5, 15)
    assert all(abs(a - b) <= 1 for a, b in samples)
