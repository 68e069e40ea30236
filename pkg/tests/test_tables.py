import pytest

from plane_cremona.catalog import INVERSE, NORMAL_FORMS
from plane_cremona.tables import SECTIONS, check_classical, check_orbit_tables, verify_tables


@pytest.fixture(scope="module")
def full():
    return verify_tables()


def test_plain_graph_section(full):
    s = full["0"]
    assert s["ok"] and s["count"] == 21
    assert s["histogram"] == {"0": 1, "1": 2, "2": 5, "3": 7, "4": 5, "5": 1}


def test_enriched_graph_section(full):
    s = full["2"]
    assert s["ok"] and s["count"] == 31 and s["with_line"] == 10


def test_normal_form_rows(full):
    rows = full["1"]["rows"]
    assert [r["type"] for r in rows] == sorted(NORMAL_FORMS)
    assert all(r["ok"] for r in rows)


def test_inverse_column(full):
    inv = full["1"]["inverse"]
    assert len(inv) == 31 and all(r["ok"] for r in inv)
    got = {r["type"]: r["classified_as"] for r in inv}
    for a, b in [(2, 8), (3, 5), (17, 7), (14, 15)]:
        assert got[a] == b and got[b] == a
    assert got == INVERSE


def test_sigma_factorizations(full):
    s = full["3"]
    assert s["ok"] and s["failing"] == []
    for r in s["rows"]:
        assert r["sigma_count"] == r["oq"] and r["all_ordinary"] and r["degree_checks_ok"]


def test_mixed_factorizations(full):
    s = full["4"]
    assert s["ok"]
    assert {c["target"]: c["equal"] for c in s["classical"]} == {"rho": True, "tau": True,
                                                                "type 7": True}


def test_only_known_orbit_row_is_flagged(full):
    orbit = full["1"]["orbit_automorphisms"]
    assert orbit["failing"] == [(28, "[y:y-x:z]")]
    bad = next(r for r in orbit["rows"] if not r["ok"])
    # the stated image is gamma/(gamma-1); the map actually realises (gamma-1)/gamma
    assert bad["stated_value"] == "3/2" and bad["found"] == "2/3"
    assert not full["1"]["ok"] and not full["ok"]


def test_type_31_orbit_rows():
    rows = [r for r in check_orbit_tables()["rows"] if r["type"] == 31]
    assert len(rows) == 24 and all(r["ok"] for r in rows)


def test_classical_alone():
    assert all(c["ok"] for c in check_classical())


def test_single_section_selection():
    out = verify_tables(0)
    assert set(out) == {"0", "ok"} and out["ok"]
    assert set(SECTIONS) == {0, 1, 2, 3, 4}
