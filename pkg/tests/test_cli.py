import io
import json
import subprocess
import sys

import pytest

from plane_cremona.cli import run
from plane_cremona.tables import WORKERS_ENV


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_classify():
    d = doc("classify", "[x^3:y^2*z:x*y*z]")
    assert d["type"] == 10 and d["degree"] == 3 and d["params"] == {}
    assert d["witness"]["pre"] == "[x : y : z]"


def test_classify_with_parameter_binding():
    d = doc("classify", "[γ*x^2*y : γ*x*y^2 : (x+y)*(x+γ*y)*z]", "--param", "γ=5")
    assert d["type"] == 27 and d["params"] == {"γ": "5"}
    d = doc("--param", "gamma=5", "classify", "[γ*x^2*y : γ*x*y^2 : (x+y)*(x+γ*y)*z]")
    assert d["params"] == {"γ": "5"}


def test_classify_decomposition_and_quadratic():
    assert doc("classify", "sigma")["type"] == "sigma"
    assert doc("classify", "[y:x:-z] o tau o sigma")["type"] == 17


def test_compose():
    d = doc("compose", "sigma", "sigma")
    assert d == {"map": "[x : y : z]", "degree": 1}
    assert doc("compose", "[y*z:x*z:x*y]", "[x+y:y:z]")["degree"] == 2


def test_base_points():
    d = doc("base-points", "[x*z^2+y^3:y*z^2:z^3]")
    assert [e["mult"] for e in d["entries"]] == [2, 1, 1, 1, 1]
    assert d["noether"] and d["proximity"]
    assert d["entries"][2]["satellite_of"] == [0]


def test_graph():
    d = doc("graph", "[x^3:y^2*z:x*y*z]")
    assert d["row"] is not None and len(d["graph"]["weights"]) == 5
    d = doc("graph", "[x^3:y^2*z:x*y*z]", "--enriched")
    assert d["row"] == 10
    code, out, _ = call("graph", "[x^3:y^2*z:x*y*z]", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_enumerate():
    d = doc("enumerate")
    assert d["count"] == 21 and sorted(g["row"] for g in d["graphs"]) == list(range(1, 22))
    d = doc("enumerate", "--enriched")
    assert d["count"] == 31 and sorted(g["row"] for g in d["graphs"]) == list(range(1, 32))


def test_equivalent_true():
    a = "[5*x^2*y : 5*x*y^2 : (x+y)*(x+5*y)*z]"
    b = "[x^2*y/5 : x*y^2/5 : (x+y)*(x+y/5)*z]"
    d = doc("equivalent", a, b)
    assert d["equivalent"] is True and d["types"] == [27, 27]
    assert set(d["witness"]) == {"pre", "post", "statement"}


def test_equivalent_false_exit_code():
    code, out, _ = call("equivalent", "[x^3:y^2*z:x*y*z]", "[x*z^2+y^3:y*z^2:z^3]")
    assert code == 1 and json.loads(out)["equivalent"] is False


def test_orbit():
    d = doc("orbit", "28", "γ=3")
    assert d["size"] == 6 and d["canonical"] == {"γ": "-2"}
    assert doc("orbit", "31", "a=2", "b=3")["size"] == 24


def test_lengths():
    d = doc("lengths", "1")
    assert d["q"] == 3 and d["oq"] == 6 and d["lower_bound"] == 5
    d = doc("lengths", "[x*z^2+y^3:y*z^2:z^3]")
    assert d["type"] == 1 and d["oq_lower_bound"] == 5


def test_verify_tables_single_section():
    d = doc("verify-tables", "--table", "3")
    assert d["ok"] and d["3"]["failing"] == []


def test_pretty_output():
    code, out, _ = call("orbit", "27", "γ=5", "--pretty")
    assert code == 0 and out.splitlines()[0] == "type: 27"


@pytest.mark.parametrize("argv, code", [
    (["classify", "[x^3 : y^2*z"], 2),
    (["classify", "[x^4:y^4:z^4]"], 3),
    (["classify", "[x^2+y^2:x*z:y*z]"], 3),
    (["classify", "[x^2:y^2:z^2]"], 2),
    (["orbit", "5"], 2),
    (["orbit", "28", "γ=1"], 2),
    (["orbit", "40", "γ=3"], 2),
    (["orbit", "28"], 2),
    (["lengths", "0"], 2),
    (["--param", "γ", "classify", "sigma"], 2),
    (["frobnicate"], 2),
    (["base-points", "[x:y:z]"], 2),
])
def test_exit_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    assert err


def test_parse_error_reports_position():
    _, _, err = call("classify", "[x : y : z +]")
    assert "line 1, column 13" in err


def test_output_is_deterministic():
    first = call("classify", "[x*z^2+y^3:y*z^2:z^3]")
    assert all(call("classify", "[x*z^2+y^3:y*z^2:z^3]") == first for _ in range(2))


def test_workers_do_not_change_output(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "1")
    serial = call("verify-tables", "--table", "4")
    monkeypatch.setenv(WORKERS_ENV, "2")
    assert call("verify-tables", "--table", "4") == serial


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "plane_cremona", "classify", "[y*z:x*z:x*y]"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0 and json.loads(res.stdout)["type"] == "sigma"
