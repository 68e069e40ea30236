"""Command-line front end.  Every verb prints one JSON document (or a text
summary with --pretty).

Exit codes: 0 success, 1 negative verdict or failed check, 2 bad input,
3 unsupported field or case.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Optional, Sequence

from .exact_algebra import AlgebraError, UnsupportedField, format_scalar
from .bubble import ArcError, ConfigurationError
from .catalog import NORMAL_FORMS, PARAMETRIC
from .classify import (
    ClassificationError,
    UnsupportedCase,
    canonical_params,
    classify,
    equivalent,
    param_orbit,
    report,
)
from .cremona import CremonaMap, NotBirational, compose_all, instantiate_polys, resolve_base_points
from .map_language import ParseError, _Parser, parse_decomposition, parse_triple

OK, NEGATIVE, BAD_INPUT, UNSUPPORTED = 0, 1, 2, 3


QUADRATIC_WORDS = {"sigma", "rho", "tau", "σ", "ρ", "τ"}


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- argument helpers

def parse_bindings(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise InputError(f"parameter binding {item!r} is not of the form name=value")
        name = {"gamma": "γ"}.get(name, name)
        p = _Parser(value)
        if p.ctx:
            raise InputError(f"value of {name} must be a number, got {value!r}")
        v = p.scalar_expr()
        p.finish()
        out[name] = v
    return out


def read_map(text: str, values: dict) -> CremonaMap:
    """A map written as a triple or as a product of factors."""
    t = text.strip()
    if t.count("[") > 1 or "∘" in t or " o " in t or t in QUADRATIC_WORDS:
        m = compose_all(parse_decomposition(t))
        return m.instantiate(values) if values else m
    parts = parse_triple(text)
    if values:
        return instantiate_polys(parts, values)
    return CremonaMap.from_polys(parts)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _pretty(x, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(x, dict):
        lines = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return lines
    if isinstance(x, list):
        lines = []
        for v in x:
            if isinstance(v, (dict, list)):
                sub = _pretty(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {v}")
        return lines
    return [f"{pad}{x}"]


def emit(doc, pretty: bool, out=None) -> None:
    out = out or sys.stdout
    doc = _jsonable(doc)
    if pretty:
        out.write("\n".join(_pretty(doc)) + "\n")
    else:
        out.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")


# ---------------------------------------------------------------- verbs

def cmd_classify(a, values):
    m = read_map(a.map, values)
    return report(m), OK


def cmd_compose(a, values):
    maps = [read_map(t, values) for t in a.maps]
    m = compose_all(maps)
    return {"map": str(m), "degree": m.degree}, OK


def cmd_base_points(a, values):
    m = read_map(a.map, values)
    if m.degree < 2:
        raise InputError("a linear map has no base points")
    return resolve_base_points(m).to_json(), OK


def cmd_graph(a, values):
    from .proximity import enriched_graph_of, graph_of, to_dot
    from .tables import catalog_graph, plain_graph, PLAIN_GRAPHS
    from .proximity import isomorphic
    m = read_map(a.map, values)
    if m.degree < 2:
        raise InputError("a linear map has no base points")
    tree = resolve_base_points(m)
    g = enriched_graph_of(tree) if a.enriched else graph_of(tree)
    if a.dot:
        return to_dot(g, labels=[str(p) for p in tree.points]), OK
    row = None
    if m.degree == 3:
        rows = ({n: catalog_graph(n) for n in NORMAL_FORMS} if a.enriched
                else {k: plain_graph(k) for k in PLAIN_GRAPHS})
        row = next((k for k, h in rows.items() if isomorphic(g, h)), None)
    return {"graph": g.to_json(), "row": row, "points": [str(p) for p in tree.points]}, OK


def cmd_enumerate(a, values):
    from .tables import enriched_graph_rows, plain_graph_rows
    rows = enriched_graph_rows() if a.enriched else plain_graph_rows()
    graphs = [{"row": k, **g.to_json()} for k, g in rows]
    return {"count": len(graphs), "graphs": graphs}, OK


def cmd_equivalent(a, values):
    m1, m2 = read_map(a.first, values), read_map(a.second, values)
    e = equivalent(m1, m2)
    doc = {"equivalent": e.equivalent, "reason": e.reason,
           "types": [e.first.type, e.second.type],
           "params": [e.first.param_text(), e.second.param_text()]}
    if e.equivalent:
        doc["witness"] = {"pre": str(e.pre), "post": str(e.post),
                          "statement": "post o first o pre = second"}
    return doc, OK if e.equivalent else NEGATIVE


def cmd_orbit(a, values):
    n = _type_arg(a.type)
    if n not in PARAMETRIC:
        raise InputError(f"type {n} has no parameters")
    values = {**values, **parse_bindings(a.params)}
    names = NORMAL_FORMS[n].params
    missing = [k for k in names if k not in values]
    if missing:
        raise InputError(f"missing values for {', '.join(missing)}")
    try:
        orbit = param_orbit(n, {k: values[k] for k in names})
    except ClassificationError as e:
        raise InputError(str(e)) from e
    canon = canonical_params(n, {k: values[k] for k in names})
    fmt = lambda d: {k: format_scalar(v) for k, v in d.items()}
    return {"type": n, "size": len(orbit), "orbit": [fmt(d) for d in orbit],
            "canonical": fmt(canon)}, OK


def cmd_verify_tables(a, values):
    from .tables import verify_tables
    doc = verify_tables(a.table)
    return doc, OK if doc["ok"] else NEGATIVE


def cmd_lengths(a, values):
    from .lengths import heights, length_facts, oq_lower_bound
    text = a.target.strip()
    if text.isdigit():
        facts = length_facts(_type_arg(text))
        return facts, OK if facts["consistent"] else NEGATIVE
    m = read_map(text, values)
    doc = {"degree": m.degree}
    if m.degree >= 2:
        doc["heights"] = heights(m).to_json()
        doc["oq_lower_bound"] = oq_lower_bound(m)
    if m.degree == 3:
        c = classify(m)
        doc["type"] = c.type
        doc["facts"] = length_facts(c.type)
    return doc, OK


def _type_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise InputError(f"type must be an integer from 1 to 31, got {text!r}")
    if n not in NORMAL_FORMS:
        raise InputError(f"type must be an integer from 1 to 31, got {n}")
    return n


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    def common(suppress: bool) -> argparse.ArgumentParser:
        # options may come before or after the verb; the copy after it must not
        # overwrite values given before with its defaults
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--param", action="append", metavar="NAME=VALUE",
                       default=argparse.SUPPRESS if suppress else [],
                       help="bind a parameter (repeatable), e.g. --param γ=5")
        c.add_argument("--pretty", action="store_true",
                       default=argparse.SUPPRESS if suppress else False,
                       help="human-readable output")
        return c

    p = argparse.ArgumentParser(prog="plane-cremona", parents=[common(False)],
                                description="Exact computations with plane Cremona maps.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        s = sub.add_parser(name, parents=[common(True)], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = verb("classify", cmd_classify, "type, parameters and witness of a map")
    s.add_argument("map")
    s = verb("compose", cmd_compose, "compose maps, outermost first")
    s.add_argument("maps", nargs="+")
    s = verb("base-points", cmd_base_points, "base points with multiplicities")
    s.add_argument("map")
    s = verb("graph", cmd_graph, "proximity graph of the base points")
    s.add_argument("map")
    s.add_argument("--enriched", action="store_true", help="include the line through three points")
    s.add_argument("--dot", action="store_true", help="Graphviz output")
    s = verb("enumerate", cmd_enumerate, "all admissible graphs for cubic maps")
    s.add_argument("--enriched", action="store_true")
    s = verb("equivalent", cmd_equivalent, "decide equivalence of two maps")
    s.add_argument("first")
    s.add_argument("second")
    s = verb("orbit", cmd_orbit, "equivalent parameter values of a type")
    s.add_argument("type")
    s.add_argument("params", nargs="*", metavar="NAME=VALUE")
    s = verb("verify-tables", cmd_verify_tables, "check the reference data")
    s.add_argument("--table", type=int, choices=range(5),
                   help="0 plain graphs, 1 normal forms, 2 enriched graphs, "
                        "3 sigma factorizations, 4 mixed factorizations")
    s = verb("lengths", cmd_lengths, "height bounds and length facts")
    s.add_argument("target", help="a map, or a type number")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            a = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else BAD_INPUT
    try:
        values = parse_bindings(a.param)
        doc, code = a.fn(a, values)
    except (UnsupportedField, UnsupportedCase) as e:
        err.write(f"unsupported: {e}\n")
        return UNSUPPORTED
    except (ParseError, InputError, NotBirational, ConfigurationError) as e:
        err.write(f"input error: {e}\n")
        return BAD_INPUT
    except ClassificationError as e:
        err.write(f"classification failed: {e}\n")
        return NEGATIVE
    except (AlgebraError, ArcError) as e:
        err.write(f"input error: {e}\n")
        return BAD_INPUT
    if isinstance(doc, str):
        out.write(doc + "\n")
    else:
        emit(doc, a.pretty, out)
    return code


def main() -> None:
    sys.exit(run())
