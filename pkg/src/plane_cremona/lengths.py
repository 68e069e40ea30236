"""Heights of base points, length bounds, and checks of factorizations into quadratic maps."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exact_algebra import ProjAut, ProjPoint, det3, field, join
from .bubble import ArcError, BubblePoint, arc_through, line_through, map_arc, passes_through, point_of_arc
from .catalog import (
    MIXED_FACTORIZATIONS,
    NORMAL_FORMS,
    SIGMA_FACTORIZATIONS,
    normal_form_at,
)
from .classify import UnsupportedCase
from .cremona import (
    QUADRATIC,
    SIGMA,
    CremonaMap,
    base_point_multiplicity,
    compose,
    compose_all,
    degree_drop,
    identity_map,
    proper_base_points,
    resolve_base_points,
)

SAMPLE_VALUES = {"γ": 3, "a": 2, "b": 3}


# ---------------------------------------------------------------- heights

@dataclass(frozen=True)
class HeightReport:
    points: tuple  # BubblePoints
    heights: tuple
    loads: dict  # index of a proper base point -> load

    @property
    def max_height(self) -> int:
        return max(self.heights, default=0)

    def to_json(self) -> dict:
        return {"points": [str(p) for p in self.points], "heights": list(self.heights),
                "max_height": self.max_height,
                "loads": {str(self.points[i]): v for i, v in sorted(self.loads.items())}}


def heights(m: CremonaMap) -> HeightReport:
    tree = resolve_base_points(m, find_line=False)
    pts = tree.points
    hs = tuple(p.order + 1 for p in pts)
    loads = {}
    for i, p in enumerate(pts):
        if p.is_proper:
            near = sum(1 for j, q in enumerate(pts) if j != i and q.extends(p))
            loads[i] = 1 + near
    return HeightReport(pts, hs, loads)


def height_at(m: CremonaMap, p: BubblePoint) -> int:
    """order + 1 when p is a base point of m, else 0."""
    return p.order + 1 if base_point_multiplicity(m, p) > 0 else 0


def is_de_jonquieres(m: CremonaMap) -> bool:
    if m.degree < 2:
        return False
    tree = resolve_base_points(m, find_line=False)
    return max(tree.mults) == m.degree - 1


def oq_lower_bound(m: CremonaMap) -> int:
    d = m.degree
    if d == 1:
        return 0
    bound = heights(m).max_height
    if d >= 3:
        bound = max(bound, 2)
    if d >= 5:
        bound = max(bound, 3)
    if d <= 5 and is_de_jonquieres(m):
        bound = max(bound, d - 1)
    return bound


# ---------------------------------------------------------------- factorizations

def _as_map(f) -> CremonaMap:
    return CremonaMap.from_aut(f) if isinstance(f, ProjAut) else f


def quadratic_kind(f: CremonaMap) -> str:
    """ordinary / second / third by the number of proper base points (3 / 2 / 1)."""
    n = len(proper_base_points(f))
    return {3: "ordinary", 2: "second", 1: "third"}.get(n, f"{n} proper base points")


def _symbol(f: CremonaMap) -> Optional[str]:
    for name, q in QUADRATIC.items():
        if f.same(q):
            return name
    return None


def verify_decomposition(target: Optional[CremonaMap], factors: Sequence) -> dict:
    """Compose factors (outermost first) and compare with target.

    `degree_checks` compares, for each involutory ordinary quadratic factor q,
    the degree of (outer part) o q with 2d - sum of the outer part's
    multiplicities at the base points of q."""
    maps = [_as_map(f) for f in factors]
    # degrees after applying each factor, innermost first
    partial, degrees = None, []
    for f in reversed(maps):
        partial = f if partial is None else compose(f, partial)
        degrees.append(partial.degree)
    result = partial if partial is not None else identity_map()
    quads = [(i, f) for i, f in enumerate(maps) if f.degree == 2]
    kinds = [quadratic_kind(f) for _, f in quads]
    symbols = [_symbol(f) for _, f in quads]
    checks = []
    for i, q in quads:
        if i == 0 or not compose(q, q).same(identity_map(q.params)):
            continue
        outer = compose_all(maps[:i])
        pts = proper_base_points(q)
        if len(pts) != 3:
            continue
        mults = [base_point_multiplicity(outer, BubblePoint(p)) for p in pts]
        predicted = degree_drop(outer.degree, *mults)
        actual = compose(outer, q).degree
        checks.append({"position": i, "outer_degree": outer.degree, "mults": mults,
                       "predicted": predicted, "actual": actual, "ok": predicted == actual})
    out = {
        "equal": None if target is None else result.same(target),
        "degree": result.degree,
        "intermediate_degrees": degrees,
        "quadratic_count": len(quads),
        "quadratic_kinds": kinds,
        "counts": {k: symbols.count(k) for k in ("sigma", "rho", "tau")},
        "degree_checks": checks,
    }
    out["degree_checks_ok"] = all(c["ok"] for c in checks)
    return out


def sigma_factors(n: int) -> list:
    """The sigma-only factorization of normal form n as a factor list."""
    from .map_language import parse_decomposition
    nf = NORMAL_FORMS[n]
    return parse_decomposition(" o sigma o ".join(SIGMA_FACTORIZATIONS[n]), nf.params)


def mixed_factors(n: int) -> Optional[list]:
    from .map_language import parse_decomposition
    if n not in MIXED_FACTORIZATIONS:
        return None
    return parse_decomposition(MIXED_FACTORIZATIONS[n], NORMAL_FORMS[n].params)


def sample_values(n: int) -> dict:
    return {k: SAMPLE_VALUES[k] for k in NORMAL_FORMS[n].params}


def instantiate_factors(factors: Sequence, values: dict) -> list:
    from .exact_algebra import evaluate_scalar
    out = []
    for f in factors:
        if isinstance(f, ProjAut) and f.params:
            rows = [[evaluate_scalar(c, f.params, values, ()) for c in r] for r in f.matrix]
            out.append(ProjAut.of(rows))
        elif isinstance(f, CremonaMap) and f.params:
            out.append(f.instantiate(values))
        else:
            out.append(f)
    return out


def length_facts(n: int) -> dict:
    nf = NORMAL_FORMS[n]
    vals = sample_values(n)
    phi = normal_form_at(n, vals)
    lower = oq_lower_bound(phi)
    sig = verify_decomposition(None, sigma_factors(n))
    two = mixed_factors(n)
    if two is not None:
        qsrc, qcount = "mixed factorization", verify_decomposition(None, two)["quadratic_count"]
    else:
        qsrc, qcount = "sigma factorization", sig["quadratic_count"]
    return {
        "type": n,
        "q": 3 if n == 1 else 2,
        "oq": nf.length,
        "lower_bound": lower,
        "lower_bound_sample": vals or None,
        "upper_bound": sig["quadratic_count"],
        "upper_bound_source": "sigma factorization",
        "q_witness": {"source": qsrc, "quadratic_count": qcount},
        "consistent": lower <= nf.length == sig["quadratic_count"],
    }


# ---------------------------------------------------------------- point transport

def ordinary_involution(pts: Sequence[ProjPoint]) -> tuple[CremonaMap, ProjAut]:
    """The involutory ordinary quadratic map with the given proper base points,
    as A o sigma o A^-1 where A sends the coordinate points to pts."""
    ctx = join(*(p.params for p in pts))
    cols = [p.lift(ctx).coords for p in pts]
    A = ProjAut.of([[cols[j][i] for j in range(3)] for i in range(3)], ctx)
    rho = compose(CremonaMap.from_aut(A), compose(SIGMA, CremonaMap.from_aut(A.inverse())))
    return rho, A


def _on_line(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    ctx = join(p.params, q.params, r.params)
    return det3([p.lift(ctx).coords, q.lift(ctx).coords, r.lift(ctx).coords], field(ctx)) == 0


def transport_point(p: BubblePoint, base_points: Sequence[ProjPoint]) -> BubblePoint:
    """The bijection of bubble points induced by the involutory ordinary
    quadratic map with the given base points.

    Both blow-ups at the three base points are the same surface; a point is
    followed along a generic arc and read off at the depth it has on the
    other side."""
    P = list(base_points)
    if len(P) != 3 or _on_line(*P):
        raise ValueError("need three non-collinear base points")
    rho, _ = ordinary_involution(P)
    b, r = p.base, p.order
    ctx = join(b.params, *(q.params for q in P))
    vertex = next((i for i in range(3) if b.lift(ctx) == P[i].lift(ctx)), None)
    if vertex is not None:
        if r == 0:
            return p
        first = BubblePoint(p.base, p.tail[:1])
        along = any(passes_through(line_through(P[vertex], P[j]), first)
                    for j in range(3) if j != vertex)
        depth = r if along else r - 1
    elif any(_on_line(b, P[j], P[k]) for j, k in ((1, 2), (0, 2), (0, 1))):
        depth = r + 1
    else:
        depth = r
    try:
        return point_of_arc(map_arc(arc_through(p), rho.components), depth)
    except ArcError as exc:
        raise UnsupportedCase(f"point transport failed to follow {p}: {exc}") from exc
