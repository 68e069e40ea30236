"""Cremona maps as coprime polynomial triples, and their base points."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Optional, Sequence

from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .exact_algebra import (
    AlgebraError,
    HomPoly,
    ProjAut,
    ProjPoint,
    UnsupportedField,
    field,
    format_poly,
    join,
    lift_poly,
    params_of,
    raw_exquo,
    raw_gcd,
    rational_roots,
    resultant_to_t,
    substitute_raw,
    t_ring,
    total_order,
    lowest_form,
    xyz_ring,
    evaluate_scalar,
    peval,
)
from .bubble import (
    INF,
    BubblePoint,
    blow_up,
    local_chart,
    proximate,
    satellite,
)


class NotBirational(ValueError):
    """The polynomial triple does not satisfy the equations of a Cremona map."""


@dataclass(frozen=True)
class CremonaMap:
    components: tuple  # three PolyElements in xyz_ring(params)
    degree: int

    @staticmethod
    def from_polys(polys: Sequence[PolyElement]) -> "CremonaMap":
        ctx = join(*(params_of(p.ring.domain) for p in polys))
        ps = [lift_poly(p, ctx) for p in polys]
        if any(not p for p in ps):
            raise AlgebraError("a component of the map is zero")
        degs = set()
        for p in ps:
            ds = {sum(m) for m in p.monoms()}
            if len(ds) != 1:
                raise AlgebraError("a component is not homogeneous")
            degs |= ds
        if len(degs) != 1:
            raise AlgebraError("components have different degrees")
        g = reduce(raw_gcd, ps)
        if g != 1:
            ps = [raw_exquo(p, g) for p in ps]
        lead = ps[0].LC
        ps = [p.quo_ground(lead) for p in ps]
        return CremonaMap(tuple(ps), sum(next(iter(ps[0].monoms()))))

    @staticmethod
    def from_aut(a: ProjAut) -> "CremonaMap":
        return CremonaMap.from_polys([f.poly for f in a.forms()])

    @property
    def params(self) -> tuple[str, ...]:
        return params_of(self.components[0].ring.domain)

    @property
    def homs(self) -> list[HomPoly]:
        return [HomPoly(p, self.degree) for p in self.components]

    def lift(self, params: tuple[str, ...]) -> "CremonaMap":
        if params == self.params:
            return self
        return CremonaMap(tuple(lift_poly(p, params) for p in self.components), self.degree)

    def same(self, other: "CremonaMap") -> bool:
        ctx = join(self.params, other.params)
        return self.lift(ctx) == other.lift(ctx)

    def instantiate(self, values: dict, value_params: tuple[str, ...] = ()) -> "CremonaMap":
        """Substitute values for parameters.

        Values are numbers, or elements of field(value_params)."""
        return instantiate_polys(self.components, values, value_params)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        ctx = join(self.params, p.params)
        q = p.lift(ctx)
        vals = [peval(lift_poly(f, ctx), q.coords) for f in self.components]
        return ProjPoint.of(vals, ctx)

    def __str__(self) -> str:
        return "[" + " : ".join(format_poly(p) for p in self.components) + "]"


def instantiate_polys(polys: Sequence[PolyElement], values: dict,
                      value_params: tuple[str, ...] = ()) -> CremonaMap:
    """Substitute parameter values into a polynomial triple, then normalize."""
    src = join(*(params_of(p.ring.domain) for p in polys))
    rest = tuple(p for p in src if p not in values)
    dst = join(rest, value_params)
    vals = {k: _coerce(v, value_params, dst) for k, v in values.items()}
    R = xyz_ring(dst)
    comps = []
    for p in polys:
        p = lift_poly(p, src)
        comps.append(R({m: evaluate_scalar(c, src, vals, dst) for m, c in p.terms()}))
    return CremonaMap.from_polys(comps)


def _coerce(v, src: tuple[str, ...], dst: tuple[str, ...]):
    from .exact_algebra import lift_scalar, scalar
    if hasattr(v, "numer") and hasattr(v, "denom"):
        return lift_scalar(v, src, dst)
    return scalar(v, dst)


def compose(outer: CremonaMap, inner: CremonaMap) -> CremonaMap:
    """outer o inner."""
    ctx = join(outer.params, inner.params)
    o, i = outer.lift(ctx), inner.lift(ctx)
    R = xyz_ring(ctx)
    comps = [substitute_raw(f, i.components, R) for f in o.components]
    return CremonaMap.from_polys(comps)


def compose_all(maps: Sequence[CremonaMap]) -> CremonaMap:
    """maps[0] o maps[1] o ... o maps[-1]; automorphisms are accepted too."""
    maps = [CremonaMap.from_aut(m) if isinstance(m, ProjAut) else m for m in maps]
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def apply_aut(m: CremonaMap, pre: ProjAut, post: ProjAut) -> CremonaMap:
    """post o m o pre."""
    return compose(CremonaMap.from_aut(post), compose(m, CremonaMap.from_aut(pre)))


def aut_of(m: CremonaMap) -> ProjAut:
    if m.degree != 1:
        raise AlgebraError("not a linear map")
    rows = []
    for f in m.components:
        t = dict(f.terms())
        K = f.ring.domain
        rows.append([t.get((1, 0, 0), K.zero), t.get((0, 1, 0), K.zero), t.get((0, 0, 1), K.zero)])
    return ProjAut.of(rows, m.params)


def degree_drop(d: int, m1: int, m2: int, m3: int) -> int:
    return 2 * d - m1 - m2 - m3


def identity_map(params: tuple[str, ...] = ()) -> CremonaMap:
    return CremonaMap.from_aut(ProjAut.identity(params))


def _quad(kind: str) -> CremonaMap:
    R = xyz_ring(())
    x, y, z = R.gens
    comps = {"sigma": (y * z, x * z, x * y),
             "rho": (x * y, z**2, y * z),
             "tau": (x**2, x * y, y**2 - x * z)}[kind]
    return CremonaMap.from_polys(comps)


SIGMA = _quad("sigma")
RHO = _quad("rho")
TAU = _quad("tau")
QUADRATIC = {"sigma": SIGMA, "rho": RHO, "tau": TAU}


# ---------------------------------------------------------------- base points

@dataclass(frozen=True)
class LineData:
    line: HomPoly
    members: tuple  # entry indices


@dataclass(frozen=True)
class BasePointTree:
    degree: int
    points: tuple  # BubblePoints
    mults: tuple  # ints
    arrows: tuple  # (i, j): points[i] proximate to points[j]
    satellites: tuple  # (i, j) satellite pairs
    line: Optional[LineData] = None

    @property
    def entries(self) -> list:
        return list(zip(self.points, self.mults))

    def parent_index(self, i: int) -> Optional[int]:
        p = self.points[i]
        if p.is_proper:
            return None
        par = p.parent
        for j, q in enumerate(self.points):
            if q.same(par):
                return j
        raise AlgebraError("tree is not closed under parents")

    def index_of(self, p: BubblePoint) -> Optional[int]:
        for i, q in enumerate(self.points):
            if q.same(p):
                return i
        return None

    def noether_ok(self) -> bool:
        d = self.degree
        return (sum(m * m for m in self.mults) == d * d - 1
                and sum(self.mults) == 3 * (d - 1))

    def to_json(self) -> dict:
        entries = []
        for i, (p, m) in enumerate(self.entries):
            entries.append({
                "index": i, "point": str(p), "mult": m, "order": p.order,
                "proximate_to": sorted(j for a, j in self.arrows if a == i),
                "satellite_of": sorted(j for a, j in self.satellites if a == i),
            })
        line = None if self.line is None else {"equation": str(self.line.line),
                                               "members": list(self.line.members)}
        return {"degree": self.degree, "entries": entries,
                "arrows": [list(a) for a in sorted(self.arrows)],
                "noether": self.noether_ok(), "proximity": self.proximity_ok(), "line": line}

    def proximity_ok(self) -> bool:
        for j, m in enumerate(self.mults):
            if m < sum(self.mults[i] for i, k in self.arrows if k == j):
                return False
        return True


def _point_key(p: BubblePoint):
    return (p.order, str(p))


def _generic_combos():
    yield (1, 2, 3), (1, -3, 5), (2, 1, -1)
    yield (1, 5, -2), (3, -1, 4), (1, 1, 7)
    yield (2, -7, 3), (5, 3, 1), (1, -4, -9)


_COORDINATE_CHANGES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 2, 0), (0, 1, 0), (3, 5, 1)),
    ((1, 0, 0), (7, 1, 2), (0, 3, 1)),
    ((2, 1, 0), (1, 1, 1), (0, 4, 1)),
)


def proper_base_points(m: CremonaMap) -> list[ProjPoint]:
    """Common zeros of the three components, which must all be rational."""
    ctx = m.params
    K = field(ctx)
    for rows in _COORDINATE_CHANGES:
        A = ProjAut.of(rows, ctx)
        psi = compose(m, CremonaMap.from_aut(A)).components
        if any(peval(f, (K.zero, K.one, K.zero)) for f in psi):
            break
    else:
        raise AlgebraError("no coordinate change separates the base locus")
    found: list[ProjPoint] = []
    T = t_ring(ctx)
    t = T.gens[0]
    # points on z = 0 (never [0:1:0] here)
    line = [substitute_raw(f, [T.one, t, T.zero], T) for f in psi]
    g = reduce(raw_gcd, line)
    roots, extra = rational_roots(g)
    if extra:
        raise UnsupportedField("a base point is not defined over the coefficient field")
    found += [ProjPoint.of([K.one, r, K.zero], ctx) for r in roots]
    # chart z = 1: x-coordinates of base points divide the resultant (in y)
    # of any two net members; several pairs remove spurious common zeros
    S = PolyRing(("y", "x"), field(ctx), grlex)
    ys, xs = S.gens
    aff = lambda f: substitute_raw(f, [xs, ys, S.one], S)
    members = [psi[0] * c[0] + psi[1] * c[1] + psi[2] * c[2]
               for combo in _generic_combos() for c in combo]
    members = [g for g in members if peval(g, (K.zero, K.one, K.zero))]
    ux, used = None, 0
    for ga, gb in combinations(members, 2):
        if raw_gcd(ga, gb) != 1:
            continue
        r = resultant_to_t(aff(ga), aff(gb))
        ux = r if ux is None else raw_gcd(ux, r)
        used += 1
        if used == 3 or ux.degree() <= 0:
            break
    if ux is None:
        raise AlgebraError("the components share a curve; not a Cremona map")
    xroots, extra = rational_roots(ux)
    if extra:
        raise UnsupportedField("a base point is not defined over the coefficient field")
    for a in xroots:
        ycomp = [substitute_raw(f, [T.ground_new(a), t, T.one], T) for f in psi]
        h = reduce(raw_gcd, ycomp)
        if h == 0:
            raise AlgebraError("base locus contains a line")
        yroots, extra = rational_roots(h)
        if extra:
            raise UnsupportedField("a base point is not defined over the coefficient field")
        found += [ProjPoint.of([a, b, K.one], ctx) for b in yroots]
    out = []
    for p in found:
        q = A(p)
        if all(peval(f, q.coords) == 0 for f in m.components) and q not in out:
            out.append(q)
    return out


def _net_children(gens: list[PolyElement], mult: int):
    """Values t of base points in the first neighbourhood of the chart origin."""
    ring = gens[0].ring
    u, v = ring.gens
    forms = [lowest_form(g) for g in gens if g and total_order(g) == mult]
    K = ring.domain
    kids = []
    if all(not peval(f, (K.zero, K.one)) for f in forms):
        kids.append(INF)
    T = t_ring(params_of(K))
    t = T.gens[0]
    polys = [substitute_raw(f, [T.one, t], T) for f in forms]
    h = reduce(raw_gcd, polys)
    roots, extra = rational_roots(h)
    if extra:
        raise UnsupportedField("an infinitely near base point is not defined over the coefficient field")
    return sorted(roots, key=str) + kids


def resolve_base_points(m: CremonaMap, find_line: bool = True) -> BasePointTree:
    if m.degree < 2:
        raise AlgebraError("base points are resolved for maps of degree at least 2")
    pts: list[BubblePoint] = []
    mults: list[int] = []

    def walk(p: BubblePoint, gens: list[PolyElement], depth: int):
        if depth > 2 * m.degree * m.degree:
            raise NotBirational("base point resolution does not terminate")
        orders = [total_order(g) for g in gens if g]
        mult = min(orders)
        if mult == 0:
            return
        pts.append(p)
        mults.append(mult)
        for t in _net_children(gens, mult):
            walk(p.child(t), [blow_up(g, t, mult) if g else g for g in gens], depth + 1)

    proper = sorted(proper_base_points(m), key=lambda q: str(q))
    for q in proper:
        walk(BubblePoint(q), [local_chart(f, q) for f in m.components], 0)
    order = sorted(range(len(pts)), key=lambda i: (-mults[i], _root_key(pts, i)))
    pts = [pts[i] for i in order]
    mults = [mults[i] for i in order]
    arrows, sats = [], []
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i != j and proximate(p, q):
                arrows.append((i, j))
                if satellite(p, q):
                    sats.append((i, j))
    tree = BasePointTree(m.degree, tuple(pts), tuple(mults), tuple(arrows), tuple(sats))
    if not tree.noether_ok():
        raise NotBirational(
            f"multiplicities {list(mults)} violate the Noether equations for degree {m.degree}")
    if find_line and m.degree == 3:
        from .proximity import find_unexpected_line
        tree = BasePointTree(tree.degree, tree.points, tree.mults, tree.arrows, tree.satellites,
                             find_unexpected_line(tree))
    return tree


def _root_key(pts, i):
    p = pts[i]
    return (str(p.base), p.order, str(p))


def base_point_multiplicity(m: CremonaMap, p: BubblePoint) -> int:
    """Multiplicity of the net of m at a bubble point (0 if not a base point)."""
    ctx = join(m.params, p.params)
    m, p = m.lift(ctx), p.lift(ctx)
    gens = [local_chart(f, p.base) for f in m.components]
    for t in p.tail:
        mult = min(total_order(g) for g in gens if g)
        if mult == 0:
            return 0
        gens = [blow_up(g, t, mult) if g else g for g in gens]
    return min(total_order(g) for g in gens if g)


def inverse_from_decomposition(factors: Sequence) -> CremonaMap:
    """Invert a factor list using that sigma, rho and tau are involutions."""
    inv = []
    for f in reversed(factors):
        if isinstance(f, ProjAut):
            inv.append(CremonaMap.from_aut(f.inverse()))
        else:
            inv.append(f)
    result = compose_all(inv)
    forward = compose_all(list(factors))
    if not compose(result, forward).same(identity_map(join(result.params, forward.params))):
        raise AlgebraError("inverse verification failed")
    return result


def solve_post(target: CremonaMap, source: CremonaMap) -> Optional[ProjAut]:
    """Automorphism beta with beta o source == target, if the nets agree."""
    from .exact_algebra import _dm
    ctx = join(target.params, source.params)
    t, s = target.lift(ctx), source.lift(ctx)
    if t.degree != s.degree:
        return None
    K = field(ctx)
    monos = sorted({mo for f in t.components + s.components for mo in f.monoms()})
    cols = [[dict(f.terms()).get(mo, K.zero) for mo in monos] for f in s.components]
    A = [[cols[k][r] for k in range(3)] for r in range(len(monos))]
    rows = []
    for f in t.components:
        tv = [dict(f.terms()).get(mo, K.zero) for mo in monos]
        aug = _dm([A[r] + [tv[r]] for r in range(len(monos))], K)
        R, piv = aug.rref()
        if 3 in piv or len(piv) < 3:
            return None
        R = R.to_list()
        rows.append([R[i][3] for i in range(3)])
    try:
        return ProjAut.of(rows, ctx)
    except AlgebraError:
        return None
