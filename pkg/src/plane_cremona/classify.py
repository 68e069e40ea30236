"""Classification of cubic Cremona maps into the 31 normal forms.

A cubic map is matched to a normal form phi by an automorphism A sending the
base points of phi to those of the input; since a homaloidal net is fixed by
its base points, phi = B o m o A for a second automorphism B obtained by
linear algebra.  A is built in stages: a linear solve on the proper points and
tangent directions, then one-parameter corrections for deeper points, whose
parameter is a rational root of the matching condition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .exact_algebra import (
    AlgebraError,
    ProjAut,
    ProjPoint,
    det3,
    evaluate_scalar,
    field,
    format_scalar,
    join,
    nullspace,
    rational_roots,
    t_ring,
)
from .bubble import INF, BubblePoint, conic_marked_aut, conic_through, tangent_line, transform_point
from .catalog import (
    INVERSE,
    NORMAL_FORMS,
    ORBIT_AUTS,
    ORBIT_AUTS_31,
    PARAMETRIC,
    normal_form_at,
    normal_form_map,
)
from .cremona import (
    QUADRATIC,
    CremonaMap,
    apply_aut,
    compose,
    resolve_base_points,
    solve_post,
)
from .proximity import EnrichedGraph, enriched_graph_of, isomorphisms


class ClassificationError(ValueError):
    """The input cannot be matched to a normal form."""


class UnsupportedCase(ValueError):
    """The input lies outside what the classifier handles (degree > 3, ...)."""


STEP = "ω"  # internal name of a step-family parameter

# One-parameter families of automorphisms used after the first linear change.
FAMILIES = {
    "neg_x": "[-x: ω y: ω z]",
    "shear_z": "[3x: 3y+ω z: 3z]",
    "scale_xz": "[ω x: -y: ω z]",
    "shear_yx": "[x: y-ω x: z]",
    "scale_x": "[ω x: y: z]",
    "cube": "[ω^2 x: y: ω z]",
    "scale_y": "[x: ω y: z]",
    "scale_z": "[x: y: ω z]",
    "mix_z": "[x: y: (-ω-1)x - ω z]",
}

QUADRATIC_POINTS = {"sigma": 3, "rho": 2, "tau": 1}


@dataclass(frozen=True)
class Classification:
    type: object  # 1..31, or "sigma"/"rho"/"tau"/"linear"
    params: dict  # name -> scalar (field of `value_params`)
    pre: ProjAut
    post: ProjAut  # post o input o pre == normal form at params
    value_params: tuple = ()

    def normal_form(self) -> CremonaMap:
        return target_map(self.type, self.params, self.value_params)

    def verify(self, m: CremonaMap) -> bool:
        return apply_aut(m, self.pre, self.post).same(self.normal_form())

    def param_text(self) -> dict:
        return {k: format_scalar(v, self.value_params) for k, v in sorted(self.params.items())}


def target_map(kind, params: dict, value_params: tuple = ()) -> CremonaMap:
    if kind == "linear":
        return CremonaMap.from_aut(ProjAut.identity())
    if kind in QUADRATIC:
        return QUADRATIC[kind]
    return normal_form_at(kind, params, value_params)


# ---------------------------------------------------------------- catalog trees

@dataclass(frozen=True)
class _Shape:
    points: tuple  # BubblePoints p0..p4 in the catalog's own context
    graph: EnrichedGraph  # vertices in point order


@lru_cache(maxsize=None)
def _shape(n: int) -> _Shape:
    from .map_language import parse_point
    nf = NORMAL_FORMS[n]
    pts = tuple(parse_point(s) for s in nf.points)
    tree = resolve_base_points(normal_form_map(n))
    idx = [tree.index_of(p) for p in pts]
    if None in idx:
        raise AlgebraError(f"normal form {n}: listed base points disagree with its net")
    graph = enriched_graph_of(tree)
    perm = [0] * 5
    for i, j in enumerate(idx):
        perm[j] = i
    return _Shape(pts, graph.relabel(perm))


@lru_cache(maxsize=None)
def _family(name: str) -> ProjAut:
    from .map_language import parse_aut
    return parse_aut(FAMILIES[name], (STEP,))


def _instantiate_point(p: BubblePoint, values: dict, value_params: tuple) -> BubblePoint:
    src = p.params
    if not src:
        return p.lift(value_params)
    dst = join(tuple(q for q in src if q not in values), value_params)
    ev = lambda c: evaluate_scalar(c, src, values, dst)
    base = ProjPoint.of([ev(c) for c in p.base.coords], dst)
    return BubblePoint(base, tuple(t if t is INF else ev(t) for t in p.tail))


# ---------------------------------------------------------------- linear solve

def _second_point(line, p: ProjPoint) -> ProjPoint:
    c = [line.terms.get(m, line.poly.ring.domain.zero) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        v = (c[1] * e[2] - c[2] * e[1], c[2] * e[0] - c[0] * e[2], c[0] * e[1] - c[1] * e[0])
        if any(v):
            q = ProjPoint.of(v, p.params)
            if q != p:
                return q
    raise AlgebraError("degenerate line")


def _line_coeffs(line):
    K = line.poly.ring.domain
    return [line.terms.get(m, K.zero) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]


def _constraint_rows(pairs, K) -> list:
    """Linear conditions on the 9 entries of A for A(p) = q."""
    rows = []
    for p, q in pairs:
        if p.is_proper:
            a, b = p.base.coords, q.base.coords
            # (A a) x b = 0
            for j, k in ((1, 2), (2, 0), (0, 1)):
                row = [K.zero] * 9
                for c in range(3):
                    row[3 * j + c] += a[c] * b[k]
                    row[3 * k + c] -= a[c] * b[j]
                rows.append(row)
        elif p.order == 1:
            r = _second_point(tangent_line(p), p.base).coords
            lq = _line_coeffs(tangent_line(q))
            row = [K.zero] * 9
            for j in range(3):
                for c in range(3):
                    row[3 * j + c] += lq[j] * r[c]
            rows.append(row)
    return rows


def _linear_match(pairs, ctx) -> Optional[tuple[ProjAut, list]]:
    """An invertible A matching the proper points and first-order directions,
    and a basis of all such matrices."""
    K = field(ctx)
    pairs = [(p.lift(ctx), q.lift(ctx)) for p, q in pairs]
    rows = _constraint_rows(pairs, K)
    ident = [K.one if i in (0, 4, 8) else K.zero for i in range(9)]
    if not rows or all(sum((r[i] * ident[i] for i in range(9)), K.zero) == 0 for r in rows):
        return ProjAut.identity(ctx), None
    basis = nullspace(rows, K)
    if not basis:
        return None
    weights = [1, 2, 5, 11, 17, 23, 31, 41, 47]
    for shift in range(len(basis) * 3 + 3):
        coef = [K(weights[(i + shift) % 9] + shift) for i in range(len(basis))]
        v = [sum((c * b[i] for c, b in zip(coef, basis)), K.zero) for i in range(9)]
        M = [v[0:3], v[3:6], v[6:9]]
        if det3(M, K):
            return ProjAut.of(M, ctx), basis
        if len(basis) == 1:
            return None
    return None


# ---------------------------------------------------------------- step families

def _univariate(c, ctx: tuple, name: str):
    """c in field(ctx) as (numerator, denominator) polynomials in `name`
    over the field of the remaining parameters."""
    rest = tuple(p for p in ctx if p != name)
    T = t_ring(rest)
    K = field(rest)
    i = ctx.index(name)

    def conv(poly):
        acc = T.zero
        Kp = poly.ring.domain
        for mon, co in poly.terms():
            cc = K.one * K.convert(co, Kp) if not rest else K.convert(co, Kp)
            for j, e in enumerate(mon):
                if j != i and e:
                    cc = cc * K.gens[rest.index(ctx[j])] ** e
            acc += T({(mon[i],): cc})
        return acc

    return conv(c.numer), conv(c.denom)


def _step_values(p: BubblePoint, fam: ProjAut, target: BubblePoint, ctx: tuple) -> list:
    """Values w of the family parameter with fam(w)(p) = target."""
    fctx = join(ctx, (STEP,))
    img = transform_point(p.lift(fctx), fam.lift(fctx))
    f, u = img.tail[-1] if img.tail else None, target.tail[-1]
    if f is None:
        raise AlgebraError("step families act on infinitely near points")
    if f is INF and u is INF:
        cands = [field(ctx).one]
    elif f is INF:
        return []
    else:
        num, den = _univariate(f, fctx, STEP)
        if u is INF:
            poly = den
        else:
            T = num.ring
            poly = num - den * T.ground_new(u)
        if not poly:
            cands = [field(ctx).one]
        else:
            cands, _ = rational_roots(poly)
    out = []
    for w in cands:
        try:
            A = _specialize(fam, w, ctx)
        except AlgebraError:
            continue
        if transform_point(p.lift(ctx), A).same(target):
            out.append(A)
    return out


def _specialize(fam: ProjAut, w, ctx: tuple) -> ProjAut:
    rows = [[evaluate_scalar(c, fam.params, {STEP: w}, ctx) for c in r] for r in fam.matrix]
    return ProjAut.of(rows, ctx)


# ---------------------------------------------------------------- main routine

def _domain_ok(n: int, values: dict) -> bool:
    if n == 31:
        a, b = values["a"], values["b"]
        return a not in (0, 1) and b not in (0, 1) and a != b
    g = values["γ"]
    return g != 0 and g != 1


def _read_params(n: int, r: BubblePoint, ctx: tuple) -> Optional[dict]:
    how = NORMAL_FORMS[n].param_source[1]
    K = field(ctx)
    if how == "affine":
        a, b, c = r.base.coords
        if not c:
            return None
        return {"a": a / c, "b": b / c}
    if how == "ratio":
        a, b, c = r.base.coords
        return None if (c or not b) else {"γ": a / b}
    u = r.tail[-1]
    if u is INF:
        return None
    if how == "id":
        return {"γ": u}
    if not u:
        return None
    return {"γ": K.one / u if how == "inv" else -K.one / u}


def _classify_rigid(m: CremonaMap, n: int, q: Sequence[BubblePoint], ctx: tuple):
    """Try to realize the matching p_i -> q_i; yields (A, params)."""
    nf = NORMAL_FORMS[n]
    shape = _shape(n)
    p = shape.points
    fixed = [i for i in range(5) if not p[i].params]
    if nf.conic is not None:
        from .map_language import parse_form
        C_cat = parse_form(nf.conic)
        try:
            C_in = conic_through(list(q))
            A = conic_marked_aut(C_cat, [p[i].base for i in nf.marks], C_in,
                                 [q[i].base for i in nf.marks])
        except (AlgebraError, ValueError):
            return
        yield A.lift(ctx), {}
        return
    pairs = [(p[i], q[i]) for i in fixed if p[i].order <= 1]
    found = _linear_match(pairs, ctx)
    if found is None:
        return
    A1 = found[0]
    states = [A1]
    for k, fam_name in nf.steps:
        nxt = []
        for A in states:
            psi_pts = _pulled_back(m, A, ctx)
            cands = [r for r in psi_pts if r.order == p[k].order
                     and r.parent.same(p[k].parent)
                     and not any(r.same(p[i]) for i in range(5) if i != k and not p[i].params)]
            for r in cands:
                for B in _step_values(p[k], _family(fam_name), r, ctx):
                    nxt.append(A @ B)
        states = nxt
    for A in states:
        if nf.param_source is None:
            yield A, {}
            continue
        k = nf.param_source[0]
        for r in _pulled_back(m, A, ctx):
            if r.order != p[k].order:
                continue
            if r.order and not r.parent.same(_instantiate_point(p[k], {}, ctx).parent):
                continue
            if any(r.same(p[i]) for i in fixed):
                continue
            vals = _read_params(n, r, ctx)
            if vals is not None and _domain_ok(n, vals):
                yield A, vals


def _pulled_back(m: CremonaMap, A: ProjAut, ctx: tuple) -> list:
    return list(resolve_base_points(compose(m, CremonaMap.from_aut(A)).lift(ctx), find_line=False).points)


def _ordered_isomorphisms(shape: _Shape, tree, ctx):
    """Isomorphisms, those fixing more catalog points first."""
    isos = list(isomorphisms(shape.graph, enriched_graph_of(tree)))

    def score(perm):
        return -sum(1 for i, j in enumerate(perm)
                    if not shape.points[i].params and shape.points[i].same(tree.points[j].lift(join(ctx))))

    return sorted(isos, key=lambda perm: (score(perm), perm))


def classify(m: CremonaMap) -> Classification:
    ctx = m.params
    if m.degree == 1:
        return Classification("linear", {}, ProjAut.identity(ctx), _aut_of_map(m).inverse(), ctx)
    if m.degree == 2:
        return _classify_quadratic(m)
    if m.degree != 3:
        raise UnsupportedCase(f"classification covers degrees 1 to 3, not {m.degree}")
    tree = resolve_base_points(m)
    eg = enriched_graph_of(tree)
    for n in NORMAL_FORMS:
        shape = _shape(n)
        if next(isomorphisms(shape.graph, eg), None) is None:
            continue
        for perm in _ordered_isomorphisms(shape, tree, ctx):
            q = [tree.points[j] for j in perm]
            for A, vals in _classify_rigid(m, n, q, ctx):
                target = target_map(n, vals, ctx)
                B = solve_post(target, compose(m, CremonaMap.from_aut(A)))
                if B is not None:
                    return Classification(n, vals, A, B, ctx)
        raise ClassificationError(
            f"base points have the configuration of normal form {n} but no normalization succeeded")
    raise ClassificationError("the enriched proximity graph matches no normal form")


def _aut_of_map(m: CremonaMap) -> ProjAut:
    from .cremona import aut_of
    return aut_of(m)


@lru_cache(maxsize=None)
def _quadratic_shape(kind: str):
    tree = resolve_base_points(QUADRATIC[kind])
    return tree


QUADRATIC_STEPS = {"tau": "[ω x: y: z]"}


def _classify_quadratic(m: CremonaMap) -> Classification:
    ctx = m.params
    tree = resolve_base_points(m)
    nproper = sum(1 for p in tree.points if p.is_proper)
    kind = {3: "sigma", 2: "rho", 1: "tau"}.get(nproper)
    if kind is None or len(tree.points) != 3:
        raise ClassificationError("not a quadratic Cremona map")
    cat = _quadratic_shape(kind)
    from .proximity import graph_of
    for perm in isomorphisms(graph_of(cat), graph_of(tree)):
        p = list(cat.points)
        q = [tree.points[j] for j in perm]
        found = _linear_match([(a, b) for a, b in zip(p, q) if a.order <= 1], ctx)
        if found is None:
            continue
        states = [found[0]]
        deep = [i for i in range(3) if p[i].order > 1]
        for k in deep:
            nxt = []
            for A in states:
                for r in _pulled_back(m, A, ctx):
                    if r.order == p[k].order and r.parent.same(p[k].parent):
                        from .map_language import parse_aut
                        fam = parse_aut(QUADRATIC_STEPS[kind], (STEP,))
                        nxt += [A @ B for B in _step_values(p[k], fam, r, ctx)]
            states = nxt
        for A in states:
            B = solve_post(QUADRATIC[kind], compose(m, CremonaMap.from_aut(A)))
            if B is not None:
                return Classification(kind, {}, A, B, ctx)
    raise ClassificationError("quadratic normalization failed")


# ---------------------------------------------------------------- parameter orbits

def _scalar_from_text(text: str, names: dict, ctx: tuple):
    from .map_language import _Parser
    P = _Parser(text, tuple(names))
    v = P.scalar_expr()
    P.finish()
    return evaluate_scalar(v, P.ctx, names, ctx)


def _orbit_images(n: int) -> list:
    """Parameter images as text, one tuple per orbit element."""
    if n == 26:
        return [("γ",), ("γ/(γ-1)",)]
    if n == 27:
        return [("γ",), ("1/γ",)]
    if n in (28, 29, 30):
        return [("γ",), ("1/γ",), ("1-γ",), ("1/(1-γ)",), ("γ/(γ-1)",), ("(γ-1)/γ",)]
    if n == 31:
        return [(a, b) for _, a, b in ORBIT_AUTS_31]
    raise ClassificationError(f"type {n} has no parameters")


def param_names(n: int) -> tuple:
    return NORMAL_FORMS[n].params


def param_orbit(n: int, values: dict, value_params: tuple = ()) -> list[dict]:
    """All parameter values equivalent to `values` for normal form n."""
    if n not in PARAMETRIC:
        raise ClassificationError(f"type {n} has no parameters")
    names = param_names(n)
    K = field(value_params)
    vals = {k: K.convert(values[k]) for k in names}
    if not _domain_ok(n, vals):
        raise ClassificationError(
            "parameters must satisfy a, b not in {0, 1} and a != b" if n == 31
            else "the parameter must differ from 0 and 1")
    out: list[dict] = []
    for img in _orbit_images(n):
        try:
            new = {k: _scalar_from_text(t, vals, value_params) for k, t in zip(names, img)}
        except AlgebraError:
            continue
        if new not in out:
            out.append(new)
    return out


def _rat_key(c):
    return (int(c.numerator), int(c.denominator))


def canonical_params(n: int, values: dict, value_params: tuple = ()) -> Optional[dict]:
    """The orbit member with the smallest (numerator, denominator) key;
    None for symbolic values."""
    if value_params:
        return None
    orbit = param_orbit(n, values)
    names = param_names(n)
    return min(orbit, key=lambda d: tuple(_rat_key(d[k]) for k in names))


def orbit_automorphisms(n: int, values: dict, value_params: tuple = ()) -> list[ProjAut]:
    """Automorphisms relating phi_n at `values` to phi_n at other orbit members."""
    from .map_language import parse_aut
    names = param_names(n)
    ctx = value_params
    rows = ORBIT_AUTS_31 if n == 31 else ORBIT_AUTS.get(n, [])
    out = []
    for entry in rows:
        text = entry[0]
        A = parse_aut(text, names)
        rows_ = [[evaluate_scalar(c, A.params, values, ctx) for c in r] for r in A.matrix]
        try:
            out.append(ProjAut.of(rows_, ctx))
        except AlgebraError:
            continue
    return out


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    reason: str
    first: Optional[Classification] = None
    second: Optional[Classification] = None
    pre: Optional[ProjAut] = None  # post o m1 o pre == m2
    post: Optional[ProjAut] = None


def equivalent(m1: CremonaMap, m2: CremonaMap) -> Equivalence:
    c1, c2 = classify(m1), classify(m2)
    if c1.type != c2.type:
        return Equivalence(False, f"types differ: {c1.type} and {c2.type}", c1, c2)
    ctx = join(c1.value_params, c2.value_params)
    lift = lambda a: a.lift(ctx)
    if not c1.params:
        g = ProjAut.identity(ctx)
        beta = ProjAut.identity(ctx)
    else:
        n = c1.type
        p1 = {k: field(ctx).convert(v) for k, v in c1.params.items()}
        p2 = {k: field(ctx).convert(v) for k, v in c2.params.items()}
        if p2 not in param_orbit(n, p1, ctx):
            return Equivalence(False, "parameters lie in different orbits", c1, c2)
        phi1, phi2 = target_map(n, p1, ctx), target_map(n, p2, ctx)
        pair = _orbit_link(n, phi1, phi2, p1, p2, ctx)
        if pair is None:
            raise ClassificationError("no orbit automorphism links the two parameter values")
        g, beta = pair
    pre = lift(c1.pre) @ g @ lift(c2.pre).inverse()
    post = lift(c2.post).inverse() @ beta @ lift(c1.post)
    if not apply_aut(m1.lift(ctx), pre, post).same(m2.lift(ctx)):
        raise ClassificationError("equivalence witness failed to verify")
    return Equivalence(True, "same type" + (" and parameter orbit" if c1.params else ""),
                       c1, c2, pre, post)


def _orbit_link(n, phi1, phi2, p1, p2, ctx):
    """(g, beta) with beta o phi1 o g == phi2."""
    ident = ProjAut.identity(ctx)
    cands = [ident]
    for vals in (p1, p2):
        for A in orbit_automorphisms(n, vals, ctx):
            cands += [A, A.inverse()]
    seen = []
    for g in cands:
        if any(g == s for s in seen):
            continue
        seen.append(g)
        beta = solve_post(phi2, compose(phi1, CremonaMap.from_aut(g)))
        if beta is not None:
            return g, beta
    # compositions of two table automorphisms cover the remaining orbit members
    for g1, g2 in product(seen, repeat=2):
        g = g1 @ g2
        beta = solve_post(phi2, compose(phi1, CremonaMap.from_aut(g)))
        if beta is not None:
            return g, beta
    return None


# ---------------------------------------------------------------- report

def report(m: CremonaMap, c: Optional[Classification] = None) -> dict:
    c = c or classify(m)
    out = {"type": c.type, "degree": m.degree, "params": c.param_text()}
    if isinstance(c.type, int):
        nf = NORMAL_FORMS[c.type]
        out["normal_form"] = nf.formula
        out["graph_row"] = c.type
        out["oq"] = nf.length
        out["q"] = 3 if c.type == 1 else 2
        out["inverse_type"] = INVERSE[c.type]
        if c.params:
            orbit = param_orbit(c.type, c.params, c.value_params)
            out["orbit"] = [{k: format_scalar(v, c.value_params) for k, v in d.items()} for d in orbit]
            canon = canonical_params(c.type, c.params, c.value_params)
            out["canonical_params"] = (None if canon is None else
                                       {k: format_scalar(v) for k, v in canon.items()})
    out["witness"] = {"pre": str(c.pre), "post": str(c.post),
                      "statement": "post o input o pre = normal form"}
    return out
