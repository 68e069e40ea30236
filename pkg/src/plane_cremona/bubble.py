"""Points of the bubble space in standard coordinates.

A point is a proper point [a:b:c] followed by a tail t2, ..., tr of chart
values (field elements or INF).  Blowing up the origin of a chart (u, v):
a finite value t is the origin of the chart u = u', v = u'(v' + t), and INF
is the origin of u = u'v', v = u' (the second chart with its coordinates
swapped), so that the newest exceptional curve is always u = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from sympy.polys.rings import PolyElement, PolyRing

from .exact_algebra import (
    AlgebraError,
    HomPoly,
    ProjAut,
    ProjPoint,
    e_points,
    field,
    format_scalar,
    join,
    lift_poly,
    lift_scalar,
    nullspace,
    params_of,
    peval,
    det3,
    solve_4pt,
    substitute_raw,
    total_order,
    uv_ring,
    xyz_ring,
)


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class ConfigurationError(ValueError):
    """A point configuration violates the hypotheses of a construction."""


@dataclass(frozen=True)
class BubblePoint:
    base: ProjPoint
    tail: tuple = ()

    @staticmethod
    def of(base: ProjPoint | Sequence, tail: Sequence = (), params: tuple[str, ...] = ()) -> "BubblePoint":
        if not isinstance(base, ProjPoint):
            base = ProjPoint.of(base, params)
        K = field(base.params)
        return BubblePoint(base, tuple(t if t is INF else K.convert(t) for t in tail))

    @property
    def params(self) -> tuple[str, ...]:
        return self.base.params

    @property
    def order(self) -> int:
        return len(self.tail)

    @property
    def is_proper(self) -> bool:
        return not self.tail

    @property
    def parent(self) -> "BubblePoint":
        if not self.tail:
            raise ValueError("a proper point has no parent")
        return BubblePoint(self.base, self.tail[:-1])

    def child(self, t) -> "BubblePoint":
        return BubblePoint(self.base, self.tail + (t,))

    def lift(self, params: tuple[str, ...]) -> "BubblePoint":
        if params == self.params:
            return self
        src = self.params
        return BubblePoint(self.base.lift(params),
                           tuple(t if t is INF else lift_scalar(t, src, params) for t in self.tail))

    def extends(self, other: "BubblePoint") -> bool:
        """True if self equals other or is infinitely near it."""
        a, b = _common(self, other)
        return a.base == b.base and a.tail[: len(b.tail)] == b.tail

    def same(self, other: "BubblePoint") -> bool:
        a, b = _common(self, other)
        return a == b

    def __str__(self) -> str:
        if not self.tail:
            return str(self.base)
        parts = [str(self.base)] + ["inf" if t is INF else format_scalar(t, self.params) for t in self.tail]
        return "(" + ", ".join(parts) + ")"


def _common(*pts: BubblePoint) -> list[BubblePoint]:
    ctx = join(*(p.params for p in pts))
    return [p.lift(ctx) for p in pts]


# ---------------------------------------------------------------- charts

def chart_images(base: ProjPoint, ring: PolyRing) -> list[PolyElement]:
    """x, y, z expressed in the affine chart centred at `base`."""
    u, v = ring.gens
    a, b, c = (ring.domain.convert(t) for t in base.coords)
    one = ring.one
    if c:
        return [u + a, v + b, one]
    if b:
        return [u + a, one, v]
    return [one, u, v]


def local_chart(f: PolyElement, base: ProjPoint) -> PolyElement:
    ring = uv_ring(base.params)
    return substitute_raw(f, chart_images(base, ring), ring)


def divide_u(g: PolyElement, m: int) -> PolyElement:
    if m == 0:
        return g
    out = {}
    for (i, j), c in g.terms():
        if i < m:
            raise AlgebraError("strict transform is not divisible by the exceptional coordinate")
        out[(i - m, j)] = c
    return g.ring(out)


def blow_up(g: PolyElement, t, m: int) -> PolyElement:
    """Transform of g at the point with value t on the new exceptional curve,
    divided by u^m."""
    ring = g.ring
    u, v = ring.gens
    images = [u * v, u] if t is INF else [u, u * (v + t)]
    return divide_u(substitute_raw(g, images, ring), m)


def order_at_origin(g: PolyElement) -> int:
    return total_order(g) if g else 10**9


@dataclass(frozen=True)
class LocalCurve:
    """Strict transform in the chart whose origin is `point`."""

    poly: PolyElement
    point: BubblePoint

    @property
    def multiplicity(self) -> int:
        return 0 if self.poly.coeff(1) else total_order(self.poly)

    def vanishes(self) -> bool:
        return not self.poly.coeff(1)


def localize(curve: HomPoly, p: BubblePoint) -> LocalCurve:
    if curve.is_zero():
        raise AlgebraError("the zero polynomial defines no curve")
    ctx = join(curve.params, p.params)
    curve, p = curve.lift(ctx), p.lift(ctx)
    g = local_chart(curve.poly, p.base)
    for t in p.tail:
        m = 0 if g.coeff(1) else total_order(g)
        g = blow_up(g, t, m)
    return LocalCurve(g, p)


def passes_through(curve: HomPoly, p: BubblePoint) -> bool:
    return localize(curve, p).vanishes()


def multiplicity(curve: HomPoly, p: BubblePoint) -> int:
    return localize(curve, p).multiplicity


# ---------------------------------------------------------------- proximity

def proximate(p: BubblePoint, q: BubblePoint) -> bool:
    """p lies on the strict transform of the exceptional curve of q.

    Reading the chart transitions: the exceptional curve of q is u = 0 at q's
    first-neighbourhood point; an INF step turns it into v = 0, which then
    survives only through steps with value 0.
    """
    p, q = _common(p, q)
    if not p.extends(q) or p.order <= q.order:
        return False
    ext = p.tail[q.order:]
    if len(ext) == 1:
        return True
    return ext[1] is INF and all(t is not INF and not t for t in ext[2:])


def proximate_by_transform(p: BubblePoint, q: BubblePoint) -> bool:
    """Same predicate, computed by transforming the exceptional curve."""
    p, q = _common(p, q)
    if not p.extends(q) or p.order <= q.order:
        return False
    ring = uv_ring(p.params)
    e = ring.gens[0]
    for t in p.tail[q.order + 1:]:
        m = 0 if e.coeff(1) else total_order(e)
        e = blow_up(e, t, m)
    return not e.coeff(1)


def satellite(p: BubblePoint, q: BubblePoint) -> bool:
    return proximate(p, q) and p.order > q.order + 1


# ---------------------------------------------------------------- lines

def line_through(p: ProjPoint, q: ProjPoint) -> HomPoly:
    ctx = join(p.params, q.params)
    a, b = p.lift(ctx).coords, q.lift(ctx).coords
    R = xyz_ring(ctx)
    x, y, z = R.gens
    coef = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    if not any(coef):
        raise AlgebraError("points coincide")
    return HomPoly.of(coef[0] * x + coef[1] * y + coef[2] * z, 1).normalized()


def tangent_line(p: BubblePoint) -> HomPoly:
    """The line through the proper point of p in the direction of p's first
    tail entry."""
    base, t = p.base, p.tail[0]
    R = xyz_ring(p.params)
    x, y, z = R.gens
    a, b, c = base.coords
    if c:
        f = x - a * z if t is INF else y - b * z - t * (x - a * z)
    elif b:
        f = x - a * y if t is INF else z - t * (x - a * y)
    else:
        f = y if t is INF else z - t * y
    return HomPoly.of(f, 1).normalized()


def candidate_lines(points: Sequence[BubblePoint]) -> list[HomPoly]:
    """Lines that could pass through at least two of the points."""
    out: list[HomPoly] = []
    proper = []
    for p in points:
        if p.is_proper:
            proper.append(p.base)
        else:
            out.append(tangent_line(p))
    for a, b in combinations(proper, 2):
        if a != b:
            out.append(line_through(a, b))
    uniq = []
    for L in out:
        if L not in uniq:
            uniq.append(L)
    return uniq


# ---------------------------------------------------------------- arcs

class ArcError(ValueError):
    pass


PRECISION = 96


@dataclass(frozen=True)
class Arc:
    """Polynomial arc s -> [X(s):Y(s):Z(s)] with coefficient lists."""

    coords: tuple  # three tuples of field elements, index = power of s
    params: tuple[str, ...] = ()


def _poly_mul(a, b, K):
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add(a, b, K):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else K.zero) + (b[i] if i < len(b) else K.zero) for i in range(n)]


def arc_through(p: BubblePoint) -> Arc:
    """A polynomial arc whose lift passes through p (and is otherwise generic)."""
    K = field(p.params)
    # (u, v) = (s, 5s + 7s^2 + 11s^3) in the chart of p
    u = [K.zero, K.one]
    v = [K.zero, K(5), K(7), K(11)]
    for t in reversed(p.tail):
        if t is INF:
            u, v = _poly_mul(u, v, K), u
        else:
            v = _poly_mul(u, _poly_add(v, [t], K), K)
    a, b, c = p.base.coords
    if c:
        X, Y, Z = _poly_add(u, [a], K), _poly_add(v, [b], K), [K.one]
    elif b:
        X, Y, Z = _poly_add(u, [a], K), [K.one], v
    else:
        X, Y, Z = [K.one], u, v
    return Arc((tuple(X), tuple(Y), tuple(Z)), p.params)


def map_arc(arc: Arc, comps: Sequence[PolyElement]) -> Arc:
    """Image of the arc under the polynomial triple, common s-power removed."""
    ctx = join(arc.params, params_of(comps[0].ring.domain))
    K = field(ctx)
    X = [[lift_scalar(c, arc.params, ctx) for c in co] for co in arc.coords]
    out = []
    for f in comps:
        f = lift_poly(f, ctx)
        acc = [K.zero]
        for mon, c in f.terms():
            term = [K.convert(c)]
            for i, e in enumerate(mon):
                for _ in range(e):
                    term = _poly_mul(term, X[i], K)
            acc = _poly_add(acc, term, K)
        out.append(acc)
    vals = [min((i for i, c in enumerate(co) if c), default=None) for co in out]
    if all(v is None for v in vals):
        raise ArcError("the arc is contracted to nothing")
    shift = min(v for v in vals if v is not None)
    out = [tuple(co[shift:]) if any(co) else (K.zero,) for co in out]
    return Arc(tuple(out), ctx)


def _series(co, n, K):
    s = list(co[:n]) + [K.zero] * max(0, n - len(co))
    return s


def _ser_div(a, b, n, K):
    """a / b for series with b[0] != 0, to n terms."""
    inv0 = K.one / b[0]
    q = []
    for i in range(n):
        acc = a[i] if i < len(a) else K.zero
        for j in range(1, i + 1):
            if j < len(b) and b[j]:
                acc -= b[j] * q[i - j]
        q.append(acc * inv0)
    return q


def _val(s):
    for i, c in enumerate(s):
        if c:
            return i
    return None


def point_of_arc(arc: Arc, depth: int, precision: int = PRECISION) -> BubblePoint:
    """The point of order `depth` on the lift of the arc."""
    K = field(arc.params)
    N = precision
    X, Y, Z = (_series(co, N, K) for co in arc.coords)
    base = ProjPoint.of([X[0], Y[0], Z[0]], arc.params)
    a, b, c = base.coords
    if c:
        u, v = _ser_div(X, Z, N, K), _ser_div(Y, Z, N, K)
        u[0] -= a
        v[0] -= b
    elif b:
        u, v = _ser_div(X, Y, N, K), _ser_div(Z, Y, N, K)
        u[0] -= a
    else:
        u, v = _ser_div(Y, X, N, K), _ser_div(Z, X, N, K)
    tail = []
    n = N
    for _ in range(depth):
        ou, ov = _val(u[:n]), _val(v[:n])
        if ou is None and ov is None:
            raise ArcError("insufficient precision while following the arc")
        if ov is None or (ou is not None and ov >= ou):
            k = ou
            uu, vv = u[k:n], v[k:n]
            n -= k
            q = _ser_div(vv, uu, n, K)
            t = q[0]
            q[0] = K.zero
            tail.append(t)
            v = q
        else:
            k = ov
            uu, vv = u[k:n], v[k:n]
            n -= k
            q = _ser_div(uu, vv, n, K)
            tail.append(INF)
            u, v = v, q
        if n < 4:
            raise ArcError("insufficient precision while following the arc")
    return BubblePoint(base, tuple(tail))


def transform_point(p: BubblePoint, aut: ProjAut) -> BubblePoint:
    """Image of a bubble point under an automorphism."""
    ctx = join(p.params, aut.params)
    p, aut = p.lift(ctx), aut.lift(ctx)
    if p.is_proper:
        return BubblePoint(aut(p.base))
    comps = [f.poly for f in aut.forms()]
    arc = arc_through(p)
    # the series steps consume at most the arc's degree in total
    need = 2 * max(len(co) for co in arc.coords) + 8
    return point_of_arc(map_arc(arc, comps), p.order, min(need, PRECISION))


# ---------------------------------------------------------------- conics

CONIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def conic_matrix(C: HomPoly):
    t = C.terms
    K = field(C.params)
    g = lambda m: t.get(m, K.zero)
    half = K(1) / 2
    return [[g((2, 0, 0)), g((1, 1, 0)) * half, g((1, 0, 1)) * half],
            [g((1, 1, 0)) * half, g((0, 2, 0)), g((0, 1, 1)) * half],
            [g((1, 0, 1)) * half, g((0, 1, 1)) * half, g((0, 0, 2))]]


def is_irreducible_conic(C: HomPoly) -> bool:
    return C.degree == 2 and bool(det3(conic_matrix(C), field(C.params)))


def _check_conic_configuration(points: Sequence[BubblePoint]) -> None:
    if len(points) != 5:
        raise ConfigurationError("a conic is determined by exactly five points")
    for i, j in combinations(range(5), 2):
        if points[i].same(points[j]):
            raise ConfigurationError(f"points {i + 1} and {j + 1} coincide")
    for p in points:
        if not p.is_proper and not any(p.parent.same(q) for q in points):
            raise ConfigurationError(f"{p} is given without the point it is infinitely near to")
    for p in points:
        for q in points:
            if satellite(p, q):
                raise ConfigurationError(
                    f"{p} is satellite to {q}; no smooth conic passes through a satellite point")
    for q in points:
        kids = [p for p in points if not p.is_proper and p.parent.same(q)]
        if len(kids) > 1:
            raise ConfigurationError(f"two points in the first neighbourhood of {q}; a smooth conic has one tangent")
    for L in candidate_lines(points):
        on = [p for p in points if passes_through(L, p)]
        if len(on) >= 3:
            raise ConfigurationError(
                "collinear triple " + ", ".join(str(p) for p in on[:3]) + f" on the line {L}")


def conic_through(points: Sequence[BubblePoint]) -> HomPoly:
    """The unique irreducible conic through five bubble points forming chains."""
    pts = _common(*points)
    _check_conic_configuration(pts)
    ctx = pts[0].params
    K = field(ctx)
    R = xyz_ring(ctx)
    x, y, z = R.gens
    monos = [x**a * y**b * z**c for a, b, c in CONIC_MONOMIALS]
    rows = []
    for p in pts:
        basis = [local_chart(m, p.base) for m in monos]
        for t in p.tail:
            # impose passing through the previous point, then blow up once
            basis = [blow_up(g - g.coeff(1), t, 1) for g in basis]
        rows.append([g.coeff(1) for g in basis])
    ns = nullspace(rows, K)
    if len(ns) != 1:
        raise ConfigurationError(f"degenerate linear system (kernel dimension {len(ns)})")
    C = HomPoly.of(sum((c * m for c, m in zip(ns[0], monos)), R.zero), 2).normalized()
    if not is_irreducible_conic(C):
        raise ConfigurationError("the conic through these points is reducible")
    for p in pts:
        assert passes_through(C, p)
    return C


def _eval(C: HomPoly, p: ProjPoint):
    return peval(C.poly, p.coords)


def _gradient(C: HomPoly, p: ProjPoint):
    return [peval(C.poly.diff(g), p.coords) for g in C.poly.ring.gens]


def rational_point_on_conic(C: HomPoly) -> ProjPoint:
    from .exact_algebra import rational_roots, t_ring
    ctx = C.params
    K = field(ctx)
    cands = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1),
             (1, -1, 0), (1, 0, -1), (0, 1, -1)]
    for c in cands:
        p = ProjPoint.of(c, ctx)
        if not _eval(C, p):
            return p
    T = t_ring(ctx)
    t = T.gens[0]
    for images in ([T.zero, t, T.one], [t, T.zero, T.one], [t, T.one, T.zero]):
        f = substitute_raw(C.poly, images, T)
        roots, _ = rational_roots(f)
        for r in roots:
            vals = [r if im == t else (K.zero if not im else K.one) for im in images]
            return ProjPoint.of(vals, ctx)
    raise ConfigurationError(f"no rational point found on the conic {C}")


def points_on_conic(C: HomPoly, start: Sequence[ProjPoint], count: int) -> list[ProjPoint]:
    """Extend `start` to `count` distinct rational points of C."""
    ctx = C.params
    K = field(ctx)
    pts = list(start)
    if not pts:
        pts.append(rational_point_on_conic(C))
    P = pts[0]
    M = conic_matrix(C)

    def B(a, b):
        return sum((a[i] * M[i][j] * b[j] for i in range(3) for j in range(3)), K.zero)

    k = 0
    while len(pts) < count:
        k += 1
        Q = (K(k), K(2 * k + 1), K(1)) if k % 2 else (K(1), K(k), K(-k - 2))
        cq = B(Q, Q)
        bpq = B(P.coords, Q)
        if not cq:
            R_ = ProjPoint.of(Q, ctx)
        elif not bpq:
            continue
        else:
            lam = -2 * bpq / cq
            R_ = ProjPoint.of([P.coords[i] + lam * Q[i] for i in range(3)], ctx)
        if all(R_ != q for q in pts):
            pts.append(R_)
        if k > 200:
            raise ConfigurationError("could not find enough rational points on the conic")
    return pts


def _standard_frame(C: HomPoly, pts: Sequence[ProjPoint]) -> ProjAut:
    """Automorphism sending C to xz - y^2 and pts[0..2] to e1, e3, e4."""
    g1, g2 = _gradient(C, pts[0]), _gradient(C, pts[1])
    T = [g1[1] * g2[2] - g1[2] * g2[1], g1[2] * g2[0] - g1[0] * g2[2], g1[0] * g2[1] - g1[1] * g2[0]]
    T = ProjPoint.of(T, C.params)
    e1, e2, e3, e4 = e_points(C.params)
    return solve_4pt([pts[0], pts[1], pts[2], T], [e1, e3, e4, e2])


def conic_marked_aut(C1: HomPoly, marks1: Sequence[ProjPoint], C2: HomPoly,
                     marks2: Sequence[ProjPoint]) -> ProjAut:
    """Automorphism alpha with alpha(C1) = C2 and alpha(marks1[i]) = marks2[i]."""
    ctx = join(C1.params, C2.params, *(p.params for p in list(marks1) + list(marks2)))
    C1, C2 = C1.lift(ctx), C2.lift(ctx)
    m1 = [p.lift(ctx) for p in marks1]
    m2 = [p.lift(ctx) for p in marks2]
    if len(m1) != len(m2) or len(m1) > 3:
        raise ConfigurationError("mark lists must have equal length at most 3")
    for C in (C1, C2):
        if not is_irreducible_conic(C):
            raise ConfigurationError(f"{C} is not an irreducible conic")
    for C, ms in ((C1, m1), (C2, m2)):
        for p in ms:
            if _eval(C, p):
                raise ConfigurationError(f"mark {p} is not on the conic {C}")
        if len(set(ms)) != len(ms):
            raise ConfigurationError("marks are not distinct")
    P = points_on_conic(C1, m1, 3)
    Q = points_on_conic(C2, m2, 3)
    alpha = _standard_frame(C2, Q).inverse() @ _standard_frame(C1, P)
    return alpha


def curve_under(curve: HomPoly, aut: ProjAut) -> HomPoly:
    """Equation of aut(curve): curve composed with the inverse of aut."""
    inv = aut.inverse()
    ctx = join(curve.params, aut.params)
    forms = [f.lift(ctx) for f in inv.forms()]
    from .exact_algebra import poly_substitute
    return poly_substitute(curve.lift(ctx), *forms).normalized()
