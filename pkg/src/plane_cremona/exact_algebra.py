"""Exact arithmetic: coefficient fields, homogeneous polynomials in x, y, z,
projective points and 3x3 projective automorphisms.

Coefficients live in QQ or in a purely transcendental extension QQ(params).
Polynomial arithmetic is delegated to sympy's sparse polynomial rings.
A parameter context is a sorted tuple of parameter names; objects from
different contexts are lifted to the union context before they interact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import gmpy2  # noqa: F401  (sympy's QQ runs on gmpy2 rationals when it is importable)
from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

RESERVED = frozenset("xyzuvts")
VARS = ("x", "y", "z")


class AlgebraError(ValueError):
    """Invalid algebraic input (degree mismatch, singular matrix, ...)."""


class UnsupportedField(ValueError):
    """The computation needs numbers outside the coefficient field."""


# ---------------------------------------------------------------- contexts

def context(params: Iterable[str] = ()) -> tuple[str, ...]:
    names = tuple(sorted(set(params)))
    for n in names:
        if n in RESERVED:
            raise AlgebraError(f"parameter name {n!r} is reserved")
    return names


def join(*ctxs: Sequence[str]) -> tuple[str, ...]:
    out: set[str] = set()
    for c in ctxs:
        out.update(c)
    return context(out)


@lru_cache(maxsize=None)
def field(params: tuple[str, ...] = ()):
    if not params:
        return QQ
    return QQ.frac_field(*[Symbol(p) for p in params])


def params_of(domain) -> tuple[str, ...]:
    if domain == QQ:
        return ()
    return context(str(s) for s in domain.symbols)


@lru_cache(maxsize=None)
def xyz_ring(params: tuple[str, ...] = ()) -> PolyRing:
    return PolyRing(VARS, field(params), grlex)


@lru_cache(maxsize=None)
def uv_ring(params: tuple[str, ...] = ()) -> PolyRing:
    return PolyRing(("u", "v"), field(params), grlex)


@lru_cache(maxsize=None)
def t_ring(params: tuple[str, ...] = ()) -> PolyRing:
    return PolyRing(("t",), field(params), grlex)


@lru_cache(maxsize=None)
def _flat_ring(nvars: int, params: tuple[str, ...]) -> PolyRing:
    names = tuple(f"w{i}" for i in range(nvars)) + tuple(f"p_{p}" for p in params)
    return PolyRing(names, QQ, grlex)


def param(name: str, params: tuple[str, ...]):
    """The parameter `name` as an element of field(params)."""
    K = field(params)
    return K.gens[params.index(name)]


def lift_scalar(c, src: tuple[str, ...], dst: tuple[str, ...]):
    if src == dst:
        return c
    return field(dst).convert(c, field(src))


def lift_poly(p: PolyElement, dst: tuple[str, ...]) -> PolyElement:
    src = params_of(p.ring.domain)
    if src == dst:
        return p
    ring = PolyRing(p.ring.symbols, field(dst), p.ring.order)
    K, K0 = ring.domain, p.ring.domain
    return ring({m: K.convert(c, K0) for m, c in p.terms()})


def scalar(value, params: tuple[str, ...] = ()):
    """Coerce an int, Fraction, string like '3/4' or domain element."""
    K = field(params)
    if isinstance(value, str):
        from fractions import Fraction
        f = Fraction(value)
        return K.convert(QQ(f.numerator, f.denominator))
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, int):
        try:
            return K.convert(QQ(int(value.numerator), int(value.denominator)))
        except (TypeError, ValueError):
            pass
    return K.convert(value)


def evaluate_scalar(c, src: tuple[str, ...], values: dict, dst: tuple[str, ...]):
    """Substitute parameter values (elements of field(dst)) into c."""
    if not src:
        return field(dst).convert(c, QQ)
    K = field(dst)
    vals = [values.get(p) for p in src]

    def ev(poly):
        acc = K.zero
        for mon, coeff in poly.terms():
            term = K.convert(coeff, poly.ring.domain)
            for v, e, name in zip(vals, mon, src):
                if e:
                    if v is None:
                        v = param(name, dst)
                    term = term * v**e
            acc = acc + term
        return acc

    den = ev(c.denom)
    if not den:
        raise AlgebraError("parameter value makes a denominator vanish")
    return ev(c.numer) / den


# ---------------------------------------------------------------- printing

def _fmt_rat(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(c, params: tuple[str, ...] = ()) -> str:
    if not params:
        return _fmt_rat(QQ.convert(c))
    num, den = c.numer, c.denom
    lead = min(den.terms(), key=_print_key)[1]
    num, den = num.quo_ground(lead), den.quo_ground(lead)
    n = _format_plain(num, params)
    if den == 1:
        return n
    d = _format_plain(den, params)
    if len(num.terms()) > 1:
        n = f"({n})"
    if len(den.terms()) > 1 or "*" in d:
        d = f"({d})"
    return f"{n}/{d}"


def _needs_parens(s: str) -> bool:
    depth = 0
    for ch in s.lstrip("-"):
        depth += ch == "("
        depth -= ch == ")"
        if ch == " " and depth == 0:
            return True
    return False


def _print_key(term):
    return (-sum(term[0]), tuple(-e for e in term[0]))


def _format_plain(p: PolyElement, names: Sequence[str]) -> str:
    """Format a polynomial with rational coefficients."""
    if not p:
        return "0"
    pieces = []
    for mon, c in sorted(p.terms(), key=_print_key):
        c = QQ.convert(c, p.ring.domain)
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mon) if e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_rat(a)}*{mono}"
        else:
            body = _fmt_rat(a)
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_poly(p: PolyElement, names: Sequence[str] = VARS) -> str:
    params = params_of(p.ring.domain)
    if not params:
        return _format_plain(p, names)
    if not p:
        return "0"
    pieces = []
    for mon, c in p.terms():
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mon) if e)
        s = format_scalar(c, params)
        if _needs_parens(s):
            neg, body = False, f"({s})"
        else:
            neg, body = s.startswith("-"), s.lstrip("-")
        if mono:
            body = mono if body == "1" else f"{body}*{mono}"
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------- polynomials

def total_order(p: PolyElement) -> int:
    """Lowest total degree of a nonzero polynomial (order at the origin)."""
    return min(sum(m) for m in p.monoms())


def lowest_form(p: PolyElement) -> PolyElement:
    o = total_order(p)
    return p.ring({m: c for m, c in p.terms() if sum(m) == o})


def monic(p: PolyElement) -> PolyElement:
    return p if not p else p.quo_ground(p.LC)


def _to_flat(p: PolyElement, flat: PolyRing, nparams: int) -> PolyElement:
    dens = [c.denom for c in p.coeffs()]
    L = reduce(lambda a, b: a.lcm(b), dens)
    out = {}
    for mon, c in p.terms():
        num = c.numer * L.exquo(c.denom)
        for pm, pc in num.terms():
            key = mon + pm
            out[key] = out.get(key, 0) + QQ.convert(pc, num.ring.domain)
    return flat({k: v for k, v in out.items() if v})


def _from_flat(q: PolyElement, ring: PolyRing) -> PolyElement:
    K = ring.domain
    nv = ring.ngens
    out: dict = {}
    gens = K.gens
    for mon, c in q.terms():
        coeff = K.convert(c)
        for g, e in zip(gens, mon[nv:]):
            if e:
                coeff = coeff * g**e
        key = mon[:nv]
        out[key] = out.get(key, K.zero) + coeff
    return ring({k: v for k, v in out.items() if v})


def raw_gcd(p: PolyElement, q: PolyElement) -> PolyElement:
    """Monic gcd of two polynomials of the same ring."""
    ring = p.ring
    if not p:
        return monic(q)
    if not q:
        return monic(p)
    if ring.domain == QQ:
        return monic(p.gcd(q))
    params = params_of(ring.domain)
    flat = _flat_ring(ring.ngens, params)
    g = _to_flat(p, flat, len(params)).gcd(_to_flat(q, flat, len(params)))
    return monic(_from_flat(g, ring))


def raw_exquo(p: PolyElement, q: PolyElement) -> PolyElement:
    return p.exquo(q)


def substitute_raw(p: PolyElement, images: Sequence[PolyElement], target: PolyRing) -> PolyElement:
    """Simultaneous substitution of the ring generators of p by `images`."""
    result = target.zero
    powers: list[dict[int, PolyElement]] = [{0: target.one, 1: g} for g in images]

    def pw(i: int, e: int) -> PolyElement:
        cache = powers[i]
        if e not in cache:
            cache[e] = pw(i, e - 1) * images[i]
        return cache[e]

    K0, K = p.ring.domain, target.domain
    for mon, c in p.terms():
        term = target.ground_new(K.convert(c, K0))
        for i, e in enumerate(mon):
            if e:
                term = term * pw(i, e)
        result += term
    return result


@dataclass(frozen=True)
class HomPoly:
    """Homogeneous polynomial in x, y, z with exact coefficients."""

    poly: PolyElement
    degree: int

    @staticmethod
    def of(poly: PolyElement, degree: int | None = None) -> "HomPoly":
        degs = {sum(m) for m in poly.monoms()} if poly else set()
        if len(degs) > 1:
            raise AlgebraError("polynomial is not homogeneous")
        d = degs.pop() if degs else (degree if degree is not None else 0)
        if degree is not None and poly and d != degree:
            raise AlgebraError(f"expected degree {degree}, got {d}")
        return HomPoly(poly, d)

    @property
    def params(self) -> tuple[str, ...]:
        return params_of(self.poly.ring.domain)

    @property
    def terms(self) -> dict:
        return dict(self.poly.terms())

    def is_zero(self) -> bool:
        return not self.poly

    def lift(self, params: tuple[str, ...]) -> "HomPoly":
        return HomPoly(lift_poly(self.poly, params), self.degree)

    def normalized(self) -> "HomPoly":
        return HomPoly(monic(self.poly), self.degree)

    def __call__(self, x, y, z):
        return peval(self.poly, (x, y, z))

    def __str__(self) -> str:
        return format_poly(self.poly)


def peval(f: PolyElement, vals):
    """Evaluate at a point; avoids 0**0 inside fraction fields."""
    K = f.ring.domain
    total = K.zero
    for mon, c in f.terms():
        for v, e in zip(vals, mon):
            if e:
                c = c * v**e
        total += c
    return total


def _common(*polys: HomPoly) -> list[HomPoly]:
    ctx = join(*(p.params for p in polys))
    return [p.lift(ctx) for p in polys]


def poly_gcd(p: HomPoly, q: HomPoly) -> HomPoly:
    p, q = _common(p, q)
    g = raw_gcd(p.poly, q.poly)
    return HomPoly.of(g)


def poly_substitute(p: HomPoly, gx: HomPoly, gy: HomPoly, gz: HomPoly) -> HomPoly:
    p, gx, gy, gz = _common(p, gx, gy, gz)
    nonzero = [g.degree for g in (gx, gy, gz) if not g.is_zero()]
    if len(set(nonzero)) > 1:
        raise AlgebraError("substituted polynomials have different degrees")
    e = nonzero[0] if nonzero else 0
    out = substitute_raw(p.poly, [gx.poly, gy.poly, gz.poly], p.poly.ring)
    return HomPoly.of(out, p.degree * e)


# ---------------------------------------------------------------- points

def normalize_point(coords: Sequence, K) -> tuple:
    a, b, c = coords
    if c:
        return (a / c, b / c, K.one)
    if b:
        return (a / b, K.one, K.zero)
    if a:
        return (K.one, K.zero, K.zero)
    raise AlgebraError("all coordinates of a projective point vanish")


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple
    params: tuple[str, ...] = ()

    @staticmethod
    def of(coords: Sequence, params: tuple[str, ...] = ()) -> "ProjPoint":
        K = field(params)
        return ProjPoint(normalize_point([K.convert(c) for c in coords], K), params)

    def lift(self, params: tuple[str, ...]) -> "ProjPoint":
        if params == self.params:
            return self
        return ProjPoint(tuple(lift_scalar(c, self.params, params) for c in self.coords), params)

    def __str__(self) -> str:
        return "[" + ":".join(format_scalar(c, self.params) for c in self.coords) + "]"


def e_points(params: tuple[str, ...] = ()) -> list[ProjPoint]:
    return [ProjPoint.of(v, params) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]


# ---------------------------------------------------------------- matrices

def _dm(rows, K) -> DomainMatrix:
    return DomainMatrix([[K.convert(c) for c in r] for r in rows], (len(rows), len(rows[0])), K)


def det3(rows, K):
    return _dm(rows, K).det()


def nullspace(rows, K) -> list[list]:
    """Basis of the right kernel of a matrix over K."""
    if not rows:
        raise AlgebraError("empty system")
    return _dm(rows, K).nullspace().to_list()


def solve_linear(rows, rhs, K) -> list:
    """Unique solution of rows * v = rhs, else AlgebraError."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M = _dm(aug, K)
    R, pivots = M.rref()
    if n in pivots:
        raise AlgebraError("inconsistent linear system")
    if len(pivots) < n:
        raise AlgebraError("underdetermined linear system")
    R = R.to_list()
    return [R[i][n] for i in range(n)]


@dataclass(frozen=True)
class ProjAut:
    """Projective automorphism [x:y:z] -> M (x, y, z)^T, canonically scaled."""

    matrix: tuple  # 3 rows of 3 scalars
    params: tuple[str, ...] = ()

    @staticmethod
    def of(rows, params: tuple[str, ...] = ()) -> "ProjAut":
        K = field(params)
        rows = [[K.convert(c) for c in r] for r in rows]
        if not det3(rows, K):
            raise AlgebraError("matrix is singular")
        lead = next(c for r in rows for c in r if c)
        return ProjAut(tuple(tuple(c / lead for c in r) for r in rows), params)

    @staticmethod
    def identity(params: tuple[str, ...] = ()) -> "ProjAut":
        return ProjAut.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], params)

    @property
    def K(self):
        return field(self.params)

    def lift(self, params: tuple[str, ...]) -> "ProjAut":
        if params == self.params:
            return self
        return ProjAut(tuple(tuple(lift_scalar(c, self.params, params) for c in r) for r in self.matrix), params)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        ctx = join(self.params, p.params)
        a, q = self.lift(ctx), p.lift(ctx)
        v = [sum((a.matrix[i][j] * q.coords[j] for j in range(3)), field(ctx).zero) for i in range(3)]
        return ProjPoint.of(v, ctx)

    def __matmul__(self, other: "ProjAut") -> "ProjAut":
        """self @ other is the composite self o other."""
        ctx = join(self.params, other.params)
        a, b = self.lift(ctx), other.lift(ctx)
        K = field(ctx)
        rows = [[sum((a.matrix[i][k] * b.matrix[k][j] for k in range(3)), K.zero) for j in range(3)]
                for i in range(3)]
        return ProjAut.of(rows, ctx)

    def inverse(self) -> "ProjAut":
        M = _dm(self.matrix, self.K).inv()
        return ProjAut.of([[M[i, j].element for j in range(3)] for i in range(3)], self.params)

    def forms(self) -> list[HomPoly]:
        R = xyz_ring(self.params)
        x, y, z = R.gens
        return [HomPoly.of(r[0] * x + r[1] * y + r[2] * z, 1) for r in self.matrix]

    def is_identity(self) -> bool:
        K = self.K
        return all(self.matrix[i][j] == (K.one if i == j else K.zero) for i in range(3) for j in range(3))

    def __str__(self) -> str:
        return "[" + " : ".join(str(f) for f in self.forms()) + "]"


def solve_4pt(ps: Sequence[ProjPoint], qs: Sequence[ProjPoint]) -> ProjAut:
    """The unique automorphism sending ps[i] to qs[i] for i = 0..3."""
    ctx = join(*(p.params for p in list(ps) + list(qs)))
    K = field(ctx)
    ps = [p.lift(ctx) for p in ps]
    qs = [q.lift(ctx) for q in qs]

    def frame(pts, label):
        for tri in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
            if not det3([pts[i].coords for i in tri], K):
                raise AlgebraError(f"{label} points {tuple(i + 1 for i in tri)} are collinear")
        cols = [pts[i].coords for i in range(3)]
        A = [[cols[j][i] for j in range(3)] for i in range(3)]
        lam = solve_linear(A, list(pts[3].coords), K)
        return [[A[i][j] * lam[j] for j in range(3)] for i in range(3)]

    P = ProjAut.of(frame(ps, "source"), ctx)
    Q = ProjAut.of(frame(qs, "target"), ctx)
    return Q @ P.inverse()


# ---------------------------------------------------------------- roots

def rational_roots(f: PolyElement) -> tuple[list, bool]:
    """Distinct roots in the coefficient field of a univariate polynomial.

    The flag is True when an irreducible factor of degree > 1 is present.
    """
    if not f or f.degree() <= 0:
        return [], False
    K = f.ring.domain
    if K == QQ:
        factors = f.factor_list()[1]
    else:
        params = params_of(K)
        flat = _flat_ring(1, params)
        factors = [(_from_flat(g, f.ring), e)
                   for g, e in _to_flat(f, flat, len(params)).factor_list()[1]]
    roots, extra = [], False
    for fac, _mult in factors:
        d = fac.degree()
        if d == 1:
            c1 = fac.coeff(fac.ring.gens[0])
            c0 = fac.coeff(1)
            roots.append(-c0 / c1)
        elif d > 1:
            extra = True
    return roots, extra


def resultant_to_t(p: PolyElement, q: PolyElement) -> PolyElement:
    """Resultant of two bivariate polynomials with respect to the first
    generator, as an element of t_ring."""
    K = p.ring.domain
    params = params_of(K)
    T = t_ring(params)
    if K == QQ:
        r = p.resultant(q)
        return T({m[-1:]: c for m, c in r.terms()}) if r.ring.ngens == 1 else T(r)
    flat = _flat_ring(2, params)
    r = _to_flat(p, flat, len(params)).resultant(_to_flat(q, flat, len(params)))
    return _from_flat(r, T)
