"""Weighted proximity digraphs of base points, and their enrichment by a line."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Optional, Sequence

from .bubble import candidate_lines, passes_through


@dataclass(frozen=True)
class ProximityGraph:
    weights: tuple  # vertex -> positive int
    arcs: frozenset  # (i, j): vertex i is proximate to vertex j

    @staticmethod
    def of(weights: Sequence[int], arcs) -> "ProximityGraph":
        return ProximityGraph(tuple(weights), frozenset((int(a), int(b)) for a, b in arcs))

    @property
    def n(self) -> int:
        return len(self.weights)

    def out(self, i: int) -> list[int]:
        return sorted(j for a, j in self.arcs if a == i)

    def into(self, j: int) -> list[int]:
        return sorted(a for a, b in self.arcs if b == j)

    def is_proper(self, i: int) -> bool:
        return not self.out(i)

    def parent(self, i: int) -> Optional[int]:
        """The vertex whose first neighbourhood contains i."""
        outs = self.out(i)
        if not outs:
            return None
        if len(outs) == 1:
            return outs[0]
        v, w = outs
        return v if (v, w) in self.arcs else w

    def satellite_pairs(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, j in self.arcs if self.parent(i) != j)

    def components(self) -> int:
        root = list(range(self.n))

        def find(a):
            while root[a] != a:
                a = root[a]
            return a

        for a, b in self.arcs:
            root[find(a)] = find(b)
        return len({find(i) for i in range(self.n)})

    def relabel(self, perm: Sequence[int]) -> "ProximityGraph":
        """Vertex i becomes perm[i]."""
        w = [0] * self.n
        for i, wt in enumerate(self.weights):
            w[perm[i]] = wt
        return ProximityGraph.of(w, ((perm[a], perm[b]) for a, b in self.arcs))

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "arcs": sorted([a, b] for a, b in self.arcs)}


@dataclass(frozen=True)
class EnrichedGraph:
    graph: ProximityGraph
    line: Optional[frozenset] = None

    def relabel(self, perm: Sequence[int]) -> "EnrichedGraph":
        line = None if self.line is None else frozenset(perm[i] for i in self.line)
        return EnrichedGraph(self.graph.relabel(perm), line)

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["line"] = None if self.line is None else sorted(self.line)
        return out


# ---------------------------------------------------------------- admissibility

def violations(g: ProximityGraph) -> list[str]:
    """Reasons why g is not admissible (empty when it is)."""
    bad = []
    if any(w < 1 for w in g.weights):
        bad.append("weights must be positive")
    if any(a == b for a, b in g.arcs):
        bad.append("self loop")
    # acyclic: repeatedly strip sinks
    alive = set(range(g.n))
    while True:
        sinks = {v for v in alive if not any(a == v and b in alive for a, b in g.arcs)}
        if not sinks:
            break
        alive -= sinks
    if alive:
        bad.append("graph has a directed cycle")
    for v in range(g.n):
        outs = g.out(v)
        if len(outs) > 2:
            bad.append(f"vertex {v} has outdegree {len(outs)} > 2")
        elif len(outs) == 2:
            a, b = outs
            if (a, b) not in g.arcs and (b, a) not in g.arcs:
                bad.append(f"targets {a}, {b} of vertex {v} are not joined by an arrow")
    for v, w in combinations(range(g.n), 2):
        common = [u for u in range(g.n) if (u, v) in g.arcs and (u, w) in g.arcs]
        if len(common) > 1:
            bad.append(f"vertices {common} all point to both {v} and {w}")
    for v in range(g.n):
        load = sum(g.weights[u] for u in g.into(v))
        if load > g.weights[v]:
            bad.append(f"proximity inequality fails at vertex {v}: {g.weights[v]} < {load}")
    return bad


def is_admissible(g: ProximityGraph) -> bool:
    return not violations(g)


# ---------------------------------------------------------------- isomorphism

def _perms(w1: Sequence[int], w2: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if sorted(w1) != sorted(w2):
        return
    for perm in permutations(range(len(w1))):
        if all(w1[i] == w2[perm[i]] for i in range(len(w1))):
            yield perm


def _as_enriched(g) -> EnrichedGraph:
    return g if isinstance(g, EnrichedGraph) else EnrichedGraph(g)


def isomorphisms(g1, g2) -> Iterator[tuple[int, ...]]:
    """Vertex bijections perm with g1.relabel(perm) == g2."""
    e1, e2 = _as_enriched(g1), _as_enriched(g2)
    if len(e1.graph.arcs) != len(e2.graph.arcs) or (e1.line is None) != (e2.line is None):
        return
    for perm in _perms(e1.graph.weights, e2.graph.weights):
        if e1.relabel(perm) == e2:
            yield perm


def isomorphic(g1, g2) -> bool:
    return next(isomorphisms(g1, g2), None) is not None


def canonical_key(g) -> tuple:
    e = _as_enriched(g)
    best = None
    for perm in _perms(e.graph.weights, sorted(e.graph.weights, reverse=True)):
        r = e.relabel(perm)
        key = (r.graph.weights, tuple(sorted(r.graph.arcs)),
               () if r.line is None else tuple(sorted(r.line)), r.line is None)
        if best is None or key < best:
            best = key
    return best


# ---------------------------------------------------------------- enumeration

CUBIC_WEIGHTS = (2, 1, 1, 1, 1)


def _dedup(graphs) -> list:
    seen, out = set(), []
    for g in graphs:
        k = canonical_key(g)
        if k not in seen:
            seen.add(k)
            out.append(g)
    return out


def enumerate_graphs(weights: Sequence[int] = CUBIC_WEIGHTS, order: Optional[Sequence] = None
                     ) -> list[ProximityGraph]:
    """All admissible graphs on the given weights, built by adding one arrow at
    a time.  `order` permutes the candidate arrows (the result must not
    depend on it)."""
    n = len(weights)
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    if order is not None:
        pairs = [pairs[i] for i in order]
    level = [ProximityGraph.of(weights, ())]
    found = list(level)
    while level:
        nxt = []
        for g in level:
            for arc in pairs:
                if arc in g.arcs:
                    continue
                h = ProximityGraph(g.weights, g.arcs | {arc})
                if is_admissible(h):
                    nxt.append(h)
        level = _dedup(nxt)
        found.extend(level)
    return _dedup(found)


def line_candidates(g: ProximityGraph) -> list[frozenset]:
    """Vertex triples a line could pass through in a cubic configuration."""
    double = [i for i, w in enumerate(g.weights) if w > 1]
    heavy_tree = set(double)
    changed = True
    while changed:
        changed = False
        for i in range(g.n):
            p = g.parent(i)
            if p is not None and p in heavy_tree and i not in heavy_tree:
                heavy_tree.add(i)
                changed = True
    simple = [i for i in range(g.n) if i not in heavy_tree]
    sats = {i for i, _ in g.satellite_pairs()}
    out = []
    for trio in combinations(simple, 3):
        s = set(trio)
        if s & sats:
            continue
        # closed under parents, and a chain: at most one member child per member
        if any(g.parent(i) is not None and g.parent(i) not in s for i in trio):
            continue
        if any(sum(1 for j in trio if g.parent(j) == i) > 1 for i in trio):
            continue
        out.append(frozenset(trio))
    return out


def enumerate_enriched(graphs: Optional[Sequence[ProximityGraph]] = None) -> list[EnrichedGraph]:
    graphs = enumerate_graphs() if graphs is None else graphs
    out = []
    for g in graphs:
        out.append(EnrichedGraph(g))
        out.extend(EnrichedGraph(g, L) for L in line_candidates(g))
    return _dedup(out)


# ---------------------------------------------------------------- from base points

def graph_of(tree) -> ProximityGraph:
    return ProximityGraph.of(tree.mults, tree.arrows)


def enriched_graph_of(tree) -> EnrichedGraph:
    line = None if tree.line is None else frozenset(tree.line.members)
    return EnrichedGraph(graph_of(tree), line)


def find_unexpected_line(tree):
    """The line through exactly three simple base points, if any."""
    from .cremona import LineData, NotBirational

    simple = [i for i, m in enumerate(tree.mults) if m == 1]
    pts = [tree.points[i] for i in simple]
    hits = []
    for L in candidate_lines(pts):
        members = tuple(i for i in simple if passes_through(L, tree.points[i]))
        if len(members) >= 4:
            raise NotBirational("a line contains four simple base points")
        if len(members) == 3:
            hits.append(LineData(L, members))
    if len(hits) > 1:
        raise NotBirational("two lines each contain three base points")
    if hits and any(passes_through(hits[0].line, tree.points[i])
                    for i, m in enumerate(tree.mults) if m > 1):
        raise NotBirational("a line through three base points meets the double point")
    return hits[0] if hits else None


# ---------------------------------------------------------------- export

def to_dot(g, name: str = "G", labels: Optional[Sequence[str]] = None) -> str:
    e = _as_enriched(g)
    lines = [f"digraph {name} {{"]
    for i, w in enumerate(e.graph.weights):
        shape = "doublecircle" if e.graph.is_proper(i) else "circle"
        label = f"{w}" if labels is None else f"{w}\\n{labels[i]}"
        lines.append(f'  v{i} [label="{label}", shape={shape}];')
    for a, b in sorted(e.graph.arcs):
        lines.append(f"  v{a} -> v{b};")
    if e.line is not None:
        members = sorted(e.line)
        for a, b in zip(members, members[1:]):
            lines.append(f"  v{a} -> v{b} [style=dashed, dir=none, color=blue];")
    lines.append("}")
    return "\n".join(lines)
