"""Connected trivalent semi-graphs of type (g, r).

A semi-graph has internal edges (unordered vertex pairs, loops allowed,
multi-edges allowed) and labeled legs (half-edges at a vertex carrying a
marked-point index).  Trivalence counts a loop twice.  Types obey
#V = 2g - 2 + r and #E = 3g - 3 + r; legs are labeled, vertex labels are
quotiented out by the canonical form.
"""

from dataclasses import dataclass
from itertools import permutations

from dormant.errors import CapExceeded, Disconnected, NotTrivalent

ENUM_CAP = 6  # on 3g - 3 + r


@dataclass(frozen=True)
class TrivalentSemiGraph:
    n_vertices: int
    edges: tuple  # sorted tuple of (u, v), u <= v; (v, v) is a loop
    legs: tuple  # legs[i] = vertex carrying leg number i+1

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges))
        )
        object.__setattr__(self, "legs", tuple(self.legs))

    def to_json(self):
        return {
            "vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "legs": [[v, i + 1] for i, v in enumerate(self.legs)],
        }

    @staticmethod
    def from_json(obj):
        legs = [None] * len(obj["legs"])
        for v, i in obj["legs"]:
            legs[i - 1] = v
        return TrivalentSemiGraph(
            n_vertices=obj["vertices"],
            edges=tuple(tuple(e) for e in obj["edges"]),
            legs=tuple(legs),
        )


def degrees(G):
    deg = [0] * G.n_vertices
    for u, v in G.edges:
        deg[u] += 1
        deg[v] += 1
    for v in G.legs:
        deg[v] += 1
    return deg


def validate(G):
    """Type (g, r) of the semi-graph; trivalence and connectivity checked."""
    deg = degrees(G)
    bad = [v for v, d in enumerate(deg) if d != 3]
    if bad:
        raise NotTrivalent(f"vertices {bad} do not have exactly 3 incidences")
    if G.n_vertices == 0:
        raise Disconnected("empty graph")
    seen = {0}
    stack = [0]
    adj = [[] for _ in range(G.n_vertices)]
    for u, v in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != G.n_vertices:
        raise Disconnected("semi-graph is not connected")
    g = len(G.edges) - G.n_vertices + 1
    r = len(G.legs)
    return (g, r)


def canonical_form(G):
    """Lexicographically least encoding over vertex relabelings; legs keep
    their labels."""
    best = None
    for perm in permutations(range(G.n_vertices)):
        edges = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in G.edges))
        legs = tuple(perm[v] for v in G.legs)
        enc = (G.n_vertices, edges, legs)
        if best is None or enc < best:
            best = enc
    return best


def canonicalize(G):
    n, edges, legs = canonical_form(G)
    return TrivalentSemiGraph(n, edges, legs)


def enumerate_graphs(g, r, cap=ENUM_CAP):
    """All isomorphism classes of connected trivalent semi-graphs of type
    (g, r), legs labeled."""
    if 3 * g - 3 + r > cap:
        raise CapExceeded(f"3g-3+r = {3 * g - 3 + r} exceeds cap {cap}")
    if 2 * g - 2 + r <= 0:
        raise ValueError("need 2g - 2 + r > 0")
    nv = 2 * g - 2 + r
    ne = 3 * g - 3 + r
    out = {}
    slots = [(u, v) for u in range(nv) for v in range(u, nv)]
    for leg_assign in _leg_assignments(nv, r):
        deg = [0] * nv
        for v in leg_assign:
            deg[v] += 1
        if any(d > 3 for d in deg):
            continue
        rem = [3 - d for d in deg]
        for counts in _edge_fills(rem, slots, 0, ne):
            edges = []
            for (u, v), c in zip(slots, counts):
                edges.extend([(u, v)] * c)
            G = TrivalentSemiGraph(nv, tuple(edges), tuple(leg_assign))
            try:
                validate(G)
            except (NotTrivalent, Disconnected):
                continue
            key = canonical_form(G)
            if key not in out:
                out[key] = TrivalentSemiGraph(*key)
    return sorted(out.values(), key=canonical_form)


def _leg_assignments(nv, r):
    if r == 0:
        yield ()
        return
    def rec(i):
        if i == r:
            yield ()
            return
        for v in range(nv):
            for rest in rec(i + 1):
                yield (v,) + rest
    yield from rec(0)


def _edge_fills(rem, slots, idx, budget):
    """All ways to fill edge multiplicities matching remaining degrees."""
    if idx == len(slots):
        if budget == 0 and all(x == 0 for x in rem):
            yield ()
        return
    u, v = slots[idx]
    unit = 2 if u == v else 1
    limit = min(budget, rem[u] // unit if u == v else min(rem[u], rem[v]))
    for c in range(limit + 1):
        rem[u] -= c * unit if u == v else c
        if u != v:
            rem[v] -= c
        ok = rem[u] >= 0 and rem[v] >= 0
        if ok:
            for rest in _edge_fills(rem, slots, idx + 1, budget - c):
                yield (c,) + rest
        rem[u] += c * unit if u == v else c
        if u != v:
            rem[v] += c


def glue_tree(G1, G2):
    """Join the last legs of G1 and G2 into an internal edge; the remaining
    legs of G1 come first, then those of G2."""
    g1, r1 = validate(G1)
    g2, r2 = validate(G2)
    if r1 == 0 or r2 == 0:
        raise ValueError("both graphs need a last leg to glue")
    off = G1.n_vertices
    edges = list(G1.edges) + [(u + off, v + off) for u, v in G2.edges]
    edges.append(tuple(sorted((G1.legs[-1], G2.legs[-1] + off))))
    legs = G1.legs[:-1] + tuple(v + off for v in G2.legs[:-1])
    return TrivalentSemiGraph(G1.n_vertices + G2.n_vertices, tuple(edges), legs)


def glue_loop(G):
    """Fuse the last two legs of G into an internal edge."""
    g, r = validate(G)
    if r < 2:
        raise ValueError("need at least two legs")
    edges = list(G.edges)
    edges.append(tuple(sorted((G.legs[-2], G.legs[-1]))))
    return TrivalentSemiGraph(G.n_vertices, tuple(edges), G.legs[:-2])
