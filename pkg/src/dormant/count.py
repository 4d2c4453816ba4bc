"""Counting engine: admissible edge labelings of trivalent semi-graphs.

A labeling assigns a radius to every internal edge; leg labels are fixed
by the query.  A vertex is happy when its unordered incident triple (a
loop contributes its label twice) is admissible.  Counts are evaluated by
two independent engines — backtracking with unit propagation, and tensor
contraction along a vertex ordering — and checked to agree on every
query; disagreement, like a count that differs between two graphs of the
same type, is an internal invariant violation, not a result.
"""

from dataclasses import dataclass, field

from dormant.errors import (
    GraphDependence,
    IdentityViolated,
    LiftNotAdmissible,
    TableMissing,
    UnknownQuery,
)
from dormant.graphs import TrivalentSemiGraph, enumerate_graphs, validate
from dormant.oper import AdmissibilityTable, vertex_table
from dormant.radii import Radius, enum_Xi2, radius_from_edge_number, edge_numbers_for_radius


@dataclass(frozen=True)
class CountQuery:
    p: int
    N: int
    g: int
    r: int
    rho: tuple = ()  # r radii (reps or Radius)

    def reps(self):
        return tuple(x.rep if isinstance(x, Radius) else int(x) for x in self.rho)


@dataclass
class FusionTensor:
    """Symmetric 0/1 tensor over the radius index set."""

    p: int
    N: int
    reps: tuple
    admissible: frozenset

    @staticmethod
    def from_table(table):
        reps = tuple(r.rep for r in enum_Xi2(table.p, table.N))
        return FusionTensor(
            p=table.p, N=table.N, reps=reps, admissible=table.triples
        )

    def ok(self, a, b, c):
        return tuple(sorted((a, b, c))) in self.admissible


def _vertex_incidences(G):
    """Per vertex: list of ('edge', i) and ('leg', i) slots; a loop
    contributes its edge slot twice."""
    inc = [[] for _ in range(G.n_vertices)]
    for i, (u, v) in enumerate(G.edges):
        inc[u].append(("edge", i))
        inc[v].append(("edge", i))
    for i, v in enumerate(G.legs):
        inc[v].append(("leg", i))
    return inc


def count_on_graph(G, rho, table):
    """Number of admissible labelings with leg labels fixed to rho.

    Runs both engines and insists they agree.
    """
    if table is None:
        raise TableMissing("admissibility table required")
    g, r = validate(G)
    reps = tuple(x.rep if isinstance(x, Radius) else int(x) for x in rho)
    if len(reps) != r:
        raise ValueError(f"need {r} leg radii, got {len(reps)}")
    tensor = FusionTensor.from_table(table)
    a = _count_backtrack(G, reps, tensor)
    b = _count_contract(G, reps, tensor)
    if a != b:
        raise GraphDependence(f"engines disagree: backtrack {a} != contract {b}")
    return a


def _count_backtrack(G, leg_reps, tensor):
    inc = _vertex_incidences(G)
    ne = len(G.edges)
    assign = [None] * ne

    def check_or_domain(v):
        """True/False when fully assigned; the allowed set when exactly one
        incidence is missing (unit propagation); None otherwise."""
        vals = [
            leg_reps[i] if kind == "leg" else assign[i] for kind, i in inc[v]
        ]
        missing = sum(1 for x in vals if x is None)
        if missing == 0:
            return tensor.ok(*vals)
        if missing == 1:
            known = [x for x in vals if x is not None]
            return {t for t in tensor.reps if tensor.ok(known[0], known[1], t)}
        return None

    def rec(k):
        if k == ne:
            return 1 if all(check_or_domain(v) is True for v in range(G.n_vertices)) else 0
        total = 0
        domain = set(tensor.reps)
        for v in set(G.edges[k]):
            d = check_or_domain(v)
            if isinstance(d, set):
                domain &= d
        for t in sorted(domain):
            assign[k] = t
            ok = True
            for v in set(G.edges[k]):
                res = check_or_domain(v)
                if res is False or (isinstance(res, set) and not res):
                    ok = False
                    break
            if ok:
                total += rec(k + 1)
            assign[k] = None
        return total

    return rec(0)


def _count_contract(G, leg_reps, tensor):
    """Tensor-network contraction along the vertex order 0..V-1: the
    frontier holds partial assignments of bonds crossing into the unvisited
    region, with multiplicities."""
    inc = _vertex_incidences(G)
    frontier = {(): 1}
    for v in range(G.n_vertices):
        loop_edges, back_edges, fwd_edges, leg_vals = [], [], [], []
        seen_loops = set()
        for kind, i in inc[v]:
            if kind == "leg":
                leg_vals.append(leg_reps[i])
                continue
            u, w = G.edges[i]
            if u == v and w == v:
                if i not in seen_loops:
                    loop_edges.append(i)
                    seen_loops.add(i)
            elif (w if u == v else u) < v:
                back_edges.append(i)
            else:
                fwd_edges.append(i)
        new_frontier = {}
        for state, mult in frontier.items():
            state_dict = dict(state)
            fixed = list(leg_vals) + [state_dict.pop(i) for i in back_edges]

            def rec_assign(slots, fixed_vals, acc):
                if not slots:
                    assert len(fixed_vals) == 3
                    if tensor.ok(*fixed_vals):
                        key = tuple(sorted({**state_dict, **acc}.items()))
                        new_frontier[key] = new_frontier.get(key, 0) + mult
                    return
                kind, i = slots[0]
                for t in tensor.reps:
                    if kind == "loop":
                        rec_assign(slots[1:], fixed_vals + [t, t], acc)
                    else:
                        rec_assign(slots[1:], fixed_vals + [t], {**acc, i: t})

            slots = [("loop", i) for i in loop_edges] + [("fwd", i) for i in fwd_edges]
            rec_assign(slots, fixed, {})
        frontier = new_frontier
        if not frontier:
            return 0
    total = 0
    for state, mult in frontier.items():
        assert not state, "unconsumed bonds after contraction"
        total += mult
    return total


def count(q: CountQuery, table=None, cache_dir=None, threads=1):
    """Common value of count_on_graph over every graph of type (g, r), with
    a graph-independence certificate."""
    if table is None:
        table = vertex_table(q.p, q.N, cache_dir=cache_dir, threads=threads)
    if q.r == 0 and q.rho:
        raise ValueError("rho must be empty when r = 0")
    graphs = enumerate_graphs(q.g, q.r)
    values = [(G, count_on_graph(G, q.rho, table)) for G in graphs]
    vals = {v for _, v in values}
    if len(vals) != 1:
        raise GraphDependence(
            f"counts differ across graphs of type ({q.g}, {q.r}): "
            + str([(G.edges, v) for G, v in values])
        )
    return vals.pop(), {"graphs_checked": len(graphs), "engines": ["backtrack", "contract"]}


@dataclass(frozen=True)
class EdgeNumbering:
    """Radius labels on all edges (internal by index, legs by position)."""

    graph: TrivalentSemiGraph
    internal: tuple  # Radius per internal edge
    legs: tuple  # Radius per leg

    def level(self):
        return self.internal[0].N if self.internal else self.legs[0].N


def numbering_is_admissible(numbering, table):
    inc = _vertex_incidences(numbering.graph)
    for v, slots in enumerate(inc):
        vals = []
        for kind, i in slots:
            rho = numbering.legs[i] if kind == "leg" else numbering.internal[i]
            vals.append(rho.rep)
        if tuple(sorted(vals)) not in table.triples:
            return False
    return True


def lift_numbering(numbering, table_next):
    """Reinterpret the numbering's edge integers one level up.

    Each radius has two edge integers; the balanced one is not visible
    from radii alone, so the per-edge choices are searched (deterministic
    order) for a combination admissible at the next level.  Raises
    LiftNotAdmissible if none exists.
    """
    p = table_next.p
    N1 = table_next.N
    all_edges = list(numbering.internal) + list(numbering.legs)
    choices = [edge_numbers_for_radius(rho) for rho in all_edges]

    def rec(idx, acc):
        if idx == len(all_edges):
            ni = len(numbering.internal)
            cand = EdgeNumbering(
                graph=numbering.graph,
                internal=tuple(acc[:ni]),
                legs=tuple(acc[ni:]),
            )
            if numbering_is_admissible(cand, table_next):
                return cand
            return None
        for a in choices[idx]:
            lifted = radius_from_edge_number(a, p, N1)
            got = rec(idx + 1, acc + [lifted])
            if got is not None:
                return got
        return None

    out = rec(0, [])
    if out is None:
        raise LiftNotAdmissible("no edge-integer choice lifts admissibly")
    return out


def reduce_numbering(numbering, N2):
    from dormant.radii import reduce_level

    return EdgeNumbering(
        graph=numbering.graph,
        internal=tuple(reduce_level(r, N2) for r in numbering.internal),
        legs=tuple(reduce_level(r, N2) for r in numbering.legs),
    )


def verify_gluing_tree(g1, r1, g2, r2, rho1, rho2, table):
    """count(g1+g2, r1+r2, (rho1, rho2)) must equal
    sum over rho0 of count(g1, r1+1, (rho1, rho0)) * count(g2, r2+1, (rho2, rho0))."""
    p, N = table.p, table.N
    lhs, _ = count(CountQuery(p, N, g1 + g2, r1 + r2, tuple(rho1) + tuple(rho2)), table)
    rhs = 0
    terms = []
    for rho0 in enum_Xi2(p, N):
        c1, _ = count(CountQuery(p, N, g1, r1 + 1, tuple(rho1) + (rho0,)), table)
        c2, _ = count(CountQuery(p, N, g2, r2 + 1, tuple(rho2) + (rho0,)), table)
        rhs += c1 * c2
        terms.append((rho0.rep, c1, c2))
    if lhs != rhs:
        raise IdentityViolated(
            f"tree gluing failed: {lhs} != {rhs} for ({g1},{r1})+({g2},{r2})"
        )
    return {"lhs": lhs, "rhs": rhs, "terms": terms}


def verify_gluing_loop(g, r, rho, table):
    """count(g+1, r, rho) must equal
    sum over rho0 of count(g, r+2, (rho, rho0, rho0))."""
    p, N = table.p, table.N
    lhs, _ = count(CountQuery(p, N, g + 1, r, tuple(rho)), table)
    rhs = 0
    terms = []
    for rho0 in enum_Xi2(p, N):
        c, _ = count(CountQuery(p, N, g, r + 2, tuple(rho) + (rho0, rho0)), table)
        rhs += c
        terms.append((rho0.rep, c))
    if lhs != rhs:
        raise IdentityViolated(f"loop gluing failed: {lhs} != {rhs} for ({g},{r})")
    return {"lhs": lhs, "rhs": rhs, "terms": terms}


FORMULA_QUERIES = (
    "base_dim",
    "base_dim_vanishing",
    "dr_rank",
    "ker_rank",
    "coker_rank",
    "sol_h1_rank",
    "sol_sections_rank",
    "moduli_dim",
)


def formulas(query, n, g, r):
    """The closed-form dimension/rank functions.

    base_dim / base_dim_vanishing: relative dimensions of the space of
    characteristic coefficients (without / with vanishing at the marked
    points); dr_rank, ker_rank, coker_rank: ranks attached to the adjoint
    de Rham complex of a dormant structure; sol_h1_rank /
    sol_sections_rank: ranks of the adjoint solution cohomologies;
    moduli_dim: expected dimension 3g - 3 + r.
    """
    if query == "base_dim":
        return (n * n - 1) * (g - 1) + (n * n + n - 2) * r // 2
    if query == "base_dim_vanishing":
        return (n * n - 1) * (g - 1) + n * (n - 1) * r // 2
    if query == "dr_rank":
        return (n * n - 1) * (2 * g - 2 + r)
    if query == "ker_rank":
        return (n * n - 1) * (g - 1) + (n * n - n) * r // 2
    if query == "coker_rank":
        return (n * n - 1) * (g - 1) + (n * n + n - 2) * r // 2
    if query == "sol_h1_rank":
        return (n * n - 1) * (g - 1) + (n * n - n) * r // 2
    if query == "sol_sections_rank":
        return (n * n - 1) * (g - 1) + (n * n + n - 2) * r // 2
    if query == "moduli_dim":
        return 3 * g - 3 + r
    raise UnknownQuery(f"unknown formula query {query!r}")


def nonempty_radii(g, r, p, N, table=None):
    """Exact support of the counting function over Xi^r."""
    if table is None:
        table = vertex_table(p, N)
    xi = enum_Xi2(p, N)
    out = []

    def rec(prefix):
        if len(prefix) == r:
            val, _ = count(CountQuery(p, N, g, r, tuple(prefix)), table)
            if val > 0:
                out.append(tuple(x.rep for x in prefix))
            return
        for rho in xi:
            rec(prefix + [rho])

    rec([])
    return out
