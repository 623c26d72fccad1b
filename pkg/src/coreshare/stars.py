"""Star packings and the fractional star-cover LP.

For trees: orient each edge's c parallel copies using a maximal weight
function (child sends c_w(v) copies up, the parent sends the rest down),
then peel directed edges into stars centered where the edges leave.  The
resulting packing covers every edge exactly c times and no vertex more than
2c-1 times.

For arbitrary graphs: the star cover rate is computed by a compact exact LP
over per-incidence variables, and the optimum is decomposed back into an
explicit weighted star family so the value never rests on the reformulation
alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cores import WeightFunction, is_maximal_weighting, weighted_core_profile
from .graphs import Graph, RootedTree
from .lp import GE, LinearProgram, LPError, OPTIMAL, Rational, solve_min


@dataclass(frozen=True)
class Orientation:
    """Directed multiplicities out[(u, v)] on the edges of a tree."""

    out: dict[tuple[str, str], int]
    c: int

    def outgoing(self, u: str, v: str) -> int:
        return self.out.get((u, v), 0)


@dataclass(frozen=True)
class Star:
    center: str
    leaves: tuple[str, ...]
    index: int

    def edges(self) -> list[frozenset[str]]:
        return [frozenset((self.center, leaf)) for leaf in self.leaves]


@dataclass(frozen=True)
class StarPacking:
    stars: tuple[Star, ...]

    def edge_counts(self) -> dict[frozenset[str], int]:
        counts: dict[frozenset[str], int] = {}
        for s in self.stars:
            for e in s.edges():
                counts[e] = counts.get(e, 0) + 1
        return counts

    def vertex_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.stars:
            for v in (s.center, *s.leaves):
                counts[v] = counts.get(v, 0) + 1
        return counts

    def center_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.stars:
            counts[s.center] = counts.get(s.center, 0) + 1
        return counts


@dataclass(frozen=True)
class PackingReport:
    edge_lines: tuple[tuple[str, str, int], ...]
    vertex_lines: tuple[tuple[str, int], ...]
    c: int
    ok: bool

    def lines(self) -> list[str]:
        out = [f"edge {u} {v} count {k}" for u, v, k in self.edge_lines]
        out += [f"vertex {v} count {k}" for v, k in self.vertex_lines]
        out.append("PASS" if self.ok else "FAIL")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def orient_edges(t: RootedTree, w: WeightFunction, c: int) -> Orientation:
    """Orient c parallel copies of each tree edge: c_w(v) up, c - c_w(v) down.

    Requires a maximal weight function: the 2c-1 vertex-cover bound of the
    resulting packing is only guaranteed when every vertex lies in a core of
    weight exactly c.  A leaf root (possible only when n >= 3) is refused for
    the same reason: leaves must never be parents.
    """
    g = t.base
    if g.n >= 3 and g.degree(t.root) == 1:
        raise ValueError(f"root {t.root!r} is a leaf; pick a non-leaf root")
    if not is_maximal_weighting(g, w, c):
        raise ValueError("weight function is not maximal for this tree")
    cw = weighted_core_profile(t, w).per_vertex
    out: dict[tuple[str, str], int] = {}
    for v in t.bfs_order:
        if v == t.root:
            continue
        p = t.parent[v]
        out[(v, p)] = cw[v]
        out[(p, v)] = c - cw[v]
    return Orientation(out=out, c=c)


def extract_stars(t: RootedTree, o: Orientation) -> StarPacking:
    """Partition the directed edges into outward stars.

    Vertex v emits max_u out(v,u) stars; the t-th contains every neighbor u
    with out(v,u) >= t.  Star indices are global, in emission order, 1-based.
    """
    g = t.base
    stars: list[Star] = []
    for v in g.vertices:
        nbrs = g.neighbors(v)
        outs = [(u, o.outgoing(v, u)) for u in nbrs]
        k = max((cnt for _, cnt in outs), default=0)
        for level in range(1, k + 1):
            leaves = tuple(u for u, cnt in outs if cnt >= level)
            stars.append(Star(center=v, leaves=leaves, index=len(stars) + 1))
    return StarPacking(stars=tuple(stars))


def orientation_of_packing(p: StarPacking, g: Graph) -> Orientation | None:
    """Reconstruct out(v,u) as the number of stars centered at v holding u."""
    out: dict[tuple[str, str], int] = {}
    for s in p.stars:
        for leaf in s.leaves:
            key = (s.center, leaf)
            out[key] = out.get(key, 0) + 1
    counts = {frozenset(e): 0 for e in g.edges}
    for (u, v), k in out.items():
        counts[frozenset((u, v))] += k
    cs = set(counts.values())
    if len(cs) != 1:
        return None
    return Orientation(out=out, c=cs.pop())


def verify_packing(g: Graph, p: StarPacking, c: int) -> PackingReport:
    """Check edge coverage exactly c and vertex coverage at most 2c-1."""
    for s in p.stars:
        if not s.leaves:
            raise ValueError(f"star {s.index} has no leaves")
        if len(set(s.leaves)) != len(s.leaves):
            raise ValueError(f"star {s.index} repeats a leaf")
        for leaf in s.leaves:
            if not g.has_edge(s.center, leaf):
                raise ValueError(
                    f"star {s.index} uses edge {s.center!r}-{leaf!r} not in the graph"
                )
    ec = p.edge_counts()
    vc = p.vertex_counts()
    edge_lines = []
    ok = True
    for u, v in g.edges:
        k = ec.get(frozenset((u, v)), 0)
        edge_lines.append((u, v, k))
        if k != c:
            ok = False
    vertex_lines = []
    for v in g.vertices:
        k = vc.get(v, 0)
        vertex_lines.append((v, k))
        if k > 2 * c - 1:
            ok = False
    return PackingReport(tuple(edge_lines), tuple(vertex_lines), c, ok)


@dataclass(frozen=True)
class StarCoverResult:
    """Exact star cover rate with a certifying weighted star family."""

    value: Rational
    weighted_stars: tuple[tuple[Star, Rational], ...]
    x: dict[tuple[str, frozenset[str]], Rational]  # incidence weights
    y: dict[str, Rational]  # per-vertex center budgets


def star_cover_rate_lp(g: Graph) -> StarCoverResult:
    """Minimize the maximum vertex weight of a fractional star cover.

    Compact formulation: x[v,e] is the weight with which stars centered at v
    carry edge e, y[v] the total center weight at v.  Every edge needs
    x[u,e] + x[v,e] >= 1 and each vertex loads y[v] plus the x-mass its
    neighbors put on the shared edges.  The optimum is decomposed into
    explicit stars by sweeping thresholds over each vertex's sorted x-values,
    then re-verified against the star family.
    """
    if not g.edges:
        raise ValueError("graph has no edges")
    var_names: list[str] = []
    x_idx: dict[tuple[str, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        for end in (u, v):
            x_idx[(end, i)] = len(var_names)
            var_names.append(f"x[{end},{i}]")
    y_idx: dict[str, int] = {}
    for v in g.vertices:
        y_idx[v] = len(var_names)
        var_names.append(f"y[{v}]")
    t_idx = len(var_names)
    var_names.append("t")

    lp = LinearProgram(var_names)
    for i, (u, v) in enumerate(g.edges):
        lp.add({x_idx[(u, i)]: 1, x_idx[(v, i)]: 1}, GE, 1)
    for i, (u, v) in enumerate(g.edges):
        for end in (u, v):
            lp.add({y_idx[end]: 1, x_idx[(end, i)]: -1}, GE, 0)
    for v in g.vertices:
        coeffs = {t_idx: Rational(1), y_idx[v]: Rational(-1)}
        for i, (a, b) in enumerate(g.edges):
            if a == v:
                coeffs[x_idx[(b, i)]] = coeffs.get(x_idx[(b, i)], Rational(0)) - 1
            elif b == v:
                coeffs[x_idx[(a, i)]] = coeffs.get(x_idx[(a, i)], Rational(0)) - 1
        lp.add(coeffs, GE, 0)
    lp.set_objective({t_idx: 1})
    sol = solve_min(lp)
    if sol.status != OPTIMAL:
        raise LPError(f"star cover LP unexpectedly {sol.status}")
    vals = sol.values

    # Decompose (x, y) into weighted stars by threshold sweeping.
    weighted: list[tuple[Star, Rational]] = []
    x_out: dict[tuple[str, frozenset[str]], Rational] = {}
    for v in g.vertices:
        incident = []
        for i, (a, b) in enumerate(g.edges):
            if v in (a, b):
                other = b if a == v else a
                xv = vals[x_idx[(v, i)]]
                x_out[(v, frozenset((a, b)))] = xv
                if xv > 0:
                    incident.append((other, xv))
        if not incident:
            continue
        # emit from the top threshold downwards: layer weight = t_k - t_{k+1}
        thresholds = sorted({xv for _, xv in incident}, reverse=True)
        for k, level in enumerate(thresholds):
            nxt = thresholds[k + 1] if k + 1 < len(thresholds) else Rational(0)
            layer = level - nxt
            if layer > 0:
                leaves = tuple(u for u, xv in incident if xv >= level)
                weighted.append(
                    (Star(center=v, leaves=leaves, index=len(weighted) + 1), layer)
                )

    # Certify: edge coverage >= 1 everywhere and max vertex weight == optimum.
    edge_weight: dict[frozenset[str], Rational] = {frozenset(e): Rational(0) for e in g.edges}
    vertex_weight: dict[str, Rational] = {v: Rational(0) for v in g.vertices}
    for star, wgt in weighted:
        vertex_weight[star.center] += wgt
        for leaf in star.leaves:
            vertex_weight[leaf] += wgt
            edge_weight[frozenset((star.center, leaf))] += wgt
    if any(cov < 1 for cov in edge_weight.values()):
        raise LPError("star decomposition under-covers an edge")
    if max(vertex_weight.values()) != sol.value:
        raise LPError("star decomposition does not certify the LP optimum")

    y_out = {v: vals[y_idx[v]] for v in g.vertices}
    return StarCoverResult(
        value=sol.value,
        weighted_stars=tuple(weighted),
        x=x_out,
        y=y_out,
    )
