"""Cores and maximum-core computation.

A core is a connected vertex set X together with a system of outside
witnesses: each x in X has a neighbor x' outside X whose only neighbor in X
is x, and the witnesses form an independent set.  In a tree this reduces to
"connected and every member has a neighbor outside".

General graphs get an exact brute force (subset enumeration plus a
backtracking witness search); trees get the linear-time rooted DP, its
weighted variant, and the quadratic weight-maximization procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, RootedTree, root_at
from .lp import Rational

WeightFunction = dict[str, int]


@dataclass(frozen=True)
class CoreProfile:
    """Per-vertex c(v) values for a rooted tree plus the global maximum."""

    per_vertex: dict[str, int]
    global_c: int
    witness: frozenset[str]


@dataclass(frozen=True)
class WeightedCoreProfile:
    """Per-vertex c_w(v) values for a rooted tree under a weight function."""

    per_vertex: dict[str, int]
    root_value: int  # c_w at the root; with the root re-chosen, the max
    # weight of any core containing that root


def _adjacency_masks(g: Graph) -> list[int]:
    idx = g.index
    masks = [0] * g.n
    for u, v in g.edges:
        masks[idx[u]] |= 1 << idx[v]
        masks[idx[v]] |= 1 << idx[u]
    return masks


def _mask_connected(mask: int, adj: list[int]) -> bool:
    start = mask & -mask
    reached = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            m ^= b
            nxt |= adj[b.bit_length() - 1]
        nxt &= mask & ~reached
        reached |= nxt
        frontier = nxt
    return reached == mask


def _witness_system(mask: int, adj: list[int], n: int) -> bool:
    """Backtracking search for distinct, pairwise-independent witnesses."""
    members = []
    m = mask
    while m:
        b = m & -m
        m ^= b
        members.append(b.bit_length() - 1)
    cands: list[list[int]] = []
    for x in members:
        outside = adj[x] & ~mask
        cs = []
        m = outside
        xbit = 1 << x
        while m:
            b = m & -m
            m ^= b
            y = b.bit_length() - 1
            if adj[y] & mask == xbit:
                cs.append(y)
        if not cs:
            return False
        cands.append(cs)
    order = sorted(range(len(members)), key=lambda i: len(cands[i]))

    def backtrack(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        for y in cands[order[pos]]:
            ybit = 1 << y
            if used & ybit or adj[y] & used:
                continue
            if backtrack(pos + 1, used | ybit):
                return True
        return False

    return backtrack(0, 0)


def is_core(g: Graph, X) -> bool:
    """Exact core predicate for an arbitrary graph."""
    members = list(X)
    if not members:
        raise ValueError("core candidate must be nonempty")
    for v in members:
        g.require_vertex(v)
    idx = g.index
    mask = 0
    for v in members:
        mask |= 1 << idx[v]
    adj = _adjacency_masks(g)
    if not _mask_connected(mask, adj):
        return False
    return _witness_system(mask, adj, g.n)


def _mask_to_set(mask: int, g: Graph) -> frozenset[str]:
    return frozenset(g.vertices[i] for i in range(g.n) if mask >> i & 1)


def max_core_bruteforce(g: Graph, size_cap: int = 16) -> tuple[int, frozenset[str]]:
    """Enumerate all subsets; return (c, lexicographically-first max core).

    Returns (0, empty set) when the graph has no core at all (no edges).
    """
    if g.n > size_cap:
        raise ValueError(f"graph has {g.n} vertices, above the cap {size_cap}")
    adj = _adjacency_masks(g)
    n = g.n
    best_size = 0
    best_tuple: tuple[int, ...] | None = None
    best_mask = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size < best_size:
            continue
        # cheap necessary condition: everyone needs an outside neighbor
        ok = True
        m = mask
        while m:
            b = m & -m
            m ^= b
            if not adj[b.bit_length() - 1] & ~mask:
                ok = False
                break
        if not ok:
            continue
        if not _mask_connected(mask, adj):
            continue
        if not _witness_system(mask, adj, n):
            continue
        key = tuple(i for i in range(n) if mask >> i & 1)
        if size > best_size or (size == best_size and (best_tuple is None or key < best_tuple)):
            best_size = size
            best_tuple = key
            best_mask = mask
    return best_size, _mask_to_set(best_mask, g)


def max_core_weight_bruteforce(g: Graph, w: WeightFunction, size_cap: int = 16,
                               containing: str | None = None) -> int:
    """Maximum total weight over all cores (optionally those containing a vertex).

    Subset enumeration; the independent oracle for the weighted tree DP.
    Returns 0 when no qualifying core exists.
    """
    if g.n > size_cap:
        raise ValueError(f"graph has {g.n} vertices, above the cap {size_cap}")
    adj = _adjacency_masks(g)
    n = g.n
    need = 0
    if containing is not None:
        g.require_vertex(containing)
        need = 1 << g.index[containing]
    wt = [w.get(v, 1) for v in g.vertices]
    best = 0
    for mask in range(1, 1 << n):
        if need and not mask & need:
            continue
        total = 0
        m = mask
        while m:
            b = m & -m
            m ^= b
            total += wt[b.bit_length() - 1]
        if total <= best:
            continue
        if not _mask_connected(mask, adj):
            continue
        if not _witness_system(mask, adj, n):
            continue
        best = total
    return best


def tree_core_sizes(t: RootedTree) -> CoreProfile:
    """Rooted DP for c(v) and the global maximum core size of a tree.

    c(v) is the largest core in the subtree below v that contains v: zero for
    leaves, otherwise one plus the children's values with the smallest child
    value excluded (that child supplies v's witness).  The global maximum
    additionally considers non-root topmost vertices, where the parent is the
    witness and no child is excluded.
    """
    if t.n < 2:
        raise ValueError("tree must have at least 2 vertices")
    c: dict[str, int] = {}
    drop: dict[str, str | None] = {}  # excluded (witness) child per vertex
    for v in reversed(t.bfs_order):
        kids = t.children[v]
        if not kids:
            c[v] = 0
            drop[v] = None
            continue
        vals = [c[u] for u in kids]
        mi = min(range(len(vals)), key=lambda i: vals[i])
        c[v] = 1 + sum(vals) - vals[mi]
        drop[v] = kids[mi]

    def witness_below(v: str) -> set[str]:
        # the core achieving c(v) > 0, topmost at v, witnessed by drop[v]
        out = {v}
        for u in t.children[v]:
            if u != drop[v] and c[u] > 0:
                out |= witness_below(u)
        return out

    best_v = t.root
    best = c[t.root]
    for v in t.bfs_order:
        if v == t.root:
            continue
        size = 1 + sum(c[u] for u in t.children[v])
        if size > best:
            best = size
            best_v = v
    if best_v == t.root:
        witness = witness_below(t.root)
    else:
        witness = {best_v}
        for u in t.children[best_v]:
            if c[u] > 0:
                witness |= witness_below(u)
    return CoreProfile(per_vertex=c, global_c=best, witness=frozenset(witness))


def weighted_core_profile(t: RootedTree, w: WeightFunction) -> WeightedCoreProfile:
    """Rooted DP for c_w(v): max w-weight of a core below v containing v."""
    if any(w.get(v, 1) < 1 for v in t.base.vertices):
        raise ValueError("weights must be positive")
    cw: dict[str, int] = {}
    for v in reversed(t.bfs_order):
        kids = t.children[v]
        if not kids:
            cw[v] = 0
        else:
            vals = [cw[u] for u in kids]
            cw[v] = w.get(v, 1) + sum(vals) - min(vals)
    return WeightedCoreProfile(per_vertex=cw, root_value=cw[t.root])


def max_core_weight_at(g: Graph, w: WeightFunction, v: str) -> int:
    """Max w-weight of a core of the whole tree containing v (re-roots at v)."""
    return weighted_core_profile(root_at(g, v), w).root_value


def maximalize_weights(g: Graph, c: int) -> WeightFunction:
    """Grow all-1 weights into a maximal weight function for the tree.

    Visits vertices in canonical order; each step re-roots at the vertex and
    raises its weight until it lies in a core of weight exactly c.  Quadratic
    overall; the order does not affect validity of the result.
    """
    w: WeightFunction = {v: 1 for v in g.vertices}
    for v in g.vertices:
        best = max_core_weight_at(g, w, v)
        if best > c:
            raise ValueError(f"weights already exceed the core bound at {v!r}")
        w[v] += c - best
    return w


def is_maximal_weighting(g: Graph, w: WeightFunction, c: int) -> bool:
    """True iff every vertex's best core weighs exactly c under w.

    This packs both maximality conditions: no core exceeds c (any heavier
    core would push some vertex's best above c) and every vertex attains c.
    """
    if any(w.get(v, 1) < 1 for v in g.vertices):
        return False
    return all(max_core_weight_at(g, w, v) == c for v in g.vertices)


def sigma_of_tree(c: int) -> Rational:
    """Optimal information complexity 2 - 1/c of a tree with max core size c."""
    if c < 1:
        raise ValueError("core size must be at least 1")
    return Rational(2) - Rational(1, c)
