"""Shared fixtures: fixture-file access and seeded random graph generators."""

from __future__ import annotations

import heapq
import random
from importlib.resources import files
from pathlib import Path

import pytest

from coreshare.graphs import Graph, load_graph, make_graph


FIXDIR = Path(str(files("coreshare") / "fixtures"))


def fixture_path(name: str) -> Path:
    return FIXDIR / name


def fixture_graph(name: str) -> Graph:
    return load_graph(fixture_path(name))


@pytest.fixture
def p2() -> Graph:
    return fixture_graph("p2.graph")


@pytest.fixture
def p3() -> Graph:
    return fixture_graph("p3.graph")


@pytest.fixture
def p4() -> Graph:
    return fixture_graph("p4.graph")


@pytest.fixture
def k13() -> Graph:
    return fixture_graph("k13.graph")


@pytest.fixture
def c3() -> Graph:
    return fixture_graph("c3.graph")


@pytest.fixture
def c5() -> Graph:
    return fixture_graph("c5.graph")


@pytest.fixture
def delta() -> Graph:
    return fixture_graph("delta.graph")


@pytest.fixture
def fig2() -> Graph:
    return fixture_graph("fig2.graph")


@pytest.fixture
def fig2_weights(fig2) -> dict[str, int]:
    return {v: fig2.weight(v) for v in fig2.vertices}


def prufer_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree on {0..n-1} via its Prufer sequence."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def random_tree(n: int, rng: random.Random) -> Graph:
    return make_graph((f"v{a}", f"v{b}") for a, b in prufer_edges(n, rng))


def random_connected_graph(n: int, rng: random.Random) -> Graph:
    """Random spanning tree plus a random number of extra edges."""
    edges = prufer_edges(n, rng)
    have = {frozenset(e) for e in edges}
    pool = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if frozenset((i, j)) not in have
    ]
    rng.shuffle(pool)
    extra = rng.randrange(0, len(pool) + 1)
    edges += pool[:extra]
    return make_graph((f"v{a}", f"v{b}") for a, b in edges)


def all_trees_up_to_iso(n: int) -> list[Graph]:
    """Every tree on n vertices up to isomorphism (AHU canonical forms)."""
    seen: set[str] = set()
    out: list[Graph] = []
    if n == 1:
        return [make_graph([], vertices=["v0"])]

    def canon(edges: list[tuple[int, int]]) -> str:
        adj = {i: set() for i in range(n)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)

        def encode(root: int, parent: int | None) -> str:
            subs = sorted(
                encode(ch, root) for ch in adj[root] if ch != parent
            )
            return "(" + "".join(subs) + ")"

        # root at the tree's center(s) for a canonical form
        layer = [i for i in range(n) if len(adj[i]) <= 1]
        degree = {i: len(adj[i]) for i in range(n)}
        removed = set()
        while n - len(removed) > 2:
            nxt = []
            for leaf in layer:
                removed.add(leaf)
                for u in adj[leaf]:
                    if u not in removed:
                        degree[u] -= 1
                        if degree[u] == 1:
                            nxt.append(u)
            layer = nxt
        centers = [i for i in range(n) if i not in removed]
        return min(encode(c, None) for c in centers)

    def iterate_prufer(prefix: list[int]):
        if len(prefix) == n - 2:
            yield list(prefix)
            return
        for x in range(n):
            prefix.append(x)
            yield from iterate_prufer(prefix)
            prefix.pop()

    if n == 2:
        return [make_graph([("v0", "v1")])]
    for seq in iterate_prufer([]):
        edges = _prufer_decode(n, seq)
        key = canon(edges)
        if key not in seen:
            seen.add(key)
            out.append(make_graph((f"v{a}", f"v{b}") for a, b in edges))
    return out


def _prufer_decode(n: int, seq: list[int]) -> list[tuple[int, int]]:
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges
