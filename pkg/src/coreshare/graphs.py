"""Undirected graphs and rooted trees.

The input format is line-oriented text: `#` starts a comment, `weight <v> <k>`
assigns a positive integer weight, and any other non-empty line `<u> <v>`
declares an edge.  Vertices exist from their first mention; vertex order is
first-appearance order and is the canonical order used everywhere else
(deterministic star numbering, share layout, witnesses).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class GraphParseError(ValueError):
    """Malformed graph input; the message names the offending line."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph with ordered vertices and optional weights."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    weights: dict[str, int]

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        order = self.index
        return {v: tuple(sorted(ns, key=order.__getitem__)) for v, ns in nbrs.items()}

    @cached_property
    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def has_vertex(self, v: str) -> bool:
        return v in self.index

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edge_set

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def weight(self, v: str) -> int:
        return self.weights.get(v, 1)

    def require_vertex(self, v: str) -> None:
        if v not in self.index:
            raise KeyError(f"unknown vertex {v!r}")


def make_graph(edges: Iterable[tuple[str, str]], weights: dict[str, int] | None = None,
               vertices: Iterable[str] = ()) -> Graph:
    """Build a Graph programmatically; vertex order is first mention."""
    order: list[str] = []
    seen: set[str] = set()

    def mention(v: str) -> None:
        if v not in seen:
            seen.add(v)
            order.append(v)

    for v in vertices:
        mention(v)
    edge_list: list[tuple[str, str]] = []
    edge_keys: set[frozenset[str]] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at {u!r}")
        key = frozenset((u, v))
        if key in edge_keys:
            raise ValueError(f"duplicate edge {u!r}-{v!r}")
        edge_keys.add(key)
        mention(u)
        mention(v)
        edge_list.append((u, v))
    w = dict(weights or {})
    for v, k in w.items():
        mention(v)
        if k < 1:
            raise ValueError(f"non-positive weight for {v!r}")
    full_weights = {v: w.get(v, 1) for v in order}
    return Graph(tuple(order), tuple(edge_list), full_weights)


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format; see the module docstring."""
    order: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    edge_keys: set[frozenset[str]] = set()
    weights: dict[str, int] = {}

    def mention(v: str) -> None:
        if v not in seen:
            seen.add(v)
            order.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "weight":
            if len(tokens) != 3:
                raise GraphParseError(f"line {lineno}: expected 'weight <vertex> <k>'")
            _, v, ktext = tokens
            try:
                k = int(ktext)
            except ValueError:
                raise GraphParseError(f"line {lineno}: weight {ktext!r} is not an integer") from None
            if k < 1:
                raise GraphParseError(f"line {lineno}: non-positive weight {k}")
            mention(v)
            weights[v] = k
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected '<u> <v>' edge, got {line!r}")
        u, v = tokens
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at {u!r}")
        key = frozenset((u, v))
        if key in edge_keys:
            raise GraphParseError(f"line {lineno}: duplicate edge {u!r}-{v!r}")
        edge_keys.add(key)
        mention(u)
        mention(v)
        edges.append((u, v))

    full_weights = {v: weights.get(v, 1) for v in order}
    return Graph(tuple(order), tuple(edges), full_weights)


def serialize_graph(g: Graph) -> str:
    """Emit text that parse_graph maps back to an equal Graph.

    Weight lines come first (one per vertex, pinning first-appearance order
    and weights exactly), then the edges in stored order.
    """
    lines = [f"weight {v} {g.weight(v)}" for v in g.vertices]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def connected_components(g: Graph) -> list[set[str]]:
    remaining = set(g.vertices)
    comps = []
    while remaining:
        start = next(v for v in g.vertices if v in remaining)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in remaining and w not in comp:
                    comp.add(w)
                    queue.append(w)
        remaining -= comp
        comps.append(comp)
    return comps


def is_tree(g: Graph) -> bool:
    """True iff g is connected with exactly n-1 edges."""
    if g.n == 0:
        return False
    if len(g.edges) != g.n - 1:
        return False
    return len(connected_components(g)) == 1


@dataclass(frozen=True)
class RootedTree:
    """A tree with a chosen root, parent/children maps and a BFS order."""

    base: Graph
    root: str
    parent: dict[str, str]
    children: dict[str, tuple[str, ...]]
    bfs_order: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.base.n

    def is_leaf(self, v: str) -> bool:
        """Leaf of the rooted view: no children (the root never counts)."""
        return not self.children[v]

    def subtree(self, v: str) -> set[str]:
        """Vertices of the component below v (v plus all descendants)."""
        out = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.children[u]:
                out.add(w)
                queue.append(w)
        return out


def root_at(g: Graph, root: str | None = None) -> RootedTree:
    """Root a tree at `root`, or automatically at the first non-leaf vertex.

    The automatic rule keeps leaves from ever being parents (needed by the
    orientation step); a 2-vertex tree is exempt and roots at the first vertex.
    """
    if not is_tree(g):
        raise ValueError("graph is not a tree")
    if g.n < 2:
        raise ValueError("tree must have at least 2 vertices")
    if root is None:
        if g.n == 2:
            root = g.vertices[0]
        else:
            root = next(v for v in g.vertices if g.degree(v) > 1)
    elif not g.has_vertex(root):
        raise KeyError(f"root vertex {root!r} not in graph")

    parent: dict[str, str] = {}
    children: dict[str, list[str]] = {v: [] for v in g.vertices}
    order: list[str] = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                children[u].append(w)
                order.append(w)
                queue.append(w)
    return RootedTree(
        base=g,
        root=root,
        parent=parent,
        children={v: tuple(cs) for v, cs in children.items()},
        bfs_order=tuple(order),
    )
