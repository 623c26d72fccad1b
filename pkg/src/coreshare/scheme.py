"""Optimal linear secret sharing schemes on trees.

The scheme combines one ideal scheme per star of the optimal packing.  The
secret is the coefficient vector of a polynomial f of degree below c; star j
carries the piece p_j = f(alpha_j) at evaluation point alpha_j = j - 1.  The
star's center holds fresh randomness r_j, every leaf holds p_j + r_j, so any
edge (covered by exactly c stars) recovers c pieces and interpolates f, while
each vertex coordinate is masked by a r_j it never sees twice.

Shares are linear in (secret, randomness); the per-vertex matrices make that
explicit and drive the algebraic verifier: an edge can reconstruct iff every
secret functional lies in the stacked row space, and an independent set
learns nothing iff the secret block's column space sits inside the
randomness block's.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cores import maximalize_weights, tree_core_sizes
from .gf import FieldMatrix, field_matrix, hstack, is_prime, mat_rank, poly_eval, \
    rowspace_contains, smallest_prime_at_least
from .gf import interpolate_secret
from .graphs import Graph, is_tree, make_graph, root_at
from .stars import Star, StarPacking, extract_stars, orient_edges

CENTER = "center"
LEAF = "leaf"

MAX_MIS_VERTICES = 24


@dataclass(frozen=True)
class Scheme:
    """A built scheme: star layout plus field parameters.

    layout maps each vertex to its ordered share coordinates, one per
    (star index, role) incidence, in star-index order; alpha_j = j - 1.
    """

    tree: Graph
    c: int
    p: int
    root: str
    weights: dict[str, int]
    stars: tuple[Star, ...]
    layout: dict[str, tuple[tuple[int, str], ...]]

    @property
    def m(self) -> int:
        return len(self.stars)

    @property
    def eval_points(self) -> tuple[int, ...]:
        return tuple(range(self.m))

    def share_length(self, v: str) -> int:
        return len(self.layout[v])

    @property
    def max_share_length(self) -> int:
        return max(self.share_length(v) for v in self.tree.vertices)

    def alpha(self, star_index: int) -> int:
        return star_index - 1

    def stars_covering(self, u: str, v: str) -> list[tuple[Star, str]]:
        """Stars whose edge set contains {u, v}, tagged with their center."""
        out = []
        for s in self.stars:
            if s.center == u and v in s.leaves:
                out.append((s, u))
            elif s.center == v and u in s.leaves:
                out.append((s, v))
        return out


@dataclass(frozen=True)
class SharesBundle:
    shares: dict[str, tuple[int, ...]]


@dataclass(frozen=True)
class CheckResult:
    kind: str  # 'edge' or 'independent-set' or 'distribution' or 'reconstruct'
    subject: tuple[str, ...]
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"{'PASS' if c.ok else 'FAIL'} {c.kind} {','.join(c.subject)}")
        out.append("PASS" if self.ok else "FAIL")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _canonical_tree(g: Graph, weights: dict[str, int]) -> Graph:
    """Same graph with edges normalized to canonical order (file-format stable)."""
    idx = g.index
    edges = sorted(
        ((u, v) if idx[u] < idx[v] else (v, u) for u, v in g.edges),
        key=lambda e: (idx[e[0]], idx[e[1]]),
    )
    return make_graph(edges, weights=weights, vertices=g.vertices)


def build_scheme(g: Graph, field_override: int | None = None,
                 root_override: str | None = None) -> Scheme:
    """Run the full pipeline: core sizes, maximal weights, orientation, stars.

    The field defaults to the smallest prime admitting m distinct evaluation
    points; an override must be a prime at least that large.
    """
    if not is_tree(g):
        raise ValueError("scheme construction needs a tree")
    if g.n < 2:
        raise ValueError("tree must have at least 2 vertices")
    t = root_at(g, root_override)
    c = tree_core_sizes(t).global_c
    w = maximalize_weights(g, c)
    orientation = orient_edges(t, w, c)
    packing = extract_stars(t, orientation)
    m = len(packing.stars)
    if field_override is not None:
        if not is_prime(field_override):
            raise ValueError(f"field override {field_override} is not prime")
        if field_override < max(m, 2):
            raise ValueError(
                f"field override {field_override} is smaller than the {m} stars need"
            )
        p = field_override
    else:
        p = smallest_prime_at_least(max(m, 2))
    layout: dict[str, list[tuple[int, str]]] = {v: [] for v in g.vertices}
    for s in packing.stars:
        layout[s.center].append((s.index, CENTER))
        for leaf in s.leaves:
            layout[leaf].append((s.index, LEAF))
    return Scheme(
        tree=_canonical_tree(g, w),
        c=c,
        p=p,
        root=t.root,
        weights=w,
        stars=packing.stars,
        layout={v: tuple(coords) for v, coords in layout.items()},
    )


def _check_vector(name: str, vec: Sequence[int], length: int, p: int) -> tuple[int, ...]:
    vals = tuple(vec)
    if len(vals) != length:
        raise ValueError(f"{name} must have length {length}, got {len(vals)}")
    if any(not 0 <= x < p for x in vals):
        raise ValueError(f"{name} entries must lie in [0, {p})")
    return vals


def random_vector(length: int, p: int, seed: int) -> tuple[int, ...]:
    """Deterministic dealer randomness: random.Random(seed).randrange(p) per entry.

    This is the documented --seed generator; cross-implementation test
    vectors should pass explicit randomness instead.
    """
    rng = random.Random(seed)
    return tuple(rng.randrange(p) for _ in range(length))


def pieces_of(sch: Scheme, secret: Sequence[int]) -> tuple[int, ...]:
    """Per-star pieces p_j = f(alpha_j) for the secret polynomial f."""
    return tuple(poly_eval(secret, sch.alpha(j), sch.p) for j in range(1, sch.m + 1))


def deal(sch: Scheme, secret: Sequence[int], randomness: Sequence[int]) -> SharesBundle:
    """Compute all shares: r_j at centers, p_j + r_j at leaves."""
    s = _check_vector("secret", secret, sch.c, sch.p)
    r = _check_vector("randomness", randomness, sch.m, sch.p)
    pieces = pieces_of(sch, s)
    shares = {}
    for v in sch.tree.vertices:
        coords = []
        for j, role in sch.layout[v]:
            if role == CENTER:
                coords.append(r[j - 1])
            else:
                coords.append((pieces[j - 1] + r[j - 1]) % sch.p)
        shares[v] = tuple(coords)
    return SharesBundle(shares=shares)


def reconstruct(sch: Scheme, edge: tuple[str, str], share_u: Sequence[int],
                share_v: Sequence[int]) -> tuple[int, ...]:
    """Recover the secret from the two shares of an edge.

    The edge lies in exactly c stars; each yields a piece (leaf coordinate
    minus center coordinate), and c pieces interpolate the secret.  Shares
    are not authenticated: corrupted inputs produce a wrong secret silently.
    """
    u, v = edge
    if not sch.tree.has_edge(u, v):
        raise ValueError(f"{u!r}-{v!r} is not an edge of the tree")
    shares = {u: tuple(share_u), v: tuple(share_v)}
    for end in (u, v):
        if len(shares[end]) != sch.share_length(end):
            raise ValueError(f"share of {end!r} has the wrong length")
    position = {end: {jr: i for i, jr in enumerate(sch.layout[end])} for end in (u, v)}
    points = []
    for star, center in sch.stars_covering(u, v):
        leaf = v if center == u else u
        r_val = shares[center][position[center][(star.index, CENTER)]]
        masked = shares[leaf][position[leaf][(star.index, LEAF)]]
        points.append((sch.alpha(star.index), (masked - r_val) % sch.p))
    if len(points) != sch.c:
        raise ValueError(
            f"edge {u!r}-{v!r} is covered {len(points)} times, expected {sch.c}"
        )
    return interpolate_secret(points, sch.c, sch.p)


def emit_matrices(sch: Scheme) -> dict[str, FieldMatrix]:
    """Per-vertex share matrices over columns (s_0..s_{c-1}, r_1..r_m).

    Row for (j, center) is the unit vector at randomness column j; row for
    (j, leaf) adds the Vandermonde row (1, alpha_j, ..., alpha_j^{c-1}) in
    the secret block.  Output size is the total number of entries.
    """
    out = {}
    width = sch.c + sch.m
    for v in sch.tree.vertices:
        rows = []
        for j, role in sch.layout[v]:
            row = [0] * width
            row[sch.c + j - 1] = 1
            if role == LEAF:
                a = sch.alpha(j)
                val = 1
                for k in range(sch.c):
                    row[k] = val
                    val = (val * a) % sch.p
            rows.append(row)
        out[v] = field_matrix(rows, sch.p)
    return out


def max_independent_sets(g: Graph, cap: int = MAX_MIS_VERTICES) -> list[tuple[str, ...]]:
    """All maximal independent sets, sorted by canonical index tuples."""
    if g.n > cap:
        raise ValueError(f"graph has {g.n} vertices, above the cap {cap}")
    idx = g.index
    adj = [0] * g.n
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    results: list[int] = []

    # Bron-Kerbosch with pivoting on the complement graph's cliques =
    # maximal independent sets of g.
    comp = [(~adj[i]) & ((1 << g.n) - 1) & ~(1 << i) for i in range(g.n)]

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            results.append(r)
            return
        pivot_pool = p | x
        pivot = None
        best = -1
        m = pivot_pool
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            cnt = (p & comp[u]).bit_count()
            if cnt > best:
                best = cnt
                pivot = u
        cand = p & ~comp[pivot]
        while cand:
            b = cand & -cand
            cand ^= b
            vtx = b.bit_length() - 1
            expand(r | b, p & comp[vtx], x & comp[vtx])
            p &= ~b
            x |= b

    expand(0, (1 << g.n) - 1, 0)
    sets = []
    for mask in results:
        sets.append(tuple(g.vertices[i] for i in range(g.n) if mask >> i & 1))
    sets.sort(key=lambda vs: tuple(idx[v] for v in vs))
    return sets


def _stacked_matrix(mats: dict[str, FieldMatrix], vertices: Iterable[str],
                    p: int, width: int) -> FieldMatrix:
    rows: list[tuple[int, ...]] = []
    for v in vertices:
        rows.extend(mats[v].rows)
    return FieldMatrix(tuple(rows), p) if rows else FieldMatrix((), p)


def verify_linear(sch: Scheme, independent_sets: Sequence[Sequence[str]] | None = None
                  ) -> VerifyReport:
    """Rank-based correctness and privacy verification.

    Correctness: for every edge, each secret functional e_i must lie in the
    row space of the two stacked share matrices.  Privacy: for every maximal
    independent set (or the sets supplied), the secret block's column space
    must lie inside the randomness block's column space; subsets of checked
    sets are then private by marginalization.
    """
    mats = emit_matrices(sch)
    width = sch.c + sch.m
    checks: list[CheckResult] = []
    for u, v in sch.tree.edges:
        stacked = _stacked_matrix(mats, (u, v), sch.p, width)
        ok = True
        for i in range(sch.c):
            target = [0] * width
            target[i] = 1
            if not rowspace_contains(stacked, target):
                ok = False
                break
        checks.append(CheckResult(kind="edge", subject=(u, v), ok=ok))
    if independent_sets is None:
        independent_sets = max_independent_sets(sch.tree)
    for group in independent_sets:
        stacked = _stacked_matrix(mats, group, sch.p, width)
        secret_block = FieldMatrix(tuple(r[: sch.c] for r in stacked.rows), sch.p)
        random_block = FieldMatrix(tuple(r[sch.c:] for r in stacked.rows), sch.p)
        both = hstack(random_block, secret_block)
        ok = mat_rank(both) == mat_rank(random_block)
        checks.append(CheckResult(kind="independent-set", subject=tuple(group), ok=ok))
    return VerifyReport(checks=tuple(checks))


def verify_exhaustive(sch: Scheme, limit: int = 1 << 22) -> VerifyReport:
    """Enumerate all (secret, randomness) pairs; check reconstruction and
    exact share-distribution equality across secrets on every maximal
    independent set."""
    total = sch.p ** (sch.c + sch.m)
    if total > limit:
        raise ValueError(f"p^(c+m) = {total} exceeds the limit {limit}")
    groups = max_independent_sets(sch.tree)
    secrets = list(_vectors(sch.p, sch.c))
    randoms = list(_vectors(sch.p, sch.m))
    edges = list(sch.tree.edges)
    recon_ok = {e: True for e in edges}
    dist: dict[tuple[str, ...], dict[tuple[int, ...], dict[tuple, int]]] = {
        tuple(grp): {} for grp in groups
    }
    for s in secrets:
        for grp in groups:
            dist[tuple(grp)][s] = {}
        for r in randoms:
            bundle = deal(sch, s, r)
            for u, v in edges:
                got = reconstruct(sch, (u, v), bundle.shares[u], bundle.shares[v])
                if got != s:
                    recon_ok[(u, v)] = False
            for grp in groups:
                key = tuple(bundle.shares[v] for v in grp)
                counter = dist[tuple(grp)][s]
                counter[key] = counter.get(key, 0) + 1
    checks = [
        CheckResult(kind="reconstruct", subject=e, ok=ok) for e, ok in recon_ok.items()
    ]
    for grp in groups:
        counters = dist[tuple(grp)]
        baseline = counters[secrets[0]]
        ok = all(counters[s] == baseline for s in secrets[1:])
        checks.append(CheckResult(kind="distribution", subject=tuple(grp), ok=ok))
    return VerifyReport(checks=tuple(checks))


def _vectors(p: int, length: int):
    if length == 0:
        yield ()
        return
    for head in range(p):
        for tail in _vectors(p, length - 1):
            yield (head,) + tail


# --- serialization -----------------------------------------------------------

SCHEME_VERSION = 1


def scheme_to_json(sch: Scheme) -> str:
    """Canonical scheme file text (stable key order, sorted nothing)."""
    doc = {
        "version": SCHEME_VERSION,
        "field_prime": sch.p,
        "c": sch.c,
        "vertices": list(sch.tree.vertices),
        "root": sch.root,
        "weights": {v: sch.weights[v] for v in sch.tree.vertices},
        "stars": [
            {"center": s.center, "leaves": list(s.leaves)} for s in sch.stars
        ],
        "layout": {
            v: [[j, role] for j, role in sch.layout[v]] for v in sch.tree.vertices
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def scheme_from_json(text: str) -> Scheme:
    doc = json.loads(text)
    if doc.get("version") != SCHEME_VERSION:
        raise ValueError(f"unsupported scheme version {doc.get('version')!r}")
    vertices = list(doc["vertices"])
    stars = tuple(
        Star(center=s["center"], leaves=tuple(s["leaves"]), index=i + 1)
        for i, s in enumerate(doc["stars"])
    )
    edges = []
    seen = set()
    for s in stars:
        for leaf in s.leaves:
            key = frozenset((s.center, leaf))
            if key not in seen:
                seen.add(key)
                edges.append((s.center, leaf))
    weights = {v: int(k) for v, k in doc["weights"].items()}
    tree = _canonical_tree(
        make_graph(edges, weights=weights, vertices=vertices), weights
    )
    layout = {
        v: tuple((int(j), str(role)) for j, role in doc["layout"][v]) for v in vertices
    }
    sch = Scheme(
        tree=tree,
        c=int(doc["c"]),
        p=int(doc["field_prime"]),
        root=doc["root"],
        weights={v: int(k) for v, k in doc["weights"].items()},
        stars=stars,
        layout=layout,
    )
    if not is_prime(sch.p) or sch.p < max(sch.m, 2):
        raise ValueError("scheme file carries an invalid field prime")
    return sch


def scheme_hash(sch: Scheme) -> str:
    return hashlib.sha256(scheme_to_json(sch).encode("utf-8")).hexdigest()


def shares_to_json(sch: Scheme, bundle: SharesBundle) -> str:
    doc = {
        "scheme_hash": scheme_hash(sch),
        "shares": {v: list(bundle.shares[v]) for v in sch.tree.vertices},
    }
    return json.dumps(doc, indent=2) + "\n"


def shares_from_json(text: str, sch: Scheme | None = None) -> SharesBundle:
    doc = json.loads(text)
    if sch is not None and doc.get("scheme_hash") != scheme_hash(sch):
        raise ValueError("shares file does not match the scheme file")
    return SharesBundle(shares={v: tuple(int(x) for x in vals)
                                for v, vals in doc["shares"].items()})
