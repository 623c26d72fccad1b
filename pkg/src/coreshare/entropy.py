"""Entropy-method lower bound for the information complexity of a graph.

Models the normalized share entropies as a set function f over participant
subsets and minimizes the worst singleton value subject to the Shannon-type
constraint families:

  (a) f(empty) = 0
  (b) monotonicity, elemental:     f(A+x) >= f(A)
  (c) submodularity, elemental:    f(A+x) + f(A+y) >= f(A+xy) + f(A)
  (d) strict monotonicity:         f(B+x) >= f(B) + 1   (B independent, B+x qualified)
  (e) strict submodularity:        f(A) + f(B) >= f(A|B) + f(A&B) + 1
                                   (A, B qualified, A&B independent)

(b), (c), (d) are generated in elemental/one-step form (the general forms
follow by chaining); (e) is generated over all subset pairs.  Subsets are
bitmasks over the canonical vertex order; variable i is f of mask i, with t
appended last.

The solver activates constraints lazily: it starts from a small working set,
solves exactly, and adds violated constraints until the optimum of the
working LP satisfies the entire system, which certifies it as the optimum of
the full LP.  Values are exact rationals end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .lp import GE, EQ, LinearProgram, LPError, OPTIMAL, Rational, solve_min_dual

MAX_ENTROPY_VERTICES = 12


@dataclass(frozen=True)
class EntropyConstraint:
    family: str  # 'a', 'b', 'c', 'd', 'e' or 'obj'
    coeffs: tuple[tuple[int, int], ...]  # (variable index, integer coefficient)
    rel: str
    rhs: int

    def violated_by(self, values) -> bool:
        lhs = sum(c * values[i] for i, c in self.coeffs)
        if self.rel == GE:
            return lhs < self.rhs
        return lhs != self.rhs

    def binding_at(self, values) -> bool:
        return sum(c * values[i] for i, c in self.coeffs) == self.rhs


@dataclass(frozen=True)
class EntropyLP:
    """Constraint system over f-variables (index = subset bitmask) plus t."""

    n: int
    vertices: tuple[str, ...]
    constraints: tuple[EntropyConstraint, ...]

    @property
    def t_index(self) -> int:
        return 1 << self.n

    @property
    def num_vars(self) -> int:
        return (1 << self.n) + 1

    def var_names(self) -> list[str]:
        return [f"f[{mask}]" for mask in range(1 << self.n)] + ["t"]

    def family_count(self, family: str) -> int:
        return sum(1 for c in self.constraints if c.family == family)


def is_qualified(g: Graph, A) -> bool:
    """True iff A contains both endpoints of some edge."""
    members = set(A)
    for v in members:
        g.require_vertex(v)
    return any(u in members and v in members for u, v in g.edges)


def _qualified_masks(g: Graph) -> list[bool]:
    n = g.n
    idx = g.index
    edge_masks = [(1 << idx[u]) | (1 << idx[v]) for u, v in g.edges]
    out = [False] * (1 << n)
    for mask in range(1 << n):
        for em in edge_masks:
            if mask & em == em:
                out[mask] = True
                break
    return out


def build_entropy_lp(g: Graph) -> EntropyLP:
    """Generate the full (a)-(e) system plus the objective links t >= f({v})."""
    n = g.n
    if n > MAX_ENTROPY_VERTICES:
        raise ValueError(
            f"graph has {n} vertices, above the entropy-LP cap {MAX_ENTROPY_VERTICES}"
        )
    qualified = _qualified_masks(g)
    full = 1 << n
    t_index = full
    cons: list[EntropyConstraint] = []
    seen: set[tuple] = set()

    def add(family: str, coeffs: dict[int, int], rel: str, rhs: int) -> None:
        tidy = tuple(sorted((i, c) for i, c in coeffs.items() if c != 0))
        key = (tidy, rel, rhs)
        if key in seen:
            return
        seen.add(key)
        cons.append(EntropyConstraint(family, tidy, rel, rhs))

    add("a", {0: 1}, EQ, 0)
    for mask in range(full):
        for x in range(n):
            if mask >> x & 1:
                continue
            mx = mask | 1 << x
            add("b", {mx: 1, mask: -1}, GE, 0)
            for y in range(x + 1, n):
                if mask >> y & 1:
                    continue
                my = mask | 1 << y
                mxy = mx | 1 << y
                add("c", {mx: 1, my: 1, mxy: -1, mask: -1}, GE, 0)
    for mask in range(full):
        if qualified[mask]:
            continue
        for x in range(n):
            if mask >> x & 1:
                continue
            mx = mask | 1 << x
            if qualified[mx]:
                add("d", {mx: 1, mask: -1}, GE, 1)
    qualified_list = [m for m in range(full) if qualified[m]]
    for ai, a in enumerate(qualified_list):
        for b in qualified_list[ai + 1:]:
            inter = a & b
            if qualified[inter]:
                continue
            union = a | b
            add("e", {a: 1, b: 1, union: -1, inter: -1}, GE, 1)
    for v in range(n):
        add("obj", {t_index: 1, (1 << v): -1}, GE, 0)
    return EntropyLP(n=n, vertices=g.vertices, constraints=tuple(cons))


def dump_lp(elp: EntropyLP) -> str:
    """Stable text dump: one constraint per line, then the objective."""
    lines = []
    for con in elp.constraints:
        terms = []
        for i, c in con.coeffs:
            name = "t" if i == elp.t_index else f"f[{i}]"
            terms.append(f"{c}*{name}")
        lines.append(f"{' '.join(terms)} {con.rel} {con.rhs}")
    lines.append("min t")
    return "\n".join(lines) + "\n"


def solve_entropy_lp(elp: EntropyLP, batch: int = 800) -> tuple[Rational, tuple[Rational, ...]]:
    """Exact optimum of the full system via lazy constraint activation.

    Returns (optimal t, values of all f-variables and t by index).  The
    returned point is feasible for every generated constraint, which makes
    the working-LP optimum the full-LP optimum.

    The working LPs are solved through the dual, which needs pure >= rows;
    f(empty) is substituted out as 0 (it only ever appears with non-positive
    coefficients) and re-inserted into the reported assignment, where the
    equality from family (a) holds by construction.
    """
    full = 1 << elp.n
    t_index = elp.t_index
    # dual-system variable indexing: mask m >= 1 -> m - 1, t -> full - 1
    names = [f"f[{mask}]" for mask in range(1, full)] + ["t"]

    def remap(coeffs: tuple[tuple[int, int], ...]) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, c in coeffs:
            if i == 0:
                continue  # f(empty) == 0
            out[(full - 1) if i == t_index else (i - 1)] = c
        return out

    core = {
        i for i, con in enumerate(elp.constraints) if con.family in ("a", "d", "obj")
    }
    active = set(core)
    drop_rounds = 40  # after this many rounds grow monotonically (guarantees termination)
    round_no = 0
    while True:
        lp = LinearProgram(list(names))
        for i in sorted(active):
            con = elp.constraints[i]
            if con.family == "a":
                continue  # substituted
            lp.add(remap(con.coeffs), GE, con.rhs)
        lp.set_objective({full - 1: 1})
        sol = solve_min_dual(lp)
        if sol.status != OPTIMAL:
            raise LPError(f"entropy LP unexpectedly {sol.status}")
        values = (Rational(0),) + sol.values  # f(empty) back at index 0
        violated: list[tuple[Rational, int]] = []
        for i, con in enumerate(elp.constraints):
            if i in active:
                continue
            lhs = sum(c * values[j] for j, c in con.coeffs)
            if lhs < con.rhs:
                violated.append((con.rhs - lhs, i))
        if not violated:
            return sol.value, values
        # Deepest cuts first; drop rows gone slack so the working LP stays
        # near the true active set.
        violated.sort(key=lambda p: (-p[0], p[1]))
        if round_no < drop_rounds:
            active = core | {
                i for i in active if elp.constraints[i].binding_at(values)
            }
        active.update(i for _, i in violated[:batch])
        round_no += 1


def entropy_lower_bound(g: Graph) -> Rational:
    """Exact optimum of the entropy LP: a lower bound on sigma(G)."""
    value, _ = solve_entropy_lp(build_entropy_lp(g))
    return value
