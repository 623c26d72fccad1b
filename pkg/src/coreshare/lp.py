"""Exact-arithmetic linear programming.

Dense-tableau two-phase simplex with Bland's anti-cycling rule over exact
rationals.  All variables are implicitly bounded below by 0; relations may be
>=, <= or =.  Solutions are re-verified against every constraint before they
are returned, so a returned "optimal" is a certificate, not a claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

ZERO = Rational(0)
ONE = Rational(1)

GE = ">="
LE = "<="
EQ = "="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(Exception):
    """Internal solver failure (a self-check did not hold)."""


@dataclass(frozen=True)
class Constraint:
    """Sparse linear constraint: sum(coeff * var) <rel> rhs."""

    coeffs: tuple[tuple[int, Rational], ...]  # (var index, coefficient), index-sorted
    rel: str
    rhs: Rational

    def __post_init__(self):
        if self.rel not in (GE, LE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")

    def evaluate(self, values) -> Rational:
        return sum((c * values[i] for i, c in self.coeffs), ZERO)

    def satisfied_by(self, values) -> bool:
        lhs = self.evaluate(values)
        if self.rel == GE:
            return lhs >= self.rhs
        if self.rel == LE:
            return lhs <= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """Minimization LP over named non-negative variables."""

    var_names: list[str]
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, Rational] = field(default_factory=dict)

    def add(self, coeffs: dict[int, Rational] | list[tuple[int, Rational]], rel: str, rhs) -> None:
        items = sorted(coeffs.items()) if isinstance(coeffs, dict) else sorted(coeffs)
        merged: dict[int, Rational] = {}
        for i, c in items:
            if not 0 <= i < len(self.var_names):
                raise ValueError(f"variable index {i} out of range")
            merged[i] = merged.get(i, ZERO) + Rational(c)
        tidy = tuple((i, c) for i, c in sorted(merged.items()) if c != 0)
        self.constraints.append(Constraint(tidy, rel, Rational(rhs)))

    def set_objective(self, coeffs: dict[int, Rational]) -> None:
        self.objective = {i: Rational(c) for i, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Rational | None = None
    values: tuple[Rational, ...] = ()  # by variable index
    var_names: tuple[str, ...] = ()

    @property
    def assignment(self) -> dict[str, Rational]:
        return dict(zip(self.var_names, self.values))


def _pivot(tab: list[list], obj: list, basis: list[int], r: int, col: int) -> None:
    row = tab[r]
    piv = row[col]
    if piv != ONE:
        inv = ONE / piv
        for j in range(len(row)):
            if row[j]:
                row[j] *= inv
    nz = [j for j in range(len(row)) if row[j]]
    for i in range(len(tab)):
        if i == r:
            continue
        f = tab[i][col]
        if f:
            ri = tab[i]
            for j in nz:
                ri[j] -= f * row[j]
    f = obj[col]
    if f:
        for j in nz:
            obj[j] -= f * row[j]
    basis[r] = col


_STALL_LIMIT = 60  # consecutive degenerate pivots before Bland's rule kicks in


def _lex_less(row_a, piv_a, row_b, piv_b, order) -> bool:
    """True if row_a/piv_a precedes row_b/piv_b lexicographically over `order`."""
    for j in order:
        lhs = row_a[j] * piv_b
        rhs = row_b[j] * piv_a
        if lhs != rhs:
            return lhs < rhs
    return False


def _iterate(tab: list[list], obj: list, basis: list[int], ncols: int,
             lex_order: tuple[int, ...], bland_fallback: bool = True) -> str:
    """Run simplex iterations; returns 'optimal' or 'unbounded'.

    The working rule is Dantzig pricing with a lexicographic ratio test
    (compare rhs first, then the columns in `lex_order`, which should start
    with the initial identity block so rows stay lexicographically positive).
    When the identity block survives intact (bland_fallback=False) the
    lexicographic rule alone is anti-cycling and the loop never leaves it.
    Otherwise a long stretch of degenerate pivots switches to Bland's rule,
    whose termination guarantee makes the combination finite; strict
    objective improvement switches back.  Both regimes are deterministic:
    ties break toward the lowest index.
    """
    rhs = ncols  # rhs column index
    stall = 0
    while True:
        bland = bland_fallback and stall >= _STALL_LIMIT
        col = -1
        if bland:
            for j in range(ncols):
                if obj[j] < 0:
                    col = j
                    break
        else:
            best = ZERO
            for j in range(ncols):
                if obj[j] < best:
                    best = obj[j]
                    col = j
        if col < 0:
            return OPTIMAL
        best_row = -1
        if bland:
            best_ratio = None
            for i in range(len(tab)):
                a = tab[i][col]
                if a > 0:
                    ratio = tab[i][rhs] / a
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[best_row]
                    ):
                        best_ratio = ratio
                        best_row = i
        else:
            piv = None
            for i in range(len(tab)):
                a = tab[i][col]
                if a > 0:
                    if best_row < 0 or _lex_less(tab[i], a, tab[best_row], piv, lex_order):
                        best_row = i
                        piv = a
        if best_row < 0:
            return UNBOUNDED
        degenerate = tab[best_row][rhs] == 0
        _pivot(tab, obj, basis, best_row, col)
        stall = stall + 1 if degenerate else 0


def _verify_solution(lp: LinearProgram, values: list) -> Rational:
    """Substitute values into every constraint; return the objective value."""
    for con in lp.constraints:
        if not con.satisfied_by(values):
            raise LPError(
                f"optimal assignment violates constraint {con.coeffs} {con.rel} {con.rhs}"
            )
    if any(v < 0 for v in values):
        raise LPError("optimal assignment has a negative variable")
    return sum((c * values[i] for i, c in lp.objective.items()), ZERO)


def solve_min_dual(lp: LinearProgram) -> LPSolution:
    """Minimize via the dual; needs all constraints '>=' and objective >= 0.

    Under those conditions the dual (max b'y subject to A'y <= c, y >= 0)
    starts feasible on its slack basis, so no phase-1 work is needed, and the
    tableau has one row per primal variable regardless of how many constraints
    there are.  The primal assignment is read off the slack reduced costs and
    re-verified exactly, the same certificate solve_min gives.
    """
    nvars = len(lp.var_names)
    if nvars == 0:
        raise ValueError("LP has no variables")
    cons = lp.constraints
    if any(con.rel != GE for con in cons):
        raise ValueError("solve_min_dual requires all constraints to be '>='")
    c = [ZERO] * nvars
    for i, v in lp.objective.items():
        c[i] = Rational(v)
    if any(v < 0 for v in c):
        raise ValueError("solve_min_dual requires a non-negative objective")

    m = len(cons)
    width = m + nvars + 1  # y columns, slack columns, rhs
    tab = [[ZERO] * width for _ in range(nvars)]
    for j in range(nvars):
        tab[j][m + j] = ONE
        tab[j][width - 1] = c[j]
    for i, con in enumerate(cons):
        for j, aij in con.coeffs:
            tab[j][i] = aij
    obj = [ZERO] * width
    for i, con in enumerate(cons):
        obj[i] = -con.rhs
    basis = [m + j for j in range(nvars)]
    # The slack block is a full identity, so lexicographic pivoting alone
    # is anti-cycling; no Bland fallback (it crawls on this degenerate form).
    lex_order = (width - 1, *range(m, m + nvars), *range(m))
    status = _iterate(tab, obj, basis, width - 1, lex_order, bland_fallback=False)
    if status != OPTIMAL:
        # Dual unbounded means the primal feasible set is empty.
        return LPSolution(status=INFEASIBLE)
    values = [obj[m + j] for j in range(nvars)]
    value = _verify_solution(lp, values)
    if value != obj[width - 1]:
        raise LPError("primal value recovered from the dual does not match")
    return LPSolution(
        status=OPTIMAL,
        value=value,
        values=tuple(values),
        var_names=tuple(lp.var_names),
    )


def solve_min(lp: LinearProgram) -> LPSolution:
    """Minimize the LP objective subject to the constraints and x >= 0.

    Returns an LPSolution whose status is one of optimal / infeasible /
    unbounded.  On optimal the assignment has been substituted back into every
    constraint; a violation raises LPError.
    """
    nvars = len(lp.var_names)
    if nvars == 0:
        raise ValueError("LP has no variables")
    m = len(lp.constraints)

    # Normalized rows: dense coefficients, relation, rhs >= 0.
    rows: list[tuple[list, str, object]] = []
    for con in lp.constraints:
        dense = [ZERO] * nvars
        for i, c in con.coeffs:
            dense[i] = c
        rel, rhs = con.rel, con.rhs
        if rhs < 0:
            dense = [-c for c in dense]
            rhs = -rhs
            rel = {GE: LE, LE: GE, EQ: EQ}[rel]
        rows.append((dense, rel, rhs))

    # Column layout: structural vars, slack/surplus vars, artificials, rhs.
    nslack = sum(1 for _, rel, _ in rows if rel != EQ)
    slack_base = nvars
    art_cols: list[int] = []
    tab: list[list] = []
    basis: list[int] = []
    next_slack = slack_base
    pending_art: list[int] = []  # row indices needing an artificial
    for dense, rel, rhs in rows:
        row = dense + [ZERO] * nslack + [rhs]
        if rel == LE:
            row[next_slack] = ONE
            basis.append(next_slack)
            next_slack += 1
        elif rel == GE:
            if rhs == 0:
                # Negating makes the surplus column +1, usable as the basis.
                for j in range(nvars):
                    row[j] = -row[j]
                row[next_slack] = ONE
                basis.append(next_slack)
            else:
                row[next_slack] = -ONE
                basis.append(-1)
                pending_art.append(len(tab))
            next_slack += 1
        else:
            basis.append(-1)
            pending_art.append(len(tab))
        tab.append(row)

    ncols = nvars + nslack
    if pending_art:
        ncols_art = ncols + len(pending_art)
        for row in tab:
            rhs_val = row.pop()
            row.extend([ZERO] * len(pending_art))
            row.append(rhs_val)
        for k, r in enumerate(pending_art):
            tab[r][ncols + k] = ONE
            basis[r] = ncols + k
            art_cols.append(ncols + k)

        # Phase 1: minimize the sum of artificials.
        obj1 = [ZERO] * (ncols_art + 1)
        for a in art_cols:
            obj1[a] = ONE
        for i, b in enumerate(basis):
            if obj1[b]:
                f = obj1[b]
                for j in range(ncols_art + 1):
                    if tab[i][j]:
                        obj1[j] -= f * tab[i][j]
        ident = sorted(basis)
        rest = [j for j in range(ncols_art) if j not in set(ident)]
        status = _iterate(tab, obj1, basis, ncols_art, (ncols_art, *ident, *rest))
        if status != OPTIMAL or -obj1[ncols_art] != 0:
            return LPSolution(status=INFEASIBLE)
        # Drive leftover artificials out of the basis, or drop redundant rows.
        for i in reversed(range(len(tab))):
            if basis[i] in art_cols:
                piv_col = next((j for j in range(ncols) if tab[i][j] != 0), -1)
                if piv_col < 0:
                    del tab[i]
                    del basis[i]
                else:
                    _pivot(tab, obj1, basis, i, piv_col)
        for row in tab:
            del row[ncols:-1]
    # Phase 2.
    obj = [ZERO] * (ncols + 1)
    for i, c in lp.objective.items():
        obj[i] = Rational(c)
    for i, b in enumerate(basis):
        if obj[b]:
            f = obj[b]
            for j in range(ncols + 1):
                if tab[i][j]:
                    obj[j] -= f * tab[i][j]
    status = _iterate(tab, obj, basis, ncols,
                      (ncols, *range(nvars, ncols), *range(nvars)))
    if status == UNBOUNDED:
        return LPSolution(status=UNBOUNDED)

    values = [ZERO] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            values[b] = tab[i][ncols]
    value = _verify_solution(lp, values)
    return LPSolution(
        status=OPTIMAL,
        value=value,
        values=tuple(values),
        var_names=tuple(lp.var_names),
    )
