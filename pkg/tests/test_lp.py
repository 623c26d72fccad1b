from fractions import Fraction

import pytest

from coreshare.lp import (
    EQ,
    GE,
    LE,
    LinearProgram,
    Rational,
    solve_min,
    solve_min_dual,
)


def test_single_constraint():
    lp = LinearProgram(["x"])
    lp.add({0: 1}, GE, 3)
    lp.set_objective({0: 1})
    sol = solve_min(lp)
    assert sol.status == "optimal"
    assert sol.value == 3


def test_infeasible():
    lp = LinearProgram(["x"])
    lp.add({0: 1}, LE, -1)
    lp.set_objective({0: 1})
    assert solve_min(lp).status == "infeasible"


def test_two_sided():
    lp = LinearProgram(["t", "y"])
    lp.add({0: 1, 1: -1}, GE, 0)  # t >= y
    lp.add({0: 1, 1: 1}, GE, 1)  # t >= 1 - y
    lp.set_objective({0: 1})
    sol = solve_min(lp)
    assert sol.status == "optimal"
    assert sol.value == Fraction(1, 2)
    assert sol.assignment["y"] == Fraction(1, 2)


def test_unbounded():
    lp = LinearProgram(["x"])
    lp.set_objective({0: -1})
    assert solve_min(lp).status == "unbounded"


def test_equalities():
    lp = LinearProgram(["x", "y"])
    lp.add({0: 1, 1: 1}, EQ, 5)
    lp.add({0: 1, 1: -1}, EQ, 1)
    lp.set_objective({0: 1, 1: 1})
    sol = solve_min(lp)
    assert sol.status == "optimal"
    assert sol.assignment["x"] == 3 and sol.assignment["y"] == 2


def test_exact_rationals_no_drift():
    # covering constraint 2 with y = 3/5 is cheapest and already satisfies
    # constraint 1 (3/35 > 1/21), so the optimum is exactly 3/5
    lp = LinearProgram(["x", "y", "z"])
    lp.add({0: Rational(1, 3), 1: Rational(1, 7)}, GE, Rational(1, 21))
    lp.add({1: 1, 2: Rational(2, 5)}, GE, Rational(3, 5))
    lp.set_objective({0: 1, 1: 1, 2: 1})
    sol = solve_min(lp)
    assert sol.status == "optimal"
    assert sol.value == Fraction(3, 5)


def test_determinism():
    def build():
        lp = LinearProgram(["a", "b", "c"])
        lp.add({0: 2, 1: 1}, GE, 4)
        lp.add({1: 1, 2: 3}, GE, 6)
        lp.add({0: 1, 2: 1}, LE, 10)
        lp.set_objective({0: 3, 1: 1, 2: 2})
        return lp

    s1 = solve_min(build())
    s2 = solve_min(build())
    assert s1.values == s2.values and s1.value == s2.value


def test_dual_route_matches_primal():
    lp = LinearProgram(["t", "y"])
    lp.add({0: 1, 1: -1}, GE, 0)
    lp.add({0: 1, 1: 1}, GE, 1)
    lp.set_objective({0: 1})
    a = solve_min(lp)
    b = solve_min_dual(lp)
    assert a.value == b.value == Fraction(1, 2)


def test_dual_route_rejects_bad_shapes():
    lp = LinearProgram(["x"])
    lp.add({0: 1}, LE, 1)
    lp.set_objective({0: 1})
    with pytest.raises(ValueError):
        solve_min_dual(lp)
    lp2 = LinearProgram(["x"])
    lp2.add({0: 1}, GE, 1)
    lp2.set_objective({0: -1})
    with pytest.raises(ValueError):
        solve_min_dual(lp2)


def test_dual_route_infeasible():
    lp = LinearProgram(["x", "y"])
    lp.add({0: 1, 1: 1}, GE, 2)
    lp.add({0: -1, 1: -1}, GE, -1)  # x + y <= 1: contradiction
    lp.set_objective({0: 1, 1: 1})
    assert solve_min_dual(lp).status == "infeasible"


def test_bracketing_via_negated_objective():
    # For a bounded feasible region, min <= max; re-solving with the
    # objective negated brackets the optimum from both sides.
    lp = LinearProgram(["x", "y"])
    lp.add({0: 1, 1: 1}, GE, 1)
    lp.add({0: 1}, LE, 2)
    lp.add({1: 1}, LE, 2)
    lp.set_objective({0: 1, 1: 2})
    low = solve_min(lp)
    lp_neg = LinearProgram(["x", "y"])
    lp_neg.add({0: 1, 1: 1}, GE, 1)
    lp_neg.add({0: 1}, LE, 2)
    lp_neg.add({1: 1}, LE, 2)
    lp_neg.set_objective({0: -1, 1: -2})
    high = solve_min(lp_neg)
    assert low.status == high.status == "optimal"
    assert low.value <= -high.value
    assert low.value == 1  # x=1,y=0
    assert -high.value == 6  # x=2,y=2


def test_degenerate_lp_terminates():
    # many redundant constraints through the same vertex
    lp = LinearProgram(["x", "y"])
    for k in range(1, 9):
        lp.add({0: k, 1: 1}, GE, 0)
        lp.add({0: 1, 1: k}, GE, 0)
    lp.add({0: 1, 1: 1}, GE, 1)
    lp.set_objective({0: 1, 1: 1})
    sol = solve_min(lp)
    assert sol.status == "optimal"
    assert sol.value == 1
