import random
from fractions import Fraction

import pytest

from coreshare.cores import (
    max_core_bruteforce,
    max_core_weight_bruteforce,
    maximalize_weights,
    sigma_of_tree,
    tree_core_sizes,
    weighted_core_profile,
)
from coreshare.graphs import make_graph, parse_graph, root_at
from coreshare.stars import (
    StarPacking,
    extract_stars,
    orient_edges,
    orientation_of_packing,
    star_cover_rate_lp,
    verify_packing,
)

from conftest import random_connected_graph, random_tree


P4_WEIGHTS = {"a": 2, "b": 1, "c": 1, "d": 2}

FIG2_TABLE = {
    ("A", "B"): 3, ("B", "A"): 4,
    ("B", "C"): 6, ("C", "B"): 1,
    ("D", "C"): 2, ("C", "D"): 5,
    ("E", "D"): 5, ("D", "E"): 2,
    ("F", "E"): 3, ("E", "F"): 4,
    ("G", "F"): 1, ("F", "G"): 6,
}


def test_orient_p4(p4):
    o = orient_edges(root_at(p4, "b"), P4_WEIGHTS, 2)
    assert o.outgoing("a", "b") == 0 and o.outgoing("b", "a") == 2
    assert o.outgoing("c", "b") == 1 and o.outgoing("b", "c") == 1
    assert o.outgoing("d", "c") == 0 and o.outgoing("c", "d") == 2


def test_orient_fig2_matches_published_table(fig2, fig2_weights):
    o = orient_edges(root_at(fig2, "C"), fig2_weights, 7)
    for pair, count in FIG2_TABLE.items():
        assert o.outgoing(*pair) == count, pair


def test_orient_p2():
    g = parse_graph("a b")
    o = orient_edges(root_at(g), {"a": 1, "b": 1}, 1)
    assert o.outgoing("b", "a") == 0 and o.outgoing("a", "b") == 1


def test_orient_refuses_nonmaximal(p4):
    with pytest.raises(ValueError):
        orient_edges(root_at(p4, "b"), {v: 1 for v in p4.vertices}, 2)


def test_orient_refuses_leaf_root(p4):
    with pytest.raises(ValueError):
        orient_edges(root_at(p4, "a"), P4_WEIGHTS, 2)


def test_orientation_sum_invariant(fig2, fig2_weights):
    o = orient_edges(root_at(fig2, "C"), fig2_weights, 7)
    for u, v in fig2.edges:
        assert o.outgoing(u, v) + o.outgoing(v, u) == 7


def test_orientation_two_sided_core_bound():
    # out(v,u) is at least the best core weight containing v on v's side
    rng = random.Random(23)
    for _ in range(15):
        g = random_tree(rng.randrange(2, 11), rng)
        c = tree_core_sizes(root_at(g)).global_c
        w = maximalize_weights(g, c)
        t = root_at(g)
        o = orient_edges(t, w, c)
        for u, v in g.edges:
            for a, b in ((u, v), (v, u)):
                side = _component_with(g, a, (a, b))
                sub = _induced(g, side, w)
                best = max_core_weight_bruteforce(sub, w, containing=a)
                assert o.outgoing(a, b) >= best


def _component_with(g, start, removed_edge):
    banned = frozenset(removed_edge)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if frozenset((x, y)) == banned:
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _induced(g, keep, weights):
    edges = [e for e in g.edges if e[0] in keep and e[1] in keep]
    return make_graph(edges, weights={v: weights[v] for v in keep},
                      vertices=[v for v in g.vertices if v in keep])


def test_extract_stars_p4(p4):
    t = root_at(p4, "b")
    o = orient_edges(t, P4_WEIGHTS, 2)
    packing = extract_stars(t, o)
    got = [(s.center, s.leaves) for s in packing.stars]
    assert got == [("b", ("a", "c")), ("b", ("a",)), ("c", ("b", "d")), ("c", ("d",))]
    assert [s.index for s in packing.stars] == [1, 2, 3, 4]


def test_extract_stars_k13(k13):
    t = root_at(k13)
    c = tree_core_sizes(t).global_c
    w = maximalize_weights(k13, c)
    packing = extract_stars(t, orient_edges(t, w, c))
    assert len(packing.stars) == 1
    assert packing.stars[0].center == "a"
    assert set(packing.stars[0].leaves) == {"b", "c", "d"}


def test_every_directed_edge_in_exactly_one_star(fig2, fig2_weights):
    t = root_at(fig2, "C")
    o = orient_edges(t, fig2_weights, 7)
    packing = extract_stars(t, o)
    recovered = orientation_of_packing(packing, fig2)
    assert recovered is not None
    assert recovered.c == 7
    for key, count in o.out.items():
        assert recovered.outgoing(*key) == count


def test_verify_packing_p4(p4):
    t = root_at(p4, "b")
    packing = extract_stars(t, orient_edges(t, P4_WEIGHTS, 2))
    report = verify_packing(p4, packing, 2)
    assert report.ok
    assert max(k for _, k in report.vertex_lines) == 3
    assert str(report).endswith("PASS")


def test_verify_packing_detects_removal(p4):
    t = root_at(p4, "b")
    packing = extract_stars(t, orient_edges(t, P4_WEIGHTS, 2))
    broken = StarPacking(stars=tuple(s for s in packing.stars if s.index != 2))
    report = verify_packing(p4, broken, 2)
    assert not report.ok
    assert ("a", "b", 1) in report.edge_lines
    assert str(report).endswith("FAIL")


def test_verify_packing_fig2(fig2, fig2_weights):
    t = root_at(fig2, "C")
    packing = extract_stars(t, orient_edges(t, fig2_weights, 7))
    report = verify_packing(fig2, packing, 7)
    assert report.ok
    assert all(k == 7 for _, _, k in report.edge_lines)
    assert max(k for _, k in report.vertex_lines) <= 13


def test_verify_packing_rejects_foreign_edge(p4):
    from coreshare.stars import Star

    packing = StarPacking(stars=(Star(center="a", leaves=("c",), index=1),))
    with pytest.raises(ValueError):
        verify_packing(p4, packing, 1)


def test_star_lp_delta(delta):
    assert star_cover_rate_lp(delta).value == Fraction(5, 3)


def test_star_lp_trees(p4):
    assert star_cover_rate_lp(p4).value == Fraction(3, 2)
    rng = random.Random(31)
    for _ in range(8):
        g = random_tree(rng.randrange(2, 10), rng)
        c = tree_core_sizes(root_at(g)).global_c
        assert star_cover_rate_lp(g).value == sigma_of_tree(c)


def test_star_lp_triangle(c3):
    assert star_cover_rate_lp(c3).value == Fraction(3, 2)


def test_star_lp_no_edges():
    with pytest.raises(ValueError):
        star_cover_rate_lp(make_graph([], vertices=["a"]))


def test_star_lp_decomposition_certifies(delta, c5):
    for g in (delta, c5):
        res = star_cover_rate_lp(g)
        edge_w = {frozenset(e): Fraction(0) for e in g.edges}
        vertex_w = {v: Fraction(0) for v in g.vertices}
        for star, weight in res.weighted_stars:
            assert weight > 0
            assert star.leaves
            vertex_w[star.center] += Fraction(weight.numerator, weight.denominator)
            for leaf in star.leaves:
                assert g.has_edge(star.center, leaf)
                vertex_w[leaf] += Fraction(weight.numerator, weight.denominator)
                edge_w[frozenset((star.center, leaf))] += Fraction(
                    weight.numerator, weight.denominator
                )
        assert all(wt >= 1 for wt in edge_w.values())
        assert max(vertex_w.values()) == res.value


def test_star_lp_lower_bound_by_core(delta, c3, c5):
    rng = random.Random(37)
    graphs = [delta, c3, c5] + [random_connected_graph(rng.randrange(2, 8), rng)
                                for _ in range(10)]
    for g in graphs:
        c, _ = max_core_bruteforce(g)
        if c == 0:
            continue
        assert star_cover_rate_lp(g).value >= sigma_of_tree(c)
