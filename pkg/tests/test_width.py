"""Pathwidth: exact DP against an all-orderings oracle, the linear tree
routine against the exact DP, and certificate plumbing.

Pathwidth equals vertex separation: vs(G) = min over vertex orderings of
the maximum boundary |d(P)| over prefixes P, where d(P) is the set of
prefix vertices with a neighbor outside the prefix.  The oracle below
evaluates that definition literally over all n! orderings, so it shares no
code with the subset DP it checks.  Known values anchor the larger cases:
pw(P_n) = 1, pw(C_n) = 2, pw(K_n) = n-1, pw(K_{s,t}) = min(s,t), and the
complete binary tree of depth 2r has pathwidth exactly r.
"""

from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pwtrees.budget import EXHAUSTED, Budget
from pwtrees.generators import make_complete, make_complete_bipartite, make_tree, random_graph, random_subdivision
from pwtrees.graphs import Graph, bits, mask_of, parse_graph, serialize_graph
from pwtrees.width import (
    PathDecomposition,
    decomposition_from_order,
    parse_decomposition,
    pathwidth_at_most,
    pathwidth_exact,
    serialize_decomposition,
    tree_pathwidth,
    verify_path_decomposition,
)

PROPERTY_SETTINGS = settings(
    max_examples=120,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def brute_pathwidth(G: Graph) -> int:
    """Vertex separation evaluated literally over all orderings (n <= 6)."""
    best = G.n
    verts = list(G.vertices())
    for order in permutations(verts):
        prefix = 0
        worst = 0
        for v in order:
            prefix |= 1 << v
            boundary = sum(1 for u in bits(prefix) if G.adj(u) & ~prefix)
            worst = max(worst, boundary)
        best = min(best, worst)
    return best


def small_graphs(max_n: int = 6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                lambda e: e[0] != e[1]
            ),
            max_size=2 * n,
        ).map(lambda es: Graph(n, es))
    )


@PROPERTY_SETTINGS
@given(small_graphs())
def test_exact_matches_permutation_oracle(G: Graph):
    width, cert = pathwidth_exact(G)
    assert width == brute_pathwidth(G)
    ok, cert_width = verify_path_decomposition(G, cert)
    assert ok and cert_width == width


@pytest.mark.parametrize(
    "G,want",
    [
        (Graph(1, []), 0),
        (Graph(5, [(i, i + 1) for i in range(4)]), 1),
        (Graph(6, [(i, (i + 1) % 6) for i in range(6)]), 2),
        (make_complete(5), 4),
        (make_complete_bipartite(2, 4), 2),
        (make_complete_bipartite(3, 3), 3),
    ],
)
def test_known_pathwidths(G: Graph, want: int):
    width, cert = pathwidth_exact(G)
    assert width == want
    assert verify_path_decomposition(G, cert) == (True, want)


@PROPERTY_SETTINGS
@given(small_graphs(), st.integers(0, 4))
def test_at_most_agrees_with_exact(G: Graph, k: int):
    width, _ = pathwidth_exact(G)
    res = pathwidth_at_most(G, k)
    if width <= k:
        assert res is not None and res is not EXHAUSTED
        ok, cert_width = verify_path_decomposition(G, res)
        assert ok and cert_width <= k
    else:
        assert res is None


def test_budget_exhaustion_reported():
    G = random_graph(14, 0.5, seed=2)
    assert pathwidth_exact(G, Budget(3)) is EXHAUSTED
    assert pathwidth_at_most(G, 3, Budget(2)) is EXHAUSTED


def random_tree(n: int, seed: int) -> Graph:
    """Tree from a Prufer-like attachment: vertex i hangs below a seeded
    earlier vertex, which is uniform over labeled recursive trees."""
    from pwtrees.generators import SplitMix64

    rng = SplitMix64(seed)
    edges = [(rng.below(i), i) for i in range(1, n)]
    return Graph(n, edges)


@PROPERTY_SETTINGS
@given(st.integers(1, 11), st.integers(0, 2**32 - 1))
def test_tree_routine_matches_exact(n: int, seed: int):
    T = random_tree(n, seed)
    width, cert = tree_pathwidth(T)
    ok, cert_width = verify_path_decomposition(T, cert)
    assert ok and cert_width == width
    exact_width, _ = pathwidth_exact(T)
    assert width == exact_width


@pytest.mark.parametrize("r,want", [(1, 1), (2, 1), (3, 2), (4, 2), (6, 3), (8, 4)])
def test_complete_binary_tree_pathwidth(r: int, want: int):
    T = make_tree(2, r)
    width, cert = tree_pathwidth(T)
    assert width == want
    assert verify_path_decomposition(T.graph, cert) == (True, want)


def test_tree_pathwidth_accepts_rooted_or_plain():
    t = make_tree(3, 2)
    assert tree_pathwidth(t)[0] == tree_pathwidth(t.graph)[0]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_subdivision_keeps_tree_pathwidth_bound(seed: int):
    # T_{2,4} is a minor of any of its subdivisions and pw is minor-monotone,
    # so the subdivided tree keeps pw >= 2; it may exceed it (a subdivided
    # caterpillar already stops being one).
    T = make_tree(2, 4).graph
    S = random_subdivision(T, 3, seed)
    width, cert = tree_pathwidth(S)
    assert width >= 2
    assert verify_path_decomposition(S, cert) == (True, width)


def test_decomposition_from_order_covers():
    G = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    D = decomposition_from_order(G, [0, 1, 2, 3])
    ok, width = verify_path_decomposition(G, D)
    assert ok and width >= 2


def test_verify_rejects_missing_edge():
    G = Graph(3, [(0, 1), (1, 2)])
    D = PathDecomposition((mask_of([0, 1]), mask_of([2])))
    ok, _ = verify_path_decomposition(G, D)
    assert not ok


def test_verify_rejects_split_vertex():
    G = Graph(3, [(0, 1), (1, 2)])
    # vertex 1 appears in bags 0 and 2 but not 1: not an interval
    D = PathDecomposition((mask_of([0, 1]), mask_of([0, 2]), mask_of([1, 2])))
    ok, _ = verify_path_decomposition(G, D)
    assert not ok


def test_decomposition_serialization_roundtrip():
    D = PathDecomposition((mask_of([0, 1]), mask_of([1, 2]), mask_of([2, 3])))
    assert parse_decomposition(serialize_decomposition(D)).bags == D.bags
    with pytest.raises(ValueError):
        parse_decomposition("0 x\n")


def test_pw_of_parsed_file_matches():
    text = serialize_graph(make_complete(4))
    width, _ = pathwidth_exact(parse_graph(text))
    assert width == 3
