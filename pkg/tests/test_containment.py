"""Tests for induced-subgraph / induced-minor search and path packings.

The two searches are compared against oracles that share no code with them:
induced minors against an exhaustive enumeration of labeled colorings
``V(G) -> {unused} + V(H)`` (a labeled model exists iff some coloring has
every class nonempty, connected, and adjacency-faithful), and induced
subgraphs against all injections.  Disjoint (X,Y)-path counts are checked
against Menger's theorem computed by networkx on a split auxiliary graph,
and anticomplete packings against a direct search over the full list of
endpoint-disciplined induced paths.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pwtrees.budget import EXHAUSTED, Budget
from pwtrees.containment import (
    Embedding,
    ModelAssignment,
    anticomplete_path_packing,
    disjoint_xy_paths,
    find_induced_minor,
    find_induced_subgraph,
    obs_trees_a,
    obs_trees_a_line,
    obs_trees_b,
    parse_embedding,
    parse_model,
    serialize_embedding,
    serialize_model,
    verify_embedding,
    verify_model,
)
from pwtrees.generators import make_complete, make_tree, make_wall
from pwtrees.graphs import (
    Graph,
    anticomplete,
    bits,
    components,
    is_xy_path,
    line_graph,
    mask_of,
)

PROPERTY_SETTINGS = settings(
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def edge_mask_values(n: int):
    return st.integers(0, 2 ** (n * (n - 1) // 2) - 1)


@st.composite
def minor_instances(draw):
    gn = draw(st.integers(1, 6))
    hn = draw(st.integers(1, 3))
    G = graph_from_mask(gn, draw(edge_mask_values(gn)))
    H = graph_from_mask(hn, draw(edge_mask_values(hn)))
    return G, H


@st.composite
def subgraph_instances(draw):
    gn = draw(st.integers(1, 6))
    hn = draw(st.integers(1, 4))
    G = graph_from_mask(gn, draw(edge_mask_values(gn)))
    H = graph_from_mask(hn, draw(edge_mask_values(hn)))
    return G, H


@st.composite
def xy_instances(draw):
    n = draw(st.integers(1, 8))
    G = graph_from_mask(n, draw(edge_mask_values(n)))
    X = draw(st.integers(0, G.full_mask))
    Y = draw(st.integers(0, G.full_mask))
    return G, X, Y


def brute_has_induced_minor(G: Graph, H: Graph) -> bool:
    """Exhaustive check over all colorings of V(G) by {unused} + V(H)."""
    h = H.n
    for coloring in product(range(h + 1), repeat=G.n):
        branch = [0] * h
        for v, c in enumerate(coloring):
            if c:
                branch[c - 1] |= 1 << v
        if any(B == 0 for B in branch):
            continue
        if any(len(components(G, within=B)) != 1 for B in branch):
            continue
        ok = True
        for u in range(h):
            for v in range(u + 1, h):
                apart = anticomplete(G, branch[u], branch[v])
                if apart == H.has_edge(u, v):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def brute_has_induced_subgraph(G: Graph, H: Graph) -> bool:
    if H.n > G.n:
        return False
    for image in permutations(range(G.n), H.n):
        if all(
            H.has_edge(u, v) == G.has_edge(image[u], image[v])
            for u in range(H.n)
            for v in range(u + 1, H.n)
        ):
            return True
    return False


@PROPERTY_SETTINGS
@given(minor_instances())
def test_induced_minor_matches_coloring_oracle(instance):
    G, H = instance
    got = find_induced_minor(G, H)
    want = brute_has_induced_minor(G, H)
    if want:
        assert isinstance(got, ModelAssignment)
        assert verify_model(got)
    else:
        assert got is None


@PROPERTY_SETTINGS
@given(subgraph_instances())
def test_induced_subgraph_matches_injection_oracle(instance):
    G, H = instance
    got = find_induced_subgraph(G, H)
    want = brute_has_induced_subgraph(G, H)
    if want:
        assert isinstance(got, Embedding)
        assert verify_embedding(got)
    else:
        assert got is None


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def test_minor_regressions():
    # C_5 contracts to a triangle, so the triangle is found even though no
    # induced K_3 subgraph exists.
    got = find_induced_minor(cycle(5), make_complete(3))
    assert isinstance(got, ModelAssignment) and verify_model(got)
    assert find_induced_subgraph(cycle(5), make_complete(3)) is None
    # Every minor of a cycle has maximum degree two.
    assert find_induced_minor(cycle(5), make_complete(4)) is None
    assert find_induced_minor(cycle(6), Graph(4, [(0, 1), (0, 2), (0, 3)])) is None


def test_subgraph_regressions():
    got = find_induced_subgraph(cycle(6), path(4))
    assert isinstance(got, Embedding) and verify_embedding(got)
    # K_4 contains C_4 as a subgraph but not as an induced one.
    assert find_induced_subgraph(make_complete(4), cycle(4)) is None
    assert find_induced_subgraph(cycle(6), make_complete(3)) is None


def test_empty_and_oversized_patterns():
    G = cycle(5)
    empty = Graph(0, [])
    emb = find_induced_subgraph(G, empty)
    assert isinstance(emb, Embedding) and emb.mapping == {}
    model = find_induced_minor(G, empty)
    assert isinstance(model, ModelAssignment) and model.branch == {}
    assert find_induced_subgraph(path(3), cycle(4)) is None
    assert find_induced_minor(path(3), cycle(4)) is None


def test_budget_exhaustion_is_identity_sentinel():
    got = find_induced_minor(cycle(6), path(3), budget=Budget(1))
    assert got is EXHAUSTED
    got = find_induced_subgraph(cycle(6), path(3), budget=Budget(1))
    assert got is EXHAUSTED


# ---------------------------------------------------------------------------
# Pinned tree observations
# ---------------------------------------------------------------------------


def to_nx(G: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(G.vertices())
    out.add_edges_from(G.edges)
    return out


@pytest.mark.parametrize("r", [1, 2, 3])
def test_obs_trees_a_shape(r: int):
    wall, emb = obs_trees_a(r)
    assert emb.host is wall
    assert wall.n == make_wall(2 ** r)[0].n
    assert verify_embedding(emb)
    pattern = emb.pattern
    T = make_tree(2, r).graph
    assert nx.is_tree(to_nx(pattern))
    assert pattern.n > T.n
    degrees = [pattern.degree(v) for v in pattern.vertices()]
    assert max(degrees) <= 3
    assert degrees.count(1) == 2 ** r
    assert degrees.count(3) == 2 ** r - 2
    # Proper subdivision: subdivide() keeps original labels below T.n, so no
    # surviving edge may join two originals.
    assert all(u >= T.n or v >= T.n for u, v in pattern.edges)


def test_obs_trees_a_rejects_unpinned_radius():
    with pytest.raises(ValueError):
        obs_trees_a(0)
    with pytest.raises(ValueError):
        obs_trees_a(5)


@pytest.mark.parametrize("r", [1, 2])
def test_obs_trees_a_line_shape(r: int):
    host, emb = obs_trees_a_line(r)
    assert verify_embedding(emb)
    wall, base = obs_trees_a(r)
    assert host.n == len(wall.edges)
    assert emb.pattern.n == len(base.pattern.edges)
    expected, _ = line_graph(wall)
    assert sorted(expected.edges) == sorted(host.edges)


@pytest.mark.parametrize("d,r", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_obs_trees_b_models(d: int, r: int):
    model = obs_trees_b(d, r)
    assert verify_model(model)
    assert model.host.n == make_tree(2, d * r).graph.n
    assert model.pattern.n == make_tree(2 ** d, r).graph.n
    assert sum(B.bit_count() for B in model.branch.values()) == model.host.n
    if d == 1:
        assert all(B.bit_count() == 1 for B in model.branch.values())


def test_obs_trees_b_rejects_unpinned_sizes():
    with pytest.raises(ValueError):
        obs_trees_b(0, 2)
    with pytest.raises(ValueError):
        obs_trees_b(3, 3)


# ---------------------------------------------------------------------------
# Disjoint (X,Y)-paths
# ---------------------------------------------------------------------------


def menger_max_paths(G: Graph, X: int, Y: int) -> int:
    """Maximum number of vertex-disjoint (X,Y)-paths via networkx flow."""
    if X == 0 or Y == 0:
        return 0
    aux = nx.DiGraph()
    source, sink = "s", "t"
    for v in G.vertices():
        aux.add_edge(("in", v), ("out", v), capacity=1)
    for u, v in G.edges:
        aux.add_edge(("out", u), ("in", v), capacity=1)
        aux.add_edge(("out", v), ("in", u), capacity=1)
    for v in bits(X):
        aux.add_edge(source, ("in", v), capacity=G.n + 1)
    for v in bits(Y):
        aux.add_edge(("out", v), sink, capacity=G.n + 1)
    return nx.maximum_flow_value(aux, source, sink)


@PROPERTY_SETTINGS
@given(xy_instances())
def test_disjoint_xy_paths_match_menger(instance):
    G, X, Y = instance
    best = menger_max_paths(G, X, Y)
    if best > 0:
        paths = disjoint_xy_paths(G, X, Y, best)
        assert paths is not None and len(paths) == best
        used = 0
        for p in paths:
            assert is_xy_path(G, p, X, Y)
            pmask = mask_of(p)
            assert pmask & used == 0
            used |= pmask
    assert disjoint_xy_paths(G, X, Y, best + 1) is None


def test_disjoint_xy_paths_trivial_cases():
    G = path(3)
    assert disjoint_xy_paths(G, 0b001, 0b100, 0) == []
    assert disjoint_xy_paths(G, 0, 0b100, 1) is None
    # A vertex lying in both sides is a one-vertex path.
    paths = disjoint_xy_paths(G, 0b010, 0b010, 1)
    assert paths == [(1,)]


# ---------------------------------------------------------------------------
# Anticomplete path packings
# ---------------------------------------------------------------------------


def brute_all_xy_paths(G: Graph, X: int, Y: int, region: int):
    """All endpoint-disciplined induced (X,Y)-paths inside region, by DFS."""
    out = []
    for v in bits(X & Y & region):
        out.append((v,))

    def extend(path: tuple[int, ...]) -> None:
        last = path[-1]
        for u in bits(G.adj(last) & region):
            if u in path:
                continue
            cand = path + (u,)
            if is_xy_path(G, cand, X, Y):
                out.append(cand)
            if not (1 << u) & (X | Y):
                extend(cand)

    for x in bits(X & ~Y & region):
        extend((x,))
    return out


def brute_packing_exists(G: Graph, X: int, Y: int, k: int, universe: int) -> bool:
    paths = brute_all_xy_paths(G, X, Y, universe)

    def pick(start: int, banned: int, need: int) -> bool:
        if need == 0:
            return True
        for i in range(start, len(paths)):
            pmask = mask_of(paths[i])
            if pmask & banned:
                continue
            closed = pmask
            for v in bits(pmask):
                closed |= G.adj(v)
            if pick(i + 1, banned | closed, need - 1):
                return True
        return False

    return pick(0, 0, k)


@PROPERTY_SETTINGS
@given(xy_instances(), st.integers(1, 3))
def test_anticomplete_packing_matches_brute(instance, k):
    G, X, Y = instance
    universe = G.full_mask
    got = anticomplete_path_packing(G, X, Y, k, universe)
    want = brute_packing_exists(G, X, Y, k, universe)
    if want:
        assert got is not None and got is not EXHAUSTED
        assert len(got) == k
        for i, p in enumerate(got):
            assert is_xy_path(G, p, X, Y)
            for q in got[i + 1 :]:
                assert anticomplete(G, mask_of(p), mask_of(q))
    else:
        assert got is None


def test_packing_contrast_with_disjointness():
    # Two parallel three-vertex paths whose middles are adjacent: two
    # disjoint (X,Y)-paths exist, but any two X-Y paths see each other.
    G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)])
    X, Y = 0b001001, 0b100100
    assert disjoint_xy_paths(G, X, Y, 2) is not None
    assert anticomplete_path_packing(G, X, Y, 2, G.full_mask) is None
    packing = anticomplete_path_packing(G, X, Y, 1, G.full_mask)
    assert packing is not None and len(packing) == 1


def test_packing_respects_universe():
    G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    X, Y = 0b001001, 0b100100
    assert anticomplete_path_packing(G, X, Y, 2, G.full_mask) is not None
    # Shrink the universe to one component: only one path fits.
    assert anticomplete_path_packing(G, X, Y, 2, 0b000111) is None
    got = anticomplete_path_packing(G, X, Y, 1, 0b000111)
    assert got == [(0, 1, 2)]


def test_packing_small_universe_ignores_budget():
    G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    X, Y = 0b001001, 0b100100
    got = anticomplete_path_packing(G, X, Y, 2, G.full_mask, budget=Budget(1))
    assert got is not EXHAUSTED and got is not None and len(got) == 2


def test_packing_zero_paths():
    assert anticomplete_path_packing(path(3), 0b001, 0b100, 0, 0b111) == []


# ---------------------------------------------------------------------------
# Witness serialization
# ---------------------------------------------------------------------------


def test_model_roundtrip():
    model = obs_trees_b(2, 2)
    text = serialize_model(model)
    back = parse_model(text, model.host, model.pattern)
    assert back.branch == model.branch
    assert verify_model(back)


def test_embedding_roundtrip():
    wall, emb = obs_trees_a(2)
    text = serialize_embedding(emb)
    back = parse_embedding(text, wall, emb.pattern)
    assert back.mapping == emb.mapping
    assert verify_embedding(back)


def test_witness_parsing_rejects_malformed_text():
    G = path(3)
    H = path(2)
    with pytest.raises(ValueError):
        parse_model("0: 1 2\n0: 0\n1: 2\n", G, H)
    with pytest.raises(ValueError):
        parse_model("0: -1\n1: 2\n", G, H)
    with pytest.raises(ValueError):
        parse_model("0:\n1: 2\n", G, H)
    with pytest.raises(ValueError):
        parse_model("zero: 0\n", G, H)
    with pytest.raises(ValueError):
        parse_embedding("0: 1 2\n", G, H)


def test_witness_comments_and_missing_vertices():
    G = path(3)
    H = path(2)
    back = parse_model("# witness\n0: 0\n\n1: 1 2\n", G, H)
    assert back.branch == {0: 0b001, 1: 0b110}
    assert verify_model(back)
    # Parsing is shape-only; a missing pattern vertex fails verification.
    partial = parse_model("0: 0\n", G, H)
    assert not verify_model(partial)
    sparse = parse_embedding("0: 0\n", G, H)
    assert not verify_embedding(sparse)
    # Out-of-range host vertices also fail at verification time.
    assert not verify_embedding(parse_embedding("0: 0\n1: 9\n", G, H))


def test_verify_model_rejects_broken_branches():
    G = path(4)
    H = path(2)
    # Disconnected branch set.
    assert not verify_model(ModelAssignment(G, H, {0: 0b0101, 1: 0b0010}))
    # Overlapping branch sets.
    assert not verify_model(ModelAssignment(G, H, {0: 0b0011, 1: 0b0110}))
    # Missing adjacency between branch sets of a pattern edge.
    assert not verify_model(ModelAssignment(G, H, {0: 0b0001, 1: 0b1000}))
    # Induced mode rejects adjacency across a pattern non-edge.
    H2 = Graph(2, [])
    assert not verify_model(ModelAssignment(G, H2, {0: 0b0001, 1: 0b0010}))
    assert verify_model(
        ModelAssignment(G, H2, {0: 0b0001, 1: 0b0010}, induced=False)
    )
