"""Containment search: induced subgraphs, induced minors, and path packings.

An induced ``H``-model in ``G`` is a family of pairwise disjoint, nonempty,
connected branch sets ``B_v`` (one per vertex of ``H``) such that adjacent
pattern vertices have non-anticomplete branch sets and non-adjacent pattern
vertices have anticomplete ones.  Contracting each branch set then yields an
induced copy of ``H``, so a verified model is a certificate of induced-minor
containment.

Two searches live here.  ``find_induced_subgraph`` is a plain backtracking
embedder over vertex maps.  ``find_induced_minor`` backtracks over partial
branch assignments, growing branch sets for high-degree pattern vertices
first; candidate branch sets are enumerated smallest-first among connected
subsets of the region that is still compatible with the anticompleteness
constraints, and a contact-slot bound prunes sets whose free boundary is too
small to serve the still-unassigned pattern neighbours.

``disjoint_xy_paths`` is exact: by Menger's theorem the maximum number of
pairwise vertex-disjoint ``X``-``Y`` paths equals the unit-vertex-capacity
max-flow value, so ``absent`` answers need no search budget.  Flow paths are
trimmed to (X,Y)-paths afterwards; trimming only deletes vertices, so both
disjointness and the count survive.  ``anticomplete_path_packing`` has no
such min-max theorem and is a genuine backtracking search: exhaustive for
universes of at most 24 vertices, budgeted beyond that.

Both tree observations are constructive.  ``obs_trees_a`` routes a proper
subdivision of the binary tree T_{2,r} through the wall of size 2^r (runs on
even rows, two-column weave descents, leaf stubs hanging off the last
junction row) and returns the embedding together with the subdivided tree it
built, so verification never has to re-derive which subdivision was meant.
``obs_trees_b`` slices the binary tree T_{2,dr} into depth-d blocks: the
block of a pattern vertex at depth j spans host levels jd..(j+1)d-1, pattern
leaves take the level-dr vertices as singletons, and every host vertex is
used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .budget import EXHAUSTED, Budget, BudgetExhausted, as_budget
from .generators import make_tree, make_wall
from .graphs import (
    Graph,
    anticomplete,
    bits,
    closed_neighborhood,
    components,
    find_xy_path,
    induced_subgraph,
    is_xy_path,
    line_graph,
    mask_of,
    neighborhood,
    subdivide,
    trim_to_xy_path,
)

__all__ = [
    "Embedding",
    "ModelAssignment",
    "anticomplete_path_packing",
    "disjoint_xy_paths",
    "find_induced_minor",
    "find_induced_subgraph",
    "obs_trees_a",
    "obs_trees_a_line",
    "obs_trees_b",
    "parse_embedding",
    "parse_model",
    "serialize_embedding",
    "serialize_model",
    "verify_embedding",
    "verify_model",
]


@dataclass
class ModelAssignment:
    """Branch sets of an (induced) H-model: pattern vertex -> vertex mask."""

    host: Graph
    pattern: Graph
    branch: dict[int, int]
    induced: bool = True


@dataclass
class Embedding:
    """An injective vertex map pattern -> host, induced-subgraph mode."""

    host: Graph
    pattern: Graph
    mapping: dict[int, int]


def verify_model(model: ModelAssignment) -> bool:
    """Check every ModelAssignment invariant; True iff all hold."""
    host, pattern = model.host, model.pattern
    if set(model.branch) != set(pattern.vertices()):
        return False
    used = 0
    for p in pattern.vertices():
        B = model.branch[p]
        if B == 0 or B & ~host.full_mask or B & used:
            return False
        if len(components(host, within=B)) != 1:
            return False
        used |= B
    for u in pattern.vertices():
        for v in range(u + 1, pattern.n):
            apart = anticomplete(host, model.branch[u], model.branch[v])
            if pattern.has_edge(u, v):
                if apart:
                    return False
            elif model.induced and not apart:
                return False
    return True


def verify_embedding(emb: Embedding) -> bool:
    """Check injectivity and two-way adjacency preservation."""
    host, pattern = emb.host, emb.pattern
    if set(emb.mapping) != set(pattern.vertices()):
        return False
    images = set(emb.mapping.values())
    if len(images) != pattern.n or any(v >= host.n for v in images):
        return False
    for u in pattern.vertices():
        for v in range(u + 1, pattern.n):
            if pattern.has_edge(u, v) != host.has_edge(emb.mapping[u], emb.mapping[v]):
                return False
    return True


def serialize_model(model: ModelAssignment) -> str:
    """One line per pattern vertex: ``p: u1 u2 ...`` with the branch set sorted."""
    lines = []
    for p in sorted(model.branch):
        members = " ".join(str(u) for u in bits(model.branch[p]))
        lines.append(f"{p}: {members}")
    return "\n".join(lines) + "\n"


def serialize_embedding(emb: Embedding) -> str:
    """Same line shape as models; each pattern vertex maps to one host vertex."""
    lines = [f"{p}: {emb.mapping[p]}" for p in sorted(emb.mapping)]
    return "\n".join(lines) + "\n"


def _parse_witness_lines(text: str) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        try:
            p = int(head)
            verts = [int(tok) for tok in tail.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected 'p: u1 u2 ...'") from exc
        if p in out:
            raise ValueError(f"line {lineno}: duplicate pattern vertex {p}")
        if p < 0 or any(v < 0 for v in verts):
            raise ValueError(f"line {lineno}: negative vertex")
        out[p] = verts
    return out


def parse_model(text: str, host: Graph, pattern: Graph, induced: bool = True) -> ModelAssignment:
    """Inverse of serialize_model; the result is not verified here."""
    branch = {p: mask_of(vs) for p, vs in _parse_witness_lines(text).items()}
    for p, vs in branch.items():
        if vs == 0:
            raise ValueError(f"pattern vertex {p}: empty branch set")
    return ModelAssignment(host, pattern, branch, induced=induced)


def parse_embedding(text: str, host: Graph, pattern: Graph) -> Embedding:
    """Inverse of serialize_embedding; the result is not verified here."""
    mapping = {}
    for p, vs in _parse_witness_lines(text).items():
        if len(vs) != 1:
            raise ValueError(f"pattern vertex {p}: embeddings map to one vertex")
        mapping[p] = vs[0]
    return Embedding(host, pattern, mapping)


# ---------------------------------------------------------------------------
# Induced subgraph search
# ---------------------------------------------------------------------------


def _embedding_order(H: Graph) -> list[int]:
    """Pattern vertices ordered so each one touches the placed prefix."""
    if H.n == 0:
        return []
    start = max(H.vertices(), key=lambda p: (H.degree(p), -p))
    order = [start]
    placed = 1 << start
    rest = set(H.vertices()) - {start}
    while rest:
        nxt = max(
            rest,
            key=lambda p: ((H.adj(p) & placed).bit_count(), H.degree(p), -p),
        )
        order.append(nxt)
        placed |= 1 << nxt
        rest.remove(nxt)
    return order


def find_induced_subgraph(G: Graph, H: Graph, budget: Budget | int | None = None):
    """Search for an induced copy of H in G.

    Returns a verified ``Embedding``, ``None`` when the exhaustive search
    proves absence, or ``EXHAUSTED`` when the budget ran out first.
    """
    if H.n == 0:
        return Embedding(G, H, {})
    if H.n > G.n:
        return None
    bud = as_budget(budget)
    order = _embedding_order(H)
    degrees_ok = [
        mask_of(v for v in G.vertices() if G.degree(v) >= H.degree(p))
        for p in range(H.n)
    ]
    image = [-1] * H.n

    def place(i: int, used: int):
        if i == len(order):
            return dict(enumerate(image))
        p = order[i]
        candidates = G.full_mask & ~used & degrees_ok[p]
        for q in order[:i]:
            if H.has_edge(p, q):
                candidates &= G.adj(image[q])
            else:
                candidates &= ~G.adj(image[q])
        for v in bits(candidates):
            bud.tick()
            image[p] = v
            found = place(i + 1, used | (1 << v))
            if found is not None:
                return found
        image[p] = -1
        return None

    try:
        mapping = place(0, 0)
    except BudgetExhausted:
        return EXHAUSTED
    if mapping is None:
        return None
    emb = Embedding(G, H, mapping)
    assert verify_embedding(emb)
    return emb


# ---------------------------------------------------------------------------
# Induced minor search
# ---------------------------------------------------------------------------


def _connected_sets(G: Graph, region: int, size: int, excluded: int):
    """Yield connected subsets of ``region`` with exactly ``size`` vertices.

    Standard unique enumeration: sets are rooted at their smallest allowed
    vertex, and each recursion level moves tried extension vertices into the
    exclusion mask so no set is produced twice.
    """
    if size <= 0:
        return

    def grow(S: int, ext: int, banned: int):
        if S.bit_count() == size:
            yield S
            return
        while ext:
            u = ext & -ext
            ext &= ~u
            new_ext = ext | (
                G.adj(u.bit_length() - 1) & region & ~banned & ~S & ~ext
            )
            yield from grow(S | u, new_ext & ~banned, banned | u)
            banned |= u

    avail = region & ~excluded
    for v in bits(avail):
        root = 1 << v
        yield from grow(root, G.adj(v) & region & ~excluded, excluded | root)
        excluded |= root


def find_induced_minor(G: Graph, H: Graph, budget: Budget | int | None = None):
    """Search for an induced H-model in G.

    Returns a verified ``ModelAssignment``, ``None`` on exhaustive absence,
    or ``EXHAUSTED``.  Branch sets are grown for high-degree pattern vertices
    first, smallest candidate sets first.
    """
    if H.n == 0:
        return ModelAssignment(G, H, {}, induced=True)
    if H.n > G.n:
        return None
    bud = as_budget(budget)
    order = sorted(H.vertices(), key=lambda p: (-H.degree(p), p))
    branch: dict[int, int] = {}

    def assign(i: int, used: int):
        if i == len(order):
            return dict(branch)
        p = order[i]
        region = G.full_mask & ~used
        contacts = []
        for q in order[:i]:
            nbhd = neighborhood(G, branch[q])
            if H.has_edge(p, q):
                contacts.append(nbhd)
            else:
                region &= ~(branch[q] | nbhd)
        remaining_after = len(order) - i - 1
        free_now = (G.full_mask & ~used).bit_count()
        max_size = min(region.bit_count(), free_now - remaining_after)
        want_contacts = sum(
            1 for q in order[i + 1 :] if H.has_edge(p, q)
        )
        for size in range(1, max_size + 1):
            for S in _connected_sets(G, region, size, 0):
                bud.tick()
                if any(not (S & c) for c in contacts):
                    continue
                free = G.full_mask & ~used & ~S
                if (neighborhood(G, S) & free).bit_count() < want_contacts:
                    continue
                branch[p] = S
                found = assign(i + 1, used | S)
                if found is not None:
                    return found
                del branch[p]
        return None

    try:
        assignment = assign(0, 0)
    except BudgetExhausted:
        return EXHAUSTED
    if assignment is None:
        return None
    model = ModelAssignment(G, H, assignment, induced=True)
    assert verify_model(model)
    return model


# ---------------------------------------------------------------------------
# Tree observations
# ---------------------------------------------------------------------------


def _junction_columns(r: int) -> list[list[int]]:
    """Junction column per tree level; all columns are odd."""
    cols = [[4 * k + 3 for k in range(2 ** (r - 1))]]
    for _ in range(r - 1):
        below = cols[0]
        cols.insert(0, [
            (below[2 * k] + below[2 * k + 1]) // 2
            for k in range(len(below) // 2)
        ])
    return cols


def obs_trees_a(r: int) -> tuple[Graph, Embedding]:
    """A proper subdivision of T_{2,r} as an induced subgraph of the wall.

    The wall has size 2^r.  Junctions for tree level ``l`` sit on row ``2l``
    at odd columns; a parent reaches each child by a horizontal run along its
    own row followed by a two-column weave, and the two leaf edges of every
    last-level junction hang down as short stubs.  The returned embedding
    maps the subdivided tree produced by :func:`subdivide`, so properness is
    part of the construction rather than something to reverse-engineer.
    """
    if not 1 <= r <= 4:
        raise ValueError("wall routing is pinned for 1 <= r <= 4")
    wall, coords = make_wall(2 ** r)
    pos = {rc: v for v, rc in coords.items()}
    tree = make_tree(2, r)
    T = tree.graph

    if r == 1:
        routes = {(0, 1): [(0, 2), (0, 1), (0, 0)], (0, 2): [(0, 2), (0, 3), (0, 4)]}
        junction_at = {0: (0, 2)}
    else:
        cols = _junction_columns(r)
        junction_at = {}
        for v in T.vertices():
            level = tree.depth[v]
            if level < r:
                index = v - (2 ** level - 1)
                junction_at[v] = (2 * level, cols[level][index])
        routes = {}
        for v in T.vertices():
            level = tree.depth[v]
            if level >= r:
                continue
            row, col = junction_at[v]
            left, right = tree.children(v)
            if level < r - 1:
                for child in (left, right):
                    crow, ccol = junction_at[child]
                    step = 1 if ccol > col else -1
                    run = [(row, c) for c in range(col, ccol - 1 + step, step)]
                    routes[(v, child)] = run + [
                        (row + 1, ccol - 1),
                        (row + 1, ccol),
                        (crow, ccol),
                    ]
            else:
                routes[(v, left)] = [(row, col), (row, col - 1), (row + 1, col - 1)]
                routes[(v, right)] = [(row, col), (row, col + 1), (row + 1, col + 1)]

    lengths = {edge: len(route) - 1 for edge, route in routes.items()}
    assert all(length >= 2 for length in lengths.values())
    pattern = subdivide(T, lengths)
    mapping: dict[int, int] = {}
    fresh = T.n
    for edge in sorted(routes):
        route = routes[edge]
        mapping[edge[0]] = pos[route[0]]
        mapping[edge[1]] = pos[route[-1]]
        for rc in route[1:-1]:
            mapping[fresh] = pos[rc]
            fresh += 1
    emb = Embedding(wall, pattern, mapping)
    assert verify_embedding(emb)
    return wall, emb


def obs_trees_a_line(r: int) -> tuple[Graph, Embedding]:
    """Line-graph variant: L(subdivision of T_{2,r}) inside L(wall).

    The edge set of any subgraph induces its own line graph inside the line
    graph of the host, because two edges share an endpoint in the subgraph
    exactly when they do in the host.
    """
    wall, emb = obs_trees_a(r)
    line_wall, wall_edges = line_graph(wall)
    line_pattern, pattern_edges = line_graph(emb.pattern)
    index_of = {edge: i for i, edge in enumerate(wall_edges)}
    mapping = {}
    for i, (a, b) in enumerate(pattern_edges):
        u, v = emb.mapping[a], emb.mapping[b]
        mapping[i] = index_of[(min(u, v), max(u, v))]
    line_emb = Embedding(line_wall, line_pattern, mapping)
    assert verify_embedding(line_emb)
    return line_wall, line_emb


def obs_trees_b(d: int, r: int) -> ModelAssignment:
    """An induced T_{2^d,r}-model in T_{2,dr} using every host vertex.

    The branch set of a pattern vertex at depth ``j`` is the depth-(d-1)
    binary subtree spanning host levels ``jd`` through ``(j+1)d - 1``; a
    pattern leaf keeps just its single level-``dr`` host vertex.
    """
    if d < 1 or r < 1 or d * r > 8:
        raise ValueError("slice model is pinned for d, r >= 1 with d*r <= 8")
    host_tree = make_tree(2, d * r)
    pattern_tree = make_tree(2 ** d, r)
    host, pattern = host_tree.graph, pattern_tree.graph

    branch: dict[int, int] = {}
    slice_root = {0: 0}
    for p in pattern.vertices():
        h = slice_root[p]
        if pattern_tree.depth[p] == r:
            branch[p] = 1 << h
            continue
        level = [h]
        mask = 0
        for _ in range(d):
            mask |= mask_of(level)
            level = [c for v in level for c in host_tree.children(v)]
        branch[p] = mask
        for rank, child in enumerate(pattern_tree.children(p)):
            node = h
            for bit_index in range(d - 1, -1, -1):
                node = host_tree.children(node)[(rank >> bit_index) & 1]
            slice_root[child] = node
    model = ModelAssignment(host, pattern, branch, induced=True)
    assert verify_model(model)
    assert sum(mask.bit_count() for mask in branch.values()) == host.n
    return model


# ---------------------------------------------------------------------------
# Disjoint (X,Y)-paths via unit-vertex-capacity max-flow
# ---------------------------------------------------------------------------


def disjoint_xy_paths(G: Graph, X: int, Y: int, k: int):
    """k pairwise vertex-disjoint (X,Y)-paths, or None if fewer exist.

    Exact by Menger's theorem: each vertex is split into an in/out pair of
    unit capacity, so the max-flow value equals the maximum number of
    disjoint paths.  Flow walks are trimmed to (X,Y)-paths; trimming only
    removes vertices, so disjointness and the count are preserved.
    """
    if k <= 0:
        return []
    n = G.n
    source, sink = 2 * n, 2 * n + 1
    graph: list[list[list[int]]] = [[] for _ in range(2 * n + 2)]

    def add_arc(a: int, b: int) -> None:
        graph[a].append([b, 1, len(graph[b]), True])
        graph[b].append([a, 0, len(graph[a]) - 1, False])

    for v in G.vertices():
        add_arc(2 * v, 2 * v + 1)
    for u, v in G.edges:
        add_arc(2 * u + 1, 2 * v)
        add_arc(2 * v + 1, 2 * u)
    for v in bits(X):
        add_arc(source, 2 * v)
    for v in bits(Y):
        add_arc(2 * v + 1, sink)

    def augment() -> bool:
        parent: dict[int, tuple[int, int]] = {source: (-1, -1)}
        queue = deque([source])
        while queue:
            a = queue.popleft()
            if a == sink:
                break
            for i, (b, cap, _, _) in enumerate(graph[a]):
                if cap > 0 and b not in parent:
                    parent[b] = (a, i)
                    queue.append(b)
        if sink not in parent:
            return False
        node = sink
        while node != source:
            a, i = parent[node]
            graph[a][i][1] -= 1
            back = graph[a][i][2]
            graph[node][back][1] += 1
            node = a
        return True

    flow = 0
    while flow < k and augment():
        flow += 1
    if flow < k:
        return None

    paths = []
    for arc in graph[source]:
        if not arc[3] or arc[1] != 0:
            continue
        walk = []
        node = arc[0]
        while node != sink:
            if node % 2 == 0:
                walk.append(node // 2)
            for out in graph[node]:
                if out[3] and out[1] == 0:
                    out[1] = 1
                    node = out[0]
                    break
            else:
                raise AssertionError("flow walk lost conservation")
        paths.append(trim_to_xy_path(G, walk, X, Y))
    paths.sort(key=lambda p: p[0])
    assert len(paths) >= k
    paths = paths[:k]
    used = 0
    for path in paths:
        pmask = mask_of(path)
        assert not (pmask & used)
        used |= pmask
    return paths


# ---------------------------------------------------------------------------
# Anticomplete path packings
# ---------------------------------------------------------------------------


_EXHAUSTIVE_UNIVERSE = 24


def _enumerate_xy_paths(G: Graph, X: int, Y: int, region: int, bud: Budget):
    """Yield every (X,Y)-path with all vertices inside ``region``."""
    for v in bits(X & Y & region):
        bud.tick()
        yield (v,)
    ends = Y & ~X & region
    blocked = (X | Y) & region
    for x in bits(X & ~Y & region):
        stack = [((x,), G.adj(x) & region, 1 << x)]
        while stack:
            path, frontier, seen_nbhd = stack.pop()
            bud.tick()
            extensions = frontier & ~seen_nbhd
            for u in bits(extensions):
                if (1 << u) & ends:
                    yield path + (u,)
                elif not ((1 << u) & blocked):
                    closed = seen_nbhd | G.adj(path[-1]) | (1 << path[-1])
                    stack.append((path + (u,), G.adj(u) & region, closed))


def anticomplete_path_packing(
    G: Graph,
    X: int,
    Y: int,
    k: int,
    universe: int,
    budget: Budget | int | None = None,
):
    """Search for k pairwise anticomplete (X,Y)-paths inside ``universe``.

    Exhaustive whenever the universe has at most 24 vertices (the budget is
    ignored there, so ``None`` really means absent); budgeted beyond.
    Families are enumerated with strictly increasing smallest path vertex,
    which visits every unordered family exactly once.
    """
    if k <= 0:
        return []
    if universe.bit_count() <= _EXHAUSTIVE_UNIVERSE:
        bud = as_budget(None)
    else:
        bud = as_budget(budget)

    def solve(avail: int, need: int, floor: int):
        if need > avail.bit_count():
            return None
        if need == 1:
            sub, old_to_new = induced_subgraph(G, avail)
            new_to_old = {new: old for old, new in old_to_new.items()}
            inner = find_xy_path(
                sub,
                mask_of(old_to_new[v] for v in bits(X & avail)),
                mask_of(old_to_new[v] for v in bits(Y & avail)),
            )
            if inner is None:
                return None
            return [tuple(new_to_old[v] for v in inner)]
        above = avail & ~((1 << (floor + 1)) - 1) if floor >= 0 else avail
        for path in _enumerate_xy_paths(G, X, Y, above, bud):
            rest = solve(
                avail & ~closed_neighborhood(G, mask_of(path)),
                need - 1,
                min(path),
            )
            if rest is not None:
                return [path] + rest
        return None

    try:
        packing = solve(universe, k, -1)
    except BudgetExhausted:
        return EXHAUSTED
    if packing is None:
        return None
    packing.sort(key=min)
    for i, path in enumerate(packing):
        assert is_xy_path(G, path, X, Y)
        assert mask_of(path) & ~universe == 0
        for other in packing[i + 1 :]:
            assert anticomplete(G, mask_of(path), mask_of(other))
    return packing
