"""Immutable graphs and digraphs over dense integer vertices.

Vertex sets are plain Python ints used as bitmasks (bit v = vertex v), so all
set algebra is ``&``, ``|``, ``&~`` and friends; :func:`mask_of` and
:func:`bits` convert to and from iterables.  Paths are tuples of vertices
that induce a path in their host graph.  Everything here is a pure function
on immutable values, and every search or enumeration breaks ties by smallest
vertex first so results are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator

Edge = tuple[int, int]


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex in `vertices`."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Vertices of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Smallest vertex in a nonempty bitmask."""
    if mask == 0:
        raise ValueError("empty vertex set")
    return (mask & -mask).bit_length() - 1


def _norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple graph on vertices 0..n-1.

    Immutable after construction; equality and hashing are by (n, edge set).
    Adjacency is stored as one bitmask per vertex.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        self.n = n
        seen: set[Edge] = set()
        adj = [0] * n
        for u, v in edges:
            u, v = _norm_edge(u, v)
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if (u, v) in seen:
                continue
            seen.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._adj = adj

    @property
    def edges(self) -> tuple[Edge, ...]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def adj(self, v: int) -> int:
        """Neighbors of v as a bitmask."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self._adj[u] >> v & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """A loopless digraph; both (u,v) and (v,u) may be present."""

    __slots__ = ("n", "_arcs", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        self.n = n
        seen: set[Edge] = set()
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if (u, v) in seen:
                continue
            seen.add((u, v))
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self._arcs: tuple[Edge, ...] = tuple(sorted(seen))
        self._out = out
        self._in = inn

    @property
    def arcs(self) -> tuple[Edge, ...]:
        return self._arcs

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def out_adj(self, v: int) -> int:
        return self._out[v]

    def in_adj(self, v: int) -> int:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return self._out[v].bit_count()

    def has_arc(self, u: int, v: int) -> bool:
        return u != v and bool(self._out[u] >> v & 1)

    def underlying_graph(self) -> Graph:
        """Forget orientations (antiparallel arc pairs become one edge)."""
        return Graph(self.n, self._arcs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self.n, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self._arcs)})"


def _check_mask(G: Graph, X: int, what: str = "vertex set") -> None:
    if X < 0 or X & ~G.full_mask:
        raise ValueError(f"{what} {bin(X)} out of range for n={G.n}")


def induced_subgraph(G: Graph, X: int) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by the bitmask X, plus the old->new index map.

    New indices follow the increasing order of the old ones.
    """
    _check_mask(G, X)
    old = list(bits(X))
    old_to_new = {v: i for i, v in enumerate(old)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in G.edges
        if X >> u & 1 and X >> v & 1
    ]
    return Graph(len(old), edges), old_to_new


def anticomplete(G: Graph, X: int, Y: int) -> bool:
    """True iff X and Y are disjoint and no edge joins them."""
    if X & Y:
        return False
    for v in bits(X):
        if G.adj(v) & Y:
            return False
    return True


def neighborhood(G: Graph, X: int) -> int:
    """N(X): vertices outside X with at least one neighbor in X."""
    _check_mask(G, X)
    nbrs = 0
    for v in bits(X):
        nbrs |= G.adj(v)
    return nbrs & ~X


def closed_neighborhood(G: Graph, X: int) -> int:
    """N[X] = X together with its neighborhood."""
    return neighborhood(G, X) | X


def line_graph(G: Graph) -> tuple[Graph, tuple[Edge, ...]]:
    """Line graph of G, plus the labeling: vertex i is the edge labels[i].

    Two line-graph vertices are adjacent iff the underlying edges share an
    end.  Labels come in the host's sorted edge order.
    """
    labels = G.edges
    index: dict[Edge, int] = {e: i for i, e in enumerate(labels)}
    edges = []
    for v in G.vertices():
        incident = [index[_norm_edge(v, u)] for u in bits(G.adj(v))]
        edges.extend(itertools.combinations(incident, 2))
    return Graph(len(labels), edges), labels


def subdivide(G: Graph, lengths: dict[Edge, int]) -> Graph:
    """Replace each edge e by a path of lengths[e] edges (1 keeps the edge).

    Edges absent from `lengths` keep length 1.  Original vertices keep their
    indices; subdivision vertices are appended in sorted edge order, inner
    vertices ordered from the smaller endpoint to the larger.  A subdivision
    is "proper" when every length is at least 2.
    """
    norm: dict[Edge, int] = {}
    for (u, v), ell in lengths.items():
        e = _norm_edge(u, v)
        if not G.has_edge(*e):
            raise ValueError(f"length given for non-edge {e}")
        if ell < 1:
            raise ValueError(f"subdivision length must be >= 1, got {ell} for {e}")
        norm[e] = ell
    edges: list[Edge] = []
    nxt = G.n
    for e in G.edges:
        ell = norm.get(e, 1)
        u, v = e
        chain = [u] + list(range(nxt, nxt + ell - 1)) + [v]
        nxt += ell - 1
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, edges)


def contract_edge(G: Graph, e: Edge) -> Graph:
    """Contract the edge e, removing loops and parallel edges.

    The merged vertex takes the smaller index of e; vertices above the larger
    index shift down by one.
    """
    u, v = _norm_edge(*e)
    if not G.has_edge(u, v):
        raise ValueError(f"cannot contract non-edge ({u},{v})")

    def remap(w: int) -> int:
        if w == v:
            return u
        return w if w < v else w - 1

    edges = []
    for a, b in G.edges:
        a2, b2 = remap(a), remap(b)
        if a2 != b2:
            edges.append((a2, b2))
    return Graph(G.n - 1, edges)


def components(G: Graph, within: int | None = None) -> list[int]:
    """Connected components as bitmasks, ordered by smallest vertex.

    With `within`, components of the subgraph induced by that mask.
    """
    todo = G.full_mask if within is None else within
    _check_mask(G, todo)
    out = []
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= G.adj(v)
            grow &= todo & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        todo &= ~comp
    return out


def is_connected(G: Graph, X: int | None = None) -> bool:
    """True iff the (induced) subgraph is connected and nonempty."""
    todo = G.full_mask if X is None else X
    if todo == 0:
        return False
    return len(components(G, todo)) == 1


def is_stable(G: Graph, X: int) -> bool:
    """True iff no edge joins two vertices of X."""
    _check_mask(G, X)
    for v in bits(X):
        if G.adj(v) & X:
            return False
    return True


def is_clique(G: Graph, X: int) -> bool:
    """True iff all pairs in X are adjacent."""
    _check_mask(G, X)
    for v in bits(X):
        if (X & ~(1 << v)) & ~G.adj(v):
            return False
    return True


# ---------------------------------------------------------------------------
# Paths


def is_induced_path(G: Graph, path: tuple[int, ...]) -> bool:
    """True iff `path` is a sequence of distinct vertices inducing a path."""
    k = len(path)
    if k == 0 or len(set(path)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = G.has_edge(path[i], path[j])
            if adjacent != (j == i + 1):
                return False
    return True


def path_mask(path: Iterable[int]) -> int:
    return mask_of(path)


def path_interior(path: tuple[int, ...]) -> tuple[int, ...]:
    """Interior vertices (everything but the two ends)."""
    return path[1:-1]


def is_xy_path(G: Graph, path: tuple[int, ...], X: int, Y: int) -> bool:
    """The two-case (X,Y)-path predicate.

    Either the path has one vertex lying in X and Y both, or it is an induced
    path whose first vertex is in X only, whose last vertex is in Y only, and
    whose interior avoids X and Y entirely.  First vertex is the X-end.
    """
    if len(path) == 1:
        v = path[0]
        return v < G.n and bool(X >> v & 1) and bool(Y >> v & 1)
    if not is_induced_path(G, path):
        return False
    first, last = path[0], path[-1]
    if not (X >> first & 1) or (Y >> first & 1):
        return False
    if not (Y >> last & 1) or (X >> last & 1):
        return False
    inner = mask_of(path[1:-1])
    return not inner & (X | Y)


def _splice_to_induced(G: Graph, walk: list[int]) -> tuple[int, ...]:
    """Shorten a path (distinct vertices, consecutive adjacent) to an induced
    path with the same ends, keeping only original vertices.

    From each kept vertex, jump to its farthest neighbor along the rest of
    the walk; the result has no chords.
    """
    out = [walk[0]]
    pos = 0
    last = len(walk) - 1
    while pos < last:
        cur = out[-1]
        nxt = pos + 1
        for j in range(last, pos, -1):
            if G.has_edge(cur, walk[j]):
                nxt = j
                break
        out.append(walk[nxt])
        pos = nxt
    return tuple(out)


def trim_to_xy_path(G: Graph, walk: list[int], X: int, Y: int) -> tuple[int, ...]:
    """Cut and splice a path with an end in X and an end in Y down to an
    (X,Y)-path using only its vertices.

    Cut to the segment from the last X-vertex to the first Y-vertex after it,
    then remove chords.  Raises if the walk never enters X or never reaches Y
    afterwards.
    """
    xi = max((i for i, v in enumerate(walk) if X >> v & 1), default=None)
    if xi is None:
        raise ValueError("walk has no vertex in X")
    yi = next((i for i in range(xi, len(walk)) if Y >> walk[i] & 1), None)
    if yi is None:
        raise ValueError("walk has no vertex in Y after its last X-vertex")
    segment = walk[xi : yi + 1]
    if len(segment) == 1:
        return tuple(segment)
    path = _splice_to_induced(G, segment)
    assert is_xy_path(G, path, X, Y), "trim produced an invalid (X,Y)-path"
    return path


def find_xy_path(G: Graph, X: int, Y: int) -> tuple[int, ...] | None:
    """Lexicographically-first (X,Y)-path found by breadth-first search.

    If X and Y meet, the zero-length path at their smallest common vertex.
    Otherwise a shortest path from X to Y whose interior avoids both sets,
    ties broken by exploring smaller vertices first; a shortest such path has
    no chords, so it is already induced.  None iff no (X,Y)-path exists.
    """
    _check_mask(G, X, "X")
    _check_mask(G, Y, "Y")
    common = X & Y
    if common:
        return (lowest_bit(common),)
    if X == 0 or Y == 0:
        return None
    sources = X
    targets = Y
    allowed = ~(X | Y)  # interior must stay here
    parent: dict[int, int] = {}
    queue = list(bits(sources))
    seen = sources
    for v in queue:
        for w in bits(G.adj(v) & ~seen):
            if targets >> w & 1:
                path = [w, v]
                while path[-1] in parent:
                    path.append(parent[path[-1]])
                path.reverse()
                assert is_xy_path(G, tuple(path), X, Y)
                return tuple(path)
            if allowed >> w & 1:
                parent[w] = v
                seen |= 1 << w
                queue.append(w)
    return None


# ---------------------------------------------------------------------------
# Serialization

_GRAPH_KIND = {"graph": Graph, "digraph": Digraph}


def _parse_edge_lines(text: str) -> tuple[int, int, list[Edge]]:
    rows: list[Edge] = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected two integers, got {raw!r}") from exc
        if header is None:
            header = (a, b)
        else:
            rows.append((a, b))
    if header is None:
        raise ValueError("empty graph text: missing 'n m' header")
    n, m = header
    if n < 0 or m < 0:
        raise ValueError(f"invalid header n={n} m={m}")
    if len(rows) != m:
        raise ValueError(f"header declares m={m} edges but found {len(rows)}")
    return n, m, rows


def parse_graph(text: str) -> Graph:
    """Parse the text format: 'n m' header then m sorted 'u v' lines, u < v.

    '#' lines and blank lines are skipped.  Raises ValueError on loops,
    duplicates, out-of-range vertices, or out-of-order edges.
    """
    n, _, rows = _parse_edge_lines(text)
    for u, v in rows:
        if u >= v:
            raise ValueError(f"edge {u} {v} must have u < v")
    for prev, cur in zip(rows, rows[1:]):
        if cur <= prev:
            raise ValueError(f"edges out of order at {cur[0]} {cur[1]}")
    return Graph(n, rows)


def serialize_graph(G: Graph) -> str:
    """Inverse of parse_graph; output is bit-exact and comment-free."""
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    """Parse a digraph: same format, 'u v' means an arc u -> v."""
    n, _, rows = _parse_edge_lines(text)
    for prev, cur in zip(rows, rows[1:]):
        if cur <= prev:
            raise ValueError(f"arcs out of order at {cur[0]} {cur[1]}")
    return Digraph(n, rows)


def serialize_digraph(D: Digraph) -> str:
    lines = [f"{D.n} {len(D.arcs)}"]
    lines.extend(f"{u} {v}" for u, v in D.arcs)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Brute-force isomorphism (small instances only)


def find_isomorphism(G: Graph, H: Graph) -> dict[int, int] | None:
    """Backtracking isomorphism G -> H, or None.

    Exponential worst case; intended for instances of a dozen or so vertices
    as an oracle for structural tests.  Deterministic: vertices of G are
    placed in a fixed order and candidates tried in increasing order.
    """
    if G.n != H.n or G.m != H.m:
        return None
    if sorted(map(G.degree, G.vertices())) != sorted(map(H.degree, H.vertices())):
        return None
    # Place high-degree vertices first, preferring those adjacent to already
    # placed ones so the consistency check prunes early.
    order: list[int] = []
    placed_mask = 0
    for _ in range(G.n):
        best = min(
            (v for v in G.vertices() if not placed_mask >> v & 1),
            key=lambda v: (-(G.adj(v) & placed_mask).bit_count(), -G.degree(v), v),
        )
        order.append(best)
        placed_mask |= 1 << best

    assignment: dict[int, int] = {}
    used = [False] * H.n

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        g = order[i]
        for h in H.vertices():
            if used[h] or G.degree(g) != H.degree(h):
                continue
            ok = True
            for g2, h2 in assignment.items():
                if G.has_edge(g, g2) != H.has_edge(h, h2):
                    ok = False
                    break
            if not ok:
                continue
            assignment[g] = h
            used[h] = True
            if extend(i + 1):
                return True
            del assignment[g]
            used[h] = False
        return False

    return dict(assignment) if extend(0) else None


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return find_isomorphism(G, H) is not None


# ---------------------------------------------------------------------------
# Canonical forms for trees and forests


def tree_canonical_form(G: Graph, within: int | None = None) -> tuple:
    """Canonical form of a forest: equal forms iff isomorphic forests.

    Each tree component is rooted at its center (the minimum over both
    candidate forms when the center is an edge) and encoded as recursively
    sorted tuples; the forest form is the sorted tuple of component forms.
    Raises ValueError if the (induced) subgraph has a cycle.
    """
    comps = components(G, within)
    forms = []
    for comp in comps:
        k = comp.bit_count()
        edge_count = sum((G.adj(v) & comp).bit_count() for v in bits(comp)) // 2
        if edge_count != k - 1:
            raise ValueError("component is not a tree")
        forms.append(_tree_component_canon(G, comp))
    return tuple(sorted(forms))


def _tree_component_canon(G: Graph, comp: int) -> tuple:
    centers = _tree_centers(G, comp)
    return min(rooted_canonical_form(G, c, comp) for c in centers)


def _tree_centers(G: Graph, comp: int) -> list[int]:
    """The 1 or 2 middle vertices of a tree, by iterative leaf stripping."""
    alive = comp
    while alive.bit_count() > 2:
        leaves = 0
        for v in bits(alive):
            if (G.adj(v) & alive).bit_count() <= 1:
                leaves |= 1 << v
        alive &= ~leaves
    return list(bits(alive))


def rooted_canonical_form(G: Graph, root: int, within: int | None = None) -> tuple:
    """Canonical form of a tree rooted at `root`: equal forms iff there is a
    root-preserving isomorphism.  Raises ValueError on cycles."""
    comp = G.full_mask if within is None else within
    if not comp >> root & 1:
        raise ValueError(f"root {root} not in the vertex set")
    seen = 1 << root

    def rec(v: int, parent_mask: int) -> tuple:
        nonlocal seen
        children = G.adj(v) & comp & ~parent_mask
        if children & seen:
            raise ValueError("not a tree: cycle detected")
        seen |= children
        return tuple(sorted(rec(w, 1 << v) for w in bits(children)))

    form = rec(root, 0)
    if seen != comp:
        raise ValueError("not a tree: root does not reach every vertex")
    return form
