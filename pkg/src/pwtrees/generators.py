"""Deterministic graph family constructors and seeded fixtures.

Families: the complete d-ary trees of fixed radius, brick walls, complete
and complete bipartite graphs, constellations built from attachment specs,
and the crossing-paths family (pairwise intersecting induced paths in a
triangle-free host).  Seeded randomness uses splitmix64 so any language can
reproduce the fixtures bit for bit; graphs draw one 64-bit word per vertex
pair in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constellations import Constellation
from .graphs import Digraph, Graph, subdivide


@dataclass(frozen=True)
class RootedTree:
    """A tree with a distinguished root and per-vertex depth/parent tables."""

    graph: Graph
    root: int
    depth: tuple[int, ...]
    parent: tuple[int, ...]  # -1 at the root

    @property
    def n(self) -> int:
        return self.graph.n

    def children(self, v: int) -> tuple[int, ...]:
        return tuple(
            w for w in range(self.graph.n) if self.parent[w] == v
        )

    def leaves(self) -> tuple[int, ...]:
        return tuple(
            v
            for v in range(self.graph.n)
            if v != self.root and self.graph.degree(v) == 1
        )


def make_tree(d: int, r: int) -> RootedTree:
    """The complete d-ary tree of radius r: every non-leaf has d children
    and every leaf sits at depth exactly r.

    Vertices are labeled in breadth-first order (root 0, children of v are
    d*v+1 .. d*v+d), so the count is 1 + d + ... + d^r.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    n = sum(d**k for k in range(r + 1))
    edges = []
    depth = [0] * n
    parent = [-1] * n
    for v in range(n):
        if depth[v] < r:
            for c in range(d * v + 1, d * v + d + 1):
                edges.append((v, c))
                depth[c] = depth[v] + 1
                parent[c] = v
    return RootedTree(Graph(n, edges), 0, tuple(depth), tuple(parent))


def make_wall(r: int) -> tuple[Graph, dict[int, tuple[int, int]]]:
    """The r-by-r wall, plus vertex -> (row, column) coordinates.

    Layout: rows 0..r of horizontal rails over columns 0..2r+1, with a
    vertical rung at (i, j)-(i+1, j) exactly when i+j is even; the two
    degree-1 corners of that grid are removed.  Every row is a horizontal
    induced path, each pair of consecutive rows encloses r bricks, and the
    maximum degree is 3.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    cols = 2 * r + 2

    def vid(i: int, j: int) -> int:
        return i * cols + j

    edges = []
    for i in range(r + 1):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 <= r and (i + j) % 2 == 0:
                edges.append((vid(i, j), vid(i + 1, j)))
    full = Graph((r + 1) * cols, edges)
    drop = [v for v in full.vertices() if full.degree(v) == 1]
    assert len(drop) == 2, "the uncut grid has exactly two degree-1 corners"
    keep = [v for v in full.vertices() if v not in drop]
    remap = {v: i for i, v in enumerate(keep)}
    wall = Graph(
        len(keep),
        [(remap[u], remap[v]) for u, v in full.edges if u not in drop and v not in drop],
    )
    coords = {remap[v]: divmod(v, cols) for v in keep}
    return wall, coords


def make_complete(n: int) -> Graph:
    """K_n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def make_complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t}: left side 0..s-1, right side s..s+t-1."""
    if s < 1 or t < 1:
        raise ValueError(f"need s, t >= 1, got {s}, {t}")
    return Graph(s + t, [(u, s + v) for u in range(s) for v in range(t)])


# ---------------------------------------------------------------------------
# Constellation construction


@dataclass
class ConstellationSpec:
    """Attachment description of a constellation.

    `path_lengths[j]` is the edge count of path j (so it has length+1
    vertices); `attachments[(i, j)]` lists the 0-based positions on path j
    adjacent to S-vertex i.  Every (i, j) pair needs at least one position.
    """

    s: int
    path_lengths: tuple[int, ...]
    attachments: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)


def build_constellation(spec: ConstellationSpec) -> Constellation:
    """Realize a spec: S-vertices 0..s-1, then each path's vertices in order.

    The result re-validates every constellation invariant on construction.
    Raises ValueError on malformed specs (missing attachments, bad
    positions).
    """
    if spec.s < 1:
        raise ValueError(f"need s >= 1, got {spec.s}")
    if not spec.path_lengths:
        raise ValueError("need at least one path")
    starts = []
    base = spec.s
    for ell in spec.path_lengths:
        if ell < 0:
            raise ValueError(f"negative path length {ell}")
        starts.append(base)
        base += ell + 1
    edges = []
    paths = []
    for j, ell in enumerate(spec.path_lengths):
        verts = tuple(range(starts[j], starts[j] + ell + 1))
        paths.append(verts)
        edges.extend(zip(verts, verts[1:]))
    for i in range(spec.s):
        for j, ell in enumerate(spec.path_lengths):
            positions = spec.attachments.get((i, j), ())
            if not positions:
                raise ValueError(f"S-vertex {i} has no attachment on path {j}")
            for pos in positions:
                if not 0 <= pos <= ell:
                    raise ValueError(
                        f"attachment position {pos} out of range on path {j}"
                    )
                edges.append((i, starts[j] + pos))
    extra = set(spec.attachments) - {
        (i, j) for i in range(spec.s) for j in range(len(spec.path_lengths))
    }
    if extra:
        raise ValueError(f"attachments for nonexistent pairs: {sorted(extra)}")
    host = Graph(base, edges)
    S = (1 << spec.s) - 1
    return Constellation(host, S, paths)


def parse_constellation_spec(text: str) -> ConstellationSpec:
    """Parse the text format: 's l' header, path-lengths line, then one
    attachment line 'i j k pos_1 .. pos_k' per (S-vertex, path) pair."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected integers, got {raw!r}") from exc
    if len(rows) < 2:
        raise ValueError("constellation text needs a header and a lengths line")
    (hline, header), (lline, lengths) = rows[0], rows[1]
    if len(header) != 2:
        raise ValueError(f"line {hline}: header must be 's l'")
    s, l = header
    if s < 1 or l < 1:
        raise ValueError(f"line {hline}: need s >= 1 and l >= 1")
    if len(lengths) != l:
        raise ValueError(f"line {lline}: expected {l} path lengths")
    attachments: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, row in rows[2:]:
        if len(row) < 3:
            raise ValueError(f"line {lineno}: expected 'i j k pos_1 .. pos_k'")
        i, j, k, *positions = row
        if len(positions) != k:
            raise ValueError(f"line {lineno}: declared {k} positions, got {len(positions)}")
        if not (0 <= i < s and 0 <= j < l):
            raise ValueError(f"line {lineno}: pair ({i},{j}) out of range")
        if (i, j) in attachments:
            raise ValueError(f"line {lineno}: duplicate attachment line for ({i},{j})")
        attachments[(i, j)] = tuple(positions)
    if len(attachments) != s * l:
        raise ValueError(f"expected {s * l} attachment lines, got {len(attachments)}")
    return ConstellationSpec(s=s, path_lengths=tuple(lengths), attachments=attachments)


def serialize_constellation_spec(spec: ConstellationSpec) -> str:
    lines = [f"{spec.s} {len(spec.path_lengths)}"]
    lines.append(" ".join(str(ell) for ell in spec.path_lengths))
    for i in range(spec.s):
        for j in range(len(spec.path_lengths)):
            pos = spec.attachments[(i, j)]
            lines.append(f"{i} {j} {len(pos)} " + " ".join(map(str, pos)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Crossing paths


def crossing_paths_family(
    n: int, seed: int | None = None
) -> tuple[Graph, list[tuple[int, ...]], tuple[int, ...], tuple[int, ...]]:
    """n pairwise disjoint, pairwise non-anticomplete induced paths in a
    triangle-free host; returns (host, paths, x-ends, y-ends).

    Path i runs x_i, then one "slot" per other path in increasing index
    order, then y_i; slot j of path i is joined to slot i of path j.  The
    ends touch nothing outside their own path.  With a seed, vertex labels
    are shuffled by a splitmix64 Fisher-Yates pass (path order and
    orientation are preserved).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    stride = n + 1

    def x(i: int) -> int:
        return i * stride

    def y(i: int) -> int:
        return i * stride + n

    def slot(i: int, j: int) -> int:
        if j == i:
            raise ValueError("no self slot")
        return i * stride + 1 + (j if j < i else j - 1)

    total = n * stride
    edges = []
    paths = []
    for i in range(n):
        seq = (x(i), *(slot(i, j) for j in range(n) if j != i), y(i))
        paths.append(seq)
        edges.extend(zip(seq, seq[1:]))
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((slot(i, j), slot(j, i)))
    if seed is None:
        perm = list(range(total))
    else:
        perm = _fisher_yates(total, seed)
    host = Graph(total, [(perm[u], perm[v]) for u, v in edges])
    relabeled = [tuple(perm[v] for v in seq) for seq in paths]
    xs = tuple(perm[x(i)] for i in range(n))
    ys = tuple(perm[y(i)] for i in range(n))
    return host, relabeled, xs, ys


# ---------------------------------------------------------------------------
# Seeded randomness (splitmix64)

_M64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator: state advances by 0x9E3779B97F4A7C15 and
    each output is finalized with the standard xor-shift-multiply chain.
    Reproducible across languages from the same 64-bit seed."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _M64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """next_u64() % bound (modulo reduction, documented and stable)."""
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        return self.next_u64() % bound


def _fisher_yates(n: int, seed: int) -> list[int]:
    """perm[old] = new, from a descending-index Fisher-Yates shuffle."""
    order = list(range(n))
    rng = SplitMix64(seed)
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old] = new
    return perm


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi style seeded graph: one splitmix64 word per pair (u, v),
    u < v, in lexicographic order; the edge is present iff the word is below
    floor(p * 2^64)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    threshold = _probability_threshold(p)
    rng = SplitMix64(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.next_u64() < threshold:
                edges.append((u, v))
    return Graph(n, edges)


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Seeded digraph: one word per ordered pair (u, v), u != v, in
    lexicographic order; arc present iff the word is below floor(p * 2^64)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    threshold = _probability_threshold(p)
    rng = SplitMix64(seed)
    arcs = []
    for u in range(n):
        for v in range(n):
            if v == u:
                continue
            if rng.next_u64() < threshold:
                arcs.append((u, v))
    return Digraph(n, arcs)


def random_subdivision(G: Graph, max_len: int, seed: int) -> Graph:
    """Subdivide each edge to a length drawn uniformly (by modulo) from
    1..max_len, edges processed in sorted order."""
    if max_len < 1:
        raise ValueError(f"need max_len >= 1, got {max_len}")
    rng = SplitMix64(seed)
    lengths = {e: 1 + rng.below(max_len) for e in G.edges}
    return subdivide(G, lengths)


def _probability_threshold(p: float) -> int:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0,1], got {p}")
    return int(p * (1 << 64))
