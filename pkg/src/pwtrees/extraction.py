"""Constructive extraction: Ramsey descent, digraph selection, the marker-cut
pipeline, the two-sided Ramsey step, strong blocks, and the seedling
machinery that turns rigidity into induced tree models.

A seedling (A, L, Y) is an induced path A, a set L of pairwise disjoint
(N(A), Y)-paths in host minus A, and a target set Y; it is kappa-rigid when
no kappa pairwise anticomplete (N(A), Y)-paths live inside V(L).  Rigidity
is what growth trades on: in a rigid seedling most of L must interact, so
the non-anticompleteness graph over L carries a large clique L0.
magic_extract then cuts delta of those paths into pairwise anticomplete
stumps x..z, each supplied with lambda marked companions: on a companion Q
the marker w is the unique vertex of the suffix w..y with a neighbor in the
stump.  Stump plus suffixes plus their y-ends form a child seedling, and
gluing recursively built child models with bigramsey_extract yields an
induced T_{d,r}-model whose root branch set is A exactly.

Every procedure takes explicit numeric parameters and reports what it
found; the worst-case thresholds that guarantee success are computed by the
constants module and never hard-wired here.  Success values are re-checked
against the literal postcondition predicates before being returned.  `None`
means a pipeline ran to completion without producing the object, while
EXHAUSTED means a budget interrupted a search; the two are never conflated.

digraph_stable_set peels by degeneracy: among vertices of out-degree at
most r, every induced underlying subgraph has at most r edges per vertex,
hence a vertex of underlying degree at most 2r, so repeatedly deleting a
closed minimum-degree neighborhood collects a stable vertex per at most
2r+1 deletions.  That gives the (2r+1)s guarantee; the naive 2rs threshold
is refuted by two disjoint directed triangles at r=1, s=3, whose underlying
graph has no stable set of size 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .budget import EXHAUSTED, RIGID, Budget, BudgetExhausted, as_budget
from .containment import (
    Embedding,
    ModelAssignment,
    anticomplete_path_packing,
    find_induced_minor,
    find_induced_subgraph,
    verify_model,
)
from .generators import make_complete, make_complete_bipartite, make_tree
from .graphs import (
    Digraph,
    Graph,
    anticomplete,
    bits,
    components,
    induced_subgraph,
    is_clique,
    is_induced_path,
    is_stable,
    is_xy_path,
    lowest_bit,
    mask_of,
    neighborhood,
    parse_graph,
    serialize_graph,
    trim_to_xy_path,
)

__all__ = [
    "BigramseyOutcome",
    "DriverResult",
    "GrowOutcome",
    "MagicOutcome",
    "Seedling",
    "StrongBlock",
    "TidyReport",
    "bigramsey_extract",
    "block_to_anticomplete_paths",
    "digraph_fan_extraction",
    "digraph_stable_set",
    "grow_seedling",
    "is_rigid",
    "magic_extract",
    "main_driver",
    "parse_path_family",
    "parse_seedling",
    "product_ramsey_search",
    "ramsey_stable_or_clique",
    "seedling_to_tree",
    "serialize_path_family",
    "serialize_seedling",
    "tidy_report",
    "validate_seedling",
    "validate_strong_block",
    "verify_magic_outcome",
]


def _lowest_bits(mask: int, count: int) -> int:
    """The count lowest set bits of mask (mask must have at least count)."""
    out = 0
    for _ in range(count):
        b = mask & -mask
        out |= b
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# Ramsey descent


def ramsey_stable_or_clique(G: Graph, s: int, t: int):
    """A stable set of size s, or a clique of size t+1, by majority descent.

    Returns ("stable", mask) or ("clique", mask), or None; None is possible
    only when |V(G)| < s**t.  Descent: a vertex whose neighborhood holds at
    least s**(t-1) candidates recurses into it with t-1 (a clique there
    extends by the vertex); otherwise the vertex joins the stable pile and
    its closed neighborhood (fewer than s**(t-1) vertices) is discarded, so
    s piles fit below s**t.
    """
    if s < 1 or t < 0:
        raise ValueError(f"need s >= 1 and t >= 0, got s={s}, t={t}")

    def search(avail: int, t_rem: int):
        if not avail:
            return None
        if t_rem == 0:
            return "clique", avail & -avail
        threshold = s ** (t_rem - 1)
        stable = 0
        cur = avail
        while cur:
            v = lowest_bit(cur)
            nbrs = G.adj(v) & cur
            if nbrs.bit_count() >= threshold:
                sub = search(nbrs, t_rem - 1)
                if sub is None:
                    return None
                kind, mask = sub
                if kind == "stable":
                    return sub
                return "clique", mask | (1 << v)
            stable |= 1 << v
            if stable.bit_count() >= s:
                return "stable", stable
            cur &= ~(G.adj(v) | (1 << v))
        return None

    result = search(G.full_mask, t)
    if result is not None:
        kind, mask = result
        if kind == "stable":
            assert mask.bit_count() == s and is_stable(G, mask)
        else:
            assert mask.bit_count() == t + 1 and is_clique(G, mask)
    return result


# ---------------------------------------------------------------------------
# Digraph selection


def _underlying_adj(D: Digraph) -> list[int]:
    return [D.out_adj(v) | D.in_adj(v) for v in D.vertices()]


def _low_outdegree_peel(D: Digraph, r: int) -> list[int]:
    """Greedy stable set among {out-degree <= r}, in peel order.

    Peels the vertex of minimum underlying degree (ties to the smallest
    label) and deletes its closed neighborhood; on the out-degree-<= r part
    each round deletes at most 2r+1 vertices.
    """
    und = _underlying_adj(D)
    alive = mask_of(v for v in D.vertices() if D.out_degree(v) <= r)
    picked: list[int] = []
    while alive:
        v = min(bits(alive), key=lambda u: ((und[u] & alive).bit_count(), u))
        picked.append(v)
        alive &= ~(und[v] | (1 << v))
    return picked


def digraph_stable_set(D: Digraph, r: int, s: int) -> int | None:
    """A stable set of s vertices (in the underlying graph), or None.

    Succeeds whenever at least (2r+1)*s vertices have out-degree at most r.
    """
    if s <= 0:
        return 0
    picked = _low_outdegree_peel(D, r)
    if len(picked) < s:
        return None
    result = mask_of(picked[:s])
    for v in bits(result):
        assert not ((D.out_adj(v) | D.in_adj(v)) & result)
    return result


def digraph_fan_extraction(D: Digraph, q: int, r: int, s: int):
    """s vertices plus a fan selector over their out-neighborhoods.

    Each vertex y of out-degree at least q*r keeps a reservoir Q_y of its
    q*r smallest out-neighbors; the digraph thinned to reservoir arcs has
    out-degree at most q*r, so digraph_stable_set yields S with the key
    property Q_v and S disjoint for v in S.  The selector, given any
    q-subset of S, greedily carves pairwise disjoint r-sets R_i from the
    reservoirs (each has at most (q-1)*r vertices carved away before its
    turn, so r always remain).  Returns (S, selector) or None; succeeds
    whenever at least (2qr+1)*s vertices have out-degree at least q*r.
    """
    if q < 1 or r < 1 or s < 1:
        raise ValueError(f"need q, r, s >= 1, got q={q}, r={r}, s={s}")
    need = q * r
    reservoir: dict[int, int] = {}
    for v in D.vertices():
        out = D.out_adj(v)
        if out.bit_count() >= need:
            reservoir[v] = _lowest_bits(out, need)
    members = sorted(reservoir)
    index = {v: i for i, v in enumerate(members)}
    thin_arcs = [
        (index[v], index[w])
        for v in members
        for w in bits(reservoir[v])
        if w in index
    ]
    stable = digraph_stable_set(Digraph(len(members), thin_arcs), need, s)
    if stable is None:
        return None
    chosen = tuple(members[i] for i in bits(stable))
    s_mask = mask_of(chosen)
    for v in chosen:
        assert not (reservoir[v] & s_mask)

    def selector(subset) -> list[int]:
        picks = list(subset)
        if len(picks) != q or len(set(picks)) != q:
            raise ValueError(f"selector needs {q} distinct vertices")
        if any(v not in chosen for v in picks):
            raise ValueError("selector arguments must come from the returned set")
        carved: list[int] = []
        used = 0
        for v in picks:
            pool = reservoir[v] & ~used & ~s_mask
            r_set = _lowest_bits(pool, r)
            used |= r_set
            carved.append(r_set)
        for i, (v, r_set) in enumerate(zip(picks, carved)):
            assert r_set.bit_count() == r
            assert not (r_set & ~D.out_adj(v))
            assert not (r_set & s_mask)
            for later in carved[i + 1 :]:
                assert not (r_set & later)
        return carved

    return chosen, selector


# ---------------------------------------------------------------------------
# Product Ramsey and the two-sided anticompleteness step


def product_ramsey_search(u_lists, phi, q: int):
    """First q-subsets Z_1..Z_n (lexicographic) with phi constant on their
    product; returns (color, [Z_1..Z_n]) or None after exhausting all grids.

    phi is called on one tuple per product point and memoized, so structured
    colorings pay per distinct point, not per grid.
    """
    if q < 1:
        raise ValueError(f"need q >= 1, got q={q}")
    choices = [list(combinations(u, q)) for u in u_lists]
    if any(not c for c in choices):
        return None
    memo: dict = {}

    def color(z):
        if z not in memo:
            memo[z] = phi(z)
        return memo[z]

    for grid in product(*choices):
        points = product(*grid)
        first = color(next(points))
        if all(color(z) == first for z in points):
            return first, [list(z_j) for z_j in grid]
    return None


@dataclass
class BigramseyOutcome:
    """r selected positions in the A-list, plus per position the s indices
    of the surviving family members."""

    chosen: list[int]
    picks: list[list[int]]


def bigramsey_extract(G: Graph, a_sets, b_families, r: int, s: int, t: int):
    """From 2rt pairwise anticomplete sets, each with a family of internally
    pairwise anticomplete sets, select r groups (one A-set plus s family
    members each) whose unions are pairwise anticomplete.

    Pipeline: color every choice of one member per family by the pair sets
    E (member of slot i meets A-set j) and E' (members of slots i and j
    meet); product_ramsey_search with q = max(s, t) freezes a constant
    coloring, whose E becomes a digraph on the 2rt slots; a stable r-set at
    out-degree t-1 plus an empty E' on it yields the groups.  Returns a
    BigramseyOutcome or None when the internal searches come up empty.
    Raises ValueError when the hypotheses fail.
    """
    if r < 1 or s < 1 or t < 1:
        raise ValueError(f"need r, s, t >= 1, got r={r}, s={s}, t={t}")
    n = 2 * r * t
    a_sets = list(a_sets)
    b_families = [list(fam) for fam in b_families]
    if len(a_sets) != n:
        raise ValueError(f"need exactly {n} A-sets, got {len(a_sets)}")
    if len(b_families) != n:
        raise ValueError(f"need one family per A-set, got {len(b_families)}")
    used = 0
    for m in a_sets + [m for fam in b_families for m in fam]:
        if not m or m & ~G.full_mask:
            raise ValueError("every set must be a nonempty subset of the host")
        if m & used:
            raise ValueError("the A-sets and family members must be pairwise disjoint")
        used |= m
    for i, a in enumerate(a_sets):
        for b in a_sets[i + 1 :]:
            if not anticomplete(G, a, b):
                raise ValueError("the A-sets must be pairwise anticomplete")
    for fam in b_families:
        for i, m1 in enumerate(fam):
            for m2 in fam[i + 1 :]:
                if not anticomplete(G, m1, m2):
                    raise ValueError(
                        "family members must be pairwise anticomplete within a family"
                    )

    def phi(z):
        e = frozenset(
            (i, j)
            for i in range(n)
            for j in range(n)
            if i != j and not anticomplete(G, b_families[i][z[i]], a_sets[j])
        )
        ee = frozenset(
            frozenset((i, j))
            for i in range(n)
            for j in range(i + 1, n)
            if not anticomplete(G, b_families[i][z[i]], b_families[j][z[j]])
        )
        return e, ee

    hit = product_ramsey_search(
        [range(len(fam)) for fam in b_families], phi, max(s, t)
    )
    if hit is None:
        return None
    (e, ee), z_lists = hit
    stable = digraph_stable_set(Digraph(n, sorted(e)), t - 1, r)
    if stable is None:
        return None
    chosen = sorted(bits(stable))
    for i, ki in enumerate(chosen):
        for kj in chosen[i + 1 :]:
            if frozenset((ki, kj)) in ee:
                return None
    picks = [list(z_lists[k][:s]) for k in chosen]
    unions = [
        a_sets[k] | mask_union(b_families[k][p] for p in pick)
        for k, pick in zip(chosen, picks)
    ]
    for i, u1 in enumerate(unions):
        for u2 in unions[i + 1 :]:
            assert anticomplete(G, u1, u2)
    return BigramseyOutcome(chosen=chosen, picks=picks)


def mask_union(masks) -> int:
    """Bitwise union of an iterable of vertex masks."""
    out = 0
    for m in masks:
        out |= m
    return out


# ---------------------------------------------------------------------------
# Seedlings and rigidity


@dataclass
class Seedling:
    """An induced path A, pairwise disjoint (N(A), Y)-paths L in host minus
    A (each stated x-end first), and the target set Y."""

    host: Graph
    A: tuple[int, ...]
    L: list[tuple[int, ...]]
    Y: int

    @property
    def a_mask(self) -> int:
        return mask_of(self.A)

    @property
    def l_mask(self) -> int:
        return mask_union(mask_of(p) for p in self.L)

    @property
    def lam(self) -> int:
        return len(self.L)

    def x_end(self, i: int) -> int:
        return self.L[i][0]

    def y_end(self, i: int) -> int:
        return self.L[i][-1]


def validate_seedling(sd: Seedling, banned: int = 0) -> None:
    """Raise ValueError unless sd satisfies the seedling invariants (and
    avoids the banned vertices, used for children grown inside host minus
    the parent's A)."""
    G = sd.host
    if not sd.A or not is_induced_path(G, sd.A):
        raise ValueError("A must be a nonempty induced path")
    a = sd.a_mask
    if sd.Y & ~G.full_mask:
        raise ValueError("Y must be a subset of the host")
    if sd.Y & a:
        raise ValueError("Y must avoid A")
    x = neighborhood(G, a)
    used = 0
    for p in sd.L:
        m = mask_of(p)
        if m & a:
            raise ValueError("members must avoid A")
        if m & used:
            raise ValueError("members must be pairwise disjoint")
        used |= m
        if not is_xy_path(G, p, x, sd.Y):
            raise ValueError("each member must be an (N(A), Y)-path, x-end first")
    if (a | used | sd.Y) & banned:
        raise ValueError("seedling touches banned vertices")


def serialize_seedling(sd: Seedling) -> str:
    """Host graph block, then one line each for A and Y and one ``L:`` line
    per member path (x-end first)."""
    parts = [serialize_graph(sd.host).rstrip("\n")]
    parts.append("A: " + " ".join(str(v) for v in sd.A))
    parts.append("Y: " + " ".join(str(v) for v in bits(sd.Y)))
    for p in sd.L:
        parts.append("L: " + " ".join(str(v) for v in p))
    return "\n".join(parts) + "\n"


def _split_fixture(text: str) -> tuple[str, dict[str, list[tuple[int, ...]]]]:
    """Separate the leading graph block from trailing A:/Y:/L: lines."""
    graph_lines: list[str] = []
    tagged: dict[str, list[tuple[int, ...]]] = {"A": [], "Y": [], "L": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, _, tail = line.partition(":")
        if tag in tagged and _ == ":":
            try:
                verts = tuple(int(tok) for tok in tail.split())
            except ValueError as exc:
                raise ValueError(f"line {lineno}: expected vertex list") from exc
            tagged[tag].append(verts)
        else:
            graph_lines.append(line)
    return "\n".join(graph_lines) + "\n", tagged


def parse_seedling(text: str) -> Seedling:
    """Inverse of serialize_seedling; invariants are not checked here."""
    graph_text, tagged = _split_fixture(text)
    host = parse_graph(graph_text)
    if len(tagged["A"]) != 1 or len(tagged["Y"]) != 1:
        raise ValueError("need exactly one A: line and one Y: line")
    return Seedling(host, tagged["A"][0], list(tagged["L"]), mask_of(tagged["Y"][0]))


def serialize_path_family(G: Graph, paths: list[tuple[int, ...]]) -> str:
    """Host graph block plus one ``L:`` line per path, x-end first."""
    parts = [serialize_graph(G).rstrip("\n")]
    for p in paths:
        parts.append("L: " + " ".join(str(v) for v in p))
    return "\n".join(parts) + "\n"


def parse_path_family(text: str) -> tuple[Graph, list[tuple[int, ...]]]:
    """Host plus the L: lines; any A:/Y: lines present are ignored."""
    graph_text, tagged = _split_fixture(text)
    return parse_graph(graph_text), list(tagged["L"])


def is_rigid(sd: Seedling, kappa: int, budget: Budget | int | None = None):
    """RIGID, a witness list of kappa pairwise anticomplete (N(A), Y)-paths
    inside V(L), or EXHAUSTED.  Exact whenever |V(L)| <= 24."""
    validate_seedling(sd)
    packing = anticomplete_path_packing(
        sd.host,
        neighborhood(sd.host, sd.a_mask),
        sd.Y,
        kappa,
        sd.l_mask,
        budget,
    )
    if packing is EXHAUSTED:
        return EXHAUSTED
    if packing is None:
        return RIGID
    return packing


# ---------------------------------------------------------------------------
# Strong blocks


@dataclass
class StrongBlock:
    """A vertex set B plus, per 2-subset {x, y} of B (key (x, y) with
    x < y), a family of internally disjoint x-y paths; families of distinct
    pairs may only meet in shared endpoints."""

    host: Graph
    B: int
    P: dict[tuple[int, int], list[tuple[int, ...]]]


def validate_strong_block(blk: StrongBlock, l: int = 1) -> None:
    """Raise ValueError unless blk is a strong block with at least l paths
    per pair."""
    G = blk.host
    if not blk.B or blk.B & ~G.full_mask:
        raise ValueError("B must be a nonempty subset of the host")
    pairs = set(combinations(sorted(bits(blk.B)), 2))
    if set(blk.P) != pairs:
        raise ValueError("P must have exactly one entry per 2-subset of B")
    interiors: dict[tuple[int, int], int] = {}
    for (x, y), fam in blk.P.items():
        if len(fam) < l:
            raise ValueError(f"pair ({x}, {y}) has fewer than {l} paths")
        seen = 0
        for p in fam:
            if p[0] != x or p[-1] != y or len(set(p)) != len(p):
                raise ValueError(f"paths of pair ({x}, {y}) must run from {x} to {y}")
            for u, v in zip(p, p[1:]):
                if not G.has_edge(u, v):
                    raise ValueError("path steps must be edges")
            inner = mask_of(p[1:-1])
            if inner & seen:
                raise ValueError(f"paths of pair ({x}, {y}) must be internally disjoint")
            seen |= inner
        interiors[(x, y)] = seen
    for e, f in combinations(sorted(blk.P), 2):
        shared = (interiors[e] | mask_of(e)) & (interiors[f] | mask_of(f))
        if shared & ~mask_of(set(e) & set(f)):
            raise ValueError(
                f"pairs {e} and {f} share vertices beyond common endpoints"
            )


def block_to_anticomplete_paths(
    G: Graph,
    blk: StrongBlock,
    t: int,
    g: int,
    budget: Budget | int | None = None,
):
    """A stable subset S of B plus, per pair of S, g full x-y paths whose
    interiors are pairwise anticomplete; None when some pair is rigid at
    level g (or no stable pair exists), EXHAUSTED on budget.

    Per pair {x, y} the trimmed path interiors form the members of the
    seedling ({x}, interiors, N(y)); a non-rigidity witness at level g is
    exactly a family of g interiors that are pairwise anticomplete, and
    re-attaching x and y turns each into a full induced x-y path.
    """
    validate_strong_block(blk)
    sub, old_to_new = induced_subgraph(G, blk.B)
    new_to_old = {new: old for old, new in old_to_new.items()}
    stable_mask = None
    for size in range(sub.n, 1, -1):
        got = ramsey_stable_or_clique(sub, size, t)
        if got is not None and got[0] == "stable":
            stable_mask = mask_of(new_to_old[v] for v in bits(got[1]))
            break
    if stable_mask is None:
        return None
    chosen = sorted(bits(stable_mask))
    families: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for x, y in combinations(chosen, 2):
        members = [
            trim_to_xy_path(G, list(p[1:-1]), G.adj(x), G.adj(y))
            for p in blk.P[(x, y)]
        ]
        sd = Seedling(G, (x,), members, G.adj(y))
        got = is_rigid(sd, g, budget)
        if got is RIGID:
            return None
        if got is EXHAUSTED:
            return EXHAUSTED
        rebuilt = [(x,) + k + (y,) for k in got]
        for i, p in enumerate(rebuilt):
            assert is_induced_path(G, p)
            for other in rebuilt[i + 1 :]:
                assert anticomplete(G, mask_of(p[1:-1]), mask_of(other[1:-1]))
        families[(x, y)] = rebuilt
    return tuple(chosen), families


# ---------------------------------------------------------------------------
# The marker-cut pipeline


def _maximum_clique(n: int, adj: list[int]) -> int:
    """Mask of a maximum clique, by branch and bound on candidate counts."""
    best = 0

    def expand(cur: int, cand: int) -> None:
        nonlocal best
        if cur.bit_count() + cand.bit_count() <= best.bit_count():
            return
        if not cand:
            best = cur
            return
        v = lowest_bit(cand)
        expand(cur | (1 << v), cand & adj[v])
        expand(cur, cand & ~(1 << v))

    expand(0, (1 << n) - 1)
    return best


@dataclass
class MagicOutcome:
    """delta chosen paths with cut vertices z, plus per chosen path a
    lambda-family of companion paths and their markers w."""

    chosen: list[tuple[int, ...]]
    z: list[int]
    families: list[list[tuple[int, ...]]]
    markers: list[list[int]]

    def stump(self, i: int) -> tuple[int, ...]:
        """The prefix of chosen path i up to and including its cut vertex."""
        p = self.chosen[i]
        return p[: p.index(self.z[i]) + 1]


def verify_magic_outcome(G: Graph, out: MagicOutcome, delta: int, lam: int) -> bool:
    """Re-check both conclusions from scratch: the stumps x..z are pairwise
    anticomplete, and on every companion the marker w differs from the
    companion's x-end and is the unique vertex of the suffix w..y with a
    neighbor in the owning stump."""
    if not (len(out.chosen) == len(out.z) == len(out.families) == len(out.markers) == delta):
        return False
    prefixes = []
    used = 0
    for p, zv in zip(out.chosen, out.z):
        m = mask_of(p)
        if zv not in p or m & used:
            return False
        used |= m
        prefixes.append(mask_of(p[: p.index(zv) + 1]))
    for i in range(delta):
        for j in range(i + 1, delta):
            if not anticomplete(G, prefixes[i], prefixes[j]):
                return False
    for i in range(delta):
        fam, marks = out.families[i], out.markers[i]
        if len(fam) != lam or len(marks) != lam:
            return False
        for q_path, w in zip(fam, marks):
            m = mask_of(q_path)
            if m & used:
                return False
            used |= m
            if w not in q_path or w == q_path[0]:
                return False
            suffix = q_path[q_path.index(w) :]
            if [v for v in suffix if G.adj(v) & prefixes[i]] != [w]:
                return False
    return True


def magic_extract(
    G: Graph,
    l0,
    t: int,
    delta: int,
    lam: int,
    budget: Budget | int | None = None,
):
    """Cut delta of the given paths into pairwise anticomplete stumps, each
    with lam marked companion paths; MagicOutcome, None, or EXHAUSTED.

    The paths must be pairwise disjoint induced paths, no two anticomplete,
    each stated x-end first (ValueError otherwise).  First the x-ends are
    stabilized greedily and the digraph D1 ("x of the one path sees the
    other path") is built.  A fan in D1 settles the high-out-degree branch
    with z = x outright.  Otherwise the low-out-degree part of D1 yields a
    set K2 whose x-ends see no other member at all, every member of K2 is
    cut at the first prefix meeting delta*lam partners, a fan over the
    cut-prefix digraph fixes K3 with reusable companion reservoirs, a peel
    over the one-shorter-prefix digraph makes the stumps-but-last pairwise
    harmless, and a final Ramsey pass on the cut vertices themselves
    finishes conclusion (a).
    """
    if delta < 1 or lam < 1:
        raise ValueError(f"need delta, lam >= 1, got delta={delta}, lam={lam}")
    paths = [tuple(p) for p in l0]
    masks = []
    used = 0
    for p in paths:
        if not p or not is_induced_path(G, p):
            raise ValueError("every path must be a nonempty induced path")
        m = mask_of(p)
        if m & used:
            raise ValueError("the paths must be pairwise disjoint")
        used |= m
        masks.append(m)
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if anticomplete(G, masks[i], masks[j]):
                raise ValueError("no two of the paths may be anticomplete")
    bud = as_budget(budget)
    try:
        return _magic_pipeline(G, paths, masks, t, delta, lam, bud)
    except BudgetExhausted:
        return EXHAUSTED


def _last_contact(G: Graph, path: tuple[int, ...], region: int) -> int:
    """The vertex of path closest to its y-end with a neighbor in region."""
    for v in reversed(path):
        if G.adj(v) & region:
            return v
    raise AssertionError("path is anticomplete to the region")


def _magic_pipeline(G, paths, masks, t, delta, lam, bud):
    k1 = []
    taken = 0
    for i, p in enumerate(paths):
        if not (G.adj(p[0]) & taken):
            k1.append(i)
            taken |= 1 << p[0]
    arcs1 = []
    for a, i in enumerate(k1):
        for b, j in enumerate(k1):
            bud.tick()
            if a != b and G.adj(paths[i][0]) & masks[j]:
                arcs1.append((a, b))
    d1 = Digraph(len(k1), arcs1)

    fan = digraph_fan_extraction(d1, delta, lam, delta)
    if fan is not None:
        chosen_pos, selector = fan
        carved = selector(chosen_pos)
        chosen = [paths[k1[a]] for a in chosen_pos]
        z = [p[0] for p in chosen]
        families, markers = [], []
        for a, r_set in zip(chosen_pos, carved):
            x_i = paths[k1[a]][0]
            fam = [paths[k1[b]] for b in bits(r_set)]
            families.append(fam)
            markers.append([_last_contact(G, q, 1 << x_i) for q in fam])
        out = MagicOutcome(chosen, z, families, markers)
        assert verify_magic_outcome(G, out, delta, lam)
        return out

    k2 = sorted(_low_outdegree_peel(d1, delta * lam))
    if len(k2) < delta * lam + 1:
        return None
    p2 = [paths[k1[a]] for a in k2]
    m2 = [masks[k1[a]] for a in k2]
    n2 = len(p2)

    cut = []
    for a, p in enumerate(p2):
        partners: set[int] = set()
        j_star = None
        for j, v in enumerate(p):
            bud.tick()
            av = G.adj(v)
            for b in range(n2):
                if b != a and b not in partners and av & m2[b]:
                    partners.add(b)
            if len(partners) >= delta * lam:
                j_star = j
                break
        if j_star is None:
            return None
        assert j_star >= 1
        cut.append(j_star)
    pre_z = [mask_of(p[: j + 1]) for p, j in zip(p2, cut)]
    pre_zm = [mask_of(p[:j]) for p, j in zip(p2, cut)]

    arcs2 = []
    for a in range(n2):
        for b in range(n2):
            bud.tick()
            if a != b and not anticomplete(G, pre_z[a], m2[b]):
                arcs2.append((a, b))
    d2 = Digraph(n2, arcs2)
    fan2 = digraph_fan_extraction(
        d2, delta, lam, max(delta, n2 // (2 * delta * lam + 1))
    )
    if fan2 is None:
        return None
    k3, selector2 = fan2

    arcs3 = []
    for a, va in enumerate(k3):
        for b, vb in enumerate(k3):
            bud.tick()
            if a != b and not anticomplete(G, pre_zm[va], m2[vb]):
                arcs3.append((a, b))
    k4 = _low_outdegree_peel(Digraph(len(k3), arcs3), delta * lam)
    if len(k4) < delta:
        return None

    z_of = [p2[k3[a]][cut[k3[a]]] for a in k4]
    zg = Graph(
        len(k4),
        [
            (a, b)
            for a in range(len(k4))
            for b in range(a + 1, len(k4))
            if G.has_edge(z_of[a], z_of[b])
        ],
    )
    got = ramsey_stable_or_clique(zg, delta, t)
    if got is not None and got[0] == "stable":
        sel = sorted(bits(got[1]))
    else:
        sel, blocked = [], 0
        for a in range(len(k4)):
            if not ((1 << a) & blocked):
                sel.append(a)
                blocked |= zg.adj(a) | (1 << a)
        if len(sel) < delta:
            return None
        sel = sel[:delta]

    chosen2 = [k3[k4[a]] for a in sel]
    carved = selector2(chosen2)
    chosen = [p2[i] for i in chosen2]
    z = [p2[i][cut[i]] for i in chosen2]
    families, markers = [], []
    for i, r_set in zip(chosen2, carved):
        fam = [p2[b] for b in bits(r_set)]
        families.append(fam)
        markers.append([_last_contact(G, q, pre_z[i]) for q in fam])
    out = MagicOutcome(chosen, z, families, markers)
    assert verify_magic_outcome(G, out, delta, lam)
    return out


# ---------------------------------------------------------------------------
# Growth


@dataclass
class GrowOutcome:
    """Result of one growth step.

    status "children" carries delta verified child seedlings; "not_rigid"
    means the seedling itself admits kappa pairwise anticomplete members
    (the witness is reported, growth presupposes rigidity); "absent" means
    some pipeline stage ran to completion empty-handed; "exhausted" means a
    budget interrupted a stage.
    """

    status: str
    children: list[Seedling] = field(default_factory=list)
    witness: list[tuple[int, ...]] | None = None


def grow_seedling(
    G: Graph,
    sd: Seedling,
    t: int,
    delta: int,
    lam: int,
    kappa: int,
    budget: Budget | int | None = None,
    *,
    spare: int = 0,
    child_rigidity: int | None = None,
) -> GrowOutcome:
    """Grow delta pairwise disjoint lam-child seedlings inside host minus A.

    The non-anticompleteness graph over L either carries kappa pairwise
    anticomplete members (then sd is simply not rigid and the witness is
    returned) or a large clique L0; magic_extract on L0 with delta + spare
    targets cuts stumps A_P = x..z and marked suffixes w..y, which assemble
    directly into children (A_P, {w..y suffixes}, {their y-ends}).  Children
    are then filtered by is_rigid: with child_rigidity=None each child is
    checked at level |V(L_child)| + 1, which disjointness makes immediate;
    an explicit level makes the filter selective.  Success needs delta
    survivors.  Each child is re-validated as a seedling avoiding A, and
    the growth conclusions (stumps pairwise anticomplete, A meets every
    child's A-path but none of its suffixes) are asserted independently.
    """
    validate_seedling(sd)
    n = len(sd.L)
    masks = [mask_of(p) for p in sd.L]
    gamma_adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if not anticomplete(G, masks[i], masks[j]):
                gamma_adj[i] |= 1 << j
                gamma_adj[j] |= 1 << i
    stable, blocked = [], 0
    for i in range(n):
        if not ((1 << i) & blocked):
            stable.append(i)
            blocked |= gamma_adj[i] | (1 << i)
    if len(stable) >= kappa:
        return GrowOutcome("not_rigid", witness=[sd.L[i] for i in stable[:kappa]])

    clique = _maximum_clique(n, gamma_adj)
    l0 = [sd.L[i] for i in bits(clique)]
    got = magic_extract(G, l0, t, delta + spare, lam, budget)
    if got is EXHAUSTED:
        return GrowOutcome("exhausted")
    if got is None:
        return GrowOutcome("absent")

    a_mask = sd.a_mask
    children = []
    for i in range(delta + spare):
        stump = got.stump(i)
        members, y_mask = [], 0
        for q_path, w in zip(got.families[i], got.markers[i]):
            members.append(q_path[q_path.index(w) :])
            y_mask |= 1 << q_path[-1]
        child = Seedling(G, stump, members, y_mask)
        validate_seedling(child, banned=a_mask)
        children.append(child)
    for i, c in enumerate(children):
        assert not anticomplete(G, a_mask, c.a_mask)
        assert anticomplete(G, a_mask, c.l_mask)
        for c2 in children[i + 1 :]:
            assert anticomplete(G, c.a_mask, c2.a_mask)

    survivors, saw_exhausted = [], False
    for c in children:
        level = child_rigidity if child_rigidity is not None else c.l_mask.bit_count() + 1
        verdict = is_rigid(c, level, budget)
        if verdict is RIGID:
            survivors.append(c)
        elif verdict is EXHAUSTED:
            saw_exhausted = True
    if len(survivors) >= delta:
        return GrowOutcome("children", survivors[:delta])
    return GrowOutcome("exhausted" if saw_exhausted else "absent")


# ---------------------------------------------------------------------------
# From a seedling to a tree


def _graft(branch, model, b, d, src, dst, depth):
    """Copy the branch sets of model's subtree rooted at src onto dst in the
    T_{d,.} labeling, keeping the d smallest children at every level."""
    branch[dst] = model.branch[src]
    if depth > 0:
        for k in range(d):
            _graft(branch, model, b, d, b * src + 1 + k, d * dst + 1 + k, depth - 1)


def _subtree_union(model, b, root, depth) -> int:
    mask = model.branch[root]
    if depth > 0:
        for k in range(b):
            mask |= _subtree_union(model, b, b * root + 1 + k, depth - 1)
    return mask


def seedling_to_tree(
    G: Graph,
    sd: Seedling,
    d: int,
    r: int,
    t: int,
    kappa: int,
    budget: Budget | int | None = None,
    *,
    branch_factor: int | None = None,
    child_lambda: int | None = None,
    child_rigidity: int | None = None,
    spare: int = 0,
):
    """An induced T_{d,r}-model inside host[A + V(L)] whose root branch set
    is A exactly; None when a stage completes empty, EXHAUSTED on budget.

    r=1 needs d pairwise non-adjacent x-ends (guaranteed at lam >= d**t by
    the Ramsey descent, with an exhaustive lexicographic fallback below it);
    the leaf branch sets are those ends as singletons.  For r >= 2,
    grow_seedling supplies 2dt children (lam per child defaulting to d**t,
    the base-case demand), each child recursively yields a
    T_{branch_factor, r-1}-model rooted at its own A-path, and
    bigramsey_extract over the children's root paths and first-level
    subtree unions picks d children and d subtrees each that are pairwise
    anticomplete across children; grafting those subtrees (pruned to
    branching d) under a fresh T_{d,r} labeling finishes the model.
    """
    validate_seedling(sd)
    if d < 1 or r < 1:
        raise ValueError(f"need d, r >= 1, got d={d}, r={r}")
    bud = as_budget(budget)

    if r == 1:
        ends = [p[0] for p in sd.L]
        eg = Graph(
            len(ends),
            [
                (i, j)
                for i in range(len(ends))
                for j in range(i + 1, len(ends))
                if G.has_edge(ends[i], ends[j])
            ],
        )
        got = ramsey_stable_or_clique(eg, d, t)
        if got is not None and got[0] == "stable":
            pick = sorted(bits(got[1]))
        else:
            pick = None
            try:
                for combo in combinations(range(len(ends)), d):
                    bud.tick()
                    if is_stable(eg, mask_of(combo)):
                        pick = list(combo)
                        break
            except BudgetExhausted:
                return EXHAUSTED
            if pick is None:
                return None
        tree = make_tree(d, 1)
        branch = {0: sd.a_mask}
        for leaf, i in zip(range(1, d + 1), pick):
            branch[leaf] = 1 << ends[i]
        model = ModelAssignment(G, tree.graph, branch)
        assert verify_model(model)
        assert model.branch[0] == sd.a_mask
        assert not (mask_union(branch.values()) & ~(sd.a_mask | sd.l_mask))
        return model

    b = branch_factor if branch_factor is not None else d
    if b < d:
        raise ValueError(f"branch factor {b} cannot be below d={d}")
    lam_child = child_lambda if child_lambda is not None else d**t
    grown = grow_seedling(
        G,
        sd,
        t,
        2 * d * t,
        lam_child,
        kappa,
        bud,
        spare=spare,
        child_rigidity=child_rigidity,
    )
    if grown.status == "exhausted":
        return EXHAUSTED
    if grown.status != "children":
        return None

    child_models = []
    for child in grown.children:
        sub = seedling_to_tree(
            G,
            child,
            b,
            r - 1,
            t,
            kappa,
            bud,
            branch_factor=branch_factor,
            child_lambda=child_lambda,
            child_rigidity=child_rigidity,
            spare=spare,
        )
        if sub is EXHAUSTED:
            return EXHAUSTED
        if sub is None:
            return None
        child_models.append(sub)

    a_list = [c.a_mask for c in grown.children]
    fams = [
        [_subtree_union(m, b, j, r - 2) for j in range(1, b + 1)]
        for m in child_models
    ]
    big = bigramsey_extract(G, a_list, fams, d, d, t)
    if big is None:
        return None

    tree = make_tree(d, r)
    branch = {0: sd.a_mask}
    for slot, ci in enumerate(big.chosen):
        c_label = slot + 1
        m = child_models[ci]
        branch[c_label] = m.branch[0]
        for k, pick in enumerate(big.picks[slot]):
            _graft(branch, m, b, d, pick + 1, d * c_label + 1 + k, r - 2)
    model = ModelAssignment(G, tree.graph, branch)
    assert verify_model(model)
    assert model.branch[0] == sd.a_mask
    assert not (mask_union(branch.values()) & ~(sd.a_mask | sd.l_mask))
    return model


# ---------------------------------------------------------------------------
# Tidiness and the driver


@dataclass
class TidyReport:
    """Outcome of the two obstruction searches at level t: a clique on t+1
    vertices (as an Embedding) and an induced K_{t,t}-model; each field
    holds the witness, None for absent at the budget used, or EXHAUSTED."""

    t: int
    clique: object
    ktt: object

    @property
    def is_tidy(self):
        """True/False when both searches were conclusive, else None."""
        if self.clique is EXHAUSTED or self.ktt is EXHAUSTED:
            return None
        return self.clique is None and self.ktt is None


def tidy_report(G: Graph, t: int, budget: int | None = None) -> TidyReport:
    """Search for a K_{t+1} clique and an induced K_{t,t}-model; with an
    integer budget each search gets its own allowance."""
    clique = find_induced_subgraph(G, make_complete(t + 1), budget)
    ktt = find_induced_minor(G, make_complete_bipartite(t, t), budget)
    return TidyReport(t, clique, ktt)


@dataclass
class DriverResult:
    """One of the three certificates: kind is "clique" (an Embedding of
    K_{t+1}), "ktt" (an induced K_{t,t}-model), or "h-model" (an induced
    model of the requested forest)."""

    kind: str
    certificate: object


def main_driver(
    G: Graph,
    t: int,
    H: Graph,
    *,
    minor_budget: int | None = None,
    tree_budget: int | None = None,
    seedling: Seedling | None = None,
):
    """A clique on t+1 vertices, an induced model of the forest H, or an
    induced K_{t,t}-model; None when every search completes empty,
    EXHAUSTED when one was interrupted.  Raises ValueError on cyclic H.

    Certificates are tried in that order, so a graph holding both an
    H-model and a K_{t,t}-model reports the H-model.  The direct route runs
    find_induced_minor on H itself; when a seedling is supplied, the tree
    route additionally builds an induced T_{h,h}-model (h = |V(H)|, the
    tree every h-vertex forest joins into through one extra root vertex),
    embeds H into T_{h,h}, and reads the H-model off the composition.
    """
    if H.m != H.n - len(components(H)):
        raise ValueError("H must be acyclic")
    exhausted = False

    clique = find_induced_subgraph(G, make_complete(t + 1), minor_budget)
    if isinstance(clique, Embedding):
        return DriverResult("clique", clique)
    exhausted |= clique is EXHAUSTED

    direct = find_induced_minor(G, H, minor_budget)
    if isinstance(direct, ModelAssignment):
        return DriverResult("h-model", direct)
    exhausted |= direct is EXHAUSTED

    if seedling is not None:
        h = H.n
        tree_model = seedling_to_tree(
            G, seedling, h, h, t, len(seedling.L) + 1, tree_budget
        )
        if tree_model is EXHAUSTED:
            exhausted = True
        elif tree_model is not None:
            tree = make_tree(h, h)
            emb = find_induced_subgraph(tree.graph, H, tree_budget)
            if emb is EXHAUSTED:
                exhausted = True
            elif isinstance(emb, Embedding):
                branch = {v: tree_model.branch[emb.mapping[v]] for v in H.vertices()}
                model = ModelAssignment(G, H, branch)
                assert verify_model(model)
                return DriverResult("h-model", model)

    ktt = find_induced_minor(G, make_complete_bipartite(t, t), minor_budget)
    if isinstance(ktt, ModelAssignment):
        return DriverResult("ktt", ktt)
    exhausted |= ktt is EXHAUSTED

    return EXHAUSTED if exhausted else None
