"""Exact pathwidth with certificates.

Pathwidth is computed through the vertex separation number, which equals it:
an ordering v_1..v_n of V(G) has separation max_i |d(P_i)| over prefixes
P_i = {v_1..v_i}, where d(S) is the set of vertices in S with a neighbor
outside S, and the minimum over orderings is pw(G).  From an optimal
ordering, the bags B_i = d(P_{i-1}) + {v_i} form a path decomposition of
the same width, so every answer ships a checkable certificate.

Three engines: a vectorized subset DP over all 2^n prefix sets (exact,
n <= 26); a branch-and-bound decision procedure over prefix orderings with
failure memoization (any n, budgeted); and a specialized exact algorithm
for trees based on the level decision "pw(T) <= k iff some path P of T has
every component of T - P of pathwidth <= k-1".  Growing P from a leaf seed
is complete: an optimal choice of P can be assumed maximal, hence ending at
leaves, and once a seed leaf lies on such a P the unique heavy component
always contains P's continuation, so the forced extension never leaves it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .budget import EXHAUSTED, Budget, BudgetExhausted, as_budget
from .generators import RootedTree
from .graphs import (
    Graph,
    bits,
    components,
    lowest_bit,
    mask_of,
    rooted_canonical_form,
    tree_canonical_form,
)

_DP_MAX_N = 26


@dataclass(frozen=True)
class PathDecomposition:
    """An ordered bag sequence; bags are vertex bitmasks."""

    bags: tuple[int, ...]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(b.bit_count() for b in self.bags) - 1

    def __len__(self) -> int:
        return len(self.bags)


def verify_path_decomposition(G: Graph, D: PathDecomposition) -> tuple[bool, int]:
    """(valid, width): valid iff bags cover V(G), every edge lies in some
    bag, and each vertex's occurrences are contiguous.  Width is reported
    either way."""
    width = D.width
    union = 0
    for b in D.bags:
        if b < 0 or b & ~G.full_mask:
            return False, width
        union |= b
    if union != G.full_mask:
        return False, width
    for u, v in G.edges:
        need = (1 << u) | (1 << v)
        if not any(b & need == need for b in D.bags):
            return False, width
    for v in G.vertices():
        hits = [i for i, b in enumerate(D.bags) if b >> v & 1]
        if hits[-1] - hits[0] + 1 != len(hits):
            return False, width
    return True, width


def serialize_decomposition(D: PathDecomposition) -> str:
    lines = [" ".join(str(v) for v in bits(b)) for b in D.bags]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_decomposition(text: str) -> PathDecomposition:
    """One bag per line as a sorted vertex list; '#' comments allowed."""
    bags = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected integers, got {raw!r}") from exc
        if any(v < 0 for v in verts):
            raise ValueError(f"line {lineno}: negative vertex")
        bags.append(mask_of(verts))
    return PathDecomposition(tuple(bags))


def _boundary_mask(G: Graph, S: int) -> int:
    """Vertices of S with at least one neighbor outside S."""
    out = 0
    for v in bits(S):
        if G.adj(v) & ~S:
            out |= 1 << v
    return out


def decomposition_from_order(G: Graph, order: list[int]) -> PathDecomposition:
    """Bags B_i = d(P_{i-1}) + {v_i} for the given vertex ordering."""
    bags = []
    prefix = 0
    for v in order:
        bags.append(_boundary_mask(G, prefix) | (1 << v))
        prefix |= 1 << v
    return PathDecomposition(tuple(bags))


# ---------------------------------------------------------------------------
# Exact subset DP


def pathwidth_exact(G: Graph, budget: Budget | int | None = None):
    """(pw(G), certificate), or EXHAUSTED if the node budget runs out.

    Subset DP over all prefix sets: dp[S] = max(|d(S)|, min over v in S of
    dp[S - v]), layered by popcount and vectorized; the optimal ordering is
    read back by repeatedly removing a vertex that attains the minimum.
    Requires n <= 26 (the table has 2^n entries); one budget node is one
    table entry.
    """
    n = G.n
    if n > _DP_MAX_N:
        raise ValueError(f"subset DP limited to n <= {_DP_MAX_N}, got {n}")
    if n == 0:
        return -1, PathDecomposition(())
    bud = as_budget(budget)
    size = 1 << n
    masks = np.arange(size, dtype=np.uint32)
    pc = _popcount_u32(masks)
    adj = [np.uint32(G.adj(v)) for v in range(n)]

    boundary = np.zeros(size, dtype=np.uint8)
    for v in range(n):
        in_s = (masks >> np.uint32(v)) & np.uint32(1)
        partial = (masks & adj[v]) != adj[v]
        boundary += (in_s.astype(bool) & partial).astype(np.uint8)

    dp = np.zeros(size, dtype=np.uint8)
    try:
        for layer in range(1, n + 1):
            idx = np.nonzero(pc == layer)[0].astype(np.uint32)
            bud.tick(len(idx))
            acc = np.full(len(idx), 255, dtype=np.uint8)
            for v in range(n):
                bit = np.uint32(1 << v)
                sel = (idx & bit) != 0
                sub = idx[sel] ^ bit
                acc[sel] = np.minimum(acc[sel], dp[sub])
            dp[idx] = np.maximum(acc, boundary[idx])
    except BudgetExhausted:
        return EXHAUSTED
    width = int(dp[size - 1])

    # Read the optimal ordering back, peeling the last vertex of each prefix.
    reversed_order = []
    S = size - 1
    while S:
        chosen = next(v for v in bits(S) if dp[S ^ (1 << v)] <= dp[S])
        reversed_order.append(chosen)
        S ^= 1 << chosen
    order = reversed_order[::-1]
    cert = decomposition_from_order(G, order)
    ok, cert_width = verify_path_decomposition(G, cert)
    assert ok and cert_width == width, "DP certificate failed verification"
    return width, cert


def _popcount_u32(a: np.ndarray) -> np.ndarray:
    v = a.copy()
    v = v - ((v >> np.uint32(1)) & np.uint32(0x55555555))
    v = (v & np.uint32(0x33333333)) + ((v >> np.uint32(2)) & np.uint32(0x33333333))
    v = (v + (v >> np.uint32(4))) & np.uint32(0x0F0F0F0F)
    return ((v * np.uint32(0x01010101)) >> np.uint32(24)).astype(np.uint8)


# ---------------------------------------------------------------------------
# Branch-and-bound decision


def pathwidth_at_most(G: Graph, k: int, budget: Budget | int | None = None):
    """Certificate if pw(G) <= k, None if pw(G) > k, EXHAUSTED on budget.

    Depth-first search over prefix orderings per connected component,
    pruning prefixes whose boundary exceeds k, with a memo of failed prefix
    sets.  A vertex with no neighbors outside the prefix is committed
    immediately: placing it next never increases later boundaries.  One
    budget node is one prefix extension.
    """
    if G.n == 0:
        return PathDecomposition(())
    if k < 0:
        return None
    bud = as_budget(budget)
    order: list[int] = []
    try:
        for comp in components(G):
            comp_order = _vsp_order(G, comp, k, bud)
            if comp_order is None:
                return None
            order.extend(comp_order)
    except BudgetExhausted:
        return EXHAUSTED
    cert = decomposition_from_order(G, order)
    ok, width = verify_path_decomposition(G, cert)
    assert ok and width <= k, "search certificate failed verification"
    return cert


def _vsp_order(G: Graph, comp: int, k: int, bud: Budget) -> list[int] | None:
    if comp.bit_count() <= k + 1:
        return list(bits(comp))

    def expand(S: int) -> list[int]:
        rest = comp & ~S
        for v in bits(rest):
            if not G.adj(v) & ~(S | (1 << v)):
                return [v]
        good = []
        for v in bits(rest):
            S2 = S | (1 << v)
            if _boundary_size(G, S2) <= k:
                good.append(v)
        return good

    failed: set[int] = set()
    path: list[int] = []
    stack: list[tuple[int, list[int], int]] = [(0, expand(0), 0)]
    while stack:
        S, cands, i = stack[-1]
        if i == len(cands):
            stack.pop()
            failed.add(S)
            if stack:
                path.pop()
            continue
        stack[-1] = (S, cands, i + 1)
        v = cands[i]
        S2 = S | (1 << v)
        if S2 in failed:
            continue
        bud.tick()
        path.append(v)
        if S2 == comp:
            return path
        stack.append((S2, expand(S2), 0))
    return None


def _boundary_size(G: Graph, S: int) -> int:
    count = 0
    for v in bits(S):
        if G.adj(v) & ~S:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Trees


def tree_pathwidth(T: RootedTree | Graph) -> tuple[int, PathDecomposition]:
    """Exact pathwidth of a tree, with a verified certificate.

    Level decision: pw(T) <= k iff some path P in T has every component of
    T - P of pathwidth <= k-1 (for the certificate, child decompositions
    are embedded with P's vertex added to their bags, joined by two-vertex
    bags along P).  Candidate paths grow from leaf seeds, extending only
    into the unique too-wide component; decisions are memoized on the
    component's canonical form, and seeds that are isomorphic as roots are
    tried once.  Raises ValueError unless the input is connected and
    acyclic.
    """
    G = T.graph if isinstance(T, RootedTree) else T
    if G.n == 0:
        raise ValueError("empty graph is not a tree")
    if G.m != G.n - 1 or len(components(G)) != 1:
        raise ValueError("input must be a connected acyclic graph")
    memo: dict[tuple, bool] = {}
    full = G.full_mask
    k = 0
    while not _tree_decide(G, full, k, memo):
        k += 1
    bags = _glue_certificate(G, full, k, memo)
    cert = PathDecomposition(tuple(bags))
    ok, width = verify_path_decomposition(G, cert)
    assert ok and width <= k, "tree certificate failed verification"
    return k, cert


def _tree_decide(G: Graph, comp: int, k: int, memo: dict) -> bool:
    """Is the pathwidth of the tree component `comp` at most k?"""
    m = comp.bit_count()
    if m <= 1:
        return True
    if k <= 0:
        return False
    if k == 1:
        return _is_caterpillar(G, comp)
    if k >= m.bit_length() - 1:
        # Splitting at a centroid at least halves the component, so
        # pw <= floor(log2 m).
        return True
    key = (tree_canonical_form(G, within=comp), k)
    cached = memo.get(key)
    if cached is None:
        cached = _find_level_path(G, comp, k, memo) is not None
        memo[key] = cached
    return cached


def _is_caterpillar(G: Graph, comp: int) -> bool:
    """pw <= 1 for a connected tree component iff removing its leaves
    leaves a path (or nothing)."""
    leaves = 0
    for v in bits(comp):
        if (G.adj(v) & comp).bit_count() <= 1:
            leaves |= 1 << v
    spine = comp & ~leaves
    if spine == 0:
        return True
    if len(components(G, spine)) != 1:
        return False
    return all((G.adj(v) & spine).bit_count() <= 2 for v in bits(spine))


def _find_level_path(G: Graph, comp: int, k: int, memo: dict) -> list[int] | None:
    """A path P in `comp` with every component of comp - P of pathwidth
    at most k-1, or None.  Seeds are leaves, deduplicated up to rooted
    isomorphism."""
    seen_roots: set[tuple] = set()
    for leaf in bits(comp):
        if (G.adj(leaf) & comp).bit_count() > 1:
            continue
        form = rooted_canonical_form(G, leaf, comp)
        if form in seen_roots:
            continue
        seen_roots.add(form)
        path = _grow_from_seed(G, comp, k, leaf, memo)
        if path is not None:
            return path
    return None


def _grow_from_seed(
    G: Graph, comp: int, k: int, leaf: int, memo: dict
) -> list[int] | None:
    """Extend P = [leaf] into the unique heavy off-path component until no
    component is heavy (success) or two are (failure).  Every off-path
    component hangs off the path end: a component attaching at an interior
    vertex was classified light when that vertex was the end."""
    path = [leaf]
    pending = components(G, comp & ~(1 << leaf))
    while True:
        heavy = [c for c in pending if not _tree_decide(G, c, k - 1, memo)]
        if not heavy:
            return path
        if len(heavy) > 1:
            return None
        attach = G.adj(path[-1]) & heavy[0]
        assert attach and attach == (attach & -attach), (
            "heavy component must hang off the path end by one edge"
        )
        w = lowest_bit(attach)
        path.append(w)
        pending = components(G, heavy[0] & ~(1 << w))


def _glue_certificate(G: Graph, comp: int, k: int, memo: dict) -> list[int]:
    """Bags for a tree component known to have pathwidth <= k."""
    if comp.bit_count() == 1:
        return [comp]
    path = _find_level_path(G, comp, k, memo)
    assert path is not None, "certificate requested for an undecided component"
    pmask = mask_of(path)
    off = components(G, comp & ~pmask) if pmask != comp else []
    bags: list[int] = []
    for i, p in enumerate(path):
        pb = 1 << p
        for child in off:
            if G.adj(p) & child:
                bags.extend(b | pb for b in _glue_certificate(G, child, k - 1, memo))
        bags.append(pb)
        if i + 1 < len(path):
            bags.append(pb | (1 << path[i + 1]))
    return bags
