"""Constellations: stable sets attached to disjoint induced paths.

A constellation is a graph together with a stable set S whose deletion
leaves a disjoint union of induced paths, each of which every S-vertex
attaches to.  A route is an induced path between two distinct S-vertices
whose interior lies inside a single member path.  The decision procedures
here are exact: they enumerate all routes and then check the quantified
definitions of d-ampleness, interruptedness (every route between two
earlier vertices of an ordering is met by each later vertex), and
q-zigzaggedness (every route between two vertices of an ordering is
anticomplete to fewer than q of the vertices between them).

The two ordering properties quantify differently: interruptedness checks
routes between the two earlier vertices of a triple against the latest one,
zigzaggedness checks routes between an extreme pair against the
intermediates.  Neither implies the other under a fixed ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import (
    Graph,
    bits,
    is_induced_path,
    is_stable,
    mask_of,
)


class Constellation:
    """Host graph, stable set S (bitmask), and the member paths in order.

    Validates on construction: S is stable, the paths partition the rest of
    the host into components that are induced paths, and every S-vertex has
    at least one neighbor on every path.
    """

    __slots__ = ("host", "S", "paths")

    def __init__(self, host: Graph, S: int, paths: Sequence[tuple[int, ...]]):
        self.host = host
        self.S = S
        self.paths = tuple(tuple(p) for p in paths)
        self._validate()

    def _validate(self) -> None:
        host, S = self.host, self.S
        if S < 0 or S & ~host.full_mask:
            raise ValueError("S out of range")
        if not is_stable(host, S):
            raise ValueError("S is not stable")
        covered = S
        for idx, p in enumerate(self.paths):
            if not p:
                raise ValueError(f"path {idx} is empty")
            pm = mask_of(p)
            if pm & covered:
                raise ValueError(f"path {idx} overlaps S or an earlier path")
            if not is_induced_path(host, p):
                raise ValueError(f"path {idx} is not an induced path")
            covered |= pm
        if covered != host.full_mask:
            raise ValueError("S and the paths do not cover the host")
        masks = [mask_of(p) for p in self.paths]
        for i, mi in enumerate(masks):
            others = 0
            for j, mj in enumerate(masks):
                if j != i:
                    others |= mj
            for v in bits(mi):
                if host.adj(v) & others:
                    raise ValueError(f"paths are joined by an edge at vertex {v}")
        for x in bits(S):
            for idx, m in enumerate(masks):
                if not host.adj(x) & m:
                    raise ValueError(f"S-vertex {x} has no neighbor on path {idx}")

    @property
    def s(self) -> int:
        return self.S.bit_count()

    @property
    def l(self) -> int:
        return len(self.paths)

    def s_vertices(self) -> tuple[int, ...]:
        return tuple(bits(self.S))

    def __repr__(self) -> str:
        return f"Constellation(s={self.s}, l={self.l}, n={self.host.n})"


@dataclass(frozen=True)
class Route:
    """An induced path between two S-vertices through one member path.

    `endpoints` are (left S-end, right S-end); `segment` is the contiguous
    run of member-path vertices, ordered from the left end's neighbor to the
    right end's.  The left end is adjacent to exactly the first segment
    vertex among the segment, the right end to exactly the last.
    """

    endpoints: tuple[int, int]
    path_index: int
    segment: tuple[int, ...]

    @property
    def length(self) -> int:
        """Edge count of the full path endpoint-segment-endpoint."""
        return len(self.segment) + 1

    def vertices(self) -> tuple[int, ...]:
        return (self.endpoints[0], *self.segment, self.endpoints[1])

    def mask(self) -> int:
        return mask_of(self.vertices())


def enumerate_routes(c: Constellation) -> list[Route]:
    """All routes of the constellation, deterministically ordered.

    For each S-pair and each member path, a contiguous segment gives a route
    per direction when one endpoint is adjacent to exactly the first segment
    vertex and the other to exactly the last (a one-vertex segment needs both
    adjacent to it, and gives a single route).  S is stable, so every route
    has length at least 2; asserted.
    """
    out: list[Route] = []
    svs = c.s_vertices()
    for ai in range(len(svs)):
        for bi in range(ai + 1, len(svs)):
            x, y = svs[ai], svs[bi]
            for pi, path in enumerate(c.paths):
                axs = [k for k, v in enumerate(path) if c.host.has_edge(x, v)]
                ays = [k for k, v in enumerate(path) if c.host.has_edge(y, v)]
                out.extend(_pair_routes(x, y, pi, path, axs, ays))
    assert all(r.length >= 2 for r in out), "stable S forces route length >= 2"
    return out


def _pair_routes(
    x: int,
    y: int,
    pi: int,
    path: tuple[int, ...],
    axs: list[int],
    ays: list[int],
) -> list[Route]:
    """Routes between x and y through one path, given attachment positions."""
    routes: list[Route] = []
    ax_set, ay_set = set(axs), set(ays)

    def runs(left: int, left_pos: list[int], right: int, right_pos: set[int],
             skip_equal: bool) -> None:
        for a in left_pos:
            # No further `left` attachment may fall inside the segment.
            stop = min((p for p in left_pos if p > a), default=len(path))
            for b in range(a, stop):
                if b not in right_pos:
                    continue
                if skip_equal and b == a:
                    continue
                # No `right` attachment strictly before b inside the segment.
                if any(a <= p < b for p in right_pos):
                    continue
                routes.append(
                    Route(
                        endpoints=(left, right),
                        path_index=pi,
                        segment=tuple(path[a : b + 1]),
                    )
                )

    runs(x, axs, y, ay_set, skip_equal=False)
    runs(y, ays, x, ax_set, skip_equal=True)
    return routes


def is_d_ample(c: Constellation, d: int) -> bool:
    """True iff no route has length at most d+1.

    For d = 1 ("ample") this is equivalent to no two S-vertices having a
    common neighbor on the member paths; both characterizations are computed
    and asserted to agree.
    """
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    routes = enumerate_routes(c)
    ample = all(r.length > d + 1 for r in routes)
    if d == 1:
        path_vertices = c.host.full_mask & ~c.S
        common = any(
            (c.host.adj(v) & c.S).bit_count() >= 2 for v in bits(path_vertices)
        )
        assert ample == (not common), "route and common-neighbor views disagree"
    return ample


def _routes_by_pair(c: Constellation) -> dict[frozenset[int], list[int]]:
    """Route vertex-set masks keyed by their unordered endpoint pair."""
    table: dict[frozenset[int], list[int]] = {}
    for r in enumerate_routes(c):
        table.setdefault(frozenset(r.endpoints), []).append(r.mask())
    return table


def _check_ordering(c: Constellation, ordering: Sequence[int]) -> tuple[int, ...]:
    ordering = tuple(ordering)
    if mask_of(ordering) != c.S or len(ordering) != c.s:
        raise ValueError("ordering is not a permutation of S")
    return ordering


def is_interrupted_with(c: Constellation, ordering: Sequence[int]) -> bool:
    """True iff under this enumeration, for all positions i < j < k, every
    route between the i-th and j-th vertices contains a neighbor of the k-th.
    """
    ordering = _check_ordering(c, ordering)
    table = _routes_by_pair(c)
    s = len(ordering)
    for j in range(1, s):
        for i in range(j):
            masks = table.get(frozenset((ordering[i], ordering[j])), ())
            for k in range(j + 1, s):
                adj = c.host.adj(ordering[k])
                if any(not adj & m for m in masks):
                    return False
    return True


def is_zigzagged_with(c: Constellation, q: int, ordering: Sequence[int]) -> bool:
    """True iff under this enumeration, for all positions i < k, every route
    between the i-th and k-th vertices is anticomplete to fewer than q of the
    vertices strictly between them.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    ordering = _check_ordering(c, ordering)
    table = _routes_by_pair(c)
    s = len(ordering)
    for i in range(s):
        for k in range(i + 1, s):
            masks = table.get(frozenset((ordering[i], ordering[k])), ())
            between = ordering[i + 1 : k]
            for m in masks:
                anti = sum(1 for v in between if not c.host.adj(v) & m)
                if anti >= q:
                    return False
    return True


_FINDER_MAX_S = 10


def find_interrupted_ordering(c: Constellation) -> tuple[int, ...] | None:
    """Lexicographically smallest interrupted enumeration, or None.

    Depth-first over prefixes; a prefix dies as soon as appending its latest
    vertex leaves some earlier pair's route unmet.  Exact for s <= 10.
    """
    if c.s > _FINDER_MAX_S:
        raise ValueError(f"ordering search limited to s <= {_FINDER_MAX_S}")
    table = _routes_by_pair(c)
    svs = c.s_vertices()

    def admissible(prefix: list[int], new: int) -> bool:
        adj = c.host.adj(new)
        for j in range(1, len(prefix)):
            for i in range(j):
                masks = table.get(frozenset((prefix[i], prefix[j])), ())
                if any(not adj & m for m in masks):
                    return False
        return True

    return _prefix_search(svs, admissible)


def find_zigzagged_ordering(c: Constellation, q: int) -> tuple[int, ...] | None:
    """Lexicographically smallest q-zigzagged enumeration, or None.

    A prefix dies as soon as some pair ending at its latest vertex has a
    route anticomplete to q or more of the vertices between the pair; later
    insertions cannot repair that, since all intermediates of a completed
    pair are already placed.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if c.s > _FINDER_MAX_S:
        raise ValueError(f"ordering search limited to s <= {_FINDER_MAX_S}")
    table = _routes_by_pair(c)
    svs = c.s_vertices()

    def admissible(prefix: list[int], new: int) -> bool:
        for i, anchor in enumerate(prefix):
            masks = table.get(frozenset((anchor, new)), ())
            between = prefix[i + 1 :]
            for m in masks:
                anti = sum(1 for v in between if not c.host.adj(v) & m)
                if anti >= q:
                    return False
        return True

    return _prefix_search(svs, admissible)


def _prefix_search(
    svs: tuple[int, ...],
    admissible,
) -> tuple[int, ...] | None:
    """First complete ordering (trying smaller vertices first) all of whose
    prefixes pass `admissible(prefix, new_vertex)`."""
    prefix: list[int] = []
    used = [False] * len(svs)

    def extend() -> bool:
        if len(prefix) == len(svs):
            return True
        for idx, v in enumerate(svs):
            if used[idx] or not admissible(prefix, v):
                continue
            used[idx] = True
            prefix.append(v)
            if extend():
                return True
            prefix.pop()
            used[idx] = False
        return False

    return tuple(prefix) if extend() else None
