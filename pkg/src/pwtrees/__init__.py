"""Exact pathwidth certificates, tree induced minors, constellation
checkers, and the seedling-growth extraction pipeline for small graphs.

The package is organized bottom-up:

* ``graphs``: immutable bitmask graphs and digraphs, mask helpers, path
  predicates, and the text file format.
* ``budget``: node budgets and the ``EXHAUSTED`` / ``RIGID`` sentinels
  (compare by identity; a search that gave up proves nothing).
* ``generators``: trees, walls, complete (bipartite) graphs, subdivision,
  seeded random graphs, constellation specs, and the crossing-paths
  family.
* ``width``: exact pathwidth with certificates, bounded-width decision,
  and the linear-time tree routine.
* ``containment``: induced subgraph and induced minor search with
  verified witnesses, plus obstruction constructions.
* ``constellations``: routes, d-ampleness, interrupted and zigzagged
  orderings.
* ``extraction``: the constructive pipeline from Ramsey descent through
  seedling growth to induced tree models, and the top-level driver.
* ``constants``: the explicit bound expressions, exact evaluation, and
  the s-expression text format.
* ``cli``: the ``pwtrees`` command line front end over all of the above.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .budget import EXHAUSTED, RIGID, Budget, BudgetExhausted
from .graphs import Digraph, Graph, parse_digraph, parse_graph, serialize_digraph, serialize_graph

__all__ = [
    "Budget",
    "BudgetExhausted",
    "Digraph",
    "EXHAUSTED",
    "Graph",
    "RIGID",
    "__version__",
    "parse_digraph",
    "parse_graph",
    "serialize_digraph",
    "serialize_graph",
]
