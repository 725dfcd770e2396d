"""Search budgets and shared result sentinels.

Every potentially expensive search in this package counts work in search-tree
nodes against an optional budget.  Running out of budget is reported as the
distinct outcome ``EXHAUSTED`` rather than a negative answer: a search that
gave up proves nothing.
"""

from __future__ import annotations


class BudgetExhausted(Exception):
    """Internal control flow: a search ran out of its node budget.

    Raised by :meth:`Budget.tick` and caught at the top level of each search
    operation, which converts it to the ``EXHAUSTED`` sentinel.  Never
    propagated to callers of the public API.
    """


class Budget:
    """A mutable countdown of search-tree nodes.

    ``limit=None`` means unlimited.  The same instance may be threaded through
    nested searches so that the total work, not per-phase work, is bounded.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        if limit is not None and limit < 0:
            raise ValueError(f"budget limit must be >= 0, got {limit}")
        self.limit = limit
        self.used = 0

    def tick(self, cost: int = 1) -> None:
        """Charge `cost` nodes; raise BudgetExhausted once over the limit."""
        self.used += cost
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"exceeded budget of {self.limit} nodes")

    @property
    def exhausted(self) -> bool:
        return self.limit is not None and self.used > self.limit

    def __repr__(self) -> str:
        lim = "unlimited" if self.limit is None else str(self.limit)
        return f"Budget(used={self.used}, limit={lim})"


def as_budget(budget: Budget | int | None) -> Budget:
    """Coerce an int node limit, None (unlimited), or Budget to a Budget."""
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


class _Sentinel:
    """A named singleton result value (falsy is deliberately undefined: do
    not branch on truthiness of search results, compare identity instead)."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __reduce__(self):
        return (_lookup_sentinel, (self._name,))


#: A search hit its node budget before reaching a conclusion.
EXHAUSTED = _Sentinel("EXHAUSTED")

#: A rigidity check found no witness within the stated size (see extraction).
RIGID = _Sentinel("RIGID")

_SENTINELS = {"EXHAUSTED": EXHAUSTED, "RIGID": RIGID}


def _lookup_sentinel(name: str) -> _Sentinel:
    return _SENTINELS[name]
