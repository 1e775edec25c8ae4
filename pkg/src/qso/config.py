"""Size budgets for the deliberately exponential operations.

Second-order sums enumerate all relations over the domain, rewriting to
disjunctive normal form distributes conjunctions, and the subtraction-by-one
construction multiplies disjuncts by all weak orderings.  Each of these is
exponential by design; the limits below make overruns a hard error rather
than a hang.  ``Limits`` is immutable so a single instance can be shared.
"""

import os
from dataclasses import dataclass

DEFAULT_SUBSET_BUDGET = 2**24
DEFAULT_DNF_LIMIT = 4096
DEFAULT_WEAK_ORDER_LIMIT = 6

BUDGET_ENV_VAR = "QSO_BUDGET"


@dataclass(frozen=True)
class Limits:
    """Enumeration budgets; defaults suit desk-scale experiments.

    subset_budget: maximum number of relation subsets a single second-order
        quantifier (or a grounding step) may enumerate.
    dnf_limit: maximum number of disjuncts produced by DNF distribution.
    weak_order_limit: maximum number of variables for weak-ordering
        enumeration (the count grows like the ordered Bell numbers).
    """

    subset_budget: int = DEFAULT_SUBSET_BUDGET
    dnf_limit: int = DEFAULT_DNF_LIMIT
    weak_order_limit: int = DEFAULT_WEAK_ORDER_LIMIT

    def __post_init__(self):
        if self.subset_budget <= 0 or self.dnf_limit <= 0 or self.weak_order_limit <= 0:
            raise ValueError("limits must be positive")


DEFAULT_LIMITS = Limits()


def limits_from_env(base: Limits = DEFAULT_LIMITS) -> Limits:
    """Return ``base`` with the subset budget overridden by QSO_BUDGET, if set."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return base
    try:
        budget = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    return Limits(
        subset_budget=budget,
        dnf_limit=base.dnf_limit,
        weak_order_limit=base.weak_order_limit,
    )
