"""One-call certification of a Gallai-Ramsey value for an odd cycle."""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import HypothesisError, exact_value, f_value, upper_bound_new
from .constructions import verify_lower_bound
from .search import SearchConfig, SearchOutcome, Status, search_via_gallai_tree


@dataclass
class GRPointReport:
    n: int
    k: int
    lower_order: int
    lower_status: str  # "certified" | "failed"
    upper_order: int
    upper_status: str  # "certified" | "timeout" | "refuted"
    exact: int | None
    f_value: float
    upper_new: float | None
    search: SearchOutcome

    @property
    def settled(self) -> bool:
        return self.lower_status == "certified" and self.upper_status == "certified"

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "cycle": f"C_{2 * self.n + 1}",
            "lower": {"order": self.lower_order, "status": self.lower_status,
                      "claim": f"GR_{self.k}(C_{2 * self.n + 1}) >= {self.lower_order + 1}"},
            "upper": {"order": self.upper_order, "status": self.upper_status,
                      "claim": f"GR_{self.k}(C_{2 * self.n + 1}) <= {self.upper_order}"},
            "formulas": {"exact": self.exact, "f": self.f_value, "upperNew": self.upper_new},
            "search": self.search.to_record(),
        }


def verify_gr_point(n: int, k: int, budget: float = 60.0) -> GRPointReport:
    """Certify GR_k(C_{2n+1}) >= n*2^k + 1 by construction and, within the
    budget, <= n*2^k + 1 by exhaustive search over Gallai colorings."""
    if n < 2 or k < 1:
        raise ValueError(f"need n >= 2 and k >= 1 (got n={n}, k={k})")
    lower = verify_lower_bound(n, k)
    order = n * 2**k
    cfg = SearchConfig(order + 1, k, 2 * n + 1, gallai_only=True, time_budget=budget)
    outcome = search_via_gallai_tree(cfg)
    upper_status = {
        Status.EXHAUSTED: "certified",
        Status.TIMEOUT: "timeout",
        Status.WITNESS: "refuted",
    }[outcome.status]
    try:
        new = upper_bound_new(k, n)
    except HypothesisError:
        new = None
    return GRPointReport(
        n, k, order, "certified" if lower.certified else "failed",
        order + 1, upper_status, exact_value(k, n), f_value(k, n), new, outcome,
    )
