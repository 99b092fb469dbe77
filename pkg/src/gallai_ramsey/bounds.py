"""Closed-form Ramsey and Gallai-Ramsey values for cycles and complete graphs."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

REL_TOL = 1e-12
FLOOR_REVIEW_TOL = 1e-9


class HypothesisError(ValueError):
    """Arguments fall outside the range where a formula is known to hold."""


def _need(cond: bool, what: str, msg: str) -> None:
    if not cond:
        raise HypothesisError(f"{what}: {msg}")


def lower_bound(k: int, n: int) -> int:
    """n * 2^k + 1, from the doubling construction on n * 2^k vertices."""
    _need(k >= 1 and n >= 2, "lower bound", f"needs k >= 1 and n >= 2 (got k={k}, n={n})")
    return n * 2**k + 1


def f_value(k: int, n: int) -> float:
    """2n+1 for one color, 4n+1 for two, (n ln n) 2^k - (k+1) n + 1 beyond."""
    _need(k >= 1 and n >= 2, "f(k, n)", f"needs k >= 1 and n >= 2 (got k={k}, n={n})")
    if k == 1:
        return 2 * n + 1
    if k == 2:
        return 4 * n + 1
    return n * math.log(n) * 2**k - (k + 1) * n + 1


def upper_bound_old(k: int, n: int) -> float:
    """(n ln n)(2^(k+3) - 3), valid for k >= 1, n >= 2."""
    _need(k >= 1 and n >= 2, "(n ln n)(2^(k+3)-3) bound", f"needs k >= 1 and n >= 2 (got k={k}, n={n})")
    return n * math.log(n) * (2 ** (k + 3) - 3)


def upper_bound_chen(k: int, n: int) -> float:
    """(4n + n ln n) 2^k, valid for k >= 2, n >= 2."""
    _need(k >= 2 and n >= 2, "(4n+n ln n)2^k bound", f"needs k >= 2 and n >= 2 (got k={k}, n={n})")
    return (4 * n + n * math.log(n)) * 2**k


def upper_bound_new(k: int, n: int) -> float:
    """(n ln n) 2^k - (k+1) n + 1, valid for k >= 3, n >= 8."""
    _need(k >= 3 and n >= 8, "(n ln n)2^k-(k+1)n+1 bound", f"needs k >= 3 and n >= 8 (got k={k}, n={n})")
    return f_value(k, n)


def integer_bound(value: float) -> tuple[int, bool]:
    """Largest integer <= value, and whether it sits close enough to an
    integer boundary that rounding error could matter."""
    fl = math.floor(value)
    near = abs(value - round(value)) <= FLOOR_REVIEW_TOL * max(1.0, abs(value))
    return fl, near


EXACT_SOURCES = {
    2: "GR_k(C_5) = 2*2^k+1",
    3: "GR_k(C_7) = 3*2^k+1",
    4: "GR_k(C_9) = 4*2^k+1",
    5: "GR_k(C_11) = 5*2^k+1",
    6: "GR_k(C_13) = 6*2^k+1",
    7: "GR_k(C_15) = 7*2^k+1",
}


def exact_value(k: int, n: int) -> int | None:
    """Known GR_k(C_{2n+1}) = n * 2^k + 1 for 2 <= n <= 7; None otherwise."""
    if k < 1:
        raise HypothesisError(f"exact value: needs k >= 1 (got k={k})")
    if 2 <= n <= 7:
        return n * 2**k + 1
    return None


def even_cycle_bound(k: int, n: int) -> int:
    """GR_k(C_{2n}) <= (n-1) k + 3n."""
    _need(k >= 1 and n >= 2, "even cycle bound", f"needs k >= 1 and n >= 2 (got k={k}, n={n})")
    return (n - 1) * k + 3 * n


def ramsey_two_cycles(m: int, l: int) -> int | None:
    """Two-color Ramsey number R(C_m, C_l) where a closed form is known."""
    if m < 3 or l < 3:
        raise HypothesisError(f"cycle lengths must be >= 3 (got {m}, {l})")
    if m == l:
        if m % 2 == 1 and m >= 5:
            return 2 * (m - 1) + 1  # 4n + 1 with m = 2n + 1
        if m == 4:
            return 6
        if m == 6:
            return 8
        if m % 2 == 0 and m >= 6:
            return 3 * (m // 2) - 1
        return None
    a, b = min(m, l), max(m, l)
    if a >= 4 and a % 2 == 0 and b % 2 == 1:
        return max(b - 1 + a // 2, 2 * a - 1)
    return None


def fox_conjecture_value(k: int, t: int, r2: int) -> int:
    """Conjectured GR_k(K_t), given the caller's value ``r2`` of R_2(K_t)."""
    if k < 1 or t < 3 or r2 < t:
        raise HypothesisError(f"needs k >= 1, t >= 3 and r2 >= t (got k={k}, t={t}, r2={r2})")
    if k % 2 == 0:
        return (r2 - 1) ** (k // 2) + 1
    return (t - 1) * (r2 - 1) ** ((k - 1) // 2) + 1


# --- comparison tables --------------------------------------------------------

COLUMNS = ("lower", "upperOld", "upperChen", "upperNew", "exact", "evenCycleBound")

_FORMULAS = {
    "lower": (lower_bound, "n*2^k+1 (doubling construction)"),
    "upperOld": (upper_bound_old, "(n ln n)(2^(k+3)-3)"),
    "upperChen": (upper_bound_chen, "(4n+n ln n)2^k"),
    "upperNew": (upper_bound_new, "(n ln n)2^k-(k+1)n+1"),
    "evenCycleBound": (even_cycle_bound, "GR_k(C_2n) <= (n-1)k+3n"),
}


@dataclass
class Cell:
    value: float | int | None
    source: str

    @property
    def blank(self) -> bool:
        return self.value is None


@dataclass
class BoundRow:
    n: int
    k: int
    cells: dict[str, Cell] = field(default_factory=dict)

    def value(self, column: str):
        cell = self.cells.get(column)
        return None if cell is None else cell.value

    def ordering_holds(self) -> bool | None:
        """upperNew < upperChen < upperOld and lower <= upperNew, when all are populated."""
        vals = [self.value(c) for c in ("lower", "upperNew", "upperChen", "upperOld")]
        if any(v is None for v in vals):
            return None
        lower, new, chen, old = vals
        return _lt(new, chen) and _lt(chen, old) and lower <= new * (1 + REL_TOL)


def _lt(a: float, b: float) -> bool:
    return a < b and not math.isclose(a, b, rel_tol=REL_TOL)


@dataclass
class BoundReport:
    rows: list[BoundRow] = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["n", "k"]
        for col in COLUMNS:
            header += [col, f"{col}_source"]
        writer.writerow(header)
        for row in self.rows:
            line = [row.n, row.k]
            for col in COLUMNS:
                cell = row.cells[col]
                line += ["" if cell.blank else _fmt(cell.value), cell.source]
            writer.writerow(line)
        return buf.getvalue()

    def to_text(self) -> str:
        header = ["n", "k", *COLUMNS]
        body = [[str(r.n), str(r.k)] + ["-" if r.cells[c].blank else _fmt(r.cells[c].value) for c in COLUMNS]
                for r in self.rows]
        widths = [max(len(x) for x in col) for col in zip(header, *body)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in body]
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    return str(v) if isinstance(v, int) else f"{v:.4f}"


def bound_row(n: int, k: int) -> BoundRow:
    row = BoundRow(n, k)
    for col, (fn, src) in _FORMULAS.items():
        try:
            row.cells[col] = Cell(fn(k, n), src)
        except HypothesisError as exc:
            row.cells[col] = Cell(None, f"blank: {exc}")
    ex = exact_value(k, n) if k >= 1 else None
    row.cells["exact"] = Cell(ex, EXACT_SOURCES[n]) if ex is not None else Cell(None, "blank: no exact value known outside 2 <= n <= 7")
    return row


class BoundOrderingError(AssertionError):
    pass


def compare_table(n_range, k_range) -> BoundReport:
    """One row per (n, k); raises BoundOrderingError if a populated row
    breaks upperNew < upperChen < upperOld or lower <= upperNew."""
    report = BoundReport([bound_row(n, k) for n in n_range for k in k_range])
    bad = [(r.n, r.k) for r in report.rows if r.ordering_holds() is False]
    if bad:
        raise BoundOrderingError(f"bound ordering fails at (n, k) in {bad[:5]}")
    return report
