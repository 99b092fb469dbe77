"""Edge-colored complete graphs, certificates and the graph text format.

Colors are 1-based (``1..k``), vertices are 0-based.  Edge colors live in a
flat upper-triangular array indexed by pair rank, so ``colorOf(u, v)`` is a
single array lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

MAX_COLORS = 255


def pair_count(order: int) -> int:
    return order * (order - 1) // 2


def pair_rank(u: int, v: int, order: int) -> int:
    """Index of the unordered pair {u, v} in the flat edge array."""
    if u > v:
        u, v = v, u
    return u * (2 * order - u - 1) // 2 + (v - u - 1)


def iter_pairs(order: int) -> Iterator[tuple[int, int]]:
    for u in range(order):
        for v in range(u + 1, order):
            yield u, v


class ColoredCompleteGraph:
    """Immutable k-edge-colored complete graph on vertices ``0..order-1``."""

    def __init__(self, order: int, colors: Sequence[int] | np.ndarray, k: int | None = None):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        arr = np.asarray(colors, dtype=np.int64).ravel()
        if arr.size != pair_count(order):
            raise ValueError(
                f"expected {pair_count(order)} edge colors for order {order}, got {arr.size}"
            )
        if k is None:
            k = int(arr.max()) if arr.size else 1
        if not 1 <= k <= MAX_COLORS:
            raise ValueError(f"color count must lie in [1, {MAX_COLORS}], got {k}")
        if arr.size and (arr.min() < 1 or arr.max() > k):
            raise ValueError(f"edge colors must lie in [1, {k}]")
        self._order = order
        self._k = k
        self._colors = arr.astype(np.uint8)
        self._colors.setflags(write=False)

    # construction helpers

    @classmethod
    def from_function(cls, order: int, k: int, color_of: Callable[[int, int], int]):
        return cls(order, [color_of(u, v) for u, v in iter_pairs(order)], k)

    @classmethod
    def from_matrix(cls, matrix, k: int | None = None):
        m = np.asarray(matrix)
        order = m.shape[0]
        iu = np.triu_indices(order, 1)
        if not np.array_equal(m, m.T):
            raise ValueError("color matrix must be symmetric")
        return cls(order, m[iu], k)

    @classmethod
    def monochromatic(cls, order: int, color: int = 1, k: int | None = None):
        return cls(order, [color] * pair_count(order), k if k is not None else color)

    # accessors

    @property
    def order(self) -> int:
        return self._order

    @property
    def k(self) -> int:
        return self._k

    @property
    def colors(self) -> np.ndarray:
        """Read-only flat color array in pair-rank order."""
        return self._colors

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no self-pairs in a complete graph")
        if not (0 <= u < self._order and 0 <= v < self._order):
            raise IndexError(f"vertex out of range for order {self._order}")
        return int(self._colors[pair_rank(u, v, self._order)])

    @cached_property
    def matrix(self) -> np.ndarray:
        """Symmetric ``order x order`` color matrix with zeros on the diagonal."""
        m = np.zeros((self._order, self._order), dtype=np.uint8)
        iu = np.triu_indices(self._order, 1)
        m[iu] = self._colors
        m = m + m.T
        m.setflags(write=False)
        return m

    @cached_property
    def _masks(self) -> dict[int, tuple[int, ...]]:
        out = {}
        mat = self.matrix
        for c in range(1, self._k + 1):
            rows = mat == c
            out[c] = tuple(
                int(sum(1 << int(j) for j in np.flatnonzero(rows[v]))) for v in range(self._order)
            )
        return out

    def class_masks(self, color: int) -> tuple[int, ...]:
        """Neighbourhoods of the color class as integer bitmasks, one per vertex."""
        self._check_color(color)
        return self._masks[color]

    def class_edges(self, color: int) -> list[tuple[int, int]]:
        self._check_color(color)
        iu, iv = np.triu_indices(self._order, 1)
        sel = self._colors == color
        return list(zip(iu[sel].tolist(), iv[sel].tolist()))

    def colors_used(self) -> set[int]:
        return set(np.unique(self._colors).tolist())

    def _check_color(self, color: int) -> None:
        if not 1 <= color <= self._k:
            raise ValueError(f"color {color} outside [1, {self._k}]")

    # derived graphs

    def induced(self, vertices: Sequence[int]) -> "ColoredCompleteGraph":
        """Subgraph on ``vertices``; new vertex i is ``vertices[i]``."""
        idx = np.asarray(vertices, dtype=np.intp)
        if len(set(idx.tolist())) != len(idx):
            raise ValueError("repeated vertex in induced subgraph")
        return ColoredCompleteGraph.from_matrix(self.matrix[np.ix_(idx, idx)], self._k)

    def relabel(self, perm: Sequence[int]) -> "ColoredCompleteGraph":
        """Rename vertex v to ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self._order)):
            raise ValueError("relabel needs a permutation of the vertex ids")
        inv = [0] * self._order
        for old, new in enumerate(perm):
            inv[new] = old
        return self.induced(inv)

    def with_edge_color(self, u: int, v: int, color: int) -> "ColoredCompleteGraph":
        arr = self._colors.astype(np.int64)
        arr[pair_rank(u, v, self._order)] = color
        return ColoredCompleteGraph(self._order, arr, max(self._k, color))

    # protocol

    def __eq__(self, other):
        if not isinstance(other, ColoredCompleteGraph):
            return NotImplemented
        return (
            self._order == other._order
            and self._k == other._k
            and np.array_equal(self._colors, other._colors)
        )

    def __hash__(self):
        return hash((self._order, self._k, self._colors.tobytes()))

    def __repr__(self):
        return f"ColoredCompleteGraph(order={self._order}, k={self._k})"

    # text format

    def to_text(self) -> str:
        lines = [f"{self._order} {self._k}"]
        for (u, v), c in zip(iter_pairs(self._order), self._colors.tolist()):
            lines.append(f"{u} {v} {c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoredCompleteGraph":
        rows = [
            line.split()
            for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if not rows:
            raise ValueError("empty graph file")
        try:
            order, k = (int(x) for x in rows[0])
        except ValueError:
            raise ValueError(f"bad header line {' '.join(rows[0])!r}; expected 'N k'") from None
        colors = [0] * pair_count(order)
        seen = set()
        for row in rows[1:]:
            if len(row) != 3:
                raise ValueError(f"bad edge line {' '.join(row)!r}; expected 'u v c'")
            u, v, c = (int(x) for x in row)
            if not (0 <= u < v < order):
                raise ValueError(f"bad pair ({u}, {v}) for order {order}; need 0 <= u < v < N")
            if (u, v) in seen:
                raise ValueError(f"pair ({u}, {v}) listed twice")
            seen.add((u, v))
            colors[pair_rank(u, v, order)] = c
        if len(seen) != pair_count(order):
            raise ValueError(f"{pair_count(order) - len(seen)} pairs missing a color")
        return cls(order, colors, k)


def read_graph(path) -> ColoredCompleteGraph:
    with open(path) as fh:
        return ColoredCompleteGraph.from_text(fh.read())


def write_graph(g: ColoredCompleteGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_text())


@dataclass(frozen=True)
class TriangleCertificate:
    vertices: tuple[int, int, int]
    colors: tuple[int, int, int]  # colors of (v0v1, v1v2, v0v2)

    kind = "triangle"

    def to_record(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "colors": list(self.colors)}


@dataclass(frozen=True)
class CycleCertificate:
    color: int
    vertices: tuple[int, ...]

    kind = "cycle"

    def __len__(self):
        return len(self.vertices)

    def to_record(self) -> dict:
        return {"kind": self.kind, "color": self.color, "vertices": list(self.vertices)}


def certificate_from_record(rec: dict) -> TriangleCertificate | CycleCertificate:
    kind = rec.get("kind")
    if kind == "triangle":
        return TriangleCertificate(tuple(rec["vertices"]), tuple(rec["colors"]))
    if kind == "cycle":
        return CycleCertificate(int(rec["color"]), tuple(rec["vertices"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


def relabel_certificate(cert, perm: Sequence[int]):
    if isinstance(cert, TriangleCertificate):
        return TriangleCertificate(tuple(perm[v] for v in cert.vertices), cert.colors)
    return CycleCertificate(cert.color, tuple(perm[v] for v in cert.vertices))


def masks_from_edges(order: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    masks = [0] * order
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks
