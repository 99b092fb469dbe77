"""Gallai partitions, reduced graphs and recursive decomposition trees."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .checks import find_rainbow_triangle
from .graph import ColoredCompleteGraph, TriangleCertificate, iter_pairs, pair_count, pair_rank

log = logging.getLogger(__name__)


class NotGallaiError(ValueError):
    """The coloring has a rainbow triangle, so no Gallai partition is promised."""

    def __init__(self, certificate: TriangleCertificate):
        super().__init__(f"rainbow triangle on vertices {certificate.vertices}")
        self.certificate = certificate


@dataclass(frozen=True)
class GallaiPartition:
    """Parts ``V_1..V_p`` (p >= 2) and the color between every pair of parts.

    ``reduced_colors`` is indexed like a colored K_p: pair (i, j), i < j, sits
    at ``pair_rank(i, j, p)``.
    """

    parts: tuple[tuple[int, ...], ...]
    reduced_colors: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(tuple(sorted(int(v) for v in part)) for part in self.parts)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "reduced_colors", tuple(int(c) for c in self.reduced_colors))
        if len(parts) < 2:
            raise ValueError(f"a Gallai partition needs at least 2 parts, got {len(parts)}")
        if any(not part for part in parts):
            raise ValueError("parts must be nonempty")
        if len(self.reduced_colors) != pair_count(len(parts)):
            raise ValueError(
                f"expected {pair_count(len(parts))} reduced colors for {len(parts)} parts"
            )

    @property
    def p(self) -> int:
        return len(self.parts)

    def reduced_color(self, i: int, j: int) -> int:
        return self.reduced_colors[pair_rank(i, j, self.p)]

    def to_record(self) -> dict:
        return {"parts": [list(part) for part in self.parts], "reducedColor": list(self.reduced_colors)}

    @classmethod
    def from_record(cls, rec: dict) -> "GallaiPartition":
        return cls(tuple(tuple(p) for p in rec["parts"]), tuple(rec["reducedColor"]))


@dataclass(frozen=True)
class EdgeViolation:
    u: int
    v: int
    parts: tuple[int, int]
    expected: int
    actual: int


@dataclass
class PartitionVerdict:
    valid: bool
    edge_violations: list[EdgeViolation] = field(default_factory=list)
    reduced_palette: tuple[int, ...] = ()

    @property
    def too_many_colors(self) -> bool:
        return len(self.reduced_palette) > 2

    def __bool__(self):
        return self.valid


def _check_cover(g: ColoredCompleteGraph, P: GallaiPartition) -> None:
    flat = [v for part in P.parts for v in part]
    if len(flat) != len(set(flat)):
        raise ValueError("parts are not pairwise disjoint")
    if any(not 0 <= v < g.order for v in flat):
        raise ValueError("part contains a vertex outside the graph")
    if len(flat) != g.order:
        raise ValueError(f"parts cover {len(flat)} of {g.order} vertices")


def validate_partition(g: ColoredCompleteGraph, P: GallaiPartition) -> PartitionVerdict:
    """Check every between-part edge against ``P.reduced_colors``.

    Returns all mismatched edges, and the reduced palette so a third color is
    visible.  Raises ValueError when the parts do not partition the vertices.
    """
    _check_cover(g, P)
    mat = g.matrix
    violations = []
    for i, j in iter_pairs(P.p):
        want = P.reduced_color(i, j)
        block = mat[np.ix_(P.parts[i], P.parts[j])]
        for a, b in np.argwhere(block != want):
            u, v = P.parts[i][a], P.parts[j][b]
            violations.append(EdgeViolation(min(u, v), max(u, v), (i, j), want, int(block[a, b])))
    palette = tuple(sorted(set(P.reduced_colors)))
    return PartitionVerdict(not violations and len(palette) <= 2, violations, palette)


def _partition_from_labels(g: ColoredCompleteGraph, labels: Sequence[int]) -> GallaiPartition | None:
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, []).append(v)
    parts = sorted(groups.values(), key=lambda part: part[0])
    if len(parts) < 2:
        return None
    reduced = [g.color(parts[i][0], parts[j][0]) for i, j in iter_pairs(len(parts))]
    return GallaiPartition(tuple(map(tuple, parts)), tuple(reduced))


def _components_avoiding(g: ColoredCompleteGraph, palette: Sequence[int]) -> list[int]:
    """Component label per vertex in the graph of edges colored outside ``palette``."""
    parent = list(range(g.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    keep = ~np.isin(g.colors, palette)
    iu, iv = np.triu_indices(g.order, 1)
    for u, v in zip(iu[keep].tolist(), iv[keep].tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return [find(v) for v in range(g.order)]


def minimal_module(mat, u: int, v: int, stop_at: int | None = None) -> int:
    """Bitmask of the smallest module containing u and v.

    A module is a vertex set that every outside vertex sees in a single
    color.  Grows the set by every vertex that splits it.
    """
    n = len(mat)
    members = (1 << u) | (1 << v)
    size = 2
    queue = [v]
    base = mat[u]
    while queue:
        w = queue.pop()
        row = mat[w]
        for x in range(n):
            if not members >> x & 1 and row[x] != base[x]:
                members |= 1 << x
                size += 1
                queue.append(x)
        if stop_at is not None and size >= stop_at:
            break
    return members


def _strong_module_labels(g: ColoredCompleteGraph) -> list[int]:
    """Labels of the maximal strong modules when the top of the modular
    decomposition is prime: u and v share a label iff their minimal module
    is proper."""
    n = g.order
    mat = g.matrix.tolist()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    full = (1 << n) - 1
    for u, v in iter_pairs(n):
        if find(u) == find(v):
            continue
        mod = minimal_module(mat, u, v, stop_at=n)
        if mod != full:
            root = find(u)
            for x in range(n):
                if mod >> x & 1:
                    rx = find(x)
                    if rx != root:
                        parent[max(rx, root)] = min(rx, root)
                        root = min(rx, root)
    return [find(v) for v in range(n)]


def find_gallai_partition(g: ColoredCompleteGraph) -> GallaiPartition:
    """A Gallai partition of ``g`` (deterministic).

    Stage 1 tries the components of the edges avoiding one color, then a
    pair of colors, in lexicographic order.  Stage 2 groups vertices by the
    maximal strong modules of the coloring, which always works on a Gallai
    coloring whose top decomposition node is prime.
    """
    if g.order < 2:
        raise ValueError("a Gallai partition needs at least 2 vertices")
    tri = find_rainbow_triangle(g)
    if tri is not None:
        raise NotGallaiError(tri)
    used = sorted(g.colors_used())
    palettes = [(a,) for a in used] + list(itertools.combinations(used, 2))
    for palette in palettes:
        cand = _partition_from_labels(g, _components_avoiding(g, palette))
        if cand is not None and validate_partition(g, cand).valid:
            return cand
    log.debug("color-pair components gave no Gallai partition at order %d; using modules", g.order)
    cand = _partition_from_labels(g, _strong_module_labels(g))
    if cand is None or not validate_partition(g, cand).valid:
        raise RuntimeError("module partition failed to validate on a Gallai coloring")
    return cand


def is_prime(g: ColoredCompleteGraph) -> bool:
    """True when ``g`` has no module other than singletons and the whole set."""
    if g.order < 3:
        return False
    mat = g.matrix.tolist()
    full = (1 << g.order) - 1
    return all(minimal_module(mat, u, v, stop_at=g.order) == full for u, v in iter_pairs(g.order))


@dataclass(frozen=True)
class ReducedGraph:
    graph: ColoredCompleteGraph
    parts: tuple[tuple[int, ...], ...]

    def representatives(self) -> tuple[int, ...]:
        return tuple(part[0] for part in self.parts)


def reduced_graph(g: ColoredCompleteGraph, P: GallaiPartition) -> ReducedGraph:
    verdict = validate_partition(g, P)
    if not verdict.valid:
        raise ValueError(
            f"invalid Gallai partition: {len(verdict.edge_violations)} mismatched edges, "
            f"reduced palette {verdict.reduced_palette}"
        )
    return ReducedGraph(ColoredCompleteGraph(P.p, P.reduced_colors, g.k), P.parts)


@dataclass(frozen=True)
class DecompositionNode:
    vertices: tuple[int, ...]
    partition: GallaiPartition | None = None
    children: tuple["DecompositionNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.partition is None

    def to_record(self) -> dict:
        if self.is_leaf:
            return {"vertex": self.vertices[0]}
        rec = self.partition.to_record()
        rec["children"] = [child.to_record() for child in self.children]
        return rec

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass(frozen=True)
class DecompositionTree:
    root: DecompositionNode
    order: int
    k: int

    def node_count(self) -> int:
        return sum(1 for _ in self.root.iter_nodes())

    def leaves(self) -> list[int]:
        return [node.vertices[0] for node in self.root.iter_nodes() if node.is_leaf]

    def depth(self) -> int:
        def go(node):
            return 0 if node.is_leaf else 1 + max(go(c) for c in node.children)

        return go(self.root)

    def to_record(self) -> dict:
        return {"order": self.order, "k": self.k, "root": self.root.to_record()}

    def rebuild(self) -> ColoredCompleteGraph:
        """Recolor K_order from the tree alone: parts joined by their reduced colors."""
        colors = np.zeros(pair_count(self.order), dtype=np.int64)
        for node in self.root.iter_nodes():
            if node.is_leaf:
                continue
            P = node.partition
            for i, j in iter_pairs(P.p):
                c = P.reduced_color(i, j)
                for u in P.parts[i]:
                    for v in P.parts[j]:
                        colors[pair_rank(u, v, self.order)] = c
        return ColoredCompleteGraph(self.order, colors, self.k)


def decomposition_tree(g: ColoredCompleteGraph) -> DecompositionTree:
    tri = find_rainbow_triangle(g)
    if tri is not None:
        raise NotGallaiError(tri)

    def build(vertices: tuple[int, ...]) -> DecompositionNode:
        if len(vertices) == 1:
            return DecompositionNode(vertices)
        local = find_gallai_partition(g.induced(vertices))
        parts = tuple(tuple(vertices[i] for i in part) for part in local.parts)
        P = GallaiPartition(parts, local.reduced_colors)
        return DecompositionNode(vertices, P, tuple(build(part) for part in P.parts))

    return DecompositionTree(build(tuple(range(g.order))), g.order, g.k)
