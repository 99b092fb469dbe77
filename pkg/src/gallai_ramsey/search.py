"""Exhaustive search for bad colorings of K_N.

A coloring is bad when it has no monochromatic C_L (and, for Gallai
searches, no rainbow triangle).  Both properties are hereditary, so every
bad coloring on N vertices extends a bad coloring on N-1 vertices by one
vertex.  All searches grow colorings that way: the new vertex's edges are
colored one at a time, and a color is rejected as soon as it closes a
monochromatic C_L through the new vertex or a rainbow triangle.

``Exhausted`` proves that no bad coloring exists at the configured order;
``Witness`` carries one; ``Timeout`` proves nothing.
"""

from __future__ import annotations

import itertools
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .canon import apply_labeling, canonical_form
from .checks import find_cycle_in_masks, find_mono_cycle, find_rainbow_triangle
from .graph import ColoredCompleteGraph
from .partition import is_prime

PRUNE_LEVELS = ("basic", "canonical")
PRUNE_RULE_VERSIONS = {
    "basic": "vertex-extension/1 + color-first-use/1",
    "canonical": "vertex-extension/1 + isomorph-rejection(vertex x color)/1",
    "gallai-tree": "degenerate-split/1 + prime-reduced-graph/1 + cross-edge-cycle/1",
}
WORKERS_ENV = "GALLAI_RAMSEY_WORKERS"


class Status(str, Enum):
    EXHAUSTED = "Exhausted"
    WITNESS = "Witness"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class SearchConfig:
    order: int
    colors: int
    cycle_length: int
    gallai_only: bool = False
    time_budget: float = 600.0
    prune_level: str = "canonical"
    workers: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.colors < 1:
            raise ValueError(f"colors must be >= 1, got {self.colors}")
        if self.cycle_length < 3:
            raise ValueError(f"cycle length must be >= 3, got {self.cycle_length}")
        if not self.time_budget > 0:
            raise ValueError("time budget must be positive")
        if self.prune_level not in PRUNE_LEVELS:
            raise ValueError(f"prune level must be one of {PRUNE_LEVELS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_record(self) -> dict:
        return {
            "order": self.order,
            "colors": self.colors,
            "cycleLength": self.cycle_length,
            "gallaiOnly": self.gallai_only,
            "timeBudget": self.time_budget,
            "pruneLevel": self.prune_level,
            "workers": self.workers,
        }


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    elapsed: float = 0.0
    level_sizes: list[int] = field(default_factory=list)

    def merge(self, nodes: int, prunes: dict) -> None:
        self.nodes += nodes
        self.prunes.update(prunes)

    def to_record(self) -> dict:
        return {
            "nodes": self.nodes,
            "prunes": dict(sorted(self.prunes.items())),
            "elapsedSeconds": round(self.elapsed, 3),
            "levelSizes": self.level_sizes,
        }


@dataclass
class SearchOutcome:
    status: Status
    config: SearchConfig
    method: str
    stats: SearchStats
    witness: ColoredCompleteGraph | None = None

    @property
    def claim(self) -> str:
        cfg = self.config
        name = "GR" if cfg.gallai_only else "R"
        target = f"{name}_{cfg.colors}(C_{cfg.cycle_length})"
        if self.status is Status.EXHAUSTED:
            return f"{target} <= {cfg.order}"
        if self.status is Status.WITNESS:
            return f"{target} > {cfg.order}"
        return "none (timeout)"

    def to_record(self) -> dict:
        rec = {
            "status": self.status.value,
            "claim": self.claim,
            "method": self.method,
            "config": self.config.to_record(),
            "pruneRules": PRUNE_RULE_VERSIONS[self.method],
            "stats": self.stats.to_record(),
        }
        if self.witness is not None:
            rec["witness"] = self.witness.to_text()
        return rec


class _Deadline(Exception):
    pass


# --- per-vertex extension ------------------------------------------------------


def _class_masks(mat, m, k):
    masks = [[0] * m for _ in range(k + 1)]
    for i in range(m):
        row = mat[i]
        for j in range(m):
            if i != j:
                masks[row[j]][i] |= 1 << j
    return masks


def _path_ends(masks, m, edges):
    """ends[i]: bitmask of j joined to i by a simple path with ``edges`` edges."""
    ends = [0] * m

    def walk(start, v, used, depth):
        if depth == edges:
            ends[start] |= 1 << v
            return
        nxt = masks[v] & ~used
        while nxt:
            low = nxt & -nxt
            w = low.bit_length() - 1
            walk(start, w, used | low, depth + 1)
            nxt ^= low

    for i in range(m):
        walk(i, i, 1 << i, 0)
    return ends


def _closing_paths(mat, m, k, length):
    """Per color, the vertex pairs that a new vertex would close into a C_length."""
    masks = _class_masks(mat, m, k)
    if length - 1 > m:
        return [[0] * m for _ in range(k + 1)]
    return [[0] * m] + [_path_ends(masks[c], m, length - 2) for c in range(1, k + 1)]


class _Extender:
    """Enumerates admissible color vectors for a new vertex joined to ``mat``."""

    def __init__(self, mat, k, length, gallai, stats_nodes, prunes, first_use_top=None):
        self.mat = mat
        self.m = len(mat)
        self.k = k
        self.gallai = gallai
        self.paths = _closing_paths(mat, self.m, k, length)
        self.nodes = stats_nodes
        self.prunes = prunes
        self.first_use_top = first_use_top  # highest color used so far, for color-first-use breaking

    def vectors(self):
        x = [0] * self.m
        cmask = [0] * (self.k + 1)
        yield from self._rec(0, x, cmask, self.first_use_top)

    def _rec(self, i, x, cmask, top):
        if i == self.m:
            yield tuple(x)
            return
        limit = self.k if top is None else min(self.k, top + 1)
        row = self.mat[i]
        for c in range(1, limit + 1):
            self.nodes[0] += 1
            if self.paths[c][i] & cmask[c]:
                self.prunes["cycle"] += 1
                continue
            if self.gallai and any(
                x[j] != c and row[j] != c and row[j] != x[j] for j in range(i)
            ):
                self.prunes["rainbow"] += 1
                continue
            x[i] = c
            cmask[c] |= 1 << i
            yield from self._rec(i + 1, x, cmask, None if top is None else max(top, c))
            cmask[c] &= ~(1 << i)
        if top is not None and limit < self.k:
            self.prunes["color-symmetry"] += self.k - limit


def _extend(mat, x):
    out = [list(row) + [x[i]] for i, row in enumerate(mat)]
    out.append(list(x) + [0])
    return out


def _to_graph(mat, k) -> ColoredCompleteGraph:
    return ColoredCompleteGraph.from_matrix(mat, k) if len(mat) > 1 else ColoredCompleteGraph(1, [], k)


def _is_bad(g: ColoredCompleteGraph, length: int, gallai: bool) -> bool:
    if gallai and find_rainbow_triangle(g) is not None:
        return False
    if length > g.order:
        return True
    return all(find_mono_cycle(g, c, length) is None for c in range(1, g.k + 1))


def _checked_witness(mat, cfg: SearchConfig) -> ColoredCompleteGraph:
    g = _to_graph(mat, cfg.colors)
    if not _is_bad(g, cfg.cycle_length, cfg.gallai_only):
        raise RuntimeError("search produced a witness that fails re-verification")
    return g


# --- canonical (isomorph-free) level search ----------------------------------


def _expand_rep(args):
    """Children of one representative: (nodes, prunes, codes->matrices | witness, timed_out)."""
    mat, k, length, gallai, final, deadline = args
    nodes = [0]
    prunes: Counter = Counter()
    ext = _Extender(mat, k, length, gallai, nodes, prunes)
    children = []
    for x in ext.vectors():
        if time.monotonic() > deadline:
            return nodes[0], prunes, None, True
        child = _extend(mat, x)
        if final:
            return nodes[0], prunes, [(None, child)], False
        code, labeling, perm = canonical_form(child, k)
        children.append((code, apply_labeling(child, labeling, perm)))
    return nodes[0], prunes, children, False


def _map_reps(jobs, workers):
    if workers <= 1 or len(jobs) < 2:
        yield from map(_expand_rep, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_expand_rep, jobs, chunksize=max(1, len(jobs) // (4 * workers)))


def iter_levels(order, k, length, gallai, deadline, stats, workers=1):
    """Yield ``(m, reps)``: canonical representatives of every bad coloring
    of K_m, for m = 1..order, stopping early when a level is empty.

    At m == order only the first representative's first child is produced.
    """
    level = [[[0]]]
    stats.level_sizes.append(1)
    yield 1, level
    for m in range(2, order + 1):
        final = m == order
        jobs = [(rep, k, length, gallai, final, deadline) for rep in level]
        found: dict[tuple, list] = {}
        for nodes, prunes, children, timed_out in _map_reps(jobs, workers if not final else 1):
            stats.merge(nodes, prunes)
            if timed_out:
                raise _Deadline
            if final and children:
                stats.level_sizes.append(1)
                yield m, [children[0][1]]
                return
            for code, child in children or ():
                if code in found:
                    stats.prunes["isomorph"] += 1
                else:
                    found[code] = child
        level = [found[code] for code in sorted(found)]
        stats.level_sizes.append(len(level))
        yield m, level
        if not level:
            return


def _search_canonical(cfg: SearchConfig, deadline: float, stats: SearchStats):
    last = None
    for m, reps in iter_levels(
        cfg.order, cfg.colors, cfg.cycle_length, cfg.gallai_only, deadline, stats, cfg.workers
    ):
        last = (m, reps)
        if not reps:
            return Status.EXHAUSTED, None
    m, reps = last
    return Status.WITNESS, reps[0]


# --- basic depth-first search ---------------------------------------------------


def _search_basic(cfg: SearchConfig, deadline: float, stats: SearchStats):
    nodes = [0]
    prunes: Counter = Counter()
    checks = [0]

    def dfs(mat, top):
        if len(mat) == cfg.order:
            return mat
        ext = _Extender(mat, cfg.colors, cfg.cycle_length, cfg.gallai_only, nodes, prunes, top)
        for x in ext.vectors():
            checks[0] += 1
            if checks[0] % 256 == 0 and time.monotonic() > deadline:
                raise _Deadline
            found = dfs(_extend(mat, x), max((top,) + x))
            if found is not None:
                return found
        return None

    try:
        found = dfs([[0]], 0)
    finally:
        stats.merge(nodes[0], prunes)
    if found is None:
        return Status.EXHAUSTED, None
    return Status.WITNESS, found


def search_coloring(cfg: SearchConfig) -> SearchOutcome:
    """Decide whether a bad k-coloring of K_order exists.

    ``canonical`` grows one representative per isomorphism class (vertex
    relabeling and color renaming) level by level; the witness is the first
    valid extension of the least representative, so it does not depend on
    the worker count.  ``basic`` is a plain depth-first search in which
    colors must appear in first-use order.
    """
    stats = SearchStats()
    start = time.monotonic()
    deadline = start + cfg.time_budget
    try:
        if cfg.prune_level == "canonical":
            status, mat = _search_canonical(cfg, deadline, stats)
        else:
            status, mat = _search_basic(cfg, deadline, stats)
    except _Deadline:
        status, mat = Status.TIMEOUT, None
    stats.elapsed = time.monotonic() - start
    witness = _checked_witness(mat, cfg) if status is Status.WITNESS else None
    return SearchOutcome(status, cfg, cfg.prune_level, stats, witness)


# --- Gallai-tree enumeration ---------------------------------------------------


def _compositions(total, parts):
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


class _GallaiTree:
    """Every Gallai coloring of K_m either splits into two sides joined in
    one color, or has a prime 2-colored reduced graph whose vertices are
    blown up into Gallai-colored parts (all parts singletons meaning the
    coloring itself uses two colors).  Bad colorings of K_m are assembled
    from bad colorings of smaller orders in exactly those two shapes."""

    def __init__(self, cfg: SearchConfig, deadline: float, stats: SearchStats):
        self.k = cfg.colors
        self.length = cfg.cycle_length
        self.deadline = deadline
        self.stats = stats
        self.bad: dict[int, list] = {1: [[[0]]]}
        self.prime_reduced: dict[int, list] = {}
        self._two = None
        self._two_stats = SearchStats()
        self._two_levels: dict[int, list] = {}

    def _tick(self):
        self.stats.nodes += 1
        if self.stats.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise _Deadline

    def two_colored(self, m):
        """Bad colorings of K_m in colors {1, 2}, one per vertex/color class."""
        if self._two is None:
            self._two = iter_levels(10**9, 2, self.length, False, self.deadline, self._two_stats)
        while m not in self._two_levels:
            try:
                lev, reps = next(self._two)
            except StopIteration:
                return []
            self._two_levels[lev] = reps
            if not reps:
                for rest in range(lev + 1, m + 1):
                    self._two_levels[rest] = []
        return self._two_levels[m]

    def _free_in(self, mat, colors):
        m = len(mat)
        if self.length > m:
            return True
        masks = _class_masks(mat, m, self.k)
        return all(find_cycle_in_masks(masks[c], self.length) is None for c in set(colors))

    def candidates(self, m):
        k, bad = self.k, self.bad
        # one color between two sides
        for a in range(1, m // 2 + 1):
            for c in range(1, k + 1):
                for left in bad[a]:
                    for right in bad[m - a]:
                        self._tick()
                        mat = _join([left, right], [[0, c], [c, 0]])
                        if self._free_in(mat, [c]):
                            yield mat
                        else:
                            self.stats.prunes["cycle"] += 1
        # prime reduced graph on 4 <= p < m vertices
        for p in range(4, m):
            for reduced in self._prime_reduced(p):
                cols = sorted({reduced[i][j] for i in range(p) for j in range(p) if i != j})
                for sizes in _compositions(m, p):
                    if max(sizes) == 1:
                        continue
                    self._tick()
                    skeleton = _join([_blank(s) for s in sizes], reduced)
                    if not self._free_in(skeleton, cols):
                        self.stats.prunes["reduced-forces-cycle"] += 1
                        continue
                    for inner in itertools.product(*(bad[s] for s in sizes)):
                        self._tick()
                        mat = _join(list(inner), reduced)
                        if self._free_in(mat, cols):
                            yield mat
                        else:
                            self.stats.prunes["cycle"] += 1
        # two colors on all of K_m
        if k >= 2:
            for rep in self.two_colored(m):
                for c1, c2 in itertools.permutations(range(1, k + 1), 2):
                    self._tick()
                    yield [[0 if i == j else (c1 if v == 1 else c2) for j, v in enumerate(row)]
                           for i, row in enumerate(rep)]

    def _prime_reduced(self, p):
        if p not in self.prime_reduced:
            out = []
            for mat in self.bad[p]:
                cols = {mat[i][j] for i in range(p) for j in range(p) if i != j}
                if len(cols) == 2 and is_prime(_to_graph(mat, self.k)):
                    out.append(mat)
            self.prime_reduced[p] = out
        return self.prime_reduced[p]

    def level(self, m):
        """All bad Gallai colorings of K_m up to vertex relabeling."""
        if m not in self.bad:
            if not self.level(m - 1):
                self.bad[m] = []
                return self.bad[m]
            found = {}
            for mat in self.candidates(m):
                code, labeling, _ = canonical_form(mat, self.k, color_symmetric=False)
                if code in found:
                    self.stats.prunes["isomorph"] += 1
                else:
                    found[code] = apply_labeling(mat, labeling)
            self.bad[m] = [found[c] for c in sorted(found)]
            self.stats.level_sizes.append(len(self.bad[m]))
        return self.bad[m]

    def first(self, m):
        for mat in self.candidates(m):
            return mat
        return None


def _blank(size):
    return [[0] * size for _ in range(size)]


def _join(parts, reduced):
    """Place ``parts`` on consecutive ids and color part pairs by ``reduced``."""
    owner = [i for i, part in enumerate(parts) for _ in part]
    offset = list(itertools.accumulate([0] + [len(part) for part in parts]))
    n = len(owner)
    mat = [[0] * n for _ in range(n)]
    for u in range(n):
        pu = owner[u]
        for v in range(n):
            if u == v:
                continue
            pv = owner[v]
            if pu == pv:
                mat[u][v] = parts[pu][u - offset[pu]][v - offset[pu]]
            else:
                mat[u][v] = reduced[pu][pv]
    return mat


def search_via_gallai_tree(cfg: SearchConfig) -> SearchOutcome:
    """Same contract as :func:`search_coloring` restricted to Gallai colorings,
    enumerating candidates through their Gallai partitions."""
    if not cfg.gallai_only:
        raise ValueError("search_via_gallai_tree needs gallai_only=True")
    stats = SearchStats()
    start = time.monotonic()
    deadline = start + cfg.time_budget
    tree = _GallaiTree(cfg, deadline, stats)
    try:
        stats.level_sizes.append(1)
        if cfg.order == 1:
            status, mat = Status.WITNESS, [[0]]
        else:
            tree.level(cfg.order - 1)
            if not tree.bad[cfg.order - 1]:
                status, mat = Status.EXHAUSTED, None
            else:
                mat = tree.first(cfg.order)
                status = Status.EXHAUSTED if mat is None else Status.WITNESS
    except _Deadline:
        status, mat = Status.TIMEOUT, None
    stats.merge(tree._two_stats.nodes, tree._two_stats.prunes)
    stats.elapsed = time.monotonic() - start
    witness = _checked_witness(mat, cfg) if status is Status.WITNESS else None
    return SearchOutcome(status, cfg, "gallai-tree", stats, witness)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1
