"""Canonical forms of small edge-colored complete graphs.

Individualization-refinement over ordered vertex partitions, with orbit
pruning from automorphisms discovered at equal leaves.  A canonical code is
the upper-triangular color sequence under the best labeling; two colorings
share a code iff they are isomorphic (vertex relabeling, plus color
renaming when ``color_symmetric``).
"""

from __future__ import annotations

import itertools
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _refine(cells: list[list[int]], mat: Matrix, n: int) -> list[list[int]]:
    while True:
        cidx = [0] * n
        for i, cell in enumerate(cells):
            for v in cell:
                cidx[v] = i
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                row = mat[v]
                sig = tuple(sorted((cidx[w], row[w]) for w in range(n) if w != v))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(groups[sig])
        if len(out) == len(cells):
            return out
        cells = out


def _orbit_root(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class _Canonizer:
    def __init__(self, mat: Matrix):
        self.mat = mat
        self.n = len(mat)
        self.first: list[int] | None = None
        self.first_code: tuple | None = None
        self.best: list[int] | None = None
        self.best_code: tuple | None = None
        self.generators: list[list[int]] = []
        self.leaves = 0

    def code_of(self, order):
        mat = self.mat
        return tuple(mat[order[i]][order[j]] for i in range(self.n) for j in range(i + 1, self.n))

    def run(self):
        self._search(_refine([list(range(self.n))], self.mat, self.n), [])
        return self.best_code, self.best

    def _leaf(self, cells):
        self.leaves += 1
        order = [cell[0] for cell in cells]
        code = self.code_of(order)
        if self.first is None:
            self.first, self.first_code = order, code
            self.best, self.best_code = order, code
            return
        for ref, ref_code in ((self.first, self.first_code), (self.best, self.best_code)):
            if code == ref_code:
                gen = [0] * self.n
                for a, b in zip(ref, order):
                    gen[a] = b
                self.generators.append(gen)
                return
        if code < self.best_code:
            self.best, self.best_code = order, code

    def _orbits(self, prefix):
        parent = list(range(self.n))
        for gen in self.generators:
            if all(gen[x] == x for x in prefix):
                for x, y in enumerate(gen):
                    rx, ry = _orbit_root(parent, x), _orbit_root(parent, y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return parent

    def _search(self, cells, prefix):
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            self._leaf(cells)
            return
        cell = cells[target]
        done: list[int] = []
        seen_gens = -1
        parent = None
        for v in sorted(cell):
            if done:
                if seen_gens != len(self.generators):
                    parent = self._orbits(prefix)
                    seen_gens = len(self.generators)
                root = _orbit_root(parent, v)
                if any(_orbit_root(parent, u) == root for u in done):
                    continue
            rest = [w for w in cell if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            self._search(_refine(split, self.mat, self.n), prefix + [v])
            done.append(v)


def vertex_canonical(mat: Matrix) -> tuple[tuple, list[int]]:
    """Canonical code under vertex relabeling and the labeling that achieves it.

    ``labeling[i]`` is the original vertex placed at position i.
    """
    if len(mat) <= 1:
        return (), list(range(len(mat)))
    return _Canonizer(mat).run()


def canonical_form(mat: Matrix, k: int, color_symmetric: bool = True) -> tuple[tuple, list[int], tuple[int, ...]]:
    """Canonical code, labeling and color renaming of a colored K_n.

    The color renaming ``perm`` maps color c to ``perm[c - 1]``.
    """
    perms = itertools.permutations(range(1, k + 1)) if color_symmetric else [tuple(range(1, k + 1))]
    best = None
    n = len(mat)
    for perm in perms:
        renamed = [[0 if i == j else perm[mat[i][j] - 1] for j in range(n)] for i in range(n)]
        code, labeling = vertex_canonical(renamed)
        if best is None or code < best[0]:
            best = (code, labeling, tuple(perm))
    return best


def apply_labeling(mat: Matrix, labeling: Sequence[int], perm: Sequence[int] | None = None) -> list[list[int]]:
    n = len(mat)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                c = mat[labeling[i]][labeling[j]]
                out[i][j] = perm[c - 1] if perm is not None else c
    return out
