"""Predicates over colored complete graphs: rainbow triangles, monochromatic
cycles, bipartiteness of color classes and color-class components."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import ColoredCompleteGraph, CycleCertificate, TriangleCertificate


def find_rainbow_triangle(g: ColoredCompleteGraph) -> TriangleCertificate | None:
    """First rainbow triangle in lexicographic (u, v, w) order, or None.

    None means ``g`` is a Gallai coloring.
    """
    n = g.order
    if n < 3 or g.k < 3:
        return None
    mat = g.matrix
    for u in range(n - 2):
        a = mat[u, u + 1:]
        sub = mat[u + 1:, u + 1:]
        hit = (a[:, None] != a[None, :]) & (a[:, None] != sub) & (a[None, :] != sub)
        hit = np.triu(hit, 1)
        if hit.any():
            v, w = np.argwhere(hit)[0]
            v, w = int(v) + u + 1, int(w) + u + 1
            return TriangleCertificate((u, v, w), (g.color(u, v), g.color(v, w), g.color(u, w)))
    return None


def is_gallai(g: ColoredCompleteGraph) -> bool:
    return find_rainbow_triangle(g) is None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _component_mask(masks, start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _two_core(masks, alive: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if bin(masks[v] & alive).count("1") < 2:
                alive &= ~(1 << v)
                changed = True
    return alive


def _within(masks, src: int, targets: int, allowed: int, steps: int) -> bool:
    """Can ``src`` reach ``targets`` in at most ``steps`` edges through ``allowed``?"""
    if targets >> src & 1:
        return True
    seen = 1 << src
    frontier = seen
    for _ in range(steps):
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        if nxt & targets:
            return True
        nxt &= allowed & ~seen
        if not nxt:
            return False
        seen |= nxt
        frontier = nxt
    return False


def find_cycle_in_masks(masks, length: int, alive: int | None = None) -> tuple[int, ...] | None:
    """Complete search for a simple cycle of exactly ``length`` vertices.

    The least vertex of the cycle is the anchor; paths grow through higher ids
    in increasing order, so the first cycle found is deterministic.
    """
    n = len(masks)
    if alive is None:
        alive = (1 << n) - 1
    alive = _two_core(masks, alive)
    if bin(alive).count("1") < length:
        return None
    for s in _bits(alive):
        above = alive & ~((1 << (s + 1)) - 1)
        allowed = above | (1 << s)
        comp = _component_mask(masks, s, allowed)
        if bin(comp).count("1") < length:
            continue
        close = masks[s] & comp
        if bin(close).count("1") < 2:
            continue
        found = _extend([s], 1 << s, masks, comp & ~(1 << s), close, length)
        if found is not None:
            return tuple(found)
        # s is exhausted; drop it and re-prune the rest
        alive = _two_core(masks, alive & ~(1 << s))
        if bin(alive).count("1") < length:
            return None
    return None


def _extend(path, used, masks, free, close, length):
    last = path[-1]
    if len(path) == length:
        if close >> last & 1 and path[1] < last:
            return list(path)
        return None
    remaining = length - len(path)
    cand = masks[last] & free
    if remaining == 1:
        cand &= close
    for v in _bits(cand):
        vb = 1 << v
        # the rest of the path must still be able to return next to the anchor
        if remaining > 1 and not _within(masks, v, close & free & ~vb, free & ~vb, remaining - 1):
            continue
        path.append(v)
        out = _extend(path, used | vb, masks, free & ~vb, close, length)
        if out is not None:
            return out
        path.pop()
    return None


def find_mono_cycle(g: ColoredCompleteGraph, color: int, length: int) -> CycleCertificate | None:
    """Monochromatic cycle of exactly ``length`` vertices in ``color``, or None.

    The search is complete: None proves that the color class has no such cycle.
    """
    if not 3 <= length <= g.order:
        raise ValueError(f"cycle length must lie in [3, {g.order}], got {length}")
    masks = g.class_masks(color)
    if length % 2 == 1 and color_class_odd_cycle_free(g, color).bipartite:
        return None
    found = find_cycle_in_masks(masks, length)
    if found is None:
        return None
    return CycleCertificate(color, found)


def find_any_mono_cycle(g: ColoredCompleteGraph, length: int) -> CycleCertificate | None:
    if length > g.order:
        return None
    for c in range(1, g.k + 1):
        cert = find_mono_cycle(g, c, length)
        if cert is not None:
            return cert
    return None


@dataclass(frozen=True)
class OddCycleVerdict:
    """Either a proper 2-coloring of the color class or an odd cycle in it.

    ``sides[v]`` is 0 or 1 when bipartite; ``witness`` is set otherwise.
    """

    bipartite: bool
    sides: tuple[int, ...] | None = None
    witness: CycleCertificate | None = None


def color_class_odd_cycle_free(g: ColoredCompleteGraph, color: int) -> OddCycleVerdict:
    masks = g.class_masks(color)
    n = g.order
    side = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    for root in range(n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in _bits(masks[u]):
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif side[w] == side[u]:
                    return OddCycleVerdict(False, witness=_odd_cycle(u, w, parent, depth, color))
    return OddCycleVerdict(True, sides=tuple(side))


def _odd_cycle(u, w, parent, depth, color):
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; right repeats it
    return CycleCertificate(color, tuple(left + right[-2::-1]))


class ColorComponents(NamedTuple):
    components: list[frozenset[int]]
    isolated: list[int]


def mono_components(g: ColoredCompleteGraph, color: int) -> ColorComponents:
    """Connected components of a color class, ordered by least vertex.

    Vertices with no edge of this color are reported in ``isolated``.
    """
    masks = g.class_masks(color)
    seen = 0
    comps, isolated = [], []
    full = (1 << g.order) - 1
    for v in range(g.order):
        if seen >> v & 1:
            continue
        if not masks[v]:
            isolated.append(v)
            seen |= 1 << v
            continue
        comp = _component_mask(masks, v, full)
        seen |= comp
        comps.append(frozenset(_bits(comp)))
    return ColorComponents(comps, isolated)


def verify_certificate(g: ColoredCompleteGraph, cert) -> bool:
    """Check a certificate against ``g`` without trusting its producer."""
    try:
        if isinstance(cert, TriangleCertificate):
            vs, cs = tuple(cert.vertices), tuple(cert.colors)
            if len(vs) != 3 or len(set(vs)) != 3 or len(cs) != 3 or len(set(cs)) != 3:
                return False
            a, b, c = vs
            return (g.color(a, b), g.color(b, c), g.color(a, c)) == cs
        if isinstance(cert, CycleCertificate):
            vs = tuple(cert.vertices)
            if len(vs) < 3 or len(set(vs)) != len(vs):
                return False
            return all(g.color(vs[i], vs[(i + 1) % len(vs)]) == cert.color for i in range(len(vs)))
    except (IndexError, ValueError):
        return False
    return False
