"""Randomized property harnesses for the cycle lemmas, plus the random
Gallai-coloring generator they share.

Every harness takes a seed; the same seed gives the same report.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .checks import find_mono_cycle, find_rainbow_triangle, verify_certificate
from .constructions import (
    MultipartiteCycle,
    multipartite_cycle,
    validate_multipartite_cycle,
)
from .graph import ColoredCompleteGraph


def _random_parts(rng: random.Random, vertices: list[int], q: int) -> list[list[int]]:
    shuffled = vertices[:]
    rng.shuffle(shuffled)
    cuts = sorted(rng.sample(range(1, len(shuffled)), q - 1))
    bounds = [0] + cuts + [len(shuffled)]
    return [sorted(shuffled[a:b]) for a, b in zip(bounds, bounds[1:])]


def _fill_gallai(mat, vertices, k, rng, base_size):
    m = len(vertices)
    if m < 2:
        return
    if m <= base_size and rng.random() < 0.5:
        a, b = rng.sample(range(1, k + 1), 2) if k >= 2 else (1, 1)
        mono = rng.random() < 0.3
        for i in range(m):
            for j in range(i + 1, m):
                c = a if mono or rng.random() < 0.5 else b
                mat[vertices[i], vertices[j]] = mat[vertices[j], vertices[i]] = c
        return
    q = rng.randint(2, min(5, m))
    parts = _random_parts(rng, vertices, q)
    _fill_reduced(mat, parts, k, rng)
    for part in parts:
        _fill_gallai(mat, part, k, rng, base_size)


def _fill_reduced(mat, parts, k, rng, colors=None):
    """Random 2-colored reduced graph between ``parts``."""
    if colors is None:
        colors = rng.sample(range(1, k + 1), 2) if k >= 2 else [1, 1]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            c = rng.choice(colors)
            mat[np.ix_(parts[i], parts[j])] = c
            mat[np.ix_(parts[j], parts[i])] = c


def random_gallai_coloring(order: int, k: int, rng: random.Random, base_size: int = 6) -> ColoredCompleteGraph:
    """A random Gallai k-coloring of K_order.

    Recursively splits the vertex set into 2-5 parts joined by a random
    2-colored reduced graph, bottoming out in random 2-colored (or
    monochromatic) blocks.  Not uniform over Gallai colorings.
    """
    mat = np.zeros((order, order), dtype=np.int64)
    _fill_gallai(mat, list(range(order)), k, rng, base_size)
    return ColoredCompleteGraph.from_matrix(mat, k)


@dataclass
class HarnessReport:
    name: str
    params: dict
    trials: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.passed == self.trials

    def to_record(self) -> dict:
        return {
            "harness": self.name,
            "params": self.params,
            "trials": self.trials,
            "passed": self.passed,
            "ok": self.ok,
            "failures": self.failures,
        }


def _mono_cycle_any_color(g: ColoredCompleteGraph, length: int, colors=None):
    if colors is None:
        counts = np.bincount(g.colors, minlength=g.k + 1)
        colors = sorted(range(1, g.k + 1), key=lambda c: (-counts[c], c))
    for c in colors:
        cert = find_mono_cycle(g, c, length)
        if cert is not None:
            return cert
    return None


def lemma12_harness(n: int, t: int, trials: int, seed: int = 0, k: int = 3, max_extra: int = 2) -> HarnessReport:
    """Gallai colorings with a Gallai partition into at least 4*ceil(n/t)+1
    parts, each of order at least t, must contain a monochromatic C_{2n+1}.

    Each trial draws a random 2-colored reduced graph on that many parts,
    part sizes in [t, t + max_extra] and random Gallai colorings inside the
    parts, then searches for the cycle.
    """
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = random.Random(seed)
    q_min = 4 * math.ceil(n / t) + 1
    length = 2 * n + 1
    report = HarnessReport("lemma12", {"n": n, "t": t, "k": k, "seed": seed, "min_parts": q_min})
    for trial in range(trials):
        q = q_min + rng.randint(0, 1)
        sizes = [rng.randint(t, t + max_extra) for _ in range(q)]
        order = sum(sizes)
        vertices = list(range(order))
        bounds = np.cumsum([0] + sizes)
        parts = [vertices[a:b] for a, b in zip(bounds, bounds[1:])]
        mat = np.zeros((order, order), dtype=np.int64)
        reduced_colors = rng.sample(range(1, k + 1), 2) if k >= 2 else [1, 1]
        _fill_reduced(mat, parts, k, rng, reduced_colors)
        for part in parts:
            _fill_gallai(mat, part, k, rng, base_size=6)
        g = ColoredCompleteGraph.from_matrix(mat, k)
        report.trials += 1
        problem = _trial_problem(g, length, reduced_colors)
        if problem is None:
            report.passed += 1
        else:
            report.failures.append({"trial": trial, "problem": problem, "graph": g.to_text()})
    return report


def _trial_problem(g, length, preferred=None):
    if find_rainbow_triangle(g) is not None:
        return "generator produced a rainbow triangle"
    colors = None
    if preferred is not None:
        rest = [c for c in range(1, g.k + 1) if c not in preferred]
        colors = list(dict.fromkeys(preferred)) + rest
    cert = _mono_cycle_any_color(g, length, colors)
    if cert is None:
        return f"no monochromatic C_{length}"
    if not verify_certificate(g, cert) or len(cert) != length:
        return f"certificate {cert} failed re-verification"
    return None


def lemma15_harness(
    n: int,
    trials: int,
    seed: int = 0,
    k: int = 3,
    y_size: int | None = None,
    z_size: int | None = None,
) -> HarnessReport:
    """Two contrapositive checks around a pair Y, Z with Y mc-complete to Z in
    color b and |Y|, |Z| >= n:

    * an extra vertex b-complete to Y and Z closes a b-colored C_{2n+1};
    * with |Z| >= n+1, one b-edge inside Z closes a b-colored C_{2n+1}.

    ``y_size``/``z_size`` fix the set sizes; otherwise they are drawn from
    [n, n+2] (and Z gets at least n+1 vertices in the second check).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if k < 2:
        raise ValueError("k must be >= 2 so the rest of the coloring can differ from b")
    for name, size in (("|Y|", y_size), ("|Z|", z_size)):
        if size is not None and size < n:
            raise ValueError(f"{name} = {size} < n = {n}; the lemma needs at least n vertices")
    rng = random.Random(seed)
    length = 2 * n + 1
    report = HarnessReport("lemma15", {"n": n, "k": k, "seed": seed, "y": y_size, "z": z_size})
    for trial in range(trials):
        for variant in ("apex", "inner-edge"):
            ys = y_size if y_size is not None else rng.randint(n, n + 2)
            zs = z_size if z_size is not None else rng.randint(n, n + 2)
            if variant == "inner-edge":
                if z_size is not None and zs < n + 1:
                    continue
                zs = max(zs, n + 1)
            g, b = _lemma15_coloring(rng, n, k, ys, zs, variant)
            report.trials += 1
            problem = _trial_problem(g, length, [b])
            if problem is None:
                report.passed += 1
            else:
                report.failures.append(
                    {"trial": trial, "variant": variant, "problem": problem, "graph": g.to_text()}
                )
    return report


def _lemma15_coloring(rng, n, k, ys, zs, variant):
    b, a = rng.sample(range(1, k + 1), 2)
    extra = rng.randint(0, n)
    apex = 1 if variant == "apex" else 0
    order = apex + ys + zs + extra
    ids = list(range(order))
    v_part = ids[:apex]
    Y = ids[apex:apex + ys]
    Z = ids[apex + ys:apex + ys + zs]
    rest = ids[apex + ys + zs:]
    mat = np.zeros((order, order), dtype=np.int64)
    rest_parts = _random_parts(rng, rest, rng.randint(1, len(rest))) if rest else []
    parts = [p for p in ([v_part] if v_part else []) + [Y, Z] + rest_parts]
    _fill_reduced(mat, parts, k, rng, [a, b])
    # force the hypotheses: Y b-complete to Z, apex b-complete to Y and Z
    mat[np.ix_(Y, Z)] = b
    mat[np.ix_(Z, Y)] = b
    if v_part:
        mat[np.ix_(v_part, Y + Z)] = b
        mat[np.ix_(Y + Z, v_part)] = b
    _fill_gallai(mat, Y, k, rng, base_size=6)
    if variant == "inner-edge":
        cut = rng.randint(1, zs - 1)
        z1, z2 = Z[:cut], Z[cut:]
        mat[np.ix_(z1, z2)] = b
        mat[np.ix_(z2, z1)] = b
        _fill_gallai(mat, z1, k, rng, base_size=6)
        _fill_gallai(mat, z2, k, rng, base_size=6)
    else:
        _fill_gallai(mat, Z, k, rng, base_size=6)
    for part in rest_parts:
        _fill_gallai(mat, part, k, rng, base_size=6)
    return ColoredCompleteGraph.from_matrix(mat, k), b


def random_part_sizes(rng: random.Random, max_n: int = 10, max_parts: int = 8) -> tuple[tuple[int, ...], int]:
    """A random (sizes, n) meeting the multipartite-cycle preconditions."""
    while True:
        n = rng.randint(1, max_n)
        parts = rng.randint(3, max_parts)
        sizes = tuple(rng.randint(1, n) for _ in range(parts))
        if sum(sizes) >= 2 * n + 1:
            return sizes, n


def lemma13_harness(trials: int, seed: int = 0, max_n: int = 10, max_parts: int = 8) -> HarnessReport:
    """Random part-size vectors; every multipartite cycle must validate."""
    rng = random.Random(seed)
    report = HarnessReport("lemma13", {"seed": seed, "max_n": max_n, "max_parts": max_parts})
    for trial in range(trials):
        sizes, n = random_part_sizes(rng, max_n, max_parts)
        cyc: MultipartiteCycle = multipartite_cycle(sizes, n)
        problems = validate_multipartite_cycle(cyc)
        report.trials += 1
        if problems:
            report.failures.append({"trial": trial, "sizes": list(sizes), "n": n, "problems": problems})
        else:
            report.passed += 1
    return report
