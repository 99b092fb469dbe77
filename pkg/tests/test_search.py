import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gallai_ramsey.canon import apply_labeling, canonical_form
from gallai_ramsey.checks import find_mono_cycle, find_rainbow_triangle
from gallai_ramsey.graph import ColoredCompleteGraph
from gallai_ramsey.search import (
    SearchConfig,
    Status,
    default_workers,
    search_coloring,
    search_via_gallai_tree,
)

from oracles import brute_force_status
from strategies import colorings


def assert_bad(g, cfg):
    """A witness must have no monochromatic C_L and, if asked, no rainbow triangle."""
    assert g.order == cfg.order and g.k == cfg.colors
    if cfg.gallai_only:
        assert find_rainbow_triangle(g) is None
    if cfg.cycle_length <= g.order:
        for c in range(1, cfg.colors + 1):
            assert find_mono_cycle(g, c, cfg.cycle_length) is None


# --- configuration -------------------------------------------------------------


def test_config_validation():
    for bad in [dict(cycle_length=2), dict(colors=0), dict(time_budget=0), dict(prune_level="x")]:
        kw = dict(order=5, colors=2, cycle_length=3) | bad
        with pytest.raises(ValueError):
            SearchConfig(**kw)


def test_gallai_tree_needs_gallai_only():
    with pytest.raises(ValueError):
        search_via_gallai_tree(SearchConfig(5, 2, 5, gallai_only=False))


def test_default_workers_reads_environment(monkeypatch):
    monkeypatch.setenv("GALLAI_RAMSEY_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.delenv("GALLAI_RAMSEY_WORKERS")
    assert default_workers() == 1


# --- examples ------------------------------------------------------------------


@pytest.mark.parametrize(
    "cfg,expected",
    [
        (SearchConfig(9, 2, 5), Status.EXHAUSTED),
        (SearchConfig(8, 2, 5), Status.WITNESS),
        (SearchConfig(5, 1, 5), Status.EXHAUSTED),
        (SearchConfig(4, 1, 5), Status.WITNESS),
    ],
)
def test_search_examples(cfg, expected):
    out = search_coloring(cfg)
    assert out.status is expected
    if expected is Status.WITNESS:
        assert_bad(out.witness, cfg)
    else:
        assert out.witness is None


def test_gallai_tree_examples():
    cfg = SearchConfig(5, 2, 5, gallai_only=True)
    assert search_via_gallai_tree(cfg).status is search_coloring(cfg).status
    out = search_via_gallai_tree(SearchConfig(2, 1, 3, gallai_only=True))
    assert out.status is Status.WITNESS
    assert_bad(out.witness, out.config)


def test_timeout_is_reported_not_certified():
    out = search_coloring(SearchConfig(14, 3, 5, time_budget=0.05))
    assert out.status is Status.TIMEOUT
    assert out.witness is None
    assert "timeout" in out.claim.lower() or "not" in out.claim.lower()


def test_outcome_record_is_auditable():
    out = search_coloring(SearchConfig(8, 2, 5))
    rec = out.to_record()
    assert rec["status"] == "Witness"
    assert rec["config"]["order"] == 8 and rec["config"]["cycleLength"] == 5
    assert rec["pruneRules"] and rec["stats"]["nodes"] == out.stats.nodes
    assert ColoredCompleteGraph.from_text(rec["witness"]) == out.witness


# --- cross-checks on the small grid --------------------------------------------

GRID = [(n, k, L) for k in (1, 2) for n in range(1, 7) for L in (3, 4, 5)]


@pytest.mark.parametrize("order,k,length", GRID)
def test_prune_levels_agree(order, k, length):
    for gallai in (False, True):
        a = search_coloring(SearchConfig(order, k, length, gallai, prune_level="basic"))
        b = search_coloring(SearchConfig(order, k, length, gallai, prune_level="canonical"))
        assert a.status is b.status
        for out in (a, b):
            if out.witness is not None:
                assert_bad(out.witness, out.config)


@pytest.mark.parametrize("k,length,top", [(1, 3, 6), (1, 5, 7), (2, 3, 7), (2, 4, 7), (2, 5, 10),
                                          (2, 6, 9), (3, 3, 7), (3, 4, 7)])
@pytest.mark.parametrize("gallai", [False, True])
def test_monotone_in_order(k, length, top, gallai):
    statuses = [search_coloring(SearchConfig(n, k, length, gallai)).status for n in range(1, top + 1)]
    assert Status.TIMEOUT not in statuses
    flips = [i for i in range(1, len(statuses)) if statuses[i] is not statuses[i - 1]]
    assert len(flips) <= 1
    if flips:
        assert statuses[flips[0]] is Status.EXHAUSTED


@pytest.mark.parametrize("cfg", [SearchConfig(9, 2, 5), SearchConfig(8, 2, 5), SearchConfig(7, 2, 6),
                                 SearchConfig(6, 3, 4, gallai_only=True)])
def test_results_do_not_depend_on_worker_count(cfg):
    runs = []
    for workers in (1, 2, 3):
        c = SearchConfig(cfg.order, cfg.colors, cfg.cycle_length, cfg.gallai_only, workers=workers)
        runs.append(search_coloring(c))
    base = runs[0]
    for out in runs[1:]:
        assert out.status is base.status
        assert out.stats.nodes == base.stats.nodes
        assert out.witness == base.witness


def test_repeat_runs_are_identical():
    a = search_via_gallai_tree(SearchConfig(8, 2, 5, gallai_only=True))
    b = search_via_gallai_tree(SearchConfig(8, 2, 5, gallai_only=True))
    assert a.status is b.status and a.stats.nodes == b.stats.nodes and a.witness == b.witness


@pytest.mark.parametrize("order,k,length", [(6, 3, 4), (7, 3, 4), (9, 2, 5), (8, 2, 5), (6, 3, 3)])
def test_gallai_tree_matches_coloring_search_beyond_the_grid(order, k, length):
    cfg = SearchConfig(order, k, length, gallai_only=True)
    assert search_via_gallai_tree(cfg).status is search_coloring(cfg).status


def test_brute_force_oracle_self_check():
    # known small values: R(C3, C3) = 6, R(C4, C4) = 6
    assert brute_force_status(5, 2, 3) == "Witness"
    assert brute_force_status(6, 2, 3) == "Exhausted"
    assert brute_force_status(5, 2, 4) == "Witness"
    assert brute_force_status(6, 2, 4) == "Exhausted"


# --- canonical forms -----------------------------------------------------------


def isomorphic(a, b, k):
    if a.order != b.order:
        return False
    n = a.order
    for cperm in itertools.permutations(range(1, k + 1)):
        cmap = dict(zip(range(1, k + 1), cperm))
        for vperm in itertools.permutations(range(n)):
            if all(b.color(vperm[u], vperm[v]) == cmap[a.color(u, v)] for u, v in itertools.combinations(range(n), 2)):
                return True
    return False


@settings(max_examples=150, deadline=None)
@given(colorings(max_order=6, max_k=3), st.randoms())
def test_canonical_form_is_invariant(g, rnd):
    k = g.k
    vperm = list(range(g.order))
    rnd.shuffle(vperm)
    cperm = list(range(1, k + 1))
    rnd.shuffle(cperm)
    h = ColoredCompleteGraph.from_function(g.order, k, lambda u, v: cperm[g.color(u, v) - 1]).relabel(vperm)
    assert canonical_form(g.matrix.tolist(), k)[0] == canonical_form(h.matrix.tolist(), k)[0]


def test_canonical_form_separates_non_isomorphic():
    rng = random.Random(17)
    for _ in range(200):
        order, k = rng.randint(2, 5), rng.randint(1, 3)
        a = ColoredCompleteGraph(order, [rng.randint(1, k) for _ in range(order * (order - 1) // 2)], k)
        b = ColoredCompleteGraph(order, [rng.randint(1, k) for _ in range(order * (order - 1) // 2)], k)
        same = canonical_form(a.matrix.tolist(), k)[0] == canonical_form(b.matrix.tolist(), k)[0]
        assert same == isomorphic(a, b, k)


def test_canonical_labeling_reproduces_code():
    g = ColoredCompleteGraph(5, [1, 2, 2, 1, 3, 1, 2, 1, 1, 3], 3)
    code, labeling, perm = canonical_form(g.matrix.tolist(), 3)
    again = apply_labeling(g.matrix.tolist(), labeling, perm)
    assert canonical_form(again, 3)[0] == code
