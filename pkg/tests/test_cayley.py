import math
import random

import numpy as np
import pytest

from cayleydiam.bounds import f_T
from cayleydiam.cayley import (
    EdgeKind,
    admissible_edges,
    ak_sort,
    bfs_metrics,
    bfs_table,
    bidirectional_distance,
    cache_path,
    distance,
    find_admissible_edge,
    load_table,
    parse_word,
    replay_word,
    save_table,
)
from cayleydiam.errors import InfeasibleScale, SizeMismatch
from cayleydiam.perm import (
    Permutation,
    all_permutations,
    apply_transposition,
    compose,
    from_cycles,
    identity,
    inverse,
    inversions,
    is_identity,
    rank,
)
from cayleydiam.tree import build_tree, enumerate_trees, named_tree, path_tree, star_tree

SAMPLE_WORD = "(1,2),(1,4),(1,2),(2,3),(1,2),(1,6),(6,7),(1,2),(2,3),(4,5),(1,4),(1,6),(6,7),(1,4),(4,5)"


@pytest.mark.parametrize("n", range(2, 8))
def test_bfs_table_matches_oracle(n, oracle_distances):
    for t in enumerate_trees(n):
        table = bfs_table(t)
        ref = oracle_distances(t)
        assert len(ref) == math.factorial(n)
        for p in all_permutations(n):
            assert table[rank(p)] == ref[p.mapping]


def test_bfs_metrics_families():
    for n in range(2, 9):
        assert bfs_metrics(path_tree(n)).diameter == n * (n - 1) // 2
        assert bfs_metrics(star_tree(n)).diameter == (3 * (n - 1)) // 2
    assert bfs_metrics(named_tree("theorem6-5v")).diameter == 7
    assert bfs_metrics(named_tree("theorem6-7v")).diameter == 14


def test_metrics_consistency():
    t = named_tree("t1")
    m = bfs_metrics(t)
    assert sum(m.eccentricity_profile.values()) == math.factorial(8)
    assert max(m.eccentricity_profile) == m.diameter
    assert distance(t, m.peripheral_witness) == m.diameter
    assert m.eccentricity_profile[1] == len(t.edges)


def test_distance_examples():
    t = named_tree("theorem6-5v")
    assert distance(t, identity(5)) == 0
    for a, b in t.edges:
        assert distance(t, from_cycles([(a, b)], 5)) == 1
    # value from the tuple-BFS oracle in conftest; f_T is 8 here
    assert distance(t, from_cycles([(2, 4), (3, 5)], 5)) == 6
    # (i,k)(j,l) on the 3-edge path 3-2-1-4: f_T = 6 but four swaps suffice
    p = from_cycles([(3, 1), (2, 4)], 5)
    assert f_T(t, p) == 6
    assert distance(t, p) == 4


def test_distance_agrees_with_oracle_on_counterexample(oracle_distances):
    t = named_tree("theorem6-5v")
    p = from_cycles([(2, 4), (3, 5)], 5)
    assert distance(t, p) == oracle_distances(t)[p.mapping]


def test_distance_symmetric_under_inverse():
    rnd = random.Random(7)
    for t in enumerate_trees(7):
        table = bfs_table(t)
        for _ in range(50):
            p = Permutation(tuple(rnd.sample(range(1, 8), 7)))
            assert table[rank(p)] == table[rank(inverse(p))]


def test_vertex_transitivity_spot_check(oracle_distances):
    """BFS from a non-identity source reaches the same eccentricity."""
    rnd = random.Random(3)
    for n in (5, 6, 7):
        for t in enumerate_trees(n):
            src = Permutation(tuple(rnd.sample(range(1, n + 1), n)))
            ref = oracle_distances(t)
            # dist(src, q) = dist(I, src^-1 q)
            ecc = max(ref[compose(inverse(src), q).mapping] for q in all_permutations(n))
            assert ecc == bfs_metrics(t).diameter


def test_bidirectional_agrees_with_table():
    rnd = random.Random(11)
    for t in enumerate_trees(7)[:5]:
        table = bfs_table(t)
        for _ in range(30):
            p = Permutation(tuple(rnd.sample(range(1, 8), 7)))
            assert bidirectional_distance(t, p) == table[rank(p)]
    assert bidirectional_distance(path_tree(4), identity(4)) == 0


def test_size_checks():
    with pytest.raises(SizeMismatch):
        distance(path_tree(4), identity(5))
    with pytest.raises(InfeasibleScale):
        bfs_table(path_tree(11))


def test_table_file_round_trip(tmp_path):
    t = named_tree("theorem6-7v")
    table = bfs_table(t)
    path = cache_path(tmp_path, t)
    save_table(path, t, table)
    n, edges, loaded = load_table(path, t)
    assert n == 7 and edges == t.edges
    assert np.array_equal(loaded, table)
    raw = path.read_bytes()
    assert raw[:4] == b"CAYD" and raw[4] == 1 and raw[5] == 7 and raw[6] == 6
    assert len(raw) == 7 + 2 * 6 + math.factorial(7)
    with pytest.raises(ValueError):
        load_table(path, path_tree(7))


def test_cache_dir_is_used(tmp_path):
    t = build_tree(6, [(1, 2), (1, 3), (3, 4), (4, 5), (4, 6)])
    first = bfs_table(t, cache_dir=tmp_path)
    files = list(tmp_path.glob("*.bfs"))
    assert len(files) == 1
    assert np.array_equal(load_table(files[0], t)[2], first)


def test_find_admissible_edge_examples():
    t = path_tree(3)
    assert find_admissible_edge(t, Permutation((2, 1, 3))) == ((1, 2), EdgeKind.A)
    assert find_admissible_edge(t, Permutation((1, 3, 2))) == ((2, 3), EdgeKind.A)
    assert find_admissible_edge(t, Permutation((3, 1, 2))) == ((1, 2), EdgeKind.A)


def test_type_b_edge():
    # marker 1 is home at vertex 1; marker 3 at vertex 2 must pass through vertex... 3 only
    t = path_tree(3)
    opts = admissible_edges(t, Permutation((1, 3, 2)))
    assert opts == [((2, 3), EdgeKind.A)]
    star = star_tree(4)
    # center holds its own marker; leaf 2 holds 3 and must route through the center
    opts = admissible_edges(star, Permutation((1, 3, 4, 2)))
    assert all(kind is EdgeKind.B for _, kind in opts)
    assert [e for e, _ in opts] == [(1, 2), (1, 3), (1, 4)]


@pytest.mark.parametrize("n", range(2, 8))
def test_admissible_edge_always_exists(n):
    for t in enumerate_trees(n):
        for p in all_permutations(n):
            if not is_identity(p):
                for (i, j), _ in admissible_edges(t, p)[:1]:
                    assert f_T(t, apply_transposition(p, i, j)) < f_T(t, p)
                assert admissible_edges(t, p)


def test_ak_sort_identity():
    trace = ak_sort(path_tree(5), identity(5))
    assert trace.word_length == 0 and trace.edges_applied == ()


@pytest.mark.parametrize("n", range(2, 7))
def test_ak_sort_paths_and_stars(n):
    path, star = path_tree(n), star_tree(n)
    for p in all_permutations(n):
        tr = ak_sort(path, p)
        assert tr.word_length == inversions(p)
        tr = ak_sort(star, p)
        assert tr.word_length == f_T(star, p)


@pytest.mark.parametrize("n", range(3, 7))
def test_ak_trace_invariants(n):
    for t in enumerate_trees(n):
        table = bfs_table(t)
        for p in all_permutations(n):
            tr = ak_sort(t, p)
            cur = p
            for i, j in tr.edges_applied:
                cur = apply_transposition(cur, i, j)
            assert is_identity(cur)
            fs = (f_T(t, p),) + tr.f_values
            assert all(a > b for a, b in zip(fs, fs[1:]))
            assert table[rank(p)] <= tr.word_length <= f_T(t, p)


def test_ak_custom_policy():
    t = path_tree(4)
    p = Permutation((4, 3, 2, 1))
    last = ak_sort(t, p, policy=lambda opts: opts[-1])
    assert last.word_length == inversions(p)
    assert last.edges_applied != ak_sort(t, p).edges_applied


def test_parse_word():
    assert parse_word("(1,2),(2,3)") == [(1, 2), (2, 3)]
    assert parse_word("1-2, 2-3") == [(1, 2), (2, 3)]
    assert parse_word("") == []
    assert len(parse_word(SAMPLE_WORD)) == 15


def test_replay_sample_word_sorts_corrected_permutation():
    t = named_tree("theorem6-7v")
    p = from_cycles([(2, 4), (3, 6), (5, 7)], 7)
    rep = replay_word(t, p, parse_word(SAMPLE_WORD))
    assert rep.valid and rep.sorts and rep.word_length == 15
    assert all(s.kind is not None for s in rep.steps)
    assert distance(t, p) < 15


def test_replay_reports_failures():
    t = path_tree(3)
    assert replay_word(t, identity(3), []).valid
    rep = replay_word(t, identity(3), [(1, 2), (1, 2)])
    assert not rep.valid and rep.failed_at == 1
    rep = replay_word(t, Permutation((2, 1, 3)), [(1, 3)])
    assert not rep.valid and "not an edge" in rep.reason
    rep = replay_word(t, Permutation((3, 1, 2)), [(1, 2)])
    assert rep.steps and not rep.sorts and rep.failed_at is None
