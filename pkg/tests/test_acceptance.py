"""Acceptance gate. Every check is exact integer equality.

Each test records one PASS/FAIL line; conftest prints them at the end of the
run. ``python3 tests/test_acceptance.py`` runs the same checks standalone.
"""
from __future__ import annotations

import json
import math

import numpy as np
import pytest

from cayleydiam import _kernels as K
from cayleydiam.bounds import (
    algorithm_a,
    construction_permutation,
    enumerate_beta_set,
    f_table,
    f_T,
    f_upper_bound,
    star_bound,
)
from cayleydiam.cayley import bfs_metrics, bfs_table, parse_word, replay_word
from cayleydiam.cli import main
from cayleydiam.experiments import caterpillar_report
from cayleydiam.perm import all_permutations, from_cycles, parse_permutation, rank
from cayleydiam.tree import build_tree, caterpillar_tree, enumerate_trees, named_tree, path_tree, star_tree

RESULTS: list[str] = []

SAMPLE_WORD = "(1,2),(1,4),(1,2),(2,3),(1,2),(1,6),(6,7),(1,2),(2,3),(4,5),(1,4),(1,6),(6,7),(1,4),(4,5)"


def record(num: int, title: str, check) -> None:
    try:
        check()
    except AssertionError as exc:
        RESULTS.append(f"FAIL criterion {num}: {title} ({str(exc).splitlines()[0]})")
        raise
    RESULTS.append(f"PASS criterion {num}: {title}")


def inversions_rows(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    out = np.zeros(len(perms), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            out += perms[:, i] > perms[:, j]
    return out


def three_path(t):
    """Some path i-j-k-l with three edges, as (i, j, k, l)."""
    for j, k in t.edges:
        for a, b in ((j, k), (k, j)):
            i = next((x for x in t.neighbors(a) if x != b), None)
            l = next((x for x in t.neighbors(b) if x != a), None)
            if i is not None and l is not None:
                return i, a, b, l
    return None


def test_criterion_1_table_rows(capsys):
    def check():
        code = main(["table1", "5", "9"])
        rows = json.loads(capsys.readouterr().out)
        assert code == 0
        got = {k: tuple(r[k] for r in rows) for k in ("s_n", "h_n", "delta_n", "gamma_n")}
        want = {
            "s_n": (3, 6, 11, 23, 47),
            "h_n": (2, 4, 3, 6, 4),
            "delta_n": (1, 2, 3, 4, 6),
            "gamma_n": (1, 1, 1, 3, 2),
        }
        assert got == want, f"got {got}"

    record(1, "table1 5 9 rows s, h, delta, gamma", check)


def test_criterion_2_path_family():
    def check():
        for n in range(4, 9):
            want = n * (n - 1) // 2
            d = bfs_metrics(path_tree(n)).diameter
            f = f_upper_bound(path_tree(n))[0]
            assert d == want and f == want, f"n={n}: diam {d}, f {f}, expected {want}"

    record(2, "path diameter and f(T) equal n(n-1)/2 for n=4..8", check)


def test_criterion_3_star_family():
    def check():
        for n in range(4, 9):
            d = bfs_metrics(star_tree(n)).diameter
            assert d == (3 * (n - 1)) // 2, f"n={n}: diam {d}"
        for n in range(2, 8):
            star = star_tree(n)
            table = bfs_table(star)
            for p in all_permutations(n):
                assert star_bound(star, p) == table[rank(p)], f"n={n}, {p}"

    record(3, "star diameter floor(3(n-1)/2) and star_bound == distance", check)


def test_criterion_4_star_dichotomy():
    def check():
        for n in range(5, 8):
            for t in enumerate_trees(n):
                exact = np.array_equal(f_table(t).astype(np.int64), bfs_table(t).astype(np.int64))
                assert exact == t.is_star(), f"n={n} {t.edges}: equality {exact}, star {t.is_star()}"
                if t.is_star():
                    continue
                i, j, k, l = three_path(t)
                p = from_cycles([(i, k), (j, l)], n)
                ft, d = f_T(t, p), int(bfs_table(t)[rank(p)])
                assert ft == 6 and d <= 4, f"{t.edges}: f_T {ft}, dist {d}"

    record(4, "f_T == distance everywhere exactly for stars; (i,k)(j,l) witness", check)


def test_criterion_5_named_counterexamples():
    def check():
        t5 = build_tree(5, [(1, 2), (2, 3), (1, 4), (1, 5)])
        d5, f5 = bfs_metrics(t5).diameter, f_upper_bound(t5)[0]
        assert (d5, f5) == (7, 8), f"5-vertex tree: diam {d5}, f {f5}"
        t7 = build_tree(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
        d7 = bfs_metrics(t7).diameter
        assert d7 == 14, f"7-vertex tree: diam {d7}"
        # literal permutation as stated; cycles multiply right to left
        p = parse_permutation("(2,4)(3,5)(5,7)", n=7)
        word = parse_word(SAMPLE_WORD)
        assert len(word) == 15
        rep = replay_word(t7, p, word)
        assert rep.valid and rep.sorts, (
            f"15-edge word does not sort (2,4)(3,5)(5,7): stopped at step {rep.failed_at}, {rep.reason}"
        )

    record(5, "counterexample trees and 15-edge word replay", check)


def test_criterion_6_algorithm_a():
    def check():
        t1, t2 = named_tree("t1"), named_tree("t2")

        def scripted(seq):
            it = iter(seq)
            return lambda t, pairs: next(it)

        assert enumerate_beta_set(t1).values == (18,)
        assert algorithm_a(t1, scripted([(1, 8), (5, 7), (2, 6)])).beta == 18
        assert algorithm_a(t1, scripted([(1, 5), (6, 8), (2, 7)])).beta == 18
        assert {20, 22} <= set(enumerate_beta_set(t2).values)
        assert bfs_metrics(t2).diameter == 18
        assert f_upper_bound(t2)[0] == 22

    record(6, "T1 gives B={18}; T2 gives B >= {20,22}, diam 18, f 22", check)


def test_criterion_7_caterpillar():
    def check():
        for n in range(5, 10):
            f = f_upper_bound(caterpillar_tree(n))[0]
            assert f == math.comb(n, 2) - 2, f"n={n}: f {f}"
            rep = caterpillar_report(n)
            assert rep["gap"] >= n - 4, f"n={n}: gap {rep['gap']}"

    record(7, "caterpillar f = n(n-1)/2 - 2 and gap >= n-4 for n=5..9", check)


def test_criterion_8_property_suites():
    def check():
        for n in range(2, 8):
            perms = K.lex_permutations(n)
            inv = inversions_rows(perms)
            for t in enumerate_trees(n):
                f = f_table(t).astype(np.int64)
                d = bfs_table(t).astype(np.int64)
                assert (d <= f).all(), f"dist > f_T on {t.edges}"
                lengths, monotone = K.ak_lengths(t.zero_based_dist(), t.next_hop, np.array(t.edges) - 1)
                assert monotone and (lengths >= 0).all(), f"AK stalled on {t.edges}"
            star = star_tree(n)
            lengths, _ = K.ak_lengths(star.zero_based_dist(), star.next_hop, np.array(star.edges) - 1)
            assert np.array_equal(lengths.astype(np.int64), f_table(star).astype(np.int64)), f"star n={n}"
            path = path_tree(n)
            lengths, _ = K.ak_lengths(path.zero_based_dist(), path.next_hop, np.array(path.edges) - 1)
            assert np.array_equal(lengths.astype(np.int64), inv), f"path n={n}"
        for n in range(2, 9):
            for t in enumerate_trees(n):
                bs = enumerate_beta_set(t)
                diam = bfs_metrics(t).diameter
                f = f_upper_bound(t)[0]
                assert diam <= bs.beta_max <= f, f"{t.edges}: {diam}, {bs.beta_max}, {f}"
                for b, outcome in bs.outcomes.items():
                    assert f_T(t, construction_permutation(t, outcome)) == b, f"{t.edges}: beta {b}"

    record(8, "dist <= f_T, AK monotone, AK lengths on paths/stars, diam <= beta_max <= f", check)


def test_criterion_9_enumeration_counts():
    def check():
        counts = tuple(len(enumerate_trees(n)) for n in range(5, 10))
        assert counts == (3, 6, 11, 23, 47), f"got {counts}"

    record(9, "free tree counts 3, 6, 11, 23, 47 for n=5..9", check)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
