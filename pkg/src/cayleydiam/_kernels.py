"""Exhaustive kernels over S_n, indexed by lexicographic rank.

Every kernel has a numba implementation and a pure numpy/Python fallback
with identical results. The numba path is used when numba imports and
``CAYLEYDIAM_NO_NUMBA`` is unset (or ``0``). All arrays here are 0-based:
permutation rows hold images in ``0..n-1`` and tree data are indexed by
``label - 1``.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

UNVISITED = 255

USE_NUMBA = HAVE_NUMBA and os.environ.get("CAYLEYDIAM_NO_NUMBA", "0") in ("", "0")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(k) for k in range(n + 1)], dtype=np.int64)


# ---------------------------------------------------------------------------
# numpy helpers (also used by tests as oracles of the numba path)


def lex_permutations(n: int) -> np.ndarray:
    """All permutations of 0..n-1 as rows of an ``(n!, n)`` int8 array, in rank order."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for k in range(1, n + 1):
        blocks = []
        for v in range(k):
            rest = perms + (perms >= v)
            head = np.full((rest.shape[0], 1), v, dtype=np.int8)
            blocks.append(np.hstack([head, rest.astype(np.int8)]))
        perms = np.vstack(blocks)
    return perms


def rank_rows(perms: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of the rows of ``perms``."""
    n = perms.shape[1]
    fact = _factorials(n)
    r = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
        r += smaller * fact[n - 1 - i]
    return r


def cycle_counts_rows(perms: np.ndarray) -> np.ndarray:
    """Number of cycles (fixed points included) of every row."""
    n = perms.shape[1]
    rows = np.arange(perms.shape[0])[:, None]
    p = perms.astype(np.int64)
    cur = p.copy()
    orbit_min = np.minimum(p, np.arange(n))
    for _ in range(n - 2):
        cur = p[rows, cur]
        np.minimum(orbit_min, cur, out=orbit_min)
    return (orbit_min == np.arange(n)).sum(axis=1)


def _bfs_numpy(n: int, gens: np.ndarray) -> np.ndarray:
    perms = lex_permutations(n)
    dist = np.full(perms.shape[0], UNVISITED, dtype=np.uint8)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        found = []
        rows = perms[frontier]
        for a, b in gens:
            swapped = rows.copy()
            swapped[:, [a, b]] = swapped[:, [b, a]]
            nb = rank_rows(swapped)
            nb = nb[dist[nb] == UNVISITED]
            dist[nb] = level
            found.append(nb)
        frontier = np.unique(np.concatenate(found)) if found else np.zeros(0, np.int64)
    return dist


def _f_values_numpy(dist0: np.ndarray) -> np.ndarray:
    n = dist0.shape[0]
    perms = lex_permutations(n)
    s = dist0.astype(np.int16)[np.arange(n)[None, :], perms.astype(np.int64)].sum(axis=1)
    return (cycle_counts_rows(perms) - n + s).astype(np.int16)


def _ak_lengths_python(dist0: np.ndarray, hop0: np.ndarray, edges0: np.ndarray) -> tuple[np.ndarray, bool]:
    n = dist0.shape[0]
    d = dist0.tolist()
    hop = hop0.tolist()
    edges = [tuple(e) for e in edges0.tolist()]
    lengths = np.zeros(math.factorial(n), dtype=np.int16)

    def f_of(p: list[int]) -> int:
        seen = [False] * n
        c = 0
        for i in range(n):
            if not seen[i]:
                c += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
        return c - n + sum(d[i][p[i]] for i in range(n))

    monotone = True
    for r, row in enumerate(lex_permutations(n).tolist()):
        p = list(row)
        f = f_of(p)
        steps = 0
        while f > 0:
            pick = None
            fallback = None
            for a, b in edges:
                ma, mb = p[a], p[b]
                if ma != a and mb != b and hop[a][ma] == b and hop[b][mb] == a:
                    pick = (a, b)
                    break
                if fallback is None and (
                    (ma == a and mb != b and hop[b][mb] == a) or (mb == b and ma != a and hop[a][ma] == b)
                ):
                    fallback = (a, b)
            if pick is None:
                pick = fallback
            if pick is None:
                lengths[r] = -1
                break
            a, b = pick
            p[a], p[b] = p[b], p[a]
            steps += 1
            nf = f_of(p)
            if nf >= f:
                monotone = False
            f = nf
        else:
            lengths[r] = steps
    return lengths, monotone


# ---------------------------------------------------------------------------
# numba kernels

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_unrank(r, n, fact, out, pool):
        for i in range(n):
            pool[i] = i
        m = n
        for i in range(n):
            f = fact[n - 1 - i]
            d = r // f
            r -= d * f
            out[i] = pool[d]
            for k in range(d, m - 1):
                pool[k] = pool[k + 1]
            m -= 1

    @njit(cache=True)
    def _nb_rank(p, n, fact):
        r = 0
        for i in range(n - 1):
            c = 0
            for j in range(i + 1, n):
                if p[j] < p[i]:
                    c += 1
            r += c * fact[n - 1 - i]
        return r

    @njit(cache=True)
    def _nb_f(p, n, dist0, seen):
        s = 0
        for i in range(n):
            s += dist0[i, p[i]]
            seen[i] = False
        c = 0
        for i in range(n):
            if not seen[i]:
                c += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
        return c - n + s

    @njit(cache=True)
    def _bfs_numba(n, gens, fact):
        total = fact[n]
        dist = np.full(total, 255, np.uint8)
        queue = np.empty(total, np.int64)
        p = np.empty(n, np.int64)
        pool = np.empty(n, np.int64)
        dist[0] = 0
        queue[0] = 0
        head = 0
        tail = 1
        m = gens.shape[0]
        while head < tail:
            r = queue[head]
            head += 1
            _nb_unrank(r, n, fact, p, pool)
            nd = dist[r] + 1
            for g in range(m):
                a = gens[g, 0]
                b = gens[g, 1]
                p[a], p[b] = p[b], p[a]
                s = _nb_rank(p, n, fact)
                p[a], p[b] = p[b], p[a]
                if dist[s] == 255:
                    dist[s] = nd
                    queue[tail] = s
                    tail += 1
        return dist

    @njit(cache=True)
    def _f_values_numba(dist0, fact):
        n = dist0.shape[0]
        total = fact[n]
        out = np.empty(total, np.int16)
        p = np.arange(n)
        seen = np.zeros(n, np.bool_)
        for r in range(total):
            out[r] = _nb_f(p, n, dist0, seen)
            # advance to the lexicographic successor
            i = n - 2
            while i >= 0 and p[i] > p[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while p[j] < p[i]:
                j -= 1
            p[i], p[j] = p[j], p[i]
            lo = i + 1
            hi = n - 1
            while lo < hi:
                p[lo], p[hi] = p[hi], p[lo]
                lo += 1
                hi -= 1
        return out

    @njit(cache=True)
    def _ak_lengths_numba(dist0, hop0, edges0, fact):
        n = dist0.shape[0]
        total = fact[n]
        lengths = np.zeros(total, np.int16)
        p = np.empty(n, np.int64)
        pool = np.empty(n, np.int64)
        seen = np.zeros(n, np.bool_)
        m = edges0.shape[0]
        monotone = True
        for r in range(total):
            _nb_unrank(r, n, fact, p, pool)
            f = _nb_f(p, n, dist0, seen)
            steps = 0
            stuck = False
            while f > 0:
                pick = -1
                fallback = -1
                for e in range(m):
                    a = edges0[e, 0]
                    b = edges0[e, 1]
                    ma = p[a]
                    mb = p[b]
                    if ma != a and mb != b and hop0[a, ma] == b and hop0[b, mb] == a:
                        pick = e
                        break
                    if fallback < 0:
                        if (ma == a and mb != b and hop0[b, mb] == a) or (
                            mb == b and ma != a and hop0[a, ma] == b
                        ):
                            fallback = e
                if pick < 0:
                    pick = fallback
                if pick < 0:
                    stuck = True
                    break
                a = edges0[pick, 0]
                b = edges0[pick, 1]
                p[a], p[b] = p[b], p[a]
                steps += 1
                nf = _nb_f(p, n, dist0, seen)
                if nf >= f:
                    monotone = False
                f = nf
            lengths[r] = -1 if stuck else steps
        return lengths, monotone


# ---------------------------------------------------------------------------
# dispatch


def bfs_distances(n: int, gens: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Distance from the identity to every rank in the Cayley graph of ``gens``.

    ``gens`` is an ``(m, 2)`` array of 0-based position pairs; each generator
    acts by right multiplication (swapping two positions).
    """
    gens = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 2)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _bfs_numba(n, gens, _factorials(n))
    return _bfs_numpy(n, gens)


def f_values(dist0: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """``c(p) - n + sum_i dist(i, p(i))`` for every rank ``p``."""
    dist0 = np.ascontiguousarray(dist0, dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _f_values_numba(dist0, _factorials(dist0.shape[0]))
    return _f_values_numpy(dist0)


def ak_lengths(
    dist0: np.ndarray, hop0: np.ndarray, edges0: np.ndarray, use_numba: bool | None = None
) -> tuple[np.ndarray, bool]:
    """AK word length for every rank under the default admissible-edge rule.

    Returns the lengths (``-1`` where no admissible edge was found) and whether
    the bound ``f_T`` strictly decreased at every step of every run.
    """
    dist0 = np.ascontiguousarray(dist0, dtype=np.int64)
    hop0 = np.ascontiguousarray(hop0, dtype=np.int64)
    edges0 = np.ascontiguousarray(edges0, dtype=np.int64).reshape(-1, 2)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        lengths, monotone = _ak_lengths_numba(dist0, hop0, edges0, _factorials(dist0.shape[0]))
        return lengths, bool(monotone)
    return _ak_lengths_python(dist0, hop0, edges0)
