"""Closed-form diameter estimators for transposition trees.

``f_T(p) = c(p) - n + sum_i dist_T(i, p(i))`` bounds the Cayley distance of
``p`` from the identity; its maximum ``f(T)`` over S_n bounds the diameter.
Algorithm A estimates the diameter from the tree alone by repeatedly
stripping a diametral pair of leaves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import InfeasibleScale, NotAStar, SizeMismatch, TreeError
from .perm import Permutation, cycle_count, fixed_points, from_cycles, unrank
from .tree import (
    TranspositionTree,
    VertexPair,
    diametral_pairs,
    induced_subtree,
    tree_diameter,
)

__all__ = [
    "AlgAOutcome",
    "BetaSet",
    "sum_of_distances",
    "f_T",
    "f_table",
    "f_upper_bound",
    "star_bound",
    "algorithm_a",
    "enumerate_beta_set",
    "construction_permutation",
    "POLICIES",
    "MAX_EXHAUSTIVE_N",
]

MAX_EXHAUSTIVE_N = 10

PairPolicy = Callable[[TranspositionTree, Sequence[VertexPair]], VertexPair]


@dataclass(frozen=True)
class AlgAOutcome:
    """One execution path of Algorithm A."""

    pairs: tuple[VertexPair, ...]
    step_diameters: tuple[int, ...]
    tail: int
    remaining: tuple[int, ...]

    @property
    def beta(self) -> int:
        return sum(2 * d - 1 for d in self.step_diameters) + self.tail


@dataclass(frozen=True)
class BetaSet:
    values: tuple[int, ...]
    outcomes: dict[int, AlgAOutcome] = field(repr=False, compare=False)

    @property
    def beta_max(self) -> int:
        return self.values[-1]

    @property
    def beta_min(self) -> int:
        return self.values[0]


def _check_size(t: TranspositionTree, p: Permutation) -> None:
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    if not t.is_contiguous():
        raise TreeError("tree labels must be 1..n to act on permutations")


def sum_of_distances(t: TranspositionTree, p: Permutation) -> int:
    _check_size(t, p)
    return sum(int(t.dist[i - 1, x - 1]) for i, x in enumerate(p.mapping, start=1))


def f_T(t: TranspositionTree, p: Permutation) -> int:
    return cycle_count(p) - p.n + sum_of_distances(t, p)


def f_table(t: TranspositionTree) -> np.ndarray:
    """``f_T`` for every permutation, indexed by lexicographic rank."""
    if not t.is_contiguous():
        raise TreeError("tree labels must be 1..n")
    if t.n > MAX_EXHAUSTIVE_N:
        raise InfeasibleScale(f"exhaustive sweep over {t.n}! permutations is out of range")
    return _kernels.f_values(t.zero_based_dist())


def f_upper_bound(t: TranspositionTree) -> tuple[int, Permutation]:
    """Return ``f(T)`` and the lexicographically smallest permutation attaining it."""
    vals = f_table(t)
    r = int(np.argmax(vals))
    return int(vals[r]), unrank(r, t.n)


def star_bound(t: TranspositionTree, p: Permutation) -> int:
    """``n + c(p) - 2|Fix(p)| - r(p)`` with r = 0 iff p fixes the star's center."""
    _check_size(t, p)
    center = t.star_center()
    if center is None:
        raise NotAStar("tree is not a star")
    r = 0 if p(center) == center else 2
    return p.n + cycle_count(p) - 2 * len(fixed_points(p)) - r


# ---------------------------------------------------------------------------
# Algorithm A


def _lex_policy(t: TranspositionTree, pairs: Sequence[VertexPair]) -> VertexPair:
    return pairs[0]


def _by_next_diameter(sign: int) -> PairPolicy:
    def choose(t: TranspositionTree, pairs: Sequence[VertexPair]) -> VertexPair:
        if t.n <= 4:
            return pairs[0]

        def key(pr: VertexPair) -> int:
            rest = [v for v in t.vertices if v not in pr]
            return sign * tree_diameter(induced_subtree(t, rest))

        return min(pairs, key=key)  # min is stable: ties go to the lexicographically first pair

    return choose


POLICIES: dict[str, PairPolicy] = {
    "lex": _lex_policy,
    "maxdiam": _by_next_diameter(-1),
    "mindiam": _by_next_diameter(+1),
}


def algorithm_a(t: TranspositionTree, policy: str | PairPolicy = "lex") -> AlgAOutcome:
    """Run Algorithm A once, choosing among diametral pairs with ``policy``."""
    if t.n < 2:
        raise TreeError("Algorithm A needs at least two vertices")
    choose = POLICIES[policy] if isinstance(policy, str) else policy
    cur = t
    pairs: list[VertexPair] = []
    diams: list[int] = []
    while True:
        d = tree_diameter(cur)
        options = diametral_pairs(cur)
        pair = tuple(sorted(choose(cur, options)))
        if pair not in options:
            raise TreeError(f"policy chose {pair}, which is not a diametral pair")
        pairs.append(pair)
        diams.append(d)
        rest = [v for v in cur.vertices if v not in pair]
        if len(rest) >= 3:
            cur = induced_subtree(cur, rest)
            continue
        # an n=2 input empties the tree on its first pass; nothing is left to add
        return AlgAOutcome(tuple(pairs), tuple(diams), max(len(rest) - 1, 0), tuple(rest))


def enumerate_beta_set(t: TranspositionTree) -> BetaSet:
    """Every value Algorithm A can return, over all diametral-pair choices.

    The remaining tree depends only on which vertices are left, so the
    search is memoized on that set. For each value, the lexicographically
    first pair sequence reaching it is kept as a witness.
    """
    if t.n < 2:
        raise TreeError("Algorithm A needs at least two vertices")

    @lru_cache(maxsize=None)
    def explore(keep: frozenset[int]) -> dict[int, AlgAOutcome]:
        sub = induced_subtree(t, keep)
        d = tree_diameter(sub)
        out: dict[int, AlgAOutcome] = {}
        for pair in diametral_pairs(sub):
            rest = keep - set(pair)
            if len(rest) >= 3:
                for suffix in explore(frozenset(rest)).values():
                    o = AlgAOutcome((pair,) + suffix.pairs, (d,) + suffix.step_diameters, suffix.tail, suffix.remaining)
                    out.setdefault(o.beta, o)
            else:
                o = AlgAOutcome((pair,), (d,), max(len(rest) - 1, 0), tuple(sorted(rest)))
                out.setdefault(o.beta, o)
        return out

    found = explore(frozenset(t.vertices))
    values = tuple(sorted(found))
    return BetaSet(values, {b: found[b] for b in values})


def construction_permutation(t: TranspositionTree, outcome: AlgAOutcome) -> Permutation:
    """Product of the chosen pairs, plus the final pair when two vertices remain.

    Its ``f_T`` equals the outcome's beta.
    """
    cyc = [tuple(pr) for pr in outcome.pairs]
    if len(outcome.remaining) == 2:
        cyc.append(outcome.remaining)
    return from_cycles(cyc, t.n)
