"""Permutations of {1..n} in one-line notation.

Labels are 1-based everywhere in this module's public surface.
``compose(p, q)`` applies ``q`` first, so ``compose(p, q)(i) == p(q(i))``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import PermutationError, SizeMismatch

__all__ = [
    "Permutation",
    "identity",
    "from_cycles",
    "transposition",
    "parse_permutation",
    "cycle_count",
    "cycles",
    "inversions",
    "fixed_points",
    "compose",
    "apply_transposition",
    "inverse",
    "is_identity",
    "rank",
    "unrank",
    "all_permutations",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n}; ``mapping[i-1]`` holds the image of ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.mapping)
        n = len(m)
        if n < 1:
            raise PermutationError("permutation must act on at least one label")
        if sorted(m) != list(range(1, n + 1)):
            raise PermutationError(f"{list(m)} is not a bijection on 1..{n}")
        object.__setattr__(self, "mapping", m)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PermutationError(f"label {i} outside 1..{self.n}")
        return self.mapping[i - 1]

    def __len__(self) -> int:
        return len(self.mapping)

    def __iter__(self) -> Iterator[int]:
        return iter(self.mapping)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.mapping)) + "]"

    def cycle_notation(self) -> str:
        parts = [c for c in cycles(self) if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in parts)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def from_cycles(cyc: Iterable[Sequence[int]], n: int) -> Permutation:
    """Build a permutation from disjoint cycles ``(a, b, c)`` meaning a->b->c->a."""
    m = list(range(1, n + 1))
    seen: set[int] = set()
    for c in cyc:
        for x in c:
            if not 1 <= x <= n:
                raise PermutationError(f"label {x} outside 1..{n}")
            if x in seen:
                raise PermutationError(f"label {x} appears in two cycles")
            seen.add(x)
        for k, x in enumerate(c):
            m[x - 1] = c[(k + 1) % len(c)]
    return Permutation(tuple(m))


def transposition(n: int, i: int, j: int) -> Permutation:
    if i == j:
        raise PermutationError("transposition needs two distinct labels")
    return from_cycles([(i, j)], n)


_ONE_LINE = re.compile(r"^\[\s*\d+(\s*,\s*\d+)*\s*\]$")
_CYCLES = re.compile(r"^(\(\s*\d+(\s*,\s*\d+)*\s*\))+$")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse ``[3,5,1,4,2]`` or ``(1,3)(2,5)``.

    Cycle notation leaves fixed points implicit; ``n`` defaults to the
    largest label mentioned. Cycles that share labels are multiplied with
    the rightmost factor applied first.
    """
    s = text.strip().replace(" ", "")
    if s in ("()", "[]") and n is not None:
        return identity(n)
    if _ONE_LINE.match(s):
        p = Permutation(tuple(int(x) for x in s[1:-1].split(",")))
        if n is not None and p.n != n:
            raise SizeMismatch(f"permutation has {p.n} labels, expected {n}")
        return p
    if _CYCLES.match(s):
        cyc = [tuple(int(x) for x in body.split(",")) for body in re.findall(r"\(([^)]*)\)", s)]
        top = max(max(c) for c in cyc)
        if n is None:
            n = top
        result = identity(n)
        for c in cyc:
            result = compose(result, from_cycles([c], n))
        return result
    raise PermutationError(f"cannot parse permutation {text!r}")


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycles of ``p`` including fixed points, each starting at its smallest label."""
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        c = []
        x = start
        while not seen[x]:
            seen[x] = True
            c.append(x)
            x = p.mapping[x - 1]
        out.append(tuple(c))
    return out


def cycle_count(p: Permutation) -> int:
    return len(cycles(p))


def inversions(p: Permutation) -> int:
    m = p.mapping
    return sum(1 for i in range(len(m)) for j in range(i + 1, len(m)) if m[i] > m[j])


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p.mapping, start=1) if i == x)


def _check_same(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise SizeMismatch(f"permutations act on {p.n} and {q.n} labels")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``: apply ``q`` first, then ``p``."""
    _check_same(p, q)
    return Permutation(tuple(p.mapping[x - 1] for x in q.mapping))


def apply_transposition(p: Permutation, i: int, j: int) -> Permutation:
    """Right-multiply by ``(i, j)``: swap the entries at positions ``i`` and ``j``."""
    if i == j:
        raise PermutationError("transposition needs two distinct labels")
    for x in (i, j):
        if not 1 <= x <= p.n:
            raise PermutationError(f"label {x} outside 1..{p.n}")
    m = list(p.mapping)
    m[i - 1], m[j - 1] = m[j - 1], m[i - 1]
    return Permutation(tuple(m))


def inverse(p: Permutation) -> Permutation:
    m = [0] * p.n
    for i, x in enumerate(p.mapping, start=1):
        m[x - 1] = i
    return Permutation(tuple(m))


def is_identity(p: Permutation) -> bool:
    return all(i == x for i, x in enumerate(p.mapping, start=1))


def rank(p: Permutation) -> int:
    """Lexicographic rank in [0, n!) via the Lehmer code."""
    m = p.mapping
    n = len(m)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if m[j] < m[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Permutation:
    total = math.factorial(n)
    if not 0 <= r < total:
        raise PermutationError(f"rank {r} outside [0, {total})")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        d, r = divmod(r, math.factorial(i))
        out.append(pool.pop(d))
    return Permutation(tuple(out))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic (rank) order."""
    for m in itertools.permutations(range(1, n + 1)):
        yield Permutation(m)
