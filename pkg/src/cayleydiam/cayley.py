"""Exact Cayley-graph distances and the AK marker-sorting algorithm.

Vertex ``i`` of the tree holds marker ``p(i)``; applying edge ``(i, j)``
swaps the two markers, i.e. right-multiplies ``p`` by the transposition.
Sorting homes every marker ``m`` at vertex ``m``.
"""

from __future__ import annotations

import hashlib
import math
import re
import struct
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .bounds import f_T
from .errors import InfeasibleScale, NoAdmissibleEdge, SizeMismatch, TreeError
from .perm import Permutation, apply_transposition, is_identity, rank, unrank
from .tree import TranspositionTree, VertexPair, canonical_form

__all__ = [
    "EdgeKind",
    "AkTrace",
    "CayleyMetrics",
    "ReplayStep",
    "ReplayReport",
    "bfs_table",
    "bfs_metrics",
    "distance",
    "bidirectional_distance",
    "admissible_edges",
    "find_admissible_edge",
    "ak_sort",
    "replay_word",
    "parse_word",
    "save_table",
    "load_table",
    "cache_path",
    "MAX_BFS_N",
]

MAX_BFS_N = 10
TABLE_MAGIC = b"CAYD"
TABLE_VERSION = 1


class EdgeKind(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class CayleyMetrics:
    n: int
    diameter: int
    eccentricity_profile: dict[int, int]
    peripheral_witness: Permutation


def _require_tree(t: TranspositionTree, max_n: int) -> None:
    if not t.is_contiguous():
        raise TreeError("tree labels must be 1..n")
    if t.n > max_n:
        raise InfeasibleScale(f"BFS over {t.n}! = {math.factorial(t.n)} permutations exceeds max_n={max_n}")


# ---------------------------------------------------------------------------
# BFS table and its on-disk cache
#
# File layout (little endian):
#   magic b"CAYD" | u8 version | u8 n | u8 edge count m | m * (u8, u8) edges | n! u8 distances
# Distances are stored in lexicographic rank order of the permutations.


def cache_path(cache_dir: str | Path, t: TranspositionTree) -> Path:
    """File name keyed by canonical code plus a digest of the labeled edge list."""
    digest = hashlib.sha1(repr(t.edges).encode()).hexdigest()[:12]
    return Path(cache_dir) / f"n{t.n}-{canonical_form(t).hex()}-{digest}.bfs"


def save_table(path: str | Path, t: TranspositionTree, table: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = TABLE_MAGIC + struct.pack("<BBB", TABLE_VERSION, t.n, len(t.edges))
    header += b"".join(struct.pack("<BB", a, b) for a, b in t.edges)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(table, dtype=np.uint8).tobytes())
    tmp.replace(path)


def load_table(path: str | Path, t: TranspositionTree | None = None) -> tuple[int, tuple[VertexPair, ...], np.ndarray]:
    """Read a table file; when ``t`` is given, reject files built for another tree."""
    raw = Path(path).read_bytes()
    if raw[:4] != TABLE_MAGIC:
        raise ValueError(f"{path}: not a BFS table file")
    version, n, m = struct.unpack_from("<BBB", raw, 4)
    if version != TABLE_VERSION:
        raise ValueError(f"{path}: unsupported table version {version}")
    off = 7
    edges = tuple(struct.unpack_from("<BB", raw, off + 2 * k) for k in range(m))
    off += 2 * m
    table = np.frombuffer(raw, dtype=np.uint8, offset=off)
    if table.size != math.factorial(n):
        raise ValueError(f"{path}: expected {math.factorial(n)} distances, found {table.size}")
    if t is not None and (n != t.n or edges != t.edges):
        raise ValueError(f"{path}: table belongs to a different tree")
    return n, edges, table


_memory_cache: OrderedDict[tuple, np.ndarray] = OrderedDict()
_MEMORY_SLOTS = 4


def bfs_table(t: TranspositionTree, cache_dir: str | Path | None = None, max_n: int = MAX_BFS_N) -> np.ndarray:
    """Distance from the identity to every permutation, indexed by rank."""
    _require_tree(t, max_n)
    key = (t.n, t.edges)
    if key in _memory_cache:
        _memory_cache.move_to_end(key)
        return _memory_cache[key]
    table = None
    path = cache_path(cache_dir, t) if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            table = load_table(path, t)[2]
        except ValueError:
            table = None
    if table is None:
        table = _kernels.bfs_distances(t.n, np.array(t.edges, dtype=np.int64).reshape(-1, 2) - 1)
        if path is not None:
            save_table(path, t, table)
    table.setflags(write=False)
    _memory_cache[key] = table
    if len(_memory_cache) > _MEMORY_SLOTS:
        _memory_cache.popitem(last=False)
    return table


def bfs_metrics(t: TranspositionTree, cache_dir: str | Path | None = None, max_n: int = MAX_BFS_N) -> CayleyMetrics:
    """Diameter and distance histogram from a single BFS rooted at the identity.

    Cayley graphs are vertex-transitive, so the eccentricity of the identity
    is the diameter.
    """
    table = bfs_table(t, cache_dir=cache_dir, max_n=max_n)
    if (table == _kernels.UNVISITED).any():
        raise TreeError("generators do not reach every permutation")
    counts = np.bincount(table)
    diameter = len(counts) - 1
    profile = {d: int(c) for d, c in enumerate(counts) if c}
    witness = unrank(int(np.argmax(table)), t.n)
    return CayleyMetrics(t.n, diameter, profile, witness)


def bidirectional_distance(t: TranspositionTree, p: Permutation) -> int:
    """Meet-in-the-middle BFS between ``p`` and the identity, for one-off queries."""
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    gens = [(a - 1, b - 1) for a, b in t.edges]
    start = tuple(x - 1 for x in p.mapping)
    goal = tuple(range(t.n))
    if start == goal:
        return 0
    dist_a = {start: 0}
    dist_b = {goal: 0}
    front_a, front_b = [start], [goal]
    depth_a = depth_b = 0
    while front_a and front_b:
        # expand the smaller side
        if len(front_a) <= len(front_b):
            front, seen, other, depth_a = front_a, dist_a, dist_b, depth_a + 1
            depth = depth_a
        else:
            front, seen, other, depth_b = front_b, dist_b, dist_a, depth_b + 1
            depth = depth_b
        nxt = []
        best = None
        for state in front:
            for a, b in gens:
                s = list(state)
                s[a], s[b] = s[b], s[a]
                s = tuple(s)
                if s in other:
                    cand = depth + other[s]
                    best = cand if best is None else min(best, cand)
                if s not in seen:
                    seen[s] = depth
                    nxt.append(s)
        if best is not None:
            return best
        if front is front_a:
            front_a = nxt
        else:
            front_b = nxt
    raise TreeError("permutation unreachable from the identity")


def distance(
    t: TranspositionTree,
    p: Permutation,
    table: np.ndarray | None = None,
    cache_dir: str | Path | None = None,
) -> int:
    """Exact ``dist(I, p)``: from ``table`` if given, a full BFS for n <= 9, else bidirectional search."""
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    if table is not None:
        return int(table[rank(p)])
    _require_tree(t, MAX_BFS_N)
    if t.n <= 9 or (t.n, t.edges) in _memory_cache:
        return int(bfs_table(t, cache_dir=cache_dir)[rank(p)])
    if cache_dir is not None and cache_path(cache_dir, t).exists():
        return int(bfs_table(t, cache_dir=cache_dir)[rank(p)])
    return bidirectional_distance(t, p)


# ---------------------------------------------------------------------------
# AK algorithm

EdgePolicy = Callable[[Sequence[tuple[VertexPair, EdgeKind]]], tuple[VertexPair, EdgeKind]]


def _edge_kind(t: TranspositionTree, p: Permutation, i: int, j: int) -> EdgeKind | None:
    """Classify edge (i, j) for the marker configuration ``p``.

    Type A: both markers step closer to home. Type B: one marker is home
    and the other's path home begins with this edge.
    """
    mi, mj = p.mapping[i - 1], p.mapping[j - 1]
    i_wants = mi != i and t.step_toward(i, mi) == j
    j_wants = mj != j and t.step_toward(j, mj) == i
    if i_wants and j_wants:
        return EdgeKind.A
    if (mi == i and j_wants) or (mj == j and i_wants):
        return EdgeKind.B
    return None


def admissible_edges(t: TranspositionTree, p: Permutation) -> list[tuple[VertexPair, EdgeKind]]:
    """All admissible edges, in lexicographic edge order."""
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    out = []
    for i, j in t.edges:
        kind = _edge_kind(t, p, i, j)
        if kind is not None:
            out.append(((i, j), kind))
    return out


def _default_edge_policy(options: Sequence[tuple[VertexPair, EdgeKind]]) -> tuple[VertexPair, EdgeKind]:
    for opt in options:
        if opt[1] is EdgeKind.A:
            return opt
    return options[0]


def find_admissible_edge(
    t: TranspositionTree, p: Permutation, policy: EdgePolicy | None = None
) -> tuple[VertexPair, EdgeKind]:
    """Pick an admissible edge; by default the first Type A edge, else the first Type B."""
    options = admissible_edges(t, p)
    if not options:
        raise NoAdmissibleEdge(f"no admissible edge for {p}")
    return (policy or _default_edge_policy)(options)


@dataclass(frozen=True)
class AkTrace:
    start: Permutation
    edges_applied: tuple[VertexPair, ...]
    edge_kinds: tuple[EdgeKind, ...]
    f_values: tuple[int, ...]

    @property
    def word_length(self) -> int:
        return len(self.edges_applied)


def ak_sort(t: TranspositionTree, p: Permutation, policy: EdgePolicy | None = None) -> AkTrace:
    """Sort ``p`` by repeatedly applying admissible edges."""
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    cur = p
    edges: list[VertexPair] = []
    kinds: list[EdgeKind] = []
    fs: list[int] = []
    # each admissible step lowers f_T by at least one, so this bounds the loop
    budget = f_T(t, p)
    while not is_identity(cur):
        if len(edges) > budget:
            raise NoAdmissibleEdge("AK run exceeded its f_T step budget")
        (i, j), kind = find_admissible_edge(t, cur, policy)
        cur = apply_transposition(cur, i, j)
        edges.append((i, j))
        kinds.append(kind)
        fs.append(f_T(t, cur))
    return AkTrace(p, tuple(edges), tuple(kinds), tuple(fs))


@dataclass(frozen=True)
class ReplayStep:
    edge: VertexPair
    kind: EdgeKind | None
    f_value: int


@dataclass(frozen=True)
class ReplayReport:
    valid: bool
    sorts: bool
    steps: tuple[ReplayStep, ...]
    failed_at: int | None
    reason: str

    @property
    def word_length(self) -> int:
        return len(self.steps)


def replay_word(t: TranspositionTree, p: Permutation, word: Sequence[Sequence[int]]) -> ReplayReport:
    """Check that every edge of ``word`` is admissible when applied and that the word sorts ``p``.

    Problems are reported, not raised. ``failed_at`` is 1-based.
    """
    if t.n != p.n:
        raise SizeMismatch(f"tree has {t.n} vertices, permutation acts on {p.n}")
    cur = p
    steps: list[ReplayStep] = []
    for k, (i, j) in enumerate(word, start=1):
        if not t.has_edge(i, j):
            return ReplayReport(False, False, tuple(steps), k, f"({i},{j}) is not an edge of the tree")
        kind = _edge_kind(t, cur, min(i, j), max(i, j))
        if kind is None:
            return ReplayReport(False, False, tuple(steps), k, f"({i},{j}) is not admissible at step {k}")
        cur = apply_transposition(cur, i, j)
        steps.append(ReplayStep((min(i, j), max(i, j)), kind, f_T(t, cur)))
    if not is_identity(cur):
        return ReplayReport(False, False, tuple(steps), None, f"word ends at {cur}, not the identity")
    return ReplayReport(True, True, tuple(steps), None, "ok")


def parse_word(text: str) -> list[VertexPair]:
    """Parse ``(1,2),(1,4)`` or ``1-2,1-4``."""
    s = text.replace(" ", "")
    if not s:
        return []
    pairs = re.findall(r"\((\d+),(\d+)\)", s)
    if not pairs:
        pairs = re.findall(r"(\d+)-(\d+)", s)
    if not pairs:
        raise ValueError(f"cannot parse word {text!r}")
    return [(int(a), int(b)) for a, b in pairs]
