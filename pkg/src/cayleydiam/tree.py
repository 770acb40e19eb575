"""Transposition trees: validation, distances, diametral pairs and enumeration."""

from __future__ import annotations

import heapq
import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BadLabel, CycleDetected, Disconnected, DuplicateEdge, NotALeaf, TreeError

__all__ = [
    "TranspositionTree",
    "VertexPair",
    "build_tree",
    "parse_tree",
    "format_tree",
    "tree_diameter",
    "diametral_pairs",
    "remove_vertices",
    "induced_subtree",
    "canonical_form",
    "canonical_relabel",
    "enumerate_trees",
    "enumerate_trees_pruefer",
    "pruefer_decode",
    "path_tree",
    "star_tree",
    "caterpillar_tree",
    "named_tree",
    "NAMED_TREES",
]

VertexPair = tuple[int, int]


def _pair(i: int, j: int) -> VertexPair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class TranspositionTree:
    """A tree whose vertex labels are a subset of the positive integers.

    Trees built by :func:`build_tree` use labels {1..n}; trees produced by
    :func:`remove_vertices` keep the original labels of the survivors.
    ``dist`` and ``next_hop`` are indexed by position in ``vertices``.
    """

    vertices: tuple[int, ...]
    edges: tuple[VertexPair, ...]
    dist: np.ndarray = field(repr=False)
    next_hop: np.ndarray = field(repr=False)
    index: dict[int, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TranspositionTree):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __str__(self) -> str:
        return format_tree(self)

    def is_contiguous(self) -> bool:
        return self.vertices == tuple(range(1, self.n + 1))

    def distance(self, i: int, j: int) -> int:
        return int(self.dist[self.index[i], self.index[j]])

    def step_toward(self, u: int, v: int) -> int:
        """Neighbour of ``u`` on the tree path from ``u`` to ``v`` (``u != v``)."""
        return self.vertices[self.next_hop[self.index[u], self.index[v]]]

    def neighbors(self, v: int) -> list[int]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if self.degree(v) == 1]

    def has_edge(self, i: int, j: int) -> bool:
        return _pair(i, j) in self.edges

    def star_center(self) -> int | None:
        """The vertex adjacent to all others, or None when the tree is not a star."""
        if self.n < 3:
            return self.vertices[0] if self.n == 2 else None
        for v in self.vertices:
            if self.degree(v) == self.n - 1:
                return v
        return None

    def is_star(self) -> bool:
        return self.star_center() is not None

    def is_path(self) -> bool:
        return all(self.degree(v) <= 2 for v in self.vertices)

    def zero_based_dist(self) -> np.ndarray:
        """Distance matrix for a tree on {1..n}, as a contiguous int8 array."""
        if not self.is_contiguous():
            raise TreeError("tree labels are not 1..n")
        return np.ascontiguousarray(self.dist, dtype=np.int8)


def _finish(vertices: Sequence[int], edges: Sequence[VertexPair]) -> TranspositionTree:
    """Compute all-pairs distances and next hops; assumes a validated tree."""
    verts = tuple(sorted(vertices))
    index = {v: k for k, v in enumerate(verts)}
    m = len(verts)
    adj: list[list[int]] = [[] for _ in range(m)]
    for a, b in edges:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    for row in adj:
        row.sort()
    dist = np.full((m, m), -1, dtype=np.int16)
    # next_hop[u, v]: first step from u toward v (the BFS parent of u in the BFS from v)
    nxt = np.full((m, m), -1, dtype=np.int16)
    for src in range(m):
        dist[src, src] = 0
        nxt[src, src] = src
        q = deque([src])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if dist[src, w] < 0:
                    dist[src, w] = dist[src, u] + 1
                    nxt[w, src] = u
                    q.append(w)
    if m and (dist < 0).any():
        raise Disconnected("edge set does not connect all vertices")
    return TranspositionTree(verts, tuple(sorted(_pair(a, b) for a, b in edges)), dist, nxt, index)


def _validate(vertices: Sequence[int], edges: Iterable[Sequence[int]]) -> list[VertexPair]:
    vset = set(vertices)
    seen: set[VertexPair] = set()
    parent = {v: v for v in vset}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for e in edges:
        if len(e) != 2:
            raise BadLabel(f"edge {e!r} must join exactly two vertices")
        i, j = int(e[0]), int(e[1])
        for x in (i, j):
            if x not in vset:
                raise BadLabel(f"edge {i}-{j}: label {x} outside the vertex set")
        if i == j:
            raise BadLabel(f"edge {i}-{j} is a loop")
        p = _pair(i, j)
        if p in seen:
            raise DuplicateEdge(f"edge {i}-{j} listed twice")
        seen.add(p)
        ri, rj = find(i), find(j)
        if ri == rj:
            raise CycleDetected(f"edge {i}-{j} closes a cycle")
        parent[ri] = rj
        out.append(p)
    if len(out) != len(vset) - 1:
        raise Disconnected(f"{len(out)} edges cannot connect {len(vset)} vertices")
    return out


def build_tree(n: int, edges: Iterable[Sequence[int]]) -> TranspositionTree:
    """Validate ``edges`` as a spanning tree on {1..n}."""
    if n < 1:
        raise BadLabel("a tree needs at least one vertex")
    verts = range(1, n + 1)
    return _finish(verts, _validate(verts, edges))


_TREE_EDGE = re.compile(r"^(\d+)-(\d+)$")


def parse_tree(text: str) -> TranspositionTree:
    """Parse ``[n=<int>;]<i>-<j>(,<i>-<j>)*``; n defaults to the largest label."""
    s = text.strip()
    n = None
    if ";" in s:
        head, s = s.split(";", 1)
        m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*", head)
        if not m:
            raise BadLabel(f"bad tree header {head!r}")
        n = int(m.group(1))
    edges = []
    for tok in s.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            continue
        m = _TREE_EDGE.match(tok)
        if not m:
            raise BadLabel(f"bad edge token {tok!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    if not edges:
        raise BadLabel("tree has no edges")
    if n is None:
        n = max(max(e) for e in edges)
    return build_tree(n, edges)


def format_tree(t: TranspositionTree) -> str:
    return f"n={t.n}; " + ",".join(f"{a}-{b}" for a, b in t.edges)


def tree_diameter(t: TranspositionTree) -> int:
    return int(t.dist.max()) if t.n else 0


def diametral_pairs(t: TranspositionTree) -> list[VertexPair]:
    """All pairs at maximum distance, sorted by (min label, max label)."""
    d = tree_diameter(t)
    ii, jj = np.nonzero(np.triu(t.dist == d, k=1))
    return sorted((t.vertices[a], t.vertices[b]) for a, b in zip(ii.tolist(), jj.tolist()))


def induced_subtree(t: TranspositionTree, keep: Iterable[int]) -> TranspositionTree:
    keep = set(keep)
    edges = [e for e in t.edges if e[0] in keep and e[1] in keep]
    return _finish(sorted(keep), _validate(sorted(keep), edges))


def remove_vertices(t: TranspositionTree, pair: Sequence[int]) -> TranspositionTree:
    """Delete two leaves, keeping the labels of the remaining vertices."""
    i, j = pair
    if i == j:
        raise BadLabel("pair must name two distinct vertices")
    for v in (i, j):
        if v not in t.index:
            raise BadLabel(f"vertex {v} not in tree")
        if t.degree(v) != 1:
            raise NotALeaf(f"vertex {v} has degree {t.degree(v)}")
    if t.n <= 2:
        raise TreeError("removal would leave an empty tree")
    return induced_subtree(t, [v for v in t.vertices if v not in (i, j)])


# ---------------------------------------------------------------------------
# canonical form


def _centers(t: TranspositionTree) -> list[int]:
    if t.n <= 2:
        return list(t.vertices)
    deg = {v: t.degree(v) for v in t.vertices}
    layer = [v for v in t.vertices if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.neighbors(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
            deg[v] = 0
        layer = nxt
    return sorted(layer)


def _rooted_codes(t: TranspositionTree, root: int, banned: int | None = None) -> dict[int, bytes]:
    """AHU code of every vertex in the subtree hanging from ``root``."""
    order = []
    parent = {root: banned}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.neighbors(v):
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    codes: dict[int, bytes] = {}
    for v in reversed(order):
        kids = sorted(codes[w] for w in t.neighbors(v) if w != parent[v])
        codes[v] = b"(" + b"".join(kids) + b")"
    return codes


def canonical_form(t: TranspositionTree) -> bytes:
    """Isomorphism-invariant code: equal iff the unlabeled trees are isomorphic."""
    cs = _centers(t)
    if len(cs) == 1:
        return b"C" + _rooted_codes(t, cs[0])[cs[0]]
    a, b = cs
    ca = _rooted_codes(t, a, banned=b)[a]
    cb = _rooted_codes(t, b, banned=a)[b]
    lo, hi = sorted((ca, cb))
    return b"B" + lo + hi


def canonical_relabel(t: TranspositionTree) -> TranspositionTree:
    """Isomorphic copy on {1..n} whose edge set depends only on the isomorphism class.

    Labels are assigned in breadth-first order from a center, visiting
    children in order of their rooted codes.
    """
    cs = _centers(t)
    if len(cs) == 2:
        a, b = cs
        ca = _rooted_codes(t, a, banned=b)[a]
        cb = _rooted_codes(t, b, banned=a)[b]
        root = a if ca <= cb else b
    else:
        root = cs[0]
    codes = _rooted_codes(t, root)
    label = {root: 1}
    q = deque([root])
    parent = {root: None}
    while q:
        v = q.popleft()
        kids = [w for w in t.neighbors(v) if w != parent[v]]
        kids.sort(key=lambda w: codes[w])
        for w in kids:
            parent[w] = v
            label[w] = len(label) + 1
            q.append(w)
    return build_tree(t.n, [(label[a], label[b]) for a, b in t.edges])


# ---------------------------------------------------------------------------
# enumeration

MAX_ENUM_N = 10


def enumerate_trees(n: int) -> list[TranspositionTree]:
    """One canonically labeled representative per free tree on n vertices.

    Grows trees leaf by leaf from smaller orders and deduplicates with
    :func:`canonical_form`. Sorted by canonical code.
    """
    if not 2 <= n <= MAX_ENUM_N:
        raise TreeError(f"enumerate_trees supports 2 <= n <= {MAX_ENUM_N}, got {n}")
    layer = {canonical_form(build_tree(1, [])): build_tree(1, [])}
    for k in range(2, n + 1):
        nxt: dict[bytes, TranspositionTree] = {}
        for t in layer.values():
            for v in t.vertices:
                g = build_tree(k, list(t.edges) + [(v, k)])
                code = canonical_form(g)
                if code not in nxt:
                    nxt[code] = g
        layer = nxt
    return [canonical_relabel(layer[c]) for c in sorted(layer)]


def pruefer_decode(seq: Sequence[int], n: int) -> list[VertexPair]:
    """Edges of the labeled tree on {1..n} with Prüfer sequence ``seq``."""
    if len(seq) != n - 2:
        raise TreeError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append(_pair(leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append(_pair(heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def enumerate_trees_pruefer(n: int) -> dict[bytes, TranspositionTree]:
    """Brute-force route: decode all n^(n-2) labeled trees, keep one per class."""
    if not 2 <= n <= 9:
        raise TreeError(f"Prüfer enumeration supports 2 <= n <= 9, got {n}")
    out: dict[bytes, TranspositionTree] = {}
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        t = build_tree(n, pruefer_decode(seq, n))
        out.setdefault(canonical_form(t), t)
    return out


# ---------------------------------------------------------------------------
# named families


def path_tree(n: int) -> TranspositionTree:
    return build_tree(n, [(i, i + 1) for i in range(1, n)])


def star_tree(n: int, center: int = 1) -> TranspositionTree:
    return build_tree(n, [(center, v) for v in range(1, n + 1) if v != center])


def caterpillar_tree(n: int) -> TranspositionTree:
    """Path 1..n-2 with two extra leaves n-1 and n hanging from n-2."""
    if n < 4:
        raise TreeError("caterpillar needs n >= 4")
    edges = [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    return build_tree(n, edges)


NAMED_TREES = {
    "theorem6-5v": "n=5; 1-2,2-3,1-4,1-5",
    "theorem6-7v": "n=7; 1-2,2-3,1-4,4-5,1-6,6-7",
    "t1": "n=8; 1-2,2-3,3-7,7-8,3-4,4-5,4-6",
    "t2": "n=9; 1-2,2-3,3-6,3-4,4-5,6-7,6-8,6-9",
}


def named_tree(name: str) -> TranspositionTree:
    """Resolve a fixture name (``t1``, ``caterpillar-7``, ``path-5``, ...)."""
    key = name.strip().lower()
    if key in NAMED_TREES:
        return parse_tree(NAMED_TREES[key])
    m = re.fullmatch(r"(caterpillar|path|star)-(\d+)", key)
    if m:
        family, n = m.group(1), int(m.group(2))
        return {"caterpillar": caterpillar_tree, "path": path_tree, "star": star_tree}[family](n)
    raise BadLabel(f"unknown tree name {name!r}")
