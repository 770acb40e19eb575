"""Per-tree reports and the batch sweeps behind the CLI."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import bounds, cayley
from .errors import InfeasibleScale, TreeError
from .perm import Permutation, inversions
from .tree import (
    TranspositionTree,
    canonical_form,
    caterpillar_tree,
    enumerate_trees,
    format_tree,
)

SCHEMA_VERSION = 1


@dataclass
class TreeReport:
    code: str
    edges: str
    n: int
    exact_diameter: int | None
    f_bound: int | None
    f_witness: str | None
    beta_set: list[int]
    beta_max: int
    gap_f: int | None
    gap_beta: int | None
    sharp: bool | None
    witness: str | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class TableRow:
    n: int
    s_n: int
    h_n: int
    delta_n: int
    gamma_n: int
    extremal: list[str]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def analyze_tree(t: TranspositionTree, cache_dir: str | Path | None = None, max_n: int = 10) -> TreeReport:
    """Exact diameter, f(T), Algorithm A's value set and the gaps between them."""
    notes: list[str] = []
    beta = bounds.enumerate_beta_set(t)
    diam = witness = f_bound = f_witness = None
    if t.n <= min(max_n, cayley.MAX_BFS_N):
        m = cayley.bfs_metrics(t, cache_dir=cache_dir, max_n=max_n)
        diam, witness = m.diameter, str(m.peripheral_witness)
    else:
        notes.append(f"exact diameter skipped: {t.n}! states exceeds max_n={max_n}")
    if t.n <= min(max_n, bounds.MAX_EXHAUSTIVE_N):
        fb, fw = bounds.f_upper_bound(t)
        f_bound, f_witness = fb, str(fw)
    else:
        notes.append(f"f(T) skipped: {t.n}! permutations exceeds max_n={max_n}")
    gap_f = f_bound - diam if f_bound is not None and diam is not None else None
    gap_beta = beta.beta_max - diam if diam is not None else None
    return TreeReport(
        code=canonical_form(t).hex(),
        edges=",".join(f"{a}-{b}" for a, b in t.edges),
        n=t.n,
        exact_diameter=diam,
        f_bound=f_bound,
        f_witness=f_witness,
        beta_set=list(beta.values),
        beta_max=beta.beta_max,
        gap_f=gap_f,
        gap_beta=gap_beta,
        sharp=None if gap_f is None else gap_f == 0,
        witness=witness,
        notes=notes,
    )


def tree_reports(n: int, cache_dir: str | Path | None = None) -> list[TreeReport]:
    """Reports for every free tree on n vertices, sorted by canonical code."""
    reports = [analyze_tree(t, cache_dir=cache_dir) for t in enumerate_trees(n)]
    reports.sort(key=lambda r: r.code)
    return reports


def table_row(n: int, reports: list[TreeReport]) -> TableRow:
    gaps = [r.gap_f for r in reports]
    if any(g is None for g in gaps):
        raise InfeasibleScale(f"gaps unavailable at n={n}")
    delta = max(gaps)
    extremal = [r.edges for r in reports if r.gap_f == delta]
    return TableRow(n, len(reports), gaps.count(0), delta, len(extremal), extremal)


def table1(n_min: int, n_max: int, cache_dir: str | Path | None = None) -> list[TableRow]:
    if not 2 <= n_min <= n_max:
        raise TreeError(f"bad range {n_min}..{n_max}")
    if n_max > 10:
        raise InfeasibleScale(f"table rows need exhaustive search; n={n_max} is out of range")
    return [table_row(n, tree_reports(n, cache_dir)) for n in range(n_min, n_max + 1)]


def caterpillar_report(n: int, cache_dir: str | Path | None = None, max_n: int = 10) -> dict[str, Any]:
    """Strictness witness: f(T) = C(n,2) - 2 while diam <= C(n-1,2) + 1."""
    if n < 5:
        raise TreeError("caterpillar report needs n >= 5")
    t = caterpillar_tree(n)
    formula = math.comb(n, 2) - 2
    diam_ceiling = math.comb(n - 1, 2) + 1
    exhaustive = n <= min(max_n, bounds.MAX_EXHAUSTIVE_N)
    f_bound = bounds.f_upper_bound(t)[0] if exhaustive else None
    diam = cayley.bfs_metrics(t, cache_dir=cache_dir, max_n=max_n).diameter if exhaustive else None
    beta = bounds.enumerate_beta_set(t)
    return {
        "n": n,
        "tree": format_tree(t),
        "f_bound": f_bound,
        "f_bound_formula": formula,
        "exact_diameter": diam,
        "diameter_ceiling": diam_ceiling,
        "guaranteed_gap": formula - diam_ceiling,
        "gap": None if f_bound is None or diam is None else f_bound - diam,
        "beta_set": list(beta.values),
    }


def conjectures(n_min: int, n_max: int, cache_dir: str | Path | None = None) -> dict[str, Any]:
    """Sweep every tree for the open questions about Algorithm A.

    Lists trees with beta_max != f(T), trees with more than one possible
    value, and any value below the exact diameter.
    """
    if n_max > 10:
        raise InfeasibleScale(f"n={n_max} is out of exhaustive range")
    per_n = []
    beta_ne_f, multi, below = [], [], []
    for n in range(n_min, n_max + 1):
        reports = tree_reports(n, cache_dir)
        for r in reports:
            entry = {"n": n, "edges": r.edges, "beta_set": r.beta_set, "f_bound": r.f_bound, "diameter": r.exact_diameter}
            if r.beta_max != r.f_bound:
                beta_ne_f.append(entry)
            if len(r.beta_set) >= 2:
                multi.append(entry)
            if any(b < r.exact_diameter for b in r.beta_set):
                below.append(entry)
        per_n.append(
            {
                "n": n,
                "trees": len(reports),
                "unique_beta": sum(1 for r in reports if len(r.beta_set) == 1),
                "beta_max_equals_f": sum(1 for r in reports if r.beta_max == r.f_bound),
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "per_n": per_n,
        "beta_max_differs_from_f": beta_ne_f,
        "multiple_beta_values": multi,
        "beta_below_diameter": below,
    }


def sort_report(
    t: TranspositionTree,
    p: Permutation,
    replay: list[tuple[int, int]] | None = None,
    cache_dir: str | Path | None = None,
) -> dict[str, Any]:
    """AK word for ``p`` next to f_T(p) and the exact distance."""
    if t.n > cayley.MAX_BFS_N:
        raise InfeasibleScale(f"n={t.n} exceeds {cayley.MAX_BFS_N}")
    trace = cayley.ak_sort(t, p)
    dist = cayley.distance(t, p, cache_dir=cache_dir)
    out: dict[str, Any] = {
        "tree": format_tree(t),
        "permutation": str(p),
        "cycles": p.cycle_notation(),
        "f_T": bounds.f_T(t, p),
        "inversions": inversions(p),
        "distance": dist,
        "ak_word": [list(e) for e in trace.edges_applied],
        "ak_kinds": [k.value for k in trace.edge_kinds],
        "ak_f_values": list(trace.f_values),
        "ak_length": trace.word_length,
        "ak_suboptimal": trace.word_length > dist,
    }
    if replay is not None:
        rep = cayley.replay_word(t, p, replay)
        out["replay"] = {
            "valid": rep.valid,
            "sorts": rep.sorts,
            "length": rep.word_length,
            "failed_at": rep.failed_at,
            "reason": rep.reason,
            "kinds": [s.kind.value if s.kind else None for s in rep.steps],
            "f_values": [s.f_value for s in rep.steps],
            "suboptimal": rep.valid and rep.word_length > dist,
        }
    return out
