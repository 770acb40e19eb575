"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CayleyDiamError(Exception):
    pass


class PermutationError(CayleyDiamError, ValueError):
    pass


class SizeMismatch(CayleyDiamError, ValueError):
    pass


class TreeError(CayleyDiamError, ValueError):
    pass


class CycleDetected(TreeError):
    pass


class Disconnected(TreeError):
    pass


class BadLabel(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class NotALeaf(TreeError):
    pass


class NotAStar(TreeError):
    pass


class InfeasibleScale(CayleyDiamError):
    """Requested computation exceeds the exhaustive-search limits."""


class NoAdmissibleEdge(CayleyDiamError, RuntimeError):
    """No edge is admissible for a non-identity marker configuration.

    Unreachable for valid trees.
    """
