"""Counting geometric classes of tower points from the critical-plane state machine.

A point is summarized by the tangency hyperplanes through it (the vertical
hyperplane is always present and left implicit).  A direction type is the
set of those hyperplanes that contain the direction; prolonging along it
keeps the descendants of the member tangency planes and adds a fresh plane
when the direction is vertical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

__all__ = [
    "Plane",
    "PlaneState",
    "DirectionType",
    "ClassNode",
    "COUNT_LABEL",
    "successor_state",
    "direction_types",
    "class_tree",
    "enumerate_classes",
    "planar_word_count",
    "is_extrapolated",
    "to_dot",
]

COUNT_LABEL = "geometric class counts (orbit lower bounds)"
VERTICAL = "V"


@dataclass(frozen=True, order=True)
class Plane:
    """A tangency hyperplane: the level it was born at and a lineage tag."""

    birth_level: int
    lineage: str


@dataclass(frozen=True)
class PlaneState:
    tangency: tuple
    dim: int
    level: int = 1

    def __post_init__(self):
        if len(self.tangency) > self.dim - 1:
            raise ValueError(f"{len(self.tangency)} tangency planes exceed n-1={self.dim - 1}")
        if len(set(self.tangency)) != len(self.tangency):
            raise ValueError("repeated tangency plane")

    @classmethod
    def initial(cls, dim: int) -> "PlaneState":
        return cls((), dim, 1)


@dataclass(frozen=True)
class DirectionType:
    membership: frozenset

    @property
    def vertical(self) -> bool:
        return VERTICAL in self.membership

    @property
    def tangency(self) -> tuple:
        return tuple(sorted(p for p in self.membership if p != VERTICAL))

    @property
    def letter(self) -> str:
        if not self.membership:
            return "R"
        if self.vertical:
            return "L" if len(self.membership) > 1 else "V"
        return "T"

    def label(self) -> str:
        parts = ["V"] if self.vertical else []
        parts += [f"t{p.birth_level}{p.lineage}" for p in self.tangency]
        return self.letter + ("(" + ",".join(parts) + ")" if len(parts) > 1 or self.letter == "T" else "")


def direction_types(s: PlaneState) -> list:
    """All memberships of size at most n-1 among the vertical and tangency planes."""
    pool = [VERTICAL] + sorted(s.tangency)
    out = []
    for size in range(0, min(s.dim - 1, len(pool)) + 1):
        for combo in itertools.combinations(pool, size):
            out.append(DirectionType(frozenset(combo)))
    return out


def successor_state(s: PlaneState, d: DirectionType) -> PlaneState:
    bad = set(d.tangency) - set(s.tangency)
    if bad or len(d.membership) > s.dim - 1:
        raise ValueError("direction type is not valid for this state")
    nxt = s.level + 1
    planes = [Plane(p.birth_level, p.lineage + "'") for p in d.tangency]
    if d.vertical:
        planes.append(Plane(nxt, ""))
    return PlaneState(tuple(sorted(planes)), s.dim, nxt)


@dataclass(frozen=True)
class ClassNode:
    word: str
    state: PlaneState
    path: tuple = ()

    @property
    def level(self) -> int:
        return len(self.word)


def class_tree(n: int, depth: int) -> list:
    """Nodes of the class tree, grouped by level (``result[k - 1]`` is level k)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if n < 2:
        raise ValueError("dimension must be at least 2")
    levels = [[ClassNode("R", PlaneState.initial(n))]]
    for _ in range(depth - 1):
        nxt = []
        for node in levels[-1]:
            for d in direction_types(node.state):
                nxt.append(ClassNode(node.word + d.letter, successor_state(node.state, d),
                                     node.path + (d.label(),)))
        levels.append(nxt)
    return levels


def enumerate_classes(n: int, depth: int) -> tuple:
    """Number of tree nodes at levels 1..depth."""
    return tuple(len(lv) for lv in class_tree(n, depth))


def is_extrapolated(n: int) -> bool:
    return n >= 4


def planar_word_count(k: int) -> int:
    """Valid RVT words of length ``k``.

    ``a`` counts all words and ``t`` those ending in V or T: R and V may
    follow anything, T only follows V or T.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a, t = 1, 0
    for _ in range(k - 1):
        a, t = 2 * a + t, a + t
    return a


def _node_id(path) -> str:
    raw = "_".join(path) if path else "root"
    return "n_" + "".join(ch if ch.isalnum() or ch == "_" else "p" for ch in raw)


def to_dot(n: int, depth: int) -> str:
    lines = ["digraph classes {", "  rankdir=TB;"]
    for lv in class_tree(n, depth):
        for node in lv:
            lines.append(f'  {_node_id(node.path)} [label="{node.word}"];')
            if node.path:
                lines.append(f'  {_node_id(node.path[:-1])} -> {_node_id(node.path)} '
                             f'[label="{node.path[-1]}"];')
    lines.append("}")
    return "\n".join(lines)
