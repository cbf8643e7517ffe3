"""Tree-rewriting moves that strictly increase the exponential second Zagreb value.

Each move checks its hypotheses literally and raises PreconditionViolated
outside them: the strict-increase guarantee is only claimed under those
hypotheses, and applying a move silently outside them would contaminate the
property tests that check the guarantee instead of assuming it.

Every move returns a ``MoveReceipt`` carrying the before and after trees, the
exact term map of the value difference, and the comparison verdict computed
from the difference (never assumed).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import AlreadyBalanced, NotADoubleStar, PreconditionViolated
from .indices import BigExpValue, Ordering, compare, exp_vdb_index
from .trees import Tree

__all__ = [
    "MoveReceipt",
    "ShapeTag",
    "lemma_distance_move",
    "pendant_shift_move",
    "balance_move",
    "classify_shape",
    "double_star_arms",
]


@dataclass(frozen=True)
class MoveReceipt:
    """Audit record of one move: trees, exact value delta, and verdict."""

    move: str
    before: Tree
    after: Tree
    delta: BigExpValue
    ordering: Ordering
    params: dict

    @property
    def strict_increase(self) -> bool:
        return self.ordering is Ordering.GREATER

    def to_json_dict(self) -> dict:
        return {
            "move": self.move,
            "before": self.before.canonical_key,
            "after": self.after.canonical_key,
            "delta": self.delta.to_json_dict(),
            "strict_increase": self.ordering.value,
            "params": dict(self.params),
        }


def _receipt(move: str, before: Tree, after: Tree, params: dict) -> MoveReceipt:
    if after.n != before.n:
        raise PreconditionViolated("move changed the vertex count")
    val_before = exp_vdb_index(before, "M2")
    val_after = exp_vdb_index(after, "M2")
    return MoveReceipt(
        move=move,
        before=before,
        after=after,
        delta=val_after - val_before,
        ordering=compare(val_after, val_before),
        params=params,
    )


def lemma_distance_move(t: Tree, u: int, v: int, w: int) -> MoveReceipt:
    """Reattach every neighbor of w except v onto v, along a path u-v-w where
    u has maximum degree and w is not pendant.

    Afterwards deg(v) = deg(v) + deg(w) - 1 and w is pendant on v.  Under the
    hypotheses the exponential second Zagreb value strictly increases.
    """
    deg = t.degrees
    n = t.n
    if len({u, v, w}) != 3 or not all(0 <= x < n for x in (u, v, w)):
        raise PreconditionViolated("u, v, w must be three distinct vertices")
    if deg[u] != t.max_degree:
        raise PreconditionViolated(f"vertex {u} does not have maximum degree")
    if v not in t.adjacency[u] or w not in t.adjacency[v]:
        raise PreconditionViolated(f"{u}-{v}-{w} is not a path")
    if deg[w] < 2:
        raise PreconditionViolated(f"vertex {w} is pendant")
    moved = [x for x in t.adjacency[w] if x != v]
    after = t.replace_edges(
        remove=[(w, x) for x in moved],
        add=[(v, x) for x in moved],
    )
    return _receipt(
        "lemma_distance_move", t, after,
        {"u": u, "v": v, "w": w, "moved": moved},
    )


def pendant_shift_move(t: Tree, u1: int, u2: int) -> MoveReceipt:
    """Move one pendant leaf from u2 to u1, where u1 and u2 share a
    maximum-degree neighbor and carry only pendants otherwise.

    Requires d1 >= d2 >= 1, with d1 and d2 the pendant counts of u1 and u2.
    """
    n = t.n
    if u1 == u2 or not (0 <= u1 < n and 0 <= u2 < n):
        raise PreconditionViolated("u1 and u2 must be two distinct vertices")
    common = set(t.adjacency[u1]) & set(t.adjacency[u2])
    if not common:
        raise PreconditionViolated("u1 and u2 share no neighbor")
    (u,) = common  # a tree admits at most one common neighbor
    if t.degrees[u] != t.max_degree:
        raise PreconditionViolated("shared neighbor does not have maximum degree")
    side1 = [x for x in t.adjacency[u1] if x != u]
    side2 = [x for x in t.adjacency[u2] if x != u]
    if any(t.degrees[x] != 1 for x in side1 + side2):
        raise PreconditionViolated("side neighbors of u1/u2 must all be pendant")
    d1, d2 = len(side1), len(side2)
    if d2 < 1:
        raise PreconditionViolated("u2 has no pendant to move (d2 = 0)")
    if d1 < d2:
        raise PreconditionViolated(f"need d1 >= d2, got d1={d1} d2={d2}")
    leaf = min(side2)
    after = t.replace_edges(remove=[(u2, leaf)], add=[(u1, leaf)])
    return _receipt(
        "pendant_shift_move", t, after,
        {"u": u, "u1": u1, "u2": u2, "leaf": leaf, "d1": d1, "d2": d2},
    )


def double_star_arms(t: Tree) -> tuple[int, int] | None:
    """(x, y) with x <= y if t is the double star with those arm sizes, else None."""
    if t.n < 4:
        return None
    non_pendant = [v for v, d in enumerate(t.degrees) if d > 1]
    if len(non_pendant) != 2:
        return None
    a, b = non_pendant
    if b not in t.adjacency[a]:
        return None
    x, y = t.degrees[a] - 1, t.degrees[b] - 1
    return (x, y) if x <= y else (y, x)


def balance_move(t: Tree) -> MoveReceipt:
    """Move one pendant from the heavier center of a double star to the lighter.

    Turns S(x, y) into S(x+1, y-1); requires y - x >= 2.
    """
    arms = double_star_arms(t)
    if arms is None:
        raise NotADoubleStar("tree is not a double star")
    x, y = arms
    if y - x < 2:
        raise AlreadyBalanced(f"arm sizes ({x}, {y}) already differ by at most 1")
    non_pendant = [v for v, d in enumerate(t.degrees) if d > 1]
    heavy = max(non_pendant, key=lambda v: t.degrees[v])
    light = min(non_pendant, key=lambda v: t.degrees[v])
    leaf = min(q for q in t.adjacency[heavy] if t.degrees[q] == 1)
    after = t.replace_edges(remove=[(heavy, leaf)], add=[(light, leaf)])
    return _receipt(
        "balance_move", t, after,
        {"x": x, "y": y, "heavy": heavy, "light": light, "leaf": leaf},
    )


class ShapeTag(Enum):
    PATH = "PATH"
    STAR = "STAR"
    DOUBLE_STAR = "DOUBLE_STAR"
    FIG3 = "FIG3"
    OTHER = "OTHER"


def classify_shape(t: Tree) -> ShapeTag:
    """Deterministic shape tag.

    DOUBLE_STAR: exactly two non-pendant vertices, adjacent (P4 lands here as
    the degenerate balanced case).  STAR: one non-pendant vertex.  PATH: all
    degrees at most 2.  FIG3: some maximum-degree vertex has every pendant
    within distance 2 (the depth-two family), and none of the above.
    """
    deg = t.degrees
    if t.n == 2:
        return ShapeTag.PATH
    if double_star_arms(t) is not None:
        return ShapeTag.DOUBLE_STAR
    non_pendant = sum(1 for d in deg if d > 1)
    if non_pendant == 1:
        return ShapeTag.STAR
    if max(deg) <= 2:
        return ShapeTag.PATH
    pendants = [v for v, d in enumerate(deg) if d == 1]
    maxdeg = max(deg)
    for u in range(t.n):
        if deg[u] != maxdeg:
            continue
        near = set(t.adjacency[u]) | {u}
        for v in t.adjacency[u]:
            near.update(t.adjacency[v])
        if all(p in near for p in pendants):
            return ShapeTag.FIG3
    return ShapeTag.OTHER
