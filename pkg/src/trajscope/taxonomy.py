"""The fixed movement taxonomy and its legal axis combinations.

Two root behaviors, each with two subdivisions:

    Kinematic  -> Speed, Acceleration
    Geometric  -> Curvature, Indentation

A combination pairs two nodes for the outlier-score plane. Pairing a node
with itself or with its own parent/child is illegal, as is pairing a root
with the other root's child; that leaves the root-root pair plus all
leaf-leaf pairs: 7 combinations.

Axis assignment: when the two nodes come from different root families the
Geometric-family node takes the y axis; within one family the alphabetically
first node takes the x axis.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TaxonomyNode(str, Enum):
    GEOMETRIC = "geometric"
    KINEMATIC = "kinematic"
    SPEED = "speed"
    ACCELERATION = "acceleration"
    CURVATURE = "curvature"
    INDENTATION = "indentation"


PARENT: dict[TaxonomyNode, TaxonomyNode | None] = {
    TaxonomyNode.GEOMETRIC: None,
    TaxonomyNode.KINEMATIC: None,
    TaxonomyNode.SPEED: TaxonomyNode.KINEMATIC,
    TaxonomyNode.ACCELERATION: TaxonomyNode.KINEMATIC,
    TaxonomyNode.CURVATURE: TaxonomyNode.GEOMETRIC,
    TaxonomyNode.INDENTATION: TaxonomyNode.GEOMETRIC,
}


def family(node: TaxonomyNode) -> TaxonomyNode:
    """Root ancestor of a node (itself for roots)."""
    parent = PARENT[node]
    return node if parent is None else parent


def children(node: TaxonomyNode) -> tuple[TaxonomyNode, ...]:
    return tuple(n for n, p in PARENT.items() if p is node)


class CombinationError(ValueError):
    """Raised when two taxonomy nodes cannot form a legal combination."""


@dataclass(frozen=True)
class Combination:
    """An axis-assigned pair of taxonomy nodes; x_node scores plot on x."""
    x_node: TaxonomyNode
    y_node: TaxonomyNode

    @property
    def slug(self) -> str:
        """Serialized form: alphabetical, lowercase, hyphenated."""
        return "-".join(sorted((self.x_node.value, self.y_node.value)))

    def nodes(self) -> tuple[TaxonomyNode, TaxonomyNode]:
        return (self.x_node, self.y_node)


def _assign_axes(a: TaxonomyNode, b: TaxonomyNode) -> Combination:
    if family(a) is not family(b):
        geo, kin = (a, b) if family(a) is TaxonomyNode.GEOMETRIC else (b, a)
        return Combination(x_node=kin, y_node=geo)
    first, second = sorted((a, b), key=lambda n: n.value)
    return Combination(x_node=first, y_node=second)


def validate_combination(a: TaxonomyNode, b: TaxonomyNode) -> Combination:
    """Canonical Combination for a node pair, or CombinationError."""
    if a is b:
        raise CombinationError(f"cannot pair {a.value} with itself")
    if PARENT[a] is b or PARENT[b] is a:
        raise CombinationError(
            f"cannot pair {a.value} with {b.value}: a subdivision may not be "
            "combined with its own parent")
    if (PARENT[a] is None) != (PARENT[b] is None):
        raise CombinationError(
            f"cannot pair {a.value} with {b.value}: a root behavior may not be "
            "combined with the other root's subdivision")
    return _assign_axes(a, b)


_VALID_PAIRS: tuple[tuple[TaxonomyNode, TaxonomyNode], ...] = (
    (TaxonomyNode.GEOMETRIC, TaxonomyNode.KINEMATIC),
    (TaxonomyNode.ACCELERATION, TaxonomyNode.SPEED),
    (TaxonomyNode.CURVATURE, TaxonomyNode.INDENTATION),
    (TaxonomyNode.CURVATURE, TaxonomyNode.SPEED),
    (TaxonomyNode.INDENTATION, TaxonomyNode.SPEED),
    (TaxonomyNode.ACCELERATION, TaxonomyNode.CURVATURE),
    (TaxonomyNode.ACCELERATION, TaxonomyNode.INDENTATION),
)


def valid_combinations() -> list[Combination]:
    """The 7 legal combinations, in canonical presentation order."""
    return [validate_combination(a, b) for a, b in _VALID_PAIRS]


def combination_from_slug(slug: str) -> Combination:
    """Parse a serialized combination like 'curvature-indentation'."""
    parts = slug.strip().lower().split("-")
    if len(parts) != 2:
        raise CombinationError(f"malformed combination string: {slug!r}")
    try:
        a, b = TaxonomyNode(parts[0]), TaxonomyNode(parts[1])
    except ValueError:
        raise CombinationError(f"unknown taxonomy node in: {slug!r}") from None
    return validate_combination(a, b)
