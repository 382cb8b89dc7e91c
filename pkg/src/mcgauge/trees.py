"""Rooted trees: the pre-Lie basis, planar trees, and the flow coefficients.

Decorated rooted trees have unordered children; the canonical form sorts
children by encoding and tracks the Koszul sign of the sort, with the
usual graded collapse: a vertex with two identical children of odd total
degree is zero. Planar trees keep their child order and allow arity-0
vertices (bullets) next to bare leaves; they index the gauge-flow sum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .scalars import Generator, sort_with_koszul

# ---------------------------------------------------------------------------
# decorated rooted trees (children unordered)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecTree:
    """Canonical decorated rooted tree; build via :func:`make_node`."""

    deco: Generator
    children: tuple["DecTree", ...] = ()

    @property
    def weight(self) -> int:
        return self.deco.weight + sum(c.weight for c in self.children)

    @property
    def degree(self) -> int:
        return self.deco.degree + sum(c.degree for c in self.children)

    def encoding(self) -> str:
        if not self.children:
            return self.deco.name
        return self.deco.name + "(" + ",".join(c.encoding() for c in self.children) + ")"

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def vertices_preorder(self) -> list["DecTree"]:
        out = [self]
        for c in self.children:
            out.extend(c.vertices_preorder())
        return out

    def decorations_preorder(self) -> list[Generator]:
        return [v.deco for v in self.vertices_preorder()]


def make_node(deco: Generator, raw_children) -> tuple[DecTree | None, int]:
    """Sort already-canonical children into canonical order.

    Returns (tree, Koszul sign), or (None, 0) when two identical children
    of odd degree force the element to vanish.
    """
    kids = tuple(raw_children)
    if not kids:
        return DecTree(deco, ()), 1
    keys = [c.encoding() for c in kids]
    degs = [c.degree for c in kids]
    seen: dict[str, int] = {}
    for key, d in zip(keys, degs):
        if d & 1 and key in seen:
            return None, 0
        seen[key] = d
    _, sign = sort_with_koszul(keys, degs)
    ordered = tuple(sorted(kids, key=lambda c: c.encoding()))
    return DecTree(deco, ordered), sign


def tree_aut_order(t: DecTree) -> int:
    """Order of the automorphism group (iterated identical-sibling symmetries)."""
    total = 1
    for c in t.children:
        total *= tree_aut_order(c)
    run = 1
    for i, c in enumerate(t.children):
        if i and c == t.children[i - 1]:
            run += 1
        else:
            run = 1
        if run > 1:
            total *= run
    return total


# ---------------------------------------------------------------------------
# undecorated rooted-tree shapes (for the group-like inverse sum)
# ---------------------------------------------------------------------------

Shape = tuple  # nested sorted tuples


@lru_cache(maxsize=None)
def rooted_tree_shapes(n: int) -> tuple[Shape, ...]:
    """All rooted trees on n unlabeled vertices, children unordered."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return ((),)
    catalog: list[Shape] = []
    for size in range(1, n):
        catalog.extend(rooted_tree_shapes(size))
    sizes = [shape_size(s) for s in catalog]

    def multisets(budget: int, min_idx: int):
        # non-decreasing catalog indices avoid double counting
        if budget == 0:
            yield ()
            return
        for idx in range(min_idx, len(catalog)):
            if sizes[idx] > budget:
                continue
            for rest in multisets(budget - sizes[idx], idx):
                yield (catalog[idx],) + rest

    out = {tuple(sorted(kids)) for kids in multisets(n - 1, 0)}
    return tuple(sorted(out))


def shape_size(shape: Shape) -> int:
    return 1 + sum(shape_size(c) for c in shape)


def shape_aut_order(shape: Shape) -> int:
    total = 1
    for c in shape:
        total *= shape_aut_order(c)
    run = 1
    for i, c in enumerate(shape):
        run = run + 1 if i and c == shape[i - 1] else 1
        if run > 1:
            total *= run
    return total


def decorate_shape(shape: Shape, gen: Generator) -> DecTree:
    kids = [decorate_shape(c, gen) for c in shape]
    node, sign = make_node(gen, kids)
    assert node is not None and sign == 1  # same even decoration everywhere
    return node


# ---------------------------------------------------------------------------
# planar rooted trees (ordered children, arity 0 allowed, bare leaves)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarTree:
    """Planar rooted tree; ``children is None`` marks a bare leaf ``|``."""

    children: tuple["PlanarTree", ...] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def encoding(self) -> str:
        if self.is_leaf:
            return "|"
        return "v(" + ",".join(c.encoding() for c in self.children) + ")"

    def vertex_count(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(c.vertex_count() for c in self.children)

    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return sum(c.leaf_count() for c in self.children)

    def units(self) -> int:
        return self.vertex_count() + self.leaf_count()


LEAF = PlanarTree(None)


def corolla(m: int) -> PlanarTree:
    return PlanarTree(tuple(LEAF for _ in range(m)))


def flow_coefficient(tree: PlanarTree) -> int:
    """The positive integer attached to a planar tree in the gauge-flow sum.

    Bare edge: 1. Vertex of arity m over subtrees t_1..t_m: m! times the
    total vertex count times the product of the children's coefficients.
    """
    if tree.is_leaf:
        return 1
    out = math.factorial(len(tree.children)) * tree.vertex_count()
    for c in tree.children:
        out *= flow_coefficient(c)
    return out


@lru_cache(maxsize=None)
def planar_trees_with_units(units: int) -> tuple[PlanarTree, ...]:
    """All planar trees with exactly the given number of leaves + vertices."""
    if units < 1:
        return ()
    found: list[PlanarTree] = []
    if units == 1:
        found.append(LEAF)
        found.append(PlanarTree(()))  # the 0-corolla
        return tuple(found)

    def compositions(total: int, parts: int):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    budget = units - 1  # the root vertex spends one unit
    for arity in range(1, budget + 1):
        for combo in compositions(budget, arity):
            for kids in itertools.product(*(planar_trees_with_units(u) for u in combo)):
                found.append(PlanarTree(kids))
    return tuple(found)


def planar_trees_up_to(units: int) -> list[PlanarTree]:
    out: list[PlanarTree] = []
    for u in range(1, units + 1):
        out.extend(planar_trees_with_units(u))
    return out
