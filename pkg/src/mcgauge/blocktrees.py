"""Partitioned and permutation-labelled planar rooted trees.

These two families carry the combinatorics of the higher gauge formulas:
block-partitioned trees index the higher composition products (whose
rational coefficients live in external structure constants and are out of
scope here), and permutation-labelled trees index the characteristic-free
gauge-equivalence sum, where every coefficient is 1. This module only
validates and enumerates; no algebra is evaluated on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .trees import PlanarTree

# ---------------------------------------------------------------------------
# planarly partitioned rooted trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PaPRT:
    """A planar rooted tree plus a partition of its vertices into blocks.

    Vertices are indexed in preorder (leaves do not count); ``blocks``
    lists vertex-index sets. Intra-block trees are unordered: the stored
    planar order is canonical-by-convention inside blocks.
    """

    tree: PlanarTree
    blocks: tuple[frozenset[int], ...]

    def encoding(self) -> str:
        blocks = "|".join(
            "{" + ",".join(str(v) for v in sorted(b)) + "}" for b in self.blocks
        )
        return self.tree.encoding() + " " + blocks


def _vertex_arities_and_parents(tree: PlanarTree) -> tuple[list[int], list[int | None]]:
    """Preorder vertex arities and parent-vertex indices (None for the root)."""
    arities: list[int] = []
    parents: list[int | None] = []

    def walk(node: PlanarTree, parent: int | None) -> None:
        if node.is_leaf:
            return
        idx = len(arities)
        arities.append(len(node.children))
        parents.append(parent)
        for child in node.children:
            walk(child, idx)

    walk(tree, None)
    return arities, parents


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_paprt(p: PaPRT) -> ValidationReport:
    """Check the three block conditions; returns every violation found."""
    if p.tree.is_leaf:
        return ValidationReport(False, ("tree must contain at least one vertex",))
    arities, parents = _vertex_arities_and_parents(p.tree)
    nv = len(arities)
    bad: list[str] = []

    seen: set[int] = set()
    for i, block in enumerate(p.blocks):
        if not block:
            bad.append(f"block {i}: empty (each block contains at least one vertex)")
            continue
        if block & seen:
            bad.append(f"block {i}: overlaps another block")
        seen |= block
        if any(v < 0 or v >= nv for v in block):
            bad.append(f"block {i}: vertex index out of range")
            continue
        if len(block) == 1:
            v = next(iter(block))
            if arities[v] not in (0,) and arities[v] < 2:
                bad.append(
                    f"block {i}: single vertex of arity {arities[v]} is neither a"
                    " 0-corolla nor arity >= 2"
                )
        else:
            low = [v for v in block if arities[v] < 2]
            if low:
                bad.append(
                    f"block {i}: vertex {low[0]} has arity {arities[low[0]]} < 2"
                )
        # connectivity: all but one member must have their parent inside
        roots = [v for v in block if parents[v] not in block]
        if len(roots) > 1:
            bad.append(f"block {i}: not a sub-tree (disconnected)")
    if seen != set(range(nv)):
        bad.append("blocks do not cover every vertex")
    return ValidationReport(not bad, tuple(bad))


def _paprt_trees(max_units: int) -> list[PlanarTree]:
    """Planar trees with vertex arities in {0, 2, 3, ...} (no arity-1)."""
    from .trees import planar_trees_up_to

    def no_unary(node: PlanarTree) -> bool:
        if node.is_leaf:
            return True
        if len(node.children) == 1:
            return False
        return all(no_unary(c) for c in node.children)

    return [t for t in planar_trees_up_to(max_units) if not t.is_leaf and no_unary(t)]


def enumerate_paprt(max_units: int) -> list[PaPRT]:
    """All valid block-partitioned trees with leaves + vertices <= max_units.

    Connected blocks correspond to subsets of parent edges to cut, so the
    sweep is exhaustive; bullet conditions are then filtered.
    """
    out: list[PaPRT] = []
    for tree in _paprt_trees(max_units):
        arities, parents = _vertex_arities_and_parents(tree)
        nv = len(arities)
        cut_candidates = [v for v in range(nv) if parents[v] is not None]
        for r in range(len(cut_candidates) + 1):
            for cuts in itertools.combinations(cut_candidates, r):
                cutset = set(cuts)
                block_of = list(range(nv))

                def find(v: int) -> int:
                    while block_of[v] != v:
                        v = block_of[v]
                    return v

                for v in range(nv):
                    if v not in cutset and parents[v] is not None:
                        block_of[find(v)] = find(parents[v])
                groups: dict[int, set[int]] = {}
                for v in range(nv):
                    groups.setdefault(find(v), set()).add(v)
                blocks = tuple(
                    frozenset(groups[k]) for k in sorted(groups, key=lambda k: min(groups[k]))
                )
                cand = PaPRT(tree, blocks)
                if validate_paprt(cand).ok:
                    out.append(cand)
    return out


# ---------------------------------------------------------------------------
# labelled planar rooted trees
# ---------------------------------------------------------------------------

Perm = tuple[int, ...]  # one-line notation on {1..m}
LabChild = Union[str, "LabTree"]  # "01" / "0" leaves, or a subtree


@dataclass(frozen=True)
class LabTree:
    """Planar tree with 01/0 leaf labels and permutation-string vertex labels."""

    perms: tuple[Perm, ...]
    children: tuple[LabChild, ...]

    def encoding(self) -> str:
        label = ";".join("".join(str(i) for i in p) for p in self.perms)
        kids = ",".join(c if isinstance(c, str) else c.encoding() for c in self.children)
        return f"v[{label}]({kids})"

    def weight(self) -> int:
        w = 1 if not self.children else 0  # a 0-corolla is one curvature input
        for c in self.children:
            if isinstance(c, str):
                w += 1
            else:
                w += c.weight()
        return w


def _leaf_pattern(children: tuple[LabChild, ...]) -> tuple[int, int, int] | None:
    """Split children as 01-leaves, 0-leaves, then subtrees; None if misordered."""
    a = b = c = 0
    phase = 0
    for child in children:
        kind = child if isinstance(child, str) else "sub"
        if kind == "01":
            if phase > 0:
                return None
            a += 1
        elif kind == "0":
            if phase > 1:
                return None
            phase = 1
            b += 1
        elif kind == "sub":
            phase = 2
            c += 1
        else:
            return None
    return a, b, c


def _check_vertex(t: LabTree, bad: list[str], path: str) -> None:
    m = len(t.children)
    if m == 1:
        bad.append(f"{path}: arity 1 is forbidden")
        return
    if m == 0:
        if t.perms:
            bad.append(f"{path}: a 0-corolla carries no permutation string")
        return
    pattern = _leaf_pattern(t.children)
    if pattern is None:
        bad.append(f"{path}: inputs must come as 01-leaves, then 0-leaves, then edges")
        return
    a, b, c = pattern
    if a < 1:
        bad.append(f"{path}: at least one 01-leaf is required")
        return
    if len(t.perms) != a:
        bad.append(f"{path}: string length {len(t.perms)} != number of 01-leaves {a}")
        return
    for s in t.perms:
        if sorted(s) != list(range(1, m + 1)):
            bad.append(f"{path}: {s} is not a permutation of 1..{m}")
            return
    for i in range(len(t.perms) - 1):
        if t.perms[i] == t.perms[i + 1]:
            bad.append(f"{path}: consecutive permutations must differ (position {i})")
            return
    last = t.perms[a - 1]
    inv = {val: pos + 1 for pos, val in enumerate(last)}
    if c >= 1:
        edge_positions = [inv[k] for k in range(a + b + 1, m + 1)]
        if edge_positions != sorted(edge_positions):
            bad.append(f"{path}: internal-edge preimages under the last permutation must increase")
            return
    taken: set[int] = set()
    blocks: list[set[int]] = []
    for i, sigma in enumerate(t.perms):
        inv_i = {val: pos + 1 for pos, val in enumerate(sigma)}
        cut = inv_i[i + 1]
        image = {sigma[k - 1] for k in range(1, cut)}
        if not image <= set(range(a + 1, a + b + 1)):
            bad.append(f"{path}: I_{i} escapes the 0-leaf range")
            return
        blocks.append(image - taken)
        taken |= image
    if taken != set(range(a + 1, a + b + 1)):
        bad.append(f"{path}: J blocks do not cover the 0-leaves")
        return
    floor = 0
    for i, blk in enumerate(blocks):
        if not blk:
            continue
        if min(blk) <= floor:
            bad.append(f"{path}: J blocks are not increasing")
            return
        floor = max(blk)


def validate_laprt(t: LabTree) -> ValidationReport:
    bad: list[str] = []

    def walk(node: LabTree, path: str) -> None:
        _check_vertex(node, bad, path)
        sub = 0
        for child in node.children:
            if isinstance(child, LabTree):
                walk(child, f"{path}.{sub}")
                sub += 1

    walk(t, "root")
    return ValidationReport(not bad, tuple(bad))


def _valid_strings(m: int, a: int, b: int) -> list[tuple[Perm, ...]]:
    """All permutation strings passing the vertex conditions for (m, a, b)."""
    out: list[tuple[Perm, ...]] = []
    perms = [tuple(p) for p in itertools.permutations(range(1, m + 1))]
    probe_children: tuple[LabChild, ...] = (
        ("01",) * a + ("0",) * b + tuple(LabTree((), ()) for _ in range(m - a - b))
    )
    for string in itertools.product(perms, repeat=a):
        cand = LabTree(tuple(string), probe_children)
        ok = True
        bad: list[str] = []
        _check_vertex(cand, bad, "probe")
        if not bad:
            out.append(tuple(string))
    return out


@lru_cache(maxsize=None)
def _labtrees_with_weight(weight: int) -> tuple[LabTree, ...]:
    if weight < 1:
        return ()
    found: list[LabTree] = []
    if weight >= 1:
        found.append(LabTree((), ()))  # the 0-corolla, weight 1
    if weight == 1:
        return tuple(f for f in found if f.weight() == weight)
    out: list[LabTree] = [f for f in found if f.weight() == weight]
    # root vertex of arity m = a + b + c with a >= 1
    for a in range(1, weight + 1):
        for b in range(0, weight - a + 1):
            remaining = weight - a - b
            for c in range(0, remaining + 1) if remaining >= 0 else ():
                m = a + b + c
                if m < 2:
                    continue
                strings = _valid_strings(m, a, b)
                if not strings:
                    continue
                for child_weights in _compositions(remaining, c):
                    for kids in itertools.product(
                        *(_labtrees_with_weight(w) for w in child_weights)
                    ):
                        children: tuple[LabChild, ...] = (
                            ("01",) * a + ("0",) * b + tuple(kids)
                        )
                        for string in strings:
                            out.append(LabTree(tuple(string), children))
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_laprt(max_weight: int) -> list[LabTree]:
    """All valid labelled trees whose input weight is at most the bound.

    The weight counts the algebra inputs of the gauge-equivalence term:
    one per 01-leaf, one per 0-leaf, one per 0-corolla.
    """
    out: list[LabTree] = []
    for w in range(1, max_weight + 1):
        out.extend(_labtrees_with_weight(w))
    return sorted(out, key=lambda t: (t.weight(), t.encoding()))
