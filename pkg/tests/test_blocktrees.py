from __future__ import annotations

import pytest

from mcgauge.blocktrees import (
    LabTree,
    PaPRT,
    enumerate_laprt,
    enumerate_paprt,
    validate_laprt,
    validate_paprt,
)
from mcgauge.trees import LEAF, PlanarTree

BULLET = PlanarTree(())


def figure_paprt():
    # root vertex with children (subtree, leaf, subtree); left subtree has a
    # bullet between two leaves; right subtree chains into a binary vertex
    left = PlanarTree((LEAF, BULLET, LEAF))
    lower = PlanarTree((LEAF, LEAF))
    right = PlanarTree((LEAF, lower))
    tree = PlanarTree((left, LEAF, right))
    # preorder vertex ids: root=0, left=1, bullet=2, right=3, lower=4
    blocks = (frozenset({0}), frozenset({1}), frozenset({2}), frozenset({3, 4}))
    return PaPRT(tree, blocks)


def test_figure_paprt_is_valid():
    assert validate_paprt(figure_paprt()).ok


def test_paprt_empty_block_reports_first_bullet():
    p = figure_paprt()
    mutated = PaPRT(p.tree, p.blocks + (frozenset(),))
    report = validate_paprt(mutated)
    assert not report.ok
    assert any("empty" in v for v in report.violations)


def test_paprt_arity_one_vertex_rejected():
    # chain: root with a single arity-1 child vertex over a leaf
    unary = PlanarTree((LEAF,))
    tree = PlanarTree((unary, LEAF))
    blocks = (frozenset({0}), frozenset({1}))
    report = validate_paprt(PaPRT(tree, blocks))
    assert not report.ok
    assert any("arity 1" in v for v in report.violations)


def test_paprt_zero_corolla_inside_big_block_rejected():
    left = PlanarTree((LEAF, BULLET, LEAF))
    tree = PlanarTree((left, LEAF))
    blocks = (frozenset({0}), frozenset({1, 2}))  # bullet glued to its parent
    report = validate_paprt(PaPRT(tree, blocks))
    assert not report.ok


def test_paprt_disconnected_block_rejected():
    left = PlanarTree((LEAF, LEAF))
    right = PlanarTree((LEAF, LEAF))
    tree = PlanarTree((left, right))
    blocks = (frozenset({0}), frozenset({1, 2}))  # siblings without their parent
    report = validate_paprt(PaPRT(tree, blocks))
    assert not report.ok
    assert any("sub-tree" in v for v in report.violations)


def test_paprt_missing_cover_rejected():
    p = figure_paprt()
    report = validate_paprt(PaPRT(p.tree, p.blocks[:-1]))
    assert not report.ok


def test_enumerate_paprt_small():
    found = enumerate_paprt(3)
    assert all(validate_paprt(p).ok for p in found)
    # the 2-leaf corolla admits exactly one partition; the lone bullet too
    corolla2 = [p for p in found if p.tree == PlanarTree((LEAF, LEAF))]
    assert len(corolla2) == 1
    bullets = [p for p in found if p.tree == BULLET]
    assert len(bullets) == 1


def figure_laprt():
    v4 = LabTree(((2, 1),), ("01", "0"))
    v10 = LabTree((), ())
    v5 = LabTree(((2, 1, 3),), ("01", "0", v10))
    return LabTree(((1, 2, 3, 4), (2, 3, 4, 1)), ("01", "01", v4, v5))


def test_figure_laprt_is_valid():
    assert validate_laprt(figure_laprt()).ok


def test_laprt_string_length_must_match_01_count():
    bad = LabTree(((2, 1),), ("01", "01"))  # a = 2 but one permutation
    report = validate_laprt(bad)
    assert not report.ok
    assert any("string length" in v for v in report.violations)


def test_laprt_equal_consecutive_permutations_rejected():
    bad = LabTree(((1, 2), (1, 2)), ("01", "01"))
    report = validate_laprt(bad)
    assert not report.ok
    assert any("consecutive" in v for v in report.violations)


def test_laprt_leaf_order_enforced():
    bad = LabTree(((2, 1),), ("0", "01"))
    report = validate_laprt(bad)
    assert not report.ok
    assert any("01-leaves" in v or "inputs" in v for v in report.violations)


def test_laprt_arity_one_rejected():
    bad = LabTree(((1,),), ("01",))
    report = validate_laprt(bad)
    assert not report.ok


def test_laprt_monotone_edge_condition():
    sub = LabTree((), ())
    # m=3, a=1, b=0, c=2: positions 2,3 are edges; sigma0 must place them in order
    good = LabTree(((1, 2, 3),), ("01", sub, sub))
    assert validate_laprt(good).ok
    bad = LabTree(((1, 3, 2),), ("01", sub, sub))
    assert not validate_laprt(bad).ok


def test_enumerate_laprt_weight_two_census():
    # derived by hand from the four vertex conditions
    trees = enumerate_laprt(2)
    encs = {t.encoding() for t in trees}
    assert "v[]()" in encs  # the 0-corolla
    assert "v[12;21](01,01)" in encs
    assert "v[21](01,0)" in encs
    assert "v[12](01,v[]())" in encs
    assert len(trees) == 4
    assert all(validate_laprt(t).ok for t in trees)


def test_enumerate_laprt_all_valid_weight_three():
    trees = enumerate_laprt(3)
    assert all(validate_laprt(t).ok for t in trees)
    assert len(trees) > 4
    assert len({t.encoding() for t in trees}) == len(trees)
