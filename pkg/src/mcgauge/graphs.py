"""Connected directed simple acyclic graphs and their leveled refinements.

Graphs are stored with vertices 0..n-1 and edges (a, b) meaning "a sits
above b": every edge is oriented downward, there is at most one edge per
unordered vertex pair, the digraph is acyclic, and the underlying graph
is connected. The text encoding is 1-based: ``"3; e(2,1), e(3,1)"``.

Canonical labelling is exhaustive over structure-compatible relabellings
(invariant classes first, then all within-class permutations), which is
exact at desk scale (|g| <= 8 by default). Canonicalization of decorated
graphs also yields the Koszul sign of the relabelling and the order of
the decoration-preserving automorphism group; a graph whose automorphism
flips two odd decorations is reported as zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .scalars import BoundExceededError, Generator, koszul_sign

Edge = tuple[int, int]

DEFAULT_AUT_BOUND = 8
DEFAULT_ENUM_BOUND = 6


class GraphInvariantError(ValueError):
    """Input is not a connected directed simple acyclic graph."""


# ---------------------------------------------------------------------------
# validation helpers
# ---------------------------------------------------------------------------


def _check_simple(n: int, edges: tuple[Edge, ...]) -> None:
    pairs = set()
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise GraphInvariantError(f"bad edge ({a},{b}) on {n} vertices")
        key = frozenset((a, b))
        if key in pairs:
            raise GraphInvariantError(f"multiple edges between {a} and {b}")
        pairs.add(key)


def is_connected(n: int, edges: tuple[Edge, ...]) -> bool:
    if n == 0:
        return False
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


def is_acyclic(n: int, edges: tuple[Edge, ...]) -> bool:
    out = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        out[a].append(b)
        indeg[b] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for u in out[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    return seen == n


def validate_graph(n: int, edges: tuple[Edge, ...]) -> None:
    if n < 1:
        raise GraphInvariantError("graphs need at least one vertex")
    _check_simple(n, edges)
    if not is_connected(n, edges):
        raise GraphInvariantError("graph is not connected")
    if not is_acyclic(n, edges):
        raise GraphInvariantError("graph is not acyclic")


# ---------------------------------------------------------------------------
# the basis objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirSimpleGraph:
    """Canonical connected directed simple acyclic graph, optionally decorated.

    Instances are produced by :func:`canonical_graph`; building one directly
    bypasses canonicalization and is only appropriate for already-canonical
    data (e.g. literals in tests).
    """

    n: int
    edges: tuple[Edge, ...]
    decos: tuple[Generator, ...] | None = None

    @property
    def weight(self) -> int:
        if self.decos is None:
            return self.n
        return sum(g.weight for g in self.decos)

    @property
    def degree(self) -> int:
        if self.decos is None:
            return 0
        return sum(g.degree for g in self.decos)

    def encoding(self) -> str:
        head = f"{self.n}; " + ", ".join(f"e({a + 1},{b + 1})" for a, b in self.edges)
        if not self.edges:
            head = f"{self.n};"
        if self.decos is None:
            return head
        return head + " [" + ",".join(g.name for g in self.decos) + "]"

    def out_degrees(self) -> list[int]:
        out = [0] * self.n
        for a, _ in self.edges:
            out[a] += 1
        return out

    def in_degrees(self) -> list[int]:
        ind = [0] * self.n
        for _, b in self.edges:
            ind[b] += 1
        return ind

    def is_rooted_tree(self) -> bool:
        """Exactly one sink and out-degree <= 1 everywhere: grafting trees."""
        if len(self.edges) != self.n - 1:
            return False
        out = self.out_degrees()
        return all(d <= 1 for d in out) and out.count(0) == 1

    def is_ladder(self) -> bool:
        return self.is_rooted_tree() and all(d <= 1 for d in self.in_degrees())


@dataclass(frozen=True)
class LeveledGraph:
    """A directed simple graph with a strict leveling and an optional mark.

    Edges go from a strictly higher level to a strictly lower one (level
    skipping allowed, intra-level edges impossible). The mark singles out
    one vertex that automorphisms must fix.
    """

    n: int
    edges: tuple[Edge, ...]
    levels: tuple[int, ...]
    marked: int | None = None

    @property
    def weight(self) -> int:
        return self.n

    @property
    def degree(self) -> int:
        return 0

    def encoding(self) -> str:
        head = f"{self.n}; " + ", ".join(f"e({a + 1},{b + 1})" for a, b in self.edges)
        if not self.edges:
            head = f"{self.n};"
        lev = " lv[" + ",".join(str(l) for l in self.levels) + "]"
        mark = f" m{self.marked + 1}" if self.marked is not None else ""
        return head + lev + mark

    def underlying(self) -> DirSimpleGraph:
        g, _sign, _aut = canonical_graph(self.n, self.edges)
        return g

    def vertices_on(self, level: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.levels[v] == level)


def validate_leveled(n: int, edges: tuple[Edge, ...], levels: tuple[int, ...]) -> None:
    validate_graph(n, edges)
    if len(levels) != n:
        raise GraphInvariantError("level map must cover every vertex")
    for a, b in edges:
        if levels[a] <= levels[b]:
            raise GraphInvariantError(f"edge ({a},{b}) does not strictly decrease level")


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------


def _refined_classes(
    n: int,
    edges: tuple[Edge, ...],
    seeds: list,
) -> list[list[int]]:
    """Partition vertices by an iterated neighborhood invariant.

    The seed invariant must be label-independent (degrees, decorations,
    levels, marks); three rounds of neighbor-multiset refinement are enough
    at this scale. Classes are returned in a canonical order.
    """
    out_nb = [[] for _ in range(n)]
    in_nb = [[] for _ in range(n)]
    for a, b in edges:
        out_nb[a].append(b)
        in_nb[b].append(a)
    inv = [repr(s) for s in seeds]
    for _ in range(3):
        inv = [
            repr((inv[v], sorted(inv[u] for u in out_nb[v]), sorted(inv[u] for u in in_nb[v])))
            for v in range(n)
        ]
    classes: dict[str, list[int]] = {}
    for v in range(n):
        classes.setdefault(inv[v], []).append(v)
    return [classes[key] for key in sorted(classes)]


def _candidate_perms(classes: list[list[int]]):
    """All relabellings that send the k-th class to the k-th label block."""
    offsets = []
    pos = 0
    for cls in classes:
        offsets.append(pos)
        pos += len(cls)
    n = pos
    for arrangement in itertools.product(*(itertools.permutations(cls) for cls in classes)):
        perm = [0] * n
        for cls_idx, ordering in enumerate(arrangement):
            for slot, v in enumerate(ordering):
                perm[v] = offsets[cls_idx] + slot
        yield tuple(perm)


def _relabel(perm: tuple[int, ...], edges: tuple[Edge, ...]) -> tuple[Edge, ...]:
    return tuple(sorted((perm[a], perm[b]) for a, b in edges))


def _deco_seed(g: Generator) -> tuple:
    return (g.name, g.degree, g.weight)


def canonical_graph(
    n: int,
    edges,
    decos: tuple[Generator, ...] | None = None,
    bound: int = DEFAULT_AUT_BOUND,
) -> tuple[DirSimpleGraph | None, int, int]:
    """Canonicalize a decorated graph: (canonical graph, Koszul sign, |Aut|).

    Returns (None, 0, aut) when the element vanishes because some
    decoration-preserving automorphism permutes odd decorations with an
    odd Koszul sign.
    """
    edges = tuple(sorted(edges))
    validate_graph(n, edges)
    if n > bound:
        raise BoundExceededError(f"graph on {n} vertices exceeds brute-force bound {bound}")
    out_deg = [0] * n
    in_deg = [0] * n
    for a, b in edges:
        out_deg[a] += 1
        in_deg[b] += 1
    seeds = [
        (out_deg[v], in_deg[v], _deco_seed(decos[v]) if decos is not None else ())
        for v in range(n)
    ]
    classes = _refined_classes(n, edges, seeds)

    best = None
    best_perms: list[tuple[int, ...]] = []
    for perm in _candidate_perms(classes):
        relabelled = _relabel(perm, edges)
        deco_names = (
            None
            if decos is None
            else tuple(decos[inv_image(perm, pos)].name for pos in range(n))
        )
        cand = (relabelled, deco_names)
        if best is None or cand < best:
            best = cand
            best_perms = [perm]
        elif cand == best:
            best_perms.append(perm)

    assert best is not None
    aut = len(best_perms)
    if decos is None:
        return DirSimpleGraph(n, best[0], None), 1, aut

    degrees = [g.degree for g in decos]
    signs = {koszul_sign(p, degrees) for p in best_perms}
    if len(signs) == 2:
        return None, 0, aut
    sign = koszul_sign(best_perms[0], degrees)
    new_decos = tuple(decos[inv_image(best_perms[0], pos)] for pos in range(n))
    return DirSimpleGraph(n, best[0], new_decos), sign, aut


def inv_image(perm: tuple[int, ...], pos: int) -> int:
    """Old label landing on position pos under perm (old -> new)."""
    return perm.index(pos)


def canonical_leveled(
    n: int,
    edges,
    levels: tuple[int, ...],
    marked: int | None = None,
    decos: tuple[Generator, ...] | None = None,
    bound: int = DEFAULT_AUT_BOUND,
) -> tuple[LeveledGraph, int, tuple[int, ...]]:
    """Canonicalize a leveled, optionally marked graph under level- and
    mark-preserving relabellings. Returns (canonical, |Aut|, perm used).

    Decorations, when given, only refine the automorphism group (they are
    not stored on the result; leveled classes are evaluation recipes).
    """
    edges = tuple(sorted(edges))
    validate_leveled(n, edges, levels)
    if n > bound:
        raise BoundExceededError(f"graph on {n} vertices exceeds brute-force bound {bound}")
    out_deg = [0] * n
    in_deg = [0] * n
    for a, b in edges:
        out_deg[a] += 1
        in_deg[b] += 1
    seeds = [
        (
            levels[v],
            1 if marked == v else 0,
            out_deg[v],
            in_deg[v],
            _deco_seed(decos[v]) if decos is not None else (),
        )
        for v in range(n)
    ]
    classes = _refined_classes(n, edges, seeds)
    best = None
    best_perms: list[tuple[int, ...]] = []
    for perm in _candidate_perms(classes):
        relabelled = _relabel(perm, edges)
        lev = tuple(levels[inv_image(perm, pos)] for pos in range(n))
        mk = perm[marked] if marked is not None else None
        cand = (relabelled, lev, mk)
        if best is None or cand < best:
            best = cand
            best_perms = [perm]
        elif cand == best:
            best_perms.append(perm)
    assert best is not None
    return LeveledGraph(n, best[0], best[1], best[2]), len(best_perms), best_perms[0]


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


def automorphism_order(g: DirSimpleGraph | LeveledGraph, bound: int = DEFAULT_AUT_BOUND) -> int:
    """Exact order of the (decoration/level/mark preserving) automorphism group."""
    if isinstance(g, LeveledGraph):
        _, aut, _ = canonical_leveled(g.n, g.edges, g.levels, g.marked, bound=bound)
        return aut
    _, _, aut = canonical_graph(g.n, g.edges, g.decos, bound=bound)
    return aut


def linear_extension_count(g: DirSimpleGraph) -> int:
    """Number of total orders with every edge's upper vertex before its lower."""
    n = g.n
    preds = [0] * n
    for a, b in g.edges:
        preds[b] |= 1 << a

    @lru_cache(maxsize=None)
    def count(remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for v in range(n):
            bit = 1 << v
            if remaining & bit and not (preds[v] & remaining):
                total += count(remaining & ~bit)
        return total

    result = count((1 << n) - 1)
    count.cache_clear()
    return result


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def enumerate_dsgra(n: int, bound: int = DEFAULT_ENUM_BOUND) -> tuple[DirSimpleGraph, ...]:
    """All iso classes of connected directed simple acyclic graphs on n vertices.

    Every DAG admits a topological labelling, so scanning all edge subsets
    of the upper-triangular slots (i -> j for i < j) hits every class.
    """
    if n < 1:
        raise BoundExceededError("need n >= 1")
    if n > bound:
        raise BoundExceededError(f"enumeration bound {bound} exceeded: n={n}")
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found: dict[str, DirSimpleGraph] = {}
    for mask in range(1 << len(slots)):
        edges = tuple(slots[k] for k in range(len(slots)) if mask >> k & 1)
        if len(edges) < n - 1 or not is_connected(n, edges):
            continue
        canon, _, _ = canonical_graph(n, edges)
        assert canon is not None
        found.setdefault(canon.encoding(), canon)
    return tuple(found[k] for k in sorted(found))


def enumerate_leveled_2(bottom: int, top: int) -> tuple[tuple[LeveledGraph, int], ...]:
    """Iso classes of connected 2-leveled graphs with the given level sizes,
    paired with their leveled automorphism orders. Levels: 1 = bottom, 2 = top.

    A lone level may be empty only in the single-vertex cases; otherwise
    connectivity forces both levels to interact.
    """
    n = bottom + top
    if n < 1:
        raise BoundExceededError("need at least one vertex")
    if bottom < 0 or top < 0:
        raise GraphInvariantError("negative level size")
    levels = tuple([1] * bottom + [2] * top)
    slots = [(t, b) for t in range(bottom, n) for b in range(bottom)]
    found: dict[str, tuple[LeveledGraph, int]] = {}
    for mask in range(1 << len(slots)):
        edges = tuple(sorted(slots[k] for k in range(len(slots)) if mask >> k & 1))
        if not is_connected(n, edges):
            continue
        canon, aut, _ = canonical_leveled(n, edges, levels)
        found.setdefault(canon.encoding(), (canon, aut))
    return tuple(found[k] for k in sorted(found))


def enumerate_leveled_3(bottom: int, top: int) -> tuple[tuple[LeveledGraph, int], ...]:
    """Iso classes of connected 3-leveled graphs with a single middle vertex.

    The middle vertex carries the mark (it is the alpha slot), so counted
    automorphisms fix it; levels are 1 = bottom, 2 = middle, 3 = top.
    """
    if bottom < 0 or top < 0:
        raise GraphInvariantError("negative level size")
    n = bottom + 1 + top
    mid = bottom
    levels = tuple([1] * bottom + [2] + [3] * top)
    slots = []
    for t in range(bottom + 1, n):
        slots.append((t, mid))
        for b in range(bottom):
            slots.append((t, b))
    for b in range(bottom):
        slots.append((mid, b))
    found: dict[str, tuple[LeveledGraph, int]] = {}
    for mask in range(1 << len(slots)):
        edges = tuple(sorted(slots[k] for k in range(len(slots)) if mask >> k & 1))
        if not is_connected(n, edges):
            continue
        canon, aut, _ = canonical_leveled(n, edges, levels, marked=mid)
        found.setdefault(canon.encoding(), (canon, aut))
    return tuple(found[k] for k in sorted(found))


# ---------------------------------------------------------------------------
# insertion surgery (the raw layer under the operad composition)
# ---------------------------------------------------------------------------


def insert_summands(
    n1: int,
    edges1: tuple[Edge, ...],
    i: int,
    n2: int,
    edges2: tuple[Edge, ...],
) -> list[tuple[int, tuple[Edge, ...]]]:
    """All graphs obtained by inserting the second graph at vertex i.

    Vertex i's neighbors each reconnect to a nonempty subset of the inserted
    vertices, preserving edge direction; labels shift so the inserted block
    occupies i..i+n2-1. Every summand is validated: the hypotheses make
    connectivity, simplicity and acyclicity automatic, so a failure here is
    an internal inconsistency, not an input error.
    """
    if not 0 <= i < n1:
        raise GraphInvariantError(f"slot {i} out of range for {n1} vertices")

    def shift(v: int) -> int:
        return v if v < i else v + n2 - 1

    base: list[Edge] = []
    into_i: list[int] = []
    out_of_i: list[int] = []
    for a, b in edges1:
        if a == i and b == i:
            raise GraphInvariantError("loop edge")
        if a == i:
            out_of_i.append(shift(b))
        elif b == i:
            into_i.append(shift(a))
        else:
            base.append((shift(a), shift(b)))
    for a, b in edges2:
        base.append((a + i, b + i))

    inner = list(range(i, i + n2))
    subsets = [tuple(c) for size in range(1, n2 + 1) for c in itertools.combinations(inner, size)]

    n = n1 + n2 - 1
    results: list[tuple[int, tuple[Edge, ...]]] = []
    neighbors = [(v, "in") for v in into_i] + [(v, "out") for v in out_of_i]
    for choice in itertools.product(subsets, repeat=len(neighbors)):
        edges = list(base)
        for (v, direction), subset in zip(neighbors, choice):
            for s in subset:
                edges.append((v, s) if direction == "in" else (s, v))
        edge_tuple = tuple(sorted(edges))
        validate_graph(n, edge_tuple)
        results.append((n, edge_tuple))
    return results
