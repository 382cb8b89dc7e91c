"""The free Lie algebra inside the free associative algebra.

Lyndon words with their standard bracketings realize a basis in each
weight; Lie membership is an exact rational linear solve against that
basis (deliberately independent of the Dynkin machinery, so the two can
cross-check each other). Dynkin's closed formula is implemented over any
bracket, which lets the same code drive the associative, pre-Lie and
graph-level BCH computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from . import assoc
from .scalars import Generator
from .series import FormalSeries

Bracket = Callable[[FormalSeries, FormalSeries], FormalSeries]


# ---------------------------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------------------------


def lyndon_words(alphabet: Sequence[str], k: int) -> list[tuple[str, ...]]:
    """All Lyndon words of length k via Duval's generation."""
    letters = sorted(alphabet)
    n = len(letters)
    out: list[tuple[str, ...]] = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == k:
            out.append(tuple(letters[i] for i in w))
        while len(w) < k:
            w.append(w[-m])
        while w and w[-1] == n - 1:
            w.pop()
    return sorted(out)


def standard_factorization(word: tuple[str, ...]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split a Lyndon word as u.v with v its longest proper Lyndon suffix."""
    if len(word) < 2:
        raise ValueError("letters do not factor")
    for i in range(1, len(word)):
        v = word[i:]
        if all(v < v[j:] for j in range(1, len(v))):
            return word[:i], v
    raise AssertionError("unreachable for Lyndon input")


def bracketing(word: tuple[str, ...]):
    """Nested-pair bracketing of a Lyndon word (letters at the leaves)."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


def expand_bracketing(expr, gens: dict[str, Generator], cap: int) -> FormalSeries:
    """Evaluate a nested bracketing into the word algebra."""
    if isinstance(expr, str):
        return assoc.gen_series(gens[expr], cap)
    left = expand_bracketing(expr[0], gens, cap)
    right = expand_bracketing(expr[1], gens, cap)
    return assoc.bracket(left, right)


def lyndon_basis(gens: Sequence[Generator], k: int, cap: int | None = None):
    """Weight-k Lyndon bracketings with their word expansions.

    Returns a list of (word, bracketing, expansion series).
    """
    cap = cap if cap is not None else k
    table = {g.name: g for g in gens}
    out = []
    for word in lyndon_words([g.name for g in gens], k):
        expr = bracketing(word)
        out.append((word, expr, expand_bracketing(expr, table, cap)))
    return out


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


def solve_in_span(vectors: list[dict], target: dict) -> list[Fraction] | None:
    """Exact coordinates of target in the span, or None if outside.

    Gaussian elimination over Fraction on rows augmented with coordinate
    bookkeeping columns; vectors are dicts keyed by arbitrary hashables.
    """
    keys = sorted({k for v in vectors for k in v} | set(target), key=repr)
    index = {k: i for i, k in enumerate(keys)}
    ncols = len(keys)
    nvec = len(vectors)
    rows: list[list[Fraction]] = []
    for j, vec in enumerate(vectors):
        row = [Fraction(0)] * (ncols + nvec)
        for k, c in vec.items():
            row[index[k]] = c
        row[ncols + j] = Fraction(1)
        rows.append(row)

    reduced: list[list[Fraction]] = []
    pivot_cols: list[int] = []
    for row in rows:
        row = row[:]
        for prow, pcol in zip(reduced, pivot_cols):
            if row[pcol] != 0:
                factor = row[pcol] / prow[pcol]
                row = [a - factor * b for a, b in zip(row, prow)]
        col = next((c for c in range(ncols) if row[c] != 0), None)
        if col is None:
            continue
        reduced.append(row)
        pivot_cols.append(col)

    work = [Fraction(0)] * (ncols + nvec)
    for k, c in target.items():
        work[index[k]] = c
    for prow, pcol in zip(reduced, pivot_cols):
        if work[pcol] != 0:
            factor = work[pcol] / prow[pcol]
            work = [a - factor * b for a, b in zip(work, prow)]
    if any(work[c] != 0 for c in range(ncols)):
        return None
    return [-work[ncols + j] for j in range(nvec)]


def is_lie_element(s: FormalSeries, gens: Sequence[Generator]) -> bool:
    """True iff every weight component lies in the Lyndon-bracket span."""
    if s.coeff(assoc.UNIT_WORD) != 0:
        raise ValueError("Lie elements have no constant term")
    for k in sorted({key.weight for key in s.keys()}):
        component = s.homogeneous(k)
        basis = lyndon_basis(gens, k, s.cap)
        vectors = [{w: c for w, c in expansion} for _, _, expansion in basis]
        target = {w: c for w, c in component}
        if solve_in_span(vectors, target) is None:
            return False
    return True


def lie_coordinates(s: FormalSeries, gens: Sequence[Generator]):
    """Per-weight Lyndon coordinates; raises if s is not a Lie element."""
    out = {}
    for k in sorted({key.weight for key in s.keys()}):
        component = s.homogeneous(k)
        basis = lyndon_basis(gens, k, s.cap)
        vectors = [{w: c for w, c in expansion} for _, _, expansion in basis]
        target = {w: c for w, c in component}
        coords = solve_in_span(vectors, target)
        if coords is None:
            raise ValueError(f"weight-{k} component is not a Lie element")
        out[k] = [
            (word, expr, c) for (word, expr, _), c in zip(basis, coords) if c != 0
        ]
    return out


# ---------------------------------------------------------------------------
# Dynkin's closed formula, generic over the bracket
# ---------------------------------------------------------------------------


def _ad_chain(
    bracket: Bracket,
    x: FormalSeries,
    y: FormalSeries,
    pairs: Sequence[tuple[int, int]],
    core: FormalSeries,
) -> FormalSeries:
    """ad_x^{p1} ad_y^{q1} ... applied to core, rightmost factor first."""
    out = core
    for p, q in reversed(pairs):
        for _ in range(q):
            out = bracket(y, out)
        for _ in range(p):
            out = bracket(x, out)
    return out


def bch_dynkin_generic(
    bracket: Bracket,
    x: FormalSeries,
    y: FormalSeries,
    cap: int,
    zero: FormalSeries,
) -> FormalSeries:
    """Dynkin's nested-adjoint BCH series, truncated at weight cap.

    Terms whose letter count exceeds the cap are never generated; weight
    additivity of the bracket makes the cut-off exact.
    """
    total = zero

    def prefixes(budget: int):
        yield ()
        if budget <= 0:
            return
        for p in range(budget + 1):
            for q in range(budget - p + 1):
                if p + q < 1:
                    continue
                for rest in prefixes(budget - p - q):
                    yield ((p, q),) + rest

    for n in range(1, cap + 1):
        outer = Fraction((-1) ** (n - 1), n)
        for prefix in prefixes(cap - 1):
            if len(prefix) != n - 1:
                continue
            s = sum(p + q for p, q in prefix)
            denom_pq = 1
            for p, q in prefix:
                denom_pq *= factorial(p) * factorial(q)
            # family ending in x: (p_n, q_n) = (1, 0)
            if 1 + s <= cap:
                coeff = outer / Fraction((1 + s) * denom_pq)
                total = total.add(_ad_chain(bracket, x, y, prefix, x).scale(coeff))
            # family ending in y: q_n = 1, free p_n >= 0
            for pn in range(0, cap - s):
                coeff = outer / Fraction((pn + 1 + s) * denom_pq * factorial(pn))
                core = y
                for _ in range(pn):
                    core = bracket(x, core)
                total = total.add(_ad_chain(bracket, x, y, prefix, core).scale(coeff))
    return total


def bch_dynkin(x: Generator, y: Generator, cap: int) -> FormalSeries:
    """Dynkin's formula in the free associative word algebra."""
    xs = assoc.gen_series(x, cap)
    ys = assoc.gen_series(y, cap)
    return bch_dynkin_generic(
        assoc.bracket, xs, ys, cap, FormalSeries.zero(assoc.FAMILY, cap)
    )


# ---------------------------------------------------------------------------
# the classical gauge-action formula, generic over the bracket
# ---------------------------------------------------------------------------


def lie_gauge_action_generic(
    bracket: Bracket,
    lam: FormalSeries,
    alpha: FormalSeries,
    dlam: FormalSeries,
) -> FormalSeries:
    """exp(ad_lam)(alpha) + ((id - exp(ad_lam))/ad_lam)(dlam).

    The second operator is the convergent sum -sum_{k>=1} ad^{k-1}/k!.
    """
    cap = lam.cap
    out = alpha
    term = alpha
    for k in range(1, cap + 1):
        term = bracket(lam, term).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out.add(term)
    term = dlam
    out = out.sub(term)
    for k in range(2, cap + 1):
        term = bracket(lam, term).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out.sub(term)
    return out


def lie_gauge_action(
    lam: FormalSeries, alpha: FormalSeries, dlam: FormalSeries
) -> FormalSeries:
    """The classical formula with the skew-symmetrized word bracket."""
    if any(d % 2 for d in lam.degrees()):
        raise ValueError("gauge must have degree 0")
    if any(d % 2 == 0 for d in alpha.degrees()) or any(d % 2 == 0 for d in dlam.degrees()):
        raise ValueError("alpha and d(lambda) must have degree -1")
    return lie_gauge_action_generic(assoc.bracket, lam, alpha, dlam)
