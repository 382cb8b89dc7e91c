"""Free complete unital associative algebra on formal generators.

Basis: words in the generators, including the empty word as the unit.
The product is concatenation; the bracket is its skew-symmetrization.
This module also hosts the classical exponential/logarithm, the BCH
oracle ln(exp x * exp y), and the conjugation-type gauge action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .scalars import Generator
from .series import FormalSeries

FAMILY = "word"


@dataclass(frozen=True)
class Word:
    letters: tuple[Generator, ...]

    @property
    def weight(self) -> int:
        return sum(g.weight for g in self.letters)

    @property
    def degree(self) -> int:
        return sum(g.degree for g in self.letters)

    def encoding(self) -> str:
        if not self.letters:
            return "1"
        return ".".join(g.name for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


UNIT_WORD = Word(())


def word_series(cap: int, items: Iterable[tuple[Word, Fraction]]) -> FormalSeries:
    return FormalSeries.build(FAMILY, cap, items)


def unit(cap: int) -> FormalSeries:
    return FormalSeries.single(FAMILY, cap, UNIT_WORD)


def gen_series(g: Generator, cap: int) -> FormalSeries:
    return FormalSeries.single(FAMILY, cap, Word((g,)))


def assoc_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    """Concatenation product, extended bilinearly."""
    a._check(b)

    def gen():
        for wa, ca in a:
            for wb, cb in b:
                if wa.weight + wb.weight > a.cap:
                    continue
                yield Word(wa.letters + wb.letters), ca * cb

    return FormalSeries.build(FAMILY, a.cap, gen())


def power(a: FormalSeries, n: int) -> FormalSeries:
    out = unit(a.cap)
    for _ in range(n):
        out = assoc_mul(out, a)
    return out


def _check_positive_weight(lam: FormalSeries) -> None:
    if lam.coeff(UNIT_WORD) != 0:
        raise ValueError("series must have no constant term")


def exp_assoc(lam: FormalSeries) -> FormalSeries:
    """exp(lam) = 1 + lam + lam^2/2! + ..., truncated at the series cap."""
    _check_positive_weight(lam)
    out = unit(lam.cap)
    term = unit(lam.cap)
    for n in range(1, lam.cap + 1):
        term = assoc_mul(term, lam)
        if term.is_zero():
            break
        out = out.add(term.scale(Fraction(1, factorial(n))))
    return out


def log_assoc(one_plus_lam: FormalSeries) -> FormalSeries:
    """ln(1 + lam) = lam - lam^2/2 + lam^3/3 - ...; input carries the unit."""
    if one_plus_lam.coeff(UNIT_WORD) != 1:
        raise ValueError("logarithm needs a group-like series 1 + (weight >= 1)")
    lam = one_plus_lam.sub(unit(one_plus_lam.cap))
    out = FormalSeries.zero(FAMILY, lam.cap)
    term = unit(lam.cap)
    for n in range(1, lam.cap + 1):
        term = assoc_mul(term, lam)
        if term.is_zero():
            break
        out = out.add(term.scale(Fraction((-1) ** (n - 1), n)))
    return out


def inverse_grouplike(one_plus_lam: FormalSeries) -> FormalSeries:
    """(1 + lam)^{-1} = 1 - lam + lam^2 - ..."""
    if one_plus_lam.coeff(UNIT_WORD) != 1:
        raise ValueError("inverse needs a group-like series")
    lam = one_plus_lam.sub(unit(one_plus_lam.cap))
    out = unit(lam.cap)
    term = unit(lam.cap)
    for _ in range(lam.cap):
        term = assoc_mul(term, lam).scale(-1)
        if term.is_zero():
            break
        out = out.add(term)
    return out


def bch_oracle(x: Generator, y: Generator, cap: int) -> FormalSeries:
    """ln(exp(x) * exp(y)) in the free algebra on two generators."""
    ex = exp_assoc(gen_series(x, cap))
    ey = exp_assoc(gen_series(y, cap))
    return log_assoc(assoc_mul(ex, ey))


def bracket(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    """Skew-symmetrized product [a,b] = a*b - (-1)^{|a||b|} b*a, per component."""
    out = FormalSeries.zero(FAMILY, a.cap)
    for wa, ca in a:
        for wb, cb in b:
            if wa.weight + wb.weight > a.cap:
                continue
            fwd = FormalSeries.single(FAMILY, a.cap, Word(wa.letters + wb.letters), ca * cb)
            sign = -1 if (wa.degree % 2) and (wb.degree % 2) else 1
            bwd = FormalSeries.single(
                FAMILY, a.cap, Word(wb.letters + wa.letters), -sign * ca * cb
            )
            out = out.add(fwd).add(bwd)
    return out


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

DiffMap = Mapping[str, FormalSeries]


def differential(s: FormalSeries, diff: DiffMap) -> FormalSeries:
    """Extend generator values to a degree -1 derivation of the word algebra.

    d(uv) = du.v + (-1)^{|u|} u.dv; generators missing from the map are closed.
    """

    def gen():
        for w, c in s:
            prefix_deg = 0
            for i, letter in enumerate(w.letters):
                dval = diff.get(letter.name)
                if dval is not None:
                    sign = -1 if prefix_deg % 2 else 1
                    for dw, dc in dval:
                        new = Word(w.letters[:i] + dw.letters + w.letters[i + 1 :])
                        if new.weight <= s.cap:
                            yield new, c * dc * sign
                prefix_deg += letter.degree
    return FormalSeries.build(FAMILY, s.cap, gen())


def assoc_gauge_action(
    lam: FormalSeries, alpha: FormalSeries, dlam: FormalSeries
) -> FormalSeries:
    """(1+lam) * alpha * (1+lam)^{-1} - dlam * (1+lam)^{-1}.

    The degree-0 gauge acts on degree -1 elements by conjugation up to the
    constant term coming from the differential.
    """
    if any(d % 2 != 0 for d in lam.degrees()):
        raise ValueError("gauge must be even (degree 0)")
    if any(d % 2 == 0 for d in alpha.degrees()) or any(d % 2 == 0 for d in dlam.degrees()):
        raise ValueError("alpha and d(lambda) must be odd (degree -1)")
    cap = lam.cap
    one_plus = unit(cap).add(lam)
    inv = inverse_grouplike(one_plus)
    conj = assoc_mul(assoc_mul(one_plus, alpha), inv)
    return conj.sub(assoc_mul(dlam, inv))
