"""Exact rational coefficients, graded generators and Koszul signs.

Every coefficient in this package is a ``fractions.Fraction`` (arbitrary
precision, always reduced, positive denominator). There is no floating
point anywhere; equality of series means equality of term maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class BasisMismatchError(ValueError):
    """Two series over different basis families were combined."""


class TruncationMismatchError(ValueError):
    """Two series with different truncation weights were combined."""


class BoundExceededError(ValueError):
    """A brute-force bound (vertex count, enumeration size) was exceeded."""


class StructureFileError(ValueError):
    """A structure-constant file is malformed or inconsistent."""


def rat(p: int | str | Fraction, q: int | None = None) -> Fraction:
    """Build a reduced rational; accepts "p/q" strings for file input."""
    if q is not None:
        return Fraction(p, q)
    return Fraction(p)


def rat_str(c: Fraction) -> str:
    """Render a rational as "p" or "p/q" with q > 1."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True, order=True)
class Generator:
    """A formal generator with a homological degree and a filtration weight.

    The weight drives truncation: the weight of a basis object is the sum
    of the weights of its decorations, so products are weight-additive.
    Differentials lower the degree by one.
    """

    name: str
    degree: int = 0
    weight: int = 1

    def __post_init__(self) -> None:
        if self.weight < 1:
            raise ValueError(f"generator weight must be positive: {self.name}")

    @property
    def parity(self) -> int:
        return self.degree & 1

    def __str__(self) -> str:
        return self.name


def check_unique_names(gens: Iterable[Generator]) -> None:
    seen: dict[str, Generator] = {}
    for g in gens:
        if g.name in seen and seen[g.name] != g:
            raise ValueError(f"generator name reused with different data: {g.name}")
        seen[g.name] = g


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of permuting graded letters: product of (-1)^(d_i d_j) over inversions.

    ``perm[i]`` is the position letter ``i`` is sent to; an inversion is a
    pair i < j with perm[i] > perm[j]. With all degrees odd this is the
    ordinary signature of the permutation; even letters never contribute.
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list lengths differ")
    sign = 1
    n = len(perm)
    for i in range(n):
        if degrees[i] & 1 == 0:
            continue
        for j in range(i + 1, n):
            if degrees[j] & 1 and perm[i] > perm[j]:
                sign = -sign
    return sign


def sort_with_koszul(keys: Sequence, degrees: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Stable-sort positions by key and return (permutation, Koszul sign).

    The returned permutation maps old position -> new position. Ties keep
    their relative order, so equal even-degree letters cost nothing; the
    caller is responsible for detecting equal odd-degree letters (which
    make the element vanish).
    """
    order = sorted(range(len(keys)), key=lambda i: (keys[i], i))
    perm = [0] * len(keys)
    for new_pos, old_pos in enumerate(order):
        perm[old_pos] = new_pos
    return tuple(perm), koszul_sign(perm, degrees)
