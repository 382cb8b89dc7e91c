"""Weight-truncated formal linear combinations over a canonical basis.

A :class:`FormalSeries` is a finite map from canonical basis objects to
nonzero rationals, tagged with a basis family and a truncation weight N.
Basis objects are duck-typed: they need ``weight``, ``degree``,
``encoding()`` and hashability, and must already be in canonical form
when used as keys (the algebra modules guarantee this).

All binary operations require matching family and truncation weight; this
is deliberate, so two computations at different precision can never be
mixed silently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .scalars import BasisMismatchError, TruncationMismatchError, rat_str


class FormalSeries:
    """Immutable truncated series with exact rational coefficients."""

    __slots__ = ("family", "cap", "_terms", "_hash")

    def __init__(self, family: str, cap: int, terms: dict | None = None):
        if cap < 1:
            raise ValueError("truncation weight must be >= 1")
        self.family = family
        self.cap = cap
        clean: dict = {}
        if terms:
            for key, coeff in terms.items():
                if coeff == 0:
                    continue
                if key.weight > cap:
                    continue
                clean[key] = Fraction(coeff)
        self._terms = clean
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, family: str, cap: int) -> "FormalSeries":
        return cls(family, cap, {})

    @classmethod
    def single(cls, family: str, cap: int, key, coeff=1) -> "FormalSeries":
        return cls(family, cap, {key: Fraction(coeff)})

    @classmethod
    def build(cls, family: str, cap: int, items: Iterable[tuple[object, Fraction]]) -> "FormalSeries":
        """Accumulate (key, coeff) pairs, summing duplicates."""
        acc: dict = {}
        for key, coeff in items:
            if key.weight > cap or coeff == 0:
                continue
            new = acc.get(key, 0) + coeff
            if new == 0:
                acc.pop(key, None)
            else:
                acc[key] = new
        return cls(family, cap, acc)

    # -- basic protocol ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalSeries)
            and self.family == other.family
            and self.cap == other.cap
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.family, self.cap, frozenset(self._terms.items())))
        return self._hash

    def __iter__(self) -> Iterator[tuple[object, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0].weight, kv[0].encoding())))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def keys(self):
        return self._terms.keys()

    def _check(self, other: "FormalSeries") -> None:
        if self.family != other.family:
            raise BasisMismatchError(f"{self.family} vs {other.family}")
        if self.cap != other.cap:
            raise TruncationMismatchError(f"N={self.cap} vs N={other.cap}")

    # -- linear structure ----------------------------------------------

    def add(self, other: "FormalSeries") -> "FormalSeries":
        self._check(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            new = out.get(key, 0) + coeff
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return FormalSeries(self.family, self.cap, out)

    def sub(self, other: "FormalSeries") -> "FormalSeries":
        return self.add(other.scale(-1))

    def scale(self, c) -> "FormalSeries":
        c = Fraction(c)
        if c == 0:
            return FormalSeries.zero(self.family, self.cap)
        return FormalSeries(self.family, self.cap, {k: v * c for k, v in self._terms.items()})

    __add__ = add
    __sub__ = sub

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self) -> "FormalSeries":
        return self.scale(-1)

    def truncate(self, new_cap: int) -> "FormalSeries":
        """Drop terms of weight > new_cap; cannot un-truncate."""
        if new_cap > self.cap:
            raise TruncationMismatchError(f"cannot raise truncation {self.cap} to {new_cap}")
        return FormalSeries(self.family, new_cap, {k: v for k, v in self._terms.items() if k.weight <= new_cap})

    def homogeneous(self, weight: int) -> "FormalSeries":
        return FormalSeries(self.family, self.cap, {k: v for k, v in self._terms.items() if k.weight == weight})

    def min_weight(self) -> int | None:
        if not self._terms:
            return None
        return min(k.weight for k in self._terms)

    def map_terms(self, fn: Callable) -> "FormalSeries":
        """Apply fn(key, coeff) -> iterable of (key, coeff) and re-accumulate."""
        def gen():
            for key, coeff in self._terms.items():
                yield from fn(key, coeff)

        return FormalSeries.build(self.family, self.cap, gen())

    def degrees(self) -> set[int]:
        return {k.degree for k in self._terms}

    # -- output ----------------------------------------------------------

    def to_json_obj(self) -> list[dict[str, str]]:
        return [{"basis": k.encoding(), "coeff": rat_str(c)} for k, c in self]

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for key, coeff in self:
            bits.append(f"({rat_str(coeff)})*{key.encoding()}")
        return " + ".join(bits)
