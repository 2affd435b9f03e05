"""Tabulated stable stems and their partial composition product.

The stems pi_k^S come straight from the table file; products are defined on
generator pairs and extended bilinearly.  Products that land in a trivial
stem, or have the unit iota or a zero factor, are computed without a table
entry.  Anything else that is not stored comes back as UnknownProduct: the
ring never guesses, because the coincidence criteria must degrade to Unknown
rather than report a wrong vanishing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .fgab import FgAbGroup, GroupElement
from .tables import OutOfTabulatedRange, StemEntry, TableSet

# Registry entries beyond the raw stem generators: (degree, coefficients).
_DERIVED_NAMES: dict[str, tuple[int, tuple[int, ...]]] = {
    "two": (0, (2,)),  # twice the unit; the stable class of the real Hopf map
    "eta3": (3, (12,)),  # eta^3 = 12 nu, the order-2 class of pi_3^S
    "einf_alpha1_3": (3, (8,)),  # stable image of alpha_1(3), order 3
}


@dataclass(frozen=True)
class StableElement:
    """An element of a stable stem pi_degree^S."""

    degree: int
    value: GroupElement

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def order(self) -> Optional[int]:
        return self.value.order()

    def __add__(self, other: "StableElement") -> "StableElement":
        if other.degree != self.degree:
            raise ValueError("cannot add stable elements of different degrees")
        return StableElement(self.degree, self.value + other.value)

    def __sub__(self, other: "StableElement") -> "StableElement":
        if other.degree != self.degree:
            raise ValueError("cannot subtract stable elements of different degrees")
        return StableElement(self.degree, self.value - other.value)

    def __neg__(self) -> "StableElement":
        return StableElement(self.degree, -self.value)

    def scale(self, k: int) -> "StableElement":
        return StableElement(self.degree, self.value.scale(k))

    def __str__(self) -> str:
        return f"{self.value} in pi_{self.degree}^S"


@dataclass(frozen=True)
class UnknownProduct:
    """A product the table cannot resolve; carries the blocking pair."""

    reason: str


ProductResult = Union[StableElement, UnknownProduct]


class StableRing:
    """Query view over the tabulated stems and the partial product table."""

    def __init__(self, tables: TableSet):
        self._tables = tables
        self._gen_degrees = {
            name: k
            for k, stem in tables.stems.items()
            for name in stem.gen_names
        }

    @property
    def max_degree(self) -> int:
        return max(self._tables.stems) if self._tables.stems else -1

    def stem(self, k: int) -> StemEntry:
        """The tabulated stem pi_k^S; errors outside the curated range."""
        if k < 0:
            raise OutOfTabulatedRange(f"stable stem degree {k} < 0")
        stem = self._tables.stems.get(k)
        if stem is None:
            raise OutOfTabulatedRange(f"pi_{k}^S is not tabulated")
        return stem

    def group(self, k: int) -> FgAbGroup:
        return self.stem(k).group

    def element(self, k: int, coeffs) -> StableElement:
        return StableElement(k, self.stem(k).group.element(coeffs))

    def zero(self, k: int) -> StableElement:
        return StableElement(k, self.stem(k).group.zero())

    def available_names(self) -> list[str]:
        return sorted(set(self._gen_degrees) | set(_DERIVED_NAMES))

    def named(self, name: str) -> StableElement:
        """Resolve a registered stable class by name."""
        if name in self._gen_degrees:
            k = self._gen_degrees[name]
            stem = self.stem(k)
            coeffs = [0] * stem.group.rank
            coeffs[stem.gen_names.index(name)] = 1
            return self.element(k, coeffs)
        if name in _DERIVED_NAMES:
            k, coeffs = _DERIVED_NAMES[name]
            return self.element(k, coeffs)
        raise LookupError(
            f"unknown stable class {name!r}; available: "
            + ", ".join(self.available_names())
        )

    def hopf_stable(self, field_tag: str) -> StableElement:
        """Stable class of the Hopf projection: 2*iota, eta, nu for R, C, H."""
        if field_tag == "R":
            return self.named("two")
        if field_tag == "C":
            return self.named("eta")
        if field_tag == "H":
            return self.named("nu")
        raise ValueError(f"unknown field tag {field_tag!r}")

    def _gen_product(self, name_a: str, name_b: str) -> ProductResult:
        ka, kb = self._gen_degrees[name_a], self._gen_degrees[name_b]
        entry = self._tables.products.get((name_a, name_b))
        if entry is not None:
            return self.element(entry.degree, entry.coeffs)
        entry = self._tables.products.get((name_b, name_a))
        if entry is not None:
            sign = -1 if (ka % 2 == 1 and kb % 2 == 1) else 1
            return self.element(entry.degree, entry.coeffs).scale(sign)
        return UnknownProduct(
            f"product {name_a} * {name_b} (degrees {ka}+{kb}) not tabulated"
        )

    def multiply(self, a: StableElement, b: StableElement) -> ProductResult:
        """Composition product, extended bilinearly from generator pairs."""
        k = a.degree + b.degree
        if k > self.max_degree:
            raise OutOfTabulatedRange(
                f"product degree {k} beyond tabulated stems (max {self.max_degree})"
            )
        target = self.stem(k)
        if target.group.is_trivial or a.is_zero or b.is_zero:
            return self.zero(k)
        if a.degree == 0:
            return b.scale(a.value.coeffs[0])
        if b.degree == 0:
            return a.scale(b.value.coeffs[0])
        total = self.zero(k)
        stem_a, stem_b = self.stem(a.degree), self.stem(b.degree)
        for i, ca in enumerate(a.value.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.value.coeffs):
                if cb == 0:
                    continue
                part = self._gen_product(stem_a.gen_names[i], stem_b.gen_names[j])
                if isinstance(part, UnknownProduct):
                    return part
                total = total + part.scale(ca * cb)
        return total
