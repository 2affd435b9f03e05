"""Projective-space targets and the lift/correction decomposition.

A target KP(n') over K = R, C or H is described by its real dimension data
(d, n = d*n', fibration sphere dimension q = n + d - 1) and its Reidemeister
number.  Map classes into KP(n') are carried as a lift class in pi_m(S^q)
plus a correction class in pi_{m-1}(S^{d-1}); the correction never enters the
vanishing criteria and is kept for provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fgab import FgAbError, FgAbGroup, GroupElement
from .spheres import SphereClass, SphereTables
from .stable import StableElement


@dataclass(frozen=True)
class Field:
    """One of the three real division fields R, C, H."""

    tag: str
    d: int

    def __post_init__(self):
        expected = {"R": 1, "C": 2, "H": 4}
        if self.tag not in expected or expected[self.tag] != self.d:
            raise FgAbError(f"bad field ({self.tag}, d={self.d})")

    def __str__(self) -> str:
        return self.tag


REAL = Field("R", 1)
COMPLEX = Field("C", 2)
QUATERNION = Field("H", 4)
FIELDS = {"R": REAL, "C": COMPLEX, "H": QUATERNION}


def parse_field(tag) -> Field:
    if isinstance(tag, Field):
        return tag
    try:
        return FIELDS[str(tag)]
    except KeyError:
        raise FgAbError(f"unknown field {tag!r}; expected R, C or H") from None


@dataclass(frozen=True)
class ProjSpace:
    """The target KP(n') with its derived dimension data."""

    field: Field
    n_prime: int

    def __post_init__(self):
        if self.n_prime < 1:
            raise FgAbError("n' must be >= 1")

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def n(self) -> int:
        return self.d * self.n_prime

    @property
    def q(self) -> int:
        return self.n + self.d - 1

    @property
    def reidemeister(self) -> int:
        """Order of the fundamental group: 2 for RP(n >= 2), else 1."""
        return 2 if (self.field.tag == "R" and self.n >= 2) else 1

    @property
    def name(self) -> str:
        return f"{self.field.tag}P({self.n_prime})"

    def __str__(self) -> str:
        return self.name


def space(field_tag, n_prime: int) -> ProjSpace:
    return ProjSpace(parse_field(field_tag), n_prime)


def hopf_stable(tables: SphereTables, field_tag) -> StableElement:
    """Stable class of the Hopf projection S^{2d-1} -> KP(1)."""
    return tables.ring.hopf_stable(parse_field(field_tag).tag)


def correction_group(tables: SphereTables, sp: ProjSpace, m: int) -> FgAbGroup:
    """pi_{m-1}(S^{d-1}), where the non-lift part of a map class lives."""
    if m < 2:
        raise FgAbError("map classes need m >= 2")
    return tables.lookup(m - 1, sp.d - 1).group


def decompose_valid(tables: SphereTables, sp: ProjSpace, m: int) -> bool:
    """Whether every class of pi_m(KP(n')) splits as lift + correction:
    n' >= 2, or the correction group pi_{m-1}(S^{d-1}) vanishes."""
    if m < 2:
        raise FgAbError("decomposition is defined for m >= 2")
    if sp.n_prime >= 2:
        return True
    return correction_group(tables, sp, m).is_trivial


@dataclass(frozen=True)
class MapClass:
    """A homotopy class of maps S^m -> KP(n') as (lift, correction)."""

    space: ProjSpace
    m: int
    lift: SphereClass
    correction: Optional[GroupElement] = None

    def __post_init__(self):
        if (self.lift.m, self.lift.q) != (self.m, self.space.q):
            raise FgAbError(
                f"lift must live in pi_{self.m}(S^{self.space.q}), got "
                f"pi_{self.lift.m}(S^{self.lift.q})"
            )

    @classmethod
    def build(
        cls,
        tables: SphereTables,
        sp: ProjSpace,
        m: int,
        lift: SphereClass,
        correction: Optional[GroupElement] = None,
    ) -> "MapClass":
        if not decompose_valid(tables, sp, m):
            raise FgAbError(
                f"the lift/correction decomposition is not valid for {sp} at "
                f"m={m}: n' = 1 and pi_{m - 1}(S^{sp.d - 1}) != 0"
            )
        if correction is not None:
            cg = correction_group(tables, sp, m)
            if correction.group != cg:
                raise FgAbError("correction lies in the wrong group")
        return cls(sp, m, lift, correction)

    @property
    def correction_is_zero(self) -> bool:
        return self.correction is None or self.correction.is_zero

    def __str__(self) -> str:
        base = f"lift {self.lift}"
        if not self.correction_is_zero:
            base += f", correction {self.correction}"
        return base
