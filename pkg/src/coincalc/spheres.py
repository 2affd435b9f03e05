"""Query layer over the curated unstable homotopy tables.

Wraps a parsed TableSet with the operations the coincidence criteria need:
lookup with closed-form synthesis, suspension, stabilization, the total
stabilized Hopf-James invariant, the antipodal action, suspension-image
membership, and the kernel chain Ker(Gamma) <= Ker(h_K . E^inf) <= pi_m(S^q).
Wherever an annotation is missing the answer is a tagged Unknown, never a
guess; the one exception is data that is forced (images inside trivial
groups).  Also hosts the deep dataset validator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .fgab import (
    Cmp,
    FgAbError,
    GroupElement,
    Subgroup,
    kernel_into_coords,
    subgroup_cmp,
)
from .stable import StableElement, StableRing, UnknownProduct
from .tables import (
    OutOfTabulatedRange,
    SphereEntry,
    TableError,
    TableSet,
    resolve_entry,
)


@dataclass(frozen=True)
class Unknown:
    """A value the tables cannot determine; carries the reason."""

    reason: str


@dataclass(frozen=True)
class SphereClass:
    """A homotopy class in pi_m(S^q), in the entry's generator coordinates."""

    m: int
    q: int
    value: GroupElement

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def _check(self, other: "SphereClass"):
        if (self.m, self.q) != (other.m, other.q):
            raise FgAbError("classes live in different homotopy groups")

    def __add__(self, other: "SphereClass") -> "SphereClass":
        self._check(other)
        return SphereClass(self.m, self.q, self.value + other.value)

    def __sub__(self, other: "SphereClass") -> "SphereClass":
        self._check(other)
        return SphereClass(self.m, self.q, self.value - other.value)

    def __neg__(self) -> "SphereClass":
        return SphereClass(self.m, self.q, -self.value)

    def scale(self, k: int) -> "SphereClass":
        return SphereClass(self.m, self.q, self.value.scale(k))

    def __str__(self) -> str:
        return f"{self.value} in pi_{self.m}(S^{self.q})"


@dataclass(frozen=True)
class GammaValue:
    """Total stabilized Hopf-James invariant, one component per k."""

    m: int
    q: int
    components: tuple[tuple[int, Union[StableElement, Unknown]], ...]

    @property
    def all_known(self) -> bool:
        return all(not isinstance(v, Unknown) for _k, v in self.components)

    def component(self, k: int) -> Union[StableElement, Unknown]:
        for kk, v in self.components:
            if kk == k:
                return v
        raise KeyError(f"no component k={k}")

    def is_zero(self) -> Optional[bool]:
        """True/False when decidable, None when unknowns block the answer."""
        for _k, v in self.components:
            if not isinstance(v, Unknown) and not v.is_zero:
                return False
        if self.all_known:
            return True
        return None

    def __str__(self) -> str:
        parts = []
        for k, v in self.components:
            parts.append(f"k={k}: " + (f"unknown ({v.reason})" if isinstance(v, Unknown) else str(v)))
        return "; ".join(parts) if parts else "(no components)"


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class MissingDataError(TableError):
    """An operation that must not degrade to Unknown hit missing data."""


@dataclass(frozen=True)
class Violation:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "dataset consistent: 0 violations"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


class SphereTables:
    """The full query interface over one loaded TableSet."""

    def __init__(self, tables: TableSet):
        self.raw = tables
        self.ring = StableRing(tables)

    # ------------------------------------------------------------- lookup

    def lookup(self, m: int, q: int) -> SphereEntry:
        return resolve_entry(self.raw, m, q)

    def cls(self, m: int, q: int, coeffs) -> SphereClass:
        entry = self.lookup(m, q)
        return SphereClass(m, q, entry.group.element(coeffs))

    def zero(self, m: int, q: int) -> SphereClass:
        entry = self.lookup(m, q)
        return SphereClass(m, q, entry.group.zero())

    def generator(self, m: int, q: int, name: str) -> SphereClass:
        entry = self.lookup(m, q)
        idx = entry.gen_index(name)
        coeffs = [0] * entry.group.rank
        coeffs[idx] = 1
        return SphereClass(m, q, entry.group.element(coeffs))

    def named(self, name: str) -> SphereClass:
        """Resolve a registered class (hopfC, whitehead5, alpha1_3, ...)."""
        nc = self.raw.named.get(name)
        if nc is None:
            raise LookupError(
                f"unknown named class {name!r}; available: "
                + ", ".join(sorted(self.raw.named))
            )
        return self.cls(nc.m, nc.q, nc.coeffs)

    def whitehead(self, q: int) -> SphereClass:
        """The Whitehead square of the identity of S^q, if registered."""
        return self.named(f"whitehead{q}")

    # -------------------------------------------------------- suspension

    def suspend(self, x: SphereClass) -> Union[SphereClass, Unknown]:
        """One suspension step pi_m(S^q) -> pi_{m+1}(S^{q+1})."""
        try:
            target = self.lookup(x.m + 1, x.q + 1)
        except OutOfTabulatedRange:
            return Unknown(f"pi_{x.m + 1}(S^{x.q + 1}) is not tabulated")
        out = SphereClass(x.m + 1, x.q + 1, target.group.zero())
        if target.group.is_trivial or x.is_zero:
            return out
        entry = self.lookup(x.m, x.q)
        for i, c in enumerate(x.value.coeffs):
            if c == 0:
                continue
            susp = entry.annotations[i].susp
            if susp is None:
                return Unknown(
                    f"suspension of generator {entry.gen_names[i]} of "
                    f"pi_{x.m}(S^{x.q}) is not annotated"
                )
            out = out + SphereClass(
                x.m + 1, x.q + 1, target.group.element(susp).scale(c)
            )
        return out

    def suspend_iter(self, x: SphereClass, times: int) -> Union[SphereClass, Unknown]:
        for _ in range(times):
            x = self.suspend(x)
            if isinstance(x, Unknown):
                return x
        return x

    # ------------------------------------------------------ stabilization

    def stabilize(self, x: SphereClass) -> Union[StableElement, Unknown]:
        """E^inf: pi_m(S^q) -> pi_{m-q}^S."""
        if x.m < x.q:
            raise FgAbError("stabilization needs m >= q")
        k = x.m - x.q
        try:
            stem = self.ring.stem(k)
        except OutOfTabulatedRange:
            return Unknown(f"pi_{k}^S is not tabulated")
        if stem.group.is_trivial or x.is_zero:
            return self.ring.zero(k)
        entry = self.lookup(x.m, x.q)
        out = self.ring.zero(k)
        for i, c in enumerate(x.value.coeffs):
            if c == 0:
                continue
            stab = entry.annotations[i].stab
            if stab is None:
                return Unknown(
                    f"stabilization of generator {entry.gen_names[i]} of "
                    f"pi_{x.m}(S^{x.q}) is not annotated"
                )
            out = out + self.ring.element(k, stab).scale(c)
        return out

    # ------------------------------------------------- Hopf-James invariant

    def gamma(self, x: SphereClass) -> GammaValue:
        """Total stabilized Hopf-James invariant of x (component 1 = E^inf)."""
        if x.q < 2:
            raise FgAbError("the Hopf-James invariant needs q >= 2")
        entry = self.lookup(x.m, x.q)
        comps: list[tuple[int, Union[StableElement, Unknown]]] = []
        comps.append((1, self.stabilize(x)))
        for k in range(2, entry.k_max + 1):
            degree = entry.gamma_degree(k)
            try:
                stem = self.ring.stem(degree)
            except OutOfTabulatedRange:
                comps.append((k, Unknown(f"pi_{degree}^S is not tabulated")))
                continue
            if stem.group.is_trivial or x.is_zero:
                comps.append((k, self.ring.zero(degree)))
                continue
            total = self.ring.zero(degree)
            blocked: Optional[Unknown] = None
            for i, c in enumerate(x.value.coeffs):
                if c == 0:
                    continue
                coeffs = entry.annotations[i].gamma_component(k)
                if coeffs is None:
                    blocked = Unknown(
                        f"gamma k={k} of generator {entry.gen_names[i]} of "
                        f"pi_{x.m}(S^{x.q}) is not annotated"
                    )
                    break
                total = total + self.ring.element(degree, coeffs).scale(c)
            comps.append((k, blocked if blocked else total))
        return GammaValue(x.m, x.q, tuple(comps))

    def gamma_target(self, m: int, q: int) -> list:
        """The stems receiving the Hopf-James components, in k order."""
        entry = self.lookup(m, q)
        return [self.ring.stem(entry.gamma_degree(k)).group for k in range(1, entry.k_max + 1)]

    # -------------------------------------------------------- antipodal map

    def antipodal_compose(self, x: SphereClass) -> Union[SphereClass, Unknown]:
        """The class of a . f, a the antipodal map of the target sphere."""
        if x.q % 2 == 1:
            return x  # deg a = +1, a homotopic to the identity
        entry = self.lookup(x.m, x.q)
        if x.is_zero:
            return x
        out = self.zero(x.m, x.q)
        for i, c in enumerate(x.value.coeffs):
            if c == 0:
                continue
            antip = entry.annotations[i].antip
            if antip is None:
                return Unknown(
                    f"antipodal action on generator {entry.gen_names[i]} of "
                    f"pi_{x.m}(S^{x.q}) is not annotated"
                )
            out = out + SphereClass(x.m, x.q, entry.group.element(antip).scale(c))
        return out

    # -------------------------------------------- suspension image membership

    def suspension_image_contains(self, m: int, q: int, x: SphereClass) -> Membership:
        """Is x in the image of E: pi_{m-1}(S^{q-1}) -> pi_m(S^q)?"""
        if (x.m, x.q) != (m, q):
            raise FgAbError("class does not live in the stated group")
        if x.is_zero:
            return Membership.YES
        try:
            source = self.lookup(m - 1, q - 1)
        except OutOfTabulatedRange:
            return Membership.UNKNOWN
        target = self.lookup(m, q)
        columns = []
        complete = True
        for i in range(source.group.rank):
            susp = source.annotations[i].susp
            if susp is None:
                complete = False
                continue
            columns.append(target.group.element(susp))
        sub = Subgroup(target.group, tuple(columns))
        if sub.contains(x.value):
            return Membership.YES
        return Membership.NO if complete else Membership.UNKNOWN

    # ------------------------------------------------------- kernel chain

    def _stab_or_raise(self, entry: SphereEntry, i: int) -> StableElement:
        k = entry.m - entry.q
        stem = self.ring.stem(k)
        if stem.group.is_trivial:
            return self.ring.zero(k)
        stab = entry.annotations[i].stab
        if stab is None:
            raise MissingDataError(
                f"stabilization of generator {entry.gen_names[i]} of "
                f"pi_{entry.m}(S^{entry.q}) is not annotated"
            )
        return self.ring.element(k, stab)

    def kernel_chain(
        self, m: int, q: int, field_tag: str
    ) -> tuple[Subgroup, Subgroup, Subgroup]:
        """(Ker Gamma, Ker(h_K . E^inf), whole group) for pi_m(S^q).

        Raises MissingDataError when an annotation or stable product the
        criteria need is absent; the chain inclusions are verified.
        """
        entry = self.lookup(m, q)
        group = entry.group
        whole = Subgroup.whole(group)
        if group.is_trivial:
            triv = Subgroup.trivial(group)
            return triv, triv, whole

        rows: list[list[int]] = []
        orders: list[int] = []
        for k in range(1, entry.k_max + 1):
            degree = entry.gamma_degree(k)
            stem = self.ring.stem(degree)
            if stem.group.is_trivial:
                continue
            block = []
            for i in range(group.rank):
                if k == 1:
                    el = self._stab_or_raise(entry, i)
                else:
                    coeffs = entry.annotations[i].gamma_component(k)
                    if coeffs is None:
                        raise MissingDataError(
                            f"gamma k={k} of generator {entry.gen_names[i]} of "
                            f"pi_{m}(S^{q}) is not annotated"
                        )
                    el = self.ring.element(degree, coeffs)
                block.append(el.value.coeffs)
            for r in range(stem.group.rank):
                rows.append([block[i][r] for i in range(group.rank)])
                orders.append(stem.group.coord_orders()[r])
        ker_gamma = kernel_into_coords(group, rows, orders)

        hopf = self.ring.hopf_stable(field_tag)
        target_degree = (m - q) + hopf.degree
        target = self.ring.stem(target_degree)
        rows_h: list[list[int]] = []
        orders_h: list[int] = []
        if not target.group.is_trivial:
            block = []
            for i in range(group.rank):
                stab = self._stab_or_raise(entry, i)
                prod = self.ring.multiply(hopf, stab)
                if isinstance(prod, UnknownProduct):
                    raise MissingDataError(prod.reason)
                block.append(prod.value.coeffs)
            for r in range(target.group.rank):
                rows_h.append([block[i][r] for i in range(group.rank)])
                orders_h.append(target.group.coord_orders()[r])
        ker_hopf = kernel_into_coords(group, rows_h, orders_h)

        if subgroup_cmp(ker_gamma, ker_hopf) not in (Cmp.EQUAL, Cmp.PROPER_SUB):
            raise FgAbError(
                f"kernel chain broken for pi_{m}(S^{q}), K={field_tag}: "
                f"Ker Gamma is not contained in Ker(h_K . E^inf)"
            )
        if not whole.contains_subgroup(ker_hopf):
            raise FgAbError("kernel exceeds the ambient group")
        return ker_gamma, ker_hopf, whole

    # ---------------------------------------------------------- validation

    def validate(self) -> ValidationReport:
        """Deep internal-consistency check of the loaded dataset."""
        v: list[Violation] = []

        def bad(path, message):
            v.append(Violation(path, message))

        for (m, q), entry in sorted(self.raw.entries.items()):
            path = f"pi_{m}(S^{q})"
            tors = entry.group.torsion
            for a, b in zip(tors, tors[1:]):
                if b % a != 0:
                    bad(path, f"torsion orders {list(tors)} break the divisibility chain")
            for i, (name, ann) in enumerate(zip(entry.gen_names, entry.annotations)):
                gpath = f"{path} gen {name}"
                gen = self.generator(m, q, name)
                # Degree arithmetic of stored annotations.
                if ann.stab is not None:
                    stem = self.raw.stems.get(m - q)
                    if stem is None or len(ann.stab) != stem.group.rank:
                        bad(gpath, "stab vector does not match pi_{}^S".format(m - q))
                for k, coeffs in ann.gammas:
                    degree = entry.gamma_degree(k)
                    if k > entry.k_max or degree < 0:
                        bad(gpath, f"gamma component k={k} out of range")
                        continue
                    stem = self.raw.stems.get(degree)
                    if stem is None or len(coeffs) != stem.group.rank:
                        bad(gpath, f"gamma k={k} vector does not match pi_{degree}^S")
                # Diagram consistency at k = 1: a stored first component must
                # equal the stabilization, and the Hopf products h_K . E^inf
                # needed by the weakest criterion must be computable.
                gamma1 = ann.gamma_component(1)
                if gamma1 is not None:
                    if ann.stab is None:
                        bad(gpath, "gamma k=1 stored but stabilization missing")
                    elif tuple(gamma1) != tuple(ann.stab):
                        bad(
                            gpath,
                            "gamma k=1 component disagrees with the stabilization "
                            f"({list(gamma1)} vs {list(ann.stab)})",
                        )
                stab_el = None
                stem = self.raw.stems.get(m - q)
                if stem is not None and stem.group.is_trivial:
                    stab_el = self.ring.zero(m - q)
                elif ann.stab is not None and stem is not None:
                    stab_el = self.ring.element(m - q, ann.stab)
                if stab_el is not None:
                    for tag in ("R", "C", "H"):
                        hopf = self.ring.hopf_stable(tag)
                        if (m - q) + hopf.degree > self.ring.max_degree:
                            bad(
                                gpath,
                                f"h_{tag} product degree exceeds tabulated stems",
                            )
                            continue
                        prod = self.ring.multiply(hopf, stab_el)
                        if isinstance(prod, UnknownProduct):
                            bad(gpath, f"h_{tag} . E^inf not computable: {prod.reason}")
                # Stabilize-suspend coherence.
                if ann.susp is not None:
                    susp = self.suspend(gen)
                    if not isinstance(susp, Unknown):
                        s1 = self.stabilize(gen)
                        s2 = self.stabilize(susp)
                        if (
                            not isinstance(s1, Unknown)
                            and not isinstance(s2, Unknown)
                            and s1.value != s2.value
                        ):
                            bad(
                                gpath,
                                f"stabilization not suspension-invariant: "
                                f"{s1} vs {s2} after E",
                            )
                # Antipodal constraints.
                if q % 2 == 1 and ann.antip is not None:
                    if entry.group.element(ann.antip) != gen.value:
                        bad(gpath, "antipodal action must be the identity for odd q")
            # Antipodal involution (even q, fully annotated entries).
            if q % 2 == 0 and all(a.antip is not None for a in entry.annotations):
                for name in entry.gen_names:
                    g = self.generator(m, q, name)
                    once = self.antipodal_compose(g)
                    if isinstance(once, Unknown):
                        break
                    twice = self.antipodal_compose(once)
                    if isinstance(twice, Unknown) or twice.value != g.value:
                        bad(path, f"antipodal action is not an involution on {name}")

        for k, stem in sorted(self.raw.stems.items()):
            for a, b in zip(stem.group.torsion, stem.group.torsion[1:]):
                if b % a != 0:
                    bad(f"pi_{k}^S", "torsion orders break the divisibility chain")

        # Registry constraints.
        for name, nc in sorted(self.raw.named.items()):
            if not name.startswith("whitehead"):
                continue
            q = int(name[len("whitehead"):])
            try:
                w = self.named(name)
            except (LookupError, TableError):
                bad(f"name {name}", "cannot resolve registered class")
                continue
            if (w.m, w.q) != (2 * q - 1, q):
                bad(f"name {name}", f"must live in pi_{2 * q - 1}(S^{q})")
                continue
            if q % 2 == 1:
                order = w.value.order()
                if order is None or order > 2:
                    bad(f"name {name}", "Whitehead square of odd identity must have order <= 2")
            if q in (1, 3, 7):
                if not w.is_zero:
                    bad(f"name {name}", f"Whitehead square must vanish for q={q}")
            elif w.is_zero:
                bad(f"name {name}", f"Whitehead square must be nonzero for q={q}")
        if "alpha1_3" in self.raw.named:
            a13 = self.named("alpha1_3")
            if (a13.m, a13.q) != (6, 3):
                bad("name alpha1_3", "must live in pi_6(S^3)")
            else:
                stab = self.stabilize(a13)
                if isinstance(stab, Unknown) or stab.order() != 3:
                    bad("name alpha1_3", "stable image must have order 3")
        return ValidationReport(v)
