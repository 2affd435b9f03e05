"""The decision core: Reidemeister, minimum and Nielsen numbers.

For sphere targets the closed forms are evaluated directly on the homotopy
classes; for projective targets the four Nielsen numbers and MCC are decided
through the lift classes by vanishing criteria (difference class, its total
Hopf-James invariant, the Hopf-multiplied stable image, and the top-degree
obstruction), each worth 0 or the full Reidemeister number.  Every report
carries its derivation and is checked against the monotone chain
MC >= MCC >= N# >= N~ >= N >= NZ >= 0 and the {0, R} dichotomy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .fgab import Cmp, FgAbError, subgroup_cmp
from .projective import MapClass, ProjSpace, decompose_valid, parse_field
from .selfco import Verdict, self_loose
from .spheres import (
    GammaValue,
    Membership,
    SphereClass,
    SphereTables,
    Unknown,
)
from .stable import UnknownProduct

FINITE, INFINITE_KIND, UNKNOWN_KIND = "finite", "infinite", "unknown"


@dataclass(frozen=True)
class InvariantValue:
    """A computed invariant: a number, infinity, or an honest Unknown."""

    kind: str
    value: int = 0
    reason: str = ""

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN_KIND

    def __str__(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == INFINITE_KIND:
            return "infinite"
        return f"unknown ({self.reason})" if self.reason else "unknown"

    def short(self) -> str:
        return {FINITE: str(self.value), INFINITE_KIND: "inf"}.get(self.kind, "?")


def fin(k: int) -> InvariantValue:
    return InvariantValue(FINITE, k)


INF = InvariantValue(INFINITE_KIND)


def unk(reason: str) -> InvariantValue:
    return InvariantValue(UNKNOWN_KIND, 0, reason)


VALUE_ORDER = ("MC", "MCC", "N_sharp", "N_tilde", "N_plain", "N_z")


@dataclass
class Report:
    """The invariant bundle for one pair of maps."""

    target: str
    m: int
    n: int
    inputs: str
    R: InvariantValue
    MC: InvariantValue
    MCC: InvariantValue
    N_sharp: InvariantValue
    N_tilde: InvariantValue
    N_plain: InvariantValue
    N_z: InvariantValue
    hypothesis_notes: list[str] = field(default_factory=list)
    derivation: list[str] = field(default_factory=list)
    non_wecken: bool = False

    def values(self) -> dict[str, InvariantValue]:
        return {
            "R": self.R,
            "MC": self.MC,
            "MCC": self.MCC,
            "N_sharp": self.N_sharp,
            "N_tilde": self.N_tilde,
            "N_plain": self.N_plain,
            "N_z": self.N_z,
        }

    def to_dict(self) -> dict:
        def enc(v: InvariantValue):
            if v.kind == FINITE:
                return v.value
            if v.kind == INFINITE_KIND:
                return "infinite"
            return {"unknown": v.reason}

        return {
            "target": self.target,
            "m": self.m,
            "n": self.n,
            "inputs": self.inputs,
            "values": {k: enc(v) for k, v in self.values().items()},
            "non_wecken": self.non_wecken,
            "hypothesis_notes": list(self.hypothesis_notes),
            "derivation": list(self.derivation),
        }

    def render(self) -> str:
        lines = [f"target {self.target}, m = {self.m}, inputs: {self.inputs}"]
        names = {
            "R": "R", "MC": "MC", "MCC": "MCC", "N_sharp": "N#",
            "N_tilde": "N~", "N_plain": "N", "N_z": "NZ",
        }
        for key, v in self.values().items():
            lines.append(f"  {names[key]:>3} = {v}")
        if self.non_wecken:
            lines.append("  non-Wecken: MCC differs from N#")
        for note in self.hypothesis_notes:
            lines.append(f"  note: {note}")
        for step in self.derivation:
            lines.append(f"  via: {step}")
        return "\n".join(lines)


def _ge(a: InvariantValue, b: InvariantValue) -> Optional[bool]:
    """a >= b when both are determined, else None."""
    if a.is_unknown or b.is_unknown:
        return None
    if a.kind == INFINITE_KIND:
        return True
    if b.kind == INFINITE_KIND:
        return False
    return a.value >= b.value


def chain_check(report: Report) -> tuple[bool, list[str]]:
    """Verify the monotone chain and the Reidemeister bound on a report."""
    violations: list[str] = []
    ordered = [(name, getattr(report, name)) for name in VALUE_ORDER]
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            ge = _ge(ordered[i][1], ordered[j][1])
            if ge is False:
                violations.append(
                    f"{ordered[i][0]} = {ordered[i][1]} < {ordered[j][0]} = "
                    f"{ordered[j][1]}"
                )
    last = ordered[-1][1]
    if last.is_finite and last.value < 0:
        violations.append("negative invariant")
    bound = _ge(report.R, report.MCC)
    if bound is False:
        if report.n != 2:
            violations.append(f"MCC = {report.MCC} exceeds R = {report.R}")
        else:
            violations.append(
                f"MCC = {report.MCC} exceeds R = {report.R} (n = 2, informational)"
            )
    return (not violations, violations)


def dichotomy_check(report: Report, r_n: int) -> list[str]:
    """MCC and the Nielsen numbers may only take the values 0 and R."""
    bad = []
    for name in ("MCC", "N_sharp", "N_tilde", "N_plain", "N_z"):
        v = getattr(report, name)
        if v.is_finite and v.value not in (0, r_n):
            bad.append(f"{name} = {v.value} not in {{0, {r_n}}}")
    return bad


def reidemeister(sp: ProjSpace, m: int) -> InvariantValue:
    """Reidemeister number of any pair S^m -> KP(n'), m >= 2.

    The domain is simply connected, so the count depends only on the target:
    2 for RP(n >= 2), otherwise 1 (including the circle RP(1), by contract).
    """
    if m < 2:
        raise FgAbError("the Reidemeister count here assumes m >= 2")
    return fin(sp.reidemeister)


def _gamma_verdict(gamma: GammaValue) -> tuple[Optional[bool], str]:
    zero = gamma.is_zero()
    return zero, str(gamma)


def sphere_report(
    tables: SphereTables,
    m: int,
    n: int,
    f1: SphereClass,
    f2: SphereClass,
) -> Report:
    """Minimum and Nielsen numbers for a pair of maps S^m -> S^n."""
    if m < 1 or n < 1:
        raise FgAbError("sphere targets need m, n >= 1")
    for f in (f1, f2):
        if (f.m, f.q) != (m, n):
            raise FgAbError(f"input class lives in pi_{f.m}(S^{f.q}), not pi_{m}(S^{n})")
    notes: list[str] = []
    deriv: list[str] = []
    target = f"S^{n}"
    inputs = f"f1 = {f1.value}, f2 = {f2.value}"

    if m == 1 and n == 1:
        d1, d2 = f1.value.coeffs[0], f2.value.coeffs[0]
        k = abs(d1 - d2)
        deriv.append(f"circle self maps of degrees {d1} and {d2}: all numbers |d1 - d2|")
        rr = fin(k) if k else INF
        val = fin(k)
        return Report(target, m, n, inputs, rr, val, val, val, val, val, val, notes, deriv)

    if n == 1:
        notes.append("target S^1 with m >= 2: every minimum and Nielsen number vanishes")
        z = fin(0)
        return Report(target, m, n, inputs, INF, z, z, z, z, z, z, notes, deriv)

    r = fin(1)
    if m == 1:
        z = fin(0)
        notes.append("m = 1 with a simply connected target: everything vanishes")
        return Report(target, m, n, inputs, r, z, z, z, z, z, z, notes, deriv)

    af2 = tables.antipodal_compose(f2)
    if isinstance(af2, Unknown):
        u = unk(af2.reason)
        return Report(target, m, n, inputs, r, u, u, u, u, u, u, notes, deriv)
    delta = f1 - af2
    deriv.append(f"delta = [f1] - [a . f2] = {delta.value} in pi_{m}(S^{n})")
    nonzero = not delta.is_zero
    mcc = fin(1 if nonzero else 0)
    n_sharp = mcc

    if not nonzero:
        n_tilde: InvariantValue = fin(0)
        n_plain: InvariantValue = fin(0)
    else:
        gamma = tables.gamma(delta)
        zero, desc = _gamma_verdict(gamma)
        deriv.append(f"Gamma(delta): {desc}")
        n_tilde = unk("Gamma undetermined: " + desc) if zero is None else fin(0 if zero else 1)
        stab = tables.stabilize(delta)
        if isinstance(stab, Unknown):
            n_plain = unk(stab.reason)
        else:
            deriv.append(f"E^inf(delta) = {stab}")
            n_plain = fin(0 if stab.is_zero else 1)

    n_z = n_sharp if m == n else fin(0)
    if m == n:
        notes.append("m = n: all six numbers agree (classical self-coincidence count)")

    if not nonzero:
        mc: InvariantValue = fin(0)
    else:
        member = tables.suspension_image_contains(m, n, delta)
        deriv.append(f"delta in E(pi_{m - 1}(S^{n - 1}))? {member.value}")
        if member is Membership.YES:
            mc = fin(1)
        elif member is Membership.NO:
            mc = INF if m > n else fin(1)
        else:
            mc = unk("suspension image membership undetermined")
    return Report(
        target, m, n, inputs, r, mc, mcc, n_sharp, n_tilde, n_plain, n_z, notes, deriv
    )


def _as_lift(sp: ProjSpace, m: int, f) -> tuple[SphereClass, bool]:
    """Normalize MapClass | SphereClass input to (lift, correction_zero)."""
    if isinstance(f, MapClass):
        if f.space != sp or f.m != m:
            raise FgAbError("map class built for a different target or m")
        return f.lift, f.correction_is_zero
    if isinstance(f, SphereClass):
        if (f.m, f.q) != (m, sp.q):
            raise FgAbError(
                f"lift must live in pi_{m}(S^{sp.q}), got pi_{f.m}(S^{f.q})"
            )
        return f, True
    raise FgAbError("inputs must be MapClass or SphereClass lifts")


def projective_report(
    tables: SphereTables,
    sp: ProjSpace,
    m: int,
    f1,
    f2,
    assume_self_loose: bool = False,
) -> Report:
    """Minimum and Nielsen numbers for a pair of maps S^m -> KP(n').

    Inputs are lift classes in pi_m(S^q) (optionally as MapClass with a
    correction) when the lift decomposition is valid; for a sphere target
    KP(1) where it is not, inputs are classes of pi_m(S^n) and the sphere
    closed forms take over.
    """
    if m < 2:
        raise FgAbError("projective reports need a simply connected domain, m >= 2")
    notes: list[str] = []
    deriv: list[str] = []

    if sp.n == 1:
        # RP(1) is the circle: with m >= 2 everything vanishes.
        z = fin(0)
        notes.append(f"{sp.name} is the circle: all numbers vanish for m >= 2")
        inputs = "any pair"
        return Report(sp.name, m, sp.n, inputs, fin(sp.reidemeister), z, z, z, z, z, z, notes, deriv)

    if not decompose_valid(tables, sp, m):
        # Only possible for n' = 1; route through the sphere the target is.
        for f in (f1, f2):
            if isinstance(f, MapClass):
                raise FgAbError(
                    f"the lift decomposition is invalid for {sp} at m={m}; "
                    f"pass classes of pi_{m}(S^{sp.n}) directly"
                )
        rep = sphere_report(tables, m, sp.n, f1, f2)
        rep.target = f"{sp.name} = S^{sp.n}"
        rep.hypothesis_notes.append(
            f"{sp.name} is the sphere S^{sp.n}; sphere closed forms used "
            f"(no lift decomposition at m = {m})"
        )
        return rep

    lift1, corr1_zero = _as_lift(sp, m, f1)
    lift2, corr2_zero = _as_lift(sp, m, f2)
    inputs = f"lift1 = {lift1.value}, lift2 = {lift2.value} in pi_{m}(S^{sp.q})"
    if not (corr1_zero and corr2_zero):
        notes.append(
            "nonzero correction classes recorded; they join a loose pair and "
            "do not change any of the numbers"
        )
    r_n = sp.reidemeister
    r = fin(r_n)

    both_trivial = (
        lift1.is_zero and lift2.is_zero and corr1_zero and corr2_zero
    )
    loose = self_loose(sp.field.tag, m, sp.n_prime)
    if both_trivial:
        notes.append("both classes are trivial: a pair of nullhomotopic maps is loose")
    elif loose.verdict is Verdict.LOOSE:
        notes.append(f"self-coincidence hypothesis holds: {loose.reason}")
    elif assume_self_loose:
        notes.append(
            "self-coincidence looseness ASSUMED by caller; not guaranteed by "
            f"the congruence criteria ({loose.reason})"
        )
    else:
        u = unk(
            "looseness of (f1, f1) not established: " + loose.reason
        )
        notes.append("criteria withheld; pass assume_self_loose to override")
        return Report(sp.name, m, sp.n, inputs, r, u, u, u, u, u, u, notes, deriv)

    delta = lift1 - lift2
    deriv.append(f"delta = lift1 - lift2 = {delta.value} in pi_{m}(S^{sp.q})")
    nonzero = not delta.is_zero
    mcc = fin(r_n if nonzero else 0)
    n_sharp = mcc
    deriv.append(
        f"difference test: delta {'nonzero' if nonzero else 'zero'} -> MCC = N# = {mcc}"
    )

    if not nonzero:
        n_tilde: InvariantValue = fin(0)
        n_plain: InvariantValue = fin(0)
    else:
        gamma = tables.gamma(delta)
        zero, desc = _gamma_verdict(gamma)
        deriv.append(f"Hopf-James test (N~): Gamma(delta): {desc}")
        n_tilde = unk("Gamma undetermined: " + desc) if zero is None else fin(0 if zero else r_n)
        stab = tables.stabilize(delta)
        if isinstance(stab, Unknown):
            n_plain = unk(stab.reason)
        else:
            hopf = tables.ring.hopf_stable(sp.field.tag)
            prod = tables.ring.multiply(hopf, stab)
            if isinstance(prod, UnknownProduct):
                n_plain = unk(prod.reason)
            else:
                deriv.append(
                    f"stable Hopf product test (N): h_{sp.field.tag} . "
                    f"E^inf(delta) = {prod}"
                )
                n_plain = fin(0 if prod.is_zero else r_n)

    n_z = fin(r_n if (m == sp.n and nonzero) else 0)
    deriv.append(
        f"top-degree test: m {'=' if m == sp.n else '!='} n -> NZ = {n_z}"
    )

    if mcc.value == 0:
        mc: InvariantValue = fin(0)
    elif sp.n_prime == 1 and sp.field.tag == "C":
        # CP(1) = S^2 with m >= 3: the class is never a suspension from S^1.
        mc = INF
        deriv.append(
            "MC: the lift class corresponds to a nonzero class of pi_m(S^2), "
            "and E(pi_{m-1}(S^1)) = 0, so MC is infinite"
        )
    else:
        mc = unk("MC is determined by these tables only for sphere targets")

    rep = Report(
        sp.name, m, sp.n, inputs, r, mc, mcc, n_sharp, n_tilde, n_plain, n_z, notes, deriv
    )
    bad = dichotomy_check(rep, r_n)
    if bad:
        raise FgAbError("dichotomy violated: " + "; ".join(bad))
    return rep


# ----------------------------------------------------------- equivalence scan


class ScanVerdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


SCAN_KEYS = ("nsharp_eq_ntilde", "ntilde_eq_n", "n_eq_zero", "n_eq_nz")


@dataclass
class ScanResult:
    """Which of the pointwise identities hold for every pair at this m."""

    target: str
    m: int
    n: int
    verdicts: dict[str, tuple[ScanVerdict, str]]
    nz_vanishes: Optional[bool]  # is NZ == 0 for every pair?

    def relation(self, key: str) -> str:
        verdict, _w = self.verdicts[key]
        if verdict is ScanVerdict.UNKNOWN:
            return "??"
        return "==" if verdict is ScanVerdict.HOLDS else "!="

    def pattern(self) -> str:
        last = "==" if self.nz_vanishes else "!=" if self.nz_vanishes is not None else "??"
        return (
            f"N# {self.relation('nsharp_eq_ntilde')} N~ "
            f"{self.relation('ntilde_eq_n')} N "
            f"{self.relation('n_eq_nz')} NZ {last} 0"
        )

    def row(self) -> str:
        return f"m={self.m}: {self.pattern()}"


def equivalence_scan(tables: SphereTables, sp: ProjSpace, m: int) -> ScanResult:
    """Decide N# == N~, N~ == N, N == 0 and N == NZ across all pairs at m.

    Reduces to kernel comparisons in the chain 0 <= Ker Gamma <=
    Ker(h_K . E^inf) <= pi_m(S^q) whenever the lift criteria apply.
    """
    if m < 1:
        raise FgAbError("m >= 1 required")
    if sp.n == 1:
        v = {k: (ScanVerdict.HOLDS, "all numbers vanish for a circle target") for k in SCAN_KEYS}
        return ScanResult(sp.name, m, sp.n, v, True)
    if m == 1:
        v = {k: (ScanVerdict.HOLDS, "m = 1: all numbers vanish") for k in SCAN_KEYS}
        return ScanResult(sp.name, m, sp.n, v, True)

    if sp.n_prime == 1 and m == sp.n:
        group = tables.lookup(m, sp.n).group
        witness = f"m = n = {m}: all four Nielsen numbers agree on {sp.name} = S^{sp.n}"
        v = {k: (ScanVerdict.HOLDS, witness) for k in SCAN_KEYS}
        return ScanResult(sp.name, m, sp.n, v, group.is_trivial)

    hypothesis_fail = None
    if not decompose_valid(tables, sp, m):
        hypothesis_fail = (
            f"lift decomposition invalid for {sp} at m = {m}"
        )
    else:
        loose = self_loose(sp.field.tag, m, sp.n_prime)
        if loose.verdict is not Verdict.LOOSE:
            hypothesis_fail = f"self-coincidence looseness not established: {loose.reason}"
    if hypothesis_fail:
        v = {k: (ScanVerdict.UNKNOWN, hypothesis_fail) for k in SCAN_KEYS}
        return ScanResult(sp.name, m, sp.n, v, None)

    ker_gamma, ker_hopf, whole = tables.kernel_chain(m, sp.q, sp.field.tag)
    a_eq = ker_gamma.is_trivial
    b_eq = subgroup_cmp(ker_gamma, ker_hopf) is Cmp.EQUAL
    c_eq = ker_hopf.is_whole()
    verdicts = {
        "nsharp_eq_ntilde": (
            ScanVerdict.HOLDS if a_eq else ScanVerdict.FAILS,
            f"Ker Gamma = {ker_gamma}",
        ),
        "ntilde_eq_n": (
            ScanVerdict.HOLDS if b_eq else ScanVerdict.FAILS,
            f"Ker Gamma = {ker_gamma} vs Ker(h . E^inf) = {ker_hopf}",
        ),
        "n_eq_zero": (
            ScanVerdict.HOLDS if c_eq else ScanVerdict.FAILS,
            f"Ker(h . E^inf) = {ker_hopf} vs whole = {whole}",
        ),
    }
    if m == sp.n:
        verdicts["n_eq_nz"] = (
            ScanVerdict.HOLDS,
            "m = n: both criteria see exactly the nonzero difference classes",
        )
        nz_vanishes = tables.lookup(m, sp.q).group.is_trivial
    else:
        verdicts["n_eq_nz"] = (
            ScanVerdict.HOLDS if c_eq else ScanVerdict.FAILS,
            "m != n: NZ vanishes identically, so N == NZ iff N == 0",
        )
        nz_vanishes = True
    return ScanResult(sp.name, m, sp.n, verdicts, nz_vanishes)


# ------------------------------------------------------------ Wecken status


class WeckenStatus(enum.Enum):
    HOLDS = "holds"
    FAILS_WITH_WITNESS = "fails_with_witness"
    UNKNOWN = "unknown"


KERVAIRE_DIMS = (16, 32, 64)
KERVAIRE_UNRESOLVED = 128


def kervaire_exception(field_tag, n: int, m: int) -> Optional[Report]:
    """The exotic self-coincidence pairs on RP(n), n = 16, 32, 64, m = 2n-2.

    Returns a report with MCC = 1 strictly between N# = 0 and R = 2; None
    everywhere else (including the unresolved n = 128 candidate).
    """
    field = parse_field(field_tag)
    if field.tag != "R" or n not in KERVAIRE_DIMS or m != 2 * n - 2:
        return None
    notes = [
        f"exotic class in pi_{m}(S^{n}) detected by the Arf/Kervaire framing "
        "invariant: (f, f) is not loose although every Nielsen number vanishes",
        "minimum-equals-Nielsen fails here: MCC = 1 but N# = 0",
    ]
    zero = fin(0)
    return Report(
        target=f"RP({n})",
        m=m,
        n=n,
        inputs="f paired with itself, f the exotic class",
        R=fin(2),
        MC=unk("at least MCC = 1; not determined by these tables"),
        MCC=fin(1),
        N_sharp=zero,
        N_tilde=zero,
        N_plain=zero,
        N_z=zero,
        hypothesis_notes=notes,
        derivation=[],
        non_wecken=True,
    )


@dataclass
class WeckenAnswer:
    status: WeckenStatus
    reason: str
    witness: Optional[Report] = None


def wecken_status(sp: ProjSpace, m: int) -> WeckenAnswer:
    """Does MCC == N# hold for all pairs of maps S^m -> KP(n')?"""
    tag = sp.field.tag
    if (tag in ("R", "C") and sp.n_prime % 2 == 1) or (
        tag == "H" and sp.n_prime % 24 == 23
    ):
        return WeckenAnswer(
            WeckenStatus.HOLDS,
            "on this congruence region every self-pair is loose and "
            "MCC = N# for all pairs",
        )
    witness = kervaire_exception(tag, sp.n, m) if tag == "R" else None
    if witness is not None:
        return WeckenAnswer(
            WeckenStatus.FAILS_WITH_WITNESS,
            f"exotic self-coincidence pair on {sp.name} at m = {m}",
            witness,
        )
    if tag == "R":
        reason = "not settled for this even n'"
        if sp.n == KERVAIRE_UNRESOLVED and m == 2 * sp.n - 2:
            reason += (
                f"; whether an exotic class exists at n = {KERVAIRE_UNRESOLVED}, "
                f"m = {2 * KERVAIRE_UNRESOLVED - 2} is unresolved"
            )
        return WeckenAnswer(WeckenStatus.UNKNOWN, reason)
    return WeckenAnswer(
        WeckenStatus.UNKNOWN,
        "open question: whether MCC == N# always holds over C and H outside "
        "the congruence region is not settled",
    )
