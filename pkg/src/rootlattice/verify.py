"""Catalog-wide verification suites behind ``rootlattice verify``."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import center, reduction
from .rootsys import (
    CheckResult,
    RootSystem,
    TypeLabel,
    all_labels,
    build,
    check_phi_properties,
    diagram_automorphisms,
)
from .zlinalg import det

SCOPES = ("phi", "center", "lemma2", "table91")

# Faults that can be injected to confirm the suites are not vacuous.
FAULTS = ("t-no-multiplier", "rho-zero")


def census(label: TypeLabel) -> int:
    """Number of roots, from the classical closed formulas."""
    fam, n = label.family, label.rank
    if fam == "A":
        return n * (n + 1)
    if fam in "BC":
        return 2 * n * n
    if fam == "D":
        return 2 * n * (n - 1)
    return {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}[str(label)]


def expected_kernel_class(label: TypeLabel) -> str:
    fam, n = label.family, label.rank
    if str(label) in ("E8", "F4", "G2"):
        return "trivial-center"
    if fam == "B" or (fam == "C" and n % 2 == 0):
        return "zero"
    return "iso"


def expected_induced_pairing(label: TypeLabel) -> List[List[Fraction]]:
    """Induced pairing on the standard generators, as representatives in [0, 1)."""
    fam, n = label.family, label.rank

    def mod1(x):
        x = Fraction(x)
        return x - (x.numerator // x.denominator)

    if fam == "A":
        return [[Fraction(n, n + 1)]]
    if fam == "D":
        if n % 2:
            return [[mod1(Fraction(n, 4))]]
        a, b = mod1(Fraction(n, 4)), mod1(Fraction(n - 2, 4))
        return [[a, b], [b, a]]
    if str(label) == "E6":
        return [[Fraction(1, 3)]]
    if str(label) == "E7" or (fam == "C" and n % 2):
        return [[Fraction(1, 2)]]
    if fam == "B" or fam == "C":
        return [[Fraction(0)]]
    return []


@dataclass
class CheckRecord:
    check: str
    type: str
    verdict: str
    witness: Optional[str] = None


@dataclass
class VerifyReport:
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict == "pass" for r in self.records)

    @property
    def types_checked(self) -> int:
        return len({r.type for r in self.records})

    def add(self, label, results: Iterable[CheckResult]):
        for res in results:
            self.records.append(CheckRecord(
                res.check, str(label), "pass" if res.passed else "fail",
                None if res.passed else res.witness))

    def to_dict(self) -> dict:
        return {
            "overall": "pass" if self.passed else "fail",
            "types_checked": self.types_checked,
            "checks": len(self.records),
            "records": [asdict(r) for r in self.records],
        }


def phi_suite(R: RootSystem) -> List[CheckResult]:
    out = []
    got = len(R.roots)
    want = census(R.label)
    out.append(CheckResult("rootsys.census", got == want,
                           None if got == want else f"{got} roots, expected {want}"))
    out.extend(check_phi_properties(R))
    return out


def center_suite(R: RootSystem) -> List[CheckResult]:
    out = []
    D, Dv = center.weight_quotient(R), center.coweight_quotient(R)
    d = abs(det(R.cartan))
    ok = D.order == d == Dv.order
    out.append(CheckResult("center.order", ok,
                           None if ok else f"|Delta|={D.order}, |Delta_dual|={Dv.order}, |det|={d}"))

    bad = [g for g in D.elements() if D.reduce(D.lift_element(g)) != g]
    bad += [g for g in Dv.elements() if Dv.reduce(Dv.lift_element(g)) != g]
    out.append(CheckResult("center.reduce_lift", not bad, f"failing elements {bad}" if bad else None))

    pair = center.duality_pairing(R)
    ok = pair.is_perfect()
    out.append(CheckResult("center.perfect_pairing", ok,
                           None if ok else f"pairing table {pair.as_strings()} is degenerate"))

    h = center.rho(R)
    ok = h.is_well_defined()
    out.append(CheckResult("center.rho_well_defined", ok, None if ok else f"rho = {h.table()}"))

    kc = center.rho_kernel_class(R)
    want = expected_kernel_class(R.label)
    out.append(CheckResult("center.kernel_class", kc.kind == want,
                           None if kc.kind == want else f"got {kc.kind}, expected {want}"))

    ip = center.induced_pairing(R)
    ok = ip.is_symmetric() and ip.is_consistent()
    out.append(CheckResult("center.induced_symmetric", ok,
                           None if ok else f"induced pairing {ip.as_strings()}"))

    if R.label.family in "AD":
        bad = _equivariance_failures(R)
        out.append(CheckResult("center.rho_equivariant", not bad, "; ".join(bad) or None))
    return out


def _equivariance_failures(R: RootSystem) -> List[str]:
    from .zlinalg import IntMatrix

    D, Dv, h = center.weight_quotient(R), center.coweight_quotient(R), center.rho(R)
    bad = []
    for perm in diagram_automorphisms(R):
        P = IntMatrix.from_columns(
            [[int(i == perm[k]) for i in range(R.rank)] for k in range(R.rank)], rows=R.rank)
        sig_w = center.induced_hom(D, D, P.to_rational())
        sig_c = center.induced_hom(Dv, Dv, P.to_rational())
        for g in Dv.elements():
            if h(sig_c(g)) != sig_w(h(g)):
                bad.append(f"automorphism {perm} on {g}")
    return bad


def lemma2_suite(R: RootSystem, fault: Optional[str] = None) -> List[CheckResult]:
    P = reduction.partition(R)
    mults = None
    if fault == "t-no-multiplier":
        mults = [1] * len(P.primed_order)
    maps = reduction.build_maps(P, t_multipliers=mults)
    return reduction.verify_lemma2(R, maps) + reduction.claim_check(R, maps)


def table91_suite(R: RootSystem, fault: Optional[str] = None) -> List[CheckResult]:
    rho_map = None
    if fault == "rho-zero":
        h = center.rho(R)
        rho_map = center.GroupHom(h.source, h.target, tuple(h.target.zero for _ in h.matrix))
    got = [[v.value for v in row] for row in center.induced_pairing(R, rho_map).values]
    want = expected_induced_pairing(R.label)
    ok = got == want
    return [CheckResult("table91.induced_pairing", ok,
                        None if ok else f"got {_fmt(got)}, expected {_fmt(want)}")]


def _fmt(table) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in table) + "]"


SUITES: Dict[str, Callable] = {
    "phi": phi_suite,
    "center": center_suite,
    "lemma2": lemma2_suite,
    "table91": table91_suite,
}


def run(scope: str = "all", max_rank: int = 8, fault: Optional[str] = None,
        labels: Optional[Sequence[TypeLabel]] = None) -> VerifyReport:
    """Run the selected suites over every admissible type of rank <= ``max_rank``
    (exceptional types included whenever their rank fits).
    """
    scopes = SCOPES if scope == "all" else (scope,)
    for sc in scopes:
        if sc not in SUITES:
            raise ValueError(f"unknown scope {sc!r}")
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    labels = sorted(all_labels(max_rank) if labels is None else labels)
    report = VerifyReport()
    for label in labels:
        R = build(label)
        for sc in scopes:
            if sc in ("lemma2", "table91"):
                report.add(label, SUITES[sc](R, fault=fault))
            else:
                report.add(label, SUITES[sc](R))
    return report
