"""Homology, K-theory and Cech cohomology of the solenoid of an expanding map.

For an expanding n-fold self-cover ``g`` of a flat manifold ``Y`` with
Smale space ``(X, phi)``:

* stable groupoid homology     ``H_k(G^s) = lim(H^k(Y), t_coh)``
* unstable groupoid homology   ``H_k(G^u) = lim(H_k(Y), t_hom)``
* Cech cohomology of X         ``H^k(X)   = lim(H^k(Y), g^*)``

K-theory (dimension <= 3) is the limit of the even/odd sums of the same
groups along the block-diagonal transfer.  Ruelle algebras and homoclinic
products are not computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .abelian import FgAbGroup, GroupHom, direct_sum, direct_sum_hom, torsion_subgroup
from .endomorphisms import ExpandingEndo, derive_transfer, special_degree
from .limits import LimitGroup, StationarySystem, induced_trace, limits_isomorphic, \
    parse_limit, primes_of, render_limit, stationary_limit
from .manifolds import InsufficientData, cohomology

__all__ = [
    "InvariantReport", "CheckOutcome", "compute_report", "check_degree_zero",
    "check_top_degree", "check_rational", "check_torsion", "putnam_question",
    "PutnamVerdict", "stable_shifted_forms", "periodic_points", "PeriodicCount",
    "lefschetz_count", "ReportDocument", "NOT_COMPUTED", "render_text", "run_checks",
]

NOT_COMPUTED = ("Ruelle algebras", "homoclinic Kunneth products")
UNSUPPORTED = "unsupported"

PASS, FAIL, SKIP, UNKNOWN = "pass", "fail", "skip", "unknown"


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    status: str
    anchor: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIP)


Graded = tuple[LimitGroup, ...]
KPair = Optional[tuple[LimitGroup, LimitGroup]]


@dataclass(frozen=True)
class InvariantReport:
    endo: ExpandingEndo
    stable_homology: Graded
    unstable_homology: Graded
    cech_X: Graded
    stable_K: KPair
    unstable_K: KPair
    notes: tuple[CheckOutcome, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.endo.dim

    def with_notes(self, notes) -> InvariantReport:
        return InvariantReport(self.endo, self.stable_homology, self.unstable_homology,
                               self.cech_X, self.stable_K, self.unstable_K, tuple(notes))


def _limits(groups, maps) -> Graded:
    return tuple(stationary_limit(StationarySystem(G, f)) for G, f in zip(groups, maps))


def _k_limit(groups, maps, d) -> tuple[LimitGroup, LimitGroup]:
    out = []
    for parity in (0, 1):
        idx = [k for k in range(d + 1) if k % 2 == parity]
        f = direct_sum_hom(*(maps[k] for k in idx)) if idx else GroupHom.zero(FgAbGroup(), FgAbGroup())
        out.append(stationary_limit(StationarySystem(f.domain, f)))
    return out[0], out[1]


def compute_report(e: ExpandingEndo, checks: bool = True) -> InvariantReport:
    m = e.manifold
    d = m.dim
    coh = cohomology(m)
    t = derive_transfer(e)
    stable = _limits(coh, t.transfer_cohomology)
    unstable = _limits(m.homology, t.transfer_homology)
    cech = _limits(coh, e.cohomology_maps())
    stable_K = unstable_K = None
    if d <= 3:
        stable_K = _k_limit(coh, t.transfer_cohomology, d)
        unstable_K = _k_limit(m.homology, t.transfer_homology, d)
    report = InvariantReport(e, stable, unstable, cech, stable_K, unstable_K)
    if checks:
        report = report.with_notes(run_checks(report))
    return report


# -- theorem checks ---------------------------------------------------------

def _is_Z_localized(L: LimitGroup, primes) -> bool:
    return (L.is_canonical and L.torsion.is_trivial
            and L.free_part.prime_sets == (tuple(primes),))


def check_degree_zero(report: InvariantReport, n: Optional[int] = None) -> CheckOutcome:
    n = report.endo.degree if n is None else n
    want = primes_of(n)
    s, u = report.stable_homology[0], report.unstable_homology[0]
    ok = _is_Z_localized(s, want) and _is_Z_localized(u, want)
    return CheckOutcome("degree_zero", PASS if ok else FAIL, "degree-zero theorem",
                        f"stable {s}, unstable {u}, expected Z with primes {set(want) or '{}'}")


def check_top_degree(report: InvariantReport, m=None) -> CheckOutcome:
    """Top-degree groups: Z for orientable Y, 0 otherwise.

    For nonorientable Y only the unstable side vanishes integrally; the
    stable side is ``lim(H^d(Y), t)`` with ``H^d(Y) = Z/2`` and is only
    rationally trivial, so that side is checked rationally.
    """
    m = report.endo.manifold if m is None else m
    d = m.dim
    s, u = report.stable_homology[d], report.unstable_homology[d]
    if m.orientable:
        ok = _is_Z_localized(s, ()) and _is_Z_localized(u, ())
        detail = f"stable {s}, unstable {u}, expected Z"
    else:
        ok = u.is_trivial and s.rank == 0
        detail = f"unstable {u} (expected 0), stable {s} (expected rank 0)"
    return CheckOutcome("top_degree", PASS if ok else FAIL, "top-degree theorem", detail)


def check_rational(report: InvariantReport, m=None) -> CheckOutcome:
    m = report.endo.manifold if m is None else m
    betti = m.betti
    bad = []
    for name, graded in (("stable", report.stable_homology),
                         ("unstable", report.unstable_homology),
                         ("cech", report.cech_X)):
        for k, L in enumerate(graded):
            if L.rank != betti[k]:
                bad.append(f"{name}[{k}] rank {L.rank} != b_{k} = {betti[k]}")
    if report.stable_K is not None:
        for parity in (0, 1):
            want = sum(b for k, b in enumerate(betti) if k % 2 == parity)
            for name, K in (("stable_K", report.stable_K), ("unstable_K", report.unstable_K)):
                if K[parity].rank != want:
                    bad.append(f"{name}[{parity}] rank {K[parity].rank} != {want}")
    euler = sum((-1) ** k * L.rank for k, L in enumerate(report.unstable_homology))
    if euler != 0:
        bad.append(f"alternating sum of unstable ranks is {euler}")
    return CheckOutcome("rational", FAIL if bad else PASS, "rational isomorphism",
                        "; ".join(bad) or f"ranks match Betti numbers {betti}")


def check_torsion(report: InvariantReport, e: Optional[ExpandingEndo] = None) -> CheckOutcome:
    e = report.endo if e is None else e
    m = e.manifold
    if e.degree != special_degree(m):
        return CheckOutcome("torsion", SKIP, "torsion at the special degree",
                            f"degree {e.degree} is not {special_degree(m)}")
    coh = cohomology(m)
    bad = []
    for k in range(m.dim + 1):
        want_u = torsion_subgroup(m.homology[k])
        want_s = torsion_subgroup(coh[k])
        if report.unstable_homology[k].torsion != want_u:
            bad.append(f"unstable[{k}] torsion {report.unstable_homology[k].torsion} != {want_u}")
        if report.stable_homology[k].torsion != want_s:
            bad.append(f"stable[{k}] torsion {report.stable_homology[k].torsion} != {want_s}")
    return CheckOutcome("torsion", FAIL if bad else PASS, "torsion at the special degree",
                        "; ".join(bad) or "graded torsion preserved")


@dataclass(frozen=True)
class PutnamVerdict:
    status: str                   # "match", "no shift works" or "unknown"
    shift: Optional[int]          # k with H^j(X) = H_{j-k}(G^u), if one exists
    reflected: Optional[bool]     # H^j(X) = H_{d-j}(G^u) for all j

    def __str__(self) -> str:
        if self.status != "match":
            return self.status
        bits = []
        if self.shift is not None:
            bits.append(f"shift {self.shift}")
        if self.reflected:
            bits.append("d-* indexing")
        return "match at " + " and ".join(bits)


def _graded_iso(pairs) -> Optional[bool]:
    verdict: Optional[bool] = True
    for a, b in pairs:
        r = limits_isomorphic(a, b)
        if r is False:
            return False
        if r is None:
            verdict = None
    return verdict


_ZERO = parse_limit("0")


def putnam_question(e_or_report) -> PutnamVerdict:
    """Is ``H^*(X)`` a shift of the unstable homology?

    Every shift k in [-d, d] is tried, plus the reflected indexing
    ``H^j(X) = H_{d-j}(G^u)``.
    """
    report = e_or_report if isinstance(e_or_report, InvariantReport) else \
        compute_report(e_or_report, checks=False)
    d = report.dim
    cech, uns = report.cech_X, report.unstable_homology

    def u(i):
        return uns[i] if 0 <= i <= d else _ZERO

    def c(j):
        return cech[j] if 0 <= j <= d else _ZERO

    unknown = False
    shift = None
    for k in sorted(range(-d, d + 1), key=lambda k: (abs(k), k)):
        r = _graded_iso((c(j), u(j - k)) for j in range(min(0, k), max(d, d + k) + 1))
        if r is None:
            unknown = True
        elif r and shift is None:
            shift = k
    reflected = _graded_iso((cech[j], uns[d - j]) for j in range(d + 1))
    if reflected is None:
        unknown = True
    if shift is not None or reflected:
        return PutnamVerdict("match", shift, reflected)
    return PutnamVerdict("unknown" if unknown else "no shift works", None, reflected)


def stable_shifted_forms(e_or_report, assume_spinc: bool = False):
    """``lim(H_{d-j}(Y), g_*)`` and, when allowed, the K-homology analogue.

    Returns ``(graded, k_pair, outcome)``; ``graded`` is None for
    nonorientable manifolds and ``k_pair`` is None unless ``assume_spinc``
    holds and ``d <= 3``.
    """
    report = e_or_report if isinstance(e_or_report, InvariantReport) else \
        compute_report(e_or_report, checks=False)
    e = report.endo
    m, d = e.manifold, e.dim
    anchor = "orientable duality"
    if not m.orientable:
        return None, None, CheckOutcome("stable_shifted", SKIP, anchor, "nonorientable manifold")
    gs = e.induced_homology
    graded = tuple(stationary_limit(StationarySystem(m.homology[d - j], gs[d - j]))
                   for j in range(d + 1))
    verdict = _graded_iso(zip(graded, report.stable_homology))
    detail = "homology form"
    k_pair = None
    if assume_spinc and d <= 3 and report.stable_K is not None:
        lims = _k_limit(m.homology, gs, d)
        k_pair = (lims[d % 2], lims[(d + 1) % 2])
        kv = _graded_iso(zip(k_pair, report.stable_K))
        verdict = False if False in (verdict, kv) else (None if None in (verdict, kv) else True)
        detail += " and K form"
    status = {True: PASS, False: FAIL, None: UNKNOWN}[verdict]
    return graded, k_pair, CheckOutcome("stable_shifted", status, anchor, detail)


def lefschetz_count(n: int, k: int, d: int, top_sign: int) -> int:
    """Fixed points of phi^k when only degrees 0 and d carry rational homology."""
    return abs(n ** k + (-1) ** d * top_sign ** k)


@dataclass(frozen=True)
class PeriodicCount:
    k: int
    value: int
    bounds: tuple[int, int]


def periodic_points(e_or_report, k: int) -> PeriodicCount:
    """``|Per_k(X, phi)|`` by the Lefschetz formula on unstable homology.

    Only the actions in degree 0 (multiplication by n) and degree d (+-1)
    are pinned down, so any nonzero intermediate rational homology raises
    :class:`InsufficientData`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    report = e_or_report if isinstance(e_or_report, InvariantReport) else \
        compute_report(e_or_report, checks=False)
    e = report.endo
    d, n = e.dim, e.degree
    busy = [i for i in range(1, d) if report.unstable_homology[i].rank]
    if busy:
        raise InsufficientData(
            f"unstable homology has rational rank in degrees {busy}; "
            "the induced maps there are not determined")
    total = 0
    for i in (0, d) if d else (0,):
        sys = report.unstable_homology[i].presentation
        total += (-1) ** i * induced_trace(sys, k)
    return PeriodicCount(k, abs(total), (n ** k - 1, n ** k + 1))


def run_checks(report: InvariantReport, assume_spinc: bool = False) -> list[CheckOutcome]:
    out = [
        check_degree_zero(report),
        check_top_degree(report),
        check_rational(report),
        check_torsion(report),
    ]
    v = putnam_question(report)
    m = report.endo.manifold
    if m.orientable:
        status = PASS if v.reflected else (UNKNOWN if v.status == "unknown" else FAIL)
    else:
        status = {"match": PASS, "unknown": UNKNOWN}.get(v.status, PASS)
    out.append(CheckOutcome("putnam_question", status, "Putnam question", str(v)))
    out.append(stable_shifted_forms(report, assume_spinc)[2])
    return out


# -- serialization ----------------------------------------------------------

def _graded_doc(graded) -> dict:
    return {str(k): render_limit(L) for k, L in enumerate(graded)}


def _k_doc(pair) -> object:
    if pair is None:
        return UNSUPPORTED
    return {"0": render_limit(pair[0]), "1": render_limit(pair[1])}


@dataclass(frozen=True)
class ReportDocument:
    """Machine-readable report: rendered groups per degree plus check outcomes."""

    manifold: str
    degree: int
    gradeds: dict
    checks: tuple[CheckOutcome, ...]

    @classmethod
    def from_report(cls, report: InvariantReport) -> ReportDocument:
        gradeds = {
            "stable_homology": _graded_doc(report.stable_homology),
            "unstable_homology": _graded_doc(report.unstable_homology),
            "cech_X": _graded_doc(report.cech_X),
            "stable_K": _k_doc(report.stable_K),
            "unstable_K": _k_doc(report.unstable_K),
        }
        return cls(report.endo.manifold.name, report.endo.degree, gradeds, report.notes)

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "degree": self.degree,
            "gradeds": self.gradeds,
            "checks": [{"name": c.name, "status": c.status, "anchor": c.anchor}
                       for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        """Parse a document, turning every group string back into a limit."""
        doc = json.loads(text)
        gradeds = {}
        for key, value in doc["gradeds"].items():
            if value == UNSUPPORTED:
                gradeds[key] = value
                continue
            gradeds[key] = {deg: render_limit(parse_limit(s)) for deg, s in value.items()}
        checks = tuple(CheckOutcome(c["name"], c["status"], c["anchor"]) for c in doc["checks"])
        return cls(doc["manifold"], int(doc["degree"]), gradeds, checks)

    def limits(self, key: str) -> tuple[LimitGroup, ...]:
        return tuple(parse_limit(s) for _, s in sorted(self.gradeds[key].items(),
                                                        key=lambda kv: int(kv[0])))


def render_text(report: InvariantReport) -> str:
    e = report.endo
    lines = [f"{e.name}: {e.degree}-fold expanding self-cover of {e.manifold.name} "
             f"(d = {e.dim})"]

    def graded(title, gs):
        lines.append(title)
        for k, L in enumerate(gs):
            raw = L.raw_form()
            extra = f"   (= {raw})" if raw != str(L) else ""
            lines.append(f"  {k}: {L}{extra}")

    graded("stable homology H_*(G^s) = lim(H^*(Y), t_coh)", report.stable_homology)
    graded("unstable homology H_*(G^u) = lim(H_*(Y), t_hom)", report.unstable_homology)
    graded("Cech cohomology H^*(X) = lim(H^*(Y), g^*)", report.cech_X)
    for title, K in (("stable K-theory", report.stable_K), ("unstable K-theory", report.unstable_K)):
        if K is None:
            lines.append(f"{title}: {UNSUPPORTED} (d > 3)")
        else:
            lines.append(f"{title}: K_0 = {K[0]}, K_1 = {K[1]}")
    lines.append("not computed: " + ", ".join(NOT_COMPUTED))
    if report.notes:
        lines.append("checks")
        width = max(len(c.name) for c in report.notes)
        for c in report.notes:
            lines.append(f"  {c.name:<{width}}  {c.status:<7}  {c.detail}")
    return "\n".join(lines) + "\n"
