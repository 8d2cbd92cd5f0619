"""The ten acceptance criteria, as functions returning ``(passed, detail)``.

Shared by ``tests/test_acceptance.py`` and the ``verify`` subcommand.
"""

from __future__ import annotations

import dataclasses
import random
from typing import Callable

from .abelian import FgAbGroup, GroupHom, torsion_subgroup
from .endomorphisms import builtin_endos, get_builtin
from .intmat import IntMatrix, smith_normal_form
from .invariants import compute_report, periodic_points, putnam_question
from .limits import CanonicalScalars, LimitGroup, StationarySystem, limits_isomorphic, \
    parse_limit, primes_of, stationary_limit
from .manifolds import THREE_MANIFOLD_NAMES, cohomology, euler_characteristic, lookup, \
    validate
from .oracle import DEFAULT_DEPTH, check_canonical_against_fingerprint, default_denominators, \
    fingerprint_for, torus_fixed_points, verify_smith_form

Result = tuple[bool, str]


def _graded(texts) -> tuple[LimitGroup, ...]:
    return tuple(parse_limit(t) for t in texts)


def _same(actual, expected) -> bool:
    return len(actual) == len(expected) and all(
        limits_isomorphic(a, b) is True for a, b in zip(actual, expected))


def _fmt(graded) -> str:
    return "(" + ", ".join(L.raw_form() for L in graded) + ")"


def criterion_1(depth: int = DEFAULT_DEPTH) -> Result:
    r = compute_report(get_builtin("klein9"))
    want = {
        "stable": _graded(["Z[1/9]", "Z[1/3]", "Z/2"]),
        "unstable": _graded(["Z[1/9]", "Z[1/3] (+) Z/2", "0"]),
        "cech": _graded(["Z", "Z[1/3]", "Z/2"]),
    }
    got = {"stable": r.stable_homology, "unstable": r.unstable_homology, "cech": r.cech_X}
    bad = [k for k in want if not _same(got[k], want[k])]
    detail = ", ".join(f"{k} {_fmt(got[k])}" for k in got)
    return not bad, detail if not bad else f"mismatch in {bad}: {detail}"


def criterion_2(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    for name in THREE_MANIFOLD_NAMES:
        m = lookup(name)
        problems = validate(m)
        if problems:
            bad.append(f"{name}: {problems}")
        if euler_characteristic(m) != 0:
            bad.append(f"{name}: chi = {euler_characteristic(m)}")
    return not bad, "; ".join(bad) or f"{len(THREE_MANIFOLD_NAMES)} rows valid, chi = 0"


def criterion_3(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    for name, e in builtin_endos().items():
        r = compute_report(e, checks=False)
        want = LimitGroup(FgAbGroup(), CanonicalScalars((primes_of(e.degree),)))
        for side, L in (("stable", r.stable_homology[0]), ("unstable", r.unstable_homology[0])):
            if L != want:
                bad.append(f"{name} {side}: {L} != {want}")
    return not bad, "; ".join(bad) or "degree 0 is Z[1/primes(n)] for every builtin"


def criterion_4(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    Zlim, zero = parse_limit("Z"), parse_limit("0")
    for name, e in builtin_endos().items():
        r = compute_report(e, checks=False)
        d = e.dim
        if e.manifold.orientable:
            for side, L in (("stable", r.stable_homology[d]), ("unstable", r.unstable_homology[d])):
                if L != Zlim:
                    bad.append(f"{name} {side} H_{d} = {L}")
        else:
            L = r.unstable_homology[d]
            if L != zero:
                bad.append(f"{name} unstable H_{d} = {L}")
            if r.stable_homology[d].rank != 0:
                bad.append(f"{name} stable H_{d} has rank {r.stable_homology[d].rank}")
    return not bad, "; ".join(bad) or "top degree Z (orientable) / 0 (klein9 unstable)"


def criterion_5(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    for name, e in builtin_endos().items():
        r = compute_report(e, checks=False)
        b = e.manifold.betti
        for side, graded in (("stable", r.stable_homology), ("unstable", r.unstable_homology),
                             ("cech", r.cech_X)):
            ranks = tuple(L.rank for L in graded)
            if ranks != b:
                bad.append(f"{name} {side} ranks {ranks} != {b}")
    return not bad, "; ".join(bad) or "limit ranks equal Betti numbers for every builtin"


def criterion_6(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    for name in ("klein9", "o36x125"):
        e = get_builtin(name)
        m = e.manifold
        r = compute_report(e, checks=False)
        coh = cohomology(m)
        got_u = tuple(L.torsion for L in r.unstable_homology)
        got_s = tuple(L.torsion for L in r.stable_homology)
        want_u = tuple(torsion_subgroup(H) for H in m.homology)
        want_s = tuple(torsion_subgroup(H) for H in coh)
        if got_u != want_u:
            bad.append(f"{name} unstable torsion {tuple(map(str, got_u))}")
        if got_s != want_s:
            bad.append(f"{name} stable torsion {tuple(map(str, got_s))}")
    o36 = compute_report(get_builtin("o36x125"), checks=False)
    if o36.unstable_homology[1].torsion != FgAbGroup(0, (4, 4)):
        bad.append("(Z/4)^2 lost in degree 1 for O3_6")
    return not bad, "; ".join(bad) or "graded torsion preserved; (Z/4)^2 in degree 1 for O3_6"


def criterion_7(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    v = putnam_question(get_builtin("klein9"))
    if v.status != "no shift works":
        bad.append(f"klein9: {v}")
    for name, e in builtin_endos().items():
        if e.manifold.orientable:
            v = putnam_question(e)
            if not v.reflected:
                bad.append(f"{name}: {v}")
    return not bad, "; ".join(bad) or "klein9: no shift works; orientable: match at d-*"


def criterion_8(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    c2 = compute_report(get_builtin("circle2"), checks=False)
    for k in range(1, 11):
        got = periodic_points(c2, k).value
        want = torus_fixed_points(IntMatrix.from_rows([[2]]), k)
        if got != want or want != 2 ** k - 1:
            bad.append(f"circle2 k={k}: {got} vs {want}")
    o36 = compute_report(get_builtin("o36x125"), checks=False)
    for k in range(1, 5):
        got = periodic_points(o36, k).value
        if got not in (125 ** k - 1, 125 ** k + 1):
            bad.append(f"o36x125 k={k}: {got}")
    return not bad, "; ".join(bad) or "circle2 k=1..10 matches oracle; o36x125 in {125^k-1, 125^k+1}"


def _all_limits(report):
    for graded in (report.stable_homology, report.unstable_homology, report.cech_X):
        yield from graded
    for K in (report.stable_K, report.unstable_K):
        if K is not None:
            yield from K


def criterion_9(depth: int = DEFAULT_DEPTH) -> Result:
    bad = []
    checked = 0
    for name, e in builtin_endos().items():
        dens = default_denominators(e.degree)
        for L in _all_limits(compute_report(e, checks=False)):
            checked += 1
            if not check_canonical_against_fingerprint(L, fingerprint_for(L, depth, dens)):
                bad.append(f"{name}: {L}")
    # injected corruptions must be caught
    L = stationary_limit(StationarySystem.scalar(FgAbGroup(1), 9))
    fp = fingerprint_for(L, depth)
    wrong_primes = dataclasses.replace(
        L, free_part=CanonicalScalars(((2,),), (), L.free_part.basis))
    if check_canonical_against_fingerprint(wrong_primes, fp):
        bad.append("corrupted prime set {2} not detected")
    T = stationary_limit(StationarySystem.scalar(FgAbGroup(0, (4,)), 1))
    wrong_torsion = dataclasses.replace(T, torsion=FgAbGroup(0, (2,)))
    if check_canonical_against_fingerprint(wrong_torsion, fingerprint_for(T, depth)):
        bad.append("corrupted torsion Z/2 (for Z/4) not detected")
    return not bad, "; ".join(bad) or f"{checked} graded pieces agree at depth {depth}; 2 corruptions caught"


def _random_matrix(rng: random.Random) -> IntMatrix:
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    return IntMatrix.from_rows([[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)])


def _random_diagonal_system(rng: random.Random) -> StationarySystem:
    r = rng.randint(0, 3)
    tors = []
    t = 1
    for _ in range(rng.randint(0, 2)):
        t *= rng.choice([2, 3, 2, 5])
        tors.append(t)
    G = FgAbGroup(r, tuple(tors))
    diag = [rng.choice([x for x in range(-12, 13) if x]) for _ in range(r)]
    diag += [rng.randint(0, 30) for _ in tors]
    return StationarySystem(G, GroupHom(G, G, IntMatrix.diagonal(diag)))


def criterion_10(depth: int = DEFAULT_DEPTH, seed: int = 20240601) -> Result:
    rng = random.Random(seed)
    bad = []
    for i in range(200):
        A = _random_matrix(rng)
        problems = verify_smith_form(A, smith_normal_form(A))
        if problems:
            bad.append(f"SNF {A}: {problems}")
    for i in range(100):
        sys = _random_diagonal_system(rng)
        L1 = stationary_limit(sys)
        L2 = stationary_limit(StationarySystem(sys.group, sys.endo @ sys.endo))
        if limits_isomorphic(L1, L2) is not True:
            bad.append(f"lim(G, a) = {L1} but lim(G, a^2) = {L2}")
    return not bad, "; ".join(bad[:5]) or "200 SNF instances and 100 diagonal systems pass"


CRITERIA: dict[int, tuple[str, Callable[..., Result]]] = {
    1: ("Klein bottle golden test", criterion_1),
    2: ("catalog integrity", criterion_2),
    3: ("degree-zero theorem", criterion_3),
    4: ("top-degree theorem", criterion_4),
    5: ("rational-rank theorem", criterion_5),
    6: ("torsion at the special degree", criterion_6),
    7: ("Putnam-question verdicts", criterion_7),
    8: ("Lefschetz cross-check", criterion_8),
    9: ("limit-oracle equivalence", criterion_9),
    10: ("property suites", criterion_10),
}


def run_all(depth: int = DEFAULT_DEPTH) -> list[tuple[int, str, bool, str]]:
    out = []
    for number, (title, fn) in CRITERIA.items():
        try:
            ok, detail = fn(depth)
        except Exception as exc:  # a crash is a failure, reported like one
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((number, title, ok, detail))
    return out
