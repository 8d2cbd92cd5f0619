"""Brute-force cross-checks that share no code path with the canonical forms.

* :func:`fingerprint_limit` decides membership ``v/m in A^-j Z^r`` directly
  and enumerates the torsion image element by element.
* :func:`determinantal_divisors` recomputes invariant factors from gcds of
  minors.
* :func:`count_torus_fixed_points` counts fixed points of ``x -> A^k x`` on
  ``R^d/Z^d`` by enumerating rational points; :func:`torus_fixed_points`
  is the determinant formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from math import gcd, prod
from typing import Optional, Sequence

from sympy import primerange

from .abelian import cyclic_factor_gcds
from .endomorphisms import is_expanding
from .intmat import IntMatrix, SmithForm
from .limits import CanonicalScalars, LimitGroup, StationarySystem, primes_of

__all__ = [
    "LimitFingerprint", "fingerprint_limit", "check_canonical_against_fingerprint",
    "summand_vectors", "default_denominators", "torus_fixed_points",
    "count_torus_fixed_points", "fingerprint_for", "determinantal_divisors", "verify_smith_form",
    "DEFAULT_DEPTH", "OracleMismatch",
]

DEFAULT_DEPTH = 8
ENUMERATION_LIMIT = 200_000


class OracleMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class LimitFingerprint:
    """What brute force says about ``lim(G, alpha)`` up to a finite depth.

    ``witnesses`` holds ``(vector index, m, member, first_j)``: whether
    ``v/m`` lies in ``A^-j Z^r`` for some ``j <= depth`` (and the least
    such ``j``).  ``torsion_orders`` holds ``(m, #{x : m x = 0})`` for the
    image of the torsion subgroup under ``alpha^depth``.
    """

    depth: int
    torsion_orders: tuple[tuple[int, int], ...]
    witnesses: tuple[tuple[int, int, bool, Optional[int]], ...]
    vectors: tuple[tuple[int, ...], ...]

    def member(self, index: int, m: int) -> Optional[bool]:
        for i, mm, member, _ in self.witnesses:
            if i == index and mm == m:
                return member
        return None


def default_denominators(n: int = 1) -> list[int]:
    return sorted(set(primerange(2, 14)) | set(primes_of(n)))


def _membership(A: IntMatrix, v: Sequence[int], m: int, depth: int) -> Optional[int]:
    # v/m = A^-j w with w integral  <=>  A^j v = 0 (mod m)
    w = list(v)
    for j in range(depth + 1):
        if all(x % m == 0 for x in w):
            return j
        w = [sum(A[i, k] * w[k] for k in range(A.cols)) for i in range(A.rows)]
    return None


def _torsion_elements(orders):
    return product(*(range(t) for t in orders))


def _torsion_profile(sys: StationarySystem, depth: int) -> tuple[tuple[int, int], ...]:
    a = sys.endo.restrict_to_torsion()
    tors = a.domain.torsion
    if not tors:
        return ()
    if prod(tors) > ENUMERATION_LIMIT:
        raise ValueError("torsion subgroup too large to enumerate")
    M = a.matrix
    Md = M ** depth
    image = set()
    for x in _torsion_elements(tors):
        y = tuple(sum(Md[i, k] * x[k] for k in range(len(tors))) % tors[i]
                  for i in range(len(tors)))
        image.add(y)
    exponent = tors[-1]
    profile = []
    for m in range(1, exponent + 1):
        if exponent % m == 0:
            killed = sum(1 for y in image if all(m * c % t == 0 for c, t in zip(y, tors)))
            profile.append((m, killed))
    return tuple(profile)


def fingerprint_limit(sys: StationarySystem, depth: int = DEFAULT_DEPTH,
                      denominators: Optional[Sequence[int]] = None,
                      vectors: Optional[Sequence[Sequence[int]]] = None) -> LimitFingerprint:
    """Membership witnesses for ``vectors`` (default: the free generators)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    A = sys.free_action
    r = A.rows
    if denominators is None:
        denominators = default_denominators()
    if vectors is None:
        vectors = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    vectors = tuple(tuple(v) for v in vectors)
    witnesses = []
    for idx, v in enumerate(vectors):
        for m in denominators:
            j = _membership(A, v, m, depth)
            witnesses.append((idx, m, j is not None, j))
    return LimitFingerprint(depth, _torsion_profile(sys, depth), tuple(witnesses), vectors)


def summand_vectors(L: LimitGroup) -> tuple[tuple[int, ...], ...]:
    """Primitive generators of the canonical summands, in free coordinates."""
    fp = L.free_part
    if not isinstance(fp, CanonicalScalars):
        raise ValueError("an opaque limit has no canonical summands")
    B = fp.basis
    if B is None:
        if L.presentation is not None and L.presentation.group.free_rank == fp.rank:
            B = IntMatrix.identity(fp.rank)
        elif fp.rank == 0:
            return ()
        else:
            raise ValueError("canonical limit without summand generators")
    out = []
    for j in range(B.cols):
        col = B.col(j)
        c = reduce(gcd, col, 0) or 1
        out.append(tuple(x // c for x in col))
    return tuple(out)


def check_canonical_against_fingerprint(L: LimitGroup, fp: LimitFingerprint) -> bool:
    """True iff the canonical form agrees with the brute-force fingerprint.

    For each summand generator ``v_i`` with prime set ``S_i``: ``v_i/p`` is
    a member for ``p`` in ``S_i``, and is not for primes inverted nowhere.
    The torsion order profile must match as well.
    """
    if not L.is_canonical:
        raise ValueError("cannot check an opaque limit against a fingerprint")
    sets = L.free_part.prime_sets
    if len(fp.vectors) != len(sets):
        return False
    inverted = set(L.free_part.inverted_primes)
    for i, S in enumerate(sets):
        for idx, m, member, _ in fp.witnesses:
            if idx != i or len(primes_of(m)) != 1 or m != primes_of(m)[0]:
                continue
            if m in S and not member:
                return False
            if m not in inverted and member:
                return False
    want = tuple((m, cyclic_factor_gcds(L.torsion, m)) for m, _ in fp.torsion_orders)
    if fp.torsion_orders:
        if want != fp.torsion_orders:
            return False
        if fp.torsion_orders[-1][1] != L.torsion.torsion_order:
            return False
    elif not L.torsion.is_trivial:
        return False
    return True


def fingerprint_for(L: LimitGroup, depth: int = DEFAULT_DEPTH,
                    denominators: Optional[Sequence[int]] = None) -> LimitFingerprint:
    """Fingerprint of ``L``'s originating system, probed at its summand generators."""
    if L.presentation is None:
        raise ValueError("limit has no originating system")
    return fingerprint_limit(L.presentation, depth, denominators, summand_vectors(L))


# -- dynamics ---------------------------------------------------------------

def torus_fixed_points(A: IntMatrix, k: int) -> int:
    """``|det(A^k - I)|``: fixed points of ``x -> A^k x`` on the torus."""
    A = A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)
    if k < 1:
        raise ValueError("k must be at least 1")
    if not is_expanding(A):
        raise ValueError("A is not expanding")
    return abs((A ** k - IntMatrix.identity(A.rows)).det())


def count_torus_fixed_points(A: IntMatrix, k: int) -> int:
    """Enumerate the fixed points of ``x -> A^k x`` on ``R^d/Z^d``.

    Every fixed point ``x`` satisfies ``(A^k - I) x in Z^d`` and so lies in
    ``(1/D) Z^d`` with ``D = |det(A^k - I)|``; all of those are tried.
    """
    A = A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)
    d = A.rows
    B = A ** k - IntMatrix.identity(d)
    D = abs(B.det())
    if D == 0:
        raise ValueError("A^k has eigenvalue 1; fixed points are not isolated")
    if D ** d > ENUMERATION_LIMIT:
        raise ValueError("too many candidate points to enumerate")
    Ak = A ** k
    count = 0
    for x in product(range(D), repeat=d):
        if all(sum(Ak[i, j] * x[j] for j in range(d)) % D == x[i] for i in range(d)):
            count += 1
    return count


# -- Smith form -------------------------------------------------------------

def _minors_gcd(A: IntMatrix, k: int) -> int:
    g = 0
    for rows in combinations(range(A.rows), k):
        for cols in combinations(range(A.cols), k):
            g = gcd(g, A.submatrix(rows, cols).det())
            if g == 1:
                return 1
    return g


def determinantal_divisors(A: IntMatrix) -> list[int]:
    """Invariant factors as ratios ``D_k / D_{k-1}`` of minor gcds."""
    out = []
    prev = 1
    for k in range(1, min(A.rows, A.cols) + 1):
        Dk = _minors_gcd(A, k)
        if Dk == 0:
            break
        out.append(Dk // prev)
        prev = Dk
    return out


def verify_smith_form(A: IntMatrix, S: SmithForm) -> list[str]:
    problems = []
    if S.U @ A @ S.V != S.D:
        problems.append("U A V != D")
    if abs(S.U.det()) != 1 or abs(S.V.det()) != 1:
        problems.append("U or V is not unimodular")
    for i in range(S.D.rows):
        for j in range(S.D.cols):
            if i != j and S.D[i, j]:
                problems.append("D is not diagonal")
                break
    diag = list(S.diagonal)
    nonzero = [x for x in diag if x]
    if any(x < 0 for x in diag):
        problems.append("negative diagonal entry")
    if diag[:len(nonzero)] != nonzero:
        problems.append("zeros are not last")
    if any(b % a for a, b in zip(nonzero, nonzero[1:])):
        problems.append("divisibility chain broken")
    if list(S.invariant_factors) != determinantal_divisors(A):
        problems.append("invariant factors disagree with determinantal divisors")
    return problems
