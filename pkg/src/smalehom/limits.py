"""Stationary inductive limits ``lim(G, alpha)`` of finitely generated groups.

The limit of ``G -> G -> G -> ...`` along a fixed endomorphism splits into
a finite torsion part (the eventual image of ``alpha`` on ``T(G)``) and a
torsion-free part determined by the action ``A`` on the free quotient.
When ``A`` restricted to its eventual image is diagonal over Z with
scalars ``m_1, ..., m_r`` the free part is ``(+)_i Z[1/m_i]``, and
``Z[1/m]`` only depends on the primes dividing ``m``.  Anything else is
reported as :class:`Opaque` rather than guessed at.

>>> sys = StationarySystem.scalar(Z, 9)
>>> print(stationary_limit(sys))
Z[1/3]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from sympy import divisors, primefactors

from .abelian import FgAbGroup, GroupHom, Z, image, torsion_subgroup
from .intmat import IntMatrix, charpoly, express_in_basis, image_lattice, \
    kernel_lattice, solve_congruences

__all__ = [
    "StationarySystem", "CanonicalScalars", "Opaque", "LimitGroup", "FreeLimit",
    "eventual_torsion", "stationary_limit", "limit_rank", "induced_trace",
    "limits_isomorphic", "mod_p_rank", "primes_of", "parse_limit", "render_limit",
]


def primes_of(m: int) -> tuple[int, ...]:
    """Sorted prime divisors of ``|m|`` (empty for 0 and +-1)."""
    m = abs(m)
    return tuple(int(p) for p in primefactors(m)) if m > 1 else ()


@dataclass(frozen=True)
class StationarySystem:
    """A group together with an endomorphism."""

    group: FgAbGroup
    endo: GroupHom

    def __post_init__(self) -> None:
        if self.endo.domain != self.group or self.endo.codomain != self.group:
            raise ValueError("the connecting map must be an endomorphism of the group")

    @classmethod
    def scalar(cls, G: FgAbGroup, m: int) -> StationarySystem:
        return cls(G, GroupHom.scalar(G, m))

    @classmethod
    def from_matrix(cls, G: FgAbGroup, rows) -> StationarySystem:
        return cls(G, GroupHom(G, G, IntMatrix.from_rows(rows, cols=G.ngens)))

    @property
    def free_action(self) -> IntMatrix:
        return self.endo.free_block()


@dataclass(frozen=True)
class CanonicalScalars:
    """Free part ``(+)_i Z[1/prod(S_i)]``.

    ``prime_sets`` is sorted and is the only field used for equality.
    ``multipliers`` keeps the raw scalars (e.g. 9 for ``Z[1/9]``) and
    ``basis`` the summand generators as columns in free-quotient
    coordinates, when known.
    """

    prime_sets: tuple[tuple[int, ...], ...] = ()
    multipliers: tuple[int, ...] = field(default=(), compare=False)
    basis: Optional[IntMatrix] = field(default=None, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.prime_sets)

    @property
    def inverted_primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for S in self.prime_sets for p in S}))


@dataclass(frozen=True)
class Opaque:
    """Free part that could not be put in canonical form."""

    rank: int
    inverted_primes: tuple[int, ...]
    matrix_class: Optional[IntMatrix] = field(default=None, compare=False, repr=False)
    reason: str = field(default="", compare=False)


FreeLimit = Union[CanonicalScalars, Opaque]


def _sorted_summands(prime_sets, multipliers=None, basis=None) -> CanonicalScalars:
    order = sorted(range(len(prime_sets)), key=lambda i: (len(prime_sets[i]), prime_sets[i]))
    sets = tuple(prime_sets[i] for i in order)
    mults = tuple(multipliers[i] for i in order) if multipliers else ()
    if basis is not None:
        basis = basis.submatrix(range(basis.rows), order)
    return CanonicalScalars(sets, mults, basis)


@dataclass(frozen=True)
class LimitGroup:
    torsion: FgAbGroup
    free_part: FreeLimit
    presentation: Optional[StationarySystem] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.torsion.free_rank:
            raise ValueError("the torsion part of a limit must be finite")

    @property
    def rank(self) -> int:
        return self.free_part.rank

    @property
    def is_canonical(self) -> bool:
        return isinstance(self.free_part, CanonicalScalars)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and self.torsion.is_trivial

    @classmethod
    def from_group(cls, G: FgAbGroup) -> LimitGroup:
        """A finitely generated group viewed as a (constant) limit."""
        return cls(torsion_subgroup(G), CanonicalScalars(((),) * G.free_rank))

    def __str__(self) -> str:
        return render_limit(self)

    @classmethod
    def parse(cls, text: str) -> LimitGroup:
        return parse_limit(text)

    def raw_form(self) -> str:
        """Rendering with the raw multipliers, e.g. ``Z[1/9]`` instead of ``Z[1/3]``."""
        fp = self.free_part
        if not isinstance(fp, CanonicalScalars) or not fp.multipliers:
            return str(self)
        parts = [("Z" if abs(m) == 1 else f"Z[1/{abs(m)}]") for m in fp.multipliers]
        if not self.torsion.is_trivial:
            parts.append(str(self.torsion))
        return " (+) ".join(parts)


def _render_free(fp: FreeLimit) -> list[str]:
    if isinstance(fp, Opaque):
        primes = ",".join(str(p) for p in fp.inverted_primes)
        return [f"Opaque(rank={fp.rank}, primes={{{primes}}})"]
    parts = []
    i = 0
    sets = fp.prime_sets
    while i < len(sets):
        j = i
        while j < len(sets) and sets[j] == sets[i]:
            j += 1
        base = "Z"
        if sets[i]:
            m = 1
            for p in sets[i]:
                m *= p
            base = f"Z[1/{m}]"
        parts.append(base if j - i == 1 else f"{base}^{j - i}")
        i = j
    return parts


def render_limit(L: LimitGroup) -> str:
    parts = _render_free(L.free_part)
    if not L.torsion.is_trivial:
        parts.append(str(L.torsion))
    return " (+) ".join(parts) if parts else "0"


_OPAQUE = re.compile(r"^Opaque\(rank=(\d+),\s*primes=\{([\d,\s]*)\}\)$")
_LOCALIZED = re.compile(r"^Z\[1/(\d+)\](?:\^(\d+))?$")


def parse_limit(text: str) -> LimitGroup:
    text = text.strip()
    if text in ("0", "{0}"):
        return LimitGroup(FgAbGroup(), CanonicalScalars())
    sets: list[tuple[int, ...]] = []
    opaque = None
    torsion_bits = []
    for piece in (p.strip() for p in text.split("(+)")):
        m = _OPAQUE.match(piece)
        if m:
            primes = tuple(sorted(int(p) for p in m.group(2).split(",") if p.strip()))
            opaque = Opaque(int(m.group(1)), primes)
            continue
        m = _LOCALIZED.match(piece)
        if m:
            sets.extend([primes_of(int(m.group(1)))] * int(m.group(2) or 1))
            continue
        G = FgAbGroup.parse(piece)
        sets.extend([()] * G.free_rank)
        if G.torsion:
            torsion_bits.append(piece if G.free_rank == 0 else str(FgAbGroup(0, G.torsion)))
    torsion = FgAbGroup.parse(" (+) ".join(torsion_bits)) if torsion_bits else FgAbGroup()
    if opaque is not None:
        if sets:
            raise ValueError("cannot mix an opaque free part with explicit summands")
        return LimitGroup(torsion, opaque)
    return LimitGroup(torsion, _sorted_summands(sets))


# -- computation ----------------------------------------------------------

def _torsion_images(endo: GroupHom, max_steps: int):
    """Successive images of the torsion subgroup under endo^k, k = 0, 1, ..."""
    a = endo.restrict_to_torsion()
    T = a.domain
    yield T
    power = a
    for _ in range(max_steps):
        yield image(power)
        power = a @ power


def eventual_torsion(sys: StationarySystem) -> FgAbGroup:
    """Stable image of ``alpha^k`` on the torsion subgroup."""
    T = torsion_subgroup(sys.group)
    prev = None
    for img in _torsion_images(sys.endo, max(T.torsion_order, 1)):
        if prev is not None and img.torsion_order == prev.torsion_order:
            return img
        prev = img
    return prev


def limit_rank(sys: StationarySystem) -> int:
    A = sys.free_action
    if A.rows == 0:
        return 0
    return (A ** A.rows).rank()


def induced_trace(sys: StationarySystem, k: int) -> int:
    """Trace of ``A^k`` for the free-quotient action ``A``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    A = sys.free_action
    return (A ** k).trace() if A.rows else 0


def _integer_diagonalization(M: IntMatrix):
    """Scalars and a unimodular P with ``M P = P diag(scalars)``, or None."""
    n = M.rows
    cp = charpoly(M)
    c0 = cp[-1]
    if c0 == 0:
        return None

    def value(x):
        acc = 0
        for c in cp:
            acc = acc * x + c
        return acc

    roots = [s * d for d in divisors(abs(c0)) for s in (1, -1) if value(s * d) == 0]
    scalars: list[int] = []
    columns = []
    for lam in sorted(roots, key=lambda x: (abs(x), x)):
        K = kernel_lattice(M - IntMatrix.identity(n).scale(lam))
        scalars.extend([lam] * K.cols)
        columns.extend(K.col(j) for j in range(K.cols))
    if len(columns) != n:
        return None
    P = IntMatrix.from_columns(columns, n)
    if P.det() not in (1, -1):
        return None
    return scalars, P


def _free_limit(A: IntMatrix) -> FreeLimit:
    r = A.rows
    if r == 0:
        return CanonicalScalars()
    if A.det() != 0:
        B, M = IntMatrix.identity(r), A
    else:
        P = A ** r
        if P.is_zero():
            return CanonicalScalars()
        # lim(Z^r, A) = lim(A^r Z^r, A) and A is injective on that lattice
        B = image_lattice(P)
        M = express_in_basis(B, A @ B)
    n = M.rows
    diag = _integer_diagonalization(M)
    if diag is not None:
        scalars, Pm = diag
        return _sorted_summands([primes_of(m) for m in scalars], scalars, B @ Pm)
    det = M.det()
    primes = primes_of(det)
    Mn = M ** n
    if all(all(x % p == 0 for x in Mn.entries) for p in primes):
        # nilpotent mod every prime of det: every element becomes p-divisible
        return CanonicalScalars((primes,) * n, (), B)
    return Opaque(n, primes, M, "eventual free action is not diagonal over Z")


def _splitting_power(endo: GroupHom, kmax: int) -> Optional[int]:
    """Smallest k <= kmax for which alpha^k preserves some complement of T."""
    G = endo.domain
    r = G.free_rank
    tors = G.torsion
    if r == 0 or not tors:
        return 1
    m = len(tors)
    power = endo
    for k in range(1, kmax + 1):
        A, B, C = power.free_block(), power.torsion_block(), power.mixed_block()
        if C.is_zero():
            return k
        # unknown S: Z^r -> T with S A - B S = C (mod torsion orders)
        rows, rhs, moduli = [], [], []
        for i in range(m):
            for j in range(r):
                row = [0] * (m * r)
                for l in range(r):
                    row[i * r + l] += A[l, j]
                for l in range(m):
                    row[l * r + j] -= B[i, l]
                rows.append(row)
                rhs.append(C[i, j])
                moduli.append(tors[i])
        x, _ = solve_congruences(IntMatrix.from_rows(rows, cols=m * r), rhs, moduli)
        if x is not None:
            return k
        power = endo @ power
    return None


def stationary_limit(sys: StationarySystem) -> LimitGroup:
    """Canonical form of ``lim(G, alpha)``."""
    torsion = eventual_torsion(sys)
    free = _free_limit(sys.free_action)
    if free.rank and not torsion.is_trivial:
        kmax = min(2 * torsion_subgroup(sys.group).torsion_order, 64)
        if _splitting_power(sys.endo, kmax) is None:
            free = Opaque(free.rank, free.inverted_primes,
                          sys.free_action, "extension by torsion not certified split")
    return LimitGroup(torsion, free, sys)


def mod_p_rank(L: LimitGroup, p: int) -> int:
    """Dimension over F_p of (free part of L) / p."""
    fp = L.free_part
    if isinstance(fp, CanonicalScalars):
        return sum(1 for S in fp.prime_sets if p not in S)
    if fp.matrix_class is None:
        raise ValueError("opaque limit without its action matrix")
    M = fp.matrix_class
    return (M ** M.rows).rank_mod(p)


def limits_isomorphic(L1: LimitGroup, L2: LimitGroup) -> Optional[bool]:
    """True/False when decidable from the canonical data, None for unknown."""
    if L1.torsion != L2.torsion or L1.rank != L2.rank:
        return False
    # p is inverted somewhere iff (free part)/p has dimension < rank
    if L1.free_part.inverted_primes != L2.free_part.inverted_primes:
        return False
    try:
        primes = set(L1.free_part.inverted_primes) | set(L2.free_part.inverted_primes)
        if any(mod_p_rank(L1, p) != mod_p_rank(L2, p) for p in primes):
            return False
    except ValueError:
        pass
    if L1.is_canonical and L2.is_canonical:
        return L1.free_part.prime_sets == L2.free_part.prime_sets
    return None
