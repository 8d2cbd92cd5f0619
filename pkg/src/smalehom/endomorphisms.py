"""Expanding endomorphisms of flat manifolds, described by induced maps.

An :class:`ExpandingEndo` is an n-fold self-cover ``g`` given by the maps
``g_*`` it induces on integral homology in every degree.  Transfer maps are
recovered from the relations ``g_* o t_hom = n`` and ``t_coh o g^* = n``;
when those relations do not pin down an integral map, an error is raised
instead of picking one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .abelian import FgAbGroup, GroupHom, Z, compose, is_multiplication_by
from .intmat import IntMatrix, charpoly, compound, solve_congruences
from .manifolds import FlatManifold, InsufficientData, cohomology, lookup, validate

__all__ = [
    "ExpandingEndo", "TransferData", "TransferError", "NonIntegralTransfer",
    "AmbiguousTransfer", "derive_transfer", "special_degree",
    "special_transfer_on_torsion", "validate_endo", "is_expanding",
    "circle_endo", "torus_endo", "builtin_endos", "get_builtin", "endo_from_dict",
    "derived_cohomology_maps",
]


class TransferError(ValueError):
    """Transfer data is inconsistent with the induced maps."""


class NonIntegralTransfer(TransferError):
    pass


class AmbiguousTransfer(TransferError):
    pass


def _hom_list(maps, groups, what):
    if maps is None:
        return None
    maps = tuple(maps)
    if len(maps) != len(groups):
        raise ValueError(f"{what}: expected {len(groups)} maps, got {len(maps)}")
    for k, (f, G) in enumerate(zip(maps, groups)):
        if f.domain != G or f.codomain != G:
            raise ValueError(f"{what}[{k}] must be an endomorphism of {G}")
    return maps


@dataclass(frozen=True)
class ExpandingEndo:
    """An expanding n-fold self-cover, known through its induced maps."""

    manifold: FlatManifold
    degree: int
    induced_homology: tuple[GroupHom, ...]
    induced_cohomology: Optional[tuple[GroupHom, ...]] = None
    user_transfer_homology: Optional[tuple[GroupHom, ...]] = None
    user_transfer_cohomology: Optional[tuple[GroupHom, ...]] = None
    name: str = ""

    def __post_init__(self) -> None:
        m = self.manifold
        if m.is_partial:
            raise InsufficientData(f"{m.name}: induced maps need every homology group")
        H = m.homology
        coh = cohomology(m)
        object.__setattr__(self, "induced_homology",
                           _hom_list(self.induced_homology, H, "induced_homology"))
        object.__setattr__(self, "induced_cohomology",
                           _hom_list(self.induced_cohomology, coh, "induced_cohomology"))
        object.__setattr__(self, "user_transfer_homology",
                           _hom_list(self.user_transfer_homology, H, "transfer_homology"))
        object.__setattr__(self, "user_transfer_cohomology",
                           _hom_list(self.user_transfer_cohomology, coh, "transfer_cohomology"))
        if not self.name:
            object.__setattr__(self, "name", f"{m.name}x{self.degree}")

    @property
    def dim(self) -> int:
        return self.manifold.dim

    @property
    def top_sign(self) -> Optional[int]:
        """+1 or -1 if g_* is +-n on the top class of an orientable manifold."""
        if not self.manifold.orientable:
            return None
        top = self.induced_homology[self.dim]
        for s in (1, -1):
            if is_multiplication_by(top, s * self.degree):
                return s
        return None

    def cohomology_maps(self) -> tuple[GroupHom, ...]:
        if self.induced_cohomology is not None:
            return self.induced_cohomology
        return derived_cohomology_maps(self)


@dataclass(frozen=True)
class TransferData:
    transfer_homology: tuple[GroupHom, ...]
    transfer_cohomology: tuple[GroupHom, ...]


def _dual_torsion_block(f: GroupHom) -> IntMatrix:
    """Matrix of Hom(f, Q/Z) on the dual basis of T(G) (for Ext(T(G), Z))."""
    tors = f.domain.torsion
    B = f.torsion_block()
    n = len(tors)
    # dual generator chi_i(e_j) = delta_ij / t_i; (f^* chi_j)(e_i) = B[j,i] / t_j
    return IntMatrix.from_rows(
        [[B[j, i] * tors[i] // tors[j] for j in range(n)] for i in range(n)], cols=n
    )


def _uct_cohomology_maps(e: ExpandingEndo) -> tuple[GroupHom, ...]:
    coh = cohomology(e.manifold)
    out = []
    for k, G in enumerate(coh):
        r = G.free_rank
        free = e.induced_homology[k].free_block().T
        tors = _dual_torsion_block(e.induced_homology[k - 1]) if k else IntMatrix.zeros(0, 0)
        n = G.ngens
        rows = [[0] * n for _ in range(n)]
        for i in range(r):
            for j in range(r):
                rows[i][j] = free[i, j]
        for i in range(tors.rows):
            for j in range(tors.cols):
                rows[r + i][r + j] = tors[i, j]
        out.append(GroupHom(G, G, IntMatrix.from_rows(rows, cols=n)))
    return tuple(out)


def derived_cohomology_maps(e: ExpandingEndo) -> tuple[GroupHom, ...]:
    """``g^*`` in every degree when it was not supplied.

    For orientable manifolds Poincare duality carries ``g^*`` on ``H^k`` to
    the homology transfer on ``H_{d-k}``, which is fully determined.
    Otherwise the universal coefficient splitting is used, with the
    (unrecorded) free-to-torsion component taken to be zero.
    """
    if e.manifold.orientable:
        try:
            t = _homology_transfers(e)
            return tuple(t[e.dim - k] for k in range(e.dim + 1))
        except TransferError:
            pass
    return _uct_cohomology_maps(e)


def _solve_transfer(g: GroupHom, n: int, transfer_first: bool) -> GroupHom:
    """Unique t with ``g o t = n`` (transfer_first) or ``t o g = n``."""
    G = g.domain
    orders = G.orders
    N = G.ngens
    unknowns = [(a, b) for a in range(N) for b in range(N)
                if not (orders[a] == 0 and orders[b] != 0)]
    index = {ab: i for i, ab in enumerate(unknowns)}
    rows, rhs, moduli = [], [], []
    for a in range(N):
        for b in range(N):
            row = [0] * len(unknowns)
            for c in range(N):
                if transfer_first:      # (g t)_ab = sum_c g_ac t_cb
                    coef, key = g.matrix[a, c], (c, b)
                else:                   # (t g)_ab = sum_c t_ac g_cb
                    coef, key = g.matrix[c, b], (a, c)
                if coef and key in index:
                    row[index[key]] += coef
            rows.append(row)
            rhs.append(n if a == b else 0)
            moduli.append(orders[a])
    for (a, b), i in index.items():
        if orders[b] and orders[a]:
            row = [0] * len(unknowns)
            row[i] = orders[b]
            rows.append(row)
            rhs.append(0)
            moduli.append(orders[a])
    M = IntMatrix.from_rows(rows, cols=len(unknowns))
    x, kernel = solve_congruences(M, rhs, moduli)
    if x is None:
        raise NonIntegralTransfer(f"no integral transfer on {G} for degree {n}")

    def as_hom(vec):
        mat = [[0] * N for _ in range(N)]
        for (a, b), i in index.items():
            mat[a][b] = vec[i]
        return GroupHom(G, G, IntMatrix.from_rows(mat, cols=N))

    zero = GroupHom.zero(G, G)
    if any(as_hom(v) != zero for v in kernel):
        raise AmbiguousTransfer(f"transfer on {G} is not determined by the relation")
    return as_hom(x)


def _homology_transfers(e: ExpandingEndo) -> tuple[GroupHom, ...]:
    n = e.degree
    if e.user_transfer_homology is not None:
        for k, (g, t) in enumerate(zip(e.induced_homology, e.user_transfer_homology)):
            if not is_multiplication_by(compose(g, t), n):
                raise TransferError(f"supplied homology transfer fails g_* o t = {n} in degree {k}")
        return e.user_transfer_homology
    return tuple(_solve_transfer(g, n, True) for g in e.induced_homology)


def _cohomology_transfers(e: ExpandingEndo) -> tuple[GroupHom, ...]:
    n = e.degree
    gstar = e.cohomology_maps()
    if e.user_transfer_cohomology is not None:
        for k, (g, t) in enumerate(zip(gstar, e.user_transfer_cohomology)):
            if not is_multiplication_by(compose(t, g), n):
                raise TransferError(f"supplied cohomology transfer fails t o g^* = {n} in degree {k}")
        return e.user_transfer_cohomology
    return tuple(_solve_transfer(g, n, False) for g in gstar)


def derive_transfer(e: ExpandingEndo) -> TransferData:
    return TransferData(_homology_transfers(e), _cohomology_transfers(e))


def special_degree(m: FlatManifold) -> int:
    """(|F| + 1)^d, the covering degree that makes transfers invertible on torsion."""
    return (m.holonomy_order + 1) ** m.dim


def special_transfer_on_torsion(e: ExpandingEndo, side: str = "homology") -> list[GroupHom]:
    """Transfer restricted to torsion, degree by degree; each one is an isomorphism."""
    if e.degree != special_degree(e.manifold):
        raise ValueError(
            f"{e.name}: degree {e.degree} is not the special degree "
            f"{special_degree(e.manifold)}"
        )
    data = derive_transfer(e)
    maps = data.transfer_homology if side == "homology" else data.transfer_cohomology
    out = []
    for k, t in enumerate(maps):
        r = t.restrict_to_torsion()
        if not r.is_isomorphism():
            raise TransferError(f"transfer on T(H_{k}) is not invertible")
        out.append(r)
    return out


def _all_roots_inside_unit_disk(coeffs: Sequence[int]) -> bool:
    """Schur-Cohn test, coefficients from constant term up; exact."""
    a = list(coeffs)
    while len(a) > 1:
        a0, am = a[0], a[-1]
        if abs(a0) >= abs(am):
            return False
        rev = a[::-1]
        b = [am * x - a0 * y for x, y in zip(a, rev)]
        a = b[1:]
    return True


def is_expanding(A: IntMatrix) -> bool:
    """Every complex eigenvalue of ``A`` has modulus > 1."""
    cp = charpoly(A)          # x^n + c1 x^(n-1) + ... + cn
    if cp[-1] == 0:
        return False
    # roots of z^n p(1/z) are the reciprocals of the eigenvalues
    return _all_roots_inside_unit_disk(cp)


def _is_torus(m: FlatManifold) -> bool:
    from math import comb
    return m.holonomy_order == 1 and all(
        h == FgAbGroup(comb(m.dim, k)) for k, h in enumerate(m.homology)
    )


def validate_endo(e: ExpandingEndo) -> list[str]:
    problems = []
    m, n, d = e.manifold, e.degree, e.dim
    problems.extend(f"manifold: {p}" for p in validate(m))
    if n < 2:
        problems.append(f"covering degree must be at least 2, got {n}")
    gs = e.induced_homology
    if not is_multiplication_by(gs[0], 1):
        problems.append("g_* on H_0 must be the identity")
    if m.orientable and e.top_sign is None:
        problems.append(f"g_* on H_{d} must be multiplication by +-{n}")
    for k, g in enumerate(gs):
        if g.free_block().det() == 0:
            problems.append(f"g_* on H_{k} is not rationally invertible")
    if e.induced_cohomology is not None:
        gc = e.induced_cohomology
        if not is_multiplication_by(gc[0], 1):
            problems.append("g^* on H^0 must be the identity")
        for k in range(d + 1):
            if gc[k].free_block() != gs[k].free_block().T:
                problems.append(f"g^* on free(H^{k}) is not the transpose of g_*")
            if k and gc[k].torsion_block() != _dual_torsion_block(gs[k - 1]):
                problems.append(f"g^* on T(H^{k}) is not dual to g_* on T(H_{k - 1})")
    if _is_torus(m) and d >= 1:
        A = gs[1].free_block()
        if abs(A.det()) != n:
            problems.append(f"|det A| = {abs(A.det())} but the covering degree is {n}")
        if not is_expanding(A):
            problems.append("A has an eigenvalue of modulus <= 1")
        for k in range(2, d + 1):
            if gs[k].matrix != compound(A, k):
                problems.append(f"g_* on H_{k} is not the {k}-th exterior power of A")
    if not problems:
        try:
            derive_transfer(e)
        except TransferError as exc:
            problems.append(f"transfer: {exc}")
    return problems


# -- builtins ---------------------------------------------------------------

def _hom(G: FgAbGroup, rows) -> GroupHom:
    return GroupHom(G, G, IntMatrix.from_rows(rows, cols=G.ngens))


def circle_endo(n: int) -> ExpandingEndo:
    """z -> z^n on the circle."""
    S1 = lookup("S1")
    return ExpandingEndo(S1, n, (GroupHom.identity(Z), GroupHom.scalar(Z, n)),
                         name=f"circle{n}")


def torus_endo(A, name: str = "") -> ExpandingEndo:
    """Linear map x -> A x on R^d / Z^d; g_* on H_k is the k-th exterior power."""
    A = A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)
    d = A.rows
    names = {1: "S1", 2: "T2", 3: "T3"}
    if d not in names:
        raise ValueError("catalog tori exist in dimensions 1 to 3")
    m = lookup(names[d])
    maps = tuple(GroupHom(H, H, compound(A, k)) for k, H in enumerate(m.homology))
    return ExpandingEndo(m, abs(A.det()), maps, name=name)


def _klein9() -> ExpandingEndo:
    K = lookup("K")
    H = K.homology
    gstar = (GroupHom.identity(Z), GroupHom.scalar(Z, 3),
             GroupHom.identity(FgAbGroup(0, (2,))))
    return ExpandingEndo(
        K, 9,
        (GroupHom.identity(H[0]), _hom(H[1], [[3, 0], [0, 1]]), GroupHom.identity(H[2])),
        induced_cohomology=gstar,
        name="klein9",
    )


def _o36x125() -> ExpandingEndo:
    # x -> 5x lifted to R^3 fixes the holonomy and is the identity on T(H_1)
    m = lookup("O3_6")
    H = m.homology
    return ExpandingEndo(
        m, 125,
        (GroupHom.identity(H[0]), GroupHom.identity(H[1]), GroupHom.identity(H[2]),
         GroupHom.scalar(H[3], 125)),
        name="o36x125",
    )


@lru_cache(maxsize=None)
def builtin_endos() -> dict[str, ExpandingEndo]:
    return {
        "circle2": circle_endo(2),
        "circle3": circle_endo(3),
        "torus23": torus_endo([[2, 0], [0, 3]], name="torus23"),
        "klein9": _klein9(),
        "o36x125": _o36x125(),
    }


def get_builtin(name: str) -> ExpandingEndo:
    try:
        return builtin_endos()[name]
    except KeyError:
        raise KeyError(f"unknown builtin endomorphism {name!r}; "
                       f"choose from {sorted(builtin_endos())}") from None


# -- file format ------------------------------------------------------------

def _maps_from_lists(groups, mats, what):
    if mats is None:
        return None
    if len(mats) != len(groups):
        raise ValueError(f"{what}: expected {len(groups)} matrices, got {len(mats)}")
    return tuple(
        GroupHom(G, G, IntMatrix.from_rows(rows or [], cols=G.ngens))
        for G, rows in zip(groups, mats)
    )


def endo_from_dict(doc: dict, manifold: Optional[FlatManifold] = None) -> ExpandingEndo:
    """Build an endomorphism from a parsed definition document.

    Keys: ``manifold`` (catalog name or inline manifold mapping), ``degree``,
    ``induced_homology`` (one matrix per degree; ``null`` is allowed for
    degree 0, meaning the identity, and for the top degree of an orientable
    manifold, meaning ``top_sign * degree``), optional ``top_sign``,
    ``induced_cohomology``, ``transfer_homology``, ``transfer_cohomology``
    and ``name``.
    """
    from .manifolds import manifold_from_dict

    allowed = {"name", "manifold", "degree", "induced_homology", "induced_cohomology",
               "transfer_homology", "transfer_cohomology", "top_sign"}
    unknown = set(doc) - allowed
    if unknown:
        raise ValueError(f"unknown keys in endomorphism document: {sorted(unknown)}")
    if manifold is None:
        ref = doc.get("manifold")
        if ref is None:
            raise ValueError("endomorphism document needs a manifold")
        manifold = manifold_from_dict(ref) if isinstance(ref, dict) else lookup(str(ref))
    problems = validate(manifold)
    if problems:
        raise ValueError(f"{manifold.name}: " + "; ".join(problems))
    n = int(doc["degree"])
    H = manifold.homology
    d = manifold.dim
    mats = list(doc.get("induced_homology") or [None] * (d + 1))
    if len(mats) != d + 1:
        raise ValueError(f"induced_homology: expected {d + 1} matrices, got {len(mats)}")
    if mats[0] is None:
        mats[0] = [[1]]
    if mats[d] is None:
        if not manifold.orientable:
            mats[d] = []
        else:
            sign = doc.get("top_sign")
            if sign is None:
                warnings.warn(f"no top-degree sign given for {manifold.name}; assuming +1")
                sign = 1
            if sign not in (1, -1):
                raise ValueError("top_sign must be +1 or -1")
            mats[d] = [[sign * n]]
    if any(mat is None for mat in mats):
        raise ValueError("only degree 0 and the top degree may be omitted")
    coh = cohomology(manifold)
    e = ExpandingEndo(
        manifold, n,
        _maps_from_lists(H, mats, "induced_homology"),
        _maps_from_lists(coh, doc.get("induced_cohomology"), "induced_cohomology"),
        _maps_from_lists(H, doc.get("transfer_homology"), "transfer_homology"),
        _maps_from_lists(coh, doc.get("transfer_cohomology"), "transfer_cohomology"),
        name=str(doc.get("name", "")),
    )
    sign = doc.get("top_sign")
    if sign is not None and manifold.orientable and e.top_sign != sign:
        raise ValueError(f"top_sign {sign} disagrees with g_* on H_{d}")
    return e


def load_endo(path) -> ExpandingEndo:
    import yaml
    from pathlib import Path

    doc = yaml.safe_load(Path(path).read_text())
    e = endo_from_dict(doc)
    problems = validate_endo(e)
    if problems:
        raise ValueError(f"{e.name}: " + "; ".join(problems))
    return e


def endo_to_dict(e: ExpandingEndo) -> dict:
    def mats(maps):
        return None if maps is None else [f.matrix.tolist() for f in maps]

    doc = {
        "name": e.name,
        "manifold": e.manifold.name,
        "degree": e.degree,
        "induced_homology": mats(e.induced_homology),
    }
    for key, maps in (("induced_cohomology", e.induced_cohomology),
                      ("transfer_homology", e.user_transfer_homology),
                      ("transfer_cohomology", e.user_transfer_cohomology)):
        if maps is not None:
            doc[key] = mats(maps)
    return doc
