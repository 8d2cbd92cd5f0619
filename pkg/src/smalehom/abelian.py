"""Finitely generated abelian groups and homomorphisms between them.

A group is kept in canonical form ``Z^r (+) Z/t1 (+) ... (+) Z/tm`` with
``t1 | t2 | ... | tm`` and every ``ti >= 2``.  Generators are ordered free
first, then torsion in increasing order, and a homomorphism is the integer
matrix of its action on those generators.

>>> G = group_from_presentation(2, IntMatrix.from_rows([[0, 2]]))
>>> print(G)
Z (+) Z/2
>>> print(direct_sum(FgAbGroup.parse("Z/2"), FgAbGroup.parse("Z/3")))
Z/6
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .intmat import IntMatrix, SmithForm, smith_normal_form, solve_congruences, \
    unimodular_inverse

__all__ = [
    "FgAbGroup", "GroupHom", "IntMatrix", "SmithForm", "Z", "TRIVIAL",
    "smith_normal_form", "group_from_presentation", "torsion_subgroup",
    "cohomology_from_homology", "k_groups_low_dim", "direct_sum", "is_isomorphic",
    "compose", "is_multiplication_by", "canonical_coordinates", "direct_sum_hom",
    "image", "free_part",
]


@dataclass(frozen=True)
class FgAbGroup:
    """Canonical form of a finitely generated abelian group."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion factors must be >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion factors must form a divisibility chain: {self.torsion}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FgAbGroup:
        """Canonical form of a direct sum of cyclic groups (0 means Z)."""
        return canonical_coordinates(orders)[0]

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 for free ones."""
        return (0,) * self.free_rank + self.torsion

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> FgAbGroup:
        """Parse the rendering grammar; also accepts ``(Z/4)^2`` and ``Z/4^2``."""
        return cls.from_orders(_parse_orders(text))


_SUMMAND = re.compile(
    r"^\(?\s*Z\s*(?:/\s*(\d+))?\s*\)?\s*(?:\^\s*(\d+))?$"
)


def _parse_orders(text: str) -> list[int]:
    text = text.strip()
    if text in ("0", "{0}", ""):
        return []
    orders: list[int] = []
    for piece in text.split("(+)"):
        m = _SUMMAND.match(piece.strip())
        if not m:
            raise ValueError(f"cannot parse group summand {piece.strip()!r}")
        t = int(m.group(1)) if m.group(1) else 0
        k = int(m.group(2)) if m.group(2) else 1
        if m.group(1) and t == 0:
            raise ValueError("Z/0 is ambiguous; write Z")
        orders.extend([t] * k)
    return orders


Z = FgAbGroup(1)
TRIVIAL = FgAbGroup()


def canonical_coordinates(orders: Sequence[int]):
    """Canonical form of ``(+)_i Z/orders[i]`` plus the coordinate changes.

    Returns ``(G, P, Q)``: ``P`` maps old coordinates to canonical ones and
    ``Q`` maps canonical coordinates back; both are mutually inverse
    isomorphisms once entries are read modulo the relevant orders.
    """
    k = len(orders)
    sf = smith_normal_form(IntMatrix.diagonal([abs(o) for o in orders]))
    diag = list(sf.diagonal) + [0] * (k - len(sf.diagonal))
    # canonical order: free first, then torsion increasing; units dropped
    free_idx = [i for i, d in enumerate(diag) if d == 0]
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    keep = free_idx + tors_idx
    G = FgAbGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    P = sf.U.submatrix(keep, range(k))
    Uinv = unimodular_inverse(sf.U)
    Q = Uinv.submatrix(range(k), keep)
    return G, P, Q


def group_from_presentation(n_generators: int, relations: IntMatrix) -> FgAbGroup:
    """Cokernel of the relation matrix (one relation per row)."""
    if relations.rows and relations.cols != n_generators:
        raise ValueError("relations must have one column per generator")
    sf = smith_normal_form(relations)
    factors = sf.invariant_factors
    return FgAbGroup.from_orders(list(factors) + [0] * (n_generators - len(factors)))


def torsion_subgroup(G: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(0, G.torsion)


def free_part(G: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(G.free_rank)


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    return FgAbGroup.from_orders([o for G in groups for o in G.orders])


def is_isomorphic(G1: FgAbGroup, G2: FgAbGroup) -> bool:
    return G1 == G2


def cohomology_from_homology(H: Sequence[FgAbGroup], orientable: bool, d: int) -> list[FgAbGroup]:
    """Integral cohomology of a closed connected d-manifold from its homology.

    Orientable input uses Poincare duality ``H^k = H_{d-k}``; otherwise the
    universal coefficient theorem ``H^k = free(H_k) (+) T(H_{k-1})``.
    """
    if len(H) != d + 1:
        raise ValueError(f"expected {d + 1} homology groups, got {len(H)}")
    if H[0] != Z:
        raise ValueError(f"H_0 must be Z for a connected space, got {H[0]}")
    if orientable:
        return [H[d - k] for k in range(d + 1)]
    out = [Z]
    for k in range(1, d + 1):
        out.append(direct_sum(free_part(H[k]), torsion_subgroup(H[k - 1])))
    return out


def k_groups_low_dim(graded: Sequence[FgAbGroup], d: int) -> tuple[FgAbGroup, FgAbGroup]:
    """(even, odd) K-groups of a complex of dimension at most 3."""
    if d > 3:
        raise ValueError("K-theory from (co)homology is only available for d <= 3")
    if len(graded) != d + 1:
        raise ValueError(f"expected {d + 1} graded pieces, got {len(graded)}")
    even = direct_sum(*graded[0::2])
    odd = direct_sum(*graded[1::2])
    return even, odd


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by its matrix on canonical generators.

    Column ``j`` holds the image of domain generator ``j``.  Rows belonging
    to torsion generators of the codomain are stored reduced into
    ``[0, t)``.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix.from_rows(self.matrix,
                                                                   cols=self.domain.ngens))
        M = self.matrix
        if M.shape != (self.codomain.ngens, self.domain.ngens):
            raise ValueError(
                f"matrix shape {M.shape} does not match "
                f"{self.codomain.ngens}x{self.domain.ngens}"
            )
        rows = M.tolist()
        for i, t in enumerate(self.codomain.orders):
            if t:
                rows[i] = [x % t for x in rows[i]]
        for j, tau in enumerate(self.domain.orders):
            if not tau:
                continue
            for i, t in enumerate(self.codomain.orders):
                if (t == 0 and rows[i][j] != 0) or (t and (tau * rows[i][j]) % t):
                    raise ValueError(
                        f"generator {j} has order {tau} but its image does not"
                    )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, cols=M.cols))

    @classmethod
    def identity(cls, G: FgAbGroup) -> GroupHom:
        return cls.scalar(G, 1)

    @classmethod
    def scalar(cls, G: FgAbGroup, m: int) -> GroupHom:
        return cls(G, G, IntMatrix.identity(G.ngens).scale(m))

    @classmethod
    def zero(cls, G: FgAbGroup, H: FgAbGroup) -> GroupHom:
        return cls(G, H, IntMatrix.zeros(H.ngens, G.ngens))

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def free_block(self) -> IntMatrix:
        """Induced map on free quotients."""
        r, s = self.codomain.free_rank, self.domain.free_rank
        return self.matrix.submatrix(range(r), range(s))

    def torsion_block(self) -> IntMatrix:
        r, s = self.codomain.free_rank, self.domain.free_rank
        return self.matrix.submatrix(range(r, self.codomain.ngens),
                                     range(s, self.domain.ngens))

    def mixed_block(self) -> IntMatrix:
        """Free generators of the domain into torsion of the codomain."""
        r, s = self.codomain.free_rank, self.domain.free_rank
        return self.matrix.submatrix(range(r, self.codomain.ngens), range(s))

    def restrict_to_torsion(self) -> GroupHom:
        return GroupHom(torsion_subgroup(self.domain), torsion_subgroup(self.codomain),
                        self.torsion_block())

    def __matmul__(self, other: GroupHom) -> GroupHom:
        return compose(self, other)

    def __pow__(self, k: int) -> GroupHom:
        if not self.is_endomorphism:
            raise ValueError("only endomorphisms have powers")
        result = GroupHom.identity(self.domain)
        for _ in range(k):
            result = self @ result
        return result

    def is_isomorphism(self) -> bool:
        if self.domain != self.codomain:
            return False
        if self.free_block().det() not in (1, -1):
            return False
        return image(self) == self.codomain


def compose(f: GroupHom, g: GroupHom) -> GroupHom:
    """``f o g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise ValueError(f"cannot compose: {g.codomain} is not {f.domain}")
    return GroupHom(g.domain, f.codomain, f.matrix @ g.matrix)


def is_multiplication_by(f: GroupHom, m: int) -> bool:
    if not f.is_endomorphism:
        return False
    return f == GroupHom.scalar(f.domain, m)


def image(f: GroupHom) -> FgAbGroup:
    """Isomorphism type of the image of ``f``."""
    moduli = list(f.codomain.orders)
    _, kernel = solve_congruences(f.matrix, [0] * f.matrix.rows, moduli)
    n = f.domain.ngens
    return group_from_presentation(n, IntMatrix.from_rows(kernel, cols=n))


def direct_sum_hom(*homs: GroupHom) -> GroupHom:
    """Block-diagonal sum of homomorphisms, in canonical coordinates."""
    dom_orders = [o for h in homs for o in h.domain.orders]
    cod_orders = [o for h in homs for o in h.codomain.orders]
    blocks = []
    col = 0
    total_cols = len(dom_orders)
    for h in homs:
        for i in range(h.matrix.rows):
            row = [0] * total_cols
            row[col:col + h.matrix.cols] = h.matrix.row(i)
            blocks.append(row)
        col += h.matrix.cols
    big = IntMatrix.from_rows(blocks, cols=total_cols)
    dom, _, Qd = canonical_coordinates(dom_orders)
    cod, Pc, _ = canonical_coordinates(cod_orders)
    return GroupHom(dom, cod, Pc @ big @ Qd)


def cyclic_factor_gcds(G: FgAbGroup, m: int) -> int:
    """Number of elements of ``T(G)`` killed by ``m``."""
    return prod(gcd(m, t) for t in G.torsion)
