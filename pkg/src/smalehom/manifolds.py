"""Catalog of flat manifolds with their integral homology.

The ten closed flat 3-manifolds follow Wolf's classification (orientable
``O3_1`` ... ``O3_6``, nonorientable ``N3_1`` ... ``N3_4``).  Manifold files
are YAML (or JSON), one document per manifold::

    name: K
    dim: 2
    orientable: false
    holonomy_order: 2
    homology: ["Z", "Z (+) Z/2", "0"]

A homology entry may also be ``"torsion-only"`` for a degree whose group
is known to be finite but is not tabulated.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Union

import yaml

from .abelian import FgAbGroup, Z, cohomology_from_homology, direct_sum, free_part, \
    torsion_subgroup

__all__ = [
    "FlatManifold", "TorsionOnly", "TORSION_ONLY", "InsufficientData", "catalog",
    "lookup", "validate", "hantzsche_wendt_template", "cohomology",
    "load_manifolds", "dump_manifold", "euler_characteristic",
]


class InsufficientData(ValueError):
    """Raised when a computation needs a homology group that is not known."""


class TorsionOnly:
    """Marker for a degree known to be finite whose group is not tabulated."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    free_rank = 0

    def __repr__(self) -> str:
        return "TORSION_ONLY"

    def __str__(self) -> str:
        return "torsion-only"


TORSION_ONLY = TorsionOnly()
Graded = Union[FgAbGroup, TorsionOnly]


@dataclass(frozen=True)
class FlatManifold:
    name: str
    dim: int
    orientable: bool
    holonomy_order: int
    homology: tuple[Graded, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "homology", tuple(self.homology))
        if len(self.homology) != self.dim + 1:
            raise ValueError(
                f"{self.name}: expected {self.dim + 1} homology groups, got {len(self.homology)}"
            )

    @property
    def is_partial(self) -> bool:
        return any(isinstance(h, TorsionOnly) for h in self.homology)

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(h.free_rank for h in self.homology)

    def group(self, k: int) -> FgAbGroup:
        h = self.homology[k]
        if isinstance(h, TorsionOnly):
            raise InsufficientData(f"H_{k}({self.name}) is not tabulated")
        return h


def euler_characteristic(m: FlatManifold) -> int:
    return sum((-1) ** i * b for i, b in enumerate(m.betti))


def _g(text: str) -> FgAbGroup:
    return FgAbGroup.parse(text)


def _m(name, dim, orientable, holonomy, homology) -> FlatManifold:
    return FlatManifold(name, dim, orientable, holonomy, tuple(_g(h) for h in homology))


# (name, orientable, |F|, H_1, H_2, H_3).  Nonorientable rows have H_2 of
# free rank b_1 - 1 (zero Euler characteristic) and torsion Z/2.
_THREE_MANIFOLDS = (
    ("O3_1", True, 1, "Z^3", "Z^3", "Z"),
    ("O3_2", True, 2, "Z (+) Z/2 (+) Z/2", "Z", "Z"),
    ("O3_3", True, 3, "Z (+) Z/3", "Z", "Z"),
    ("O3_4", True, 4, "Z (+) Z/2", "Z", "Z"),
    ("O3_5", True, 6, "Z", "Z", "Z"),
    ("O3_6", True, 4, "Z/4 (+) Z/4", "0", "Z"),
    ("N3_1", False, 2, "Z^2 (+) Z/2", "Z (+) Z/2", "0"),
    ("N3_2", False, 2, "Z^2", "Z (+) Z/2", "0"),
    ("N3_3", False, 4, "Z (+) Z/2 (+) Z/2", "Z/2", "0"),
    ("N3_4", False, 4, "Z (+) Z/4", "Z/2", "0"),
)

THREE_MANIFOLD_NAMES = tuple(row[0] for row in _THREE_MANIFOLDS)


@lru_cache(maxsize=None)
def catalog() -> tuple[FlatManifold, ...]:
    entries = [
        _m("S1", 1, True, 1, ["Z", "Z"]),
        _m("T2", 2, True, 1, ["Z", "Z^2", "Z"]),
        _m("K", 2, False, 2, ["Z", "Z (+) Z/2", "0"]),
        _m("T3", 3, True, 1, ["Z", "Z^3", "Z^3", "Z"]),
    ]
    for name, orientable, holonomy, h1, h2, h3 in _THREE_MANIFOLDS:
        entries.append(_m(name, 3, orientable, holonomy, ["Z", h1, h2, h3]))
    return tuple(entries)


_ALIASES = {
    "circle": "S1", "torus": "T2", "klein": "K", "kleinbottle": "K",
}
_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹₀₁₂₃₄₅₆₇₈₉", "01234567890123456789")


def _normalize(name: str) -> str:
    s = unicodedata.normalize("NFKC", name).translate(_SUPERSCRIPTS)
    s = re.sub(r"[\s_\-^]", "", s).lower()
    return _ALIASES.get(s, s)


def lookup(name: str) -> FlatManifold:
    """Find a catalog entry; ``O3_6``, ``O³₆`` and ``o36`` all work."""
    key = _normalize(name)
    for m in catalog():
        if _normalize(m.name) == key or m.name == key:
            return m
    raise KeyError(f"no flat manifold named {name!r} in the catalog")


def _divides_holonomy(G: Graded, order: int) -> list[int]:
    if isinstance(G, TorsionOnly):
        return []
    return [t for t in G.torsion if order % t]


def validate(m: FlatManifold) -> list[str]:
    """Violations of the structural constraints on a flat manifold (empty if none)."""
    problems = []
    H = m.homology
    if H[0] != Z:
        problems.append(f"H_0 = {H[0]} but a connected manifold has H_0 = Z")
    top = H[m.dim]
    if not isinstance(top, TorsionOnly):
        expected = Z if m.orientable else FgAbGroup()
        if top != expected:
            kind = "orientable" if m.orientable else "nonorientable"
            problems.append(f"H_{m.dim} = {top} but a closed {kind} manifold has {expected}")
    elif m.orientable:
        problems.append(f"H_{m.dim} must be Z for an orientable manifold")
    if m.holonomy_order < 1:
        problems.append("holonomy order must be positive")
    for k, G in enumerate(H):
        bad = _divides_holonomy(G, m.holonomy_order)
        if bad:
            problems.append(
                f"H_{k} has torsion of order {bad} not dividing |F| = {m.holonomy_order}"
            )
    if problems:
        return problems
    if euler_characteristic(m) != 0:
        problems.append(f"Euler characteristic {euler_characteristic(m)} != 0")
    if m.is_partial:
        return problems
    coh = cohomology(m)
    for k, G in enumerate(coh):
        bad = _divides_holonomy(G, m.holonomy_order)
        if bad:
            problems.append(
                f"H^{k} has torsion of order {bad} not dividing |F| = {m.holonomy_order}"
            )
    if m.orientable:
        # Poincare duality and universal coefficients must agree
        for k in range(m.dim + 1):
            uct = direct_sum(free_part(H[k]), torsion_subgroup(H[k - 1])) if k else Z
            if uct != coh[k]:
                problems.append(f"H_{m.dim - k} = {coh[k]} is not dual to H^{k} = {uct}")
    elif m.dim >= 1 and torsion_subgroup(H[m.dim - 1]) != FgAbGroup(0, (2,)):
        problems.append(
            f"T(H_{m.dim - 1}) = {torsion_subgroup(H[m.dim - 1])} but a closed "
            "nonorientable manifold has Z/2 there"
        )
    return problems


def cohomology(m: FlatManifold) -> list[Graded]:
    """Integral cohomology; degrees that cannot be determined are TORSION_ONLY."""
    if not m.is_partial:
        return cohomology_from_homology(m.homology, m.orientable, m.dim)
    if not m.orientable:
        raise InsufficientData(f"{m.name}: cohomology needs the full homology")
    return [m.homology[m.dim - k] for k in range(m.dim + 1)]


def hantzsche_wendt_template(d: int) -> FlatManifold:
    """The Hantzsche-Wendt manifold of odd dimension ``d >= 3``.

    Its holonomy is (Z/2)^(d-1) and its rational homology is that of the
    d-sphere; in dimension 3 the catalog entry ``O3_6`` is returned, in
    higher dimensions the intermediate degrees are TORSION_ONLY.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"Hantzsche-Wendt manifolds have odd dimension >= 3, not {d}")
    if d == 3:
        return lookup("O3_6")
    return FlatManifold(f"HW{d}", d, True, 2 ** (d - 1),
                        (Z,) + (TORSION_ONLY,) * (d - 1) + (Z,))


# -- file format ------------------------------------------------------------

def _parse_graded(text) -> Graded:
    text = str(text).strip()
    if text.lower() in ("torsion-only", "torsion_only", "?"):
        return TORSION_ONLY
    return FgAbGroup.parse(text)


def manifold_from_dict(doc: dict) -> FlatManifold:
    missing = {"name", "dim", "orientable", "holonomy_order", "homology"} - set(doc)
    if missing:
        raise ValueError(f"manifold document is missing {sorted(missing)}")
    if not isinstance(doc["orientable"], bool):
        raise ValueError("'orientable' must be true or false")
    return FlatManifold(
        name=str(doc["name"]),
        dim=int(doc["dim"]),
        orientable=doc["orientable"],
        holonomy_order=int(doc["holonomy_order"]),
        homology=tuple(_parse_graded(h) for h in doc["homology"]),
    )


def load_manifolds(source: Union[str, Path], check: bool = True) -> list[FlatManifold]:
    """Read every manifold document in a YAML/JSON file (or string)."""
    path = Path(source) if not isinstance(source, Path) else source
    text = path.read_text() if isinstance(source, Path) or path.exists() else str(source)
    out = []
    for doc in yaml.safe_load_all(text):
        if doc is None:
            continue
        m = manifold_from_dict(doc)
        if check:
            problems = validate(m)
            if problems:
                raise ValueError(f"{m.name}: " + "; ".join(problems))
        out.append(m)
    return out


def dump_manifold(m: FlatManifold) -> str:
    return yaml.safe_dump(
        {
            "name": m.name,
            "dim": m.dim,
            "orientable": m.orientable,
            "holonomy_order": m.holonomy_order,
            "homology": [str(h) for h in m.homology],
        },
        sort_keys=False,
    )


def dump_manifolds(ms: Iterable[FlatManifold]) -> str:
    return "---\n".join(dump_manifold(m) for m in ms)
