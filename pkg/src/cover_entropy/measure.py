"""Discrete subprobability spaces.

A :class:`GroundSpace` is a finite ordered list of weighted atoms.  Every
measurable set in the package is a set of atom ids, so the measure of a set
is the sum of its atoms' weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import StructuralError

MASS_TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    id: str
    weight: float
    label: Optional[float] = None


@dataclass(frozen=True)
class GroundSpace:
    """Immutable finite measure space.

    Construction does not validate; call :func:`validate` for diagnostics.
    Atom order is fixed here and is used as the tie-breaking order
    everywhere downstream.
    """

    atoms: tuple[Atom, ...]
    total_mass: float = field(init=False)
    _index: dict = field(init=False, repr=False, compare=False)
    _weights: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, atoms: Iterable[Atom]):
        atoms = tuple(atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", {a.id: i for i, a in enumerate(atoms)})
        object.__setattr__(self, "_weights", tuple(a.weight for a in atoms))
        object.__setattr__(self, "total_mass", math.fsum(self._weights))

    @classmethod
    def from_weights(cls, weights, labels=None, prefix: str = "a") -> "GroundSpace":
        """Build a space with ids ``a1, a2, ...``."""
        labels = labels if labels is not None else [None] * len(weights)
        return cls(
            Atom(f"{prefix}{i + 1}", float(w), None if lab is None else float(lab))
            for i, (w, lab) in enumerate(zip(weights, labels))
        )

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, atom_id: str) -> bool:
        return atom_id in self._index

    @property
    def ids(self) -> list[str]:
        return [a.id for a in self.atoms]

    @property
    def all_ids(self) -> frozenset[str]:
        return frozenset(self._index)

    def atom(self, atom_id: str) -> Atom:
        try:
            return self.atoms[self._index[atom_id]]
        except KeyError:
            raise StructuralError(f"unknown atom id {atom_id!r}") from None

    def weight(self, atom_id: str) -> float:
        return self.atom(atom_id).weight

    def position(self, atom_id: str) -> int:
        try:
            return self._index[atom_id]
        except KeyError:
            raise StructuralError(f"unknown atom id {atom_id!r}") from None

    def mass(self, s) -> float:
        return mass(self, s)

    # Bitmask view used by the search code: bit i is atom i.

    def mask(self, s) -> int:
        m = 0
        for a in _ids(s):
            m |= 1 << self.position(a)
        return m

    def ids_of_mask(self, m: int) -> frozenset[str]:
        return frozenset(self.atoms[i].id for i in _bits(m))

    def mass_of_mask(self, m: int) -> float:
        w = self._weights
        return math.fsum(w[i] for i in _bits(m))

    @property
    def positive_mask(self) -> int:
        m = 0
        for i, w in enumerate(self._weights):
            if w > 0:
                m |= 1 << i
        return m


def _ids(s) -> Iterable[str]:
    return getattr(s, "atoms", s)


def _bits(m: int):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def mass(space: GroundSpace, s) -> float:
    """Measure of a set of atom ids (or anything with an ``atoms`` attribute).

    Uses a correctly rounded sum, so the result does not depend on the
    iteration order of ``s``.
    """
    ids = _ids(s)
    return math.fsum(space.weight(a) for a in ids)


def validate(space: GroundSpace) -> list[str]:
    """Return a list of problems with ``space``; empty means valid."""
    problems = []
    seen = set()
    for a in space.atoms:
        if a.id in seen:
            problems.append(f"duplicate atom id {a.id!r}")
        seen.add(a.id)
        if not a.weight >= 0:
            problems.append(f"negative weight {a.weight!r} at atom {a.id!r}")
    if space.total_mass > 1 + MASS_TOL:
        problems.append(f"total mass {space.total_mass:g} > 1")
    return problems
