"""Measurable sets, covers and partitions.

Covers are finite ordered lists of sets.  The sigma algebra a cover generates
is never built; partitions inside it are produced by :func:`ordering_form`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NotAcceptableError, StructuralError
from .measure import MASS_TOL, GroundSpace


@dataclass(frozen=True)
class MSet:
    id: str
    atoms: frozenset[str]

    def __init__(self, id: str, atoms: Iterable[str] = ()):
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "atoms", frozenset(atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __le__(self, other: "MSet") -> bool:
        return self.atoms <= other.atoms


@dataclass(frozen=True)
class Cover:
    sets: tuple[MSet, ...]

    def __init__(self, sets: Iterable[MSet]):
        object.__setattr__(self, "sets", tuple(sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, i: int) -> MSet:
        return self.sets[i]

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.sets]

    def index_of(self, set_id: str) -> int:
        for i, s in enumerate(self.sets):
            if s.id == set_id:
                return i
        raise StructuralError(f"unknown cover set id {set_id!r}")


@dataclass(frozen=True)
class Partition:
    cells: tuple[MSet, ...]
    witness: Optional[dict] = None

    def __init__(self, cells: Iterable[MSet], witness: Optional[dict] = None):
        object.__setattr__(self, "cells", tuple(cells))
        object.__setattr__(self, "witness", None if witness is None else dict(witness))

    def __len__(self) -> int:
        return len(self.cells)

    def atom_sets(self) -> list[frozenset[str]]:
        return [c.atoms for c in self.cells]


def restrict(family: Sequence[MSet], a) -> list[MSet]:
    """Intersect every member of ``family`` with ``a``, keeping ids and order.

    Empty intersections are kept so the result lines up with ``family``.
    """
    a = getattr(a, "atoms", a)
    a = a if isinstance(a, frozenset) else frozenset(a)
    return [MSet(f.id, f.atoms & a) for f in family]


def _check_ids(space: GroundSpace, sets: Iterable[MSet]) -> None:
    for s in sets:
        for a in s.atoms:
            if a not in space:
                raise StructuralError(f"unknown atom id {a!r} in set {s.id!r}")


def is_partition(space: GroundSpace, cells) -> list[str]:
    """Diagnostics for ``cells`` as a partition of ``space``; empty means ok.

    Disjointness is checked exactly; coverage up to ``MASS_TOL``.
    """
    cells = getattr(cells, "cells", cells)
    problems = []
    for c in cells:
        for a in c.atoms:
            if a not in space:
                problems.append(f"unknown atom id {a!r} in cell {c.id!r}")
    if problems:
        return problems
    owner: dict[str, str] = {}
    for c in cells:
        for a in sorted(c.atoms, key=space.position):
            if a in owner:
                problems.append(f"overlap at {a} between cells {owner[a]!r} and {c.id!r}")
                return problems
            owner[a] = c.id
    uncovered = space.mass(space.all_ids - owner.keys())
    if uncovered > MASS_TOL:
        problems.append(f"uncovered mass {uncovered:g}")
    return problems


def find_witness(p: Partition, q: Cover) -> dict[str, str]:
    """Map each nonempty cell id to the id of the first cover set containing it.

    Raises
    ------
    NotAcceptableError
        For the first cell contained in no cover set.
    """
    witness = {}
    for cell in p.cells:
        if not cell.atoms:
            continue
        for s in q.sets:
            if cell.atoms <= s.atoms:
                witness[cell.id] = s.id
                break
        else:
            raise NotAcceptableError(cell.id)
    return witness


def is_acceptable(p: Partition, q: Cover) -> bool:
    try:
        find_witness(p, q)
    except NotAcceptableError:
        return False
    return True


def cover_validate(space: GroundSpace, q: Cover) -> list[str]:
    problems = []
    try:
        _check_ids(space, q.sets)
    except StructuralError as exc:
        return [str(exc)]
    covered = frozenset().union(*(s.atoms for s in q.sets))
    uncovered = space.mass(space.all_ids - covered)
    if uncovered > MASS_TOL:
        problems.append(f"uncovered mass {uncovered:g}")
    return problems


def ordering_form(space: GroundSpace, q: Cover, ordering: Sequence[int]) -> Partition:
    """Cells ``Q[o_i] minus (Q[o_0] | ... | Q[o_{i-1}])`` for the given ordering.

    Cells of zero mass are dropped.  Each cell is named after (and witnessed
    by) the cover set it was cut from.
    """
    seen = set()
    for i in ordering:
        if not 0 <= i < len(q):
            raise StructuralError(f"cover index {i} out of range 0..{len(q) - 1}")
        if i in seen:
            raise StructuralError(f"duplicate cover index {i} in ordering")
        seen.add(i)
    used: frozenset[str] = frozenset()
    cells = []
    for i in ordering:
        s = q.sets[i]
        cell = s.atoms - used
        used = used | s.atoms
        if space.mass(cell) > 0:
            cells.append(MSet(s.id, cell))
    return Partition(cells, {c.id: c.id for c in cells})
