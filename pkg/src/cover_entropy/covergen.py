"""Finite covers and discretized measures on the real line."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

from .errors import ParameterError, PreconditionError, RefusalError, StructuralError
from .families import Cover, MSet
from .measure import MASS_TOL, Atom, GroundSpace


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    height: float


@dataclass(frozen=True)
class DensitySpec:
    """Piecewise-constant density on the line."""

    pieces: tuple[Piece, ...]

    def __init__(self, pieces: Iterable):
        object.__setattr__(
            self, "pieces", tuple(p if isinstance(p, Piece) else Piece(*p) for p in pieces)
        )

    @classmethod
    def uniform(cls, lo: float = 0.0, hi: float = 1.0) -> "DensitySpec":
        return cls([Piece(lo, hi, 1.0 / (hi - lo))])

    def integral(self) -> float:
        return math.fsum((p.hi - p.lo) * p.height for p in self.pieces)

    def integral_over(self, a: float, b: float) -> float:
        return math.fsum(
            max(0.0, min(b, p.hi) - max(a, p.lo)) * p.height for p in self.pieces
        )

    def validate(self) -> list[str]:
        problems = []
        for p in self.pieces:
            if not p.lo < p.hi:
                problems.append(f"piece [{p.lo}, {p.hi}) has lo >= hi")
            if not p.height >= 0:
                problems.append(f"piece [{p.lo}, {p.hi}) has negative height")
        ordered = sorted(self.pieces, key=lambda p: p.lo)
        for a, b in zip(ordered, ordered[1:]):
            if b.lo < a.hi:
                problems.append(f"pieces [{a.lo}, {a.hi}) and [{b.lo}, {b.hi}) overlap")
        if self.integral() > 1 + MASS_TOL:
            problems.append(f"density integrates to {self.integral():g} > 1")
        return problems


def discretize(d: DensitySpec, atoms_per_unit: int) -> GroundSpace:
    """Grid atoms of width ``1/atoms_per_unit`` over the density's support.

    Each atom sits at its grid cell midpoint and carries the density's
    integral over the cell.  The grid starts at the leftmost piece.
    """
    if atoms_per_unit < 1:
        raise ParameterError("atoms_per_unit must be at least 1")
    problems = d.validate()
    if problems:
        raise PreconditionError("invalid density: " + "; ".join(problems))
    if not d.pieces:
        return GroundSpace([])
    lo = min(p.lo for p in d.pieces)
    hi = max(p.hi for p in d.pieces)
    span = (hi - lo) * atoms_per_unit
    n = round(span) if abs(span - round(span)) < 1e-9 else math.ceil(span)
    width = 1.0 / atoms_per_unit
    atoms = []
    for i in range(n):
        a = lo + i * width
        b = lo + (i + 1) * width
        atoms.append(Atom(f"x{i}", d.integral_over(a, b), a + width / 2))
    return GroundSpace(atoms)


def _labels(space: GroundSpace) -> list[tuple[float, str]]:
    out = []
    for a in space.atoms:
        if a.label is None:
            raise StructuralError(f"atom {a.id!r} has no label")
        out.append((a.label, a.id))
    out.sort()
    return out


def interval_atoms(space: GroundSpace, lo: Optional[float], hi: Optional[float]) -> frozenset[str]:
    """Atoms whose label lies in the closed interval ``[lo, hi]`` (None = unbounded)."""
    lo = -math.inf if lo is None else lo
    hi = math.inf if hi is None else hi
    return frozenset(aid for x, aid in _labels(space) if lo <= x <= hi)


def epsilon_cover(
    space: GroundSpace, eps: float, mode: Literal["aligned", "sliding"] = "aligned"
) -> Cover:
    """Cover by intervals of length ``eps``.

    ``aligned`` uses the tiling ``[k*eps, (k+1)*eps)`` and keeps nonempty
    tiles.  ``sliding`` uses one window ``[x, x+eps)`` per distinct atom
    label ``x``; these are all the atom sets a length-``eps`` interval can
    induce, up to subsets.
    """
    if not eps > 0:
        raise ParameterError("eps must be positive")
    labelled = _labels(space)
    if mode == "aligned":
        tiles: dict[int, list[str]] = {}
        for x, aid in labelled:
            tiles.setdefault(math.floor(x / eps), []).append(aid)
        return Cover(MSet(f"T{k}", ids) for k, ids in sorted(tiles.items()))
    if mode == "sliding":
        xs = [x for x, _ in labelled]
        sets = []
        seen = set()
        j = 0
        for i, (x, _) in enumerate(labelled):
            if i and xs[i - 1] == x:
                continue
            j = max(j, i)
            while j < len(xs) and xs[j] < x + eps:
                j += 1
            ids = frozenset(aid for _, aid in labelled[i:j])
            if ids not in seen:
                seen.add(ids)
                sets.append(MSet(f"W{len(sets)}", ids))
        return Cover(sets)
    raise ParameterError(f"unknown mode {mode!r}")


def quantile_cover(space: GroundSpace, max_mass: float) -> Cover:
    """Variable-width intervals each carrying at most ``max_mass``.

    Sweeps atoms left to right in label order cutting maximal runs of mass
    at most ``max_mass``.  Each run after the first is then extended back by
    the last atom of the previous run when the bound still holds, so
    neighbouring sets overlap wherever the budget allows.
    """
    if not 0 < max_mass <= 1:
        raise ParameterError("max_mass must lie in (0, 1]")
    labelled = _labels(space)
    for _, aid in labelled:
        w = space.weight(aid)
        if w > max_mass + MASS_TOL:
            raise RefusalError(f"atom {aid!r} of weight {w:g} exceeds max_mass {max_mass:g}")
    runs: list[list[str]] = []
    current: list[str] = []
    current_mass = 0.0
    for _, aid in labelled:
        w = space.weight(aid)
        if current and current_mass + w > max_mass + MASS_TOL:
            runs.append(current)
            current, current_mass = [], 0.0
        current.append(aid)
        current_mass += w
    if current:
        runs.append(current)
    sets = []
    for k, run in enumerate(runs):
        ids = list(run)
        if k:
            prev = runs[k - 1][-1]
            if space.mass(ids) + space.weight(prev) <= max_mass + MASS_TOL:
                ids.insert(0, prev)
        sets.append(MSet(f"I{k}", ids))
    return Cover(sets)


def inner_interval_cover(space: GroundSpace, lo: float, hi: float, eps: float) -> Cover:
    """The closed interval ``[lo, hi]`` plus aligned ``eps`` tiles for atoms outside it."""
    inner = interval_atoms(space, lo, hi)
    outside = GroundSpace(a for a in space.atoms if a.id not in inner)
    tiles = epsilon_cover(outside, eps, "aligned") if len(outside) else Cover([])
    return Cover([MSet("J", inner), *tiles.sets])
