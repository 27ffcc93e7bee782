"""Cover entropy as a function of interval length.

The slope of entropy against ``log2(1/eps)`` estimates the entropy
dimension of the measure.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Literal, Sequence

from .covergen import DensitySpec, discretize, epsilon_cover
from .errors import ParameterError, ValidationError
from .solver import solve_exact, solve_greedy

EXACT_COVER_LIMIT = 12


@dataclass(frozen=True)
class SweepRow:
    eps: float
    entropy_bits: float
    method: str
    cover_size: int


def eps_schedule(start: float, end: float, steps: int) -> list[float]:
    """``steps`` values from ``start`` down to ``end``, evenly spaced in log2."""
    if steps < 1:
        raise ParameterError("steps must be at least 1")
    if not (start > 0 and end > 0):
        raise ParameterError("eps values must be positive")
    if end > start:
        raise ParameterError("eps schedule must be decreasing")
    if steps == 1:
        return [start]
    la, lb = math.log2(start), math.log2(end)
    return [2.0 ** (la + (lb - la) * i / (steps - 1)) for i in range(steps)]


def sweep(
    density: DensitySpec,
    eps_values: Sequence[float],
    mode: Literal["aligned", "sliding"] = "aligned",
    atoms_per_unit: int = 1024,
    method: Literal["auto", "greedy", "exact"] = "auto",
) -> list[SweepRow]:
    """Solve the ``eps``-interval cover of the discretized density for each ``eps``.

    ``auto`` runs the exact solver when the cover has at most
    ``EXACT_COVER_LIMIT`` sets and greedy otherwise.
    """
    eps_values = list(eps_values)
    if any(not e > 0 for e in eps_values):
        raise ParameterError("eps values must be positive")
    if any(b > a for a, b in zip(eps_values, eps_values[1:])):
        raise ParameterError("eps schedule must be decreasing")
    if eps_values and min(eps_values) * atoms_per_unit < 2:
        raise ValidationError(
            f"grid of {atoms_per_unit} atoms per unit is too coarse for eps={min(eps_values):g}; "
            f"need at least {math.ceil(2 / min(eps_values))}"
        )
    space = discretize(density, atoms_per_unit)
    rows = []
    for eps in eps_values:
        cover = epsilon_cover(space, eps, mode)
        exact = method == "exact" or (method == "auto" and len(cover) <= EXACT_COVER_LIMIT)
        result = solve_exact(space, cover) if exact else solve_greedy(space, cover)
        rows.append(SweepRow(eps, result.entropy_bits, result.method, len(cover)))
    return rows


def entropy_dimension(rows: Sequence[SweepRow]) -> float:
    """Least-squares slope of entropy against ``log2(1/eps)``."""
    x = [-math.log2(r.eps) for r in rows]
    y = [r.entropy_bits for r in rows]
    return statistics.linear_regression(x, y).slope
