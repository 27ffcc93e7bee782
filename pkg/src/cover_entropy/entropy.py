"""Shannon function and partition entropy, in bits."""

from __future__ import annotations

import math
from typing import Iterable

from .errors import DomainError, StructuralError
from .families import Partition, is_partition
from .measure import MASS_TOL, GroundSpace


def shannon_fn(x: float) -> float:
    """``-x * log2(x)`` with ``shannon_fn(0) == 0``.

    Arguments within ``MASS_TOL`` outside ``[0, 1]`` are clamped.
    """
    if x < -MASS_TOL or x > 1 + MASS_TOL or math.isnan(x):
        raise DomainError(f"shannon_fn argument {x!r} outside [0, 1]")
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x)


def entropy_of_masses(masses: Iterable[float]) -> float:
    """Sum of ``shannon_fn`` over ``masses``, accumulated left to right."""
    total = 0.0
    for m in masses:
        total += shannon_fn(m)
    return total


def partition_entropy(space: GroundSpace, p: Partition) -> float:
    """Entropy ``sum(shannon_fn(mass(cell)))`` of a partition, in cell order.

    Raises
    ------
    StructuralError
        If ``p`` is not a partition of ``space``.
    """
    problems = is_partition(space, p)
    if problems:
        raise StructuralError("invalid partition: " + "; ".join(problems))
    return entropy_of_masses(space.mass(c) for c in p.cells)
