"""Greedy partition reduction.

Given a partition ``P`` whose cells each lie inside some cover set, build a
partition ``R`` of the form ``Q[o_0], Q[o_1] - Q[o_0], ...`` whose entropy is
no larger than that of ``P``.  Each round takes the heaviest remaining
(restricted) cell of ``P`` and swallows the rest of a cover set containing it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Optional

from .errors import InternalInvariantError, PreconditionError, StructuralError
from .families import Cover, MSet, Partition, cover_validate, find_witness, is_partition, restrict
from .measure import MASS_TOL, GroundSpace

log = logging.getLogger(__name__)

CoverChoice = Literal["max-gain", "first-index"]
COVER_CHOICES = ("max-gain", "first-index")


@dataclass(frozen=True)
class TiePolicy:
    """How to resolve the two free choices of each reduction round.

    ``pmax`` picks among equally heavy cells; only ``"lowest-cell-index"``
    exists.  ``cover`` picks among cover sets containing the heaviest cell:
    ``"max-gain"`` takes the one with the most residual mass, ``"first-index"``
    the first in cover order.
    """

    pmax: str = "lowest-cell-index"
    cover: CoverChoice = "max-gain"

    def __post_init__(self):
        if self.pmax != "lowest-cell-index":
            raise ValueError(f"unknown pmax policy {self.pmax!r}")
        if self.cover not in COVER_CHOICES:
            raise ValueError(f"unknown cover policy {self.cover!r}")


DEFAULT_POLICY = TiePolicy()


@dataclass(frozen=True)
class StepRecord:
    iteration: int
    pmax_cell_id: str
    pmax_mass: float
    chosen_cover_index: int
    chosen_cover_id: str
    residual_mass_before: float

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "pmax_cell_id": self.pmax_cell_id,
            "pmax_mass": self.pmax_mass,
            "chosen_cover_index": self.chosen_cover_index,
            "chosen_cover_id": self.chosen_cover_id,
            "residual_mass_before": self.residual_mass_before,
        }


@dataclass
class ReductionTrace:
    steps: list[StepRecord] = field(default_factory=list)
    final_residual: float = 0.0

    def as_dict(self) -> dict:
        return {
            "steps": [s.as_dict() for s in self.steps],
            "final_residual": self.final_residual,
        }


@dataclass
class ReductionResult:
    partition: Partition
    ordering: list[int]
    trace: ReductionTrace


@dataclass(frozen=True)
class ReductionState:
    """Loop state: the residual set still to be covered and the cells so far."""

    space: GroundSpace
    cover: Cover
    partition: Partition
    residual: frozenset[str]
    cells: tuple[MSet, ...] = ()
    ordering: tuple[int, ...] = ()
    iteration: int = 0

    @classmethod
    def initial(cls, space: GroundSpace, cover: Cover, partition: Partition) -> "ReductionState":
        return cls(space, cover, partition, space.all_ids)

    @property
    def residual_mass(self) -> float:
        return self.space.mass(self.residual)

    @property
    def done(self) -> bool:
        return self.residual_mass <= MASS_TOL


def _check_inputs(space: GroundSpace, cover: Cover, partition: Partition) -> None:
    problems = cover_validate(space, cover)
    if problems:
        raise PreconditionError("invalid cover: " + "; ".join(problems))
    problems = is_partition(space, partition)
    if problems:
        raise StructuralError("invalid partition: " + "; ".join(problems))
    find_witness(partition, cover)


def reduce_step(
    state: ReductionState, policy: TiePolicy = DEFAULT_POLICY
) -> tuple[ReductionState, Optional[StepRecord]]:
    """Run one round of the reduction.

    Returns the new state and the step record.  When the heaviest remaining
    cell has mass at most ``MASS_TOL`` the round would emit a null cell; the
    state is returned unchanged with a ``None`` record, which ends the loop.
    """
    space, cover = state.space, state.cover
    before = state.residual_mass
    if before <= MASS_TOL:
        raise PreconditionError("residual mass is already zero")

    best = None
    best_mass = -1.0
    for cell in restrict(state.partition.cells, state.residual):
        m = space.mass(cell)
        if m > best_mass:
            best, best_mass = cell, m
    if best is None or best_mass <= MASS_TOL:
        return state, None

    chosen = None
    chosen_gain = -1.0
    for j, s in enumerate(cover.sets):
        if not best.atoms <= s.atoms:
            continue
        if policy.cover == "first-index":
            chosen = j
            break
        gain = space.mass(s.atoms & state.residual)
        if gain > chosen_gain:
            chosen, chosen_gain = j, gain
    if chosen is None:
        # Cannot happen for an acceptable partition: P cap X_i lies in P's cover set.
        raise InternalInvariantError(f"no cover set contains cell {best.id!r}")

    s = cover.sets[chosen]
    cell = MSet(s.id, s.atoms & state.residual)
    record = StepRecord(state.iteration, best.id, best_mass, chosen, s.id, before)
    log.debug("reduce step %d: pmax=%s (%.6g) -> %s", state.iteration, best.id, best_mass, s.id)
    new = ReductionState(
        space,
        cover,
        state.partition,
        state.residual - s.atoms,
        state.cells + (cell,),
        state.ordering + (chosen,),
        state.iteration + 1,
    )
    return new, record


def reduce(
    space: GroundSpace,
    cover: Cover,
    partition: Partition,
    policy: TiePolicy = DEFAULT_POLICY,
) -> ReductionResult:
    """Reduce an acceptable partition to ordering form without raising entropy.

    Raises
    ------
    PreconditionError
        If the cover does not cover the space or a cell of ``partition`` lies
        in no cover set (:class:`~cover_entropy.errors.NotAcceptableError`).
    """
    _check_inputs(space, cover, partition)
    state = ReductionState.initial(space, cover, partition)
    trace = ReductionTrace()
    guard = len(space) + 1
    while not state.done:
        if len(trace.steps) >= guard:
            raise InternalInvariantError(f"reduction exceeded {guard} steps")
        state, record = reduce_step(state, policy)
        if record is None:
            break
        trace.steps.append(record)
    trace.final_residual = state.residual_mass
    cells = [c for c in state.cells if space.mass(c) > 0]
    out = Partition(cells, {c.id: c.id for c in cells})
    return ReductionResult(out, list(state.ordering), trace)
