"""Cover entropy: the least entropy over all partitions acceptable to a cover.

For a finite cover the minimum is attained by a partition built from an
ordering of cover sets, so :func:`solve_exact` searches orderings by
branch-and-bound.  :func:`brute_force_oracle` minimizes over every set
partition of the atoms instead and shares no code with the search, which
makes it a check on that reduction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Literal

from .entropy import partition_entropy, shannon_fn
from .errors import ParameterError, PreconditionError, RefusalError
from .families import Cover, MSet, Partition, cover_validate, find_witness, ordering_form
from .measure import MASS_TOL, GroundSpace
from .reduction import DEFAULT_POLICY, ReductionResult, TiePolicy, reduce

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
# Branches whose bound is within this of the incumbent are cut; results are
# optimal up to this slack.
PRUNE_TOL = 1e-10


@dataclass
class SolveResult:
    entropy_bits: float
    ordering: list[int]
    partition: Partition
    method: Literal["greedy", "exact", "oracle"]
    nodes_explored: int
    optimal: bool

    def as_dict(self, cover: Cover | None = None) -> dict:
        ordering = [cover.sets[i].id for i in self.ordering] if cover is not None else self.ordering
        return {
            "entropy_bits": self.entropy_bits,
            "ordering": ordering,
            "method": self.method,
            "optimal": self.optimal,
            "nodes": self.nodes_explored,
        }


def _require_cover(space: GroundSpace, cover: Cover) -> None:
    problems = cover_validate(space, cover)
    if problems:
        raise PreconditionError("invalid cover: " + "; ".join(problems))


class _Masks:
    """Bitmask view of a cover restricted to positive-mass atoms, with a mass cache."""

    def __init__(self, space: GroundSpace, cover: Cover):
        self.space = space
        self.positive = space.positive_mask
        self.sets = [space.mask(s) & self.positive for s in cover.sets]
        self._cache: dict[int, float] = {0: 0.0}

    def mass(self, m: int) -> float:
        v = self._cache.get(m)
        if v is None:
            v = self._cache[m] = self.space.mass_of_mask(m)
        return v


def _result(space, cover, ordering, method, nodes, optimal) -> SolveResult:
    partition = ordering_form(space, cover, ordering)
    return SolveResult(partition_entropy(space, partition), list(ordering), partition, method, nodes, optimal)


def _greedy_ordering(masks: _Masks) -> list[int]:
    residual = masks.positive
    ordering = []
    while masks.mass(residual) > MASS_TOL:
        best, best_gain = -1, 0.0
        for j, s in enumerate(masks.sets):
            gain = masks.mass(s & residual)
            if gain > best_gain:
                best, best_gain = j, gain
        if best < 0:
            break
        ordering.append(best)
        residual &= ~masks.sets[best]
    return ordering


def solve_greedy(space: GroundSpace, cover: Cover) -> SolveResult:
    """Upper bound from repeatedly taking the cover set with most residual mass."""
    _require_cover(space, cover)
    ordering = _greedy_ordering(_Masks(space, cover))
    return _result(space, cover, ordering, "greedy", len(ordering), False)


def lower_bound(masks: _Masks, residual: int) -> float:
    """Admissible bound on the entropy still to be paid for ``residual``.

    Every later cell lies inside some cover set, so the cell holding atom
    ``a`` has mass at most ``c_a``, the largest residual cover-set mass
    containing ``a``; the remaining entropy is then at least
    ``sum(w_a * log2(1/c_a))``.  This is never weaker than the single-cap
    bound ``-m * log2(c)`` with ``c = max c_a``.
    """
    if masks.mass(residual) <= MASS_TOL:
        return 0.0
    pieces = sorted(((masks.mass(s & residual), s & residual) for s in masks.sets), reverse=True)
    bound = 0.0
    assigned = 0
    for c, piece in pieces:
        new = piece & ~assigned
        if not new:
            continue
        assigned |= new
        if 0.0 < c < 1.0:
            bound -= masks.mass(new) * math.log2(c)
    return bound


def solve_exact(space: GroundSpace, cover: Cover, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Depth-first branch-and-bound over orderings of cover sets.

    The greedy ordering seeds the incumbent.  Children of a node are the
    distinct nonempty residual pieces ``Q & X``, expanded by decreasing mass
    then cover index.  The cost to go depends only on the residual, so a
    residual reached again at no lower cost is not searched twice; this also
    removes reorderings of non-interacting pieces.  If more than ``budget``
    nodes would be expanded the best ordering found so far is returned with
    ``optimal=False``.
    """
    if budget < 1:
        raise ParameterError("node budget must be positive")
    _require_cover(space, cover)
    masks = _Masks(space, cover)

    best_order = _greedy_ordering(masks)
    best_value = 0.0
    r = masks.positive
    for j in best_order:
        best_value += shannon_fn(masks.mass(masks.sets[j] & r))
        r &= ~masks.sets[j]

    nodes = 1
    exhausted = True
    order: list[int] = []
    # least value at which each residual has been expanded; the cost to go
    # depends on the residual only, so a later arrival that is no cheaper is cut
    seen_value: dict[int, float] = {}

    def children(residual: int) -> list[tuple[int, int, float]]:
        seen = set()
        out = []
        for j, s in enumerate(masks.sets):
            piece = s & residual
            if piece and piece not in seen:
                seen.add(piece)
                out.append((j, piece, masks.mass(piece)))
        out.sort(key=lambda t: (-t[2], t[0]))
        return out

    def expand(residual: int, value: float):
        for j, piece, gain in children(residual):
            yield j, value + shannon_fn(gain), residual & ~piece

    root = masks.positive
    stack = []
    if masks.mass(root) > MASS_TOL and lower_bound(masks, root) < best_value - PRUNE_TOL:
        stack.append(expand(root, 0.0))
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            if order:
                order.pop()
            continue
        j, child_value, rest = step
        if masks.mass(rest) <= MASS_TOL:
            if child_value < best_value:
                best_value, best_order = child_value, order + [j]
        elif child_value + lower_bound(masks, rest) < best_value - PRUNE_TOL:
            if seen_value.get(rest, math.inf) <= child_value:
                continue
            seen_value[rest] = child_value
            if nodes >= budget:
                exhausted = False
                break
            nodes += 1
            order.append(j)
            stack.append(expand(rest, child_value))
    log.info("solve_exact: %d nodes, optimal=%s, value=%.12g", nodes, exhausted, best_value)
    return _result(space, cover, best_order, "exact", nodes, exhausted)


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All set partitions of ``range(n)`` as restricted growth strings, lexicographic.

    ``a[0] == 0`` and ``a[i] <= 1 + max(a[:i])``; block ``b`` holds the
    positions ``i`` with ``a[i] == b``.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield list(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for k in range(i + 1, n):
            a[k] = 0
            m[k] = m[i]


def brute_force_oracle(space: GroundSpace, cover: Cover, max_atoms: int = 10) -> SolveResult:
    """Minimize entropy over every acceptable partition of the positive atoms.

    Zero-weight atoms are left out of the returned partition; they are a
    null set.  ``ordering`` is empty since the argmin need not be listed by
    cover order.
    """
    _require_cover(space, cover)
    atoms = [a.id for a in space.atoms if a.weight > 0]
    if len(atoms) > max_atoms:
        raise RefusalError(f"{len(atoms)} positive atoms exceeds oracle limit {max_atoms}")
    sets = [s.atoms for s in cover.sets]
    weights = [space.weight(a) for a in atoms]

    best_value = math.inf
    best_blocks = None
    count = 0
    for rgs in restricted_growth_strings(len(atoms)):
        count += 1
        blocks: list[list[int]] = [[] for _ in range(max(rgs, default=-1) + 1)]
        for i, b in enumerate(rgs):
            blocks[b].append(i)
        if not all(any(all(atoms[i] in s for i in blk) for s in sets) for blk in blocks):
            continue
        value = 0.0
        for blk in blocks:
            value += shannon_fn(math.fsum(weights[i] for i in blk))
        if value < best_value:
            best_value, best_blocks = value, blocks
    if best_blocks is None:
        raise PreconditionError("no acceptable partition exists")
    cells = [MSet(f"B{k + 1}", (atoms[i] for i in blk)) for k, blk in enumerate(best_blocks)]
    partition = Partition(cells)
    partition = Partition(cells, find_witness(partition, cover))
    return SolveResult(partition_entropy(space, partition), [], partition, "oracle", count, True)


def improve(
    space: GroundSpace, cover: Cover, partition: Partition, policy: TiePolicy = DEFAULT_POLICY
) -> ReductionResult:
    """Map an acceptable partition to ordering form with no entropy increase."""
    return reduce(space, cover, partition, policy)
