"""Seeded random instances shared by the test modules."""

import random

from cover_entropy import Cover, GroundSpace, MSet, Partition, ordering_form

# one "PASS/FAIL criterion N: ..." line per acceptance criterion, printed at session end
ACCEPTANCE_LINES: list[str] = []


def example_space():
    """Three atoms at -0.5, 0.5, 2.0 with weights 0.4, 0.3, 0.3."""
    return GroundSpace.from_weights([0.4, 0.3, 0.3], [-0.5, 0.5, 2.0])


def example_cover():
    """(-inf, 1] and [0, inf) restricted to the example atoms."""
    return Cover([MSet("Q1", ["a1", "a2"]), MSet("Q2", ["a2", "a3"])])


def singletons(space):
    return Partition([MSet(a.id, [a.id]) for a in space.atoms])


def random_space(rng, n_atoms, zero_prob=0.1, subprob=True):
    w = [0.0 if rng.random() < zero_prob else rng.random() for _ in range(n_atoms)]
    if not any(w):
        w[rng.randrange(n_atoms)] = 1.0
    total = sum(w) / (rng.uniform(0.6, 1.0) if subprob and rng.random() < 0.3 else 1.0)
    return GroundSpace.from_weights([x / total for x in w])


def random_cover(rng, space, n_sets):
    ids = space.ids
    p = rng.uniform(0.05, 0.5)
    sets = [{a for a in ids if rng.random() < p} for _ in range(n_sets)]
    for a in ids:
        if not any(a in s for s in sets):
            sets[rng.randrange(n_sets)].add(a)
    return Cover(MSet(f"Q{i + 1}", s) for i, s in enumerate(sets))


def refine(rng, partition, max_pieces=4):
    """Split every cell into up to ``max_pieces`` random nonempty sub-cells."""
    cells = []
    for c in partition.cells:
        k = rng.randint(1, max_pieces)
        blocks = [[] for _ in range(k)]
        for a in sorted(c.atoms):
            blocks[rng.randrange(k)].append(a)
        cells.extend(blocks)
    cells = [b for b in cells if b]
    rng.shuffle(cells)
    return Partition(MSet(f"P{i + 1}", b) for i, b in enumerate(cells))


def random_instance(seed, max_atoms=64, max_sets=16):
    """(space, cover, acceptable partition) from a refined random ordering form."""
    rng = random.Random(seed)
    space = random_space(rng, rng.randint(1, max_atoms))
    cover = random_cover(rng, space, rng.randint(1, max_sets))
    order = list(range(len(cover)))
    rng.shuffle(order)
    p = refine(rng, ordering_form(space, cover, order))
    return space, cover, p


def small_instance(seed, max_positive=8, max_sets=4):
    rng = random.Random(seed)
    space = random_space(rng, rng.randint(1, max_positive), zero_prob=0.0)
    cover = random_cover(rng, space, rng.randint(1, max_sets))
    return space, cover
