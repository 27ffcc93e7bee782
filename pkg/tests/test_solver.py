import json
import math
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cover_entropy import (
    Cover,
    GroundSpace,
    MSet,
    Partition,
    brute_force_oracle,
    find_witness,
    improve,
    ordering_form,
    partition_entropy,
    reduce,
    shannon_fn,
    solve_exact,
    solve_greedy,
)
from cover_entropy.covergen import DensitySpec, discretize, epsilon_cover
from cover_entropy.errors import ParameterError, PreconditionError, RefusalError
from cover_entropy.formats import cover_from_dict, measure_from_dict
from cover_entropy.solver import _Masks, lower_bound, restricted_growth_strings
from helpers import random_cover, random_instance, random_space, singletons, small_instance

FIXTURES = Path(__file__).parent / "fixtures"
SH_07_03 = 0.8812908992306926182  # mpmath
SH_06_04 = 0.9709505944546686390


def test_exact_example(space, cover):
    r = solve_exact(space, cover)
    assert r.entropy_bits == pytest.approx(SH_07_03, abs=1e-12)
    assert r.ordering == [0, 1] and r.optimal and r.method == "exact"
    # the only other ordering
    assert partition_entropy(space, ordering_form(space, cover, [1, 0])) == pytest.approx(SH_06_04, abs=1e-12)


def test_exact_on_partition_cover():
    space = GroundSpace.from_weights([0.1, 0.2, 0.3, 0.4])
    q = Cover([MSet("A", ["a1", "a2"]), MSet("B", ["a3"]), MSet("C", ["a4"])])
    expected = partition_entropy(space, Partition(q.sets))
    assert solve_exact(space, q).entropy_bits == pytest.approx(expected, abs=1e-12)
    assert solve_greedy(space, q).entropy_bits == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("m,k", [(4, 1), (4, 2), (4, 4), (6, 3)])
def test_exact_dyadic(m, k):
    space = discretize(DensitySpec.uniform(), 2**m)
    assert solve_exact(space, epsilon_cover(space, 2.0**-k)).entropy_bits == pytest.approx(k, abs=1e-9)


def test_greedy_example(space, cover):
    r = solve_greedy(space, cover)
    assert r.ordering == [0, 1] and not r.optimal
    assert r.entropy_bits == pytest.approx(SH_07_03, abs=1e-12)


def test_greedy_gap_fixture():
    d = json.loads((FIXTURES / "greedy_gap.json").read_text())
    space = measure_from_dict(d["measure"])
    q = cover_from_dict(d["cover"], space)
    greedy, exact = solve_greedy(space, q), solve_exact(space, q)
    # path cover Q1={a1,a4}, Q2={a1,a3}, Q3={a2,a3}: greedy takes Q2 first
    assert greedy.entropy_bits == pytest.approx(shannon_fn(0.529) + shannon_fn(0.219) + shannon_fn(0.252), abs=1e-12)
    assert exact.entropy_bits == pytest.approx(shannon_fn(0.489) + shannon_fn(0.511), abs=1e-12)
    assert exact.entropy_bits == pytest.approx(brute_force_oracle(space, q).entropy_bits, abs=1e-12)
    assert greedy.entropy_bits > exact.entropy_bits + 0.4


def test_oracle_example(space, cover):
    r = brute_force_oracle(space, cover)
    assert r.entropy_bits == pytest.approx(SH_07_03, abs=1e-12)
    assert sorted(map(sorted, r.partition.atom_sets())) == [["a1", "a2"], ["a3"]]
    assert r.nodes_explored == 5 and r.optimal


def test_oracle_refusals(space):
    with pytest.raises(PreconditionError):
        brute_force_oracle(space, Cover([MSet("Q1", ["a1"])]))
    big = GroundSpace.from_weights([1 / 11] * 11)
    with pytest.raises(RefusalError):
        brute_force_oracle(big, Cover([MSet("X", big.ids)]))


def test_single_atom():
    space = GroundSpace.from_weights([1.0])
    q = Cover([MSet("Q", ["a1"])])
    assert brute_force_oracle(space, q).entropy_bits == 0.0
    assert solve_exact(space, q).entropy_bits == 0.0


def test_zero_mass_space():
    space = GroundSpace.from_weights([0.0, 0.0])
    q = Cover([MSet("Q", ["a1"])])
    r = solve_exact(space, q)
    assert r.entropy_bits == 0.0 and r.ordering == [] and r.optimal


def test_restricted_growth_strings_count_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    for n, b in enumerate(bell):
        strings = list(restricted_growth_strings(n))
        assert len(strings) == b
        assert strings == sorted(strings)
        assert len({tuple(s) for s in strings}) == b


def test_budget():
    with pytest.raises(ParameterError):
        solve_exact(GroundSpace.from_weights([1.0]), Cover([MSet("Q", ["a1"])]), budget=0)
    found = None
    for seed in range(200):
        space, cover, _ = random_instance(seed, max_sets=12)
        if solve_exact(space, cover).nodes_explored > 3:
            found = space, cover
            break
    space, cover = found
    r = solve_exact(space, cover, budget=2)
    assert not r.optimal
    assert r.entropy_bits <= solve_greedy(space, cover).entropy_bits + 1e-12


def test_improve_delegates(space, cover):
    r = improve(space, cover, singletons(space))
    assert partition_entropy(space, r.partition) == pytest.approx(SH_07_03, abs=1e-12)
    opt = solve_exact(space, cover).partition
    assert partition_entropy(space, improve(space, cover, opt).partition) == pytest.approx(
        partition_entropy(space, opt), abs=1e-12
    )


def test_deterministic():
    space, cover, _ = random_instance(7, max_sets=10)
    a, b = solve_exact(space, cover), solve_exact(space, cover)
    assert (a.ordering, a.entropy_bits, a.nodes_explored) == (b.ordering, b.entropy_bits, b.nodes_explored)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_exact_matches_oracle(seed):
    space, cover = small_instance(seed, max_positive=7)
    exact = solve_exact(space, cover)
    assert exact.entropy_bits == pytest.approx(brute_force_oracle(space, cover).entropy_bits, abs=1e-9)
    assert exact.entropy_bits == pytest.approx(partition_entropy(space, exact.partition), abs=1e-12)
    find_witness(exact.partition, cover)


@pytest.mark.parametrize("seed", range(150))
def test_sandwich_and_reduction_dominance(seed):
    space, cover, p = random_instance(seed, max_atoms=32, max_sets=8)
    exact = solve_exact(space, cover)
    assert exact.optimal
    assert exact.entropy_bits <= solve_greedy(space, cover).entropy_bits + 1e-9
    assert exact.entropy_bits <= partition_entropy(space, reduce(space, cover, p).partition) + 1e-9


def best_completion(masks, residual):
    """Exhaustive minimum entropy over all orderings of the pieces of ``residual``."""
    if masks.mass(residual) <= 1e-12:
        return 0.0
    best = math.inf
    for s in masks.sets:
        piece = s & residual
        if piece:
            best = min(best, shannon_fn(masks.mass(piece)) + best_completion(masks, residual & ~piece))
    return best


@pytest.mark.parametrize("seed", range(40))
def test_lower_bound_admissible(seed):
    rng = random.Random(seed)
    space = random_space(rng, rng.randint(1, 9), zero_prob=0.0)
    cover = random_cover(rng, space, rng.randint(1, 5))
    masks = _Masks(space, cover)
    n = len(space)
    for residual in range(1, 1 << n):
        assert lower_bound(masks, residual) <= best_completion(masks, residual) + 1e-12
