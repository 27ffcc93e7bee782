"""Entropy of a finite measure with respect to an error-control cover.

A cover bounds the coding error: only partitions whose cells each sit inside
some cover set are allowed.  The package computes the least entropy over
those partitions, reduces arbitrary acceptable partitions to ordering form
without raising entropy, and builds Huffman codecs for the result.
"""

from .codec import Codebook, build_codebook, decode, encode
from .covergen import DensitySpec, discretize, epsilon_cover, quantile_cover
from .entropy import entropy_of_masses, partition_entropy, shannon_fn
from .families import (
    Cover,
    MSet,
    Partition,
    cover_validate,
    find_witness,
    is_acceptable,
    is_partition,
    ordering_form,
    restrict,
)
from .measure import MASS_TOL, Atom, GroundSpace, mass, validate
from .reduction import TiePolicy, reduce, reduce_step
from .solver import SolveResult, brute_force_oracle, improve, solve_exact, solve_greedy
from .sweep import SweepRow, entropy_dimension, sweep

__all__ = [
    "Atom", "Codebook", "Cover", "DensitySpec", "GroundSpace", "MASS_TOL", "MSet",
    "Partition", "SolveResult", "SweepRow", "TiePolicy", "brute_force_oracle",
    "build_codebook", "cover_validate", "decode", "discretize", "encode",
    "entropy_dimension", "entropy_of_masses", "epsilon_cover", "find_witness",
    "improve", "is_acceptable", "is_partition", "mass", "ordering_form",
    "partition_entropy", "quantile_cover", "reduce", "reduce_step", "restrict",
    "shannon_fn", "solve_exact", "solve_greedy", "sweep", "validate",
]
