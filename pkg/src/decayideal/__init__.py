"""Monomial ideal arithmetic, associated primes, and ideals with prescribed Ass counts of powers."""

from .decay_construction import (
    ConstructionData,
    DecaySequence,
    build,
    g_transform,
    h_transform,
    predicted_ass,
    predicted_count,
    validate_sequence,
)
from .decomposition import (
    IrreducibleComponent,
    MonomialPrime,
    associated_primes_split,
    associated_primes_witness,
    irreducible_decomposition,
    irredundant,
    is_primary,
    is_prime,
)
from .monomial_core import Monomial, MonomialIdeal, Ring, minimalize

__all__ = [
    "ConstructionData",
    "DecaySequence",
    "IrreducibleComponent",
    "Monomial",
    "MonomialIdeal",
    "MonomialPrime",
    "Ring",
    "associated_primes_split",
    "associated_primes_witness",
    "build",
    "g_transform",
    "h_transform",
    "irreducible_decomposition",
    "irredundant",
    "is_primary",
    "is_prime",
    "minimalize",
    "predicted_ass",
    "predicted_count",
    "validate_sequence",
]

__version__ = "0.1.0"
