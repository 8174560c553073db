"""Associated primes of monomial ideals.

Two independent routes are provided:

* :func:`associated_primes_split` builds an irreducible decomposition by
  repeatedly splitting a mixed generator ``g = u*v`` into ``I + (u)`` and
  ``I + (v)``, trims it to an irredundant one and reads off the radicals.
* :func:`associated_primes_witness` enumerates every monomial ``f`` in the
  box below the lcm of the generators and keeps each ``I : f`` that is prime.

They share nothing beyond :mod:`decayideal.monomial_core`, so one can be
used to check the other.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .monomial_core import (
    Monomial,
    MonomialIdeal,
    Ring,
    ideal_intersection,
)

__all__ = [
    "DEFAULT_WITNESS_BUDGET",
    "WitnessBudgetExceeded",
    "MonomialPrime",
    "IrreducibleComponent",
    "default_witness_budget",
    "is_prime",
    "is_primary",
    "irreducible_decomposition",
    "irredundant",
    "intersect_components",
    "associated_primes_split",
    "associated_primes_witness",
    "witness_box_size",
    "minimal_primes",
]

DEFAULT_WITNESS_BUDGET = 10**7
BUDGET_ENV = "DECAYIDEAL_WITNESS_BUDGET"


class WitnessBudgetExceeded(RuntimeError):
    """The witness enumeration box is larger than the configured budget."""


def default_witness_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_WITNESS_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class MonomialPrime:
    """A prime generated by a set of variables, kept in ring order."""

    ring: Ring
    variables: tuple[str, ...]

    def __post_init__(self):
        names = set(self.variables)
        if len(names) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")
        object.__setattr__(
            self, "variables", tuple(sorted(names, key=self.ring.index))
        )

    @classmethod
    def of(cls, ring: Ring, *names: str) -> MonomialPrime:
        return cls(ring, tuple(names))

    def sort_key(self):
        return (len(self.variables), tuple(self.ring.index(v) for v in self.variables))

    def __lt__(self, other: MonomialPrime):
        return self.sort_key() < other.sort_key()

    def __contains__(self, name: str):
        return name in self.variables

    def to_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_exponents(
            self.ring, [self.ring.var(v).exponents for v in self.variables]
        )

    def __str__(self):
        return "(" + ", ".join(self.variables) + ")"


@dataclass(frozen=True)
class IrreducibleComponent:
    """The ideal generated by ``x^b`` for each variable with ``b > 0`` in ``exponents``."""

    ring: Ring
    exponents: tuple[int, ...]

    @property
    def powers(self) -> dict[str, int]:
        return {v: p for v, p in zip(self.ring.variables, self.exponents) if p}

    @property
    def radical(self) -> MonomialPrime:
        return MonomialPrime(self.ring, tuple(self.powers))

    def to_ideal(self) -> MonomialIdeal:
        gens = []
        for i, p in enumerate(self.exponents):
            if p:
                vec = [0] * len(self.ring)
                vec[i] = p
                gens.append(vec)
        return MonomialIdeal.from_exponents(self.ring, gens)

    def contains(self, other: IrreducibleComponent) -> bool:
        """True iff ``other`` is a subideal of this component."""
        return _irr_contains(self.exponents, other.exponents)

    def __str__(self):
        return str(self.to_ideal())


def _irr_contains(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    # every generator x^c of `small` must be divisible by x^b of `big`
    return all(c == 0 or (b and b <= c) for b, c in zip(big, small))


def _is_prime_gens(gens) -> bool:
    return all(sum(g) == 1 for g in gens)


def is_prime(I: MonomialIdeal, *, return_prime: bool = False):
    """True iff every minimal generator is a variable (the zero ideal counts)."""
    ok = _is_prime_gens(I.gens)
    if not return_prime:
        return ok
    if not ok:
        return False, None
    names = tuple(I.ring.variables[g.index(1)] for g in I.gens)
    return True, MonomialPrime(I.ring, names)


def is_primary(I: MonomialIdeal) -> bool:
    """True iff each variable used by a generator also has a pure power among them."""
    if I.is_unit():
        return False
    pure = set()
    used = set()
    for g in I.gens:
        nz = [i for i, p in enumerate(g) if p]
        used.update(nz)
        if len(nz) == 1:
            pure.add(nz[0])
    return used <= pure


# ---------------------------------------------------------------------------
# splitting algorithm

def _pivot(gens):
    for g in gens:
        nz = [i for i, p in enumerate(g) if p]
        if len(nz) > 1:
            return g, nz[0]
    return None


def _add_gen(gens, new):
    """Minimal generators of ``(gens) + (new)``; ``new`` must not be a multiple of any of ``gens``."""
    kept = [h for h in gens if not all(p <= q for p, q in zip(new, h))]
    kept.append(new)
    return tuple(sorted(kept))


def _split_components(gens: tuple) -> frozenset:
    """Irreducible components (as exponent tuples) of a proper nonzero ideal."""
    memo: dict[tuple, frozenset] = {}
    children: dict[tuple, tuple] = {}
    stack = [gens]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        kids = children.get(key)
        if kids is None:
            piv = _pivot(key)
            if piv is None:
                comp = [0] * len(key[0])
                for g in key:
                    i = next(i for i, p in enumerate(g) if p)
                    comp[i] = g[i]
                memo[key] = frozenset([tuple(comp)])
                stack.pop()
                continue
            g, i = piv
            u = tuple(p if j == i else 0 for j, p in enumerate(g))
            v = tuple(0 if j == i else p for j, p in enumerate(g))
            rest = tuple(h for h in key if h != g)
            kids = (_add_gen(rest, u), _add_gen(rest, v))
            children[key] = kids
        pending = [k for k in kids if k not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[key] = _minimal_components(memo[kids[0]] | memo[kids[1]])
        del children[key]
        stack.pop()
    return memo[gens]


def _minimal_components(comps: Iterable[tuple]) -> frozenset:
    """Drop every irreducible component that contains another one."""
    ordered = set(comps)
    return frozenset(
        c for c in ordered
        if not any(d != c and _irr_contains(c, d) for d in ordered)
    )


def _check_proper(I: MonomialIdeal, what: str):
    if I.is_zero():
        raise ValueError(f"{what} needs a nonzero ideal")
    if I.is_unit():
        raise ValueError(f"{what} needs a proper ideal")


def irreducible_decomposition(I: MonomialIdeal) -> list[IrreducibleComponent]:
    """Irreducible components whose intersection is ``I``, in canonical order.

    Each split takes the first generator (lex order) that is not a pure
    power, at its first variable. Sub-results are memoized on the
    canonical generator tuple and pruned of components containing others.
    """
    _check_proper(I, "irreducible_decomposition")
    comps = _split_components(I.gens)
    return [IrreducibleComponent(I.ring, c) for c in sorted(comps)]


def irredundant(components: Iterable[IrreducibleComponent]) -> list[IrreducibleComponent]:
    """Greedily drop, in canonical order, each component containing the intersection of the rest.

    For irreducible monomial ideals ``Q ⊇ Q_1 ∩ ... ∩ Q_r`` holds iff
    ``Q ⊇ Q_i`` for some ``i``, so the test is done pairwise.
    """
    comps = sorted(set(components), key=lambda c: c.exponents)
    survivors = list(comps)
    for c in comps:
        if any(d is not c and _irr_contains(c.exponents, d.exponents) for d in survivors):
            survivors.remove(c)
    return survivors


def intersect_components(components: Iterable[IrreducibleComponent]) -> MonomialIdeal:
    comps = list(components)
    if not comps:
        raise ValueError("empty intersection")
    return reduce(ideal_intersection, (c.to_ideal() for c in comps))


def _sorted_primes(primes: Iterable[MonomialPrime]) -> list[MonomialPrime]:
    return sorted(set(primes), key=MonomialPrime.sort_key)


def associated_primes_split(I: MonomialIdeal) -> list[MonomialPrime]:
    """Associated primes as the radicals of an irredundant irreducible decomposition."""
    _check_proper(I, "associated_primes_split")
    comps = irredundant(irreducible_decomposition(I))
    return _sorted_primes(c.radical for c in comps)


def minimal_primes(primes: Iterable[MonomialPrime]) -> list[MonomialPrime]:
    primes = list(primes)
    return _sorted_primes(
        p for p in primes
        if not any(q != p and set(q.variables) < set(p.variables) for q in primes)
    )


# ---------------------------------------------------------------------------
# witness enumeration

_CHUNK_WORDS = 1 << 22


def witness_box_size(I: MonomialIdeal) -> int:
    return math.prod(d + 1 for d in I.lcm_exponents())


def _threshold_bitsets(col: np.ndarray, bound: int, words: int) -> np.ndarray:
    """Row v is the bitset of generators whose exponent is at most v (v = 0..bound+1)."""
    levels = np.arange(bound + 2)[:, None]
    table = levels >= col[None, :]
    packed = np.packbits(table, axis=1, bitorder="little")
    padded = np.zeros((bound + 2, words * 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return padded.view(np.uint64)


def associated_primes_witness(
    I: MonomialIdeal,
    budget: int | None = None,
    *,
    return_witnesses: bool = False,
):
    """Associated primes found as prime colons ``I : f`` over the lcm box.

    With ``return_witnesses`` the result is a dict mapping each prime to the
    first monomial ``f`` (in enumeration order) with ``I : f`` equal to it.
    """
    _check_proper(I, "associated_primes_witness")
    if budget is None:
        budget = default_witness_budget()
    bounds = I.lcm_exponents()
    size = witness_box_size(I)
    if size > budget:
        raise WitnessBudgetExceeded(
            f"witness box has {size} monomials, budget is {budget}"
        )
    ring = I.ring
    nvars = len(ring)
    gens = np.array(I.gens, dtype=np.int64)
    ngens = len(gens)
    words = (ngens + 63) // 64
    full = np.zeros(words, dtype=np.uint64)
    for k in range(ngens):
        full[k // 64] |= np.uint64(1) << np.uint64(k % 64)
    tables = [_threshold_bitsets(gens[:, i], bounds[i], words) for i in range(nvars)]
    shape = tuple(d + 1 for d in bounds)
    ones = np.full(words, np.iinfo(np.uint64).max, dtype=np.uint64)

    found: dict[tuple[bool, ...], tuple[int, ...]] = {}
    chunk = max(1, _CHUNK_WORDS // max(1, nvars * words))
    for start in range(0, size, chunk):
        idx = np.arange(start, min(size, start + chunk))
        fs = np.stack(np.unravel_index(idx, shape), axis=1) if nvars else np.zeros((len(idx), 0), int)
        below = [tables[i][fs[:, i]] for i in range(nvars)]
        prefix = [np.broadcast_to(ones, (len(idx), words))]
        for i in range(nvars):
            prefix.append(prefix[-1] & below[i])
        suffix = [np.broadcast_to(ones, (len(idx), words))]
        for i in reversed(range(nvars)):
            suffix.append(suffix[-1] & below[i])
        suffix.reverse()
        cover = np.zeros((len(idx), words), dtype=np.uint64)
        members = np.zeros((len(idx), nvars), dtype=bool)
        for i in range(nvars):
            bumped = tables[i][fs[:, i] + 1]
            in_ideal = ((prefix[i] & suffix[i + 1] & bumped) != 0).any(axis=1)
            members[:, i] = in_ideal
            cover |= np.where(in_ideal[:, None], ~below[i], np.uint64(0))
        prime = ((cover & full) == full).all(axis=1)
        for r in np.flatnonzero(prime):
            key = tuple(members[r])
            if key not in found:
                found[key] = tuple(int(p) for p in fs[r])

    result = {}
    for key, f in found.items():
        names = tuple(v for v, bit in zip(ring.variables, key) if bit)
        result[MonomialPrime(ring, names)] = Monomial(ring, f)
    if return_witnesses:
        return dict(sorted(result.items(), key=lambda kv: kv[0].sort_key()))
    return _sorted_primes(result)
