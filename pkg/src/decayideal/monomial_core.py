"""Exact arithmetic on monomials and monomial ideals.

Monomials are dense exponent vectors over a :class:`Ring`.  A
:class:`MonomialIdeal` always stores its unique minimal generating set,
sorted lexicographically by exponent vector, so two ideals are equal
exactly when their generator tuples are.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_EXPONENT",
    "RingMismatchError",
    "ExponentOverflowError",
    "StabilizationError",
    "Ring",
    "Monomial",
    "MonomialIdeal",
    "minimalize",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "ideal_intersection",
    "ideal_colon",
    "ideal_saturation",
    "substitute_one",
    "colon_split",
    "ideal_contains",
    "ideal_subset",
    "extend_ring",
    "ideal_to_dict",
    "ideal_from_dict",
    "ideal_to_json",
    "ideal_from_json",
]

# exponents are kept inside the signed 64-bit range
MAX_EXPONENT = 2**63 - 1

Exps = tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class ExponentOverflowError(OverflowError):
    """An exponent left the 64-bit range."""


class StabilizationError(ValueError):
    """The colon chain has not stabilized at the requested exponent."""


@dataclass(frozen=True)
class Ring:
    """An ordered table of variable names."""

    variables: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        for v in variables:
            if not isinstance(v, str) or not v:
                raise ValueError(f"variable names must be nonempty strings, got {v!r}")
        index = {v: i for i, v in enumerate(variables)}
        if len(index) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in ring {self.variables}") from None

    def one(self) -> Monomial:
        return Monomial(self, (0,) * len(self))

    def var(self, name: str) -> Monomial:
        exps = [0] * len(self)
        exps[self.index(name)] = 1
        return Monomial(self, tuple(exps))

    def monomial(self, spec: str | dict[str, int] | Sequence[int] = "1") -> Monomial:
        """Build a monomial from ``"a^3*b*x1"``, a ``{name: power}`` dict or a vector."""
        exps = [0] * len(self)
        if isinstance(spec, str):
            spec = spec.replace(" ", "")
            if spec not in ("", "1"):
                for factor in spec.split("*"):
                    match = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
                    if match is None:
                        raise ValueError(f"cannot parse monomial factor {factor!r}")
                    power = int(match.group(2)) if match.group(2) else 1
                    exps[self.index(match.group(1))] += power
        elif isinstance(spec, dict):
            for name, power in spec.items():
                exps[self.index(name)] += int(power)
        else:
            if len(spec) != len(self):
                raise ValueError(f"expected {len(self)} exponents, got {len(spec)}")
            exps = [int(p) for p in spec]
        return Monomial(self, tuple(exps))

    def ideal(self, *gens: str | Monomial | Sequence[int]) -> MonomialIdeal:
        """Shorthand: ``ring.ideal("x*y", "x*z")``."""
        mons = [g if isinstance(g, Monomial) else self.monomial(g) for g in gens]
        return minimalize(self, mons)


def _check_exps(exps: Exps):
    for p in exps:
        if p < 0:
            raise ValueError(f"negative exponent in {exps}")
        if p > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent {p} exceeds {MAX_EXPONENT}")


@dataclass(frozen=True, order=False)
class Monomial:
    """A monomial, stored as its exponent vector."""

    ring: Ring
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(p) for p in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) != len(self.ring):
            raise ValueError(
                f"exponent vector of length {len(exps)} for a ring with {len(self.ring)} variables"
            )
        _check_exps(exps)

    def _same_ring(self, other: Monomial):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring.variables} vs {other.ring.variables}")

    def __mul__(self, other: Monomial) -> Monomial:
        self._same_ring(other)
        return Monomial(self.ring, tuple(p + q for p, q in zip(self.exponents, other.exponents)))

    def __pow__(self, e: int) -> Monomial:
        if e < 0:
            raise ValueError("negative power of a monomial")
        return Monomial(self.ring, tuple(p * e for p in self.exponents))

    def divides(self, other: Monomial) -> bool:
        self._same_ring(other)
        return all(p <= q for p, q in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        self._same_ring(other)
        return Monomial(self.ring, tuple(map(max, self.exponents, other.exponents)))

    def gcd(self, other: Monomial) -> Monomial:
        self._same_ring(other)
        return Monomial(self.ring, tuple(map(min, self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.ring, tuple(p - q for p, q in zip(self.exponents, other.exponents)))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(v for v, p in zip(self.ring.variables, self.exponents) if p)

    def __str__(self):
        return _format_exps(self.ring, self.exponents)


def _format_exps(ring: Ring, exps: Exps) -> str:
    parts = []
    for v, p in zip(ring.variables, exps):
        if p == 1:
            parts.append(v)
        elif p > 1:
            parts.append(f"{v}^{p}")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# minimal generating sets on raw exponent tuples

_BLOCK = 256


def _minimal(vecs: Iterable[Exps]) -> tuple[Exps, ...]:
    """Minimal elements of a set of exponent vectors under divisibility, in lex order."""
    cands = sorted(set(vecs), key=lambda v: (sum(v), v))
    if len(cands) <= 1:
        return tuple(cands)
    if not cands[0] or not any(cands[0]):
        # the unit monomial divides everything
        return (cands[0],)
    if len(cands) < 48:
        kept: list[Exps] = []
        for c in cands:
            if not any(all(k <= x for k, x in zip(g, c)) for g in kept):
                kept.append(c)
        return tuple(sorted(kept))

    arr = np.array(cands, dtype=np.int64)
    keep = np.zeros(len(arr), dtype=bool)
    kept_arr = np.empty((0, arr.shape[1]), dtype=np.int64)
    for start in range(0, len(arr), _BLOCK):
        block = arr[start:start + _BLOCK]
        if len(kept_arr):
            hit = (block[:, None, :] >= kept_arr[None, :, :]).all(axis=2).any(axis=1)
        else:
            hit = np.zeros(len(block), dtype=bool)
        inner = (block[:, None, :] >= block[None, :, :]).all(axis=2)
        np.fill_diagonal(inner, False)
        hit |= inner.any(axis=1)
        keep[start:start + _BLOCK] = ~hit
        kept_arr = np.concatenate([kept_arr, block[~hit]])
    return tuple(sorted(cands[i] for i in np.flatnonzero(keep)))


def _divides(g: Exps, f: Exps) -> bool:
    return all(p <= q for p, q in zip(g, f))


def _checked(vecs: Iterable[Exps]) -> list[Exps]:
    out = list(vecs)
    for v in out:
        if v and max(v) > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent overflow in {v}")
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal held as its canonical minimal generating set.

    ``gens`` is a sorted tuple of exponent tuples; use :func:`minimalize`
    (or :meth:`from_exponents`) rather than the raw constructor.
    """

    ring: Ring
    gens: tuple[Exps, ...]

    @classmethod
    def from_exponents(cls, ring: Ring, vecs: Iterable[Sequence[int]]) -> MonomialIdeal:
        vecs = [tuple(int(p) for p in v) for v in vecs]
        for v in vecs:
            if len(v) != len(ring):
                raise ValueError(f"exponent vector {v} does not match ring {ring.variables}")
            _check_exps(v)
        return cls(ring, _minimal(vecs))

    @classmethod
    def zero(cls, ring: Ring) -> MonomialIdeal:
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: Ring) -> MonomialIdeal:
        return cls(ring, ((0,) * len(ring),))

    @property
    def generators(self) -> list[Monomial]:
        return [Monomial(self.ring, g) for g in self.gens]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def support(self) -> tuple[str, ...]:
        """Variables occurring in some minimal generator, in ring order."""
        used = [any(g[i] for g in self.gens) for i in range(len(self.ring))]
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def lcm_exponents(self) -> Exps:
        if not self.gens:
            return (0,) * len(self.ring)
        return tuple(map(max, *self.gens)) if len(self.gens) > 1 else self.gens[0]

    def __len__(self):
        return len(self.gens)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: MonomialIdeal | Monomial) -> MonomialIdeal:
        return ideal_product(self, other)

    def __pow__(self, e: int) -> MonomialIdeal:
        return ideal_power(self, e)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_intersection(self, other)

    def __contains__(self, f: Monomial) -> bool:
        return ideal_contains(self, f)

    def __le__(self, other: MonomialIdeal) -> bool:
        return ideal_subset(self, other)

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(_format_exps(self.ring, g) for g in self.gens) + ")"


def _same_ring(*objs):
    rings = {o.ring for o in objs}
    if len(rings) > 1:
        raise RingMismatchError(
            "operands live in different rings: " + " vs ".join(str(r.variables) for r in rings)
        )


def _as_ideal(obj: MonomialIdeal | Monomial) -> MonomialIdeal:
    if isinstance(obj, Monomial):
        return MonomialIdeal(obj.ring, (obj.exponents,))
    return obj


def minimalize(ring: Ring, gens: Iterable[Monomial | Sequence[int]]) -> MonomialIdeal:
    """The ideal generated by ``gens``, reduced to its minimal generating set."""
    vecs = []
    for g in gens:
        if isinstance(g, Monomial):
            if g.ring != ring:
                raise RingMismatchError(f"monomial {g} is not in ring {ring.variables}")
            vecs.append(g.exponents)
        else:
            vecs.append(g)
    return MonomialIdeal.from_exponents(ring, vecs)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, _minimal(I.gens + J.gens))


def ideal_product(I: MonomialIdeal, J: MonomialIdeal | Monomial) -> MonomialIdeal:
    J = _as_ideal(J)
    _same_ring(I, J)
    prods = _checked(tuple(p + q for p, q in zip(g, h)) for g in I.gens for h in J.gens)
    return MonomialIdeal(I.ring, _minimal(prods))


def ideal_power(I: MonomialIdeal, e: int) -> MonomialIdeal:
    """``I**e`` by repeated multiplication, minimalizing after every step."""
    if e < 1:
        raise ValueError(f"power must be a positive integer, got {e}")
    result = I
    for _ in range(e - 1):
        result = ideal_product(result, I)
    return result


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    lcms = (tuple(map(max, g, h)) for g in I.gens for h in J.gens)
    return MonomialIdeal(I.ring, _minimal(lcms))


def _colon_exps(gens: Iterable[Exps], f: Exps) -> tuple[Exps, ...]:
    return _minimal(tuple(p - q if p > q else 0 for p, q in zip(g, f)) for g in gens)


def ideal_colon(I: MonomialIdeal, f: Monomial) -> MonomialIdeal:
    """``I : f`` for a monomial ``f``: divide each generator by its gcd with ``f``."""
    _same_ring(I, f)
    return MonomialIdeal(I.ring, _colon_exps(I.gens, f.exponents))


def ideal_saturation(I: MonomialIdeal, f: Monomial) -> MonomialIdeal:
    """``I : f^inf``, by colon with ``f`` until the result stops changing."""
    _same_ring(I, f)
    current = I
    while True:
        nxt = ideal_colon(current, f)
        if nxt == current:
            return current
        current = nxt


def substitute_one(I: MonomialIdeal, f: Monomial) -> MonomialIdeal:
    """Set every variable dividing ``f`` to 1 in the generators of ``I``."""
    _same_ring(I, f)
    mask = [p > 0 for p in f.exponents]
    subbed = (tuple(0 if m else p for p, m in zip(g, mask)) for g in I.gens)
    return MonomialIdeal(I.ring, _minimal(subbed))


def colon_split(I: MonomialIdeal, x: str, n: int) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Return ``(I : x^n, I + (x^n))``, whose intersection is ``I``.

    Raises :class:`StabilizationError` unless ``I : x^n`` already equals
    ``I : x^inf``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    xn = I.ring.var(x) ** n
    colon = ideal_colon(I, xn)
    if colon != ideal_saturation(I, I.ring.var(x)):
        raise StabilizationError(f"I : {x}^{n} is not yet stable")
    return colon, ideal_sum(I, _as_ideal(xn))


def ideal_contains(I: MonomialIdeal, f: Monomial) -> bool:
    _same_ring(I, f)
    return any(_divides(g, f.exponents) for g in I.gens)


def ideal_subset(J: MonomialIdeal, I: MonomialIdeal) -> bool:
    """True iff ``J`` is contained in ``I``."""
    _same_ring(I, J)
    return all(any(_divides(g, h) for g in I.gens) for h in J.gens)


def extend_ring(I: MonomialIdeal, bigger: Ring) -> MonomialIdeal:
    """Re-index ``I`` into a ring containing all of its variables."""
    missing = [v for v in I.ring.variables if v not in bigger]
    if missing:
        raise KeyError(f"variables {missing} are missing from {bigger.variables}")
    slots = [bigger.index(v) for v in I.ring.variables]
    out = []
    for g in I.gens:
        exps = [0] * len(bigger)
        for slot, p in zip(slots, g):
            exps[slot] = p
        out.append(tuple(exps))
    return MonomialIdeal(bigger, tuple(sorted(out)))


# ---------------------------------------------------------------------------
# JSON ideal format

def ideal_to_dict(I: MonomialIdeal) -> dict:
    return {"variables": list(I.ring.variables), "generators": [list(g) for g in I.gens]}


def ideal_from_dict(data: dict) -> MonomialIdeal:
    try:
        variables = data["variables"]
        generators = data["generators"]
    except (KeyError, TypeError):
        raise ValueError('ideal JSON needs "variables" and "generators"') from None
    if not isinstance(variables, list) or not isinstance(generators, list):
        raise ValueError('"variables" and "generators" must be lists')
    ring = Ring(tuple(variables))
    for g in generators:
        if not isinstance(g, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in g):
            raise ValueError(f"generator {g!r} is not a list of integers")
    return MonomialIdeal.from_exponents(ring, generators)


def ideal_to_json(I: MonomialIdeal, **kwargs) -> str:
    return json.dumps(ideal_to_dict(I), **kwargs)


def ideal_from_json(text: str) -> MonomialIdeal:
    return ideal_from_dict(json.loads(text))
