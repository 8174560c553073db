"""Monomial ideals whose powers have a prescribed number of associated primes.

Given a non-increasing sequence ``q_1 >= ... >= q_n >= 1`` (constant from
position ``n`` on) and an integer ``m >= n``, :func:`build` produces a ring
with variables ``a, b, x<j>, y<k>_<l>`` and an ideal ``I`` such that
``I**e`` has exactly ``q_e`` associated primes; :func:`predicted_ass`
lists them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .decomposition import MonomialPrime
from .monomial_core import Monomial, MonomialIdeal, Ring, ideal_product

__all__ = [
    "SequenceError",
    "ConstructionError",
    "DecaySequence",
    "ConstructionData",
    "validate_sequence",
    "parse_sequence",
    "differences",
    "index_sets",
    "build",
    "ones_ideal",
    "predicted_ass",
    "predicted_count",
    "h_transform",
    "g_transform",
    "base_case_structure",
    "base_case_witness",
    "base_case_prime",
]


class SequenceError(ValueError):
    """Input is not a valid non-increasing positive-integer sequence."""


class ConstructionError(ValueError):
    """Parameters outside the range where the construction is defined."""


@dataclass(frozen=True)
class DecaySequence:
    """``entries`` holds ``q_1..q_n``; every later term equals ``q_n``."""

    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, e: int) -> int:
        """``q_e`` (1-based), extended constantly past ``n``."""
        if e < 1:
            raise IndexError("sequence positions start at 1")
        if not self.entries:
            raise IndexError("the empty sequence has no terms")
        return self.entries[min(e, self.n) - 1]

    def __str__(self):
        return "{" + ",".join(map(str, self.entries)) + "}"


EMPTY = DecaySequence(())


def validate_sequence(entries: Sequence[int], n: int | None = None) -> DecaySequence:
    """Check ``entries`` and cut it to its stabilization index.

    When ``n`` is omitted the smallest index past which ``entries`` is
    constant is used.
    """
    entries = list(entries)
    if not entries:
        raise SequenceError("sequence is empty")
    for q in entries:
        if isinstance(q, bool) or not isinstance(q, int):
            raise SequenceError(f"entry {q!r} is not an integer")
        if q < 1:
            raise SequenceError(f"entry {q} is not positive")
    for i in range(len(entries) - 1):
        if entries[i] < entries[i + 1]:
            raise SequenceError(
                f"sequence not non-increasing: q_{i + 1} = {entries[i]} < q_{i + 2} = {entries[i + 1]}"
            )
    smallest = len(entries)
    while smallest > 1 and entries[smallest - 2] == entries[-1]:
        smallest -= 1
    if n is None:
        n = smallest
    elif not smallest <= n <= len(entries):
        raise SequenceError(
            f"stabilization index {n} must lie between {smallest} and {len(entries)}"
        )
    return DecaySequence(tuple(entries[:n]))


def parse_sequence(text: str, n: int | None = None) -> DecaySequence:
    """Parse ``"6,5,5,4,2,1"``."""
    try:
        entries = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise SequenceError(f"cannot parse sequence {text!r}") from None
    return validate_sequence(entries, n)


def differences(q: DecaySequence) -> dict[int, int]:
    """``t_i`` for ``i = 1..n``: ``q_i - q_{i+1} - 1``, and ``q_n - 1`` at ``i = n``."""
    n = q.n
    t = {i: q[i] - q[i + 1] - 1 for i in range(1, n)}
    if n:
        t[n] = q[n] - 1
    return t


def index_sets(q: DecaySequence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(J, K)``: indices below ``n`` with ``t >= 0`` and indices up to ``n`` with ``t >= 1``."""
    t = differences(q)
    J = tuple(i for i in range(1, q.n) if t[i] >= 0)
    K = tuple(i for i in range(1, q.n + 1) if t[i] >= 1)
    return J, K


def _x(j: int) -> str:
    return f"x{j}"


def _y(k: int, l: int) -> str:
    return f"y{k}_{l}"


@dataclass(frozen=True)
class ConstructionData:
    q: DecaySequence
    m: int
    t: dict[int, int]
    J: tuple[int, ...]
    K: tuple[int, ...]
    ring: Ring
    Z: dict[int, Monomial]
    Y: dict[int, Monomial]
    M: dict[int, Monomial]
    ideal: MonomialIdeal

    @property
    def n(self) -> int:
        return self.q.n

    def x(self, j: int) -> str:
        return _x(j)

    def y(self, k: int, l: int) -> str:
        return _y(k, l)

    def y_vars(self, k: int) -> list[str]:
        return [_y(k, l) for l in range(1, self.t.get(k, 0) + 1)]

    def meta(self) -> dict:
        return {
            "q": list(self.q.entries),
            "n": self.n,
            "m": self.m,
            "t": [self.t[i] for i in range(1, self.n + 1)],
            "J": list(self.J),
            "K": list(self.K),
        }


def ones_ideal(ring: Ring, m: int) -> MonomialIdeal:
    """``(a^(m+2), a^(m+1) b, a b^(m+1), b^(m+2))`` in ``ring``."""
    return ring.ideal(
        {"a": m + 2}, {"a": m + 1, "b": 1}, {"a": 1, "b": m + 1}, {"b": m + 2}
    )


def build(q: DecaySequence, m: int) -> ConstructionData:
    """Ring and ideal for ``(q, m)``; the empty sequence gives the zero ideal over no variables."""
    if m < q.n:
        raise ConstructionError(f"m = {m} must be at least n = {q.n}")
    if q.n == 0:
        ring = Ring(())
        return ConstructionData(q, m, {}, (), (), ring, {}, {}, {}, MonomialIdeal.zero(ring))

    n = q.n
    t = differences(q)
    J, K = index_sets(q)
    names = ["a", "b"] + [_x(j) for j in J]
    for k in K:
        names += [_y(k, l) for l in range(1, t[k] + 1)]
    ring = Ring(tuple(names))

    Z = {}
    for j in J + (n,):
        Z[j] = ring.monomial({_y(j, l): 1 for l in range(1, t[j] + 1)})
    Y = {}
    for j in J + (n,):
        mon = Z[n]
        for s in J:
            if s >= j:
                mon = mon * Z[s]
        Y[j] = mon
    M = {j: ring.monomial({"a": m, "b": m - j + 1, _x(j): 1}) for j in J}

    gens = [M[j] * Y[j] for j in J]
    gens += ideal_product(ones_ideal(ring, m), Y[n]).generators
    ideal = MonomialIdeal.from_exponents(ring, [g.exponents for g in gens])
    return ConstructionData(q, m, t, J, K, ring, Z, Y, M, ideal)


def predicted_ass(q: DecaySequence, m: int, e: int) -> list[MonomialPrime]:
    """Associated primes of ``I**e`` for the constructed ``I``, canonically sorted."""
    if e < 1:
        raise ConstructionError(f"power e = {e} must be positive")
    data = build(q, m)
    ring, J, t, n = data.ring, data.J, data.t, data.n
    primes = {MonomialPrime.of(ring, "a", "b")}
    primes.update(MonomialPrime.of(ring, _y(n, l)) for l in range(1, t[n] + 1))
    for j in J:
        if j < e:
            continue
        primes.add(MonomialPrime.of(ring, "a", "b", *(_x(i) for i in J if i >= j)))
        upper = [_x(i) for i in J if i > j]
        for l in range(1, t[j] + 1):
            primes.add(MonomialPrime.of(ring, "a", "b", _y(j, l), *upper))
    return sorted(primes, key=MonomialPrime.sort_key)


def predicted_count(q: DecaySequence, e: int) -> int:
    if e < 1:
        raise ConstructionError(f"power e = {e} must be positive")
    return q[e]


def _check_transform_index(q: DecaySequence, k: int):
    J, _ = index_sets(q)
    if k not in J and k != q.n:
        raise ConstructionError(f"index {k} is neither in J = {list(J)} nor n = {q.n}")


def h_transform(q: DecaySequence, k: int) -> DecaySequence:
    """Subtract ``t_k`` from ``q_1..q_k``; same stabilization index ``n``."""
    _check_transform_index(q, k)
    tk = differences(q)[k]
    entries = [v - tk if i <= k else v for i, v in enumerate(q.entries, start=1)]
    return validate_sequence(entries, q.n)


def g_transform(q: DecaySequence, k: int) -> DecaySequence:
    """``q_{k+1}`` repeated ``k+1`` times, then ``q_{k+2}..q_n``; empty when ``k = n``."""
    _check_transform_index(q, k)
    if k == q.n:
        return EMPTY
    entries = [q[k + 1]] * (k + 1) + list(q.entries[k + 1:])
    return validate_sequence(entries, q.n)


def base_case_structure(q: DecaySequence) -> tuple[int, ...]:
    """Positions ``j_1 < ... < j_r`` (``r = q_1``) where the value drops, ending at ``j_r = n``.

    Only defined when every ``t_i`` is ``-1`` or ``0``.
    """
    _, K = index_sets(q)
    if K:
        raise ConstructionError(f"K_q = {list(K)} is not empty")
    r = q[1]
    # j_k counts the entries that are at least r - k + 1
    return tuple(sum(1 for v in q.entries if v >= r - k + 1) for k in range(1, r + 1))


def base_case_prime(q: DecaySequence, m: int, s: int) -> MonomialPrime:
    """``(a, b, x_{j_s}, ..., x_{j_{r-1}})``."""
    js = base_case_structure(q)
    r = len(js)
    if not 1 <= s <= r - 1:
        raise ConstructionError(f"s = {s} must lie in 1..{r - 1}")
    ring = build(q, m).ring
    return MonomialPrime.of(ring, "a", "b", *(_x(j) for j in js[s - 1:r - 1]))


def base_case_witness(q: DecaySequence, m: int, e: int, s: int) -> Monomial:
    """Monomial ``w`` with ``I**e : w`` equal to :func:`base_case_prime` ``(q, m, s)``.

    Valid for ``1 <= e <= j_s``.
    """
    js = base_case_structure(q)
    r = len(js)
    if not 1 <= s <= r - 1:
        raise ConstructionError(f"s = {s} must lie in 1..{r - 1}")
    if e < 1 or e > js[s - 1]:
        raise ConstructionError(f"no witness for e = {e}: need 1 <= e <= j_s = {js[s - 1]}")
    data = build(q, m)
    ring = data.ring
    prev = js[s - 2] if s > 1 else 0
    if e <= prev + 1:
        powers = {"a": m, "b": m - prev + (e - 1) * (m + 2)}
        if prev:
            powers[_x(prev)] = 1
    else:
        powers = {"a": m, "b": e * (m + 1) - 1}
    return ring.monomial(powers)
