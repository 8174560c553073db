"""Independent oracles shared by the test modules."""

import itertools
import random

from decayideal.decomposition import MonomialPrime
from decayideal.monomial_core import MonomialIdeal, Ring


def divides(g, f):
    return all(p <= q for p, q in zip(g, f))


def brute_minimal(vecs):
    """Minimal elements under divisibility, by the O(n^2) definition."""
    vecs = set(map(tuple, vecs))
    return sorted(v for v in vecs if not any(w != v and divides(w, v) for w in vecs))


def box(bounds):
    return itertools.product(*(range(b + 1) for b in bounds))


def members(gens, bounds):
    """All monomials in the box that lie in the ideal generated by ``gens``."""
    return {f for f in box(bounds) if any(divides(g, f) for g in gens)}


def ideal_from_members(ring, member_set):
    """Minimal generators of the ideal spanned by a membership set (box must be big enough)."""
    return MonomialIdeal(ring, tuple(brute_minimal(member_set)))


def random_ideal(rng: random.Random, ring: Ring, max_exp=4, max_gens=6, proper=True):
    while True:
        k = rng.randint(1, max_gens)
        gens = [tuple(rng.randint(0, max_exp) for _ in ring.variables) for _ in range(k)]
        ideal = MonomialIdeal.from_exponents(ring, gens)
        if not proper or not ideal.is_unit():
            return ideal


def random_ring(rng: random.Random, max_vars=4):
    return Ring(tuple("xyzw"[: rng.randint(1, max_vars)]))


def superset_T(data, e):
    """The superset bound for Ass(I**e), spelled out literally from its definition."""
    ring, J, t, n = data.ring, data.J, data.t, data.n
    T = {MonomialPrime(ring, ("a", "b"))}
    for l in range(1, t[n] + 1):
        T.add(MonomialPrime(ring, (f"y{n}_{l}",)))
    for k in J:
        if k >= e:
            T.add(MonomialPrime(ring, ("a", "b") + tuple(f"x{j}" for j in J if k <= j)))
            for l in range(1, t[k] + 1):
                T.add(MonomialPrime(ring, ("a", "b", f"y{k}_{l}") + tuple(f"x{j}" for j in J if k < j)))
    return T


def construction_violations(data, e, primes):
    """Violations of the structural properties of Ass(I**e) for a constructed ideal.

    Covers minimal primes present, the x-chain, the depth bound k >= e,
    stabilization for e >= n, mutual exclusion, and the superset bound.
    """
    out = []
    ring, J, K, t, n = data.ring, data.J, data.K, data.t, data.n
    primes = set(primes)
    yn = [f"y{n}_{l}" for l in range(1, t[n] + 1)]
    ab = MonomialPrime(ring, ("a", "b"))
    minimal = {ab} | {MonomialPrime(ring, (y,)) for y in yn}
    if not minimal <= primes:
        out.append(f"e={e}: minimal primes missing: {[str(p) for p in minimal - primes]}")
    for P in primes:
        vs = set(P.variables)
        if not (len(vs) == 1 and vs <= set(yn)) and not ({"a", "b"} <= vs and not vs & set(yn)):
            out.append(f"e={e}: {P} neither (y_n,l) nor over (a,b) without y_n")
        for k in set(J) | set(K):
            owners = ({f"x{k}"} if k in J else set()) | {f"y{k}_{l}" for l in range(1, t[k] + 1)}
            if vs & owners:
                for j in J:
                    if j > k and f"x{j}" not in vs:
                        out.append(f"e={e}: {P} has a k={k} variable but not x{j}")
                if k in J and k < e:
                    out.append(f"e={e}: {P} has a k={k} variable with k < e")
        for k in J:
            for j in J:
                if j < k:
                    continue
                group = {f"x{k}"} | {f"y{k}_{l}" for l in range(1, t[k] + 1)}
                group |= {f"y{j}_{p}" for p in range(1, t[j] + 1)}
                if len(vs & group) > 1:
                    out.append(f"e={e}: {P} contains {sorted(vs & group)} (k={k}, j={j})")
    if e >= n and primes != minimal:
        out.append(f"e={e} >= n: Ass is not the stable set")
    extra = primes - superset_T(data, e)
    if extra:
        out.append(f"e={e}: outside superset bound: {[str(p) for p in extra]}")
    return out
