"""Verification runs comparing computed and predicted associated primes."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .decay_construction import (
    DecaySequence,
    build,
    predicted_ass,
    predicted_count,
    validate_sequence,
)
from .decomposition import (
    MonomialPrime,
    associated_primes_split,
    associated_primes_witness,
    default_witness_budget,
    witness_box_size,
)
from .monomial_core import ideal_power

__all__ = [
    "PowerRecord",
    "VerificationReport",
    "verify_construction",
    "sample_case",
    "FuzzSummary",
    "run_fuzz",
]


def _names(primes) -> list[list[str]]:
    return [list(p.variables) for p in primes]


@dataclass
class PowerRecord:
    e: int
    predicted_count: int
    computed_count: int
    predicted_primes: list[MonomialPrime]
    computed_primes: list[MonomialPrime]
    missing: list[MonomialPrime]
    extra: list[MonomialPrime]
    wall_time_ms: float
    # None when no cross-check was requested
    cross_check: str | None = None
    witness_primes: list[MonomialPrime] | None = None

    @property
    def match(self) -> bool:
        return not self.missing and not self.extra

    @property
    def ok(self) -> bool:
        return (
            self.match
            and self.computed_count == self.predicted_count
            and self.cross_check in (None, "agree", "skipped")
        )

    def to_dict(self, stable: bool = False) -> dict:
        out = {
            "e": self.e,
            "predicted_count": self.predicted_count,
            "computed_count": self.computed_count,
            "match": self.match,
            "predicted_primes": _names(self.predicted_primes),
            "computed_primes": _names(self.computed_primes),
            "missing": _names(self.missing),
            "extra": _names(self.extra),
        }
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check
            if self.witness_primes is not None:
                out["witness_primes"] = _names(self.witness_primes)
        if not stable:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


@dataclass
class VerificationReport:
    q: list[int]
    n: int
    m: int
    records: list[PowerRecord] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.ok for r in self.records)

    def to_dict(self, stable: bool = False) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "powers": [r.to_dict(stable) for r in self.records],
            "overall": self.overall,
        }


def verify_construction(
    q: DecaySequence,
    m: int | None = None,
    max_e: int | None = None,
    *,
    cross_check: bool = False,
    witness_budget: int | None = None,
    skip_over_budget: bool = False,
) -> VerificationReport:
    """Compare the split-algorithm Ass of ``I**e`` with the prediction for ``e = 1..max_e``.

    With ``cross_check`` the witness algorithm runs as well; powers whose
    witness box exceeds the budget raise :class:`WitnessBudgetExceeded`
    unless ``skip_over_budget`` is set, in which case they are marked
    ``"skipped"``.
    """
    if m is None:
        m = q.n
    if max_e is None:
        max_e = q.n + 2
    if max_e < 1:
        raise ValueError(f"max_e must be at least 1, got {max_e}")
    if witness_budget is None:
        witness_budget = default_witness_budget()
    data = build(q, m)
    report = VerificationReport(list(q.entries), q.n, m)
    power = data.ideal
    for e in range(1, max_e + 1):
        start = time.perf_counter()
        if e > 1:
            power = ideal_power(data.ideal, e) if e == 2 else power * data.ideal
        predicted = predicted_ass(q, m, e)
        computed = associated_primes_split(power)
        status = None
        witness = None
        if cross_check:
            if witness_box_size(power) > witness_budget and skip_over_budget:
                status = "skipped"
            else:
                witness = associated_primes_witness(power, witness_budget)
                status = "agree" if witness == computed else "disagree"
        pset, cset = set(predicted), set(computed)
        report.records.append(
            PowerRecord(
                e=e,
                predicted_count=predicted_count(q, e),
                computed_count=len(computed),
                predicted_primes=predicted,
                computed_primes=computed,
                missing=[p for p in predicted if p not in cset],
                extra=[p for p in computed if p not in pset],
                wall_time_ms=(time.perf_counter() - start) * 1000,
                cross_check=status,
                witness_primes=witness,
            )
        )
    return report


def sample_case(rng: random.Random, max_q1: int, max_n: int, max_m_slack: int):
    """Draw ``(q, m)``: ``n`` and ``q_n`` uniformly, then non-negative steps up to ``max_q1``."""
    n = rng.randint(1, max_n)
    entries = [rng.randint(1, max_q1)]
    for _ in range(n - 1):
        entries.insert(0, entries[0] + rng.randint(0, max_q1 - entries[0]))
    q = validate_sequence(entries, n)
    m = rng.randint(n, n + max_m_slack)
    return q, m


@dataclass
class FuzzSummary:
    seed: int
    cases: list[VerificationReport]

    @property
    def passed(self) -> int:
        return sum(r.overall for r in self.cases)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def first_failure(self) -> VerificationReport | None:
        return next((r for r in self.cases if not r.overall), None)

    def to_dict(self) -> dict:
        failure = self.first_failure()
        return {
            "seed": self.seed,
            "cases": len(self.cases),
            "passed": self.passed,
            "failed": self.failed,
            "results": [
                {
                    "q": r.q,
                    "n": r.n,
                    "m": r.m,
                    "counts": [rec.computed_count for rec in r.records],
                    "cross_checked": sum(rec.cross_check == "agree" for rec in r.records),
                    "overall": r.overall,
                }
                for r in self.cases
            ],
            "first_failure": failure.to_dict(stable=True) if failure else None,
        }


def run_fuzz(
    seed: int,
    cases: int,
    max_q1: int = 5,
    max_n: int = 4,
    max_m_slack: int = 1,
    *,
    cross_check: bool = True,
    witness_budget: int | None = None,
) -> FuzzSummary:
    if min(max_q1, max_n) < 1 or max_m_slack < 0 or cases < 0:
        raise ValueError("fuzz bounds must be positive")
    rng = random.Random(seed)
    reports = []
    for _ in range(cases):
        q, m = sample_case(rng, max_q1, max_n, max_m_slack)
        reports.append(
            verify_construction(
                q, m,
                cross_check=cross_check,
                witness_budget=witness_budget,
                skip_over_budget=True,
            )
        )
    return FuzzSummary(seed, reports)
