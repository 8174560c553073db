"""Command line front end: ``decayideal {construct,ass,verify,fuzz}``.

Examples::

    decayideal construct --q 6,5,5,4,2,1 --m 6 --json
    decayideal ass --ideal ideal.json --e 2 --algorithm both
    decayideal verify --q 3,2,1 --m 3 --max-e 5 --cross-check
    decayideal fuzz --seed 42 --cases 25

Exit status is 0 iff every requested check passed.  Failures also print a
JSON record (``{"ok": false, ...}``) on standard output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decay_construction import ConstructionError, SequenceError, build, parse_sequence
from .decomposition import (
    WitnessBudgetExceeded,
    associated_primes_split,
    associated_primes_witness,
    default_witness_budget,
)
from .harness import run_fuzz, verify_construction
from .monomial_core import (
    RingMismatchError,
    _format_exps,
    ideal_from_json,
    ideal_power,
    ideal_to_dict,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _fail(kind: str, message: str) -> int:
    print(_dump({"ok": False, "error": kind, "message": message}))
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _sequence(args):
    if args.q is None:
        raise CliError("--q is required")
    q = parse_sequence(args.q, args.n)
    m = q.n if args.m is None else args.m
    return q, m


def _budget(args) -> int:
    return args.witness_budget if args.witness_budget is not None else default_witness_budget()


def cmd_construct(args) -> int:
    q, m = _sequence(args)
    data = build(q, m)
    if args.json:
        out = ideal_to_dict(data.ideal)
        out["meta"] = data.meta()
        print(_dump(out))
        return EXIT_OK
    meta = data.meta()
    print(f"q = {meta['q']}  n = {meta['n']}  m = {meta['m']}")
    print(f"t = {meta['t']}  J = {meta['J']}  K = {meta['K']}")
    print("variables: " + " ".join(data.ring.variables))
    print(f"generators ({len(data.ideal)}):")
    for g in data.ideal.gens:
        print("  " + _format_exps(data.ring, g))
    return EXIT_OK


def _load_ideal(args):
    if args.ideal is not None:
        if args.q is not None:
            raise CliError("give either --ideal or --q, not both")
        if args.ideal == "-":
            text = sys.stdin.read()
        else:
            with open(args.ideal) as fh:
                text = fh.read()
        try:
            return ideal_from_json(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"malformed ideal JSON: {exc}") from None
    q, m = _sequence(args)
    return build(q, m).ideal


def cmd_ass(args) -> int:
    base = _load_ideal(args)
    if args.e < 1:
        raise CliError("--e must be a positive integer")
    ideal = ideal_power(base, args.e)
    found = {}
    if args.algorithm in ("split", "both"):
        found["split"] = associated_primes_split(ideal)
    if args.algorithm in ("witness", "both"):
        found["witness"] = associated_primes_witness(ideal, _budget(args))
    primes = next(iter(found.values()))
    agree = None
    if args.algorithm == "both":
        agree = found["split"] == found["witness"]

    if args.json:
        out = {
            "variables": list(ideal.ring.variables),
            "e": args.e,
            "algorithm": args.algorithm,
            "count": len(primes),
            "primes": [list(p.variables) for p in primes],
        }
        if agree is not None:
            sset, wset = set(found["split"]), set(found["witness"])
            out["agree"] = agree
            out["split_only"] = [list(p.variables) for p in found["split"] if p not in wset]
            out["witness_only"] = [list(p.variables) for p in found["witness"] if p not in sset]
            out["ok"] = agree
        print(_dump(out))
    else:
        print(f"{len(primes)} associated primes of I^{args.e}:")
        for p in primes:
            print(f"  {p}")
        if agree is True:
            print("split and witness algorithms agree")
        elif agree is False:
            print("MISMATCH between algorithms")
            print("  split:   " + " ".join(map(str, found["split"])))
            print("  witness: " + " ".join(map(str, found["witness"])))
    return EXIT_OK if agree in (None, True) else EXIT_CHECK_FAILED


def cmd_verify(args) -> int:
    q, m = _sequence(args)
    report = verify_construction(
        q, m, args.max_e,
        cross_check=args.cross_check,
        witness_budget=_budget(args),
        skip_over_budget=args.skip_over_budget,
    )
    if args.json:
        print(_dump(report.to_dict(stable=args.stable)))
    else:
        print(f"q = {report.q}  n = {report.n}  m = {report.m}")
        for rec in report.records:
            line = (
                f"e = {rec.e}: predicted {rec.predicted_count}, computed {rec.computed_count}, "
                f"{'match' if rec.match else 'MISMATCH'}"
            )
            if rec.cross_check is not None:
                line += f", witness {rec.cross_check}"
            if not args.stable:
                line += f" ({rec.wall_time_ms:.1f} ms)"
            print(line)
            for p in rec.missing:
                print(f"    missing {p}")
            for p in rec.extra:
                print(f"    extra   {p}")
        print("overall: " + ("PASS" if report.overall else "FAIL"))
        if not report.overall:
            print(_dump({"ok": False, "report": report.to_dict(stable=True)}))
    return EXIT_OK if report.overall else EXIT_CHECK_FAILED


def cmd_fuzz(args) -> int:
    summary = run_fuzz(
        args.seed, args.cases, args.max_q1, args.max_n, args.max_m_slack,
        witness_budget=_budget(args),
    )
    if args.json:
        print(_dump(summary.to_dict()))
    else:
        for i, r in enumerate(summary.cases):
            counts = ",".join(str(rec.computed_count) for rec in r.records)
            checked = sum(rec.cross_check == "agree" for rec in r.records)
            status = "pass" if r.overall else "FAIL"
            print(
                f"case {i}: q={r.q} n={r.n} m={r.m} counts={counts} "
                f"cross-checked={checked}/{len(r.records)} {status}"
            )
        print(f"{summary.passed}/{len(summary.cases)} passed")
        failure = summary.first_failure()
        if failure is not None:
            print("first failure:")
            print(_dump({"ok": False, "report": failure.to_dict(stable=True)}))
    return EXIT_OK if summary.ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decayideal",
        description="Monomial ideals whose powers have a prescribed number of associated primes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def seq_args(p, required=True):
        p.add_argument("--q", required=required, help="comma-separated non-increasing positive integers")
        p.add_argument("--m", type=int, help="construction parameter, at least n (default n)")
        p.add_argument("--n", type=int, help="stabilization index (default: smallest valid)")

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--witness-budget", type=int, help="max monomials enumerated by the witness algorithm")

    p = sub.add_parser("construct", help="build the ideal for a sequence")
    seq_args(p)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("ass", help="associated primes of a power of an ideal")
    seq_args(p, required=False)
    p.add_argument("--ideal", help="ideal JSON file ('-' for stdin)")
    p.add_argument("--e", type=int, default=1, help="power (default 1)")
    p.add_argument("--algorithm", choices=("split", "witness", "both"), default="split")
    common(p)
    p.set_defaults(func=cmd_ass)

    p = sub.add_parser("verify", help="check computed against predicted primes for e = 1..max-e")
    seq_args(p)
    p.add_argument("--max-e", type=int, help="largest power checked (default n+2)")
    p.add_argument("--cross-check", action="store_true", help="also run the witness algorithm")
    p.add_argument(
        "--skip-over-budget", action="store_true",
        help="skip the cross-check for powers beyond the witness budget instead of failing",
    )
    p.add_argument("--stable", action="store_true", help="omit timings for byte-stable output")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="verify randomly sampled sequences, cross-checking both algorithms")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=25)
    p.add_argument("--max-q1", type=int, default=5)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-m-slack", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SequenceError as exc:
        return _fail("sequence", str(exc))
    except ConstructionError as exc:
        return _fail("construction", str(exc))
    except WitnessBudgetExceeded as exc:
        return _fail("budget", str(exc))
    except (CliError, RingMismatchError, ValueError, KeyError, OSError) as exc:
        return _fail("input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
