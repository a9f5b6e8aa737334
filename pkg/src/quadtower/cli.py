"""Command-line interface: classification, prediction, cross-checks, group
reports, scans, and the one-shot verification matrix.

Exit codes: 0 on success with all checks passing, 2 if any check failed,
1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import pgroup
from .errors import QuadTowerError
from .pgroup import GroupParams
from .quadforms import DEFAULT_ENUM_BOUND, AbelianType, QuadForm
from .tower import Check, TowerReport, classify, crosscheck, predict, scan
from .verify import run_all

SCHEMA_VERSION = 1

CSV_COLUMNS = ["d", "kind", "p", "q", "qprime", "n", "m", "h2_k", "h2_minus4p"]


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _jsonable(value):
    """Convert report values to JSON-serializable structures."""
    if isinstance(value, AbelianType):
        return list(value.parts)
    if isinstance(value, QuadForm):
        return [value.a, value.b, value.c]
    if isinstance(value, GroupParams):
        return {
            "n": value.n,
            "m": value.m,
            "eps": value.eps,
            "family": value.family,
        }
    if isinstance(value, Check):
        return {
            "name": value.name,
            "expected": _jsonable(value.expected),
            "computed": _jsonable(value.computed),
            "passed": value.passed,
        }
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def _emit_json(command: str, config: dict, results, checks) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": _jsonable(config),
        "results": _jsonable(results),
        "checks": [_jsonable(c) for c in checks],
    }
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _classification_result(cls) -> dict:
    return {
        "d": cls.d,
        "kind": cls.kind,
        "primes": list(cls.primes),
        "witness": [_jsonable(c) for c in cls.witness],
    }


def _report_result(r: TowerReport) -> dict:
    return {
        "classification": _classification_result(r.classification),
        "n": r.n,
        "m": r.m,
        "mu": r.mu,
        "predicted_group": _jsonable(r.predicted_group),
        "h2_k": r.h2_k,
        "h2_minus4p": r.h2_minus4p,
    }


def _print_checks_text(checks) -> None:
    for c in checks:
        mark = "ok" if c.passed else "FAIL"
        print(f"  [{mark}] {c.name}: expected {c.expected}, computed {c.computed}")


def _checks_exit(checks) -> int:
    return 0 if all(c.passed for c in checks) else 2


def cmd_classify(args, config) -> int:
    cls = classify(args.d)
    if args.format == "json":
        _emit_json("classify", config, [_classification_result(cls)], [])
    else:
        primes = " ".join(str(p) for p in cls.primes)
        print(f"{cls.d}: {cls.kind}" + (f" ({primes})" if primes else ""))
    return 0


def cmd_invariants(args, config) -> int:
    from .tower import invariants

    n, m, mu = invariants(args.d, args.bound)
    if args.format == "json":
        _emit_json("invariants", config, [{"d": args.d, "n": n, "m": m, "mu": mu}], [])
    else:
        print(f"{args.d}: n={n} m={m} mu={mu}")
    return 0


def cmd_predict(args, config) -> int:
    report = predict(args.d, args.bound)
    if args.format == "json":
        _emit_json("predict", config, [_report_result(report)], report.checks)
    else:
        g = report.predicted_group
        family = "Gamma" if g.family == "Gamma" else "Gamma^(4r)"
        print(
            f"{args.d}: {family} n={g.n} m={g.m} eps={g.eps} "
            f"(h2(k)={report.h2_k}, h2(-4p)={report.h2_minus4p})"
        )
        _print_checks_text(report.checks)
    return _checks_exit(report.checks)


def cmd_crosscheck(args, config) -> int:
    report = crosscheck(args.d, args.bound)
    if args.format == "json":
        _emit_json("crosscheck", config, [_report_result(report)], report.checks)
    else:
        print(f"{args.d}: n={report.n} m={report.m}")
        _print_checks_text(report.checks)
    return _checks_exit(report.checks)


def _group_report(g, kind: str):
    if kind == "fingerprint":
        fp = pgroup.fingerprint(g)
        return {
            "order": fp.order,
            "abelianization": fp.abelianization,
            "derived_type": fp.derived_type,
            "exponent": fp.exponent,
            "center_order": fp.center_order,
            "lcs_orders": fp.lcs_orders,
            "sub_index2": fp.sub_index2,
            "sub_index4": fp.sub_index4,
            "elt_order_histogram": fp.elt_order_histogram,
        }
    if kind == "subgroups":
        out = []
        for sub, normal in pgroup.subgroups_of_index4(g):
            ab = pgroup.abelian_type_of(sub, pgroup.derived_subgroup(sub))
            out.append({"abelianization": ab, "normal": normal})
        return out
    if kind == "transfers":
        top = pgroup.whole_group(g)
        out = {}
        for j, sub in enumerate(pgroup.standard_maximal_subgroups(g), start=1):
            order, _, _ = pgroup.transfer_kernel(top, sub)
            out[f"ker_t{j}_order"] = order
        h2 = pgroup.subgroup(g, [g.a2, g.a3, g.c12, g.c13])
        inter = pgroup.subgroup(g, [g.a2, g.mul(g.a3, g.a3), g.c12, g.c13])
        out["ker_H2_to_H1capH2_order"] = pgroup.transfer_kernel(h2, inter)[0]
        return out
    if kind == "lcs":
        return [term.order for term in pgroup.lower_central_series(g)]
    return None


def cmd_group(args, config) -> int:
    g = pgroup.gamma(args.n, args.m, args.eps)
    top = pgroup.whole_group(g)
    result = {
        "params": g.params,
        "order": g.order,
        "abelianization": pgroup.abelianization(g),
        "derived_type": pgroup.abelian_type_of(pgroup.derived_subgroup(top)),
    }
    if args.report:
        result[args.report] = _group_report(g, args.report)
    if args.format == "json":
        _emit_json("group", config, [result], [])
    else:
        print(
            f"Gamma_({args.n},{args.m},{args.eps}): order {g.order}, "
            f"abelianization {result['abelianization']}, "
            f"derived {result['derived_type']}"
        )
        if args.report:
            print(json.dumps(_jsonable(result[args.report]), sort_keys=True, indent=2))
    return 0


def cmd_verify(args, config) -> int:
    results = run_all(grid=args.grid, seed=args.seed, bound=args.bound)
    checks = [c for r in results for c in r.checks]
    if args.format == "json":
        payload = [
            {
                "number": r.number,
                "anchor": r.anchor,
                "passed": r.passed,
                "checks": len(r.checks),
                "failures": [_jsonable(c) for c in r.failures],
                "deviations": [
                    {"name": name, "note": note} for name, note in r.deviations
                ],
            }
            for r in results
        ]
        _emit_json("verify", config, payload, [])
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.number:2d} {r.anchor}: {status} ({len(r.checks)} checks)")
            for c in r.failures:
                print(f"     FAIL {c.name}: expected {c.expected}, computed {c.computed}")
            for name, note in r.deviations:
                print(f"     KNOWN DEVIATION {name}: {note}")
    return 0 if all(r.passed for r in results) else 2


def cmd_scan(args, config) -> int:
    reports = scan(args.lo, args.hi, bound=args.bound, workers=args.workers)
    if args.type:
        want = "Type4p" if args.type == "4p" else "Type4r"
        reports = [r for r in reports if r.classification.kind == want]
    rows = []
    for r in reports:
        p, q, qp = r.classification.primes
        rows.append(
            {
                "d": r.d,
                "kind": r.classification.kind,
                "p": p,
                "q": q,
                "qprime": qp,
                "n": r.n,
                "m": r.m,
                "h2_k": r.h2_k,
                "h2_minus4p": r.h2_minus4p,
            }
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    if args.format == "json":
        _emit_json("scan", config, rows, [])
    elif args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    else:
        for row in rows:
            print(
                f"{row['d']:>8} {row['kind']} p={row['p']} q={row['q']} "
                f"q'={row['qprime']} n={row['n']} m={row['m']}"
            )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="quadtower", description=__doc__)
    parser.add_argument("--format", choices=["text", "json", "csv"], default="text")
    parser.add_argument("--bound", type=int, default=DEFAULT_ENUM_BOUND)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("classify", "invariants", "predict", "crosscheck"):
        p = sub.add_parser(name)
        p.add_argument("d", type=int)

    p = sub.add_parser("group")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("eps", type=int, choices=[0, 1])
    p.add_argument(
        "--report", choices=["fingerprint", "subgroups", "transfers", "lcs"]
    )

    p = sub.add_parser("verify")
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("scan")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--type", choices=["4p", "4r"])
    p.add_argument("--csv")
    return parser


_COMMANDS = {
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "predict": cmd_predict,
    "crosscheck": cmd_crosscheck,
    "group": cmd_group,
    "verify": cmd_verify,
    "scan": cmd_scan,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command",) and v is not None
    }
    try:
        return _COMMANDS[args.command](args, config)
    except QuadTowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
