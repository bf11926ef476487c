"""Command-line interface: batch moment computation, listings, and the
cross-verification driver.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Results go to
stdout, diagnostics to stderr.  All JSON output carries a schema tag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import GAUGE_FOR_MODE, MODE_FOR_GAUGE, PRESET_FOR_MODE
from .cards import arrangement_record, enumerate_contributors, expand_arrangements, moment_by_cards
from .cfrac import cf_series, cf_spec, render_cf
from .fock import (
    OperatorWord,
    ScalarGauge,
    check_adjointness,
    check_commutation,
    check_gram_positivity,
    moment_by_operator,
    vacuum_expectation_word,
)
from .orthopoly import (
    binomial,
    charlier_strict,
    charlier_t_gauge,
    check_charlier_fock_identity,
    check_orthogonality,
    ejsmont,
    jfraction_series,
    moments_by_motzkin,
    poisson_limit_check,
    three_term_polys,
)
from .partitions import (
    NestingMode,
    enumerate_partitions,
    moment_by_partitions,
    partition_record,
    restricted_crossings,
    restricted_nestings,
)
from .ring import Poly

SCHEMA = "qtmoments/1"

MODES = {"strict": NestingMode.STRICT, "covered": NestingMode.COVERED_SINGLETON}
GAUGES = {"identity": ScalarGauge.IDENTITY, "tpowern": ScalarGauge.T_POWER_N}
PRESETS = {
    "strict": charlier_strict,
    "tgauge": charlier_t_gauge,
    "ejsmont": ejsmont,
}


def rational(text: str) -> Fraction:
    """Parse 'a/b' or an integer literal."""
    try:
        if "/" in text:
            num, _, den = text.partition("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}: {exc}")


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("QTMOMENTS_WORKERS", "1")))
    except ValueError:
        return 1


def _resolve_mode_gauge(args) -> tuple:
    """Mode and gauge are linked; deriving the missing one, warning on mismatch."""
    mode = MODES[args.mode] if args.mode else None
    gauge = GAUGES[args.gauge] if getattr(args, "gauge", None) else None
    if mode is None and gauge is None:
        mode = NestingMode.STRICT
    if mode is None:
        mode = MODE_FOR_GAUGE[gauge]
    if gauge is None:
        gauge = GAUGE_FOR_MODE[mode]
    if GAUGE_FOR_MODE[mode] is not gauge:
        print(
            f"warning: mode {mode.value!r} and gauge {gauge.value!r} are mismatched; "
            "the five moment routes will disagree",
            file=sys.stderr,
        )
    return mode, gauge


def _moment_methods(n: int, mode: NestingMode, gauge: ScalarGauge, workers: int) -> dict:
    preset = PRESET_FOR_MODE[mode]()
    return {
        "partitions": lambda: moment_by_partitions(n, mode, workers=workers),
        "operator": lambda: moment_by_operator(n, gauge),
        "cards": lambda: moment_by_cards(n, gauge),
        "motzkin": lambda: moments_by_motzkin(preset, n)[n],
        "cfrac": lambda: jfraction_series(preset, n)[n],
    }


def _emit_poly(p: Poly, args, extra: dict | None = None) -> None:
    if args.output == "json":
        record = {"schema": SCHEMA, "poly": p.to_json_dict(), "canonical": p.canonical_str()}
        if extra:
            record.update(extra)
        print(json.dumps(record, sort_keys=True))
    else:
        print(p.canonical_str())


def cmd_moments(args) -> int:
    mode, gauge = _resolve_mode_gauge(args)
    methods = _moment_methods(args.n, mode, gauge, args.workers)
    chosen = list(methods) if args.method == "all" else [args.method]
    results = {name: methods[name]() for name in chosen}
    values = list(results.values())
    agree = all(v == values[0] for v in values)

    if args.params:
        point = {"q": args.params[0], "t": args.params[1], "lambda": args.params[2]}
    else:
        point = None

    if args.output == "json":
        record = {
            "schema": SCHEMA,
            "n": args.n,
            "mode": mode.value,
            "gauge": gauge.value,
            "methods": {name: poly.canonical_str() for name, poly in results.items()},
            "agree": agree,
        }
        if point is not None:
            record["value"] = {name: str(p.eval(point)) for name, p in results.items()}
        print(json.dumps(record, sort_keys=True))
    elif args.output == "csv":
        if point is None:
            print("method,n,moment")
            for name, poly in results.items():
                print(f"{name},{args.n},{poly.canonical_str()}")
        else:
            print("method,n,q,t,lambda,moment")
            for name, poly in results.items():
                print(
                    f"{name},{args.n},{point['q']},{point['t']},{point['lambda']},"
                    f"{poly.eval(point)}"
                )
    else:
        for name, poly in results.items():
            print(f"{name}: {poly.canonical_str()}")
        if point is not None:
            for name, poly in results.items():
                print(f"{name} at (q,t,lambda)={tuple(map(str, point.values()))}: {poly.eval(point)}")
        print(values[0].canonical_str())
    if not agree:
        print("error: moment methods disagree", file=sys.stderr)
        return 1
    return 0


def cmd_partitions(args) -> int:
    for p in enumerate_partitions(args.n):
        record = partition_record(p)
        if args.output == "json":
            record["schema"] = SCHEMA
            print(json.dumps(record, sort_keys=True))
        else:
            print(
                f"{p}  blocks={record['blocks']} rc={record['rc']} "
                f"rn_strict={record['rn_strict']} rn_covered={record['rn_covered']}"
            )
    return 0


def cmd_charlier(args) -> int:
    preset = PRESETS[args.preset]()
    given = [args.q, args.t, args.lam]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            print("error: give all of --q, --t, --lambda or none", file=sys.stderr)
            return 2
        point = {"q": args.q, "t": args.t, "lambda": args.lam}
        moments = moments_by_motzkin(preset, args.n_max)
        rows = [(n, p.eval(point)) for n, p in enumerate(moments)]
        if args.output == "json":
            print(json.dumps(
                {
                    "schema": SCHEMA,
                    "preset": args.preset,
                    "moments": [
                        {"n": n, "q": str(args.q), "t": str(args.t),
                         "lambda": str(args.lam), "moment": str(v)}
                        for n, v in rows
                    ],
                },
                sort_keys=True,
            ))
        else:
            print("n,q,t,lambda,moment")
            for n, v in rows:
                print(f"{n},{args.q},{args.t},{args.lam},{v}")
        return 0
    seq = three_term_polys(preset, args.n_max)
    strings = [p.canonical_str() for p in seq.polys]
    if args.output == "json":
        print(json.dumps({"schema": SCHEMA, "preset": args.preset, "polys": strings},
                         sort_keys=True))
    else:
        for k, s in enumerate(strings):
            print(f"P_{k} = {s}")
    return 0


def cmd_cards(args) -> int:
    _, gauge = _resolve_mode_gauge(args)
    if args.word:
        words = [OperatorWord.from_string(args.word)]
    else:
        words = list(enumerate_contributors(args.n))
    for word in words:
        for arr in expand_arrangements(word, gauge):
            record = arrangement_record(arr)
            if args.output == "json":
                record["schema"] = SCHEMA
                print(json.dumps(record, sort_keys=True))
            else:
                print(
                    f"{record['word']}  cards={','.join(record['cards'])}  "
                    f"weight={record['weight']}  partition={record['partition']}"
                )
    return 0


def cmd_cfrac(args) -> int:
    preset = PRESETS[args.preset]()
    depth = args.depth if args.depth is not None else (args.order + 1) // 2 + 1
    spec = cf_spec(preset, depth)
    series = cf_series(spec, args.order)
    strings = [c.canonical_str() for c in series]
    if args.output == "json":
        print(json.dumps(
            {"schema": SCHEMA, "preset": args.preset, "depth": depth, "series": strings},
            sort_keys=True,
        ))
    else:
        print(render_cf(spec))
        for k, s in enumerate(strings):
            print(f"z^{k}: {s}")
    return 0


def cmd_binomial(args) -> int:
    params = binomial(args.m, args.p, args.q, args.t)
    moments = moments_by_motzkin(params, args.n_max)
    if args.output == "json":
        print(json.dumps(
            {
                "schema": SCHEMA,
                "m": str(args.m),
                "p": str(args.p),
                "q": str(args.q),
                "t": str(args.t),
                "moments": [str(v) for v in moments],
            },
            sort_keys=True,
        ))
    else:
        print("n,q,t,m,p,moment")
        for k, v in enumerate(moments):
            print(f"{k},{args.q},{args.t},{args.m},{args.p},{v}")
    return 0


def _verify_moments(n_max: int, workers: int, failures: list) -> None:
    for mode in (NestingMode.STRICT, NestingMode.COVERED_SINGLETON):
        gauge = GAUGE_FOR_MODE[mode]
        preset = PRESET_FOR_MODE[mode]()
        motzkin = moments_by_motzkin(preset, n_max)
        series = jfraction_series(preset, n_max)
        for n in range(1, n_max + 1):
            values = {
                "partitions": moment_by_partitions(n, mode, workers=workers),
                "operator": moment_by_operator(n, gauge),
                "cards": moment_by_cards(n, gauge),
                "motzkin": motzkin[n],
                "cfrac": series[n],
            }
            base = values["partitions"]
            bad = [name for name, v in values.items() if v != base]
            ok = not bad
            print(f"moments {mode.value} n={n}: {'ok' if ok else 'MISMATCH ' + str(bad)}")
            if not ok:
                failures.append(f"moments {mode.value} n={n}")


def cmd_verify(args) -> int:
    failures: list = []
    suites = {"moments", "fock", "orthopoly", "cards"} if args.suite == "all" else {args.suite}

    if "moments" in suites:
        _verify_moments(args.n_max, args.workers, failures)

    if "fock" in suites:
        reports = [check_commutation(12)]
        samples = [(Fraction(1, 3), Fraction(1, 2)), (Fraction(-1, 4), Fraction(2, 3))]
        identity = [[1, 0], [0, 1]]
        for q, t in samples:
            reports.append(check_adjointness(2, 3, identity, q, t))
        for q, t in [
            (Fraction(1, 3), Fraction(1, 2)),
            (Fraction(-1, 4), Fraction(1, 2)),
            (Fraction(0), Fraction(1)),
            (Fraction(9, 10), Fraction(1)),
        ]:
            reports.append(check_gram_positivity(2, 4, identity, q, t))
        for report in reports:
            print(report)
            if not report.passed:
                failures.append(report.name)

    if "orthopoly" in suites:
        n_ortho = min(args.n_max, 6)
        for preset_fn, mode in (
            (charlier_strict, NestingMode.STRICT),
            (charlier_t_gauge, NestingMode.COVERED_SINGLETON),
        ):
            preset = preset_fn()
            moments = moments_by_motzkin(preset, 2 * n_ortho)
            report = check_orthogonality(preset, n_ortho, moments)
            print(report)
            if not report.passed:
                failures.append(report.name)
        report = check_charlier_fock_identity(min(args.n_max, 8))
        print(report)
        if not report.passed:
            failures.append(report.name)
        limit = poisson_limit_check(min(args.n_max, 6), Fraction(1), [10, 100, 1000])
        status = "ok" if limit.passed else "FAILED"
        print(f"poisson-limit: {status}")
        if not limit.passed:
            failures.append("poisson-limit")

    if "cards" in suites:
        n_cards = min(args.n_max, 7)
        for n in range(1, n_cards + 1):
            seen: dict = {}
            total = 0
            ok = True
            for word in enumerate_contributors(n):
                for arr in expand_arrangements(word, ScalarGauge.IDENTITY):
                    total += 1
                    seen[arr.partition.rgs] = seen.get(arr.partition.rgs, 0) + 1
                    expected = Poly.from_terms([(1, {
                        "lambda": arr.partition.block_count,
                        "q": restricted_crossings(arr.partition),
                        "t": restricted_nestings(arr.partition, NestingMode.STRICT),
                    })])
                    if arr.weight != expected:
                        ok = False
            bell = sum(1 for _ in enumerate_partitions(n))
            if any(c != 1 for c in seen.values()) or total != len(seen) or total != bell:
                ok = False
            print(f"cards bijection n={n}: {'ok' if ok else 'MISMATCH'}")
            if not ok:
                failures.append(f"cards bijection n={n}")

    if failures:
        print(f"verification failed: {failures}", file=sys.stderr)
        return 1
    print("all checks passed")
    return 0


def cmd_word(args) -> int:
    _, gauge = _resolve_mode_gauge(args)
    word = OperatorWord.from_string(args.word)
    value = vacuum_expectation_word(word, gauge)
    _emit_poly(value, args, extra={"word": word.to_string()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtmoments",
        description="Exact cross-verified moments of a two-parameter deformed Poisson model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, gauge_flag=True):
        p.add_argument("--mode", choices=sorted(MODES), default=None,
                       help="nesting statistic (default strict)")
        if gauge_flag:
            p.add_argument("--gauge", choices=sorted(GAUGES), default=None,
                           help="scalar gauge (default linked to mode)")
        p.add_argument("--output", choices=["json", "csv", "pretty"], default="pretty")
        p.add_argument("--workers", type=int, default=_default_workers())

    p = sub.add_parser("moments", help="moment polynomial by one or all methods")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["partitions", "operator", "cards", "motzkin",
                                        "cfrac", "all"], default="all")
    p.add_argument("--q", type=rational, default=None)
    p.add_argument("--t", type=rational, default=None)
    p.add_argument("--lambda", dest="lam", type=rational, default=None)
    add_common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("partitions", help="list partitions with their statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", choices=["json", "pretty"], default="json")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser(
        "charlier",
        help="orthogonal polynomial table, or a rational moment table when "
             "--q/--t/--lambda are given",
    )
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--preset", choices=sorted(PRESETS), default="strict")
    p.add_argument("--q", type=rational, default=None)
    p.add_argument("--t", type=rational, default=None)
    p.add_argument("--lambda", dest="lam", type=rational, default=None)
    p.add_argument("--output", choices=["json", "csv", "pretty"], default="pretty")
    p.set_defaults(func=cmd_charlier)

    p = sub.add_parser("cards", help="dump card arrangements")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--word", type=str, default=None,
                   help="one operator word over C,A,N,S (leftmost applied last)")
    add_common(p)
    p.set_defaults(func=cmd_cards)

    p = sub.add_parser("cfrac", help="continued-fraction series and rendering")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--preset", choices=sorted(PRESETS), default="strict")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--output", choices=["json", "pretty"], default="pretty")
    p.set_defaults(func=cmd_cfrac)

    p = sub.add_parser("binomial", help="rational binomial moments")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--m", type=rational, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--q", type=rational, default=Fraction(1, 3))
    p.add_argument("--t", type=rational, default=Fraction(2, 3))
    p.add_argument("--output", choices=["json", "csv", "pretty"], default="pretty")
    p.set_defaults(func=cmd_binomial)

    p = sub.add_parser("word", help="vacuum expectation of one operator word")
    p.add_argument("--word", type=str, required=True)
    add_common(p)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("verify", help="run the cross-check matrix")
    p.add_argument("--suite", choices=["all", "moments", "fock", "orthopoly", "cards"],
                   default="all")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "moments":
        given = [args.q, args.t, args.lam]
        if any(v is not None for v in given) and any(v is None for v in given):
            parser.error("give all of --q, --t, --lambda or none")
        args.params = given if all(v is not None for v in given) else None
        if args.n < 1:
            parser.error("--n must be >= 1")
    if args.command == "cards" and args.n is None and args.word is None:
        parser.error("give --n or --word")
    if args.command == "partitions" and args.n < 1:
        parser.error("--n must be >= 1")

    try:
        return args.func(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
