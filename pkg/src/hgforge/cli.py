"""Command-line front end.

Subcommands: validate, check, derive, recover, enumerate-groups,
roundtrip.  Every command takes --format text|json; JSON reports carry
"schema": "hgforge/1".  Exit codes are uniform across commands:

  0  success / property holds
  1  well-formed input that fails mathematically
  2  unreadable or malformed input
  3  derive only: degenerate pair, output still written

Output is a pure function of the inputs: no timestamps, no absolute
paths, no hash-order dependence.  Running a command twice on the same
files produces identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import ValidationError, format_scalar
from .checks import (
    DEFAULT_WITNESS_CAP,
    Witness,
    check_corollaries,
    is_associative_bruteforce,
    is_associative_matrix,
    is_commutative,
    satisfies_condition_A,
)
from .derivation import degeneracy_check, derive_cube
from .formats import (
    FormatError,
    cube_to_document,
    group_to_document,
    load_cube,
    load_group,
    load_measure,
    measure_to_document,
    scalar_to_json,
    serialize,
    write_document,
)
from .groups import cayley_table, enumerate_abelian_groups, DEFAULT_ORDER_CAP
from .recovery import FAILS_VALIDATION, RecoveryResult, recover
from .sampling import DEFAULT_DENOMINATOR, random_measure

SCHEMA = "hgforge/1"

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


def _witness_json(witness):
    return {
        "indices": list(witness.indices),
        "expected": witness.expected,
        "actual": witness.actual,
    }


def _property_json(report):
    doc = {
        "name": report.name,
        "holds": report.holds,
        "violation_count": report.violation_count,
        "witnesses": [_witness_json(w) for w in report.witnesses],
    }
    if report.detail is not None:
        doc["detail"] = report.detail
    return doc


def _condition_a_json(report):
    return {
        "name": "condition-a",
        "holds": report.holds,
        "distinct_column_count": report.distinct_column_count,
        "left_ranks": list(report.left_ranks),
        "right_ranks": list(report.right_ranks),
    }


def _print_property_text(report, indent=""):
    mark = "holds" if report.holds else f"fails ({report.violation_count} violations)"
    print(f"{indent}{report.name}: {mark}")
    for witness in report.witnesses:
        where = ", ".join(str(i) for i in witness.indices)
        print(f"{indent}  at ({where}): expected {witness.expected}, got {witness.actual}")


def _emit(args, document, text_renderer):
    if args.format == "json":
        sys.stdout.write(serialize(document))
    else:
        text_renderer()


def cmd_validate(args):
    try:
        cube = load_cube(args.cube)
    except ValidationError as err:
        document = {
            "schema": SCHEMA,
            "command": "validate",
            "valid": False,
            "violations": [
                {"kind": v.kind, "indices": list(v.indices), "detail": v.detail}
                for v in err.violations
            ],
        }

        def text():
            print("invalid cube:")
            for violation in err.violations:
                print(f"  {violation}")

        _emit(args, document, text)
        return EXIT_FAILS
    document = {"schema": SCHEMA, "command": "validate", "valid": True, "n": cube.n}
    _emit(args, document, lambda: print(f"valid cube on {cube.n} states"))
    return EXIT_OK


def _selected_reports(cube, selection, cap):
    reports = []
    if selection in ("all", "commutative"):
        reports.append(("property", is_commutative(cube, cap)))
    if selection in ("all", "associative"):
        reports.append(("property", is_associative_matrix(cube, cap)))
        reports.append(("property", is_associative_bruteforce(cube, cap)))
    if selection in ("all", "condition-a"):
        reports.append(("condition-a", satisfies_condition_A(cube)))
    if selection in ("all", "corollaries"):
        reports.append(("corollaries", check_corollaries(cube, cap)))
    return reports


def cmd_check(args):
    try:
        cube = load_cube(args.cube)
    except ValidationError as err:
        print(f"invalid cube: {err}", file=sys.stderr)
        return EXIT_FAILS
    reports = _selected_reports(cube, args.property, args.witness_cap)

    all_hold = True
    json_properties = []
    for kind, report in reports:
        if kind == "property":
            all_hold &= report.holds
            json_properties.append(_property_json(report))
        elif kind == "condition-a":
            all_hold &= report.holds
            json_properties.append(_condition_a_json(report))
        else:
            group_holds = all(r.holds for r in report)
            all_hold &= group_holds
            json_properties.append(
                {
                    "name": "corollaries",
                    "holds": group_holds,
                    "reports": [_property_json(r) for r in report],
                }
            )

    document = {
        "schema": SCHEMA,
        "command": "check",
        "n": cube.n,
        "holds": all_hold,
        "properties": json_properties,
    }

    def text():
        for kind, report in reports:
            if kind == "property":
                _print_property_text(report)
            elif kind == "condition-a":
                state = "holds" if report.holds else "fails"
                ranks_left = ", ".join(str(r) for r in report.left_ranks)
                ranks_right = ", ".join(str(r) for r in report.right_ranks)
                print(
                    f"condition-a: {state} (distinct columns {report.distinct_column_count} of "
                    f"{report.n}; left ranks {ranks_left}; right ranks {ranks_right})"
                )
            else:
                group_holds = all(r.holds for r in report)
                print(f"corollaries: {'holds' if group_holds else 'fails'}")
                for sub in report:
                    _print_property_text(sub, indent="  ")

    _emit(args, document, text)
    return EXIT_OK if all_hold else EXIT_FAILS


def cmd_derive(args):
    group = load_group(args.group)
    measure = load_measure(args.measure)
    if group.n != measure.n:
        print(
            f"error: group has {group.n} states but measure has {measure.n}",
            file=sys.stderr,
        )
        return EXIT_INPUT
    cube = derive_cube(group, measure)
    verdict = degeneracy_check(group, measure)
    write_document(args.out, cube_to_document(cube))

    degeneracy = {"kind": verdict.kind}
    if verdict.repeated_state is not None:
        degeneracy["repeated_state"] = verdict.repeated_state
    if verdict.kernel_vector is not None:
        degeneracy["kernel_vector"] = [scalar_to_json(x) for x in verdict.kernel_vector]
    document = {
        "schema": SCHEMA,
        "command": "derive",
        "n": cube.n,
        "out": args.out,
        "degeneracy": degeneracy,
    }

    def text():
        print(f"wrote cube on {cube.n} states to {args.out}")
        print(f"degeneracy: {verdict.describe()}")

    _emit(args, document, text)
    return EXIT_DEGENERATE if verdict.degenerate else EXIT_OK


def cmd_recover(args):
    try:
        cube = load_cube(args.cube)
    except ValidationError as err:
        result = _validation_rejection(err)
    else:
        result = recover(cube, witness_cap=args.witness_cap)

    if result.recovered:
        document = {
            "schema": SCHEMA,
            "command": "recover",
            "recovered": True,
            "invariant_factors": list(result.factors.factors),
            "cayley_table": [list(row) for row in result.table.rows],
            "measure": [scalar_to_json(q) for q in result.measure.values],
            "round_trip": "exact",
        }

        def text():
            factors = ", ".join(str(d) for d in result.factors.factors)
            print(f"recovered group with invariant factors [{factors}]")
            print(f"measure: {', '.join(format_scalar(q) for q in result.measure.values)}")
            print("round-trip: exact")

        _emit(args, document, text)
        if args.out:
            write_document(args.out, group_to_document(result.table))
        if args.out_measure:
            write_document(args.out_measure, measure_to_document(result.measure))
        return EXIT_OK

    document = {
        "schema": SCHEMA,
        "command": "recover",
        "recovered": False,
        "reason": result.reason,
    }
    if result.witness is not None:
        document["witness"] = _witness_json(result.witness)
    if result.detail is not None:
        document["detail"] = result.detail

    def text():
        print(f"not derived from any group: {result.reason}")
        if result.witness is not None:
            where = ", ".join(str(i) for i in result.witness.indices)
            print(f"  at ({where}): expected {result.witness.expected}, got {result.witness.actual}")
        if result.detail is not None:
            print(f"  {result.detail}")

    _emit(args, document, text)
    return EXIT_FAILS


def _validation_rejection(err):
    first = err.violations[0]
    return RecoveryResult(
        None, None, None, FAILS_VALIDATION, Witness(first.indices, first.kind, first.detail), str(err)
    )


def cmd_enumerate_groups(args):
    try:
        groups = enumerate_abelian_groups(args.n, cap=args.cap)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    document = {
        "schema": SCHEMA,
        "command": "enumerate-groups",
        "n": args.n,
        "count": len(groups),
        "groups": [list(g.factors) for g in groups],
    }

    def text():
        if args.count:
            print(len(groups))
            return
        for g in groups:
            print(json.dumps(list(g.factors), separators=(",", ":")))

    _emit(args, document, text)
    return EXIT_OK


def cmd_roundtrip(args):
    if args.order < 1 or args.order > DEFAULT_ORDER_CAP:
        print(f"error: order must be in 1..{DEFAULT_ORDER_CAP}", file=sys.stderr)
        return EXIT_INPUT
    if args.trials < 1:
        print("error: need at least one trial", file=sys.stderr)
        return EXIT_INPUT
    rng = random.Random(args.seed)
    groups = enumerate_abelian_groups(args.order)
    summaries = []
    failures = 0
    for factors in groups:
        table = cayley_table(factors)
        passed = failed = skipped = 0
        for _ in range(args.trials):
            measure = random_measure(rng, table.n, args.denominator)
            verdict = degeneracy_check(table, measure)
            if verdict.degenerate:
                if args.include_degenerate:
                    skipped += 1
                    continue
                while verdict.degenerate:
                    measure = random_measure(rng, table.n, args.denominator)
                    verdict = degeneracy_check(table, measure)
            cube = derive_cube(table, measure)
            result = recover(cube)
            ok = (
                result.recovered
                and result.table.rows == table.rows
                and result.measure.values == measure.values
                and result.factors == factors
            )
            if ok:
                passed += 1
            else:
                failed += 1
        failures += failed
        summaries.append((factors, passed, failed, skipped))

    document = {
        "schema": SCHEMA,
        "command": "roundtrip",
        "order": args.order,
        "trials": args.trials,
        "seed": args.seed,
        "denominator": args.denominator,
        "groups": [
            {
                "invariant_factors": list(f.factors),
                "passed": p,
                "failed": x,
                "skipped_degenerate": s,
            }
            for f, p, x, s in summaries
        ],
        "all_passed": failures == 0,
    }

    def text():
        for factors, passed, failed, skipped in summaries:
            label = json.dumps(list(factors.factors), separators=(",", ":"))
            line = f"{label}: {passed} passed, {failed} failed"
            if skipped:
                line += f", {skipped} skipped as degenerate"
            print(line)
        print("all round trips exact" if failures == 0 else f"{failures} round trips failed")

    _emit(args, document, text)
    return EXIT_OK if failures == 0 else EXIT_FAILS


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hgforge",
        description="Exact tools for cubes of product coefficients over finite state sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="check cube shape, nonnegativity, and column sums")
    p.add_argument("cube", help="path to a cube JSON file")
    add_format(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="run structural properties on a valid cube")
    p.add_argument("cube", help="path to a cube JSON file")
    p.add_argument(
        "--property",
        choices=("all", "commutative", "associative", "condition-a", "corollaries"),
        default="all",
    )
    p.add_argument("--witness-cap", type=int, default=DEFAULT_WITNESS_CAP)
    add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", help="build the cube of a (group, measure) pair")
    p.add_argument("group", help="path to a group JSON file")
    p.add_argument("measure", help="path to a measure JSON file")
    p.add_argument("--out", required=True, help="where to write the cube JSON")
    add_format(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("recover", help="find the unique (group, measure) behind a cube")
    p.add_argument("cube", help="path to a cube JSON file")
    p.add_argument("--out", help="where to write the recovered group JSON")
    p.add_argument("--out-measure", help="where to write the recovered measure JSON")
    p.add_argument("--witness-cap", type=int, default=DEFAULT_WITNESS_CAP)
    add_format(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("enumerate-groups", help="list abelian groups of a given order")
    p.add_argument("n", type=int, help="group order")
    p.add_argument("--count", action="store_true", help="print only the number of classes")
    p.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP)
    add_format(p)
    p.set_defaults(func=cmd_enumerate_groups)

    p = sub.add_parser("roundtrip", help="derive-then-recover over random measures")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator", type=int, default=DEFAULT_DENOMINATOR)
    p.add_argument(
        "--include-degenerate",
        action="store_true",
        help="count degenerate draws as skipped instead of redrawing",
    )
    add_format(p)
    p.set_defaults(func=cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_INPUT if exit_.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAILS


def app():  # console-script entry point
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
