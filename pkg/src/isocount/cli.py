"""Command-line front end.

    isocount count --type 2,2
    isocount count --type 1,2,4 --minimal
    isocount count --type 1,1 --r 1
    isocount table published
    isocount table types --p 2 --n 3
    isocount table custom --d-max 3
    isocount verify quick
    isocount enumerate --type 4,4 --emit jsonl --out subgroups.jsonl

Exit codes: 0 ok, 2 usage error, 3 ill-posed input, 4 budget exhausted,
5 verification mismatch.  ``--json PATH`` writes the report document; the
cache directory defaults to ``~/.cache/isocount`` and is overridden by
``ISOCOUNT_CACHE_DIR``.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import closed_forms as cf
from . import curves, enumeration, reference, report, verify
from .enumeration import BudgetExceeded, EnumerationBudget
from .labels import admissible_labels
from .symplectic import IllPosedInput, PolarizationType, make_module

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ILL_POSED = 3
EXIT_BUDGET = 4
EXIT_MISMATCH = 5


class Context:
    """Budget, parallelism and cache shared by one invocation."""

    def __init__(self, args: argparse.Namespace):
        self.budget = EnumerationBudget(args.max_candidates, args.max_seconds)
        self.jobs = args.jobs
        self.use_pins = args.use_pins
        self.cache = report.CountCache() if args.cache else None

    def nu(self, t: PolarizationType, method: str = "auto") -> cf.CountValue:
        key = t.divisors
        if self.cache is not None and method == "auto":
            hit = self.cache.get(key)
            if hit is not None:
                return cf.CountValue(hit.count, hit.method)
        if method == "enumerate":
            value = enumeration.count_by_enumeration(make_module(t), self.budget, self.jobs)
            c = cf.CountValue(value, cf.ENUMERATION)
        else:
            c = cf.nu(t, self.budget, self.use_pins, self.jobs)
            if method == "closed" and any(p.method != cf.CLOSED_FORM for p in c.parts):
                missing = [f"p={p.prime} {p.exponents}" for p in c.parts if p.method != cf.CLOSED_FORM]
                raise IllPosedInput(f"no closed form for component(s) {', '.join(missing)}")
        if self.cache is not None and method == "auto":
            self.cache.put(key, c.value, c.method)
        return c

    def close(self) -> None:
        if self.cache is not None:
            self.cache.flush()


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}") from exc


def _parse_type(text: str) -> PolarizationType:
    return PolarizationType.parse(text)


# commands ---------------------------------------------------------------------


def cmd_count(args: argparse.Namespace, ctx: Context, doc: report.ReportDocument) -> int:
    t = _parse_type(args.type)
    doc.inputs.update(type=list(t.divisors), method=args.method)
    if args.minimal or args.r is not None:
        if args.minimal and args.r is not None:
            raise IllPosedInput("--minimal and --r are mutually exclusive")
        if args.minimal:
            rep = curves.n_min(t, ctx.budget, ctx.use_pins)
        else:
            doc.inputs["r"] = str(args.r)
            problem = curves.CurveClassProblem(t, args.r)
            rep = curves.translation_classes(problem, ctx.budget, ctx.use_pins)
        row = report.count_to_dict(rep.count)
        row.update(
            kind="curve_classes",
            r=str(rep.problem.r),
            theorem_group=list(rep.theorem_group_type.divisors),
            interpretation=rep.interpretation,
        )
        doc.results.append(row)
        doc.warnings.extend(rep.warnings)
        print(f"curve classes {t} r={rep.problem.r}: {rep.count.value} ({rep.interpretation})")
        return EXIT_OK
    if args.linear_system:
        c = curves.genus2_curves_in_linear_system(t, ctx.budget, ctx.use_pins)
        row = report.count_to_dict(c)
        row["kind"] = "linear_system"
        doc.results.append(row)
        doc.warnings.extend(c.warnings)
        print(f"genus-2 curves in |L|, type {t}: {c.value}")
        return EXIT_OK
    c = ctx.nu(t, args.method)
    row = report.count_to_dict(c)
    row["kind"] = "nu"
    doc.results.append(row)
    doc.warnings.extend(c.warnings)
    print(f"nu{t.divisors} = {c.value} [{c.method}]")
    return EXIT_OK


def _table_cell(ctx: Context, cell: tuple[int, int], published: Optional[int]) -> dict[str, Any]:
    row: dict[str, Any] = {"kind": "table_cell", "d1": cell[0], "d2": cell[1], "published": published}
    try:
        c = ctx.nu(PolarizationType(cell))
    except BudgetExceeded as exc:
        row.update(value=None, method=None, match=None, status="budget_exhausted", note=str(exc))
        return row
    row.update(value=c.value, method=c.method)
    if published is None:
        row.update(match=None, status="no_reference")
    elif c.value == published:
        row.update(match=True, status="match")
    else:
        known = reference.DISCREPANCIES.get(cell)
        row.update(match=False, status=known.kind if known else "mismatch")
        if known:
            row["note"] = known.note
    return row


def cmd_table(args: argparse.Namespace, ctx: Context, doc: report.ReportDocument) -> int:
    doc.inputs["preset"] = args.preset
    if args.preset == "types":
        if args.p is None or args.n is None:
            raise IllPosedInput("the types preset needs --p and --n")
        doc.inputs.update(p=args.p, n=args.n)
        census = enumeration.census_by_type(args.p, args.n, ctx.budget, ctx.jobs)
        for label in admissible_labels(args.p, args.n):
            formula = cf.nu_pp_by_type(args.p, args.n, label)
            doc.results.append({
                "kind": "type_row",
                "type": label.name,
                "value": census[label],
                "formula": formula,
                "match": formula == census[label],
                "status": "match" if formula == census[label] else "mismatch",
            })
            print(f"{label.name:>8} {census[label]:>10} {formula:>10}")
        return EXIT_OK
    if args.preset == "published":
        cells = sorted(reference.PUBLISHED.items())
    else:
        if args.d_max is None:
            raise IllPosedInput("the custom preset needs --d-max")
        doc.inputs["d_max"] = args.d_max
        cells = []
        for d in range(2, args.d_max + 1):
            for cell in ((1, d), (d, d)):
                cells.append((cell, reference.PUBLISHED.get(cell)))
    for cell, published in cells:
        row = _table_cell(ctx, cell, published)
        doc.results.append(row)
        shown = "-" if published is None else published
        print(f"nu{cell}: {row['value']} published {shown} {row['status']}")
        if row["status"] == "internal_conflict":
            doc.warnings.append(f"nu{cell}: published value conflicts with the closed forms; "
                                f"enumeration gives {row['value']}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, ctx: Context, doc: report.ReportDocument) -> int:
    doc.inputs["level"] = args.level
    res = verify.run(args.level, ctx.budget)
    doc.results.extend(verify.result_rows(res))
    doc.timing.update({f"suite:{k}": v for k, v in res.timing.items()})
    for c in res.checks:
        if c.status not in (verify.PASS, verify.FAIL):
            doc.warnings.append(f"{c.name}: {c.status}, enumerated value {c.actual} pinned")
    for row in doc.results:
        if row["kind"] == "suite":
            print(f"{row['suite']:<20} {row['checks']:>5} checks  {row['status']}")
    for c in res.mismatches:
        print(f"MISMATCH [{c.suite}] {c.name}: expected {c.expected}, got {c.actual}")
    return EXIT_OK if res.ok else EXIT_MISMATCH


def cmd_enumerate(args: argparse.Namespace, ctx: Context, doc: report.ReportDocument) -> int:
    t = _parse_type(args.type)
    doc.inputs.update(type=list(t.divisors), emit=args.emit, out=args.out)
    out = Path(args.out) if args.out else None
    fh = out.open("w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        subgroups = enumeration.enumerate_maximal_isotropic(make_module(t), ctx.budget, ctx.jobs)
        records = (report.subgroup_record(H) for H in subgroups)
        writer = report.write_jsonl if args.emit == "jsonl" else report.write_csv
        n = writer(records, fh)
    except BaseException:
        if out:
            fh.close()
            out.unlink(missing_ok=True)
        raise
    if out:
        fh.close()
    doc.results.append({"kind": "enumeration", "value": n, "method": cf.ENUMERATION})
    print(f"{n} maximal isotropic subgroups of K{t.divisors}", file=sys.stderr if not out else sys.stdout)
    return EXIT_OK


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report document here")
    common.add_argument("--max-candidates", type=int, default=enumeration.DEFAULT_BUDGET.max_candidates)
    common.add_argument("--max-seconds", type=float, default=enumeration.DEFAULT_BUDGET.max_seconds)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--cache", action="store_true", help="read and extend the count cache")
    common.add_argument("--use-pins", action="store_true",
                        help="use stored enumeration results for contested components")

    ap = argparse.ArgumentParser(prog="isocount", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count maximal isotropic subgroups or curve classes")
    p.add_argument("--type", required=True, help="divisor chain, e.g. 1,2,4")
    p.add_argument("--r", type=_parse_rational, help="class multiplier as num/den")
    p.add_argument("--minimal", action="store_true", help="use the minimal class")
    p.add_argument("--linear-system", action="store_true", help="genus-2 curves in |L|")
    p.add_argument("--method", choices=("auto", "closed", "enumerate"), default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="recompute tables")
    p.add_argument("preset", choices=("published", "types", "custom"))
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d-max", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check suites")
    p.add_argument("level", choices=("quick", "full"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="dump maximal isotropic subgroups")
    p.add_argument("--type", required=True)
    p.add_argument("--emit", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", help="output file (stdout if omitted)")
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    doc = report.ReportDocument(command=argv, inputs={})
    start = time.monotonic()
    code = EXIT_OK
    try:
        ctx = Context(args)
        code = args.func(args, ctx, doc)
        ctx.close()
    except IllPosedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        doc.results.append({"kind": "error", "status": "ill_posed", "message": str(exc)})
        code = EXIT_ILL_POSED
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        doc.results.append({"kind": "error", "status": "budget_exhausted", "message": str(exc)})
        code = EXIT_BUDGET
    doc.timing["total"] = round(time.monotonic() - start, 3)
    if args.json:
        doc.write(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
