"""Command-line front end: run verification suites, write reports.

    bt <suite> [-e N] [options]

Suites: context, build, verify-unital, verify-abb, group, stabilizer,
feet, spectrum, witnesses, identities, or all.  The JSON report is
deterministic for fixed flags apart from the runtime fields; spectrum
and group results can also be written as CSV tables.
"""

from __future__ import annotations

import argparse
import sys

from . import report as rpt
from .stabilizer import BudgetExceeded


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bt",
        description="Construct and exhaustively verify Buekenhout-Tits unitals.")
    p.add_argument("suite", choices=rpt.SUITE_NAMES + ["all"],
                   help="verification suite to run")
    p.add_argument("-e", type=int, default=1,
                   help="field parameter: q = 2^(2e+1) (default 1)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker processes for the stabiliser scan")
    p.add_argument("--budget", type=int, default=None,
                   help="candidate budget for the stabiliser scan")
    p.add_argument("--out", type=str, default=None,
                   help="write the report to this path instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default=None,
                   help="report format (csv applies to spectrum and group; "
                        "inferred from the --out extension when omitted)")
    p.add_argument("--all", action="store_true",
                   help="spectrum: scan every admissible point, not only orbit representatives")
    p.add_argument("--semilinear", action="store_true",
                   help="stabilizer: include Frobenius twists in the scan")
    p.add_argument("--force", action="store_true",
                   help="run scans that exceed the default budget")
    p.add_argument("--checkpoint", type=str, default=None,
                   help="stabilizer: checkpoint file for resumable scans")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    names = rpt.SUITE_NAMES if args.suite == "all" else [args.suite]

    try:
        results = rpt.run_suites(
            names, e=args.e,
            semilinear=args.semilinear or args.suite == "all",
            threads=args.threads, checkpoint=args.checkpoint,
            force=args.force, budget=args.budget,
            scope="all" if args.all else "representatives",
            skip_over_budget=args.suite == "all",
            log=lambda msg: print(msg, file=sys.stderr),
        )
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    fmt = args.format
    if fmt is None:
        fmt = "csv" if args.out and args.out.endswith(".csv") else "json"
    if fmt == "csv":
        chunks = []
        for r in results:
            if r.name == "spectrum":
                chunks.append(rpt.spectrum_csv(r))
            elif r.name == "group":
                chunks.append(rpt.census_csv(r))
        if not chunks:
            print("error: csv output is defined for the spectrum and group suites",
                  file=sys.stderr)
            return 2
        text = "".join(chunks)
    else:
        text = rpt.report_json(rpt.build_report(results, args.e))

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
