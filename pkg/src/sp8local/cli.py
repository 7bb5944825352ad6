"""Command line verification harness.

Subcommands:
  list    show the registered checks (id, cost, provenance, description)
  run     execute checks and emit a JSON or markdown report
  report  execute checks and write markdown + CSV + PNG figures to a directory

Exit codes: 0 all selected checks pass, 1 any failure, 2 usage error.
The VERIFY_THREADS environment variable caps the worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, checks


def _worker_count() -> int:
    env = os.environ.get("VERIFY_THREADS")
    avail = os.cpu_count() or 1
    if env:
        return max(1, min(int(env), avail))
    return avail


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


def execute(pattern: str | None, seed: int, include_slow: bool) -> dict:
    """Run the selected checks, sharing one context across workers."""
    entries = checks.select(pattern, include_slow)
    ctx = checks.Context(seed=seed)
    t0 = time.perf_counter()

    def run_one(entry):
        t = time.perf_counter()
        expected, computed = entry.fn(ctx)
        ms = (time.perf_counter() - t) * 1000.0
        return checks.CheckResult(
            check_id=entry.check_id, description=entry.description,
            provenance=entry.provenance, expected=expected, computed=computed,
            passed=expected == computed, ms=round(ms, 2), cost=entry.cost)

    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        results = list(pool.map(run_one, entries))
    wall_ms = round((time.perf_counter() - t0) * 1000.0, 2)
    passed = sum(r.passed for r in results)
    return {
        "version": __version__,
        "seed": seed,
        "filter": pattern,
        "include_slow": include_slow,
        "totals": {"count": len(results), "passed": passed,
                   "failed": len(results) - passed},
        "wall_ms": wall_ms,
        "results": results,
    }


def report_json(report: dict) -> str:
    payload = dict(report)
    payload["results"] = [
        {"check_id": r.check_id,
         "expected": {"value": _jsonable(r.expected), "provenance": r.provenance},
         "computed": _jsonable(r.computed),
         "passed": r.passed,
         "ms": r.ms}
        for r in report["results"]]
    return json.dumps(payload, indent=2, ensure_ascii=False)


def report_markdown(report: dict) -> str:
    lines = [
        f"# Verification report (version {report['version']}, seed {report['seed']})",
        "",
        f"{report['totals']['passed']} / {report['totals']['count']} checks passed "
        f"in {report['wall_ms'] / 1000.0:.1f} s.",
        "",
        "| check | status | expected | computed | ms |",
        "|---|---|---|---|---|",
    ]
    for r in report["results"]:
        status = "pass" if r.passed else "FAIL"
        exp = json.dumps(_jsonable(r.expected), ensure_ascii=False)
        got = json.dumps(_jsonable(r.computed), ensure_ascii=False)
        lines.append(f"| {r.check_id} | {status} | {exp} | {got} | {r.ms:.0f} |")
    lines.append("")
    return "\n".join(lines)


def _write_figures(report: dict, out_dir: Path) -> list[str]:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    results = report["results"]

    ids = [r.check_id for r in results]
    times = [r.ms / 1000.0 for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.25 * len(ids))))
    ax.barh(range(len(ids)), times, color=colors)
    ax.set_yticks(range(len(ids)))
    ax.set_yticklabels(ids, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("runtime (s)")
    ax.set_title("check runtimes")
    fig.tight_layout()
    path = out_dir / "check_runtimes.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path.name)

    families: dict[str, list[bool]] = {}
    for r in results:
        fam = r.check_id.rsplit("-", 1)[0] if "-" in r.check_id else r.check_id
        families.setdefault(fam, []).append(r.passed)
    names = sorted(families)
    passed = [sum(families[n]) for n in names]
    totals = [len(families[n]) for n in names]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.3 * len(names))))
    ax.barh(names, totals, color="lightgray", label="checks")
    ax.barh(names, passed, color="tab:green", label="passed")
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    ax.set_title("coverage by claim family")
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = out_dir / "family_coverage.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path.name)
    return written


def _write_csv(report: dict, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check_id", "cost", "provenance", "passed", "ms",
                         "expected", "computed"])
        for r in report["results"]:
            writer.writerow([
                r.check_id, r.cost, r.provenance, r.passed, r.ms,
                json.dumps(_jsonable(r.expected), ensure_ascii=False),
                json.dumps(_jsonable(r.computed), ensure_ascii=False)])


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sp8local",
        description="verification harness for the Sp8(3) local-group constructions")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--filter", default=None,
                       help="glob over check ids, e.g. 'lemma-3.1-*'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--include-slow", action="store_true")

    p_list = sub.add_parser("list", help="list registered checks")
    common(p_list)

    p_run = sub.add_parser("run", help="run checks and print a report")
    common(p_run)
    p_run.add_argument("--format", choices=("json", "markdown"), default="json")
    p_run.add_argument("--out", default=None, help="write the report here")

    p_rep = sub.add_parser("report",
                           help="run checks and write markdown, CSV and figures")
    common(p_rep)
    p_rep.add_argument("--out", default="report",
                       help="output directory (default: ./report)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        try:
            entries = checks.select(args.filter, args.include_slow)
        except checks.UnknownCheckError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for e in entries:
            print(f"{e.check_id:35} {e.cost:7} {e.provenance:8} {e.description}")
        return 0

    try:
        report = execute(args.filter, args.seed, args.include_slow)
    except checks.UnknownCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    ok = report["totals"]["failed"] == 0
    if args.command == "run":
        text = (report_json(report) if args.format == "json"
                else report_markdown(report))
        _emit(text, args.out)
        return 0 if ok else 1

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.md").write_text(report_markdown(report), encoding="utf-8")
    _write_csv(report, out_dir / "results.csv")
    figures = _write_figures(report, out_dir)
    print(f"wrote report.md, results.csv, {', '.join(figures)} to {out_dir}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
