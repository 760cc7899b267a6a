"""Command-line interface.

Subcommands: ``table`` (occurrence-count distributions), ``verify``
(formulas / conjectures / assemblies / general-form), ``map`` and
``decode`` (permutation <-> path), ``bases`` (pattern-base catalogs),
``coeffs`` (generating-function coefficient dumps), ``render`` (ASCII/SVG
path pictures).

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource
guard tripped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from permdyck import bijections, census, paths, series
from permdyck.paths import PathError
from permdyck.perms import PatternError, Permutation

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty range {text!r}")
        return list(range(start, stop + 1))
    return [int(text)]


def _emit(args, payload: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        print(payload)


def _cmd_table(args) -> int:
    ns = _parse_n_range(args.n)
    limit = max(ns) if args.force else args.limit
    if args.force and max(ns) > census.DEFAULT_LIMIT:
        print(
            f"warning: sweeping S_{max(ns)} exhaustively; this can take a long time",
            file=sys.stderr,
        )
    tables = [
        census.brute_distribution(
            n, args.tau, workers=args.workers, cache_dir=args.cache_dir, limit=limit
        )
        for n in ns
    ]
    if args.format == "json":
        doc = {
            "pattern": args.tau,
            "tables": [
                {"n": t.n, "counts": {str(r): str(c) for r, c in t.counts}} for t in tables
            ],
        }
        _emit(args, json.dumps(doc, indent=1, sort_keys=True))
    elif args.format == "csv":
        lines = ["n,r,count"]
        for t in tables:
            lines.extend(f"{t.n},{r},{c}" for r, c in t.counts)
        _emit(args, "\n".join(lines))
    else:
        lines = []
        for t in tables:
            row = "  ".join(f"r={r}:{c}" for r, c in t.counts) or "(empty)"
            lines.append(f"n={t.n}  {row}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def _report_lines(report: census.VerificationReport) -> list[str]:
    lines = []
    by_pair: dict[tuple[str, int], list[census.VerificationRow]] = {}
    for row in report.rows:
        by_pair.setdefault((row.pattern, row.r), []).append(row)
    for (pattern, r), rows in sorted(by_pair.items()):
        bad = [row for row in rows if not row.passed]
        tag = "CONJECTURE " if (pattern, r) in series.CONJECTURAL else ""
        if bad:
            first = bad[0]
            lines.append(
                f"{tag}tau={pattern} r={r}: FAIL at n={first.n} "
                f"(brute {first.brute}, predicted {first.predicted})"
            )
        else:
            lines.append(f"{tag}tau={pattern} r={r}: ok for n <= {max(row.n for row in rows)}")
    return lines


def _cmd_verify(args) -> int:
    checks: list[str] = []
    passed = True
    if args.formulas or args.conjectures:
        limit = max(args.n_max, census.DEFAULT_LIMIT) if args.force else args.limit
        fn = census.verify_formulas if args.formulas else census.verify_conjectures
        report = fn(args.n_max, workers=args.workers, cache_dir=args.cache_dir, limit=limit)
        checks.extend(_report_lines(report))
        passed = report.passed
    elif args.assemblies:
        order = args.order if args.order is not None else 40
        report = series.check_assemblies(order)
        checks.extend(str(c) for c in report.checks)
        passed = report.passed
    else:  # general form
        order = args.order if args.order is not None else 80
        for pattern, rs in (("312", (1, 2)), ("321", (0, 1, 2, 3, 4))):
            for r in rs:
                rep = series.check_general_form(pattern, r, order)
                tag = "CONJECTURE " if rep.conjectural else ""
                if rep.passed:
                    checks.append(
                        f"{tag}tau={pattern} r={r}: denominator {rep.denominator}, "
                        f"deg P = {rep.p_degree}, deg Q = {rep.q_degree}"
                    )
                else:
                    checks.append(f"{tag}tau={pattern} r={r}: FAIL ({rep.detail})")
                    passed = False
    if args.format == "json":
        _emit(args, json.dumps({"passed": passed, "checks": checks}, indent=1))
    else:
        _emit(args, "\n".join(checks + ["PASS" if passed else "FAIL"]))
    return EXIT_OK if passed else EXIT_MISMATCH


def _cmd_map(args) -> int:
    rho = Permutation.from_text(args.perm)
    if args.tau == "avoiding":
        path = bijections.psi_avoiding(rho)
    else:
        path = bijections.psi_tau(rho, args.tau)
    if args.format == "json":
        _emit(args, json.dumps({"perm": rho.to_text(), "tau": args.tau, "path": path}))
    else:
        _emit(args, path)
    return EXIT_OK


def _cmd_decode(args) -> int:
    path = paths.parse_path(args.path)
    if args.mode == "321avoid":
        rho = bijections.decode_321_avoiding(path)
    elif args.mode == "312avoid":
        rho = bijections.decode_312_avoiding(path)
    else:
        rho = bijections.decode_psi312(path)
    if args.format == "json":
        _emit(args, json.dumps({"path": path, "mode": args.mode, "perm": rho.to_text()}))
    else:
        _emit(args, rho.to_text())
    return EXIT_OK


def _cmd_bases(args) -> int:
    catalog = census.enumerate_tau_bases(args.tau, args.r)
    if args.format == "json":
        doc = {
            "pattern": catalog.pattern,
            "r": catalog.r,
            "bases": [list(b) for b in catalog.bases],
        }
        _emit(args, json.dumps(doc, indent=1))
    elif args.format == "csv":
        lines = ["base"] + [b.to_text() for b in catalog.bases]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, "\n".join(b.to_text() for b in catalog.bases))
    return EXIT_OK


def render_ascii(path: str) -> str:
    """One text row per height level: / and \\ for steps, | for jumps."""
    check = paths.validate(path)
    if not check.ok:
        raise PathError(f"invalid path: {check.reason} (prefix {check.prefix})")
    if not path:
        return "(empty path)"
    h = 0
    cells: list[tuple[int, int, str]] = []  # (column, row, char)
    for col, ch in enumerate(path):
        if ch == paths.UP:
            cells.append((col, h, "/"))
            h += 1
        elif ch == paths.DOWN:
            h -= 1
            cells.append((col, h, "\\"))
        else:
            h -= 1
            cells.append((col, h, "|"))
    height = max(row for _, row, _ in cells) + 1
    grid = [[" "] * len(path) for _ in range(height)]
    for col, row, char in cells:
        grid[height - 1 - row][col] = char
    return "\n".join("".join(line).rstrip() for line in grid)


def render_svg(path: str) -> str:
    scale = 12
    x = 0.0
    y = 0.0
    points = [(0.0, 0.0)]
    for ch in path:
        if ch == paths.UP:
            x += 1
            y += 1
        elif ch == paths.DOWN:
            x += 1
            y -= 1
        else:
            y -= 1
        points.append((x, y))
    max_y = max(py for _, py in points)
    width = (x + 2) * scale
    height = (max_y + 2) * scale
    coords = " ".join(
        f"{(px + 1) * scale:.0f},{(max_y - py + 1) * scale:.0f}" for px, py in points
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}">'
        f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="2"/>'
        "</svg>\n"
    )


def _cmd_render(args) -> int:
    path = paths.parse_path(args.path)
    picture = render_ascii(path)
    heights = list(paths.down_step_heights(path))
    if args.format == "json":
        _emit(args, json.dumps({"path": path, "ascii": picture, "heights": heights}))
    else:
        heights_text = ",".join(str(h) for h in heights)
        _emit(args, picture + f"\ndown-step heights: {heights_text}")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(path))
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    g = series.gf(args.tau, args.r, 2 * args.n_max)
    coeffs = series.coefficients_as_strings(g)[: args.n_max + 1]
    if args.format == "csv":
        lines = ["n,coefficient"] + [f"{n},{c}" for n, c in enumerate(coeffs)]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(coeffs))
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, *, cache: bool = False) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", help="write output to a file instead of stdout")
    if cache:
        p.add_argument("--workers", type=int, default=1)
        p.add_argument(
            "--cache-dir",
            default=os.environ.get(census.ENV_CACHE_DIR),
            help=f"distribution cache directory (default: ${census.ENV_CACHE_DIR})",
        )
        p.add_argument("--limit", type=int, default=census.DEFAULT_LIMIT)
        p.add_argument(
            "--force",
            action="store_true",
            help="lift the sweep size guard (n = 11, 12 take a long time)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permdyck",
        description="Length-3 pattern counting in permutations via Dyck paths with down-jumps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="occurrence-count distribution over S_n")
    p.add_argument("--tau", choices=("312", "321"), required=True)
    p.add_argument("--n", required=True, help="single n or range, e.g. 5 or 0..9")
    _add_common(p, cache=True)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("verify", help="check formulas, conjectures, or series identities")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formulas", action="store_true")
    group.add_argument("--conjectures", action="store_true")
    group.add_argument("--assemblies", action="store_true")
    group.add_argument("--general-form", action="store_true")
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--order", type=int, default=None, help="series truncation order in t")
    _add_common(p, cache=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("map", help="encode a permutation as a path")
    p.add_argument("perm", help="comma-separated one-line notation, e.g. 4,3,5,1,2")
    p.add_argument("--tau", choices=("312", "321", "avoiding"), required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_map)

    p = sub.add_parser("decode", help="decode a path back to a permutation")
    p.add_argument("path", help="path literal over U, D, J")
    p.add_argument("--mode", choices=("312avoid", "321avoid", "psi312"), required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("bases", help="catalog of pattern-bases with r occurrences")
    p.add_argument("--tau", choices=("312", "321"), required=True)
    p.add_argument("--r", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_bases)

    p = sub.add_parser("coeffs", help="dump generating-function coefficients")
    p.add_argument("--tau", choices=("312", "321"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-max", type=int, default=20)
    _add_common(p)
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("render", help="draw a path (ASCII, optionally SVG)")
    p.add_argument("path")
    p.add_argument("--svg", help="also write an SVG drawing to this file")
    _add_common(p)
    p.set_defaults(fn=_cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except census.ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PatternError, PathError, bijections.NotInImageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
