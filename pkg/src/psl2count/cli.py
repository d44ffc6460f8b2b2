"""Command-line front end.

Subcommands: invariants, census, verify-table, search, bhc, hb.  Every
subcommand takes --format {table,json,csv}; json and csv stay machine-clean
(diagnostics and diffs go to standard error in those modes).  Any long flag
can be preset through an environment variable PSL2_<FLAG>, e.g.
PSL2_T_MAX=1000000 or PSL2_FORMAT=json; an explicit flag wins.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource
abort.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bhc, heathbrown, invariants, oracle, search

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

ORACLE_CAP = 13
ORACLE_CAP_SLOW = 19  # with --allow-slow-oracle; p = 17, 19 take minutes

PROGRESS_THRESHOLD = 10**7  # scans at least this long report blocks on stderr


def _real(x: float) -> str:
    return f"{x:.10g}"


def _jreal(x: float) -> float:
    """Reals are emitted at 10 significant digits in every format."""
    return float(f"{x:.10g}")


def _int_arg(text: str) -> int:
    """Integer flag value, accepting scientific notation like 1e9."""
    try:
        return int(text)
    except ValueError:
        val = float(text)
        if val != int(val):
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        return int(val)


def _env_name(flag: str) -> str:
    return "PSL2_" + flag.lstrip("-").replace("-", "_").upper()


def _add(parser: argparse.ArgumentParser, flag: str, **kw) -> None:
    """add_argument with an environment-variable default override.

    String defaults are run through the argument's type and choices by
    argparse itself, so a bad environment value fails the same way a bad
    flag does.
    """
    env = os.environ.get(_env_name(flag))
    if env is not None:
        if kw.get("action") == "store_true":
            kw["default"] = env.strip().lower() in ("1", "true", "yes", "on")
        else:
            # argparse runs string defaults through type, but not choices
            if "choices" in kw and env not in kw["choices"]:
                raise ValueError(
                    f"{_env_name(flag)}={env!r} is not one of {'/'.join(kw['choices'])}"
                )
            kw["default"] = env
            kw.pop("required", None)
    parser.add_argument(flag, **kw)


def _add_format(parser: argparse.ArgumentParser) -> None:
    _add(parser, "--format", choices=("table", "json", "csv"), default="table",
         help="output format (default table)")


# ---------------------------------------------------------------------------
# invariants


def _profile_row(p: int) -> tuple[list, tuple[int, int, int, int]]:
    prof = invariants.profile(p)
    cells = [prof.delta, prof.epsilon, prof.k, prof.l, prof.sigma, prof.alpha]
    return cells, invariants.counts(prof)


def cmd_invariants(args) -> int:
    p = args.p
    if p == 3:
        # No divisor-split profile exists at p = 3; the counts still do.
        print("invariants: p = 3 has no profile, counts taken from the brute-force census",
              file=sys.stderr)
        cen = oracle.oracle_census(3)
        cells: list = [None] * 6
        quad = (cen.i, cen.c, cen.s, cen.n)
    else:
        cells, quad = _profile_row(p)

    names = ("delta", "epsilon", "k", "l", "sigma", "alpha")
    if args.format == "json":
        out = {"p": p}
        out.update(zip(names, cells))
        out.update(zip("icsn", quad))
        print(json.dumps(out))
    elif args.format == "csv":
        fields = [str(p)] + ["" if c is None else str(c) for c in cells] + [str(v) for v in quad]
        print(",".join(fields))
    else:
        head = f"p={p}"
        if cells[0] is None:
            head += " (no divisor-split profile)"
        else:
            head += " " + " ".join(f"{n}={c}" for n, c in zip(names, cells))
        print(head)
        print(" ".join(f"{n}={v}" for n, v in zip("icsn", quad)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# census


def _census_diff(formula: invariants.ClassCensus, brute: invariants.ClassCensus) -> list[str]:
    fm = {e.label: e for e in formula.entries}
    bm = {e.label: e for e in brute.entries}
    diffs = []
    for label in sorted(fm.keys() | bm.keys()):
        f, b = fm.get(label), bm.get(label)
        if f is None:
            diffs.append(f"{label}: only in brute-force census")
        elif b is None:
            diffs.append(f"{label}: only in formula census")
        else:
            for field in ("order", "num_classes", "self_normalising"):
                fv, bv = getattr(f, field), getattr(b, field)
                if fv != bv:
                    diffs.append(f"{label}: {field} formula={fv} brute={bv}")
    return diffs


def _print_census(cen: invariants.ClassCensus, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(cen.to_json_dict()))
        return
    if fmt == "csv":
        print("label,order,classes,self_normalising")
        for e in cen.entries:
            print(f"{e.label},{e.order},{e.num_classes},{int(e.self_normalising)}")
        return
    order = cen.p * (cen.p * cen.p - 1) // 2
    print(f"PSL(2,{cen.p})  order {order}  proper nontrivial subgroup classes:")
    width = max(len(e.label) for e in cen.entries)
    for e in cen.entries:
        mark = "self-normalising" if e.self_normalising else ""
        print(f"  {e.label:<{width}}  order {e.order:>6}  classes {e.num_classes}  {mark}".rstrip())
    print(f"i={cen.i} c={cen.c} s={cen.s} n={cen.n}")
    sn = sorted(e.label for e in cen.entries if e.self_normalising)
    print(f"self-normalising: {', '.join(sn) if sn else '(none)'}")


def cmd_census(args) -> int:
    p = args.p
    cap = ORACLE_CAP_SLOW if args.allow_slow_oracle else ORACLE_CAP
    if args.oracle and not 3 <= p <= cap:
        raise ValueError(
            f"brute-force census is capped at p <= {cap}"
            + ("" if args.allow_slow_oracle else " (raise to 19 with --allow-slow-oracle)")
        )
    if p == 3 and not args.oracle:
        raise ValueError("census formulas require p >= 5; use --oracle for p = 3")

    diff_stream = sys.stdout if args.format == "table" else sys.stderr
    if p == 3:
        _print_census(oracle.oracle_census(3), args.format)
        return EXIT_OK

    cen = invariants.census(p)
    _print_census(cen, args.format)
    if not args.oracle:
        return EXIT_OK

    brute = oracle.oracle_census(p, allow_large=args.allow_slow_oracle)
    diffs = _census_diff(cen, brute)
    print("diff (formula vs brute force):", file=diff_stream)
    if diffs:
        for line in diffs:
            print("  " + line, file=diff_stream)
        return EXIT_MISMATCH
    print("  (empty)", file=diff_stream)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-table


def _row_statuses(report: invariants.GoldenReport) -> list[tuple[int, str, list]]:
    by_p: dict[int, list] = {}
    for c in report.checks:
        by_p.setdefault(c.p, []).append(c)
    rows = []
    for p in sorted(by_p):
        checks = by_p[p]
        if any(c.status == "mismatch" for c in checks):
            status = "mismatch"
        elif any(c.status == "known-issue" for c in checks):
            status = "known-issue"
        else:
            status = "ok"
        rows.append((p, status, [c for c in checks if c.status != "match"]))
    return rows


def cmd_verify_table(args) -> int:
    report = invariants.verify_golden(oracle_rows=args.oracle_rows)
    rows = _row_statuses(report)

    if args.format == "json":
        out = {
            "rows": [{"p": p, "status": status} for p, status, _ in rows],
            "mismatches": [
                {"p": c.p, "column": c.column, "expected": c.expected, "computed": c.computed}
                for c in report.mismatches
            ],
            "known_issues": [
                {"p": c.p, "column": c.column, "expected": c.expected, "computed": c.computed}
                for c in report.known_issues
            ],
            "ok": report.ok,
        }
        print(json.dumps(out))
    elif args.format == "csv":
        print("p,status")
        for p, status, _ in rows:
            print(f"{p},{status}")
    else:
        for p, status, odd in rows:
            line = f"p={p:<3} {status}"
            for c in odd:
                line += f"  ({c.column}: table {c.expected}, computed {c.computed})"
            print(line)
        n_formula = sum(1 for p, _, _ in rows if p >= 5)
        print(
            f"{n_formula} formula rows checked"
            + (" (plus brute-force rows)" if args.oracle_rows else "")
            + f", p=3 checked by brute force; "
            f"mismatches: {len(report.mismatches)}, known issues: {len(report.known_issues)}"
        )

    if report.mismatches:
        return EXIT_MISMATCH
    if args.strict and report.known_issues:
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    spec = search.case_spec(args.case)
    jobs = args.threads if args.threads is not None else search.default_jobs()
    summary = search.scan(
        spec,
        args.t_max,
        hit_cap=args.hit_cap,
        jobs=jobs,
        progress=args.t_max >= PROGRESS_THRESHOLD,
    )
    if args.format == "json":
        print(json.dumps(summary.to_json_dict(max_hits=args.show_hits)))
    elif args.format == "csv":
        print("case,t_max,q_count,sigma_alpha_zero")
        print(f"{summary.case_id},{summary.t_max},{summary.q_count},{summary.sigma_alpha_zero_count}")
    else:
        print(f"case ({summary.case_id}): t in [1, {summary.t_max}]")
        print(f"prime triples: {summary.q_count}")
        print(f"with sigma = alpha = 0: {summary.sigma_alpha_zero_count}")
        shown = summary.hits[: args.show_hits]
        print(f"first {len(shown)} hits (s, r both at least 5):")
        for h in shown:
            flags = "".join("icsn"[j] if h.attains[j] else "-" for j in range(4))
            print(f"  t={h.t:<8} p={h.p:<12} s={h.s:<12} r={h.r:<12} attains {flags}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bhc


def cmd_bhc(args) -> int:
    fam = search.case_spec(args.case).polys
    constant = bhc.hl_constant(fam, args.trunc)
    est = bhc.estimate_E(fam, float(args.x), constant)

    out = {
        "family": args.case,
        "x": _jreal(est.x),
        "a": est.a,
        "P": constant.truncation,
        "C": _jreal(constant.value),
        "integral": _jreal(est.integral),
        "E": _jreal(est.e_value),
        "tail_bound": _jreal(constant.tail_bound),
    }
    if args.format == "json":
        print(json.dumps(out))
    elif args.format == "csv":
        print(",".join(out.keys()))
        print(",".join(_real(v) if isinstance(v, float) else str(v) for v in out.values()))
    else:
        print(f"family ({args.case}), x = {_real(est.x)}")
        print(f"integration from a = {est.a}, constant truncated at P = {constant.truncation}")
        print(f"C = {_real(constant.value)} (tail bound {_real(constant.tail_bound)})")
        print(f"integral = {_real(est.integral)}")
        print(f"E = {_real(est.e_value)}")

    if args.q_file is not None:
        with open(args.q_file, "r", encoding="utf-8") as fh:
            scan_data = json.load(fh)
        if scan_data.get("case") != args.case:
            raise ValueError(
                f"scan file is for case {scan_data.get('case')!r}, estimate is for {args.case!r}"
            )
        q = scan_data["q_count"]
        rel = bhc.compare(q, est)
        stream = sys.stdout if args.format == "table" else sys.stderr
        print(f"Q = {q} at t_max = {scan_data.get('t_max')}, (E - Q)/Q = {rel * 100:+.4f}%",
              file=stream)
    return EXIT_OK


# ---------------------------------------------------------------------------
# hb


def cmd_hb(args) -> int:
    cands = heathbrown.scan_hb(args.limit)
    bounds = heathbrown.derive_upper_bounds()
    rows = []
    violations = 0
    for c in cands:
        quad = (invariants.counts(c.profile) if c.profile is not None
                else (None, None, None, None))
        if all(v is not None for v in quad) and any(v > b for v, b in zip(quad, bounds)):
            violations += 1
        rows.append((c.p, c.omega_minus, c.omega_plus) + quad)

    if args.format == "json":
        out = {
            "limit": args.limit,
            "bounds": dict(zip("icsn", bounds)),
            "candidates": [
                {"p": r[0], "omega_minus": r[1], "omega_plus": r[2],
                 "i": r[3], "c": r[4], "s": r[5], "n": r[6]}
                for r in rows
            ],
        }
        print(json.dumps(out))
    elif args.format == "csv":
        print("p,omega_minus,omega_plus,i,c,s,n")
        for r in rows:
            print(",".join("" if v is None else str(v) for v in r))
    else:
        print(f"primes p = 5 mod 72 with few factors around them, p <= {args.limit}: {len(rows)}")
        print("bounds: i<={} c<={} s<={} n<={}".format(*bounds))
        for r in rows[: args.show]:
            print(f"  p={r[0]:<10} Omega(p-1)={r[1]} Omega(p+1)={r[2]} "
                  f"i={r[3]} c={r[4]} s={r[5]} n={r[6]}")
        if len(rows) > args.show:
            print(f"  ... {len(rows) - args.show} more (use --show)")
    if violations:
        print(f"{violations} candidates exceed the derived bounds", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psl2count",
        description="Subgroup-class counts of PSL(2,p) and prime-triple searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="divisor-split profile and (i,c,s,n) for one prime")
    p_inv.add_argument("p", type=_int_arg)
    _add_format(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_cen = sub.add_parser("census", help="subgroup-class catalogue for one prime")
    p_cen.add_argument("p", type=_int_arg)
    _add(p_cen, "--oracle", action="store_true", default=False,
         help="also run the brute-force census and diff it (p <= 13)")
    _add(p_cen, "--allow-slow-oracle", action="store_true", default=False,
         help="raise the brute-force cap to p <= 19 (minutes of work)")
    _add_format(p_cen)
    p_cen.set_defaults(func=cmd_census)

    p_ver = sub.add_parser("verify-table", help="recompute the reference table and report per row")
    _add(p_ver, "--strict", action="store_true", default=False,
         help="exit 1 on known issues too, not only on fresh mismatches")
    _add(p_ver, "--oracle-rows", action="store_true", default=False,
         help="also recompute p in {5,7,11,13} by brute force")
    _add_format(p_ver)
    p_ver.set_defaults(func=cmd_verify_table)

    p_sea = sub.add_parser("search", help="scan a linear progression for prime triples")
    p_sea.add_argument("case", choices=tuple(search.CASE_IDS))
    _add(p_sea, "--t-max", type=_int_arg, required=True, help="scan t in [1, t_max]")
    _add(p_sea, "--threads", type=_int_arg, default=None,
         help="worker processes (default: machine parallelism; result independent of it)")
    _add(p_sea, "--hit-cap", type=_int_arg, default=10000,
         help="stop recording hits after this many (counts stay exact)")
    _add(p_sea, "--show-hits", type=_int_arg, default=10,
         help="hits to include in table/json output")
    p_sea.set_defaults(func=cmd_search)
    _add_format(p_sea)

    p_bhc = sub.add_parser("bhc", help="predicted prime-triple count E(x) for one case")
    p_bhc.add_argument("case", choices=tuple(search.CASE_IDS))
    _add(p_bhc, "--x", type=float, required=True, help="upper end of the integral")
    _add(p_bhc, "--trunc", type=_int_arg, default=10**7,
         help="truncation point P of the constant's Euler product")
    _add(p_bhc, "--q-file", default=None,
         help="JSON scan summary to compare against (prints (E-Q)/Q)")
    p_bhc.set_defaults(func=cmd_bhc)
    _add_format(p_bhc)

    p_hb = sub.add_parser("hb", help="primes p = 5 mod 72 with bounded factor counts")
    _add(p_hb, "--limit", type=_int_arg, required=True, help="scan primes up to this bound")
    _add(p_hb, "--show", type=_int_arg, default=10, help="rows to print in table format")
    p_hb.set_defaults(func=cmd_hb)
    _add_format(p_hb)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:
        print(f"psl2count: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"psl2count: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.ResourceLimitError as exc:
        print(f"psl2count: resource cap hit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
