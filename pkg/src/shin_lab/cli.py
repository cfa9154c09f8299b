"""Command-line front end.

Every command produces one RunReport rendered as JSON, CSV, or aligned
text.  Numbers are serialized as decimal strings with an explicit digit
count (never binary floats), so reports are bit-identical across platforms
and runs; the only volatile fields are ``timestamp`` and ``elapsed_ms``.

Exit codes: 0 success (and, for verify, all checks passed), 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
import time
from fractions import Fraction

from .eulerian import eulerian2_explicit, triangle
from .intervals import enumerate_intervals, psi, series_scan
from .precision import DEFAULT_DIGITS, format_decimal, parse_decimal
from .quadrature import QuadratureSpec
from .shin_core import FamilyMember, shin, shin_member
from .transforms import integrand_mass, jump_density, stieltjes_shin
from .verify import SUITES, run_all, run_suite

__all__ = ["main", "dispatch", "render"]


def _default_digits() -> int:
    env = os.environ.get("SHIN_DIGITS")
    if env:
        try:
            return max(10, int(env))
        except ValueError:
            pass
    return DEFAULT_DIGITS


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--digits", type=int, default=None, help="significant decimal digits")
    sub.add_argument(
        "--format", choices=("json", "csv", "text"), default="text", dest="fmt",
        help="output format",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shin",
        description="Evaluate the shin function family, its interval structure, "
        "combinatorics, gamma identities, and transform checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the selected member (or slot --m) at x")
    p_eval.add_argument("--x", required=True, help="argument (decimal or fraction)")
    p_eval.add_argument("--m", type=int, default=None, help="explicit slot; default: selected")
    _add_common(p_eval)

    p_omega = sub.add_parser("omega", help="selector values over an integer range")
    p_omega.add_argument("--k", required=True, help="single integer K or range A..B")
    _add_common(p_omega)

    p_vec = sub.add_parser("vector", help="table of member values k, k+1, ..., k+count-1")
    p_vec.add_argument("--k", type=int, required=True)
    p_vec.add_argument("--m", type=int, required=True)
    p_vec.add_argument("--count", type=int, default=11)
    _add_common(p_vec)

    p_int = sub.add_parser("intervals", help="enumerate constant-selector runs")
    p_int.add_argument("--max-ell", type=int, required=True)
    _add_common(p_int)

    p_scan = sub.add_parser("series-scan", help="length pattern and substitutions")
    p_scan.add_argument("--max-ell", type=int, required=True)
    _add_common(p_scan)

    p_psi = sub.add_parser("psi", help="ratio k/selector and deviation from its limit")
    p_psi.add_argument("--k", type=int, required=True)
    _add_common(p_psi)

    p_eul = sub.add_parser("eulerian", help="second-order Eulerian triangle rows")
    p_eul.add_argument("--rows", type=int, required=True)
    p_eul.add_argument("--explicit", action="store_true",
                       help="compute via the binomial/Stirling formula")
    _add_common(p_eul)

    p_den = sub.add_parser("density", help="branch-jump density samples")
    p_den.add_argument("--from", dest="t0", required=True)
    p_den.add_argument("--to", dest="t1", required=True)
    p_den.add_argument("--samples", type=int, required=True)
    _add_common(p_den)

    p_st = sub.add_parser("stieltjes", help="2 + integral of density/(x+t)")
    p_st.add_argument("--x", required=True)
    p_st.add_argument("--target-err", default="1e-12")
    _add_common(p_st)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", default="all", help=f"one of: all, {', '.join(SUITES)}")
    p_ver.add_argument("--report", default=None, help="also write the JSON report to this file")
    _add_common(p_ver)

    return parser


def _parse_number(text: str) -> Fraction:
    if "/" in text:
        return Fraction(text)
    return parse_decimal(text)


def _fmt(value, digits: int) -> str:
    return format_decimal(value, digits)


# ---------------------------------------------------------------------------
# Command implementations: each returns (results, summary, csv_rows)
# ---------------------------------------------------------------------------


def _cmd_eval(args, digits):
    x = _parse_number(args.x)
    x_arg = int(x) if x.denominator == 1 else x
    if args.m is None:
        sample = shin(x_arg, digits)
        results = {
            "x": str(x),
            "omega": sample.omega,
            "value": _fmt(sample.value.value, digits),
            "err_bound": _fmt(sample.value.err_fraction, 3) if sample.value.err_fraction else "0",
        }
        if sample.exact is not None:
            results["exact"] = str(sample.exact)
        rows = [("x", "m", "omega", "value")], [(str(x), sample.omega, sample.omega,
                                                 results["value"])]
    else:
        value = shin_member(FamilyMember(x_arg, args.m), digits)
        results = {
            "x": str(x),
            "m": args.m,
            "value": _fmt(value.value, digits),
            "err_bound": _fmt(value.err_fraction, 3) if value.err_fraction else "0",
        }
        rows = [("x", "m", "omega", "value")], [(str(x), args.m, "", results["value"])]
    return results, None, rows


def _cmd_omega(args, digits):
    from .shin_core import omega as omega_fn

    spec = args.k
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(spec)
    if hi < lo:
        raise ValueError(f"empty range {spec}")
    values = [{"k": k, "omega": omega_fn(k, digits)} for k in range(lo, hi + 1)]
    rows = [("k", "omega")], [(v["k"], v["omega"]) for v in values]
    return values, None, rows


def _cmd_vector(args, digits):
    rows_out = []
    for k in range(args.k, args.k + args.count):
        value = shin_member(FamilyMember(k, args.m), digits)
        rows_out.append({"k": k, "m": args.m, "value": _fmt(value.value, digits)})
    rows = [("k", "m", "value")], [(r["k"], r["m"], r["value"]) for r in rows_out]
    return rows_out, None, rows


def _cmd_intervals(args, digits):
    records = enumerate_intervals(args.max_ell, digits)
    results = [
        {"ell": r.ell, "omega": r.omega, "k_min": r.k_min, "k_max": r.k_max, "length": r.length}
        for r in records
    ]
    rows = [("ell", "omega", "k_min", "k_max", "length")], [
        (r.ell, r.omega, r.k_min, r.k_max, r.length) for r in records
    ]
    return results, None, rows


def _cmd_series_scan(args, digits):
    scan = series_scan(args.max_ell, digits)
    results = {
        "pattern": list(scan.pattern),
        "pattern_period": scan.pattern_period,
        "lengths": list(scan.lengths),
        "substitution_indices": list(scan.substitution_indices),
    }
    subs = set(scan.substitution_indices)
    rows = [("ell", "length", "substitution")], [
        (ell, length, 1 if ell in subs else 0)
        for ell, length in enumerate(scan.lengths, start=1)
    ]
    return results, None, rows


def _cmd_psi(args, digits):
    sample = psi(args.k, digits)
    results = {
        "k": sample.k,
        "omega": sample.omega,
        "psi": str(sample.psi),
        "psi_decimal": _fmt(sample.psi, digits),
        "deviation": _fmt(sample.deviation.value, min(digits, 25)),
    }
    rows = [("k", "omega", "psi", "deviation")], [
        (sample.k, sample.omega, results["psi_decimal"], results["deviation"])
    ]
    return results, None, rows


def _cmd_eulerian(args, digits):
    tri = triangle(args.rows)
    if args.explicit:
        values = [
            [eulerian2_explicit(n, m) for m in range(n)] for n in range(1, args.rows + 1)
        ]
    else:
        values = [list(row) for row in tri.rows]
    rows = None, [tuple(row) for row in values]  # raw CSV rows, no header
    return values, None, rows


def _cmd_density(args, digits):
    t0, t1 = _parse_number(args.t0), _parse_number(args.t1)
    n = args.samples
    if n < 2:
        raise ValueError("need at least 2 samples")
    step = (t1 - t0) / (n - 1)
    out = []
    for i in range(n):
        t = t0 + i * step
        sample = jump_density(t, digits)
        out.append({"t": _fmt(t, 12), "mu_dot": _fmt(sample.mu_dot.value, min(digits, 30))})
    rows = [("t", "mu_dot")], [(r["t"], r["mu_dot"]) for r in out]
    return out, None, rows


def _cmd_stieltjes(args, digits):
    x = _parse_number(args.x)
    target = parse_decimal(args.target_err)
    spec = QuadratureSpec(levels=9, target_abs_err=target)
    res = stieltjes_shin(x, spec, digits)
    mass = integrand_mass(spec, digits)
    results = {
        "x": str(x),
        "value": _fmt(res.value.value, min(digits, 30)),
        "est_err": _fmt(res.est_err, 3),
        "nodes_used": res.nodes_used,
        "converged": res.converged,
        "integrand_mass": _fmt(mass.value, 12),
    }
    if x > 0:
        x_arg = int(x) if x.denominator == 1 else x
        sample = shin(x_arg, digits)
        results["shin_value"] = _fmt(sample.value.value, min(digits, 30))
        residual = res.value - sample.value
        results["residual_vs_shin"] = _fmt(residual.value, 12)
    rows = [tuple(results.keys())], [tuple(results.values())]
    return results, None, rows


def _cmd_verify(args, digits):
    if args.suite == "all":
        suite_results = run_all(digits)
    else:
        suite_results = [run_suite(args.suite, digits)]
    results = [r.to_dict() for r in suite_results]
    passed = sum(1 for r in suite_results for c in r.checks if c.passed)
    failed = sum(1 for r in suite_results for c in r.checks if not c.passed)
    summary = {"passed": passed, "failed": failed, "all_passed": failed == 0}
    rows = [("suite", "check", "passed", "detail")], [
        (r.suite, c.name, int(c.passed), c.detail) for r in suite_results for c in r.checks
    ]
    return results, summary, rows


_COMMANDS = {
    "eval": _cmd_eval,
    "omega": _cmd_omega,
    "vector": _cmd_vector,
    "intervals": _cmd_intervals,
    "series-scan": _cmd_series_scan,
    "psi": _cmd_psi,
    "eulerian": _cmd_eulerian,
    "density": _cmd_density,
    "stieltjes": _cmd_stieltjes,
    "verify": _cmd_verify,
}


def dispatch(argv: list[str]) -> tuple[int, dict, tuple, str]:
    """Parse and run; returns (exit_code, report, csv_rows, format)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    digits = args.digits if args.digits is not None else _default_digits()
    started = time.perf_counter()
    results, summary, rows = _COMMANDS[args.command](args, digits)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "fmt", "digits") and v is not None
    }
    report = {
        "command": args.command,
        "params": {k: str(v) for k, v in params.items()},
        "digits": digits,
        "results": results,
        "summary": summary,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "elapsed_ms": f"{elapsed_ms:.1f}",
    }
    code = 0
    if summary is not None and not summary["all_passed"]:
        code = 1
    return code, report, rows, args.fmt


def render(report: dict, fmt: str, rows: tuple = None) -> bytes:
    """Serialize a report: canonical JSON, CSV with header row, or text."""
    if fmt == "json":
        return (json.dumps(report, indent=2) + "\n").encode()
    if fmt == "csv":
        header, data = rows
        lines = []
        if header:
            lines.append(",".join(str(h) for h in header[0]))
        for row in data:
            lines.append(",".join(str(v) for v in row))
        return ("\n".join(lines) + "\n").encode()
    if fmt == "text":
        lines = [f"{report['command']}  (digits={report['digits']})"]
        header, data = rows
        if header:
            widths = [
                max(len(str(h)), *(len(str(r[i])) for r in data)) if data else len(str(h))
                for i, h in enumerate(header[0])
            ]
            lines.append("  ".join(str(h).ljust(w) for h, w in zip(header[0], widths)))
            for r in data:
                lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
        else:
            for r in data:
                lines.append(" ".join(str(v) for v in r))
        if report["summary"] is not None:
            s = report["summary"]
            lines.append(f"passed: {s['passed']}  failed: {s['failed']}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, report, rows, fmt = dispatch(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(render(report, fmt, rows))
    report_path = report["params"].get("report")
    if report_path:
        with open(report_path, "wb") as fh:
            fh.write(render(report, "json", rows))
    return code


if __name__ == "__main__":
    sys.exit(main())
