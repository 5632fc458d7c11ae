"""Command-line interface: every operation behind one executable.

Success with --json prints exactly one envelope object {schema_version,
command, input, payload, timing}; timing stays outside the payload so
payloads are byte-identical across runs.  Exit codes: 0 success, 1 domain
error (the error class name goes to stderr), 2 usage error.  Rationals are
serialized as decimal strings so arbitrary precision survives JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .codes import build_graph, code_count, degree_profile, enumerate_codes, parse_code
from .errors import ThresholdWalkError
from .kemeny import (
    kemeny_degree_form,
    kemeny_from_code,
    kemeny_spectral_form,
    pineapple_argmax,
    pineapple_kemeny,
    upper_bounds,
)
from .oracle import (
    FOREST_ORDER_CAP,
    accessibility_oracle,
    kemeny_eigen_oracle,
    resistance_oracle,
    spanning_tree_oracle,
    two_forest_matrix,
)
from .resistance import resistance_closed_form, resistance_matrix, verify_orderings
from .search import max_kemeny_search
from .spectral import laplacian_spectrum, pseudo_inverse, spanning_tree_count

SCHEMA_VERSION = "1"


@dataclass
class CommandOutput:
    payload: dict
    text: list[str] = field(default_factory=list)
    csv_header: list[str] | None = None
    csv_rows: list[list] | None = None
    exit_code: int = 0


def _frac_obj(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator), "float": float(value)}


def _frac_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_compute(args) -> CommandOutput:
    code = parse_code(args.code)
    exact = kemeny_degree_form(code) if args.method == "degree" else kemeny_from_code(code)
    payload: dict = {"n": code.n, "m": exact.m, "method": args.method}
    text = [f"code {code}  n={code.n}  m={exact.m}"]
    if args.method == "spectral":
        spectral_value = kemeny_spectral_form(code).value
        payload["kemeny"] = {"num": None, "den": None, "float": spectral_value}
        text.append(f"K = {spectral_value!r} (spectral route, floating)")
    else:
        payload["kemeny"] = _frac_obj(exact.exact)
        text.append(f"K = {_frac_str(exact.exact)} = {float(exact.exact)!r}")
    if args.method == "all":
        degree = kemeny_degree_form(code)
        spectral = kemeny_spectral_form(code)
        payload["routes"] = {
            "codevec": _frac_obj(exact.exact),
            "degree": _frac_obj(degree.exact),
            "spectral": spectral.value,
        }
        payload["agreement"] = {
            "exact_routes_equal": exact.exact == degree.exact,
            "spectral_abs_diff": abs(spectral.value - exact.value),
        }
        text.append(f"routes agree: exact={exact.exact == degree.exact}")
    if code.n >= 3:
        bounds = upper_bounds(code)
        payload["bounds"] = {
            "linear": bounds.linear_bound,
            "sparse": bounds.sparse_bound,
            "hold": bounds.both_hold,
        }
        text.append(
            f"bounds: K < {bounds.linear_bound} and K < {bounds.sparse_bound!r}: "
            + ("both hold" if bounds.both_hold else "VIOLATED")
        )
    else:
        payload["bounds"] = None
    return CommandOutput(payload, text)


def _cmd_spectrum(args) -> CommandOutput:
    code = parse_code(args.code)
    spectrum = laplacian_spectrum(code)
    tau = spanning_tree_count(code)
    payload = {
        "n": code.n,
        "lambda": list(spectrum.eigenvalues),
        "sorted": list(spectrum.sorted()),
        "tau": str(tau),
    }
    text = [
        f"lambda (basis order): {' '.join(str(v) for v in spectrum.eigenvalues)}",
        f"sorted: {' '.join(str(v) for v in spectrum.sorted())}",
        f"tau = {tau}",
    ]
    return CommandOutput(payload, text)


def _cmd_resistance(args) -> CommandOutput:
    code = parse_code(args.code)
    if args.pair is not None:
        j, v = args.pair
        value = resistance_closed_form(code, j, v)
        payload = {"n": code.n, "pair": [j, v], "r": _frac_str(value)}
        return CommandOutput(payload, [_frac_str(value)])
    profile = resistance_matrix(code)
    rows = [[_frac_str(x) for x in row] for row in profile.R]
    payload = {"n": code.n, "r": rows}
    text = [" ".join(row) for row in rows]
    header = [f"v{p}" for p in range(1, code.n + 1)]
    return CommandOutput(payload, text, csv_header=header, csv_rows=rows)


def _cmd_forest(args) -> CommandOutput:
    code = parse_code(args.code)
    profile = resistance_matrix(code)
    rows = [[str(x) for x in row] for row in profile.F]
    payload = {"n": code.n, "tau": str(profile.tau), "f": rows}
    text = [",".join(row) for row in rows] + [f"tau,{profile.tau}"]
    header = [f"v{p}" for p in range(1, code.n + 1)]
    return CommandOutput(payload, text, csv_header=header, csv_rows=rows + [["tau", str(profile.tau)]])


def _cmd_access(args) -> CommandOutput:
    code = parse_code(args.code)
    profile = resistance_matrix(code)
    report = verify_orderings(code)
    payload = {
        "mu": [_frac_str(x) for x in profile.mu],
        "alpha": [_frac_str(x) for x in profile.alpha],
        "degrees": list(degree_profile(code).degrees),
        "ordering_ok": report.all_pass,
    }
    text = [
        "mu: " + " ".join(payload["mu"]),
        "alpha: " + " ".join(payload["alpha"]),
        "degrees: " + " ".join(str(x) for x in payload["degrees"]),
        f"ordering_ok: {report.all_pass}",
    ]
    return CommandOutput(payload, text)


def _cmd_pineapple(args) -> CommandOutput:
    n = args.n
    if args.r is not None:
        values = [(n, args.r, pineapple_kemeny(n, args.r))]
    elif args.sweep:
        values = [(n, r, pineapple_kemeny(n, r)) for r in range(n - 1)]
    else:
        best = pineapple_argmax(n)
        payload = {
            "n": n,
            "r_star": best.r_star,
            "k_star": _frac_obj(best.k_star),
            "tied_rs": list(best.tied_rs),
            "predicted_set": list(best.predicted_set),
        }
        text = [
            f"argmax r = {best.r_star}  K = {_frac_str(best.k_star)} = {float(best.k_star)!r}",
            f"ties: {list(best.tied_rs)}  predicted window: {list(best.predicted_set)}",
        ]
        return CommandOutput(payload, text)
    rows = [[str(n), str(r), str(k.numerator), str(k.denominator), repr(float(k))] for n, r, k in values]
    payload = {
        "rows": [
            {"n": n, "r": r, "num": str(k.numerator), "den": str(k.denominator), "float": float(k)}
            for n, r, k in values
        ]
    }
    text = [",".join(row) for row in rows]
    return CommandOutput(payload, text, csv_header=["n", "r", "num", "den", "float"], csv_rows=rows)


def _default_threads() -> int:
    env = os.environ.get("THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _cmd_search(args) -> CommandOutput:
    threads = args.threads if args.threads is not None else _default_threads()
    checkpoint = args.checkpoint
    if checkpoint is None:
        checkpoint_dir = os.environ.get("CHECKPOINT_DIR")
        if checkpoint_dir:
            checkpoint = os.path.join(checkpoint_dir, f"search_n{args.n}.checkpoint")
    report = max_kemeny_search(args.n, threads=threads, checkpoint=checkpoint)
    payload = {
        "n": report.n,
        "argmax_code": report.argmax_code,
        "k": _frac_obj(report.k_exact),
        "is_pineapple": report.is_pineapple,
        "r": report.r,
        "ties": list(report.ties),
        "codes_examined": report.codes_examined,
        "predicted_asymptote": report.predicted_asymptote,
    }
    row = [
        str(report.n),
        report.argmax_code,
        str(report.k_exact.numerator),
        str(report.k_exact.denominator),
        repr(report.k_float),
        str(report.is_pineapple).lower(),
        "" if report.r is None else str(report.r),
        f"{report.seconds:.3f}",
    ]
    text = [
        f"n={report.n}  argmax {report.argmax_code}  "
        f"K = {_frac_str(report.k_exact)} = {report.k_float!r}",
        f"is_pineapple={report.is_pineapple} r={report.r}  "
        f"codes={report.codes_examined}  seconds={report.seconds:.3f}",
    ]
    header = ["n", "argmax_code", "k_num", "k_den", "k_float", "is_pineapple", "r", "seconds"]
    return CommandOutput(payload, text, csv_header=header, csv_rows=[row])


def _cmd_enumerate(args) -> CommandOutput:
    codes = [str(c) for c in enumerate_codes(args.n)]
    payload = {"n": args.n, "count": code_count(args.n), "codes": codes}
    return CommandOutput(payload, codes, csv_header=["code"], csv_rows=[[c] for c in codes])


# ---------------------------------------------------------------------------
# verification suites (compare exact routes against the oracles for one code)


def _suite_kemeny(code) -> dict:
    cv = kemeny_from_code(code)
    dg = kemeny_degree_form(code)
    sp = kemeny_spectral_form(code)
    graph = build_graph(code)
    eig = kemeny_eigen_oracle(graph)
    degrees = np.array(degree_profile(code).degrees, dtype=float)
    numeric_r = resistance_oracle(graph)
    drd = float(degrees @ numeric_r @ degrees / (4.0 * cv.m))
    deviations = {
        "spectral_route": abs(sp.value - cv.value),
        "eigen_oracle": abs(eig - cv.value),
        "resistance_route": abs(drd - cv.value),
    }
    exact_equal = cv.exact == dg.exact
    ok = (
        exact_equal
        and deviations["spectral_route"] < 1e-9
        and deviations["eigen_oracle"] < 1e-8
        and deviations["resistance_route"] < 1e-8
    )
    return {
        "pass": bool(ok),
        "exact_routes_equal": exact_equal,
        "max_deviation": max(deviations.values()),
        "deviations": deviations,
    }


def _suite_resistance(code) -> dict:
    profile = resistance_matrix(code)
    pinv = pseudo_inverse(code)
    n = code.n
    exact_equal = all(
        profile.R[i][j] == pinv[i][i] + pinv[j][j] - 2 * pinv[i][j]
        for i in range(n)
        for j in range(n)
    )
    numeric = resistance_oracle(build_graph(code))
    deviation = max(
        abs(float(profile.R[i][j]) - float(numeric[i][j])) for i in range(n) for j in range(n)
    )
    ok = exact_equal and deviation < 1e-8
    return {"pass": bool(ok), "pseudoinverse_equal": exact_equal, "max_deviation": deviation}


def _suite_forest(code) -> dict:
    profile = resistance_matrix(code)  # raises NonIntegralEntry if F is not integral
    graph = build_graph(code)
    tau_equal = profile.tau == spanning_tree_oracle(graph)
    result = {"pass": bool(tau_equal), "tau_equal": tau_equal, "max_deviation": None}
    if code.n <= FOREST_ORDER_CAP:
        counts = two_forest_matrix(graph)
        forest_equal = all(
            profile.F[i][j] == counts[i][j] for i in range(code.n) for j in range(code.n)
        )
        result["enumeration_equal"] = forest_equal
        result["pass"] = bool(tau_equal and forest_equal)
    else:
        result["enumeration_skipped"] = True
    return result


def _suite_ordering(code) -> dict:
    report = verify_orderings(code)
    profile = resistance_matrix(code)
    prof = degree_profile(code)
    weighted = sum(
        (Fraction(prof.degrees[v], 2 * prof.m) * profile.alpha[v] for v in range(code.n)),
        Fraction(0),
    )
    identity = weighted == profile.kemeny
    alpha_numeric = accessibility_oracle(build_graph(code))
    deviation = max(
        abs(float(profile.alpha[v]) - float(alpha_numeric[v])) for v in range(code.n)
    )
    ok = report.all_pass and identity and deviation < 1e-8
    return {
        "pass": bool(ok),
        "orderings_pass": report.all_pass,
        "weighted_alpha_equals_kemeny": identity,
        "max_deviation": deviation,
        "witnesses": list(report.witnesses),
    }


_SUITES = {
    "kemeny": _suite_kemeny,
    "resistance": _suite_resistance,
    "forest": _suite_forest,
    "ordering": _suite_ordering,
}


def _cmd_verify(args) -> CommandOutput:
    code = parse_code(args.code)
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    suites = {name: _SUITES[name](code) for name in names}
    ok = all(entry["pass"] for entry in suites.values())
    payload = {"code": str(code), "n": code.n, "suites": suites, "pass": ok}
    text = [f"{name}: {'PASS' if entry['pass'] else 'FAIL'}" for name, entry in suites.items()]
    text.append("all: PASS" if ok else "all: FAIL")
    return CommandOutput(payload, text, exit_code=0 if ok else 1)


# ---------------------------------------------------------------------------
# parser and dispatch


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    style = common.add_mutually_exclusive_group()
    style.add_argument("--json", action="store_true", help="emit one JSON envelope")
    style.add_argument("--csv", action="store_true", help="emit CSV with a header row")
    common.add_argument("--quiet", action="store_true", help="suppress stdout on success")

    parser = argparse.ArgumentParser(
        prog="thresholdwalk",
        description="Exact random-walk analytics for threshold graphs, driven by construction codes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("compute", parents=[common], help="Kemeny's constant and its upper bounds")
    p.add_argument("code", help="construction code (plain or block notation)")
    p.add_argument("--method", choices=["all", "codevec", "degree", "spectral"], default="all")
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("spectrum", parents=[common], help="integer Laplacian spectrum and tree count")
    p.add_argument("code")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("resistance", parents=[common], help="exact effective resistances")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--matrix", action="store_true", help="full matrix (default)")
    group.add_argument("--pair", nargs=2, type=int, metavar=("J", "V"), help="one vertex pair")
    p.add_argument("code")
    p.set_defaults(handler=_cmd_resistance)

    p = sub.add_parser("forest", parents=[common], help="spanning-2-forest counts and tau")
    p.add_argument("code")
    p.set_defaults(handler=_cmd_forest)

    p = sub.add_parser("access", parents=[common], help="moments and accessibility indices")
    p.add_argument("code")
    p.set_defaults(handler=_cmd_access)

    p = sub.add_parser("pineapple", parents=[common], help="the closed-form pineapple family")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--r", type=int, default=None)
    group.add_argument("--sweep", action="store_true")
    p.set_defaults(handler=_cmd_pineapple)

    p = sub.add_parser("search", parents=[common], help="exhaustive Kemeny maximum at order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=None, help="defaults to THREADS or all cores")
    p.add_argument("--checkpoint", default=None, help="progress file (defaults under CHECKPOINT_DIR)")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("verify", parents=[common], help="cross-check closed forms against oracles")
    p.add_argument("code")
    p.add_argument("--suite", choices=["kemeny", "resistance", "forest", "ordering", "all"], default="all")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="list all connected codes of order n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_enumerate)

    return parser


def _render_csv(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_help(sys.stderr)
        return 2
    started = time.perf_counter()
    try:
        output = args.handler(args)
    except ThresholdWalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - started
    if not args.quiet:
        if args.json:
            envelope = {
                "schema_version": SCHEMA_VERSION,
                "command": args.command,
                "input": {
                    key: value
                    for key, value in vars(args).items()
                    if key not in {"handler", "command", "json", "csv", "quiet"} and value is not None
                },
                "payload": output.payload,
                "timing": {"seconds": elapsed},
            }
            print(json.dumps(envelope))
        elif args.csv and output.csv_rows is not None:
            print(_render_csv(output.csv_header, output.csv_rows))
        else:
            for line in output.text:
                print(line)
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
