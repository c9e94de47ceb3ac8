"""Command-line front-end.

Exact results are printed as JSON (default) or CSV with rationals as "p/q"
strings.  Exit codes: 0 success, 1 failed verdict or gate, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import exact
from .binomials import binomial_table, positivity_scan
from .cones import make_cone, parse_cone
from .errors import WishconeError
from .exact import as_rational, format_rational, parse_rational_list
from .montecarlo import verify_moment_formula
from .partitions import Partition, partitions_up_to
from .symfun import evaluate, jack
from .wishart import WishartParams, existence_check, laplace_transform, verify_certificate, zonal_normalization, zonal_polynomial

FLOAT_RANK_TOLERANCE = 1e-10


class UsageError(Exception):
    pass


def _partition_arg(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition()
    try:
        return Partition(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from exc


def _partition_str(p: Partition) -> str:
    return ",".join(map(str, p))


def _rational(flag: str, text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _rational_list(flag: str, text: str) -> tuple[Fraction, ...]:
    try:
        return parse_rational_list(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def read_matrix_file(path: str) -> tuple[list[list], bool]:
    """Read {"m": k, "entries": [[...]]}; returns (rows, has_float_entries)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        m, entries = data["m"], data["entries"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from exc
    if len(entries) != m or any(len(row) != m for row in entries):
        raise UsageError(f"{path}: entries must be {m}x{m}")
    has_float = any(isinstance(x, float) for row in entries for x in row)
    return entries, has_float


def _float_eigenvalues(rows) -> tuple[Fraction, ...]:
    mat = np.array([[float(as_rational(x)) for x in row] for row in rows])
    if not np.allclose(mat, mat.T):
        raise UsageError("matrix must be symmetric")
    vals = np.linalg.eigvalsh(0.5 * (mat + mat.T))
    top = max(float(np.abs(vals).max(initial=0.0)), 0.0)
    cleaned = [0.0 if abs(v) <= FLOAT_RANK_TOLERANCE * top else float(v) for v in vals]
    if any(v < 0 for v in cleaned):
        raise UsageError("matrix is not positive semidefinite")
    return tuple(sorted((Fraction(v) for v in cleaned), reverse=True))


def _build_params(args) -> tuple[WishartParams, list[str]]:
    warnings = []
    cone = parse_cone(args.cone)
    beta = _rational("--beta", args.beta)
    if args.omega_file:
        rows, has_float = read_matrix_file(args.omega_file)
        if has_float:
            omega = _float_eigenvalues(rows)
            warnings.append(
                "omega has float entries: its rank was decided numerically with "
                f"relative tolerance {FLOAT_RANK_TOLERANCE}, so the verdict depends on that tolerance"
            )
        elif cone.is_matrix_family and cone.family.value == "real":
            omega = exact.to_matrix(rows)
        else:
            raise UsageError("--omega-file is only supported for real:m cones; use --omega eigenvalues")
    elif args.omega is not None:
        omega = _rational_list("--omega", args.omega)
    else:
        omega = (Fraction(0),) * cone.rank
    scale = Fraction(1, 2)
    if getattr(args, "scale_file", None):
        rows, has_float = read_matrix_file(args.scale_file)
        if has_float:
            warnings.append("scale has float entries; they are used at their exact binary value")
        scale = exact.to_matrix(rows)
    elif getattr(args, "scale", None):
        scale = args.scale if args.scale == "unit" else _rational("--scale", args.scale)
    return WishartParams(cone, beta, omega, scale), warnings


def _emit(args, payload, rows: list[dict] | None = None, fields: Sequence[str] | None = None):
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        json.dump(payload, sys.stdout, indent=None if isinstance(payload, str) else 2)
        sys.stdout.write("\n")


# -- commands -----------------------------------------------------------------


def cmd_jack_eval(args) -> int:
    kappa = _partition_arg(args.kappa)
    alpha = _rational("--alpha", args.alpha)
    poly = jack(kappa, args.m, alpha)
    if args.point is not None:
        point = _rational_list("--point", args.point)
        value = format_rational(evaluate(poly, point))
        _emit(args, value, [{"value": value}], ["value"])
    else:
        rows = [{"mu": _partition_str(mu), "coefficient": format_rational(c)} for mu, c in poly.sorted_items()]
        _emit(args, {"kappa": list(kappa), "m": args.m, "alpha": format_rational(alpha), "monomials": rows}, rows, ["mu", "coefficient"])
    return 0


def cmd_binom(args) -> int:
    alpha = _rational("--alpha", args.alpha)
    table = binomial_table(args.max_degree, args.max_length or args.max_degree, alpha)
    rows = [
        {"kappa": _partition_str(k), "sigma": _partition_str(s), "alpha": format_rational(alpha), "value": format_rational(v)}
        for (k, s), v in table.entries.items()
    ]
    _emit(args, rows, rows, ["kappa", "sigma", "alpha", "value"])
    return 0


def parse_binom_csv(text: str) -> dict[tuple[Partition, Partition, Fraction], Fraction]:
    """Inverse of ``binom --format csv``."""
    out = {}
    for row in csv.DictReader(io.StringIO(text)):
        key = (_partition_arg(row["kappa"]), _partition_arg(row["sigma"]), Fraction(row["alpha"]))
        out[key] = Fraction(row["value"])
    return out


def cmd_positivity_scan(args) -> int:
    alphas = _rational_list("--alpha", args.alpha)
    reports = []
    for alpha in alphas:
        rep = positivity_scan(args.max_degree, args.m, alpha)
        reports.append(
            {
                "alpha": format_rational(alpha),
                "max_degree": args.max_degree,
                "m": args.m,
                "pairs_checked": rep.pairs_checked,
                "contiguous_checked": rep.contiguous_checked,
                "violations": len(rep.violations),
                "ok": rep.ok,
            }
        )
    _emit(args, reports, reports, list(reports[0]) if reports else ["alpha"])
    return 0 if all(r["ok"] for r in reports) else 1


def cmd_zonal(args) -> int:
    norm = zonal_normalization(args.k, args.r, args.d)
    rows = []
    for kappa, c in norm.coefficients.items():
        poly = zonal_polynomial(kappa, args.r, args.d)
        rows.append(
            {
                "kappa": _partition_str(kappa),
                "c": format_rational(c),
                "monomials": {_partition_str(mu): format_rational(v) for mu, v in poly.sorted_items()},
            }
        )
    flat = [{"kappa": r["kappa"], "c": r["c"]} for r in rows]
    _emit(args, {"k": args.k, "r": args.r, "d": args.d, "zonal": rows}, flat, ["kappa", "c"])
    return 0


def cmd_check_existence(args) -> int:
    params, warnings = _build_params(args)
    verdict = existence_check(params)
    payload = verdict.to_dict()
    if args.certificate and verdict.certificate is not None:
        payload["certificate_verified"] = verify_certificate(params, verdict.certificate)
    if warnings:
        payload["warnings"] = warnings
    cert = payload["certificate"] or {}
    row = {
        "passes": payload["passes"],
        "failed_condition": payload["failed_condition"] or "",
        "kappa": ",".join(map(str, cert.get("kappa", []))),
        "t": cert.get("t", ""),
        "value": cert.get("value", ""),
    }
    _emit(args, payload, [row], list(row))
    if args.expect == "pass" and not verdict.passes:
        return 1
    if args.expect == "fail" and verdict.passes:
        return 1
    return 0


def cmd_laplace(args) -> int:
    params, warnings = _build_params(args)
    rows, _ = read_matrix_file(args.u_file)
    value = laplace_transform(params, rows, convention=args.convention, dps=args.digits + 10)
    text = mpmath.nstr(value, args.digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    payload = {"value": text, "digits": args.digits, "convention": args.convention}
    if warnings:
        payload["warnings"] = warnings
    _emit(args, payload, [{"value": text, "digits": args.digits}], ["value", "digits"])
    return 0


def cmd_mc_verify(args) -> int:
    cone = make_cone("real", args.m)
    omega = _rational_list("--omega", args.omega) if args.omega else (Fraction(0),) * args.m
    params = WishartParams(cone, _rational("--beta", args.beta), omega)
    kappas = [k for k in partitions_up_to(args.kappa_max, args.m) if k.size > 0]
    report = verify_moment_formula(
        params, kappas, _rational("--t", args.t), args.n, args.seed, threads=args.threads
    )
    payload = report.to_dict()
    _emit(args, payload, payload["rows"], ["name", "exact", "empirical", "standard_error", "z_score", "relative_error", "passed"])
    return 0 if report.passed else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="wishcone", description="Jack polynomials, binomials and Wishart existence checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack-eval", parents=[common], help="Jack polynomial coefficients or value")
    p.add_argument("--kappa", required=True, help="partition, e.g. 2,1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--point", help="comma-separated rationals")
    p.set_defaults(func=cmd_jack_eval)

    p = sub.add_parser("binom", parents=[common], help="generalized binomial table")
    p.add_argument("--alpha", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--max-length", type=int)
    p.set_defaults(func=cmd_binom)

    p = sub.add_parser("positivity-scan", parents=[common], help="exhaustive binomial positivity check")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", required=True, help="one or more comma-separated values")
    p.set_defaults(func=cmd_positivity_scan)

    p = sub.add_parser("zonal", parents=[common], help="zonal normalization constants")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_zonal)

    def wishart_flags(p):
        p.add_argument("--cone", required=True, help="real:m, complex:m, quat:m, lorentz:n or octonion")
        p.add_argument("--beta", required=True)
        p.add_argument("--omega", help="non-centrality eigenvalues, comma-separated")
        p.add_argument("--omega-file", help="JSON matrix file for the non-centrality")
        p.add_argument("--scale", help='"unit" or a positive rational s meaning s*e')
        p.add_argument("--scale-file", help="JSON matrix file for the scale")

    p = sub.add_parser("check-existence", parents=[common], help="existence verdict with certificate")
    wishart_flags(p)
    p.add_argument("--certificate", action="store_true", help="re-verify the certificate exactly")
    p.add_argument("--expect", choices=("pass", "fail"))
    p.set_defaults(func=cmd_check_existence)

    p = sub.add_parser("laplace", parents=[common], help="closed-form Laplace transform")
    wishart_flags(p)
    p.add_argument("--u-file", required=True)
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--convention", choices=("cone", "matrix"), default="cone")
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("mc-verify", parents=[common], help="Monte-Carlo check of the moment formula")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--omega")
    p.add_argument("--kappa-max", type=int, default=2)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--t", default="1")
    p.set_defaults(func=cmd_mc_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wishcone {args.command}: {exc}", file=sys.stderr)
        return 2
    except WishconeError as exc:
        print(f"wishcone {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
