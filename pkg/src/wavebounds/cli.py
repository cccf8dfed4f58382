"""Command-line interface: filters, eval, decay, norm, bounds, verify, bernstein.

Verification subcommands exit 0 only when every row passed or was vacuous, and
write byte-identical reports for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bernstein import SweepSettings, verify_sweep
from .bound_formulas import BoundParams, compute_bound_set
from .daub_filters import construct_filter
from .norms import DEFAULT_OMEGA_MAX, NormRequest, weighted_lp_norm
from .reporting import exit_code, fmt17, rows_to_csv_bytes, rows_to_json_bytes, summarize
from .spectral_eval import estimate_decay, scaling_hat, wavelet_hat, wavelet_hat_abs2

_VERIFY_CHECKS = ("theorem1", "theorem2", "corollary1", "corollary2", "corollary3")


def _parse_span(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc


def _parse_int_span(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavebounds",
        description="Daubechies wavelet spectra, weighted Lp norms, and bound verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_filters = sub.add_parser("filters", help="print filter taps")
    p_filters.add_argument("--m", type=int, required=True)
    fmt = p_filters.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p_eval = sub.add_parser("eval", help="evaluate the wavelet transform at one frequency")
    p_eval.add_argument("--m", type=int, required=True)
    p_eval.add_argument("--omega", type=float, required=True)
    p_eval.add_argument("--abs2", action="store_true", help="print |psi_hat|^2 instead")

    p_decay = sub.add_parser("decay", help="fit the high-frequency decay envelope")
    p_decay.add_argument("--m", type=int, required=True)
    p_decay.add_argument("--range", type=_parse_span, default=(4.0 * math.pi, 512.0 * math.pi))
    p_decay.add_argument("--samples", type=int, default=64)
    p_decay.add_argument("--json", action="store_true")

    p_norm = sub.add_parser("norm", help="weighted Lp norm of the wavelet transform")
    p_norm.add_argument("--m", type=int, required=True)
    p_norm.add_argument("--k", type=int, required=True)
    p_norm.add_argument("--p", type=float, required=True)
    p_norm.add_argument("--omega-max", type=float, default=DEFAULT_OMEGA_MAX)
    p_norm.add_argument("--json", action="store_true")

    p_bounds = sub.add_parser("bounds", help="closed-form sandwich constants")
    p_bounds.add_argument("--m", type=int, required=True)
    p_bounds.add_argument("--k", type=int, required=True)
    p_bounds.add_argument("--p", type=float, required=True)
    p_bounds.add_argument("--eps", type=float, default=math.pi)
    p_bounds.add_argument("--c", type=float, default=None, help="decay exponent (default: fitted)")
    p_bounds.add_argument("--ctilde", type=float, default=None)
    p_bounds.add_argument("--log-base", type=float, default=math.e)
    fmt = p_bounds.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument("check", choices=_VERIFY_CHECKS)
    p_verify.add_argument("--m-list", type=int, nargs="+", default=None)
    p_verify.add_argument("--k-list", type=int, nargs="+", default=None)
    p_verify.add_argument("--p-list", type=float, nargs="+", default=None)
    p_verify.add_argument("--eps", type=float, default=math.pi)
    p_verify.add_argument("--tol", type=float, default=1e-9, help="tolerance pad added to abs_error")
    p_verify.add_argument("--out", type=Path, default=None)
    p_verify.add_argument("--format", choices=("csv", "json"), default="csv")

    p_bern = sub.add_parser("bernstein", help="verify the coefficient-decay inequality")
    p_bern.add_argument("--m", type=int, default=2)
    p_bern.add_argument("--k", type=int, default=1)
    p_bern.add_argument("--p", type=float, default=2.0)
    p_bern.add_argument("--sigma", type=float, default=1.0)
    p_bern.add_argument("--j-range", type=_parse_int_span, default=(-3, 6))
    p_bern.add_argument("--nu-range", type=_parse_int_span, default=(-8, 8))
    p_bern.add_argument("--tol", type=float, default=1e-9)
    p_bern.add_argument("--out", type=Path, default=None)
    p_bern.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _emit(data: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        out.write_bytes(data)


def _cmd_filters(args) -> int:
    spec = construct_filter(args.m)
    if args.json:
        payload = {"m": spec.m, "taps": [fmt17(t) for t in spec.taps]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.csv:
        print("index,tap")
        for i, tap in enumerate(spec.taps):
            print(f"{i},{fmt17(tap)}")
    else:
        for i, tap in enumerate(spec.taps):
            print(f"h({i}) = {fmt17(tap)}")
    return 0


def _cmd_eval(args) -> int:
    if args.abs2:
        print(fmt17(wavelet_hat_abs2(args.m, args.omega)))
    else:
        phi = scaling_hat(args.m, args.omega)
        psi = wavelet_hat(args.m, args.omega)
        print(f"phi_hat = {fmt17(phi.real)} {fmt17(phi.imag)}j")
        print(f"psi_hat = {fmt17(psi.real)} {fmt17(psi.imag)}j")
    return 0


def _cmd_decay(args) -> int:
    lo, hi = args.range
    fit = estimate_decay(args.m, lo, hi, args.samples)
    record = {
        "m": args.m,
        "C_tilde": fmt17(fit.C_tilde),
        "c": fmt17(fit.c),
        "total_exponent": fmt17(fit.c * math.log(args.m)),
        "fit_lo": fmt17(fit.fit_range[0]),
        "fit_hi": fmt17(fit.fit_range[1]),
        "residual": fmt17(fit.residual),
    }
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for key, val in record.items():
            print(f"{key} = {val}")
    return 0


def _cmd_norm(args) -> int:
    result = weighted_lp_norm(NormRequest(args.m, args.k, args.p, args.omega_max))
    record = {
        "value": fmt17(result.value),
        "abs_error": fmt17(result.abs_error),
        "evaluations": result.evaluations,
    }
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for key, val in record.items():
            print(f"{key} = {val}")
    return 0


def _cmd_bounds(args) -> int:
    c = args.c
    c_tilde = args.ctilde
    if c is None:
        if args.m >= 2:
            fit = estimate_decay(args.m, 4.0 * math.pi, DEFAULT_OMEGA_MAX, 128)
            c = fit.c
            c_tilde = fit.C_tilde if c_tilde is None else c_tilde
        else:
            c = 1.0  # the c-dependent term is vacuous at m = 1
    params = BoundParams(
        m=args.m, k=args.k, p=args.p, c=c, eps=args.eps,
        c_tilde=c_tilde, log_base=args.log_base,
    )
    bounds = compute_bound_set(params)
    record = {
        "m": args.m,
        "k": args.k,
        "p": fmt17(args.p),
        "eps": fmt17(args.eps),
        "c": fmt17(c),
        "c_tilde": fmt17(c_tilde),
        "A": fmt17(bounds.A),
        "B": fmt17(bounds.B),
        "D": fmt17(bounds.D),
        "E": fmt17(bounds.E),
        "F": fmt17(bounds.F),
        "G": fmt17(bounds.G),
        "flags": ";".join(bounds.flags),
    }
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    elif args.csv:
        print(",".join(record.keys()))
        print(",".join(str(v) for v in record.values()))
    else:
        for key, val in record.items():
            print(f"{key} = {val}")
    return 0


def _restrict_grid(cases: list[dict], args) -> list[dict]:
    def keep(case: dict) -> bool:
        if args.m_list is not None and case.get("m") not in args.m_list:
            return False
        if args.k_list is not None and case.get("k") not in args.k_list:
            return False
        if args.p_list is not None and case.get("p") not in args.p_list:
            return False
        return True

    return [case for case in cases if keep(case)]


def _cmd_verify(args) -> int:
    settings = SweepSettings(eps=args.eps, tol_pad=args.tol)
    from .bernstein import _RUNNERS

    cases = _restrict_grid(_RUNNERS[args.check][1](), args)
    rows = verify_sweep(args.check, cases, settings)
    data = rows_to_csv_bytes(rows) if args.format == "csv" else rows_to_json_bytes(rows)
    _emit(data, args.out)
    if args.out is not None:
        counts = summarize(rows)
        print(
            f"{args.check}: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['vacuous']} vacuous, {counts['error']} error -> {args.out}"
        )
    return exit_code(rows)


def _cmd_bernstein(args) -> int:
    settings = SweepSettings(tol_pad=args.tol)
    cases = [
        {"m": args.m, "k": args.k, "p": args.p, "sigma": args.sigma, "j": j, "nu": nu}
        for j in range(args.j_range[0], args.j_range[1] + 1)
        for nu in range(args.nu_range[0], args.nu_range[1] + 1)
    ]
    rows = verify_sweep("bernstein", cases, settings)
    data = rows_to_csv_bytes(rows) if args.format == "csv" else rows_to_json_bytes(rows)
    _emit(data, args.out)
    if args.out is not None:
        counts = summarize(rows)
        print(
            f"bernstein: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['vacuous']} vacuous, {counts['error']} error -> {args.out}"
        )
    return exit_code(rows)


_COMMANDS = {
    "filters": _cmd_filters,
    "eval": _cmd_eval,
    "decay": _cmd_decay,
    "norm": _cmd_norm,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "bernstein": _cmd_bernstein,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
