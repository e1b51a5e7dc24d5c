"""Command-line interface: every public operation with structured output.

Rational inputs are "p/q" strings (floats are accepted only for gamma --k).
Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
Output is text, json or csv via --format; RWEIS_THREADS overrides --threads.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction

from . import _kernels
from .arith import dedekind_sum, dedekind_sum_naive, e_of, kronecker
from .cover import lift
from .eisenstein import EisensteinParams, qexpansion
from .eta import eta_quotient_series, order_at_cusp
from .gamma import GammaRequest, gamma_series
from .multiplier import (
    EtaQuotientSpec,
    PrimeLevelSpec,
    chi_general,
    chi_integer,
    chi_special,
    special_matrix,
)
from . import verify as verify_mod

FORMATS = ("text", "json", "csv")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def parse_exponents(text: str) -> dict:
    """Parse "1:9,3:-3" into {1: Fraction(9), 3: Fraction(-3)}."""
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        n, _, r = item.partition(":")
        out[int(n.strip())] = parse_rational(r.strip())
    if not out:
        raise ValueError("empty exponent map")
    return out


def _emit(payload: dict, rows_key, fmt: str, text_lines) -> str:
    if fmt == "json":
        return json.dumps(payload)
    if fmt == "csv":
        import csv

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows_key and payload.get(rows_key):
            rows = payload[rows_key]
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(row.values())
        else:
            flat = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
            writer.writerow(flat.keys())
            writer.writerow(flat.values())
        return buf.getvalue().rstrip("\n")
    return "\n".join(text_lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rweis", description=__doc__)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--precision", type=int, default=53, help="working precision in bits")
    p.add_argument("--threads", type=int, default=0, help="worker threads (0 = all cores)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dedekind", help="Dedekind sum s(h,k)")
    d.add_argument("--h", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--naive", action="store_true", help="use the O(k) direct sum")

    kr = sub.add_parser("kronecker", help="Kronecker-Jacobi symbol (a|n)")
    kr.add_argument("--a", type=int, required=True)
    kr.add_argument("--n", type=int, required=True)

    et = sub.add_parser("eta", help="exact eta-quotient q-expansion")
    et.add_argument("--level", type=int, required=True)
    et.add_argument("--exp", required=True, help='exponent map, e.g. "1:9,3:-3"')
    et.add_argument("--terms", type=int, required=True, help="number of coefficients")

    order = sub.add_parser("order", help="order of an eta-quotient at a cusp")
    order.add_argument("--level", type=int, required=True)
    order.add_argument("--exp", required=True)
    order.add_argument("--cusp", required=True, help="cusp a/c, e.g. 1/3")

    chi = sub.add_parser("chi", help="multiplier-system value")
    chi.add_argument("--p", type=int, required=True)
    chi.add_argument("--r1", required=True)
    chi.add_argument("--rp", required=True)
    chi.add_argument("--matrix", help="a,b,c,d")
    chi.add_argument("--formula", choices=("general", "special", "integer"), default="general")
    chi.add_argument("--family", type=int, help="special-formula family 1..4")
    chi.add_argument("--t", type=int, help="special-formula parameter t")

    eis = sub.add_parser("eis", help="Eisenstein series Fourier coefficients")
    eis.add_argument("--p", type=int, required=True)
    eis.add_argument("--r1", required=True)
    eis.add_argument("--rp", required=True)
    eis.add_argument("--k", required=True)
    eis.add_argument("--cusp", choices=("infty", "one"), default="infty")
    eis.add_argument("--n-max", type=int, default=5)
    eis.add_argument("--c-max", type=int, default=2000)

    g = sub.add_parser("gamma", help="Gamma(k) by the exponential-sum series")
    g.add_argument("--k", required=True, help="rational p/q or float")
    g.add_argument("--route", choices=("p2", "p3", "auto"), default="auto")
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--c-max", type=int, default=2000)
    g.add_argument("--extrapolate", action="store_true")

    v = sub.add_parser("verify", help="check one of the identities")
    v.add_argument(
        "--identity",
        required=True,
        choices=("thm71", "thm72", "carlitz", "classical", "gamma-examples"),
    )
    v.add_argument("--p", type=int, default=3)
    v.add_argument("--n1", default="1")
    v.add_argument("--n-inf", default="1")
    v.add_argument("--k", default="4")
    v.add_argument("--r1", default="8")
    v.add_argument("--rp", default="8")
    v.add_argument("--n-max", type=int, default=5)
    v.add_argument("--c-max", type=int, default=2000)
    v.add_argument("--tol", type=float, default=1e-3)
    return p


def _cmd_dedekind(args) -> tuple[str, bool]:
    fn = dedekind_sum_naive if args.naive else dedekind_sum
    value = fn(args.h, args.k)
    payload = {"h": args.h, "k": args.k, "naive": args.naive, "value": str(value)}
    return _emit(payload, None, args.format, [str(value)]), False


def _cmd_kronecker(args) -> tuple[str, bool]:
    value = kronecker(args.a, args.n)
    payload = {"a": args.a, "n": args.n, "value": value}
    return _emit(payload, None, args.format, [str(value)]), False


def _eta_spec(args) -> EtaQuotientSpec:
    return EtaQuotientSpec(args.level, parse_exponents(args.exp))


def _cmd_eta(args) -> tuple[str, bool]:
    if args.terms < 1:
        raise ValueError("--terms must be positive")
    spec = _eta_spec(args)
    series = eta_quotient_series(spec, max(args.terms - 1, 1))
    coeffs = [str(c) for c in series.coeffs[: args.terms]]
    payload = {"offset": str(series.offset), "coeffs": coeffs}
    text = [f"offset {series.offset}", "coeffs " + ", ".join(coeffs)]
    return _emit(payload, None, args.format, text), False


def _cmd_order(args) -> tuple[str, bool]:
    a, _, c = args.cusp.partition("/")
    value = order_at_cusp(_eta_spec(args), int(a), int(c or "1"))
    payload = {"cusp": args.cusp, "order": str(value)}
    return _emit(payload, None, args.format, [str(value)]), False


def _cmd_chi(args) -> tuple[str, bool]:
    spec = PrimeLevelSpec(args.p, parse_rational(args.r1), parse_rational(args.rp))
    if args.formula == "special":
        if args.family is None or args.t is None:
            raise ValueError("--formula special needs --family and --t")
        phase = chi_special(spec, args.family, args.t)
        matrix = special_matrix(args.p, args.family, args.t)
    else:
        if not args.matrix:
            raise ValueError("--matrix a,b,c,d is required")
        matrix = tuple(int(x) for x in args.matrix.split(","))
        if len(matrix) != 4:
            raise ValueError("--matrix needs four integers a,b,c,d")
        g = lift(*matrix, spec.cover_order if args.formula == "general" else 2)
        if args.formula == "general":
            phase = chi_general(spec.eta_spec(), g)
        else:
            phase = chi_integer(spec, g)
    z = e_of(phase, args.precision)
    payload = {
        "matrix": list(matrix),
        "formula": args.formula,
        "phase": str(phase.value),
        "re": float(z.re),
        "im": float(z.im),
    }
    text = [f"phase {phase.value}", f"value {float(z.re):.15g}{float(z.im):+.15g}i"]
    return _emit(payload, None, args.format, text), False


def _cmd_eis(args) -> tuple[str, bool]:
    spec = PrimeLevelSpec(args.p, parse_rational(args.r1), parse_rational(args.rp))
    params = EisensteinParams(
        spec, parse_rational(args.k), args.cusp, args.c_max, args.precision
    )
    rows = [r.to_json_dict() for r in qexpansion(params, args.n_max)]
    payload = {"p": args.p, "r1": args.r1, "rp": args.rp, "k": args.k,
               "cusp": args.cusp, "c_max": args.c_max, "rows": rows}
    text = [
        f"n={r['n']}: {r['re']:.12g}{r['im']:+.3g}i (tail {r['tail_bound']:.3g})"
        for r in rows
    ]
    return _emit(payload, "rows", args.format, text), False


def _cmd_gamma(args) -> tuple[str, bool]:
    text_k = args.k
    # "p/q" and plain integers are exact; decimal or exponent notation is the
    # real-argument route
    if "." in text_k or "e" in text_k.lower():
        k = float(text_k)
    else:
        k = Fraction(text_k)
    req = GammaRequest(k, route=args.route, n_choice=args.n, c_max=args.c_max,
                       precision=args.precision, extrapolate=args.extrapolate)
    value = gamma_series(req)
    from .gamma import gamma_reduce

    _, _, route = gamma_reduce(k, args.route)
    payload = {
        "k": text_k,
        "route": route,
        "n": args.n,
        "value_re": float(value.re),
        "value_im": float(value.im),
        "tail_bound": value.err,
        "extrapolated": args.extrapolate,
        "c_max": args.c_max,
    }
    text = [f"Gamma({text_k}) = {float(value.re):.12g}{float(value.im):+.3g}i "
            f"(tail {value.err:.3g}, route {route})"]
    return _emit(payload, None, args.format, text), False


def _cmd_verify(args) -> tuple[str, bool]:
    ident = args.identity
    if ident == "thm71":
        report = verify_mod.verify_thm71(args.p, parse_rational(args.n1), args.n_max,
                                         args.c_max, args.tol, args.precision)
    elif ident == "thm72":
        report = verify_mod.verify_thm72(args.p, parse_rational(args.n_inf), args.n_max,
                                         args.c_max, args.tol, args.precision)
    elif ident == "carlitz":
        report = verify_mod.verify_carlitz(args.n_max)
    elif ident == "classical":
        report = verify_mod.verify_classical(
            args.p, int(args.k), parse_rational(args.r1), parse_rational(args.rp),
            args.n_max, args.c_max, args.tol, args.precision)
    else:
        report = verify_mod.verify_gamma_examples(args.c_max, args.tol,
                                                  precision=args.precision)
    payload = report.to_json_dict()
    return _emit(payload, "rows", args.format, [str(report)]), report.verdict != "pass"


_DISPATCH = {
    "dedekind": _cmd_dedekind,
    "kronecker": _cmd_kronecker,
    "eta": _cmd_eta,
    "order": _cmd_order,
    "chi": _cmd_chi,
    "eis": _cmd_eis,
    "gamma": _cmd_gamma,
    "verify": _cmd_verify,
}


_VALUE_FLAGS = {"--r1", "--rp", "--n1", "--n-inf", "--k", "--exp"}


def _merge_negative_values(argv):
    """Join "--rp -4/9" into "--rp=-4/9" so argparse accepts negatives."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.precision < 24:
        print("error: --precision must be at least 24 bits", file=sys.stderr)
        return 2
    if args.threads and "RWEIS_THREADS" not in os.environ:
        os.environ["RWEIS_THREADS"] = str(args.threads)
        _kernels.apply_threads(args.threads)
    try:
        out, failed = _DISPATCH[args.command](args)
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 1 if failed else 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
