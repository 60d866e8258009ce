"""Command-line front end: single approximation, diagnostics, sweep CSVs in
the style of the condition-number experiments, and certification reports.

Subcommands: approximate, diagnose, sweep, certify.  Coefficients come from
a built-in family (--fn f1|f2|f3, seeded for f3) or a file (--coeffs) holding
either a JSON array of [re, im] pairs or plain text with one `re im` pair per
line.  Sweeps emit RFC-4180-style CSV with the fixed header

    n,kappa_C,kappa_T,kappa_Q,kappa_S,forward,backward,inv_froissart,inv_residual,suspect

where non-finite or undefined cells are empty strings.  Exit codes: 0 on
success, 1 on numerical failure (rank deficiency where a value was
required), 2 on usage or I/O errors.  PADE_GUARD_THREADS caps sweep
parallelism.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

from . import ngcd, testfns
from .conditioning import diagnostics, verify_norm_sandwiches
from .numerics import RankDeficientError
from .pade import pade, robust_pade, scale_input
from .spurious import certify_froissart, certify_residuals, spurious_report

CSV_HEADER = "n,kappa_C,kappa_T,kappa_Q,kappa_S,forward,backward,inv_froissart,inv_residual,suspect"

# A sweep row is marked suspect when rounding plausibly dominates the result:
# kappa(T) leaves fewer than two significant digits in double precision, the
# realized order-condition residual is far above kernel accuracy, or the
# result is numerically degenerate / rank deficient.
SUSPECT_KAPPA_T = 0.01 / np.finfo(float).eps
SUSPECT_T_RESIDUAL = 1e-6


def _read_coeffs(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        data = json.loads(text)
        out = []
        for item in data:
            if isinstance(item, (int, float)):
                out.append(complex(item))
            else:
                re_part, im_part = item
                out.append(complex(re_part, im_part))
        return np.asarray(out, dtype=np.complex128)
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            out.append(complex(float(parts[0]), 0.0))
        else:
            out.append(complex(float(parts[0]), float(parts[1])))
    if not out:
        raise ValueError(f"no coefficients found in {path}")
    return np.asarray(out, dtype=np.complex128)


# Friendly aliases on top of the canonical f1|f2|f3 family names.
_FAMILY_ALIASES = {"stieltjes": "f1", "exp": "f2", "randn": "f3"}


def _family(name: str) -> str:
    return _FAMILY_ALIASES.get(name, name)


def _series(args, count: int) -> np.ndarray:
    if args.coeffs:
        return _read_coeffs(args.coeffs)
    fn = _family(args.fn)
    if fn == "f1":
        return testfns.taylor_f1(count)
    if fn == "f2":
        return testfns.taylor_f2(count)
    if fn == "f3":
        return testfns.taylor_f3(count, args.seed)
    raise ValueError("provide --fn or --coeffs")


def _jnum(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def _jcomplex(v) -> list:
    v = complex(v)
    return [v.real, v.imag]


def _jvec(arr) -> list:
    return [_jcomplex(v) for v in np.asarray(arr)]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _approx_payload(res) -> dict:
    return {
        "m": res.m,
        "n": res.n,
        "p": _jvec(res.x.p_vec),
        "q": _jvec(res.x.q_vec),
        "defect": res.defect,
        "degenerate": res.degenerate,
        "sigma_n": _jnum(res.sigma_n),
        "sigma_n1": _jnum(res.sigma_n1),
        "sigma_1": _jnum(res.sigma_1),
        "t_residual": _jnum(res.t_residual),
        "scale_a": _jcomplex(res.scaling[0]),
        "scale_b": _jcomplex(res.scaling[1]),
        "fallback_truncation": res.fallback_truncation,
    }


def _approx_text(res) -> str:
    lines = [
        f"[{res.m}|{res.n}] approximant of the scaled series (a, b) = ({res.scaling[0]:.6g}, {res.scaling[1]:.6g})",
        "p: " + "  ".join(f"{v:.17g}" for v in res.x.p_vec),
        "q: " + "  ".join(f"{v:.17g}" for v in res.x.q_vec),
        f"defect: {res.defect}   degenerate: {res.degenerate}",
        f"sigma_n: {res.sigma_n:.6g}   sigma_n+1: {res.sigma_n1:.6g}   ||Tx||: {res.t_residual:.3g}",
    ]
    if res.fallback_truncation:
        lines.append("note: degree reduction exhausted; polynomial truncation returned")
    return "\n".join(lines) + "\n"


def _compute_result(args):
    count = args.m + args.n + 1
    c_raw = _series(args, count)
    if args.robust is not None:
        return robust_pade(c_raw, args.m, args.n, args.robust)
    return pade(c_raw, args.m, args.n)


def cmd_approximate(args) -> int:
    res = _compute_result(args)
    if args.format == "json":
        _emit(args, json.dumps(_approx_payload(res), indent=2) + "\n")
    else:
        _emit(args, _approx_text(res))
    return 0


def cmd_diagnose(args) -> int:
    res = _compute_result(args)
    d = diagnostics(res.scaled_input, res)
    payload = {
        "approximant": _approx_payload(res),
        "kappa_C": _jnum(d.kappa_C),
        "kappa_T": _jnum(d.kappa_T),
        "kappa_Q": _jnum(d.kappa_Q),
        "kappa_S": _jnum(d.kappa_S),
        "forward": _jnum(d.forward),
        "backward": _jnum(d.backward),
        "flags": list(d.flags),
    }
    if not res.degenerate:
        sandwich = verify_norm_sandwiches(res.scaled_input, res)
        payload["sandwich_slacks"] = {e.name: _jnum(e.slack) for e in sandwich.entries}
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2) + "\n")
        return 0
    lines = [_approx_text(res).rstrip("\n")]
    lines.append(
        f"kappa(C)={d.kappa_C:.6g}  kappa(T)={d.kappa_T:.6g}  kappa(Q)={d.kappa_Q:.6g}  kappa(S)={d.kappa_S:.6g}"
    )
    lines.append(f"forward ||T+Q||={d.forward:.6g}   backward ||Q^-1 T||={d.backward:.6g}")
    if d.flags:
        lines.append("flags: " + ", ".join(d.flags))
    if "sandwich_slacks" in payload:
        lines.append(f"min sandwich slack: {min(v for v in payload['sandwich_slacks'].values()):.3g}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _suspect(d, res) -> bool:
    if res.degenerate or any(f.startswith("rank_deficient") or f == "singular_Q" for f in d.flags):
        return True
    if math.isfinite(d.kappa_T) and d.kappa_T > SUSPECT_KAPPA_T:
        return True
    return res.t_residual > SUSPECT_T_RESIDUAL


def sweep_rows(family: str, N: int, seed: int = 0) -> list:
    """Subdiagonal sweep m = n - 1 for n = 1..N; one dict per row.

    The full 2N-coefficient series is generated once and each row uses its
    leading window, so rows share a single underlying function.
    """
    if family == "f1":
        c_full = testfns.taylor_f1(2 * N)
    elif family == "f2":
        c_full = testfns.taylor_f2(2 * N)
    elif family == "f3":
        c_full = testfns.taylor_f3(2 * N, seed)
    else:
        raise ValueError(f"unknown family {family!r}")

    def one(n: int) -> dict:
        m = n - 1
        res = pade(c_full[: m + n + 1], m, n)
        d = diagnostics(res.scaled_input, res)
        rep = spurious_report(res.r, d.kappa_S)
        inv_froissart = 1.0 / rep.froissart if rep.froissart not in (0.0, math.inf) else math.inf
        inv_residual = 1.0 / rep.min_residual if rep.min_residual not in (0.0, math.inf) else math.inf
        return {
            "n": n,
            "kappa_C": d.kappa_C,
            "kappa_T": d.kappa_T,
            "kappa_Q": d.kappa_Q,
            "kappa_S": d.kappa_S,
            "forward": d.forward,
            "backward": d.backward,
            "inv_froissart": inv_froissart,
            "inv_residual": inv_residual,
            "suspect": _suspect(d, res),
            # extra fields for programmatic use; not part of the CSV schema
            "result": res,
            "report": rep,
            "diagnostics": d,
        }

    workers = os.environ.get("PADE_GUARD_THREADS")
    max_workers = int(workers) if workers else min(8, os.cpu_count() or 1)
    if max_workers <= 1:
        return [one(n) for n in range(1, N + 1)]
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(one, range(1, N + 1)))


def _cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if not math.isfinite(v):
        return ""
    return repr(v)


def rows_to_csv(rows: list) -> str:
    out = [CSV_HEADER]
    for row in rows:
        out.append(
            ",".join(
                _cell(row[k])
                for k in (
                    "n",
                    "kappa_C",
                    "kappa_T",
                    "kappa_Q",
                    "kappa_S",
                    "forward",
                    "backward",
                    "inv_froissart",
                    "inv_residual",
                    "suspect",
                )
            )
        )
    return "\r\n".join(out) + "\r\n"


def cmd_sweep(args) -> int:
    rows = sweep_rows(_family(args.fn), args.N, args.seed)
    _emit(args, rows_to_csv(rows))
    return 0


def _certificate_payload(cert) -> dict:
    return {
        "status": cert.status,
        "bound": _jnum(cert.bound),
        "observed": _jnum(cert.observed),
        "hypothesis_value": _jnum(cert.hypothesis_value),
        "hypothesis_limit": _jnum(cert.hypothesis_limit),
        "kappa_S": _jnum(cert.kappa_s),
    }


def cmd_certify(args) -> int:
    res = _compute_result(args)
    m, n = res.m, res.n
    d = diagnostics(res.scaled_input, res)
    rep = spurious_report(res.r, d.kappa_S)
    cert_f = certify_froissart(res.r)
    cert_r = certify_residuals(res.r)
    lemma5 = ngcd.verify_ngcd_froissart(res.r.p, res.r.q)
    lemma7 = ngcd.verify_lemma_CM(res.scaled_input, m, n) if n >= 1 else None
    gcd = ngcd.ngcd_result(res.r.p, res.r.q, res.scaled_input, m, n) if m + n >= 1 else None

    payload = {
        "approximant": _approx_payload(res),
        "degenerate": res.degenerate,
        "zeros": _jvec(rep.zeros),
        "poles": _jvec(rep.poles),
        "n_poles_closed_disk": rep.n_poles_closed,
        "n_poles_open_disk": rep.n_poles_open,
        "froissart": _jnum(rep.froissart),
        "min_residual": _jnum(rep.min_residual),
        "froissart_certificate": _certificate_payload(cert_f),
        "residual_certificate": _certificate_payload(cert_r),
        "lemma5_margin": _jnum(lemma5.margin),
    }
    if gcd is not None:
        payload["epsilon_gcd"] = _jnum(gcd.epsilon)
        payload["kappa_BL"] = _jnum(gcd.kappa_BL)
        payload["kappa_CM"] = _jnum(gcd.kappa_CM)
    if lemma7 is not None:
        payload["lemma7"] = {
            "inconclusive": lemma7.inconclusive,
            "margin_i": _jnum(lemma7.margin_i),
            "margin_ii": _jnum(lemma7.margin_ii),
            "margin_iii": _jnum(lemma7.margin_iii),
            "ratio_iv": _jnum(lemma7.ratio_iv) if lemma7.ratio_iv is not None else None,
        }

    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2) + "\n")
        return 0

    lines = [_approx_text(res).rstrip("\n")]
    lines.append(f"poles in closed disk: {rep.n_poles_closed}   open disk: {rep.n_poles_open}")
    lines.append(
        f"froissart certificate: {cert_f.status}"
        + (f" (observed {cert_f.observed:.3g} >= bound {cert_f.bound:.3g})" if cert_f.active else "")
    )
    lines.append(
        f"residual certificate:  {cert_r.status}"
        + (f" (observed {cert_r.observed:.3g} >= bound {cert_r.bound:.3g})" if cert_r.active else "")
    )
    lines.append(f"numerical-GCD lemma margin: {lemma5.margin:.6g}")
    if lemma7 is not None and not lemma7.inconclusive:
        lines.append(
            "kappa_CM margins: "
            f"(i) {lemma7.margin_i:.3g}  (ii) {lemma7.margin_ii:.3g}  (iii) {lemma7.margin_iii:.3g}"
        )
    if gcd is not None:
        lines.append(f"epsilon(p,q) = {gcd.epsilon:.6g}   kappa_BL = {gcd.kappa_BL:.6g}   kappa_CM = {gcd.kappa_CM:.6g}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


_FAMILY_CHOICES = ["f1", "f2", "f3", "stieltjes", "exp", "randn"]


def _add_io_options(sub, need_degrees=True):
    sub.add_argument("--fn", choices=_FAMILY_CHOICES, help="built-in series family")
    sub.add_argument("--coeffs", help="path to a coefficient file (JSON pairs or 're im' lines)")
    sub.add_argument("--seed", type=int, default=0, help="seed for --fn f3")
    sub.add_argument("--out", help="output path (default stdout)")
    if need_degrees:
        sub.add_argument("--m", type=int, required=True)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--robust", type=float, default=None, metavar="TOL",
                         help="use the robust degree-reduction loop with this threshold")
        sub.add_argument("--format", choices=["json", "text"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padeguard", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("approximate", help="compute one [m|n] approximant")
    _add_io_options(s)
    s.set_defaults(func=cmd_approximate)

    s = subs.add_parser("diagnose", help="condition numbers and norm checks")
    _add_io_options(s)
    s.set_defaults(func=cmd_diagnose)

    s = subs.add_parser("sweep", help="subdiagonal sweep CSV (m = n-1, n = 1..N)")
    s.add_argument("--fn", choices=_FAMILY_CHOICES, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="output path (default stdout)")
    s.add_argument("--format", choices=["csv"], default="csv")
    s.set_defaults(func=cmd_sweep)

    s = subs.add_parser("certify", help="spurious-pole certificates and GCD margins")
    _add_io_options(s)
    s.set_defaults(func=cmd_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) in ("approximate", "diagnose", "certify"):
        if not args.coeffs and not args.fn:
            parser.error("one of --fn or --coeffs is required")
        if args.m < 0 or args.n < 0:
            parser.error("--m and --n must be nonnegative")
    try:
        return args.func(args)
    except RankDeficientError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
