"""Command line interface: ``hesse <subcommand> [flags]``.

Output is JSON (sorted keys) by default, CSV with ``--csv``.  Exit codes:
0 success, 2 domain or usage error, 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import mpmath

from .errors import DomainError
from .numerics import PrecisionContext


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    inputs: Dict[str, object]
    outputs: Dict[str, object] = field(default_factory=dict)
    rows: Optional[List[Dict[str, object]]] = None
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0
    ok: bool = True

    def to_dict(self):
        d = {"command": self.command, "inputs": self.inputs, "outputs": self.outputs,
             "notes": self.notes, "timing": {"seconds": f"{self.seconds:.3f}"}}
        if self.rows is not None:
            d["rows"] = self.rows
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows is not None:
            keys = sorted({k for r in self.rows for k in r})
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for r in self.rows:
                w.writerow({k: _flat(r.get(k, "")) for k in keys})
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            for k in sorted(self.outputs):
                w.writerow([k, _flat(self.outputs[k])])
        return buf.getvalue()


def _flat(v):
    if isinstance(v, dict):
        return ";".join(f"{k}={_flat(v[k])}" for k in sorted(v))
    if isinstance(v, list):
        return " | ".join(str(_flat(x)) for x in v)
    return v


# ---------------------------------------------------------------------------
# value formatting


def fmt_num(x, digits: int):
    """Decimal string for reals, {"re", "im"} for complex values."""
    if isinstance(x, Fraction):
        return fmt_frac(x)
    if isinstance(x, (bool, int)):
        return x
    # nstr reads the raw mantissa, so values keep the precision of their own context
    if isinstance(x, complex) or hasattr(x, "_mpc_"):
        return {"re": mpmath.nstr(x.real, digits), "im": mpmath.nstr(x.imag, digits)}
    return mpmath.nstr(x, digits)


def fmt_frac(q: Optional[Fraction]):
    if q is None:
        return None
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_number(s: str, flag: str):
    try:
        s = s.strip()
        if "j" in s or "i" in s:
            return complex(s.replace("i", "j"))
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: cannot parse {s!r} as a number")


def parse_list(s: str, flag: str):
    return [parse_number(x, flag) for x in s.split(",") if x.strip()]


def _real_rational(s: str, flag: str) -> Fraction:
    v = parse_number(s, flag)
    if isinstance(v, complex):
        raise UsageError(f"{flag}: expected a real rational, got {s!r}")
    return v


# ---------------------------------------------------------------------------
# subcommands


def cmd_hyper(args, ctx) -> CommandResult:
    from .hyper import KdfSpec, PfqSpec, kdf, kdf_converges, pfq

    D = args.digits
    if args.kdf:
        params = parse_list(args.kdf, "--kdf")
        if len(params) != 6:
            raise UsageError("--kdf: expected six parameters a,c,b1,b2,d,bp")
        if args.y is None:
            raise UsageError("--y: required with --kdf")
        x, y = parse_number(args.x, "--x"), parse_number(args.y, "--y")
        spec = KdfSpec(*params, x=ctx.convert(x), y=ctx.convert(y))
        res = CommandResult("hyper", {"kdf": args.kdf, "x": args.x, "y": args.y})
        res.outputs["value"] = fmt_num(kdf(spec, ctx), D)
        res.notes.append("Kampe de Feriet double series" +
                         ("" if kdf_converges(spec) else " (boundary)"))
        return res
    if args.upper is None or args.lower is None:
        raise UsageError("--upper/--lower: both are required for pFq (or use --kdf)")
    upper = parse_list(args.upper, "--upper")
    lower = parse_list(args.lower, "--lower")
    x = parse_number(args.x, "--x")
    spec = PfqSpec(tuple(upper), tuple(lower), ctx.convert(x))
    res = CommandResult("hyper", {"upper": args.upper, "lower": args.lower, "x": args.x})
    res.outputs["value"] = fmt_num(pfq(spec, ctx), D)
    res.notes.append(f"{spec.pq[0]}F{spec.pq[1]} series, excess {fmt_frac(spec.excess)}")
    return res


def cmd_periods(args, ctx) -> CommandResult:
    from .periods import period_vector, riemann_defect

    t = parse_number(args.t, "--t")
    pv = period_vector(t, ctx)
    res = CommandResult("periods", {"t": args.t})
    D = args.digits
    res.outputs = {
        "A_omega": fmt_num(pv.A_omega, D), "B_omega": fmt_num(pv.B_omega, D),
        "A_eta": fmt_num(pv.A_eta, D), "B_eta": fmt_num(pv.B_eta, D),
        "riemann_defect": fmt_num(riemann_defect(t, ctx), 5),
    }
    res.notes.append("2F1 period formulas, valid for |t^3| < 1")
    return res


def cmd_regulator(args, ctx) -> CommandResult:
    from . import regulator as R

    mp = ctx.mp
    D = args.digits
    t = parse_number(args.t, "--t")
    res = CommandResult("regulator", {"t": args.t, "element": args.element, "cycle": args.cycle,
                                      "k": args.k})
    el = args.element
    if el == "xi_hesse":
        if isinstance(t, complex):
            raise UsageError("--t: xi_hesse needs real t")
        if args.cycle != "gamma":
            raise UsageError("--cycle: xi_hesse is evaluated on gamma")
        v = R.reg_hesse(t, ctx)
        res.outputs["over_2pi_i"] = fmt_num(v, D)
        res.notes.append("series form" if abs(ctx.convert(t)) <= 1 else "4F3 form with log|t|")
        return res
    cycle = "A" if args.cycle == "gamma" else args.cycle
    if el == "xi_zeta":
        r = R.reg_xi_zeta(t, cycle, ctx)
    elif el == "xi_rho":
        r = R.reg_xi_rho(t, args.k, cycle, ctx)
    elif el == "xi_prime":
        r = R.reg_xi_prime(t, cycle, ctx)
    else:
        raise UsageError(f"--element: unknown element {el!r}")
    if args.cycle == "gamma":
        res.outputs["over_2pi_i"] = fmt_num(R.gamma_value(r, ctx), D)
        res.notes.append("gamma = A - F_inf(A); value Im r(A) / pi")
    else:
        res.outputs["value"] = fmt_num(r, D)
        res.outputs["over_2pi_i"] = fmt_num(r / (2j * mp.pi), D)
        if cycle == "B":
            res.notes.append("B-value is the real part of r(B) / 2 pi i")
    return res


def cmd_qtable(args, ctx) -> CommandResult:
    from .acceptance import CONDUCTOR_BUDGET, QTABLE_CORRECTIONS, QTABLE_PRINTED, q_entry

    if args.from_ > args.to:
        raise UsageError("--from: must not exceed --to")
    res = CommandResult("qtable", {"from": args.from_, "to": args.to})
    rows = []
    for n in range(args.from_, args.to + 1):
        if n in (0, 3):
            continue
        row = {"three_t": n, "t": fmt_frac(Fraction(n, 3))}
        Q, q, N = q_entry(n, ctx, args.cache_dir)
        row["conductor"] = N
        if Q is None:
            row["status"] = f"skipped: conductor above {CONDUCTOR_BUDGET}"
        else:
            row["Q"] = fmt_num(Q, args.digits)
            row["Q_rational"] = fmt_frac(q)
            printed = QTABLE_PRINTED.get(n)
            row["printed"] = fmt_frac(printed)
            if printed is None:
                row["status"] = "no printed value"
            elif q == printed:
                row["status"] = "match"
            elif q == QTABLE_CORRECTIONS.get(n):
                row["status"] = "differs from printed value (known misprint)"
            else:
                row["status"] = "MISMATCH"
                res.ok = False
        rows.append(row)
    res.rows = rows
    res.notes.append("Q_t = reg_hesse(t) pi^2 / L(X_t, 2), L by the approximate functional equation")
    return res


def cmd_lvalue(args, ctx) -> CommandResult:
    from . import lseries as L

    res = CommandResult("lvalue", {"t": args.t, "over_K": args.over_k, "a4": args.a4, "a6": args.a6})
    if args.t is not None:
        t = _real_rational(args.t, "--t")
        data = L.hesse_l_data(t, cache_dir=args.cache_dir)
        if args.over_k:
            twist = L.hesse_l_data(t, twisted=True, cache_dir=args.cache_dir)
            v = L.l_value_quadratic(data, twist, ctx, args.cache_dir)
            res.outputs["twist_conductor"] = twist.conductor
            res.outputs["twist_root_number"] = twist.root_number
            res.notes.append("L over K = L(E, 2) L(E twisted by -3, 2)")
        else:
            v = L.l_value_s2(data, ctx, args.cache_dir)
    elif args.a4 is not None and args.a6 is not None:
        data = L.minimal_model(_real_rational(args.a4, "--a4"), _real_rational(args.a6, "--a6"))
        v = L.l_value_s2(data, ctx, args.cache_dir)
    else:
        raise UsageError("--t: give --t or both --a4 and --a6")
    res.outputs["L2"] = fmt_num(v, args.digits)
    res.outputs["conductor"] = data.conductor
    res.outputs["root_number"] = data.root_number
    res.outputs["minimal_model"] = list(data.a_invariants)
    return res


def cmd_integrality(args, ctx) -> CommandResult:
    from .integrality import is_integral

    t = _real_rational(args.t, "--t")
    verdict = is_integral(t, args.element)
    res = CommandResult("integrality", {"t": args.t, "element": args.element})
    res.outputs["integral"] = verdict.integral
    res.outputs["boundary"] = [
        {"prime": str(rep.v), "case": rep.type, "N": rep.N, "coefficient": fmt_frac(c)}
        for rep, c in verdict.coefficients
    ]
    if verdict.reason:
        res.notes.append(verdict.reason)
    return res


def cmd_mahler(args, ctx) -> CommandResult:
    from .mahler import mahler_measure
    from .regulator import reg_hesse

    t = _real_rational(args.t, "--t")
    m = mahler_measure(t, ctx, allow_boundary=args.allow_boundary)
    r = reg_hesse(t, ctx)
    res = CommandResult("mahler", {"t": args.t, "allow_boundary": args.allow_boundary})
    res.outputs = {
        "mahler_measure": fmt_num(m.value, args.digits),
        "quadrature_error": fmt_num(m.quadrature_error, 3),
        "reg_hesse": fmt_num(r, args.digits),
        "defect": fmt_num(abs(m.value + r), 3),
    }
    if m.boundary:
        res.notes.append("boundary point of K; identity holds by continuity")
    return res


def cmd_regdet(args, ctx) -> CommandResult:
    from . import regulator as R
    from .lseries import hesse_l_value_K

    mp = ctx.mp
    D = args.digits
    res = CommandResult("regdet", {"which": args.which})
    g, b = R.reg_det_parts(args.which, ctx)
    res.outputs["gamma_value"] = fmt_num(g, D)
    res.outputs["B_value"] = fmt_num(b, D)
    res.outputs["from_symbols"] = fmt_num(abs(g * b), D)
    if args.which == "zero":
        closed = R.regulator_zero_closed_form(ctx)
        res.outputs["closed_form"] = fmt_num(closed, D)
        res.outputs["ratio"] = fmt_num(abs(g * b) / closed, D)
        res.outputs["L_j3"] = fmt_num(R.l_j3_closed_form(ctx), D)
        res.notes.append("closed form (27/4 pi^2) X^2; the symbols give half of it, see the README")
    else:
        t = Fraction(-2) if args.which == "minus2" else Fraction(-1, 2)
        LK = hesse_l_value_K(t, ctx, args.cache_dir)
        res.outputs["L_K"] = fmt_num(LK, D)
        res.outputs["R_over_L"] = fmt_num(abs(g * b) * (2 * mp.pi) ** 4 / LK, D)
    return res


def cmd_verify(args, ctx) -> CommandResult:
    from .acceptance import run_suite

    results = run_suite(args.suite, args.cache_dir)
    res = CommandResult("verify", {"suite": args.suite})
    res.rows = [{"criterion": r.number, "name": r.name, "status": "PASS" if r.passed else "FAIL",
                 "detail": r.detail, "seconds": f"{r.seconds:.2f}"} for r in results]
    res.ok = all(r.passed for r in results)
    if not args.csv:
        for r in results:
            print(r.line(), file=sys.stderr)
    return res


COMMANDS = {
    "hyper": cmd_hyper, "periods": cmd_periods, "regulator": cmd_regulator, "qtable": cmd_qtable,
    "lvalue": cmd_lvalue, "integrality": cmd_integrality, "mahler": cmd_mahler,
    "regdet": cmd_regdet, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=30, help="decimal digits of output (>= 15)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--cache-dir", default=None, help="a_p cache directory (default $HESSE_CACHE_DIR)")
    common.add_argument("--max-terms", type=int, default=2_000_000, help="series truncation limit")

    p = argparse.ArgumentParser(prog="hesse", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hyper", parents=[common], help="evaluate pFq or a Kampe de Feriet series")
    s.add_argument("--upper", help="comma separated upper parameters, e.g. 1/3,1/3")
    s.add_argument("--lower", help="comma separated lower parameters")
    s.add_argument("--kdf", help="a,c,b1,b2,d,bp for the double series")
    s.add_argument("--x", required=True)
    s.add_argument("--y")

    s = sub.add_parser("periods", parents=[common], help="periods of omega and eta on A and B")
    s.add_argument("--t", required=True)

    s = sub.add_parser("regulator", parents=[common], help="regulator of a named element")
    s.add_argument("--t", required=True)
    s.add_argument("--element", required=True, choices=["xi_zeta", "xi_rho", "xi_prime", "xi_hesse"])
    s.add_argument("--cycle", default="A", choices=["A", "B", "gamma"])
    s.add_argument("--k", type=int, default=0, help="xi_rho: z = zeta^k")

    s = sub.add_parser("qtable", parents=[common], help="the table of Q_t for integral 3t")
    s.add_argument("--from", dest="from_", type=int, default=-20)
    s.add_argument("--to", type=int, default=20)

    s = sub.add_parser("lvalue", parents=[common], help="L(E, 2) by the functional equation")
    s.add_argument("--t")
    s.add_argument("--over-k", action="store_true", help="L over Q(zeta_3)")
    s.add_argument("--a4")
    s.add_argument("--a6")

    s = sub.add_parser("integrality", parents=[common], help="boundary map verdict")
    s.add_argument("--t", required=True)
    s.add_argument("--element", default="xi_hesse", choices=["xi_hesse", "xi_prime_half", "xi_zeta"])

    s = sub.add_parser("mahler", parents=[common], help="Mahler measure against the regulator")
    s.add_argument("--t", required=True)
    s.add_argument("--allow-boundary", action="store_true")

    s = sub.add_parser("regdet", parents=[common], help="regulator determinants")
    s.add_argument("--which", required=True, choices=["minus2", "minusHalf", "zero"])

    s = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    s.add_argument("--suite", default="core", choices=["fast", "core", "full"])
    return p


_NEGATIVE = re.compile(r"^-[0-9.][0-9./eEji+-]*$")


def _attach_negative_values(argv: List[str]) -> List[str]:
    """Rewrite ``--t -11/9`` as ``--t=-11/9``; argparse would read -11/9 as a flag."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


OUTPUT_SLACK = 5


def run(argv: Optional[List[str]] = None):
    """Parse argv and execute; returns (CommandResult, namespace)."""
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_negative_values(argv))
    if args.cache_dir is None:
        args.cache_dir = os.environ.get("HESSE_CACHE_DIR") or None
    if args.digits < 15:
        raise UsageError("--digits: must be at least 15")
    if args.max_terms < 10:
        raise UsageError("--max-terms: must be at least 10")
    # the context tolerance is 10^-(digits - 5), so compute with 5 extra digits
    ctx = PrecisionContext(args.digits + OUTPUT_SLACK, max_terms=args.max_terms)
    t0 = time.perf_counter()
    res = COMMANDS[args.command](args, ctx)
    res.seconds = time.perf_counter() - t0
    res.inputs["digits"] = args.digits
    return res, args


def main(argv: Optional[List[str]] = None) -> int:
    try:
        res, args = run(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2
        return int(exc.code or 0)
    except (UsageError, DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"hesse: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"hesse: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(res.to_csv() if args.csv else res.to_json() + "\n")
    return 0 if res.ok else 1
