"""Command-line front end: ``eval``, ``verify`` and ``mahler``.

Every subcommand writes a JSON array of records (stdout, or ``--out``) and a
plain-text table (stderr when JSON goes to stdout).  Exit status is 0 when
every record passes, 1 on a verification failure, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import arith, eulersums, identities, mahler, special
from .eulersums import SumSpec
from .identities import ChainStep, IdentityReport
from .precision import BigComplex, BigReal, PrecisionContext, PrecisionError, format_fixed

DEFAULT_DIGITS = 30
DIGITS_RANGE = (10, 200)
ENV_DIGITS = "EULERSUM_DIGITS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

EVAL_NAMES = ("zeta", "beta", "hurwitz", "S", "li", "li4", "colored", "bernoulli", "euler0")

IDENTITY_IDS = ("thm1", "bbb", "ms", "prop1", "prop2", "kernel", "lemma", "eq1", "chain", "twist", "mahler_identity")

# default parameter grids
THM1_M = (1, 3, 5, 7, 9)
EQ1_M = (1, 3, 5)
CHAIN_M = (3, 5)
CHAIN_K = (1, 2, 3, 4)
LEMMA_H = tuple(range(11))
MS_GRID = [(s, x) for s in (2, 3, 4) for x in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))]
PROP1_X = (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 3))
PROP1_GRID = [(s, t, x) for s in (1, 2, 3) for t in (1, 2, 3) for x in PROP1_X]
PROP2_GRID = [(s, k, x) for s, k in ((2, 1), (3, 2), (3, 1)) for x in (Fraction(1, 4), Fraction(1, 2))]
KERNEL_GRID = [(n, s, t, x) for n in range(1, 5) for s in range(1, 5) for t in range(1, 5) for x in PROP1_X]
TWIST_GRID = ((1, 1), (1, 3), (2, 1), (2, 2))


class UsageError(ValueError):
    pass


# -- argument handling ---------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _id_list(text: str) -> list[str]:
    ids = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in ids if v not in IDENTITY_IDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown identity id(s) {bad}; choose from {', '.join(IDENTITY_IDS)}")
    return ids


def resolve_digits(flag: int | None, env=os.environ) -> int:
    """Flag beats ``EULERSUM_DIGITS``, which beats the default of 30."""
    if flag is not None:
        digits = flag
    elif env.get(ENV_DIGITS):
        try:
            digits = int(env[ENV_DIGITS])
        except ValueError:
            raise UsageError(f"{ENV_DIGITS} must be an integer, got {env[ENV_DIGITS]!r}") from None
    else:
        digits = DEFAULT_DIGITS
    lo, hi = DIGITS_RANGE
    if not lo <= digits <= hi:
        raise UsageError(f"digits must lie in [{lo}, {hi}], got {digits}")
    return digits


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulersum", description="Evaluate and verify alternating Euler sums.")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one sum or special function")
    ev.add_argument("name", choices=EVAL_NAMES)
    ev.add_argument("params", nargs="*", help="positional parameters of the function")
    ev.add_argument("--digits", type=int)
    ev.add_argument("--out")

    ve = sub.add_parser("verify", help="run identity checks")
    ve.add_argument("--only", type=_id_list, help="comma-separated identity ids")
    ve.add_argument("--digits", type=int)
    ve.add_argument("--out")
    ve.add_argument("--m", type=_int_list, help="m values for thm1, eq1 and chain")
    ve.add_argument("--h", type=_int_list, help="h values for lemma")
    ve.add_argument("--max-weight", type=int, default=9, help="largest n+m for bbb")

    ma = sub.add_parser("mahler", help="quasi-Monte Carlo Mahler measure estimate")
    ma.add_argument("--samples", type=int, default=4_000_000)
    ma.add_argument("--seed", type=int, default=0)
    ma.add_argument("--generator", choices=[g.value for g in mahler.Generator], default="low_discrepancy")
    ma.add_argument("--sanity", choices=mahler.SANITY_MODES)
    ma.add_argument("--digits", type=int)
    ma.add_argument("--out")
    return p


# -- eval ----------------------------------------------------------------------

def _need(params, count, usage):
    if len(params) != count:
        raise UsageError(f"expected {count} parameter(s): {usage}")


def _to_int(v: str) -> int:
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"expected an integer, got {v!r}") from None


def _to_frac(v: str) -> Fraction:
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a rational number, got {v!r}") from None


def _value_field(v, digits: int):
    if isinstance(v, BigComplex):
        return {"re": format_fixed(v.re.value, digits), "im": format_fixed(v.im.value, digits)}, v.err
    if isinstance(v, BigReal):
        return format_fixed(v.value, digits), v.err
    return str(v), 0.0


def run_eval(name: str, params: list[str], digits: int) -> dict:
    ctx = PrecisionContext(digits)
    trunc: dict = {}
    args: list = []
    if name in ("zeta", "beta", "S", "bernoulli", "euler0"):
        _need(params, 1, f"{name} <integer>")
        n = _to_int(params[0])
        args = [n]
        if name == "zeta":
            value = special.zeta_int(n, ctx)
        elif name == "beta":
            value = special.beta_dirichlet(n, ctx)
        elif name == "S":
            value, trunc = eulersums.sum_S(n, ctx, with_info=True)
        elif name == "bernoulli":
            value = arith.bernoulli(n)
        else:
            value = arith.euler_poly_zero(n)
    elif name == "hurwitz":
        _need(params, 2, "hurwitz <s> <x>")
        s, x = _to_int(params[0]), _to_frac(params[1])
        args = [s, str(x)]
        value = special.hurwitz_zeta(s, x, ctx)
    elif name == "colored":
        _need(params, 2, "colored <n> <m>")
        n, m = _to_int(params[0]), _to_int(params[1])
        args = [n, m]
        value, trunc = eulersums.sum_colored(n, m, ctx, with_info=True)
    else:
        _need(params, 4, f"{name} <n> <m> <outer twist> <inner twist>")
        n, m = _to_int(params[0]), _to_int(params[1])
        spec = SumSpec.of(n, m, params[2], params[3])
        args = [n, m, eulersums.twist_label(spec.outer_twist), eulersums.twist_label(spec.inner_twist)]
        fn = eulersums.sum_li_pm if name == "li" else eulersums.sum_li_quartic
        value, trunc = fn(spec, ctx, with_info=True)
    text, err = _value_field(value, digits)
    return {
        "command": "eval",
        "params": {"name": name, "args": args},
        "digits": digits,
        "value": text,
        "err_bound": f"{err:.3g}",
        "pass": True,
        "truncation": trunc,
    }


# -- verify --------------------------------------------------------------------

def verify_plan(only=None, m_values=None, h_values=None, max_weight: int = 9):
    """Deterministic list of ``(identity_id, callable(ctx))`` in enumeration order."""
    ids = only or IDENTITY_IDS
    plan = []

    def add(ident, fn, *a, **kw):
        plan.append((ident, lambda ctx: fn(*a, ctx, **kw)))

    for ident in IDENTITY_IDS:
        if ident not in ids:
            continue
        if ident == "thm1":
            for m in m_values or THM1_M:
                add(ident, identities.thm1_check, m)
        elif ident == "bbb":
            for g in identities.bbb_grid(max_weight):
                add(ident, identities.bbb_check, *g)
        elif ident == "ms":
            for s, x in MS_GRID:
                add(ident, identities.ms_check, s, x)
        elif ident == "prop1":
            for s, t, x in PROP1_GRID:
                add(ident, identities.prop1_check, s, t, x)
        elif ident == "prop2":
            for s, k, x in PROP2_GRID:
                add(ident, identities.prop2_check, s, k, x)
        elif ident == "kernel":
            for n, s, t, x in KERNEL_GRID:
                add(ident, identities.kernel_check, n, s, t, x)
        elif ident == "lemma":
            for h in h_values if h_values is not None else LEMMA_H:
                add(ident, identities.lemma_check, h)
        elif ident == "eq1":
            for m in m_values or EQ1_M:
                add(ident, identities.eq1_check, m)
        elif ident == "chain":
            for m in m_values or CHAIN_M:
                for step in ChainStep:
                    if step is ChainStep.TERM_ZETA2K:
                        for k in CHAIN_K:
                            add(ident, identities.chain_check, m, step, k=k)
                    else:
                        add(ident, identities.chain_check, m, step)
        elif ident == "twist":
            for n, m in TWIST_GRID:
                add(ident, identities.twist_check, n, m)
        elif ident == "mahler_identity":
            add(ident, mahler.mahler_identity_check)
    return plan


def _report_record(rep: IdentityReport) -> dict:
    rec = rep.to_record()
    return {"command": "verify", **rec}


def run_verify(plan, digits: int) -> list[dict]:
    ctx = PrecisionContext(digits)
    records = []
    for ident, job in plan:
        t0 = time.perf_counter()
        try:
            rec = _report_record(job(ctx))
        except PrecisionError as exc:
            # truncation failure: reported, never silently dropped
            rec = {"command": "verify", "identity_id": ident, "params": {}, "digits": digits,
                   "lhs": None, "rhs": None, "abs_diff": None, "digits_agreed": 0, "pass": False,
                   "truncation": {"error": str(exc)}}
        rec["wall_time_ms"] = round(1000 * (time.perf_counter() - t0), 1)
        records.append(rec)
    return records


# -- mahler --------------------------------------------------------------------

# double-precision round-off floor for the degenerate sanity integrands
SANITY_FLOOR = 1e-12


def run_mahler(samples: int, seed: int, generator: str, sanity: str | None, digits: int) -> dict:
    cfg = mahler.TorusSampleConfig(samples, seed, generator)
    est = mahler.mahler_qmc(cfg, sanity=sanity)
    if sanity == "constant2":
        target, floor = math.log(2.0), SANITY_FLOOR
    elif sanity == "monomial":
        target, floor = 0.0, SANITY_FLOOR
    else:
        target, floor = float(mahler.closed_form_mean(PrecisionContext(digits)).value), 0.0
    dev = est.mean - target
    z = dev / est.std_error if est.std_error > 0 else (0.0 if dev == 0 else float("inf"))
    passed = abs(dev) <= max(3 * est.std_error, floor)
    return {
        "command": "mahler",
        "params": {"samples": samples, "seed": seed, "generator": generator, "sanity": sanity},
        "digits": digits,
        "value": {"mean": repr(est.mean), "std_error": repr(est.std_error),
                  "samples_used": est.samples_used, "rejected": est.rejected},
        "target": repr(target),
        "z_score": repr(z),
        "pass": bool(passed),
        "truncation": {},
    }


# -- output --------------------------------------------------------------------

def _short(v, width=24):
    if isinstance(v, dict):
        v = f"{v.get('re')}{'+' if not str(v.get('im', '')).startswith('-') else ''}{v.get('im')}i"
    s = "" if v is None else str(v)
    return s if len(s) <= width else s[: width - 3] + "..."


def format_table(records: list[dict]) -> str:
    lines = []
    for r in records:
        if r["command"] == "verify":
            params = ",".join(f"{k}={v}" for k, v in r["params"].items())
            lines.append(f"{'PASS' if r['pass'] else 'FAIL'}  {r['identity_id']:<16} {params:<32} "
                         f"agreed={r['digits_agreed']:<3} diff={r['abs_diff']}")
        elif r["command"] == "eval":
            args = " ".join(str(a) for a in r["params"]["args"])
            val = r["value"]
            if isinstance(val, dict):
                val = f"{val['re']} + ({val['im']})i"
            lines.append(f"{r['params']['name']}({args}) = {val}  [err <= {r['err_bound']}]")
        else:
            v = r["value"]
            lines.append(f"{'PASS' if r['pass'] else 'FAIL'}  mean={float(v['mean']):.6f} +- "
                         f"{float(v['std_error']):.2e}  target={float(r['target']):.6f}  "
                         f"z={float(r['z_score']):.2f}  n={v['samples_used']} rejected={v['rejected']}")
    if any(r["command"] == "verify" for r in records):
        fails = sum(not r["pass"] for r in records)
        lines.append(f"{len(records) - fails}/{len(records)} passed")
    return "\n".join(lines)


def dump_json(records: list[dict]) -> str:
    return json.dumps(records, indent=2, ensure_ascii=False) + "\n"


def _emit(records: list[dict], out: str | None):
    text = dump_json(records)
    table = format_table(records)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(table)
    else:
        sys.stdout.write(text)
        print(table, file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["eval"]:
        # a bare "-i" twist would otherwise be taken for an option flag
        argv = [" -i" if a == "-i" else a for a in argv]
    args = parser.parse_args(argv)
    try:
        digits = resolve_digits(args.digits)
        t0 = time.perf_counter()
        if args.command == "eval":
            records = [run_eval(args.name, args.params, digits)]
        elif args.command == "verify":
            plan = verify_plan(args.only, args.m, args.h, args.max_weight)
            records = run_verify(plan, digits)
        else:
            records = [run_mahler(args.samples, args.seed, args.generator, args.sanity, digits)]
        if args.command != "verify":
            records[0]["wall_time_ms"] = round(1000 * (time.perf_counter() - t0), 1)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"eulersum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except mahler.SamplerDefectError as exc:
        print(f"eulersum: sampler defect: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PrecisionError as exc:
        print(f"eulersum: precision failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(records, args.out)
    return EXIT_OK if all(r["pass"] for r in records) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
