"""jetcalc command line: JSON reports on standard output.

Exit codes: 0 success, 2 input error, 3 budget exhausted (partial output
still printed with "partial": true).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import ResultCache
from .groebner import DEFAULT_BUDGET, BudgetExhausted, ExponentOverflow
from .invariants import (ClosedFormError, InvariantError, JetEngine, ResolutionError, alpha_pq,
                         alpha_table, beta_m, beta_monomial, beta_monomial_limit, beta_table,
                         contact_codim, contact_codim_bruteforce, encode, gamma_estimate,
                         homog_fiber_dims, lci_jet_check, lct_diagonal, lct_estimate, lct_from_resolution,
                         lct_monomial, load_resolution, mld_estimate, mld_from_resolution, parse_rational,
                         prop54_check)
from .jetgen import generate_jet_equations
from .localalgebra import AlgebraError, LocalAlgebra, parse_algebra_text, standard_algebra, truncation
from .polyring import (FieldError, FieldSpec, IdealFormatError, IdealPresentation, PolynomialSyntaxError,
                       parse_ideal_text)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class InputError(Exception):
    pass


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


class Context:
    def __init__(self, args):
        self.args = args
        self.hashes: dict = {}
        self.fields: set = set()
        cache = None
        if not args.no_cache:
            cache = ResultCache(args.cache_dir)
        self.engine = JetEngine(budget=args.budget, order=args.order, cache=cache, verify=args.verify)

    def ideal(self, path: str, label: str = "ideal") -> IdealPresentation:
        text = _read(path)
        ideal = parse_ideal_text(text, path)
        if self.args.char is not None and self.args.char != ideal.field.characteristic:
            if ideal.field.characteristic != 0:
                raise InputError(f"{path}: file is over {ideal.field}, --char asks for {self.args.char}")
            fld = FieldSpec(self.args.char)
            ideal = IdealPresentation.from_strings(ideal.variables, [str(g) for g in ideal.generators], fld)
        self.hashes[label] = _sha(ideal.to_text())
        self.fields.add(ideal.field)
        return ideal

    def algebra(self, desc: str | None, m: int | None = None) -> LocalAlgebra:
        if desc is None:
            if m is None:
                raise InputError("give --algebra or --m")
            alg = truncation(m)
        elif Path(desc).exists():
            alg = parse_algebra_text(_read(desc), desc)
        elif ":" in desc:
            kind, _, params = desc.partition(":")
            try:
                values = [int(v) for v in params.split(",")]
            except ValueError:
                raise InputError(f"bad algebra parameters in {desc!r}") from None
            try:
                alg = standard_algebra(kind, *values)
            except TypeError:
                raise InputError(f"wrong number of parameters for {kind!r}") from None
        else:
            raise InputError(f"{desc}: no such file (or use truncation:M, box:P,Q, fat_point:R,M)")
        self.hashes.setdefault("algebra", _sha(alg.to_text()))
        return alg

    def resolution(self, path: str):
        text = _read(path)
        data = load_resolution(text, path)
        self.hashes["data"] = _sha(json.dumps(data.to_json(), sort_keys=True))
        return data


def _exponents(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"exponents must be comma-separated integers, got {text!r}") from None


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


# subcommands return (payload, partial)

def cmd_dim(ctx, a):
    ideal = ctx.ideal(a.ideal)
    if a.algebra is None and a.m is None:
        out = ctx.engine.krull(ideal)
        return dict(out), False
    alg = ctx.algebra(a.algebra, a.m)
    d = ctx.engine.jet_dimension(ideal, alg)
    return {"dimension": d, "unit_ideal": d < 0, "algebra": alg.describe(), "algebra_dim": alg.dim}, False


def cmd_jet_eqs(ctx, a):
    ideal = ctx.ideal(a.ideal)
    alg = ctx.algebra(a.algebra, a.m)
    return generate_jet_equations(ideal, alg).as_ideal().to_text(), False


def cmd_lct_estimate(ctx, a):
    rep = lct_estimate(ctx.ideal(a.ideal), a.mmax, ctx.engine)
    d = rep.details
    out = {"lct": rep.value, "certified": d.get("certified", False), "status": rep.status,
           "sequence": d.get("sequence", [])}
    for k in ("witness", "failed_at", "note"):
        if k in d:
            out[k] = d[k]
    return out, bool(d.get("partial"))


def cmd_lct_monomial(ctx, a):
    return {"lct": lct_monomial(_exponents(a.exponents))}, False


def cmd_lct_diagonal(ctx, a):
    return {"lct": lct_diagonal(_exponents(a.exponents))}, False


def cmd_lct_resolution(ctx, a):
    return {"lct": lct_from_resolution(ctx.resolution(a.data))}, False


def cmd_contact_codim(ctx, a):
    data = ctx.resolution(a.data)
    fn = contact_codim_bruteforce if a.bruteforce else contact_codim
    return {"codim": fn(data, a.m), "method": "bruteforce" if a.bruteforce else "dp"}, False


def cmd_mld_resolution(ctx, a):
    return {"mld": mld_from_resolution(ctx.resolution(a.data), _rational(a.q))}, False


def cmd_mld_estimate(ctx, a):
    rep = mld_estimate(ctx.ideal(a.ideal), ctx.ideal(a.center, "center"), _rational(a.q), a.mmax, ctx.engine)
    out = {"mld": rep.value, "status": rep.status, "sequence": rep.details["sequence"]}
    if "failed_at" in rep.details:
        out["failed_at"] = rep.details["failed_at"]
    return out, bool(rep.details.get("partial"))


def cmd_alpha(ctx, a):
    ideal = ctx.ideal(a.ideal)
    if a.table:
        t = alpha_table(ideal, a.p, a.q, ctx.engine)
        return t, t["partial"]
    v = alpha_pq(ideal, a.p, a.q, ctx.engine)
    return {"alpha": v, "normalized": Fraction(v, a.p * a.q)}, False


def cmd_beta(ctx, a):
    ideal = ctx.ideal(a.ideal)
    if a.table:
        t = beta_table(ideal, a.m, ctx.engine)
        return t, t["partial"]
    v = beta_m(ideal, a.m, ctx.engine)
    return {"beta": v, "normalized": Fraction(2 * v, a.m * (a.m + 1))}, False


def cmd_beta_monomial(ctx, a):
    e = _exponents(a.exponents)
    return {"beta": beta_monomial(e, a.m), "limit": beta_monomial_limit(e)}, False


def cmd_gamma(ctx, a):
    ideal = ctx.ideal(a.ideal)
    algs = [ctx.algebra(s) for s in a.algebra]
    rep = gamma_estimate(ideal, algs, ctx.engine)
    return {"gamma_lower_bound": rep.value, "rows": rep.details["rows"]}, bool(rep.details.get("partial"))


def cmd_homog(ctx, a):
    try:
        return homog_fiber_dims(a.n, a.d, a.mmax), False
    except ClosedFormError as exc:
        raise InputError(str(exc)) from None


def cmd_lci_check(ctx, a):
    ideal = ctx.ideal(a.ideal)
    return lci_jet_check(ideal, a.dim, ctx.algebra(a.algebra, a.m), ctx.engine), False


def cmd_prop54(ctx, a):
    return prop54_check(a.n, a.d, a.r, a.jmax), False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, default=None, help="work over GF(p) (heuristic)")
    common.add_argument("--order", choices=["auto", "degrevlex", "lex"], default="auto")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="pair-reduction budget")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify", action="store_true", help="recompute cache hits and compare")
    common.add_argument("--meta", action="store_true", help="add a timing block (not deterministic)")

    parser = argparse.ArgumentParser(prog="jetcalc", description="Jet scheme dimensions and singularity invariants.")
    parser.add_argument("--version", action="version", version=f"jetcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("dim", cmd_dim, "Krull dimension of an ideal, or of its jet scheme")
    p.add_argument("--ideal", required=True)
    p.add_argument("--algebra")
    p.add_argument("--m", type=int, help="use k[t]/(t^(m+1))")
    p = add("jet-eqs", cmd_jet_eqs, "print the jet equations in the ideal format")
    p.add_argument("--ideal", required=True)
    p.add_argument("--algebra")
    p.add_argument("--m", type=int)
    p = add("lct-estimate", cmd_lct_estimate, "lct from dims of J_0..J_mmax")
    p.add_argument("--ideal", required=True)
    p.add_argument("--mmax", type=int, required=True)
    for name, fn in (("lct-monomial", cmd_lct_monomial), ("lct-diagonal", cmd_lct_diagonal)):
        p = add(name, fn, "closed-form lct")
        p.add_argument("--exponents", required=True)
    p = add("lct-resolution", cmd_lct_resolution, "lct from resolution data")
    p.add_argument("--data", required=True)
    p = add("contact-codim", cmd_contact_codim, "codimension of the contact locus of order >= m")
    p.add_argument("--data", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bruteforce", action="store_true")
    p = add("mld-resolution", cmd_mld_resolution, "mld from resolution data")
    p.add_argument("--data", required=True)
    p.add_argument("--q", required=True)
    p = add("mld-estimate", cmd_mld_estimate, "mld from jet fiber dimensions")
    p.add_argument("--ideal", required=True)
    p.add_argument("--center", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--mmax", type=int, required=True)
    p = add("alpha", cmd_alpha, "dim of jets over k[s,t]/(s^p,t^q)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--table", action="store_true", help="all cells up to (p, q)")
    p = add("beta", cmd_beta, "dim of jets over k[s,t]/(s,t)^m")
    p.add_argument("--ideal", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--table", action="store_true")
    p = add("beta-monomial", cmd_beta_monomial, "stratified beta_m for a monomial hypersurface")
    p.add_argument("--exponents", required=True)
    p.add_argument("--m", type=int, required=True)
    p = add("gamma", cmd_gamma, "lower bound for gamma over listed algebras")
    p.add_argument("--ideal", required=True)
    p.add_argument("--algebra", action="append", required=True)
    p = add("homog", cmd_homog, "fiber dimension recursion for homogeneous hypersurfaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p = add("lci-check", cmd_lci_check, "pure-dimensionality and irreducibility of J_A(X)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--algebra")
    p.add_argument("--m", type=int)
    p = add("prop54", cmd_prop54, "the d^r <= n necessary condition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    return parser


def _config(args) -> dict:
    skip = {"func", "verify", "no_cache", "cache_dir", "meta", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _text(obj, prefix="") -> list:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines.extend(_text(v, f"{prefix}{k}." if isinstance(v, (dict, list)) else f"{prefix}{k}"))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.extend(_text(v, f"{prefix}{i}." if isinstance(v, (dict, list)) else f"{prefix}{i}"))
    else:
        lines.append(f"{prefix.rstrip('.')}\t{obj}")
    return lines


def emit(report: dict, fmt: str, out=sys.stdout):
    if fmt == "text":
        out.write("\n".join(_text(report)) + "\n")
    else:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.time()
    try:
        if args.char is not None:
            FieldSpec(args.char)
        if args.budget < 1:
            raise InputError("--budget must be positive")
        ctx = Context(args)
        payload, partial = args.func(ctx, args)
    except BudgetExhausted as exc:
        report = {"partial": True, "error": str(exc), "config": _config(args)}
        emit(encode(report), args.format, out)
        return EXIT_BUDGET
    except (InputError, IdealFormatError, AlgebraError, ResolutionError, InvariantError, ClosedFormError,
            FieldError, PolynomialSyntaxError, ExponentOverflow, ValueError) as exc:
        print(f"jetcalc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(payload, str):  # jet-eqs prints the ideal format directly
        out.write(payload)
        return EXIT_OK
    report = dict(payload)
    report["config"] = _config(args)
    report["input_hashes"] = dict(sorted(ctx.hashes.items()))
    fields = {f for f in ctx.fields if f.characteristic}
    if fields:
        report["field"] = sorted(f.name for f in fields)[0]
        report["heuristic"] = True
    if partial:
        report["partial"] = True
    if args.meta:
        report["meta"] = {"elapsed_s": str(round(time.time() - start, 3)), "engine": dict(ctx.engine.stats)}
    emit(encode(report), args.format, out)
    return EXIT_BUDGET if partial else EXIT_OK


def main():  # pragma: no cover - console entry
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
