"""Command-line front door: ``pdde verify | construct | gate | order | parse-check``.

Reports are single JSON objects on standard output with a fixed key order.
Exit status is 0 on success, 1 on a refuted pair or failed constraint and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .algebra import ExpPoly
from .analysis import order_of_growth
from .bundles import random_bundle
from .parser import ParseError, format_complex, format_exppoly, format_polynomial, max_variable_index, parse, parse_constant, parse_exppoly
from .systems import (
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    E1Params,
    E4Params,
    FGParams,
    OperatorSpec,
    ParamsError,
    VerificationReport,
    verify,
)
from .theorems import E1_THEOREMS, THEOREMS, ConstructionError, HomogeneousSpec, TheoremParams, construct_solution, gate_nonexistence

SCHEMA_VERSION = 1


class InputError(Exception):
    """Anything wrong with the command line or the files it names."""


# ---------------------------------------------------------------------------
# decoding


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_json(path: str) -> dict:
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def _complex(value, where: str) -> complex:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a complex value, got a boolean")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(float(value["re"]), float(value["im"]))
    if isinstance(value, str):
        try:
            return parse_constant(value)
        except ParseError as exc:
            raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: expected a number or constant text, got {value!r}")


def _vector(doc: dict, key: str, length: int | None = None) -> list[complex]:
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    raw = doc[key]
    if not isinstance(raw, list):
        raise InputError(f"field {key!r} must be a list")
    if length is not None and len(raw) != length:
        raise InputError(f"field {key!r} needs {length} entries, got {len(raw)}")
    return [_complex(v, f"{key}[{k}]") for k, v in enumerate(raw)]


def _int(doc: dict, key: str, default=None) -> int:
    if key not in doc:
        if default is None:
            raise InputError(f"missing field {key!r}")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"field {key!r} must be an integer")
    return v


def _expr(text: str, dim: int, where: str) -> ExpPoly:
    try:
        return parse_exppoly(text, dim)
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _pair_fields(doc: dict, key: str) -> list:
    raw = doc.get(key)
    if not isinstance(raw, list) or len(raw) != 2:
        raise InputError(f"field {key!r} must be a list of two entries")
    return raw


def _operator(raw, dim: int, where: str) -> OperatorSpec:
    if not isinstance(raw, list):
        raise InputError(f"{where} must be a list of {{index, coef}} entries")
    entries = []
    for k, e in enumerate(raw):
        if not isinstance(e, dict) or "index" not in e or "coef" not in e:
            raise InputError(f"{where}[{k}] needs 'index' and 'coef'")
        coef = e["coef"]
        coef = _expr(coef, dim, f"{where}[{k}].coef") if isinstance(coef, str) else _complex(coef, f"{where}[{k}].coef")
        entries.append((e["index"], coef))
    return OperatorSpec(entries)


def system_from_doc(doc: dict, system: str | None = None):
    """Build system parameters from a decoded params file."""
    declared = doc.get("system")
    if system is not None and declared is not None and declared != system:
        raise InputError(f"--system {system} disagrees with params file system {declared!r}")
    variant = system or declared
    if variant not in ("e1", "e4", "fg"):
        raise InputError("system must be one of e1, e4, fg")
    n = _int(doc, "n")
    if n < 1:
        raise InputError("n must be positive")
    c = _vector(doc, "c", n)
    try:
        if variant == "e1":
            a = _vector(doc, "a", 4)
            return E1Params(n, c, *a, mu=_int(doc, "mu", 1))
        if variant == "e4":
            a = _vector(doc, "a", n + 2)
            return E4Params(n, c, a[:n], a[n], a[n + 1], mu=_int(doc, "mu", 1))
        m = _pair_fields(doc, "m")
        nn = _pair_fields(doc, "nn")
        F = _pair_fields(doc, "F")
        P = [_expr(t, n, f"P[{k}]") for k, t in enumerate(_pair_fields(doc, "P"))]
        Q = [_expr(t, n, f"Q[{k}]") for k, t in enumerate(_pair_fields(doc, "Q"))]
        return FGParams(n, c, m[0], m[1], nn[0], nn[1], P[0], P[1], Q[0], Q[1], _operator(F[0], n, "F[0]"), _operator(F[1], n, "F[1]"))
    except ParamsError as exc:
        raise InputError(str(exc)) from exc


def theorem_from_doc(theorem: str, doc: dict) -> TheoremParams:
    variant = "e1" if theorem in E1_THEOREMS else "e4"
    system = system_from_doc(doc, variant)
    n = system.n
    homogeneous = []
    for k, h in enumerate(doc.get("homogeneous", [])):
        if not isinstance(h, dict) or "M" not in h:
            raise InputError(f"homogeneous[{k}] needs 'M' and 'tau'")
        homogeneous.append(HomogeneousSpec(_vector(h, "M", n), _complex(h.get("tau", 1), f"homogeneous[{k}].tau")))
    psi1 = None
    if "psi1" in doc:
        f = _expr(doc["psi1"], n, "psi1")
        if not f.is_polynomial():
            raise InputError("psi1 must be a polynomial")
        psi1 = f.as_polynomial()
    try:
        return TheoremParams(
            theorem,
            system,
            b=_vector(doc, "b", n) if "b" in doc else (),
            A=_complex(doc.get("A", 0), "A"),
            B=_complex(doc.get("B", 0), "B"),
            K=_vector(doc, "K", 4) if "K" in doc else (1, 1, 1, 1),
            nu=doc.get("nu"),
            psi1=psi1,
            homogeneous=tuple(homogeneous),
        )
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# encoding


def _num(x: float):
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def _cx(c: complex) -> str:
    return format_complex(c)


def system_to_doc(p) -> dict:
    doc = {"system": p.variant, "n": p.n}
    if isinstance(p, E1Params):
        doc["mu"] = p.mu
        doc["a"] = [_cx(v) for v in p.a]
    elif isinstance(p, E4Params):
        doc["mu"] = p.mu
        doc["a"] = [_cx(v) for v in p.a + (p.an1, p.an2)]
    doc["c"] = [_cx(v) for v in p.c]
    if isinstance(p, FGParams):
        doc["m"] = [p.m1, p.m2]
        doc["nn"] = [p.n1, p.n2]
        doc["P"] = [format_exppoly(p.P1), format_exppoly(p.P2)]
        doc["Q"] = [format_exppoly(p.Q1), format_exppoly(p.Q2)]
        doc["F"] = [[{"index": list(i), "coef": format_exppoly(c)} for i, c in F.entries] for F in (p.F1, p.F2)]
    return doc


def theorem_to_doc(tp: TheoremParams) -> dict:
    doc = system_to_doc(tp.system)
    doc["b"] = [_cx(v) for v in tp.b]
    doc["A"] = _cx(tp.A)
    doc["B"] = _cx(tp.B)
    doc["K"] = [_cx(v) for v in tp.K]
    if tp.nu is not None:
        doc["nu"] = tp.nu
    if tp.psi1 is not None:
        doc["psi1"] = format_polynomial(tp.psi1)
    doc["homogeneous"] = [{"M": [_cx(v) for v in h.M], "tau": _cx(h.tau)} for h in tp.homogeneous]
    return doc


def _terms(rows) -> list[dict]:
    return [{"exponent": r["exponent"], "front": r["front"], "magnitude": _num(r["magnitude"])} for r in rows]


def report_to_doc(r: VerificationReport) -> dict:
    return {
        "verdict": r.verdict.value,
        "settings": {"samples": r.sample_count, "radius": r.radius, "seed": r.seed, "tol": r.tol},
        "equations": [
            {
                "index": j + 1,
                "symbolic_zero": r.symbolic_zero[j],
                "max_residual": _num(r.max_residual[j]),
                "max_raw_residual": _num(r.max_raw_residual[j]),
                "residual_terms": _terms(r.residual_terms[j]),
            }
            for j in range(2)
        ],
        "notes": list(r.notes),
    }


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    sys.stdout.write(text + "\n")
    if out:
        try:
            Path(out).write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    doc = _load_json(args.params)
    p = system_from_doc(doc, args.system)
    f1 = _expr(_read(args.f1), p.n, args.f1)
    f2 = _expr(_read(args.f2), p.n, args.f2)
    r = verify(f1, f2, p, samples=args.samples, radius=args.radius, seed=args.seed, tol=args.tol)
    out = {"v": SCHEMA_VERSION, "command": "verify", "inputs": {"params": system_to_doc(p), "f1": format_exppoly(f1), "f2": format_exppoly(f2)}}
    out.update(report_to_doc(r))
    _emit(out, args.out)
    return 0 if r.ok else 1


def _cmd_construct(args) -> int:
    if args.theorem not in THEOREMS:
        raise InputError(f"unknown theorem {args.theorem!r}; expected one of {', '.join(THEOREMS)}")
    if (args.params is None) == (args.random is None):
        raise InputError("construct needs exactly one of --params or --random")
    if args.params is not None:
        doc = _load_json(args.params)
        # a previous construct report can be fed back in as the params file
        if doc.get("command") == "construct" and isinstance(doc.get("inputs"), dict):
            doc = doc["inputs"]
        tp = theorem_from_doc(args.theorem, doc)
    else:
        tp = random_bundle(args.theorem, np.random.default_rng(args.random))
    out = {"v": SCHEMA_VERSION, "command": "construct", "theorem": tp.theorem, "inputs": theorem_to_doc(tp)}
    try:
        f1, f2, r = construct_solution(tp, samples=args.samples, radius=args.radius, seed=args.seed, tol=args.tol)
    except ConstructionError as exc:
        out["status"] = "FAILED"
        out["error"] = str(exc)
        out["failed_checks"] = [
            {"label": ck.label, "kind": ck.kind, "lhs": _cx(ck.lhs), "rhs": _cx(ck.rhs)} for ck in exc.checks if not ck.passed
        ]
        if exc.report is not None:
            out.update(report_to_doc(exc.report))
        _emit(out, args.out)
        return 1
    out["status"] = "CONSTRUCTED"
    out["f1"] = format_exppoly(f1)
    out["f2"] = format_exppoly(f2)
    out.update(report_to_doc(r))
    _emit(out, args.out)
    return 0


def _cmd_gate(args) -> int:
    try:
        g = gate_nonexistence(args.m1, args.m2, args.n1, args.n2)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    inputs = {"m1": args.m1, "m2": args.m2, "n1": args.n1, "n2": args.n2}
    _emit({"v": SCHEMA_VERSION, "command": "gate", "inputs": inputs, "verdict": g.verdict.value, "reason": g.reason}, args.out)
    return 0


def _expr_file(args) -> tuple[str, ExpPoly]:
    text = _read(args.expr)
    try:
        dim = args.dim or max(1, max_variable_index(parse(text)))
    except ParseError as exc:
        raise InputError(f"{args.expr}: {exc}") from exc
    return text, _expr(text, dim, args.expr)


def _cmd_order(args) -> int:
    text, f = _expr_file(args)
    doc = {"v": SCHEMA_VERSION, "command": "order", "inputs": {"expr": text.strip(), "dim": f.dim}, "order": order_of_growth(f)}
    _emit(doc, args.out)
    return 0


def _cmd_parse_check(args) -> int:
    text, f = _expr_file(args)
    doc = {
        "v": SCHEMA_VERSION,
        "command": "parse-check",
        "inputs": {"expr": text.strip(), "dim": f.dim},
        "canonical": format_exppoly(f),
        "terms": len(f),
    }
    _emit(doc, args.out)
    return 0


def _sampling(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdde", description="Exponential-polynomial solutions of Fermat-type PDDE systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a candidate pair against a system")
    v.add_argument("--system", choices=("e1", "e4", "fg"))
    v.add_argument("--params", required=True)
    v.add_argument("--f1", required=True)
    v.add_argument("--f2", required=True)
    _sampling(v)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("construct", help="build and verify a theorem solution")
    c.add_argument("--theorem", required=True)
    c.add_argument("--params")
    c.add_argument("--random", type=int, metavar="SEED", help="draw a random valid bundle instead of reading one")
    _sampling(c)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_construct)

    g = sub.add_parser("gate", help="nonexistence test for the fg system exponents")
    for name in ("--m1", "--m2", "--n1", "--n2"):
        g.add_argument(name, type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gate)

    for name, func, text in (("order", _cmd_order, "order of growth of an expression"), ("parse-check", _cmd_parse_check, "parse and print canonically")):
        o = sub.add_parser(name, help=text)
        o.add_argument("--expr", required=True)
        o.add_argument("--dim", type=int)
        o.add_argument("--out")
        o.set_defaults(func=func)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"pdde: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
