"""Command-line entry point.

Usage::

    bautq COMMAND FILE.mm [--json] [--reps] [--degrees A..B]

Commands: validate, homology, baut, gottlieb, weights, ks-check, der-table.
Exit codes: 0 success, 1 failed check (invalid model, INFEASIBLE weights,
failed KS test), 2 parse or usage error.  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .dercomplex import DerComplex, Derivation
from .dsl import ModelFile, ParseError, parse_model
from .extensions import KSExtensionError, build_ks_total, prop23_check
from .homology import gottlieb, homology
from .model import InvalidModelError, validate
from .weights import Infeasible, find_positive_weights

COMMANDS = ("validate", "homology", "baut", "gottlieb", "weights", "ks-check", "der-table")

_SUPER = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass
class Report:
    command: str
    data: dict
    text: str
    exit_code: int = 0

    def json(self) -> str:
        return json.dumps(self.data, indent=2, ensure_ascii=False) + "\n"


class CommandError(Exception):
    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


def _q(c: Fraction) -> str:
    return str(Fraction(c))


def _der_json(theta: Derivation) -> list[dict]:
    alg = theta.algebra
    items = sorted(theta.coords().items(), key=lambda kv: (kv[0].source, alg.mono_key(kv[0].target)))
    return [{"basis": e.label(alg), "coeff": _q(c)} for e, c in items]


def _in_range(n: int, degrees: Optional[tuple[int, int]]) -> bool:
    return degrees is None or degrees[0] <= n <= degrees[1]


def _pi_line(ranks: dict[int, int]) -> str:
    if not ranks:
        return "all rational homotopy groups vanish"
    parts = []
    for n, r in ranks.items():
        group = "ℚ" if r == 1 else f"ℚ{str(r).translate(_SUPER)}"
        parts.append(f"π{str(n).translate(_SUB)} = {group}")
    return ", ".join(parts)


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    bold = sys.stdout.isatty() and not os.environ.get("NO_COLOR")

    def fmt(row):
        return " | ".join(str(x).rjust(w) for x, w in zip(row, widths)).rstrip()

    head = fmt(header)
    lines = [f"\033[1m{head}\033[0m" if bold else head, "-+-".join("-" * w for w in widths)]
    lines += [fmt(r) for r in rows]
    return "\n".join(lines)


# -- commands ----------------------------------------------------------------

def cmd_validate(mf: ModelFile, args) -> Report:
    rep = validate(mf.model)
    data = {
        "command": "validate",
        "valid": rep.ok,
        "violations": [{"kind": v.kind, "generator": v.generator, "monomial": v.monomial,
                        "message": v.message} for v in rep.violations],
        "warnings": list(rep.warnings),
    }
    return Report("validate", data, rep.format(), 0 if rep.ok else 1)


def _valid_model(mf: ModelFile):
    rep = validate(mf.model)
    if not rep.ok:
        raise CommandError("invalid model:\n" + rep.format())
    return mf.model


def cmd_homology(mf: ModelFile, args) -> Report:
    m = _valid_model(mf)
    h = homology(m, representatives=args.reps)
    cx = h.complex
    degrees = [n for n in h.ranks if _in_range(n, args.degrees)]
    data = {
        "command": "homology",
        "ranks": {str(n): h.ranks[n] for n in degrees},
        "der_dims": {str(n): cx.dim(n) for n in degrees},
        "cycle_dims": {str(n): h.kernel_dims[n] for n in degrees},
        "baut": {str(n + 1): h.ranks[n] for n in degrees if h.ranks[n]},
    }
    if args.reps:
        data["representatives"] = {str(n): [_der_json(t) for t in h.representatives[n]]
                                   for n in degrees if h.representatives[n]}
    rows = [[n, cx.dim(n), h.kernel_dims[n], h.boundary_ranks.get(n + 1, 0), h.ranks[n]] for n in degrees]
    text = [_table(["n", "dim Der_n", "dim ker D", "rank D_n+1", "dim H_n"], rows),
            "B aut1: " + _pi_line({n + 1: h.ranks[n] for n in degrees if h.ranks[n]})]
    if args.reps:
        for n in degrees:
            for t in h.representatives[n]:
                text.append(f"H_{n}: {t}")
    return Report("homology", data, "\n".join(text))


def cmd_baut(mf: ModelFile, args) -> Report:
    m = _valid_model(mf)
    h = homology(m, representatives=False)
    ranks = {n + 1: r for n, r in h.ranks.items() if r and _in_range(n + 1, args.degrees)}
    data = {"command": "baut", "ranks": {str(n): r for n, r in ranks.items()}}
    return Report("baut", data, _pi_line(ranks))


def cmd_gottlieb(mf: ModelFile, args) -> Report:
    m = _valid_model(mf)
    g = gottlieb(m)
    degrees = [n for n in g.ranks if _in_range(n, args.degrees)]
    data = {
        "command": "gottlieb",
        "ranks": {str(n): g.ranks[n] for n in degrees if g.ranks[n]},
        "functionals": {str(n): [{k: _q(v) for k, v in f.items()} for f in g.functionals[n]]
                        for n in degrees if g.ranks[n]},
    }
    lines = [f"G_{n}: rank {g.ranks[n]}" for n in degrees if g.ranks[n]]
    return Report("gottlieb", data, "\n".join(lines) if lines else "all Gottlieb groups vanish")


def cmd_weights(mf: ModelFile, args) -> Report:
    res = find_positive_weights(mf.model)
    if isinstance(res, Infeasible):
        c = res.contradiction
        data = {
            "command": "weights",
            "feasible": False,
            "steps": [{"equation": res.system.describe(s.equation), "variable": s.variable,
                       "expression": {k: _q(v) for k, v in s.expression.items()}} for s in res.steps],
            "contradiction": c.message,
            "residual": {k: _q(v) for k, v in c.residual.items()},
        }
        return Report("weights", data, res.format(), 1)
    data = {"command": "weights", "feasible": True,
            "weights": {k: _q(v) for k, v in res.weights.items()}}
    text = "positive weights: " + ", ".join(f"wt({k}) = {v}" for k, v in res.weights.items())
    return Report("weights", data, text)


def cmd_ks_check(mf: ModelFile, args) -> Report:
    if mf.extension is None:
        raise CommandError("ks-check needs an 'extend' declaration in the model file")
    _valid_model(mf)
    try:
        total = build_ks_total(mf.model, mf.extension)
    except KSExtensionError as exc:
        raise CommandError(f"KS-extension rejected: {exc}") from None
    cert = prop23_check(total, mf.extension.name)
    data = {
        "command": "ks-check",
        "passed": cert.passed,
        "base": cert.base,
        "degree": cert.degree,
        "base_boundary": _der_json(cert.base_boundary),
        "cycle_dimension": cert.cycle_dimension,
        "witness": _der_json(cert.witness) if cert.witness is not None else None,
    }
    return Report("ks-check", data, cert.format(), 0 if cert.passed else 1)


def cmd_der_table(mf: ModelFile, args) -> Report:
    m = _valid_model(mf)
    cx = DerComplex(m)
    degrees = [n for n in range(cx.top_degree, 0, -1) if cx.dim(n) and _in_range(n, args.degrees)]
    table, diffs = {}, {}
    for n in degrees:
        table[str(n)] = cx.labels(n)
        for e in cx.basis(n):
            image = cx.D(Derivation.basis_element(m.algebra, e))
            diffs[e.label(m.algebra)] = _der_json(image)
    data = {"command": "der-table", "basis": table, "differentials": diffs}
    rows = [[n, ", ".join(cx.labels(n))] for n in degrees]
    text = [_table(["degree", "generators"], rows), ""]
    for n in degrees:
        for e in cx.basis(n):
            image = cx.D(Derivation.basis_element(m.algebra, e))
            text.append(f"D({e.label(m.algebra)}) = {image}")
    return Report("der-table", data, "\n".join(text))


HANDLERS: dict[str, Callable] = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "baut": cmd_baut,
    "gottlieb": cmd_gottlieb,
    "weights": cmd_weights,
    "ks-check": cmd_ks_check,
    "der-table": cmd_der_table,
}


def _degree_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bautq", description="Derivation homology of Sullivan minimal models.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--reps", action="store_true", help="include homology representatives")
    p.add_argument("--degrees", type=_degree_range, metavar="A..B", help="restrict the report range")
    return p


def run(command: str, text: str, args: argparse.Namespace) -> Report:
    """Run one command on model-file text; raises ParseError or CommandError."""
    mf = parse_model(text)
    try:
        return HANDLERS[command](mf, args)
    except InvalidModelError as exc:
        raise CommandError(str(exc)) from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"bautq: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 2
    try:
        report = run(args.command, text, args)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 2
    except CommandError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(report.json() if args.json else report.text + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
