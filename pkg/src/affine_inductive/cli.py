"""Command-line front end.

Exit codes: 0 when everything passes, 1 when a check fails (including a
counterexample), 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .characters import character_table, complex_pair, format_complex_cell
from .errors import CounterexampleFound, NonPrime, UnsupportedSize, ZeroScale
from .field import FieldContext, FieldElement, build_field, format_element, prime_power_decomposition, prime_powers_up_to
from .group import GroupElement
from .opalg import isotypic_project, numerical_rank
from .pi_rep import PiRepresentation
from .verifier import dumps, full_report

FORMATS = ("json", "csv", "pretty")


class ConfigError(Exception):
    pass


@dataclass
class CliConfig:
    field: FieldContext | None
    trials: int = 1000
    seed: int = 42
    chi: FieldElement | None = None
    fmt: str = "pretty"
    output: str | None = None
    timings: bool = False
    all_q: int | None = None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="field characteristic (prime)")
    common.add_argument("--n", type=int, default=1, help="extension degree (default 1)")
    common.add_argument("--chi", default="1", help="additive character parameter, a field literal (default 1)")
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default pretty; json for verify)")
    common.add_argument("--output", "-o", help="write to this path instead of standard output")

    parser = argparse.ArgumentParser(
        prog="affine-inductive",
        description="Finite affine groups, their big irreducible representation, and the inductive-algebra checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field-info", parents=[common], help="modulus, generator and element table")
    sub.add_parser("char-table", parents=[common], help="character table of the affine group")
    rm = sub.add_parser("rep-matrix", parents=[common], help="matrix of the representation at x -> a*x + b")
    rm.add_argument("--a", default="1", help="scale factor, nonzero field literal (default 1)")
    rm.add_argument("--b", default="0", help="shift, field literal (default 0)")
    sub.add_parser("decompose", parents=[common], help="dimensions of the degree components")
    vp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    vp.add_argument("--trials", type=_positive_int, default=1000, help="falsification trials per field")
    vp.add_argument("--seed", type=_seed, default=42, help="master RNG seed")
    vp.add_argument("--all-q", type=_positive_int, metavar="N", help="sweep every prime power up to N")
    vp.add_argument("--timings", action="store_true", help="include wall-clock milliseconds per check")
    return parser


def _field_literal(ctx: FieldContext, text: str, what: str) -> FieldElement:
    try:
        return ctx.parse(text)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"bad {what} literal {text!r}: {exc}") from None


def make_config(args: argparse.Namespace) -> CliConfig:
    fmt = args.format or ("json" if args.command == "verify" else "pretty")
    all_q = getattr(args, "all_q", None)
    ctx = chi = None
    if all_q is None:
        if args.p is None:
            raise ConfigError("--p is required" + (" (or --all-q)" if args.command == "verify" else ""))
        try:
            ctx = build_field(args.p, args.n)
        except (NonPrime, UnsupportedSize) as exc:
            raise ConfigError(f"{type(exc).__name__}: {exc}") from None
        chi = _field_literal(ctx, args.chi, "--chi")
        if chi.is_zero():
            raise ConfigError("--chi must be nonzero")
    elif all_q > 256:
        raise ConfigError(f"UnsupportedSize: --all-q {all_q} exceeds 256")
    return CliConfig(ctx, getattr(args, "trials", 1000), getattr(args, "seed", 42), chi, fmt,
                     args.output, getattr(args, "timings", False), all_q)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def render_field_info(ctx: FieldContext, fmt: str) -> str:
    rows = [(x.index, str(x), "" if x.is_zero() else x.log, ctx.trace_table[x.index]) for x in ctx.elements]
    if fmt == "json":
        info = ctx.to_dict()
        info["modulus_text"] = format_element(ctx.modulus)
        info["generator_text"] = str(ctx.generator)
        info["elements"] = [{"index": i, "element": e, "log": None if lg == "" else lg, "trace": int(t)}
                            for i, e, lg, t in rows]
        return dumps(info)
    if fmt == "csv":
        return _csv([("index", "element", "log", "trace")] + [(i, e, lg, int(t)) for i, e, lg, t in rows])
    lines = [f"GF({ctx.q}) = GF({ctx.p}^{ctx.n})",
             f"modulus:   {format_element(ctx.modulus)}",
             f"generator: {ctx.generator}",
             f"{'index':>5}  {'element':<16} {'log':>4}  trace"]
    lines += [f"{i:>5}  {e:<16} {str(lg):>4}  {int(t)}" for i, e, lg, t in rows]
    return "\n".join(lines) + "\n"


def render_char_table(ctx: FieldContext, chi: FieldElement, fmt: str) -> str:
    table = character_table(ctx, chi)
    if fmt == "json":
        return dumps(table.to_dict())
    if fmt == "csv":
        return table.to_csv()
    labels = table.class_labels()
    width = max(12, *(len(s) for s in labels))
    head = f"{'':<9}" + "".join(f"{s:>{width + 2}}" for s in labels)
    lines = [head, f"{'size':<9}" + "".join(f"{s:>{width + 2}}" for s in table.class_sizes)]
    for label, row in zip(table.row_labels, table.values):
        lines.append(f"{label:<9}" + "".join(f"{_short(z):>{width + 2}}" for z in row))
    return "\n".join(lines) + "\n"


def _short(z: complex) -> str:
    re_, im = round(z.real, 4) + 0.0, round(z.imag, 4) + 0.0
    if im == 0:
        return f"{re_:g}"
    if re_ == 0:
        return f"{im:g}i"
    return f"{re_:g}{'+' if im > 0 else '-'}{abs(im):g}i"


def render_rep_matrix(M: np.ndarray, g: GroupElement, fmt: str) -> str:
    if fmt == "json":
        return dumps({"a": str(g.a), "b": str(g.b), "matrix": [[complex_pair(z) for z in row] for row in M]})
    if fmt == "csv":
        return _csv([[format_complex_cell(z) for z in row] for row in M])
    lines = [f"pi at x -> ({g.a})*x + ({g.b}):"]
    lines += ["  " + "  ".join(f"{_short(z):>14}" for z in row) for row in M]
    return "\n".join(lines) + "\n"


def decomposition(ctx: FieldContext) -> list[tuple[str, int]]:
    """Thresholded rank of the degree-b projector applied to every matrix unit."""
    rep = PiRepresentation(ctx)
    d = rep.dim
    units = np.eye(d * d, dtype=complex).reshape(-1, d, d)
    return [(str(b), numerical_rank(isotypic_project(rep, b, units).reshape(d * d, -1)).rank)
            for b in ctx.elements]


def render_decompose(ctx: FieldContext, rows: list[tuple[str, int]], fmt: str) -> str:
    total = sum(d for _, d in rows)
    if fmt == "json":
        return dumps({"q": ctx.q, "components": [{"b": b, "dim": d} for b, d in rows], "total": total})
    if fmt == "csv":
        return _csv([("b", "dim")] + rows + [("total", total)])
    lines = [f"{'b':<16} dim"] + [f"{b:<16} {d}" for b, d in rows] + [f"{'total':<16} {total}"]
    return "\n".join(lines) + "\n"


def render_reports(reports, fmt: str, timings: bool, sweep: bool) -> str:
    if fmt == "json":
        dicts = [r.to_dict(timings) for r in reports]
        if not sweep:
            return dumps(dicts[0])
        return dumps({
            "reports": dicts,
            "summary": {
                "fields": [r.q for r in reports],
                "all_pass": all(r.passed for r in reports),
                "failed_fields": [r.q for r in reports if not r.passed],
            },
        })
    if fmt == "csv":
        rows = [("q", "name", "pass", "residual", "dim", "millis")]
        for r in reports:
            for c in r.checks:
                ms = round(c.millis, 3) if timings and c.millis is not None else ""
                rows.append((r.q, c.name, c.passed, repr(c.residual), "" if c.dim is None else c.dim, ms))
        return _csv(rows)
    lines = []
    for r in reports:
        lines.append(f"GF({r.q}), chi = {r.chi_parameter}, trials = {r.trials}, seed = {r.rng_seed}")
        for c in r.checks:
            dim = "-" if c.dim is None else str(c.dim)
            ms = f"  {c.millis:8.1f} ms" if timings and c.millis is not None else ""
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name:<36} {c.residual:10.2e}  dim {dim:>4}{ms}")
        lines.append(f"  {'all pass' if r.passed else 'FAILURES'}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: CliConfig, args: argparse.Namespace) -> int:
    ctx = cfg.field
    if args.command == "field-info":
        _emit(render_field_info(ctx, cfg.fmt), cfg.output)
        return 0
    if args.command == "char-table":
        _emit(render_char_table(ctx, cfg.chi, cfg.fmt), cfg.output)
        return 0
    if args.command == "rep-matrix":
        a = _field_literal(ctx, args.a, "--a")
        b = _field_literal(ctx, args.b, "--b")
        try:
            g = GroupElement(a, b)
        except ZeroScale as exc:
            raise ConfigError(f"ZeroScale: {exc}") from None
        M = PiRepresentation(ctx, cfg.chi).matrix(g)
        _emit(render_rep_matrix(M, g, cfg.fmt), cfg.output)
        return 0
    if args.command == "decompose":
        rows = decomposition(ctx)
        _emit(render_decompose(ctx, rows, cfg.fmt), cfg.output)
        total = sum(d for _, d in rows)
        if total != (ctx.q - 1) ** 2:
            print(f"component dimensions sum to {total}, expected {(ctx.q - 1) ** 2}", file=sys.stderr)
            return 1
        return 0
    # verify
    if cfg.all_q is None:
        targets = [(ctx.p, ctx.n, cfg.chi)]
    else:
        targets = [(*prime_power_decomposition(q), None) for q in prime_powers_up_to(cfg.all_q)]
    reports = []
    for p, n, chi in targets:
        try:
            reports.append(full_report(p, n, cfg.trials, cfg.seed, chi))
        except CounterexampleFound as exc:
            print(f"counterexample at q = {p ** n}: {exc}", file=sys.stderr)
            print(json.dumps(exc.state, allow_nan=False), file=sys.stderr)
            return 1
    _emit(render_reports(reports, cfg.fmt, cfg.timings, cfg.all_q is not None), cfg.output)
    failed = [(r.q, c.name) for r in reports for c in r.checks if not c.passed]
    for q, name in failed:
        print(f"FAIL q={q} {name}", file=sys.stderr)
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return run(cfg, args)
    except ConfigError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
