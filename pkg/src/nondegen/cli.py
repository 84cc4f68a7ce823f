"""Command-line interface: batch commands over problem files.

Commands: minimize, certify, genericity, adversarial, larman, prox, critical.
Every numeric value is printed as an exact rational token (never a decimal),
so any report can be fed back in as input.  The JSON and CSV formats carry
identical fields: JSON is produced *from* the CSV table, row by row.

Exit codes: 0 success; 1 usage error; 2 problem-file parse error; 3 the model
outcome is infeasible, unbounded, or the file does not define the needed
object (no rho for `critical`, no vertices for `larman`, nothing at all).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from .errors import (
    EnumerationBoundError,
    ImproperFunctionError,
    InfeasibleDomainError,
    NondegenError,
    OutsideDomainError,
    ProblemParseError,
    RationalParseError,
)
from .experiments import (
    SamplerConfig,
    construct_degenerate,
    larman_to_csv,
    report_to_csv,
    run_genericity,
    run_larman,
)
from .functions import (
    DegenerateCritical,
    Minimizer,
    Nondegenerate,
    canonical_minimizer,
    certify,
)
from .linalg import Vec, format_rational, parse_rational
from .problemfile import ProblemFile, parse_problem
from .proximal import find_critical_points, prox
from .simplex import Infeasible, Unbounded


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let values like "-1,0" follow --v / --x without being mistaken
        # for option flags (none of our options start with a digit).
        self._negative_number_matcher = re.compile(r"^-\d")

    # argparse exits with status 2 on bad usage by default; route through
    # UsageError so usage problems report exit code 1 instead.
    def error(self, message):
        raise UsageError(message)


def _point(x: Vec) -> str:
    return "(" + ", ".join(format_rational(c) for c in x) + ")"


def _join(x: Optional[Vec]) -> str:
    return "" if x is None else ";".join(format_rational(c) for c in x)


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read '{path}': {e}") from None


def _parse_vec(text: str, dim: int, flag: str) -> Vec:
    tokens = text.split(",")
    if len(tokens) != dim:
        raise UsageError(f"{flag} expects {dim} comma-separated rationals, got {len(tokens)}")
    try:
        return tuple(parse_rational(t.strip()) for t in tokens)
    except RationalParseError as e:
        raise UsageError(f"{flag}: {e}") from None


def _csv_table(fields: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow(row)
    return out.getvalue()


def _load(args) -> ProblemFile:
    return parse_problem(_read_file(args.file))


def _sampler(args) -> SamplerConfig:
    radius = parse_rational(args.radius)
    try:
        return SamplerConfig(seed=args.seed, bits=args.bits, box_radius=radius)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cmd_minimize(args) -> Tuple[int, str, str]:
    f = _load(args).function()
    v = _parse_vec(args.v, f.dim, "--v")
    res = canonical_minimizer(f, v)
    if isinstance(res, Minimizer):
        row = ["minimizer", _join(res.x), format_rational(res.value)]
        text = f"MINIMIZER at {_point(res.x)}; value {format_rational(res.value)}"
        code = 0
    elif isinstance(res, Unbounded):
        row = ["unbounded", "", ""]
        text = "UNBOUNDED"
        code = 3
    else:
        row = ["infeasible", "", ""]
        text = "INFEASIBLE"
        code = 3
    return code, _csv_table(("outcome", "x", "value"), [row]), text


def _certify_witness_tokens(f, cert: Nondegenerate) -> List[str]:
    tokens = []
    if f.pieces:
        tokens.extend(format_rational(w) for w in cert.piece_weights)
    tokens.extend(format_rational(w) for w in cert.constraint_multipliers)
    return tokens


def _cmd_certify(args) -> Tuple[int, str, str]:
    f = _load(args).function()
    v = _parse_vec(args.v, f.dim, "--v")
    if args.x is not None:
        x = _parse_vec(args.x, f.dim, "--x")
    else:
        res = canonical_minimizer(f, v)
        if isinstance(res, Unbounded):
            return 3, _csv_table(("outcome", "x", "witness"), [["unbounded", "", ""]]), "UNBOUNDED"
        if isinstance(res, Infeasible):
            return (
                3,
                _csv_table(("outcome", "x", "witness"), [["infeasible", "", ""]]),
                "INFEASIBLE",
            )
        x = res.x
    try:
        cert = certify(f, v, x)
    except OutsideDomainError as e:
        raise UsageError(f"--x: {e}") from None
    if isinstance(cert, Nondegenerate):
        tokens = _certify_witness_tokens(f, cert)
        row = ["nondegenerate", _join(x), ";".join(tokens)]
        text = f"NONDEGENERATE at {_point(x)}; witness {','.join(tokens)}"
    elif isinstance(cert, DegenerateCritical):
        row = ["degenerate", _join(x), ""]
        text = (
            f"DEGENERATE at {_point(x)}: v lies on rb ∂f; "
            "no strictly complementary dual exists"
        )
    else:
        row = ["not_critical", _join(x), ""]
        text = f"NOT CRITICAL at {_point(x)}: v is not a subgradient there"
    return 0, _csv_table(("outcome", "x", "witness"), [row]), text


def _cmd_genericity(args) -> Tuple[int, str, str]:
    f = _load(args).function()
    cfg = _sampler(args)
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    rep = run_genericity(f, cfg, args.trials)
    csv_text = report_to_csv(rep)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    lines = [
        f"trials {rep.trials}",
        f"nondegenerate {rep.unique_nondegenerate}",
        f"degenerate {rep.degenerate}",
        f"non_unique {rep.non_unique}",
        f"unbounded {rep.unbounded}",
        f"seed {rep.seed}",
    ]
    for r in rep.records:
        if r.outcome in ("degenerate", "non_unique"):
            lines.append(f"hit trial={r.trial_index} outcome={r.outcome} v={_join(r.v)}")
    return 0, csv_text, "\n".join(lines)


def _cmd_adversarial(args) -> Tuple[int, str, str]:
    f = _load(args).function()
    rep = construct_degenerate(f)
    rows = [[_join(v), _join(x)] for v, x in rep.pairs]
    if rep.pairs:
        text = "\n".join(f"v={_point(v)} at x={_point(x)}" for v, x in rep.pairs)
    else:
        text = rep.status
    return 0, _csv_table(("v", "x"), rows), text


def _cmd_larman(args) -> Tuple[int, str, str]:
    pf = parse_problem(_read_file(args.vertices))
    F = pf.vpolytope()
    cfg = _sampler(args)
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    rep = run_larman(F, cfg, args.trials)
    csv_text = larman_to_csv(rep)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    lines = [
        f"trials {rep.trials}",
        f"singleton_faces {rep.singleton_faces}",
        f"multi_vertex_faces {rep.multi_vertex_faces}",
        f"seed {rep.seed}",
    ]
    for r in rep.records:
        if r.distinct_vertices > 1:
            lines.append(f"hit trial={r.label} c={_join(r.c)}")
    return 0, csv_text, "\n".join(lines)


def _cmd_prox(args) -> Tuple[int, str, str]:
    f = _load(args).function()
    c = _parse_vec(args.c, f.dim, "--c")
    x = prox(f, c, args.enum_bound)
    return 0, _csv_table(("x",), [[_join(x)]]), f"PROX at {_point(x)}"


def _cmd_critical(args) -> Tuple[int, str, str]:
    inst = _load(args).instance()
    v = _parse_vec(args.v, inst.g.dim, "--v")
    points = find_critical_points(inst, v, args.enum_bound)
    rows = []
    lines = []
    for x, cert in points:
        kind = "degenerate" if isinstance(cert, DegenerateCritical) else "nondegenerate"
        rows.append([_join(x), kind])
        lines.append(f"CRITICAL at {_point(x)}: {kind.upper()}")
    text = "\n".join(lines) if lines else "NO CRITICAL POINTS"
    return 0, _csv_table(("x", "certification"), rows), text


def build_parser() -> _Parser:
    parser = _Parser(prog="nondegen", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    sampler = _Parser(add_help=False)
    sampler.add_argument("--trials", type=int, required=True)
    sampler.add_argument("--seed", type=int, required=True)
    sampler.add_argument("--bits", type=int, default=64)
    sampler.add_argument("--radius", default="1", help="sampling box half-width (rational)")
    sampler.add_argument("--report", help="also write the CSV report to this path")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", parents=[common], help="minimize f(x) - <v, x>")
    p.add_argument("file")
    p.add_argument("--v", required=True)
    p.set_defaults(run=_cmd_minimize)

    p = sub.add_parser("certify", parents=[common], help="classify v against the subdifferential")
    p.add_argument("file")
    p.add_argument("--v", required=True)
    p.add_argument("--x", help="point to certify at (default: the computed minimizer)")
    p.set_defaults(run=_cmd_certify)

    p = sub.add_parser("genericity", parents=[common, sampler], help="random-tilt experiment")
    p.add_argument("file")
    p.set_defaults(run=_cmd_genericity)

    p = sub.add_parser(
        "adversarial", parents=[common], help="construct degenerate (v, x) pairs"
    )
    p.add_argument("file")
    p.set_defaults(run=_cmd_adversarial)

    p = sub.add_parser("larman", parents=[common, sampler], help="exposed-face sampling")
    p.add_argument("--vertices", required=True, help="problem file with a vertices section")
    p.set_defaults(run=_cmd_larman)

    p = sub.add_parser("prox", parents=[common], help="proximal point of the problem function")
    p.add_argument("file")
    p.add_argument("--c", required=True)
    p.add_argument("--enum-bound", type=int, default=None)
    p.set_defaults(run=_cmd_prox)

    p = sub.add_parser(
        "critical", parents=[common], help="all critical points of g - (rho/2)|.|^2 - <v, .>"
    )
    p.add_argument("file")
    p.add_argument("--v", required=True)
    p.add_argument("--enum-bound", type=int, default=None)
    p.set_defaults(run=_cmd_critical)
    return parser


def _emit(fmt: str, csv_text: str, text: str) -> None:
    if fmt == "csv":
        sys.stdout.write(csv_text)
    elif fmt == "json":
        reader = csv.reader(io.StringIO(csv_text))
        header = next(reader)
        rows = [dict(zip(header, row)) for row in reader]
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else list(argv))
        code, csv_text, text = args.run(args)
        _emit(args.format, csv_text, text)
        return code
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ImproperFunctionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ProblemParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (EnumerationBoundError, InfeasibleDomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except NondegenError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
