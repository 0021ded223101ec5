"""Batch front end: JSON problem files in, JSON or text reports out.

Each subcommand wraps one slice of the library and emits a Report with a
fixed shape (command, inputs, results, warnings).  JSON output is canonical:
keys sorted, two-space indent, trailing newline, no timestamps, so identical
inputs produce byte-identical reports.

Exit codes: 0 success, 2 input or schema error, 3 domain error, 4 on-wall
or degenerate parameter.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .chambers import (
    Chamber,
    DeltaBound,
    DiscriminantBound,
    OnWall,
    OnWallError,
    Window,
    chamber_of,
    delta_upper_bound,
    discriminant_bound,
    enumerate_chambers,
    framed_delta_window,
    level_structure_boundary_dimension,
    level_structure_dimension,
    level_structure_window,
    mu_interval_criterion,
    restriction_degree,
    series_indices,
    wall_set,
)
from .gitweights import (
    BasisProfile,
    brute_force_verdict,
    condition_rows,
    critical_indices,
    critical_mu,
    eta_delta_conversion,
    hilbert_verdict,
)
from .model import (
    PairProblem,
    Regime,
    SchemaError,
    SubobjectWitness,
    Violation,
    classify_regime,
    problem_from_json,
    problem_to_json,
    validate_witness,
)
from .polynomial import RationalPolynomial
from .stability import MODES, Verdict, check_chi, check_mu, check_sectional

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_DOMAIN = 3
EXIT_WALL = 4

# warning texts that must appear at most once per report
DISCREPANCY_DISCRIMINANT = (
    "the linear and the quadratic lower bounds for the discriminant disagree "
    "whenever delta1 > 0; both are reported and the quadratic one is the "
    "proved form"
)
DISCREPANCY_INTERVAL = (
    "the integer-emptiness test is decided by direct interval enumeration; "
    "its closed-form min/max restatement misorders endpoints and is not used"
)


@dataclass
class Report:
    """One command's outcome: echoed inputs, results, deduplicated warnings."""

    command: str
    inputs: dict
    results: dict
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def warn(self, message: str) -> None:
        if message not in self.warnings:
            self.warnings.append(message)

    def payload(self) -> dict:
        return {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "results": _jsonable(self.results),
            "warnings": list(self.warnings),
        }


# -- serialization ------------------------------------------------------------


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, RationalPolynomial):
        return value.to_json()
    if isinstance(value, Verdict):
        return {
            "satisfied": value.satisfied,
            "strict": value.strict,
            "margin": _jsonable(value.margin),
        }
    if isinstance(value, Violation):
        return {"code": value.code, "message": value.message, "fatal": value.fatal}
    if isinstance(value, Window):
        return {
            "lo": str(value.lo),
            "hi": str(value.hi),
            "lo_open": value.lo_open,
            "hi_open": value.hi_open,
            "empty": value.empty,
        }
    if isinstance(value, Chamber):
        return {
            "index": value.index,
            "lo": str(value.lo),
            "hi": None if value.hi is None else str(value.hi),
        }
    if isinstance(value, OnWall):
        return {"on_wall": str(value.value)}
    if isinstance(value, DeltaBound):
        return {
            "case": value.case,
            "polynomial": _jsonable(value.polynomial),
            "delta1_bound": _jsonable(value.delta1_bound),
            "notes": list(value.notes),
        }
    if isinstance(value, DiscriminantBound):
        return {"stated": str(value.stated), "proof_derived": str(value.proof_derived)}
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _leaf(value) -> Optional[str]:
    # scalar rendering for text mode; None means the value needs a block
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, str, Fraction)):
        return str(value)
    if isinstance(value, RationalPolynomial):
        return str(value)
    if isinstance(value, Verdict):
        word = "strict" if value.strict else ("holds" if value.satisfied else "fails")
        return f"{word} (margin {_leaf(value.margin)})"
    if isinstance(value, OnWall):
        return f"on wall at {value.value}"
    if isinstance(value, Chamber):
        hi = "inf" if value.hi is None else str(value.hi)
        return f"chamber {value.index}: ({value.lo}, {hi})"
    if isinstance(value, Window):
        lo = "(" if value.lo_open else "["
        hi = ")" if value.hi_open else "]"
        tail = ", empty" if value.empty else ""
        return f"{lo}{value.lo}, {value.hi}{hi}{tail}"
    if isinstance(value, Violation):
        kind = "" if value.fatal else ", advisory"
        return f"[{value.code}{kind}] {value.message}"
    if isinstance(value, DiscriminantBound):
        return f"stated {value.stated}, derived {value.proof_derived}"
    return None


def _text_block(value, indent: int) -> list[str]:
    pad = "  " * indent
    leaf = _leaf(value)
    if leaf is not None:
        return [pad + leaf]
    if isinstance(value, DeltaBound):
        value = {
            "case": value.case,
            "polynomial": value.polynomial,
            "delta1_bound": value.delta1_bound,
            "notes": list(value.notes),
        }
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            sub = _leaf(item)
            if sub is not None:
                lines.append(f"{pad}{key}: {sub}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_block(item, indent + 1))
        return lines
    if isinstance(value, (list, tuple)):
        leaves = [_leaf(item) for item in value]
        if all(entry is not None for entry in leaves):
            return [pad + "[" + ", ".join(leaves) + "]"]
        for item in value:
            lines.append(pad + "-")
            lines.extend(_text_block(item, indent + 1))
        return lines
    raise TypeError(f"cannot render {type(value).__name__}")


def render(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.payload(), sort_keys=True, indent=2) + "\n"
    lines = [f"command: {report.command}"]
    for message in report.warnings:
        lines.append(f"warning: {message}")
    lines.extend(_text_block(report.results, 0))
    return "\n".join(lines) + "\n"


# -- problem loading ----------------------------------------------------------


def _load_problem(path: Optional[str]) -> tuple[PairProblem, tuple[SubobjectWitness, ...]]:
    if path is None:
        raise SchemaError("this command needs an --input problem file")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    return problem_from_json(data)


# -- subcommands --------------------------------------------------------------


def _witness_rows(
    problem: PairProblem,
    witnesses: tuple[SubobjectWitness, ...],
    mode: str,
    report: Report,
    delta_bar: Optional[Fraction] = None,
    sections: Optional[int] = None,
) -> tuple[list[dict], str, bool]:
    """Run validation plus all applicable checks; returns (rows, summary, fatal)."""
    rows: list[dict] = []
    fatal = False
    violator: Optional[str] = None
    for index, witness in enumerate(witnesses, start=1):
        row: dict = {"witness": index}
        issues = validate_witness(problem, witness)
        if issues:
            row["validation"] = issues
        for issue in issues:
            if not issue.fatal:
                report.warn(f"witness {index}: {issue.message}")
        if any(issue.fatal for issue in issues):
            fatal = True
            row["checks"] = "skipped: the witness fails validation"
            rows.append(row)
            continue
        checks: dict = {}
        checks["chi"] = _attempt(lambda: check_chi(problem, witness, mode))
        checks["mu"] = _attempt(lambda: check_mu(problem, witness, mode))
        if delta_bar is not None and sections is not None and witness.section_count is not None:
            checks["sectional"] = _attempt(
                lambda: check_sectional(problem, witness, delta_bar, sections, mode)
            )
        row["checks"] = checks
        rows.append(row)
        if violator is None:
            for name, verdict in checks.items():
                if isinstance(verdict, Verdict) and not verdict.satisfied:
                    violator = f"witness {index} violates the {name} condition"
                    break
    if violator is None:
        summary = f"no violation among {len(witnesses)} supplied witnesses"
    else:
        summary = violator
    return rows, summary, fatal


def _attempt(check):
    # inapplicable checks (rank 0 slope, improper witness in stable mode, ...)
    # degrade to a note instead of failing the whole report
    try:
        return check()
    except ValueError as exc:
        return f"skipped: {exc}"


def cmd_check(
    problem_file: Optional[str],
    mode: str = "semistable",
    delta_bar: Optional[Fraction] = None,
    sections: Optional[int] = None,
) -> Report:
    """Per-witness stability verdicts for a problem file."""
    if (delta_bar is None) != (sections is None):
        raise ValueError("--delta-bar and --sections must be supplied together")
    problem, witnesses = _load_problem(problem_file)
    report = Report("check", problem_to_json(problem, witnesses), {})
    regime = classify_regime(problem)
    report.results["regime"] = regime.value
    report.results["mode"] = mode
    if regime is Regime.QUOT:
        report.results["summary"] = "all pairs stable; parametrized by the Quot scheme"
        return report
    if not witnesses:
        report.warn("vacuous: no witnesses supplied")
    rows, summary, fatal = _witness_rows(problem, witnesses, mode, report, delta_bar, sections)
    report.results["witnesses"] = rows
    report.results["summary"] = summary
    if fatal:
        report.exit_code = EXIT_DOMAIN
    return report


def cmd_walls(rank: int, degree: Fraction) -> Report:
    """Candidate wall locations for integral-degree problems."""
    walls = wall_set(rank, degree)
    report = Report(
        "walls",
        {"rank": rank, "degree": degree},
        {
            "walls": list(walls.walls),
            "range_hi": walls.range_hi,
            "degenerate": walls.degenerate,
        },
    )
    if walls.degenerate:
        report.warn("degenerate: the admissible parameter range (0, -d/(r-1)) is empty")
        report.exit_code = EXIT_WALL
    return report


def cmd_chambers(rank: int, degree: Fraction, delta1: Optional[Fraction] = None) -> Report:
    """Chamber decomposition, with optional location of a parameter value."""
    walls = wall_set(rank, degree)
    report = Report(
        "chambers",
        {"rank": rank, "degree": degree, "delta1": delta1},
        {
            "walls": list(walls.walls),
            "chambers": list(enumerate_chambers(walls)),
            "degenerate": walls.degenerate,
        },
    )
    if walls.degenerate:
        report.warn("degenerate: the admissible parameter range (0, -d/(r-1)) is empty")
        report.exit_code = EXIT_WALL
    if delta1 is not None:
        location = chamber_of(walls, delta1)
        report.results["location"] = location
        if isinstance(location, OnWall):
            report.warn(f"delta1 = {delta1} sits exactly on a wall")
            report.exit_code = EXIT_WALL
        report.results["no_integer_destabilizers"] = mu_interval_criterion(rank, degree, delta1)
        report.warn(DISCREPANCY_INTERVAL)
    if rank == 2 and degree.denominator == 1 and degree < 0:
        i_min, i_max = series_indices(degree)
        report.results["series"] = {"i_min": i_min, "i_max": i_max}
    return report


def cmd_bounds(problem_file: Optional[str], rank_kernel: Optional[int] = None) -> Report:
    """Admissible-parameter bounds attached to a problem file."""
    problem, _ = _load_problem(problem_file)
    report = Report("bounds", problem_to_json(problem), {})
    report.results["delta_upper"] = delta_upper_bound(problem, rank_kernel)
    if problem.ctx.e == 2:
        disc = discriminant_bound(problem.delta1, problem.ctx.h_squared)
        report.results["discriminant"] = disc
        if disc.stated != disc.proof_derived:
            report.warn(DISCREPANCY_DISCRIMINANT)
        if problem.c1_squared is not None and problem.c2 is not None:
            try:
                report.results["restriction_degree"] = restriction_degree(
                    problem.d,
                    problem.c1_squared,
                    problem.c2,
                    problem.delta1,
                    problem.ctx.h_squared,
                )
            except OnWallError as exc:
                report.results["restriction_degree"] = None
                report.warn(f"restriction degree: {exc}")
    return report


def cmd_restrict(
    degree: Fraction,
    c1_squared: Fraction,
    c2: Fraction,
    delta1: Fraction,
    h_squared: Fraction,
) -> Report:
    """Least restriction degree preserving slope semistability."""
    n0 = restriction_degree(degree, c1_squared, c2, delta1, h_squared)
    return Report(
        "restrict",
        {
            "degree": degree,
            "c1_squared": c1_squared,
            "c2": c2,
            "delta1": delta1,
            "h_squared": h_squared,
        },
        {"n0": n0},
    )


def cmd_framed(
    rank: int,
    c_dot_h: Fraction,
    components: Sequence[tuple[Fraction, tuple[Fraction, ...]]],
) -> Report:
    """Parameter window for the framed-bundle comparison."""
    window = framed_delta_window(rank, c_dot_h, components)
    report = Report(
        "framed",
        {
            "rank": rank,
            "c_dot_h": c_dot_h,
            "components": [{"multiplicity": a, "nu": list(nus)} for a, nus in components],
        },
        {"window": window, "empty": window.empty},
    )
    if window.empty:
        report.warn("the framed stability window is empty for these slope-excess values")
    return report


def cmd_level(rank: int, length: int, genus: int) -> Report:
    """Window and moduli dimension for level structures on a curve."""
    report = Report(
        "level",
        {"rank": rank, "length": length, "genus": genus},
        {
            "window": level_structure_window(rank, length),
            "dimension": level_structure_dimension(rank, genus, length),
        },
    )
    if rank == 2 and length == 1:
        report.results["boundary_dimension"] = level_structure_boundary_dimension(genus)
    return report


def cmd_git(
    p: int,
    r: int,
    ell: int,
    K: Sequence[int],
    eta: Optional[Fraction] = None,
    delta_bar: Optional[Fraction] = None,
    oracle: bool = False,
    bound: Optional[int] = None,
    mode: str = "semistable",
) -> Report:
    """Weight-level verdict for one basis profile."""
    if (eta is None) == (delta_bar is None):
        raise ValueError("supply exactly one of --eta and --delta-bar")
    profile = BasisProfile(p=p, r=r, ell=ell, K=tuple(K))
    if eta is None:
        eta = eta_delta_conversion(p, r, delta_bar, "to_eta")
    verdict = hilbert_verdict(profile, eta, mode=mode)
    if verdict.margin > 0:
        classification = "stable"
    elif verdict.margin == 0:
        classification = "semistable, not stable"
    else:
        classification = "unstable"
    report = Report(
        "git",
        {"p": p, "r": r, "ell": ell, "K": list(K), "eta": eta, "mode": mode},
        {
            "eta": eta,
            "delta_bar": eta_delta_conversion(p, r, eta, "to_delta_bar"),
            "verdict": verdict,
            "classification": classification,
            "rows": [
                {"kind": row.kind, "j": row.j, "value": row.value}
                for row in condition_rows(profile, eta)
            ],
            "critical": [
                {"i": i, "mu": critical_mu(profile, eta, i)} for i in critical_indices(profile)
            ],
        },
    )
    if oracle:
        reference = brute_force_verdict(profile, eta, bound=bound, mode=mode)
        report.results["oracle"] = {
            "verdict": reference,
            "agrees": (reference.satisfied, reference.strict)
            == (verdict.satisfied, verdict.strict),
        }
        if not report.results["oracle"]["agrees"]:
            report.warn("the table verdict disagrees with the enumeration oracle")
    return report


def cmd_report(
    problem_file: Optional[str],
    mode: str = "semistable",
    rank_kernel: Optional[int] = None,
) -> Report:
    """Combined report: regime, witness checks, bounds and wall structure."""
    problem, witnesses = _load_problem(problem_file)
    report = Report("report", problem_to_json(problem, witnesses), {})
    regime = classify_regime(problem)
    report.results["regime"] = regime.value
    report.results["mode"] = mode
    if regime is Regime.QUOT:
        report.results["summary"] = "all pairs stable; parametrized by the Quot scheme"
        return report
    if not witnesses:
        report.warn("vacuous: no witnesses supplied")
    rows, summary, fatal = _witness_rows(problem, witnesses, mode, report)
    report.results["witnesses"] = rows
    report.results["summary"] = summary
    try:
        report.results["delta_upper"] = delta_upper_bound(problem, rank_kernel)
    except ValueError as exc:
        report.results["delta_upper"] = None
        report.warn(f"delta bound: {exc}")
    on_wall = False
    if problem.r >= 2 and problem.integral_degrees:
        walls = wall_set(problem.r, problem.d)
        report.results["walls"] = list(walls.walls)
        report.results["degenerate"] = walls.degenerate
        if walls.degenerate:
            report.warn("degenerate: the admissible parameter range (0, -d/(r-1)) is empty")
        if problem.delta1 > 0:
            location = chamber_of(walls, problem.delta1)
            report.results["location"] = location
            if isinstance(location, OnWall):
                report.warn(f"delta1 = {problem.delta1} sits exactly on a wall")
                on_wall = True
    if problem.ctx.e == 2:
        disc = discriminant_bound(problem.delta1, problem.ctx.h_squared)
        report.results["discriminant"] = disc
        if disc.stated != disc.proof_derived:
            report.warn(DISCREPANCY_DISCRIMINANT)
    if fatal:
        report.exit_code = EXIT_DOMAIN
    elif on_wall:
        report.exit_code = EXIT_WALL
    return report


# -- argument parsing ---------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _component(text: str) -> tuple[Fraction, tuple[Fraction, ...]]:
    head, sep, tail = text.partition(":")
    try:
        multiplicity = Fraction(head)
        nus = tuple(Fraction(part) for part in tail.split(",")) if sep else ()
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(
            f"expected a component of the form 'a:nu1,nu2,...', got {text!r}"
        ) from exc
    return multiplicity, nus


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as canonical JSON")
    common.add_argument("--input", metavar="FILE", help="problem file (schema pairstab/1)")
    common.add_argument("--mode", choices=MODES, default="semistable", help="inequality mode")

    parser = argparse.ArgumentParser(
        prog="pairstab", description="stability calculus for framed sheaf pairs"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("check", parents=[common], help="witness-by-witness stability verdicts")
    p.add_argument("--delta-bar", type=Fraction, help="sectional parameter (with --sections)")
    p.add_argument("--sections", type=int, help="dimension of the ambient section space")

    p = sub.add_parser("walls", parents=[common], help="candidate wall locations")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=Fraction, required=True)

    p = sub.add_parser("chambers", parents=[common], help="chamber decomposition")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=Fraction, required=True)
    p.add_argument("--delta1", type=Fraction, help="locate this parameter value")

    p = sub.add_parser("bounds", parents=[common], help="admissible-parameter bounds")
    p.add_argument("--rank-kernel", type=int, help="kernel rank for the general bound")

    p = sub.add_parser("restrict", parents=[common], help="restriction degree bound")
    p.add_argument("--degree", type=Fraction, required=True)
    p.add_argument("--c1sq", type=Fraction, required=True, dest="c1_squared")
    p.add_argument("--c2", type=Fraction, required=True)
    p.add_argument("--delta1", type=Fraction, required=True)
    p.add_argument("--hsq", type=Fraction, required=True, dest="h_squared")

    p = sub.add_parser("framed", parents=[common], help="framed-bundle parameter window")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--c-dot-h", type=Fraction, required=True)
    p.add_argument(
        "--component",
        type=_component,
        action="append",
        default=[],
        help="divisor component as 'multiplicity:nu1,nu2,...' (repeatable)",
    )

    p = sub.add_parser("level", parents=[common], help="level-structure window and dimension")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("git", parents=[common], help="weight-level verdict for a basis profile")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--K", type=_int_list, required=True, help="comma-separated jump indices")
    p.add_argument("--eta", type=Fraction)
    p.add_argument("--delta-bar", type=Fraction)
    p.add_argument("--oracle", action="store_true", help="cross-check against enumeration")
    p.add_argument("--bound", type=int, help="enumeration bound (defaults to p)")

    sub.add_parser("report", parents=[common], help="combined report for a problem file")
    return parser


def _dispatch(args: argparse.Namespace) -> Report:
    if args.command == "check":
        return cmd_check(args.input, args.mode, args.delta_bar, args.sections)
    if args.command == "walls":
        return cmd_walls(args.rank, args.degree)
    if args.command == "chambers":
        return cmd_chambers(args.rank, args.degree, args.delta1)
    if args.command == "bounds":
        return cmd_bounds(args.input, args.rank_kernel)
    if args.command == "restrict":
        return cmd_restrict(args.degree, args.c1_squared, args.c2, args.delta1, args.h_squared)
    if args.command == "framed":
        return cmd_framed(args.rank, args.c_dot_h, args.component)
    if args.command == "level":
        return cmd_level(args.rank, args.length, args.genus)
    if args.command == "git":
        return cmd_git(
            args.p,
            args.r,
            args.ell,
            args.K,
            eta=args.eta,
            delta_bar=args.delta_bar,
            oracle=args.oracle,
            bound=args.bound,
            mode=args.mode,
        )
    if args.command == "report":
        return cmd_report(args.input, args.mode)
    raise ValueError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = _dispatch(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OnWallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WALL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(render(report, args.json))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
