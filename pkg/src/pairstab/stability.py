"""Stability predicates for framed pairs, checked against supplied witnesses.

A pair (E, alpha) with parameter delta is semistable when, for every
subsheaf G,

    chi_G  <=  P(rk G, eps(G))   with   P(rho, eps) = (rho/r)(chi_E - delta) + eps*delta,

where eps(G) is 0 for subsheaves of ker(alpha) and 1 otherwise, and the
comparison is the eventual order on polynomials.  Stability replaces <= by <
for proper subsheaves.  Replacing characteristic polynomials by degrees and
delta by its leading-order part delta1 yields the slope-level conditions;
restricting to values at zero yields the section-level ones.  Each check
returns both the non-strict and the strict outcome so one evaluation serves
the semistable and the stable reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .model import PairProblem, Regime, SubobjectWitness, classify_regime
from .polynomial import (
    RationalPolynomial,
    Rational,
    ZERO,
    as_fraction,
    eventually_leq,
    eventually_lt,
)

Mode = str
MODES = ("semistable", "stable")

Margin = Union[RationalPolynomial, Fraction]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a single stability inequality.

    ``margin`` is right-hand side minus left-hand side (a polynomial for
    characteristic-level checks, a rational otherwise); ``strict`` records
    whether the strict inequality holds, and ``satisfied`` whether the
    inequality holds in the requested mode.  ``strict`` always implies
    ``satisfied``.
    """

    satisfied: bool
    strict: bool
    margin: Margin

    def __post_init__(self) -> None:
        if self.strict and not self.satisfied:
            raise ValueError("a strict verdict is in particular satisfied")


def _check_mode(mode: Mode) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _scalar_verdict(margin: Fraction, mode: Mode) -> Verdict:
    strict = margin > 0
    satisfied = strict if mode == "stable" else margin >= 0
    return Verdict(satisfied, strict, margin)


def _poly_verdict(margin: RationalPolynomial, mode: Mode) -> Verdict:
    strict = eventually_lt(ZERO, margin)
    satisfied = strict if mode == "stable" else eventually_leq(ZERO, margin)
    return Verdict(satisfied, strict, margin)


def standard_polynomial(problem: PairProblem, rho: int, eps: int) -> RationalPolynomial:
    """The comparison polynomial P(rho, eps) = (rho/r)(chi - delta) + eps*delta."""
    if not 0 <= rho <= problem.r:
        raise ValueError(f"rho must lie in [0, {problem.r}]")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    scaled = (problem.chi - problem.delta) * Fraction(rho, problem.r)
    return scaled + problem.delta if eps else scaled


def _guard_improper(witness: SubobjectWitness, mode: Mode) -> None:
    if not witness.proper:
        if mode == "stable":
            raise ValueError("the comparison G = E is only meaningful in semistable mode")
        if witness.in_kernel:
            raise ValueError("G = E cannot lie in the kernel of a nonzero framing")


def check_chi(problem: PairProblem, witness: SubobjectWitness, mode: Mode = "semistable") -> Verdict:
    """Characteristic-level condition chi_G (<=) P(rk G, eps(G)).

    Requires the witness to carry chi_G and the problem to sit in the pair
    regime; in the quotient regime every pair is stable and the predicate is
    vacuous, which is reported as an error rather than a trivial verdict.
    """
    _check_mode(mode)
    if classify_regime(problem) is not Regime.PAIR:
        raise ValueError("chi-level checks are vacuous once deg(delta) reaches the dimension")
    if witness.chi_g is None:
        raise ValueError("the witness carries no characteristic polynomial")
    _guard_improper(witness, mode)
    eps = 0 if witness.in_kernel else 1
    margin = standard_polynomial(problem, witness.rank_g, eps) - witness.chi_g
    return _poly_verdict(margin, mode)


def check_mu(problem: PairProblem, witness: SubobjectWitness, mode: Mode = "semistable") -> Verdict:
    """Slope-level condition, using only rank, degree and delta1.

    Kernel witnesses: r*deg_G (<=) rk_G*(d - delta1).  Other witnesses pick
    up the framing reward r*delta1 on the right, and only proper ranks
    0 < rk_G < r are admissible there.  A full-rank kernel witness is legal
    (the kernel of a framing into a torsion target has full rank) even
    though it is flagged as suspicious by witness validation.
    """
    _check_mode(mode)
    s, r = witness.rank_g, problem.r
    if s == 0:
        raise ValueError("slope conditions are undefined for rank-zero witnesses")
    if s > r:
        raise ValueError(f"witness rank {s} exceeds the pair rank {r}")
    _guard_improper(witness, mode)
    d1 = problem.delta1
    if witness.in_kernel:
        rhs = s * (problem.d - d1)
    else:
        if s >= r:
            raise ValueError("the non-kernel slope condition applies only to ranks below r")
        rhs = s * (problem.d - d1) + r * d1
    margin = rhs - r * witness.deg_g
    return _scalar_verdict(margin, mode)


def check_sectional(
    problem: PairProblem,
    witness: SubobjectWitness,
    delta_bar: Rational,
    p: int,
    mode: Mode = "semistable",
) -> Verdict:
    """Section-level condition on a p-dimensional space of sections.

    With 0 < delta_bar < p the condition reads

        r * section_count  (<=)  rk_G * (p - delta_bar) + eps(G) * r * delta_bar,

    where section_count is dim of the part of the section space landing in
    H^0(G).
    """
    _check_mode(mode)
    if witness.section_count is None:
        raise ValueError("the witness carries no section count")
    db = as_fraction(delta_bar)
    if not 0 < db < p:
        raise ValueError(f"delta_bar must lie strictly between 0 and {p}")
    if not 0 <= witness.rank_g <= problem.r:
        raise ValueError("witness rank out of range")
    _guard_improper(witness, mode)
    eps = 0 if witness.in_kernel else 1
    rhs = witness.rank_g * (p - db) + eps * problem.r * db
    margin = rhs - problem.r * witness.section_count
    return _scalar_verdict(margin, mode)


@dataclass(frozen=True)
class ChainReport:
    """Slope and characteristic verdicts for one witness, cross-checked.

    For a consistent witness of intermediate rank the implications

        strict slope margin  =>  strict chi verdict
        chi satisfied        =>  slope satisfied

    must hold (they encode mu-stable => stable => semistable =>
    mu-semistable at the level of a single subobject); any entry in
    ``violations`` therefore indicates an implementation bug, not a property
    of the input.
    """

    mu: Verdict
    chi: Verdict
    violations: tuple[str, ...]


def implication_chain(problem: PairProblem, witness: SubobjectWitness) -> ChainReport:
    """Evaluate both levels for one witness and verify their implications."""
    if not 0 < witness.rank_g < problem.r:
        raise ValueError("the implication chain needs a witness of intermediate rank")
    if witness.chi_g is None:
        raise ValueError("the witness carries no characteristic polynomial")
    e = problem.ctx.e
    expected_sub = witness.deg_g - problem.ctx.canonical_degree * witness.rank_g / 2
    top = problem.ctx.deg_x * witness.rank_g / (1 if e == 1 else 2)
    if witness.chi_g.coefficient(e) != top or witness.chi_g.coefficient(e - 1) != expected_sub:
        raise ValueError("witness chi_G is inconsistent with its rank and degree")
    mu = check_mu(problem, witness, "semistable")
    chi = check_chi(problem, witness, "semistable")
    violations: list[str] = []
    if mu.strict and not chi.strict:
        violations.append("a strictly positive slope margin must force a strict chi verdict")
    if chi.satisfied and not mu.satisfied:
        violations.append("a satisfied chi condition must force a satisfied slope condition")
    return ChainReport(mu, chi, tuple(violations))


def curve_threshold(r: int, g: int, delta: Rational) -> Fraction:
    """Degree bound r(2g - 1) + delta beyond which, on a curve of genus g,
    semistable pairs are generically stable bundles with sections.
    """
    if r < 1:
        raise ValueError("rank must be at least one")
    return r * (2 * g - 1) + as_fraction(delta)
