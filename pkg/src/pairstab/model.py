"""Domain records for stability problems about framed sheaf pairs.

A *pair* is a sheaf E on a polarized curve or surface together with a nonzero
map to a fixed target sheaf E0.  A problem bundles the ambient variety's
numerical invariants, the rank, degree and characteristic polynomial of E,
the target descriptor, and the positive polynomial parameter delta that
enters every stability inequality.

Candidate destabilizing subobjects are always supplied by the caller as
:class:`SubobjectWitness` records; the library certifies the witnesses it is
given and never enumerates subsheaves itself.  Degrees are exact rationals
rather than integers so arbitrary polarizations can be modelled; problems
that do live on an integral polarization say so via ``integral_degrees``,
which the chamber logic relies on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polynomial import (
    RationalPolynomial,
    Rational,
    ZERO,
    as_fraction,
    eventually_lt,
    hilbert_polynomial,
)

SCHEMA_ID = "pairstab/1"

TARGET_KINDS = ("structure_sheaf", "torsion_on_divisor", "general")


class SchemaError(ValueError):
    """Raised when serialized input does not match the problem schema."""


class Regime(str, enum.Enum):
    """Where a parameter value places the moduli problem."""

    PAIR = "pair_regime"
    QUOT = "quot_regime"


@dataclass(frozen=True)
class VarietyContext:
    """Numerical invariants of the polarized base variety.

    ``e`` is the dimension (1 or 2), ``deg_x`` the degree of the polarization
    (H^2 on a surface, deg O(1) on a curve) and ``canonical_degree`` the
    degree K.H of the canonical divisor against the polarization.
    """

    e: int
    deg_x: Fraction
    canonical_degree: Fraction

    def __post_init__(self) -> None:
        if self.e not in (1, 2):
            raise ValueError("dimension e must be 1 (curve) or 2 (surface)")
        object.__setattr__(self, "deg_x", as_fraction(self.deg_x))
        object.__setattr__(self, "canonical_degree", as_fraction(self.canonical_degree))
        if self.deg_x <= 0:
            raise ValueError("the polarization degree must be positive")

    @classmethod
    def curve(cls, genus: int, degree: Rational = 1) -> VarietyContext:
        """Context for a smooth curve of the given genus."""
        return cls(1, as_fraction(degree), Fraction(2 * genus - 2))

    @classmethod
    def surface(cls, h_squared: Rational, canonical_degree: Rational) -> VarietyContext:
        return cls(2, as_fraction(h_squared), as_fraction(canonical_degree))

    @property
    def genus(self) -> Fraction:
        """Arithmetic genus 1 + deg(K)/2; mainly useful for curves."""
        return 1 + self.canonical_degree / 2

    @property
    def h_squared(self) -> Fraction:
        if self.e != 2:
            raise ValueError("h_squared is only defined on a surface")
        return self.deg_x


@dataclass(frozen=True)
class TargetSheafDescriptor:
    """The fixed sheaf E0 the framing maps to.

    ``kind`` is one of ``structure_sheaf`` (rank one, trivial determinant),
    ``torsion_on_divisor`` (rank zero; ``degree_e0`` carries its length
    against the polarization) or ``general``.  ``chi_e0`` is the full
    characteristic polynomial when known, ``h0_e0`` the number of global
    sections and ``level_length`` the length of the divisor underlying a
    level structure.
    """

    kind: str
    rank_e0: int
    degree_e0: Fraction = Fraction(0)
    chi_e0: Optional[RationalPolynomial] = None
    h0_e0: Optional[int] = None
    level_length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in TARGET_KINDS:
            raise ValueError(f"unknown target kind {self.kind!r}; expected one of {TARGET_KINDS}")
        if self.rank_e0 < 0:
            raise ValueError("target rank must be nonnegative")
        if self.kind == "structure_sheaf" and self.rank_e0 != 1:
            raise ValueError("a structure sheaf target has rank one")
        if self.kind == "torsion_on_divisor" and self.rank_e0 != 0:
            raise ValueError("a torsion target has rank zero")
        object.__setattr__(self, "degree_e0", as_fraction(self.degree_e0))
        if self.h0_e0 is not None and self.h0_e0 < 0:
            raise ValueError("section count must be nonnegative")
        if self.level_length is not None and self.level_length < 1:
            raise ValueError("a level structure needs length at least one")


@dataclass(frozen=True)
class PairProblem:
    """A full stability problem: ambient data, pair invariants and parameter.

    ``chi`` must have the exact leading shape produced by
    :func:`hilbert_polynomial` for the given rank and degree, and ``delta``
    must be eventually positive.  ``c1_squared`` and ``c2`` are optional
    surface-only Chern data used by the discriminant and restriction bounds.
    """

    ctx: VarietyContext
    r: int
    d: Fraction
    chi: RationalPolynomial
    delta: RationalPolynomial
    target: TargetSheafDescriptor
    c1_squared: Optional[Fraction] = None
    c2: Optional[Fraction] = None
    integral_degrees: bool = True

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("the pair rank must be at least one")
        object.__setattr__(self, "d", as_fraction(self.d))
        if self.c1_squared is not None:
            object.__setattr__(self, "c1_squared", as_fraction(self.c1_squared))
        if self.c2 is not None:
            object.__setattr__(self, "c2", as_fraction(self.c2))
        if not eventually_lt(ZERO, self.delta):
            raise ValueError("delta must be positive for all large arguments")
        e = self.ctx.e
        expected_top = self.ctx.deg_x * self.r / (1 if e == 1 else 2)
        expected_sub = self.d - self.ctx.canonical_degree * self.r / 2
        if self.chi.degree != e or self.chi.coefficient(e) != expected_top or self.chi.coefficient(e - 1) != expected_sub:
            raise ValueError(
                "chi does not have the characteristic shape of a "
                f"rank-{self.r}, degree-{self.d} sheaf on this variety"
            )

    @classmethod
    def from_invariants(
        cls,
        ctx: VarietyContext,
        r: int,
        d: Rational,
        delta: RationalPolynomial,
        target: TargetSheafDescriptor,
        lower: tuple[Rational, ...] = (),
        **extra,
    ) -> PairProblem:
        """Build a problem, deriving chi from rank, degree and lower terms."""
        chi = hilbert_polynomial(ctx, r, d, lower)
        return cls(ctx, r, as_fraction(d), chi, delta, target, **extra)

    @property
    def delta1(self) -> Fraction:
        """Leading-order parameter: the coefficient of z^(e-1) in delta."""
        return self.delta.coefficient(self.ctx.e - 1)


@dataclass(frozen=True)
class SubobjectWitness:
    """A candidate destabilizing subobject G of E, as reported by the caller.

    ``in_kernel`` records whether G lies in the kernel of the framing;
    ``proper`` is False only for the degenerate comparison G = E.
    ``section_count`` is dim of the intersection of a chosen space of
    sections with H^0(G), used by the section-level checks.
    """

    rank_g: int
    deg_g: Fraction
    chi_g: Optional[RationalPolynomial] = None
    in_kernel: bool = False
    section_count: Optional[int] = None
    proper: bool = True

    def __post_init__(self) -> None:
        if self.rank_g < 0:
            raise ValueError("witness rank must be nonnegative")
        object.__setattr__(self, "deg_g", as_fraction(self.deg_g))
        if self.section_count is not None and self.section_count < 0:
            raise ValueError("section count must be nonnegative")


@dataclass(frozen=True)
class Violation:
    """A structural inconsistency found in a witness.

    Fatal violations make the witness meaningless (out-of-range rank,
    mismatched invariants).  Non-fatal ones flag inputs that are formally
    admissible but already certify a failure or an exotic configuration, so
    downstream checks still run on them.
    """

    code: str
    message: str
    fatal: bool = True


def classify_regime(problem: PairProblem) -> Regime:
    """Split on the degree of delta.

    When deg(delta) reaches the dimension of the variety, every pair is
    stable and the moduli problem degenerates to a quotient-scheme one; the
    stability predicates are vacuous there.  Below that threshold the usual
    chi- and slope-level conditions apply.
    """
    return Regime.QUOT if problem.delta.degree >= problem.ctx.e else Regime.PAIR


def validate_witness(problem: PairProblem, witness: SubobjectWitness) -> list[Violation]:
    """Check a witness for structural consistency against its problem.

    Returns a list of violations, empty when the witness is well formed.
    Fatal entries indicate data that cannot describe a subobject of E at
    all; non-fatal entries flag kernel torsion (which by itself certifies a
    stability failure) and full-rank kernel witnesses (possible only for
    torsion targets, hence suspicious elsewhere).
    """
    out: list[Violation] = []
    e = problem.ctx.e
    if witness.rank_g > problem.r:
        out.append(Violation("rank_bounds", f"witness rank {witness.rank_g} exceeds the pair rank {problem.r}"))
    if not witness.proper:
        if witness.rank_g != problem.r:
            out.append(Violation("improper_rank", "a witness for G = E must have full rank"))
        if witness.in_kernel:
            out.append(Violation("improper_kernel", "G = E cannot lie in the kernel of a nonzero framing"))
        if witness.chi_g is not None and witness.chi_g != problem.chi:
            out.append(Violation("improper_chi", "a witness for G = E must carry chi(E) itself"))
    if witness.chi_g is not None and witness.rank_g <= problem.r:
        top = problem.ctx.deg_x * witness.rank_g / (1 if e == 1 else 2)
        if witness.chi_g.coefficient(e) != top:
            out.append(
                Violation(
                    "leading_coefficient",
                    f"chi_G has leading coefficient {witness.chi_g.coefficient(e)}, "
                    f"but a rank-{witness.rank_g} subsheaf requires {top}",
                )
            )
        sub = witness.deg_g - problem.ctx.canonical_degree * witness.rank_g / 2
        if witness.chi_g.coefficient(e - 1) != sub:
            out.append(
                Violation(
                    "degree_mismatch",
                    "the degree coefficient of chi_G disagrees with deg_G",
                )
            )
    if witness.in_kernel and witness.rank_g == 0:
        length = witness.chi_g.coefficient(0) if witness.chi_g is not None else witness.deg_g
        if length != 0:
            out.append(
                Violation(
                    "kernel_torsion",
                    "a torsion subsheaf inside the kernel certifies a stability failure",
                    fatal=False,
                )
            )
    if witness.in_kernel and witness.rank_g == problem.r and witness.proper:
        out.append(
            Violation(
                "full_rank_kernel",
                "a full-rank kernel witness is possible only for torsion targets",
                fatal=False,
            )
        )
    return out


# -- JSON (de)serialization -------------------------------------------------


def _fraction_to_json(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _poly_to_json(poly: Optional[RationalPolynomial]) -> Optional[list[str]]:
    return None if poly is None else poly.to_json()


def problem_to_json(problem: PairProblem, witnesses: tuple[SubobjectWitness, ...] = ()) -> dict:
    """Serialize a problem (and optional witnesses) to plain JSON data.

    All rationals become "num/den" strings; polynomials become coefficient
    arrays, lowest degree first.  The result round-trips exactly through
    :func:`problem_from_json`.
    """
    return {
        "schema": SCHEMA_ID,
        "variety": {
            "e": problem.ctx.e,
            "deg_x": str(problem.ctx.deg_x),
            "canonical_degree": str(problem.ctx.canonical_degree),
        },
        "pair": {
            "rank": problem.r,
            "degree": str(problem.d),
            "chi": problem.chi.to_json(),
            "c1_squared": _fraction_to_json(problem.c1_squared),
            "c2": _fraction_to_json(problem.c2),
            "integral_degrees": problem.integral_degrees,
        },
        "delta": problem.delta.to_json(),
        "target": {
            "kind": problem.target.kind,
            "rank": problem.target.rank_e0,
            "degree": str(problem.target.degree_e0),
            "chi": _poly_to_json(problem.target.chi_e0),
            "h0": problem.target.h0_e0,
            "level_length": problem.target.level_length,
        },
        "witnesses": [
            {
                "rank": w.rank_g,
                "degree": str(w.deg_g),
                "chi": _poly_to_json(w.chi_g),
                "in_kernel": w.in_kernel,
                "section_count": w.section_count,
                "proper": w.proper,
            }
            for w in witnesses
        ],
    }


def _require(data, key: str, where: str):
    if not isinstance(data, dict):
        raise SchemaError(f"{where} must be a JSON object")
    if key not in data:
        raise SchemaError(f"missing key {key!r} in {where}")
    return data[key]


def _parse_fraction(value, where: str) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where} must be an integer, got {value!r}")
    return value


def _parse_poly(value, where: str) -> RationalPolynomial:
    try:
        return RationalPolynomial.from_json(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def problem_from_json(data: dict) -> tuple[PairProblem, tuple[SubobjectWitness, ...]]:
    """Parse a problem plus its witness list from JSON data.

    Raises :class:`SchemaError` on malformed input, including an unknown
    schema tag; domain-level inconsistencies (bad chi shape, nonpositive
    delta, ...) surface as the constructors' ValueErrors.
    """
    if not isinstance(data, dict):
        raise SchemaError("problem input must be a JSON object")
    schema = data.get("schema")
    if schema != SCHEMA_ID:
        raise SchemaError(f"unsupported schema {schema!r}; expected {SCHEMA_ID!r}")
    variety = _require(data, "variety", "problem")
    ctx = VarietyContext(
        _parse_int(_require(variety, "e", "variety"), "variety.e"),
        _parse_fraction(_require(variety, "deg_x", "variety"), "variety.deg_x"),
        _parse_fraction(_require(variety, "canonical_degree", "variety"), "variety.canonical_degree"),
    )
    tgt = _require(data, "target", "problem")
    kind = _require(tgt, "kind", "target")
    target = TargetSheafDescriptor(
        kind if isinstance(kind, str) else str(kind),
        _parse_int(_require(tgt, "rank", "target"), "target.rank"),
        _parse_fraction(tgt.get("degree", 0), "target.degree"),
        chi_e0=None if tgt.get("chi") is None else _parse_poly(tgt["chi"], "target.chi"),
        h0_e0=None if tgt.get("h0") is None else _parse_int(tgt["h0"], "target.h0"),
        level_length=None if tgt.get("level_length") is None else _parse_int(tgt["level_length"], "target.level_length"),
    )
    pair = _require(data, "pair", "problem")
    problem = PairProblem(
        ctx,
        _parse_int(_require(pair, "rank", "pair"), "pair.rank"),
        _parse_fraction(_require(pair, "degree", "pair"), "pair.degree"),
        _parse_poly(_require(pair, "chi", "pair"), "pair.chi"),
        _parse_poly(_require(data, "delta", "problem"), "delta"),
        target,
        c1_squared=None if pair.get("c1_squared") is None else _parse_fraction(pair["c1_squared"], "pair.c1_squared"),
        c2=None if pair.get("c2") is None else _parse_fraction(pair["c2"], "pair.c2"),
        integral_degrees=bool(pair.get("integral_degrees", True)),
    )
    raw_witnesses = data.get("witnesses", [])
    if not isinstance(raw_witnesses, list):
        raise SchemaError("witnesses must be an array")
    witnesses = tuple(
        SubobjectWitness(
            _parse_int(_require(w, "rank", "witness"), "witness.rank"),
            _parse_fraction(_require(w, "degree", "witness"), "witness.degree"),
            chi_g=None if w.get("chi") is None else _parse_poly(w["chi"], "witness.chi"),
            in_kernel=bool(w.get("in_kernel", False)),
            section_count=None if w.get("section_count") is None else _parse_int(w["section_count"], "witness.section_count"),
            proper=bool(w.get("proper", True)),
        )
        for w in raw_witnesses
    )
    return problem, witnesses
