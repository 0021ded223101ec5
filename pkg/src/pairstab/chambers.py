"""Wall-and-chamber structure of the stability parameter, and related bounds.

The slope-level verdicts of a rank-r, degree-d problem with integral degrees
can only change when delta1 crosses one of finitely many rational walls; the
candidate walls below the upper bound -d/(r-1) are the values
(a*r - s*d)/(r - s) for integers a and 0 <= s < r.  This module computes the
wall set and locates parameters in chambers, provides the closed-form
chamber intervals of the rank-two series together with its index range, and
collects the numerical bounds that delimit where pairs with the various
target types can exist at all: upper bounds for delta, discriminant bounds
for mu-semistable pairs on a surface, the degree needed for a restriction
theorem, the parameter window attached to a level structure, and the window
for framings along a divisor.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import PairProblem
from .polynomial import (
    RationalPolynomial,
    Rational,
    as_fraction,
    hilbert_polynomial,
)


class OnWallError(ValueError):
    """A computation was requested at a parameter sitting exactly on a wall."""


@dataclass(frozen=True)
class WallSet:
    """Sorted candidate walls in [0, range_hi), always including 0.

    ``degenerate`` marks problems whose admissible range is empty
    (range_hi <= 0, i.e. d >= 0): no positive parameter admits semistable
    pairs with a kernel there.
    """

    walls: tuple[Fraction, ...]
    range_hi: Fraction
    degenerate: bool


@dataclass(frozen=True)
class Chamber:
    """Open interval between consecutive walls.

    ``hi`` is None for the overflow chamber past ``range_hi``, where the
    wall structure is no longer certified; callers should treat results
    there as advisory.
    """

    lo: Fraction
    hi: Optional[Fraction]
    index: int

    def __post_init__(self) -> None:
        if self.hi is not None and not self.lo < self.hi:
            raise ValueError("a chamber needs lo < hi")

    def contains(self, value: Rational) -> bool:
        x = as_fraction(value)
        return self.lo < x and (self.hi is None or x < self.hi)


@dataclass(frozen=True)
class OnWall:
    """Marker result: the queried parameter equals a wall exactly."""

    value: Fraction


@dataclass(frozen=True)
class Window:
    """An interval with individually open or closed endpoints."""

    lo: Fraction
    hi: Fraction
    lo_open: bool = True
    hi_open: bool = False

    @property
    def empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def contains(self, value: Rational) -> bool:
        x = as_fraction(value)
        above = x > self.lo if self.lo_open else x >= self.lo
        below = x < self.hi if self.hi_open else x <= self.hi
        return above and below


@dataclass(frozen=True)
class DeltaBound:
    """Upper bound for the stability parameter, per target type.

    ``polynomial`` is the full polynomial bound when the target's
    characteristic data suffices to compute it, else None; ``delta1_bound``
    is the leading-coefficient corollary.  ``notes`` collects caveats.
    """

    case: str
    polynomial: Optional[RationalPolynomial]
    delta1_bound: Optional[Fraction]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class DiscriminantBound:
    """Both variants of the discriminant lower bound for mu-semistable pairs.

    The stated coefficient -delta1/(4 H^2) and the bound -delta1^2/H^2 that
    the underlying Hodge-index estimate actually yields disagree; callers get
    both and should rely on the derived one.  They coincide (at zero) exactly
    when delta1 = 0, recovering the classical discriminant inequality.
    """

    stated: Fraction
    proof_derived: Fraction


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def wall_set(r: int, d: Rational) -> WallSet:
    """Candidate walls for a rank-r, degree-d problem with integral degrees."""
    if r < 2:
        raise ValueError("wall structure needs rank at least two")
    dd = as_fraction(d)
    hi = -dd / (r - 1)
    walls = {Fraction(0)}
    degenerate = hi <= 0
    if not degenerate:
        for s in range(r):
            denom = r - s
            # (a*r - s*d)/denom in [0, hi)  <=>  a in [s*d/r, (hi*denom + s*d)/r)
            lo_a = _ceil(s * dd / r)
            hi_a = _ceil((hi * denom + s * dd) / r) - 1
            for a in range(lo_a, hi_a + 1):
                walls.add(Fraction(a * r - s * dd, denom))
    return WallSet(tuple(sorted(walls)), hi, degenerate)


def enumerate_chambers(walls: WallSet) -> tuple[Chamber, ...]:
    """The open chambers cut out by the wall set inside (0, range_hi)."""
    if walls.degenerate:
        return ()
    points = list(walls.walls) + [walls.range_hi]
    return tuple(Chamber(points[i], points[i + 1], i) for i in range(len(points) - 1))


def chamber_of(walls: WallSet, delta1: Rational):
    """Locate a positive parameter value in the wall structure.

    Returns an :class:`OnWall` marker on exact wall hits, the enclosing
    :class:`Chamber` otherwise.  Values at or beyond ``range_hi`` (and any
    positive value of a degenerate problem) fall into an unbounded overflow
    chamber with ``hi = None``.
    """
    x = as_fraction(delta1)
    if x <= 0:
        raise ValueError("the stability parameter must be positive")
    if x in walls.walls:
        return OnWall(x)
    ws = walls.walls
    if walls.degenerate or x >= walls.range_hi:
        return Chamber(ws[-1], None, len(ws) - 1)
    # ws is sorted and starts at 0 < x < range_hi, so a predecessor exists
    idx = bisect.bisect_left(ws, x) - 1
    hi = ws[idx + 1] if idx + 1 < len(ws) else walls.range_hi
    return Chamber(ws[idx], hi, idx)


def rank2_chamber(i: int, d: Rational) -> Chamber:
    """Chamber number i of the rank-two series: (max(0, 2i + d), 2i + d + 2)."""
    dd = as_fraction(d)
    lo = max(Fraction(0), 2 * i + dd)
    hi = 2 * i + dd + 2
    if hi <= lo:
        raise ValueError(f"the parameter interval for index {i} is empty")
    return Chamber(lo, hi, i)


def series_indices(d: Rational) -> tuple[int, int]:
    """Index range (i_min, i_max) of the nonempty rank-two series chambers
    below the degree bound, for an integral degree d < 0."""
    dd = as_fraction(d)
    if dd.denominator != 1:
        raise ValueError("the series is indexed by integral degrees")
    if dd >= 0:
        raise ValueError("the rank-two series needs negative degree")
    n = int(dd)
    i_min = math.floor(Fraction(-n, 2) - 1) + 1
    i_max = -n - 1
    return i_min, i_max


def series_empty(i: int, d: Rational) -> bool:
    """True when series chamber i carries no semistable pairs (i >= -d)."""
    return i >= -as_fraction(d)


def mu_interval_criterion(r: int, d: Rational, delta1: Rational) -> bool:
    """Exact emptiness test for destabilizing degrees at a given parameter.

    For each intermediate rank 0 < s < r the two half-open intervals

        [s*d/r, s*d/r + delta1*(r-s)/r)   and   [s*d/r - delta1/r, s*d/r)

    must contain no integer; then no integral subsheaf degree can violate
    either slope condition at this parameter, for any problem of this rank
    and degree.  This interval form is the reliable statement of the
    criterion; its closed-form min/max rephrasing is not evaluated here.
    """
    if r < 2:
        raise ValueError("the criterion needs rank at least two")
    dd = as_fraction(d)
    d1 = as_fraction(delta1)
    if d1 <= 0:
        raise ValueError("the stability parameter must be positive")
    for s in range(1, r):
        center = Fraction(s, r) * dd
        if _half_open_has_integer(center, center + d1 * Fraction(r - s, r)):
            return False
        if _half_open_has_integer(center - d1 / r, center):
            return False
    return True


def _half_open_has_integer(lo: Fraction, hi: Fraction) -> bool:
    return lo < hi and _ceil(lo) < hi


def delta_upper_bound(problem: PairProblem, rank_kernel: Optional[int] = None) -> DeltaBound:
    """Upper bound for delta forced by the existence of a framing kernel.

    For a structure-sheaf target the bound is (r*chi_O - chi_E)/(r - 1) with
    leading-order corollary delta1 <= -d/(r-1); for a torsion target it is
    chi_E0 itself with corollary delta1 <= deg E0.  The general form needs
    the kernel rank and the target's characteristic polynomial.
    """
    r = problem.r
    e = problem.ctx.e
    target = problem.target
    notes: list[str] = []
    if target.kind == "structure_sheaf":
        if r == 1:
            raise ValueError("no kernel bound is available at rank one")
        chi0 = target.chi_e0
        if chi0 is None and e == 1:
            chi0 = hilbert_polynomial(problem.ctx, 1, 0)
        poly = None
        if chi0 is not None:
            poly = (chi0 * r - problem.chi) * Fraction(1, r - 1)
        else:
            notes.append("supply chi(O_X) on the target to obtain the polynomial bound")
        return DeltaBound("structure_sheaf", poly, -problem.d / (r - 1), tuple(notes))
    if target.kind == "torsion_on_divisor":
        poly = target.chi_e0
        if poly is None and e == 1:
            poly = RationalPolynomial([target.degree_e0])
        if poly is None:
            notes.append("supply chi(E0) on the target to obtain the polynomial bound")
        return DeltaBound("torsion", poly, target.degree_e0, tuple(notes))
    if rank_kernel is None:
        raise ValueError("the general bound needs the rank of the framing kernel")
    if not 0 < rank_kernel <= r:
        raise ValueError("the kernel rank must lie in [1, r]")
    if target.chi_e0 is None:
        return DeltaBound(
            "general",
            None,
            None,
            ("supply chi(E0) on the target to obtain the polynomial bound",),
        )
    poly = problem.chi - (problem.chi - target.chi_e0) * Fraction(r, rank_kernel)
    top = poly.coefficient(e)
    if top == 0:
        bound1 = poly.coefficient(e - 1)
    elif top > 0:
        bound1 = None
        notes.append("the bound grows with degree e and does not constrain delta1")
    else:
        bound1 = None
        notes.append("the bound is eventually negative: no positive delta is admissible")
    return DeltaBound("general", poly, bound1, tuple(notes))


def discriminant_bound(delta1: Rational, h_squared: Rational) -> DiscriminantBound:
    """Both lower-bound variants for the discriminant of a mu-semistable pair."""
    d1 = as_fraction(delta1)
    h2 = as_fraction(h_squared)
    if h2 <= 0:
        raise ValueError("H^2 must be positive")
    if d1 < 0:
        raise ValueError("delta1 must be nonnegative")
    return DiscriminantBound(-d1 / (4 * h2), -(d1 * d1) / h2)


def restriction_degree(
    d: Rational,
    c1_squared: Rational,
    c2: Rational,
    delta1: Rational,
    h_squared: Rational,
) -> int:
    """Least curve degree n0 making restriction preserve mu-semistability.

    The admissible destabilizing subline degrees stay strictly below
    d/2 + delta1/2; their distance eps to that bound is its fractional part.
    When the bound is an integer the gap closes (eps = 0): the parameter
    sits on a wall and no uniform degree exists, reported as
    :class:`OnWallError`.  Otherwise n0 is the least integer exceeding
    (c2 - c1^2/4 + delta1^2/(4 H^2)) / eps, and at least 1.
    """
    dd = as_fraction(d)
    if dd.denominator != 1:
        raise ValueError("the restriction bound assumes an integral degree")
    d1 = as_fraction(delta1)
    if d1 <= 0:
        raise ValueError("delta1 must be positive")
    h2 = as_fraction(h_squared)
    if h2 <= 0:
        raise ValueError("H^2 must be positive")
    bound = dd / 2 + d1 / 2
    eps = bound - math.floor(bound)
    if eps == 0:
        raise OnWallError(
            "the subline degree bound d/2 + delta1/2 is an integer: "
            "the parameter lies on a wall"
        )
    threshold = (as_fraction(c2) - as_fraction(c1_squared) / 4 + d1 * d1 / (4 * h2)) / eps
    return max(math.floor(threshold) + 1, 1)


def level_structure_window(r: int, level_length: int) -> Window:
    """Parameter window (0, r*l] in which level-D structures of length l
    are equivalent to stable pairs with the torsion target O_D^r."""
    if r < 1:
        raise ValueError("rank must be at least one")
    if level_length < 1:
        raise ValueError("a level structure needs length at least one")
    return Window(Fraction(0), Fraction(r * level_length), lo_open=True, hi_open=False)


def level_structure_dimension(r: int, g: int, level_length: int) -> int:
    """Dimension r^2(g - 1) + r^2*l of the moduli space of rank-r bundles
    with a level structure of length l on a curve of genus g >= 2."""
    if r < 1 or level_length < 1:
        raise ValueError("rank and level length must be at least one")
    return r * r * (g - 1) + r * r * level_length


def level_structure_boundary_dimension(g: int) -> int:
    """Dimension 4g - 2 of the strictly semistable locus in the rank-two,
    degree-zero moduli space with a level structure at a single point."""
    return 4 * g - 2


def framed_delta_window(
    r: int,
    c_dot_h: Rational,
    components: Sequence[tuple[Rational, Sequence[Rational]]],
) -> Window:
    """Open parameter window in which framed-bundle stability is equivalent
    to pair stability for a framing along a divisor.

    ``components`` lists, per irreducible component C_i of the divisor, its
    multiplicity a_i and the subsheaf slope-excess table (nu_1, ..., nu_(r-1))
    of the restricted target.  The window is

        ( max(0, max_s (r*s/(r-s)) * sum_i a_i*nu_s(i)),  (r-1)*C.H )

    and may be empty.  A trivial framing (all nu zero) gives (0, (r-1)*C.H).
    """
    if r < 1:
        raise ValueError("rank must be at least one")
    ch = as_fraction(c_dot_h)
    if ch <= 0:
        raise ValueError("the divisor degree C.H must be positive")
    lo = Fraction(0)
    for s in range(1, r):
        total = Fraction(0)
        for a, nus in components:
            mult = as_fraction(a)
            if mult < 0:
                raise ValueError("component multiplicities must be nonnegative")
            if len(nus) != r - 1:
                raise ValueError(f"each component needs {r - 1} slope-excess values")
            total += mult * as_fraction(nus[s - 1])
        lo = max(lo, Fraction(r * s, r - s) * total)
    hi = (r - 1) * ch
    return Window(lo, hi, lo_open=True, hi_open=True)
