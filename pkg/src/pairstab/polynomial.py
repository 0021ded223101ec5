"""Exact univariate polynomials over the rationals.

Every coefficient is a :class:`fractions.Fraction`; no code path in this
module (or in the modules built on top of it) touches floating point.
Besides plain arithmetic the module supplies the *eventual* order used by the
stability inequalities -- ``p <= q`` iff ``p(n) <= q(n)`` for all large
integers ``n`` -- which is decided lexicographically on coefficients from the
highest degree down, never by sampling.  It also provides the backward
difference operator and the constructor for the Euler characteristic
polynomial of a sheaf of given rank and degree on a polarized curve or
surface.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, str, Fraction]


def as_fraction(value: Rational) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts integers, Fractions and strings like ``"5"`` or ``"-7/3"``.
    Floats are rejected outright: exactness is a contract, not a default.
    """
    if isinstance(value, float):
        raise TypeError(
            "floating point input is not allowed; pass an int, a Fraction, "
            "or a 'num/den' string"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


class RationalPolynomial:
    """Immutable polynomial with rational coefficients, lowest degree first.

    Trailing zero coefficients are stripped, so equal polynomials always have
    equal coefficient tuples; the zero polynomial is the empty tuple.
    """

    __slots__ = ("coefficients",)

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Rational] = ()) -> None:
        coeffs = [as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of z^k (zero beyond the degree)."""
        if k < 0:
            raise ValueError("coefficient index must be nonnegative")
        if k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for k, c in enumerate(b):
            summed[k] += c
        return RationalPolynomial(summed)

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union[RationalPolynomial, Rational]) -> RationalPolynomial:
        if isinstance(other, RationalPolynomial):
            if not self.coefficients or not other.coefficients:
                return RationalPolynomial()
            prod = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    prod[i + j] += a * b
            return RationalPolynomial(prod)
        scalar = as_fraction(other)
        return RationalPolynomial([c * scalar for c in self.coefficients])

    def __rmul__(self, other: Rational) -> RationalPolynomial:
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    # -- evaluation and difference ----------------------------------------

    def evaluate(self, point: Rational) -> Fraction:
        """Exact value at ``point`` (Horner)."""
        x = as_fraction(point)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def shift(self, offset: Rational) -> RationalPolynomial:
        """The polynomial z -> p(z + offset)."""
        t = as_fraction(offset)
        # Horner in the polynomial ring: acc(z)*(z + t) + c_k
        acc = RationalPolynomial()
        linear = RationalPolynomial([t, 1])
        for c in reversed(self.coefficients):
            acc = acc * linear + RationalPolynomial([c])
        return acc

    def difference(self) -> RationalPolynomial:
        """Backward difference p(z) - p(z - 1); drops the degree by one."""
        return self - self.shift(-1)

    # -- serialization and display ----------------------------------------

    def to_json(self) -> list[str]:
        """Coefficient strings, lowest degree first."""
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[Rational]) -> RationalPolynomial:
        if not isinstance(data, (list, tuple)):
            raise ValueError("polynomial must be an array of coefficient strings")
        return cls(data)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "z" if k == 1 else f"z^{k}"
                body = power if mag == 1 else f"{mag}·{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        inner = ", ".join(str(c) for c in self.coefficients)
        return f"RationalPolynomial([{inner}])"


ZERO = RationalPolynomial()
ONE = RationalPolynomial([1])
Z = RationalPolynomial([0, 1])


def eventually_leq(p: RationalPolynomial, q: RationalPolynomial) -> bool:
    """True iff p(n) <= q(n) for all sufficiently large integers n.

    Decided on the coefficients of q - p alone: the zero difference counts as
    true, otherwise the sign of the leading coefficient decides.
    """
    diff = q - p
    return not diff.coefficients or diff.coefficients[-1] > 0


def eventually_lt(p: RationalPolynomial, q: RationalPolynomial) -> bool:
    """True iff p(n) < q(n) for all sufficiently large integers n."""
    diff = q - p
    return bool(diff.coefficients) and diff.coefficients[-1] > 0


def cauchy_root_bound(p: RationalPolynomial) -> Fraction:
    """A bound B >= all real roots of p, so sign(p(n)) is constant for n >= B.

    The classical bound 1 + max|a_k| / |a_d|.  Returns 0 for constants and the
    zero polynomial, whose sign never changes.
    """
    if len(p.coefficients) < 2:
        return Fraction(0)
    lead = abs(p.coefficients[-1])
    return 1 + max(abs(c) for c in p.coefficients[:-1]) / lead


def hilbert_polynomial(ctx, r: int, d: Rational, lower: Sequence[Rational] = ()) -> RationalPolynomial:
    """Euler characteristic polynomial chi(n) of a rank-r, degree-d sheaf.

    ``ctx`` carries the ambient dimension ``e`` (1 for a curve, 2 for a
    surface), the polarization degree ``deg_x`` and the canonical degree.
    The top coefficient is deg(X)·r/e! and the next one d - r·deg(K)/2;
    ``lower`` supplies the remaining e - 1 trailing coefficients (empty on a
    curve, the constant term on a surface).
    """
    e = ctx.e
    if e not in (1, 2):
        raise ValueError("only curves (e=1) and surfaces (e=2) are supported")
    if r < 0:
        raise ValueError("rank must be nonnegative")
    if len(lower) != e - 1:
        raise ValueError(f"expected {e - 1} lower coefficients, got {len(lower)}")
    top = as_fraction(ctx.deg_x) * r / math.factorial(e)
    sub = as_fraction(d) - as_fraction(ctx.canonical_degree) * r / 2
    coeffs = [as_fraction(c) for c in lower] + [sub, top]
    return RationalPolynomial(coeffs)
