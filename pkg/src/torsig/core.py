"""Domain types shared by every other module.

All types are immutable after construction and all arithmetic on them is
exact (arbitrary-precision integers and rationals, never floats).

Sign convention used throughout the package: positive torus knots have
positive signatures, e.g. sigma(T(2,3)) = +2 and sigma(T(4,7)) = +14.
A large part of the literature uses the negated convention; the numeric
oracle calibrates itself to this one (see `torsig.oracle`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class TorsigError(Exception):
    """Base class for all errors raised by this package."""


class NotCoprime(TorsigError):
    """The two torus-knot parameters share a factor."""


class InvalidParameter(TorsigError):
    """An argument is outside the domain of the requested operation."""


class OutOfRange(TorsigError):
    """A rational angle falls outside the open interval (0, 1)."""


@dataclass(frozen=True)
class TorusKnot:
    """Torus knot T(p, q), normalized so that p <= q.

    Construction swaps the arguments if p > q (T(p,q) and T(q,p) are the
    same knot) and rejects non-coprime pairs.  p = 1 is allowed and gives
    the unknot, for which every signature below is zero.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise InvalidParameter(f"p and q must be integers, got ({p!r}, {q!r})")
        if p < 1 or q < 1:
            raise InvalidParameter(f"p and q must be >= 1, got ({p}, {q})")
        if math.gcd(p, q) != 1:
            raise NotCoprime(f"p and q must be coprime, got ({p}, {q})")
        if p > q:
            p, q = q, p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def is_unknot(self) -> bool:
        return self.p == 1

    def seifert_rank(self) -> int:
        """Rank of the first homology of the fiber surface, (p-1)(q-1)."""
        return (self.p - 1) * (self.q - 1)

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


def new_torus_knot(p: int, q: int) -> TorusKnot:
    """Validating constructor; equivalent to TorusKnot(p, q)."""
    return TorusKnot(p, q)


def seifert_rank(knot: TorusKnot) -> int:
    return knot.seifert_rank()


@dataclass(frozen=True)
class RationalAngle:
    """Exact rational t in (0, 1) parameterizing w = e^{2*pi*i*t}.

    Stored in lowest terms.  t = 0 (w = 1) is excluded: the signature
    definition degenerates there.
    """

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        n, d = self.numerator, self.denominator
        if not (isinstance(n, int) and isinstance(d, int)) or d <= 0:
            raise InvalidParameter(f"need integer n and d > 0, got ({n!r}, {d!r})")
        if not 0 < n < d:
            raise OutOfRange(f"t = {n}/{d} is outside the open interval (0, 1)")
        g = math.gcd(n, d)
        object.__setattr__(self, "numerator", n // g)
        object.__setattr__(self, "denominator", d // g)

    @classmethod
    def from_fraction(cls, t: Fraction) -> "RationalAngle":
        return cls(t.numerator, t.denominator)

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        """Parse an exact "n/d" string.  Decimal input is rejected."""
        parts = text.split("/")
        if len(parts) != 2:
            raise InvalidParameter(f"angle must be written as n/d, got {text!r}")
        try:
            n, d = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidParameter(f"angle must be written as n/d, got {text!r}") from None
        return cls(n, d)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def new_rational_angle(n: int, d: int) -> RationalAngle:
    """Validating constructor; equivalent to RationalAngle(n, d)."""
    return RationalAngle(n, d)


@dataclass(frozen=True)
class SignatureDatum:
    """A single evaluated signature value sigma_t for one knot."""

    knot: TorusKnot
    t: RationalAngle
    sigma: int

    def __post_init__(self) -> None:
        # Torus knots are knots, so every signature value is even.
        if self.sigma % 2 != 0:
            raise InvalidParameter(f"odd signature {self.sigma} for {self.knot}")
