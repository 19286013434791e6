"""Signature of T(p,q) from lattice-point counts in a Manhattan-norm annulus.

The lattice is Sigma = {(i/p, j/q) : 0 < i < p, 0 < j < q}.  A point a
contributes to the "inside" count at angle t when its Manhattan norm
d(a) = i/p + j/q lies strictly inside the open annulus (t, t+1), and

    sigma_t(T(p,q)) = 2 * inside - (p-1)(q-1).

All inequalities are strict: a point exactly on an annulus boundary counts
for neither side, which is what makes the value at a jump well-defined.
(The complementary convention, which counts the annulus (t-1, t) instead,
gives the mirror values; this module is pinned to the annulus (t, t+1) so
that positive torus knots get positive signatures.)

The value reported exactly at a jump abscissa is the strict-inequality
count there; no averaging of the one-sided limits is implied.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .core import RationalAngle, TorusKnot

__all__ = [
    "AnnulusCount",
    "StepFunction",
    "annulus_count",
    "annulus_count_bruteforce",
    "lt_signature",
    "classical_signature",
    "signature_step_function",
]


@dataclass(frozen=True)
class AnnulusCount:
    """Lattice points inside the open annulus (t, t+1) versus outside it.

    inside + outside = (p-1)(q-1) unless some point sits exactly on the
    boundary (which happens only at jump abscissae).
    """

    inside: int
    outside: int


def annulus_count_bruteforce(knot: TorusKnot, t: RationalAngle) -> AnnulusCount:
    """O(pq) reference count looping over every lattice point.

    Kept deliberately independent of the per-column fast path so the two
    can cross-check each other.
    """
    p, q = knot.p, knot.q
    a, b = t.numerator, t.denominator
    # d(i,j) = (iq + jp)/(pq); compare against a/b by clearing denominators.
    lo = a * p * q          # t * (pq) * b ... both sides scaled by b
    hi = (a + b) * p * q    # (t+1) * pq * b
    inside = 0
    outside = 0
    for i in range(1, p):
        for j in range(1, q):
            norm = (i * q + j * p) * b
            assert norm != p * q * b, "no lattice point has Manhattan norm 1"
            if lo < norm < hi:
                inside += 1
            elif norm < lo or norm > hi:
                outside += 1
    return AnnulusCount(inside, outside)


def annulus_count(knot: TorusKnot, t: RationalAngle) -> AnnulusCount:
    """Count lattice points in the open annulus t < d(a) < t+1.

    O(p): for each column i the admissible j form an open rational
    interval, counted by clearing denominators.
    """
    p, q = knot.p, knot.q
    a, b = t.numerator, t.denominator
    den = b * p
    inside = 0
    boundary = 0
    for i in range(1, p):
        # j must satisfy  q(t - i/p) < j < q(t + 1 - i/p)  and  0 < j < q.
        n1 = q * (a * p - i * b)
        n2 = n1 + q * den
        jmin = max(n1 // den + 1, 1)
        jmax = min((n2 - 1) // den, q - 1)
        if jmax >= jmin:
            inside += jmax - jmin + 1
        for boundary_num in (n1, n2):
            if boundary_num % den == 0 and 0 < boundary_num // den < q:
                boundary += 1
    total = (p - 1) * (q - 1)
    return AnnulusCount(inside, total - inside - boundary)


def lt_signature(knot: TorusKnot, t: RationalAngle) -> int:
    """Levine-Tristram signature sigma_t of T(p,q) at w = e^{2*pi*i*t}."""
    counts = annulus_count(knot, t)
    return 2 * counts.inside - knot.seifert_rank()


def classical_signature(knot: TorusKnot) -> int:
    """Signature at w = -1 via the exact floor sum.

    sigma = (p-1)(q-1) - 4 * sum of floor(jq/2p) over 0 < j < p with
    j = p mod 2.  Agrees with lt_signature(knot, 1/2) everywhere; the two
    routes stay independent so they can cross-check each other.
    """
    p, q = knot.p, knot.q
    total = 0
    for j in range(2 - p % 2, p, 2):
        total += (j * q) // (2 * p)
    return (p - 1) * (q - 1) - 4 * total


@dataclass(frozen=True)
class StepFunction:
    """The full signature function t -> sigma_t on (0, 1).

    breakpoints are the jump abscissae in increasing order; interval_values
    holds the constant value on each open interval between consecutive
    breakpoints (including the leading and trailing intervals), so
    len(interval_values) == len(breakpoints) + 1.  breakpoint_values holds
    the exact value at each breakpoint, which genuinely differs from the
    neighbouring intervals.
    """

    breakpoints: tuple[Fraction, ...]
    interval_values: tuple[int, ...]
    breakpoint_values: tuple[int, ...]

    def value_at(self, t: Fraction) -> int:
        if not 0 < t < 1:
            raise ValueError(f"t = {t} outside (0, 1)")
        k = bisect.bisect_left(self.breakpoints, t)
        if k < len(self.breakpoints) and self.breakpoints[k] == t:
            return self.breakpoint_values[k]
        return self.interval_values[k]

    def max_value(self) -> int:
        values = self.interval_values + self.breakpoint_values
        return max(values)

    def argmax_pieces(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Maximizing pieces as (lo, hi) pairs.

        lo < hi denotes the open interval (lo, hi); lo == hi denotes the
        single breakpoint t = lo.
        """
        m = self.max_value()
        bounds = (Fraction(0),) + self.breakpoints + (Fraction(1),)
        pieces = []
        for k, value in enumerate(self.interval_values):
            if value == m:
                pieces.append((bounds[k], bounds[k + 1]))
        for t, value in zip(self.breakpoints, self.breakpoint_values):
            if value == m:
                pieces.append((t, t))
        pieces.sort()
        return tuple(pieces)


def signature_step_function(knot: TorusKnot) -> StepFunction:
    """Compute the whole signature function of T(p,q) exactly.

    Candidate breakpoints are k/(pq) for 0 < k < pq: every Manhattan norm
    (iq+jp)/(pq), and every norm minus one, lands on this grid.  Rather
    than re-counting the annulus at each candidate, we histogram the norm
    multiset once and walk the candidates, updating the inside count
    incrementally; the result is identical to evaluating lt_signature at
    every candidate and midpoint, in O(pq) total.  Candidates where the
    value does not jump are merged away.
    """
    p, q = knot.p, knot.q
    pq = p * q
    rank = (p - 1) * (q - 1)
    if rank == 0:
        return StepFunction((), (0,), ())

    counts = [0] * (2 * pq)
    for i in range(1, p):
        base = i * q
        for j in range(1, q):
            counts[base + j * p] += 1
    assert counts[pq] == 0, "no lattice point has Manhattan norm 1"

    # inside on the leading interval (0, 1/pq): norms in [1, pq-1].
    inside = sum(counts[1:pq])
    assert 2 * inside == rank, "half of the points lie below norm 1"

    breakpoints = []
    interval_values = [2 * inside - rank]
    breakpoint_values = []
    for k in range(1, pq):
        lost, gained = counts[k], counts[k + pq]
        if lost == 0 and gained == 0:
            continue
        # Coprimality forbids norms at both k/pq and k/pq + 1, so every
        # surviving candidate is a genuine jump between distinct levels.
        assert lost == 0 or gained == 0
        at_breakpoint = inside - lost
        inside = at_breakpoint + gained
        breakpoints.append(Fraction(k, pq))
        breakpoint_values.append(2 * at_breakpoint - rank)
        interval_values.append(2 * inside - rank)

    return StepFunction(tuple(breakpoints), tuple(interval_values), tuple(breakpoint_values))
