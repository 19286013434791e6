import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torsig.core import InvalidParameter, TorusKnot
from torsig.lattice import classical_signature, signature_step_function
from torsig.maxsig import (
    BalancedSequence,
    balanced_sequence,
    distance_profile,
    g4_lower_bound,
    geometric_distance_profile,
    max_cyclic_sum,
    max_signature,
    rotation_relation,
)


def coprime_pairs(p_max, q_max):
    return [
        (p, q)
        for p in range(2, p_max + 1)
        for q in range(p + 1, q_max + 1)
        if math.gcd(p, q) == 1
    ]


def synthetic(entries):
    return BalancedSequence(tuple(entries))


def cyclic_max_bruteforce(entries, start):
    """Independent oracle: max over nonempty cyclic partial sums of length
    at most one period, starting at `start`."""
    n = len(entries)
    best = None
    for length in range(1, n + 1):
        s = sum(entries[(start + i) % n] for i in range(length))
        best = s if best is None else max(best, s)
    return best


class TestDistanceProfile:
    def test_worked_example(self):
        profile = distance_profile(TorusKnot(5, 12))
        assert profile.D == {-1: 2, -3: 6}
        assert profile.d == {1: 8, 3: 4}

    def test_figure_example(self):
        profile = distance_profile(TorusKnot(4, 7))
        assert profile.D == {-2: 6}
        assert profile.d == {2: 2}
        assert profile.d[2] < profile.D[-2]

    def test_two_strand_profile_empty(self):
        for q in (3, 9, 15):
            profile = distance_profile(TorusKnot(2, q))
            assert profile.D == {} and profile.d == {}

    def test_unknot_profile_empty(self):
        profile = distance_profile(TorusKnot(1, 8))
        assert profile.D == {} and profile.d == {}

    def test_structure_on_grid(self):
        for p, q in coprime_pairs(15, 40):
            profile = distance_profile(TorusKnot(p, q))
            m = -(-p // 2) - 1  # ceil(p/2) - 1
            assert len(profile.D) == len(profile.d) == m
            values = list(profile.D.values()) + list(profile.d.values())
            assert len(set(values)) == 2 * m
            assert all(0 < v < 2 * p and v != p for v in values)
            for j, v in profile.D.items():
                assert v % (2 * p) == (-j * q) % (2 * p)
                assert profile.d[-j] == 2 * p - v

    def test_geometric_cross_check(self):
        for p, q in coprime_pairs(12, 30):
            knot = TorusKnot(p, q)
            assert geometric_distance_profile(knot) == distance_profile(knot), (p, q)


class TestBalancedSequence:
    def test_worked_example(self):
        seq = balanced_sequence(distance_profile(TorusKnot(5, 12)))
        assert seq.entries == (1, -1, 1, -1)

    def test_figure_example(self):
        seq = balanced_sequence(distance_profile(TorusKnot(4, 7)))
        assert seq.entries == (-1, 1)

    def test_empty(self):
        assert balanced_sequence(distance_profile(TorusKnot(2, 7))).entries == ()

    def test_labels_sorted_by_distance(self):
        for p, q in coprime_pairs(11, 25):
            seq = balanced_sequence(distance_profile(TorusKnot(p, q)))
            values = [label.value for label in seq.labels]
            assert values == sorted(values)
            for entry, label in zip(seq.entries, seq.labels):
                assert entry == (1 if label.kind == "D" else -1)

    def test_unbalanced_rejected(self):
        with pytest.raises(AssertionError):
            BalancedSequence((1, 1, -1))


class TestMaxCyclicSum:
    @pytest.mark.parametrize(
        "entries,expected",
        [
            ((1, -1, 1, -1), 1),
            ((-1, 1), 0),
            ((), 0),
            ((1, 1, -1, -1), 2),
        ],
    )
    def test_examples(self, entries, expected):
        assert max_cyclic_sum(synthetic(entries)) == expected

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 6).flatmap(lambda m: st.permutations([1] * m + [-1] * m)))
    def test_recursion_property(self, entries):
        entries = tuple(entries)
        n = len(entries)
        if n == 0:
            assert max_cyclic_sum(synthetic(entries)) == 0
            return
        for start in range(n):
            lhs = cyclic_max_bruteforce(entries, start)
            rhs = entries[start] + cyclic_max_bruteforce(entries, (start + 1) % n)
            assert lhs == rhs
        # the empty sum never changes the value for balanced sequences
        assert max_cyclic_sum(synthetic(entries)) == max(0, cyclic_max_bruteforce(entries, 0))
        assert cyclic_max_bruteforce(entries, 0) >= 0

    def test_recursion_on_knot_sequences(self):
        for p, q in coprime_pairs(11, 23):
            entries = balanced_sequence(distance_profile(TorusKnot(p, q))).entries
            n = len(entries)
            for start in range(n):
                assert cyclic_max_bruteforce(entries, start) == entries[start] + cyclic_max_bruteforce(entries, (start + 1) % n)


class TestMaxSignature:
    @pytest.mark.parametrize("p,q,expected", [(5, 12, 30), (4, 7, 14), (3, 7, 10)])
    def test_examples(self, p, q, expected):
        assert max_signature(TorusKnot(p, q)) == expected

    def test_unknot(self):
        assert max_signature(TorusKnot(1, 11)) == 0

    def test_bounds_on_grid(self):
        for p, q in coprime_pairs(12, 40):
            knot = TorusKnot(p, q)
            sigma = classical_signature(knot)
            sigma_hat = max_signature(knot)
            assert sigma <= sigma_hat <= sigma + p - 1
            if p % 2 == 0:
                assert sigma_hat <= sigma + p - 2

    def test_sharpness_at_q_2p_plus_1(self):
        for p in range(2, 31):
            knot = TorusKnot(p, 2 * p + 1)
            two_m = max_signature(knot) - classical_signature(knot)
            assert two_m == (p - 2 if p % 2 == 0 else p - 1)

    def test_equals_step_function_maximum(self):
        for p, q in coprime_pairs(12, 28):
            knot = TorusKnot(p, q)
            assert max_signature(knot) == signature_step_function(knot).max_value(), (p, q)

    def test_maximizer_window(self):
        for p, q in coprime_pairs(10, 24):
            step = signature_step_function(TorusKnot(p, q))
            lo, hi = Fraction(1, 2) - Fraction(1, q), Fraction(1, 2)
            hit = any(
                (a < b and a < hi and b > lo) or (a == b and lo < a <= hi)
                for a, b in step.argmax_pieces()
            )
            assert hit, (p, q)


class TestRotationRelation:
    def test_even_p_sequences_equal(self):
        report = rotation_relation(TorusKnot(4, 7))
        assert report.passed and report.shift == 0
        assert report.sequence == report.shifted_sequence

    def test_odd_p_shift_examples(self):
        report = rotation_relation(TorusKnot(5, 12))
        assert report.passed and report.shift == 2
        report = rotation_relation(TorusKnot(3, 4))
        assert report.passed and report.shift == 1
        assert report.sequence == (-1, 1) and report.shifted_sequence == (1, -1)

    def test_grid(self):
        for p, q in coprime_pairs(14, 30):
            assert rotation_relation(TorusKnot(p, q)).passed, (p, q)

    def test_unknot_rejected(self):
        with pytest.raises(InvalidParameter):
            rotation_relation(TorusKnot(1, 4))


class TestG4LowerBound:
    @pytest.mark.parametrize("p,q,expected", [(3, 7, 5), (5, 12, 15), (1, 9, 0)])
    def test_examples(self, p, q, expected):
        assert g4_lower_bound(TorusKnot(p, q)) == expected

    def test_half_of_even_max_signature(self):
        for p, q in coprime_pairs(9, 20):
            knot = TorusKnot(p, q)
            assert max_signature(knot) % 2 == 0
            assert g4_lower_bound(knot) * 2 == max_signature(knot)
