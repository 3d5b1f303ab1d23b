"""
Unit tests for the bridge number bound engines.
"""

import unittest

from hypothesis import given, strategies as st

from app.core.exceptions import NotRegularError, ValidationException
from app.services.bounds import (
    additive_iteration,
    cheapest_descent,
    fibonacci_upper,
    lower_bound,
    max_bridge,
    min_bridge_at_depth,
    minimal_tunnel,
    semisimple_upper,
    torus_min_bridge_at_depth,
    upper_bound,
    upper_bound_iteration,
)
from app.services.corridor import SString, depth

SAMPLE = "0011100011100"

regular_strings = st.text(alphabet="01", min_size=1, max_size=14).filter(lambda bits: "1" in bits)
seeds = st.integers(min_value=1, max_value=1000)


class TestAdditiveIteration(unittest.TestCase):
    """Test cases for the additive iteration along the principal path."""

    def test_sample_lower_bound_sequence(self):
        """Test sample lower bound sequence."""
        # Act
        result = additive_iteration(SString(SAMPLE), 2, 2)

        # Assert
        self.assertEqual(result.m, 4)
        self.assertEqual(result.sequence, (2, 2, 4, 6, 10, 14, 18, 22, 40, 62, 102, 142, 182))
        self.assertEqual(result.final, 182)
        self.assertEqual(result.value_at(2), 2)
        self.assertEqual(result.value_at(14), 182)

    def test_lower_bound_examples(self):
        """Test lower bound examples."""
        self.assertEqual(lower_bound(SString(SAMPLE), 2, 2), 182)
        self.assertEqual(lower_bound(SString("1"), 2, 2), 4)
        self.assertEqual(lower_bound(SString("10101"), 2, 3), 29)

    def test_upper_bound_examples(self):
        """Test upper bound examples."""
        self.assertEqual(upper_bound(SString(SAMPLE)), 414)
        self.assertEqual(upper_bound(SString("1")), 5)
        self.assertEqual(upper_bound(SString("10101")), 29)

    def test_upper_bound_sequence(self):
        """Test upper bound sequence."""
        result = upper_bound_iteration(SString(SAMPLE))
        self.assertEqual(result.seeds, (4, 5))
        self.assertEqual(result.sequence, (4, 5, 9, 14, 23, 32, 41, 50, 91, 141, 232, 323, 414))

    def test_semisimple_input_raises(self):
        """Test semisimple input raises."""
        with self.assertRaises(NotRegularError):
            lower_bound(SString("000"), 2, 2)
        with self.assertRaises(NotRegularError):
            upper_bound(SString(""))

    def test_bad_seed_raises(self):
        """Test bad seed raises."""
        with self.assertRaises(ValidationException):
            additive_iteration(SString("1"), 0, 2)

    def test_c2_above_c3_is_allowed(self):
        """Test c2 above c3 is allowed."""
        self.assertEqual(lower_bound(SString("1"), 3, 2), 5)

    @given(regular_strings, seeds, seeds)
    def test_doubling_seeds_doubles_values(self, bits, a, b):
        """Test doubling seeds doubles values."""
        s = SString(bits)
        single = additive_iteration(s, a, b)
        double = additive_iteration(s, 2 * a, 2 * b)
        self.assertEqual(double.sequence, tuple(2 * value for value in single.sequence))

    @given(regular_strings, seeds, seeds, seeds, seeds)
    def test_additive_in_seeds(self, bits, a1, b1, a2, b2):
        """Test additive in seeds."""
        s = SString(bits)
        combined = additive_iteration(s, a1 + a2, b1 + b2).final
        self.assertEqual(combined, additive_iteration(s, a1, b1).final + additive_iteration(s, a2, b2).final)

    @given(regular_strings)
    def test_lower_below_upper(self, bits):
        """Test lower below upper."""
        s = SString(bits)
        self.assertLessEqual(lower_bound(s, 2, 2), upper_bound(s))


class TestCheapestDescent(unittest.TestCase):
    """Test cases for the cheapest descent recursion."""

    def test_examples(self):
        """Test cheapest descents from known seeds."""
        self.assertEqual(cheapest_descent(2, 2, 8), [2, 2, 4, 6, 10, 14, 24])
        self.assertEqual(cheapest_descent(2, 3, 8), [2, 3, 5, 7, 12, 17, 29])
        self.assertEqual(cheapest_descent(1, 1, 4), [1, 1, 2])

    def test_preconditions(self):
        """Test preconditions."""
        with self.assertRaises(ValidationException):
            cheapest_descent(2, 2, 2)
        with self.assertRaises(ValidationException):
            cheapest_descent(3, 2, 8)

    def test_finals_match_closed_recursions(self):
        """Test finals match closed recursions."""
        for d in range(2, 8):
            with self.subTest(d=d):
                self.assertEqual(cheapest_descent(2, 2, 2 * d)[-1], min_bridge_at_depth(d))
                self.assertEqual(cheapest_descent(2, 3, 2 * d)[-1], torus_min_bridge_at_depth(d))


class TestDepthRecursions(unittest.TestCase):
    """Test cases for the minimum bridge numbers at a given depth."""

    def test_min_bridge_at_depth(self):
        """Test the first values of the minimum bridge number recursion."""
        for d, expected in enumerate([2, 4, 10, 24, 58], start=1):
            with self.subTest(d=d):
                self.assertEqual(min_bridge_at_depth(d), expected)

    def test_torus_min_bridge_at_depth(self):
        """Test the first values of the torus knot recursion."""
        for d, expected in enumerate([2, 5, 12, 29, 70], start=1):
            with self.subTest(d=d):
                self.assertEqual(torus_min_bridge_at_depth(d), expected)

    def test_rejects_nonpositive(self):
        """Test that every closed form rejects 0."""
        for func in (min_bridge_at_depth, torus_min_bridge_at_depth, max_bridge, semisimple_upper, minimal_tunnel):
            with self.subTest(func=func.__name__):
                with self.assertRaises(ValidationException):
                    func(0)


class TestMinimalTunnel(unittest.TestCase):
    """Test cases for minimal_tunnel."""

    def test_examples(self):
        """Test the first attaining parameter strings."""
        self.assertEqual(minimal_tunnel(1), SString(""))
        self.assertEqual(minimal_tunnel(2), SString("1"))
        self.assertEqual(minimal_tunnel(3), SString("101"))
        self.assertEqual(minimal_tunnel(4), SString("10101"))

    def test_attains_the_minimum(self):
        """Test that the string has depth d and lower bound min_bridge_at_depth(d)."""
        for d in range(2, 9):
            with self.subTest(d=d):
                # Act
                s = minimal_tunnel(d)

                # Assert
                self.assertEqual(depth(s), d)
                self.assertEqual(lower_bound(s, 2, 2), min_bridge_at_depth(d))

    def test_depth_one(self):
        """Test that depth one is represented by the empty string."""
        self.assertEqual(depth(minimal_tunnel(1)), 1)


class TestClosedForms(unittest.TestCase):
    """Test cases for the closed-form bounds."""

    def test_semisimple_upper(self):
        """Test semisimple upper."""
        self.assertEqual(semisimple_upper(1), 2)
        self.assertEqual(semisimple_upper(2), 3)
        self.assertEqual(semisimple_upper(10), 11)

    def test_fibonacci_upper(self):
        """Test fibonacci upper."""
        self.assertEqual(fibonacci_upper(5, 2), 13)
        self.assertEqual(fibonacci_upper(3, 2), 5)
        self.assertEqual(fibonacci_upper(15, 4), 1076)

    def test_fibonacci_upper_preconditions(self):
        """Test fibonacci upper preconditions."""
        with self.assertRaises(ValidationException):
            fibonacci_upper(2, 2)
        with self.assertRaises(ValidationException):
            fibonacci_upper(5, 1)

    def test_max_bridge(self):
        """Test max bridge."""
        self.assertEqual(max_bridge(1), 2)
        self.assertEqual(max_bridge(2), 3)
        self.assertEqual(max_bridge(5), 13)

    def test_max_bridge_is_fibonacci_upper_from_two(self):
        """Test max bridge is fibonacci upper from two."""
        for n in range(3, 13):
            with self.subTest(n=n):
                self.assertEqual(max_bridge(n), fibonacci_upper(n, 2))

    def test_all_ones_attain_fibonacci_cap(self):
        """Test all ones attain fibonacci cap."""
        for length in range(1, 13):
            with self.subTest(length=length):
                s = SString("1" * length)
                self.assertEqual(upper_bound(s), fibonacci_upper(s.n + 1, 2))
