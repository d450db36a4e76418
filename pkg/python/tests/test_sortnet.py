"""
Tests for the sorting operator
"""
import sys
import unittest
from pathlib import Path

from hypothesis import given, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from processors.borel import BorelInstance, generators
from processors.sortnet import (is_sorted_pair, is_sorted_tuple, sort_pair, sort_tuple, sortable_check,
                                sorted_tuple_closed_form, sorted_tuples)
from utils.errors import GuardExceededError, InconclusiveError, InstanceError
from utils.text_utils import TextUtils
from tests.strategies import borel_instances, equal_degree_tuples


def parse(text):
    return TextUtils.parse_monomial_list(text, 9)


class TestSortPair(unittest.TestCase):
    """Pairs"""

    def test_example_pair(self):
        """(x2x4x6, x1x3x9) sorts to (x1x3x6, x2x4x9)"""
        v, w = parse("x2*x4*x6, x1*x3*x9")
        v2, w2 = sort_pair(v, w)
        self.assertEqual((v2.to_text(), w2.to_text()), ("x1*x3*x6", "x2*x4*x9"))
        self.assertTrue(is_sorted_pair(v2, w2))
        self.assertFalse(is_sorted_pair(v, w))

    def test_product_is_preserved(self):
        v, w = parse("x1^2*x5, x2*x3*x3")
        v2, w2 = sort_pair(v, w)
        self.assertEqual(v * w, v2 * w2)

    def test_unequal_degrees_rejected(self):
        v, w = parse("x1*x2, x3")
        with self.assertRaises(InstanceError):
            sort_pair(v, w)


class TestSortTuple(unittest.TestCase):
    """r-tuples"""

    def test_three_tuple(self):
        gens = TextUtils.parse_monomial_list("x1*x2, x2*x3, x3*x4")
        result = sort_tuple(gens)
        self.assertEqual([m.to_text() for m in result.monomials], ["x1*x3", "x2*x3", "x2*x4"])
        self.assertTrue(is_sorted_tuple(result.monomials))
        self.assertEqual(result.product(), gens[0] * gens[1] * gens[2])

    def test_short_tuples_are_sorted(self):
        single = TextUtils.parse_monomial_list("x2*x3")
        self.assertEqual(sort_tuple(single).monomials, tuple(single))
        self.assertTrue(is_sorted_tuple([]))

    def test_pass_bound(self):
        gens = TextUtils.parse_monomial_list("x3*x4, x1*x2")
        with self.assertRaises(InconclusiveError):
            sort_tuple(gens, max_passes=1)

    @settings(deadline=None, max_examples=100)
    @given(equal_degree_tuples())
    def test_pairwise_sorting_reaches_closed_form(self, monomials):
        self.assertEqual(sort_tuple(monomials), sorted_tuple_closed_form(monomials))


class TestSortable(unittest.TestCase):
    """Sortable sets and sorted tuples"""

    @settings(deadline=None, max_examples=40)
    @given(borel_instances())
    def test_borel_generators_are_sortable(self, inst):
        self.assertTrue(sortable_check(generators(inst)))

    def test_counterexample_is_reported(self):
        result = sortable_check(TextUtils.parse_monomial_list("x1*x2, x3*x4"))
        self.assertFalse(result)
        self.assertEqual([m.to_text() for m in result.image], ["x1*x3", "x2*x4"])
        self.assertEqual(result.to_dict()['witness'], ["x1*x2", "x3*x4"])

    def test_sorted_pairs_of_small_ideal(self):
        gens = generators(BorelInstance(4, 2, (2, 4)))
        pairs = list(sorted_tuples(gens, 2))
        self.assertEqual(len(pairs), 6)
        self.assertTrue(all(is_sorted_tuple(p.monomials) for p in pairs))
        self.assertNotIn(("x1*x4", "x1*x3"), [tuple(m.to_text() for m in p.monomials) for p in pairs])

    def test_sorted_tuple_guard(self):
        gens = generators(BorelInstance(9, 2, (2, 4, 9)))
        with self.assertRaises(GuardExceededError):
            list(sorted_tuples(gens, 2, limit=5))


if __name__ == '__main__':
    unittest.main()
