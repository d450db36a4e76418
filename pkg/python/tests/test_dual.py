"""
Tests for facets, Alexander dual generators and linear quotients
"""
import json
import sys
import unittest
from pathlib import Path

from hypothesis import given, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from processors.borel import BorelInstance
from processors.dual import (Facet, QuotientProfile, dual_generators, facet_oracle, facets, intersection_check,
                             krull_dimension, linear_quotients_check, minimal_primes, scm_order,
                             tagged_dual_generators)
from utils.errors import InstanceError
from utils.monomial import Monomial
from utils.text_utils import TextUtils
from tests.strategies import borel_instances

EXAMPLE_DUAL = ["x1*x2", "x1*x4", "x3*x4", "x1*x6*x7*x8*x9", "x3*x6*x7*x8*x9", "x5*x6*x7*x8*x9"]


class TestFacets(unittest.TestCase):
    """Facet classification"""

    def setUp(self):
        self.inst = BorelInstance(9, 2, (2, 4, 9))

    def test_example_facets(self):
        found = [(f.kind, f.parameters, f.members) for f in facets(self.inst)]
        self.assertEqual(found, [
            ('F2', (), (3, 4, 5, 6, 7, 8, 9)),
            ('F3', (1, 2), (1, 2, 5, 6, 7, 8, 9)),
            ('F3', (2, 2), (2, 3, 5, 6, 7, 8, 9)),
            ('F1', (1, 3), (1, 2, 3, 4)),
            ('F1', (1, 4), (1, 2, 4, 5)),
            ('F1', (2, 4), (2, 3, 4, 5)),
        ])

    def test_facets_survive_json(self):
        found = facets(self.inst)
        restored = [Facet.from_dict(json.loads(json.dumps(f.to_dict()))) for f in found]
        self.assertEqual(restored, found)

    def test_degree_two_has_no_middle_block(self):
        found = [f.members for f in facets(BorelInstance(4, 2, (2, 4)))]
        self.assertEqual(found, [(3, 4), (1, 2), (2, 3)])
        self.assertEqual(krull_dimension(BorelInstance(4, 2, (2, 4))), 2)

    def test_trailing_variables_are_cone_points(self):
        """Variables beyond i_d join every facet"""
        inst = BorelInstance(6, 2, (2, 4))
        with self.assertLogs('processors.dual', level='WARNING'):
            found = [f.members for f in facets(inst)]
        self.assertEqual(found, [(3, 4, 5, 6), (1, 2, 5, 6), (2, 3, 5, 6)])
        self.assertEqual(minimal_primes(inst), [(1, 2), (1, 4), (3, 4)])

    @settings(deadline=None, max_examples=60)
    @given(borel_instances())
    def test_formula_matches_exhaustive_scan(self, inst):
        self.assertEqual(sorted(f.members for f in facets(inst)), facet_oracle(inst))

    @settings(deadline=None, max_examples=30)
    @given(borel_instances(n_max=6))
    def test_ideal_is_intersection_of_minimal_primes(self, inst):
        self.assertTrue(intersection_check(inst))


class TestDualGenerators(unittest.TestCase):
    """Alexander dual generators and their ordering"""

    def setUp(self):
        self.inst = BorelInstance(9, 2, (2, 4, 9))

    def test_example_dual(self):
        self.assertEqual([m.to_text() for m in dual_generators(self.inst)], EXAMPLE_DUAL)
        forms = [g.form for g in tagged_dual_generators(self.inst)]
        self.assertEqual(forms, ['F2', 'F3', 'F3', 'F1', 'F1', 'F1'])

    def test_scm_order_restores_order(self):
        shuffled = list(reversed(dual_generators(self.inst)))
        ordered = scm_order(shuffled, self.inst)
        self.assertEqual([g.monomial.to_text() for g in ordered], EXAMPLE_DUAL)

    def test_scm_order_rejects_foreign_lists(self):
        duals = dual_generators(self.inst)
        with self.assertRaises(InstanceError):
            scm_order(duals[:-1], self.inst)
        with self.assertRaises(InstanceError):
            scm_order(duals + [Monomial.from_indices([1], 9)], self.inst)

    def test_example_linear_quotients(self):
        result = linear_quotients_check(dual_generators(self.inst))
        self.assertTrue(result)
        self.assertEqual([p.r for p in result.profiles], [0, 1, 1, 2, 2, 2])
        self.assertEqual([p.variables for p in result.profiles], [(), (2,), (1,), (2, 4), (1, 4), (1, 3)])

    def test_profiles_survive_json(self):
        profiles = linear_quotients_check(dual_generators(self.inst)).profiles
        restored = [QuotientProfile.from_dict(json.loads(json.dumps(p.to_dict())), 9) for p in profiles]
        self.assertEqual(restored, profiles)

    @settings(deadline=None, max_examples=60)
    @given(borel_instances())
    def test_dual_order_has_linear_quotients(self, inst):
        """Sequential Cohen-Macaulayness via linear quotients of the dual"""
        self.assertTrue(linear_quotients_check(dual_generators(inst)))

    @settings(deadline=None, max_examples=30)
    @given(borel_instances())
    def test_one_dual_generator_per_facet(self, inst):
        duals = dual_generators(inst)
        self.assertEqual(len(duals), len(facets(inst)))
        self.assertEqual(len(set(duals)), len(duals))
        self.assertTrue(all(g.degree >= 1 for g in duals))


class TestLinearQuotients(unittest.TestCase):
    """Certifier behavior on lists without linear quotients"""

    def test_failure_reports_offending_generator(self):
        result = linear_quotients_check(TextUtils.parse_monomial_list("x1*x2, x3*x4"))
        self.assertFalse(result)
        self.assertEqual((result.failure_index, result.offending_index), (2, 1))
        self.assertFalse(result.profiles[-1].linear)

    def test_redundant_generator_fails(self):
        result = linear_quotients_check(TextUtils.parse_monomial_list("x1, x1*x2"))
        self.assertFalse(result)
        self.assertEqual((result.failure_index, result.offending_index), (2, 1))

    def test_empty_and_single(self):
        self.assertTrue(linear_quotients_check([]))
        single = linear_quotients_check(TextUtils.parse_monomial_list("x1*x2"))
        self.assertEqual([p.r for p in single.profiles], [0])


if __name__ == '__main__':
    unittest.main()
