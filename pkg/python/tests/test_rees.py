"""
Tests for the Rees algebra Gröbner basis, standard monomials, the exchange property
and the lex witness
"""
import sys
import unittest
from pathlib import Path

from hypothesis import given, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from processors.borel import BorelInstance, generators
from processors.rees import (ReesLayout, ReesTerm, ToricBinomial, buchberger_verify, ell_exchange_check,
                             fiber_dimension, lex_quadratic_witness, quadratic_kernel_probes, reduced_gb,
                             reducedness_check, sorting_relations, standard_monomials, verify_gb,
                             verify_kernel, x_condition_check, x_relations)
from processors.sortnet import sorted_tuples
from utils.errors import InstanceError
from utils.monomial import Monomial, product
from tests.strategies import borel_instances


class TestRelations(unittest.TestCase):
    """Closed-form relations"""

    def setUp(self):
        self.inst = BorelInstance(9, 2, (2, 4, 9))

    def test_degree_two_generic_instance(self):
        """B_1(x2x3) in three variables needs only x-relations"""
        inst = BorelInstance(3, 1, (2, 3))
        self.assertEqual([b.to_text() for b in reduced_gb(inst)],
                         ["x2*t[x1*x3] - x3*t[x1*x2]", "x1*t[x2*x3] - x3*t[x1*x2]"])
        self.assertEqual(sorting_relations(inst), [])

    def test_sorting_relation_example(self):
        found = {(b.lhs.to_text(), b.rhs.to_text()) for b in sorting_relations(self.inst)}
        self.assertIn(("t[x1*x3*x9]*t[x2*x4*x6]", "t[x1*x3*x6]*t[x2*x4*x9]"), found)
        self.assertTrue(all(b.family == "sorting" for b in sorting_relations(self.inst)))

    def test_gb_lists_x_relations_first(self):
        gb = reduced_gb(self.inst)
        families = [b.family for b in gb]
        self.assertEqual(families, sorted(families, key=lambda f: f != "x"))
        self.assertEqual(len(gb), len(x_relations(self.inst)) + len(sorting_relations(self.inst)))

    def test_every_relation_is_in_the_kernel(self):
        self.assertTrue(all(verify_kernel(b, self.inst) for b in reduced_gb(self.inst)))
        self.assertTrue(all(verify_kernel(b, self.inst) for b in quadratic_kernel_probes(self.inst)))

    def test_kernel_membership_by_image(self):
        n = self.inst.n
        v = Monomial.from_indices([1, 3, 5], n)
        w = Monomial.from_indices([1, 3, 6], n)
        exchange = ToricBinomial(ReesTerm.of(n, [6], [v]), ReesTerm.of(n, [5], [w]), "x")
        self.assertTrue(verify_kernel(exchange, self.inst))
        self.assertFalse(verify_kernel(ToricBinomial(ReesTerm.of(n, [6], [v]), ReesTerm.of(n, [6], [v]), "x"),
                                       self.inst))
        self.assertFalse(verify_kernel(ToricBinomial(ReesTerm.of(n, [5], [v]), ReesTerm.of(n, [6], [w]), "x"),
                                       self.inst))

    def test_json_shape(self):
        data = sorting_relations(self.inst)[0].to_dict()
        self.assertEqual(set(data), {'lhs', 'rhs', 'marked', 'family'})
        self.assertEqual(data['marked'], 'lhs')

    def test_layout_round_trip(self):
        layout = ReesLayout(self.inst)
        term = ReesTerm.of(self.inst.n, [1, 1], generators(self.inst)[:2])
        self.assertEqual(layout.size, 9 + 13)
        self.assertEqual(layout.decode(layout.encode(term)), term)
        with self.assertRaises(InstanceError):
            layout.encode(ReesTerm.of(self.inst.n, t=[Monomial.from_indices([3, 5, 7], 9)]))


class TestGroebnerVerification(unittest.TestCase):
    """Buchberger's criterion and completeness probes"""

    def setUp(self):
        self.inst = BorelInstance(9, 2, (2, 4, 9))

    def test_example_is_verified(self):
        result = verify_gb(self.inst)
        self.assertTrue(result.verified)
        self.assertFalse(result.inconclusive)
        self.assertTrue(result.x_condition)
        self.assertTrue(result.reduced)
        self.assertGreater(result.buchberger.pairs_checked, 0)

    def test_deleted_sorting_relation_is_detected(self):
        gb = reduced_gb(self.inst)
        victim = next(b for b in gb if b.family == "sorting")
        mutated = [b for b in gb if b != victim]
        result = verify_gb(self.inst, mutated)
        self.assertFalse(result.verified)
        self.assertEqual(result.failing_probe, victim.to_text())

    def test_reducedness(self):
        gb = reduced_gb(self.inst)
        self.assertTrue(reducedness_check(gb, self.inst))
        self.assertTrue(x_condition_check(gb))
        self.assertFalse(reducedness_check(gb + [gb[0]], self.inst))

    def test_buchberger_alone(self):
        result = buchberger_verify(reduced_gb(BorelInstance(6, 1, (2, 4, 6))), BorelInstance(6, 1, (2, 4, 6)))
        self.assertEqual(result.status, "verified")
        self.assertIsNone(result.failing_pair)

    @settings(deadline=None, max_examples=15)
    @given(borel_instances(n_max=6))
    def test_closed_form_is_a_groebner_basis(self, inst):
        self.assertTrue(verify_gb(inst).verified)


class TestStandardMonomials(unittest.TestCase):
    """Standard monomials and the exchange property"""

    def test_standard_monomials_are_sorted_tuples(self):
        inst = BorelInstance(9, 2, (2, 4, 9))
        expected = [st.monomials for st in sorted_tuples(generators(inst), 2)]
        self.assertEqual(standard_monomials(inst, 2), expected)

    def test_exchange_property(self):
        self.assertTrue(ell_exchange_check(BorelInstance(9, 2, (2, 4, 9)), 2))
        self.assertTrue(ell_exchange_check(BorelInstance(6, 2, (3, 6)), 3))

    def test_exchange_needs_positive_degree(self):
        with self.assertRaises(InstanceError):
            ell_exchange_check(BorelInstance(4, 2, (2, 4)), 0)


class TestFiber(unittest.TestCase):
    """The fiber ring"""

    def test_default_lex_witness(self):
        report = lex_quadratic_witness()
        self.assertTrue(report.kernel)
        self.assertTrue(report.cubic_is_initial)
        self.assertEqual(report.quadratic_divisors, [])
        self.assertTrue(report.not_quadratic)
        self.assertFalse(report.cubic_sorted)
        self.assertEqual(report.to_dict()['instance'], {'n': 10, 't': 2, 'u': [6, 8, 10]})

    def test_explicit_remark_instance_uses_its_cubic(self):
        report = lex_quadratic_witness(BorelInstance(10, 2, (6, 8, 10)))
        self.assertTrue(report.has_cubic)
        self.assertTrue(report.not_quadratic)
        self.assertEqual(report.to_dict()['binomial'], lex_quadratic_witness().to_dict()['binomial'])

    def test_single_variable_support_has_no_quadratic_initials(self):
        """d = 1: products of distinct variables never collide"""
        report = lex_quadratic_witness(BorelInstance(5, 2, (5,)))
        self.assertEqual(report.initials, [])
        self.assertFalse(report.has_cubic)
        self.assertFalse(report.not_quadratic)

    def test_quadratic_initials_lead_nontrivial_binomials(self):
        inst = BorelInstance(6, 1, (2, 4, 6))
        gens = generators(inst)
        report = lex_quadratic_witness(inst)
        self.assertTrue(report.initials)
        for a, b in report.initials:
            partners = [(c, e) for i, c in enumerate(gens) for e in gens[i:]
                        if product(c, e) == product(a, b) and (c, e) != (a, b)]
            self.assertTrue(partners, msg=f"{a}*{b}")

    def test_custom_witness_checks_its_inputs(self):
        inst = BorelInstance(4, 2, (2, 4))
        with self.assertRaises(InstanceError):
            lex_quadratic_witness(inst, cubic=[Monomial.from_indices([1, 3], 4)])
        with self.assertRaises(InstanceError):
            lex_quadratic_witness(inst, [Monomial.from_indices([3, 4], 4)], [Monomial.from_indices([1, 3], 4)])

    def test_fiber_dimension(self):
        self.assertEqual(fiber_dimension(BorelInstance(8, 2, (3, 5, 8))), 8)
        self.assertEqual(fiber_dimension(BorelInstance(4, 2, (2, 4))), 3)


if __name__ == '__main__':
    unittest.main()
