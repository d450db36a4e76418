"""
Acceptance runner: every guaranteed statement about B_t(u) checked end to end
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from processors.borel import (BorelInstance, all_instances, closure_oracle, generators, is_veronese,
                              random_instance, uncovered_variables, veronese_instance)
from processors.dual import (dual_generators, facet_oracle, facets, linear_quotients_check, minimal_primes,
                             scm_order)
from processors.powers import (cohen_macaulay_check, depth_report, limdepth_witness, persistence_check,
                               veronese_support_obstruction)
from processors.rees import ell_exchange_check, fiber_dimension, lex_quadratic_witness, verify_gb
from utils.errors import BorelError, InstanceError
from utils.monomial import Monomial
from utils.run_config import GuardLimits
from utils.text_utils import TextUtils

logger = logging.getLogger(__name__)

EXAMPLE_DUAL = "(x1*x2, x1*x4, x3*x4, x1*x6*x7*x8*x9, x3*x6*x7*x8*x9, x5*x6*x7*x8*x9)"


@dataclass
class ReproductionContext:
    seed: int = 20240101
    quick: bool = False
    inject_fault: bool = False
    guards: GuardLimits = field(default_factory=GuardLimits)

    def rng(self, offset: int) -> np.random.Generator:
        """Independent stream per criterion so checks can run in any order"""
        return np.random.default_rng([self.seed, offset])

    def scaled(self, full: int, quick: int) -> int:
        return quick if self.quick else full


@dataclass
class CheckResult:
    criterion: int
    claim: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'criterion': self.criterion, 'claim': self.claim, 'passed': self.passed, 'detail': self.detail}


def _duals_from_facets(inst: BorelInstance, facet_sets) -> List[Monomial]:
    result = []
    for members in facet_sets:
        inside = set(members)
        result.append(Monomial.from_indices([i for i in range(1, inst.n + 1) if i not in inside], inst.n))
    return result


def check_example_dual(ctx: ReproductionContext) -> CheckResult:
    inst = BorelInstance(9, 2, (2, 4, 9))
    duals = dual_generators(inst)
    text = TextUtils.format_monomials(duals)

    gens = generators(inst)
    if ctx.inject_fault:
        logger.warning("Fault injection: dropping the last minimal generator")
        gens = gens[:-1]
    scanned = _duals_from_facets(inst, facet_oracle(inst, gens))
    try:
        ordered = [g.monomial for g in scm_order(scanned, inst)]
        scm_ok = linear_quotients_check(ordered).success
        error = None
    except InstanceError as e:
        scm_ok, error = False, str(e)
    passed = text == EXAMPLE_DUAL and set(scanned) == set(duals) and scm_ok
    return CheckResult(1, "Alexander dual of B_2(x2*x4*x9) and its SCM ordering", passed,
                       {'dual': text, 'scanned_matches': set(scanned) == set(duals), 'scm': scm_ok, 'error': error})


def check_scm_suite(ctx: ReproductionContext) -> CheckResult:
    rng = ctx.rng(2)
    count = ctx.scaled(100, 15)
    failures = []
    for _ in range(count):
        inst = random_instance(rng, n_max=12, d_max=4, full_support=False, d_min=2, min_generators=4)
        ordered = [g.monomial for g in scm_order(dual_generators(inst), inst)]
        result = linear_quotients_check(ordered)
        if not result.success:
            failures.append({'instance': inst.to_dict(), 'failure_index': result.failure_index})
    return CheckResult(2, "Dual generators have linear quotients in the SCM order", not failures,
                       {'instances': count, 'failures': failures})


def check_facet_oracle(ctx: ReproductionContext) -> CheckResult:
    n_max = ctx.scaled(8, 6)
    checked = 0
    mismatches = []
    for n in range(2, n_max + 1):
        for inst in all_instances(n):
            checked += 1
            found = facets(inst)
            members = sorted(f.members for f in found)
            duals_ok = sorted(dual_generators(inst), key=lambda m: m.exponents) == sorted(
                (Monomial.from_indices(f.complement(n), n) for f in found), key=lambda m: m.exponents)
            if members != facet_oracle(inst) or not duals_ok:
                mismatches.append(inst.to_dict())
    return CheckResult(3, "Facet formula equals the brute-force maximal non-faces", not mismatches,
                       {'instances': checked, 'mismatches': mismatches[:10]})


def check_generator_closure(ctx: ReproductionContext) -> CheckResult:
    n_max = ctx.scaled(8, 6)
    checked = 0
    mismatches = []
    for n in range(2, n_max + 1):
        for inst in all_instances(n):
            checked += 1
            if generators(inst) != closure_oracle(inst):
                mismatches.append(inst.to_dict())
    return CheckResult(4, "Generator enumeration equals the exchange-move closure", not mismatches,
                       {'instances': checked, 'mismatches': mismatches[:10]})


def check_rees_gb(ctx: ReproductionContext) -> CheckResult:
    rng = ctx.rng(5)
    instances = [BorelInstance(9, 2, (2, 4, 9))]
    for _ in range(ctx.scaled(20, 3)):
        instances.append(random_instance(rng, n_max=9, d_max=3, full_support=False, max_generators=30,
                                         d_min=2, min_generators=4))
    rows = []
    for inst in instances:
        report = verify_gb(inst)
        rows.append({'instance': inst.to_dict(), 'verified': report.verified,
                     'inconclusive': report.inconclusive, 'x_condition': report.x_condition,
                     'reduced': report.reduced})
    passed = all(r['verified'] and r['x_condition'] and r['reduced'] for r in rows)
    return CheckResult(5, "Closed-form Rees Gröbner basis is a reduced Gröbner basis", passed, {'runs': rows})


def check_ell_exchange(ctx: ReproductionContext) -> CheckResult:
    n_max = ctx.scaled(8, 5)
    checked = 0
    failures = []
    for n in range(2, n_max + 1):
        for inst in all_instances(n):
            if len(generators(inst)) > 15:
                continue
            checked += 1
            result = ell_exchange_check(inst, 2)
            if not result.holds:
                failures.append({'instance': inst.to_dict(), 'counterexample': result.counterexample})
    return CheckResult(6, "Exchange property for the sorting order (N = 2)", not failures,
                       {'instances': checked, 'failures': failures[:10]})


def check_limit_depth(ctx: ReproductionContext) -> CheckResult:
    inst = BorelInstance(8, 2, (3, 5, 8))
    limit = ctx.guards.max_power_generators
    reports = [depth_report(inst, k, limit) for k in (3, 4)]
    witness = limdepth_witness(inst, 3, limit)
    passed = all(r.depth == 0 and r.projdim == 8 for r in reports) and witness.verified
    return CheckResult(7, "depth S/I^k = 0 for k >= d when i_1 >= t+1", passed,
                       {'reports': [r.to_dict() for r in reports], 'witness': witness.witness.to_text(),
                        'colon_variables': list(witness.colon_variables)})


def check_veronese_limit(ctx: ReproductionContext) -> CheckResult:
    inst = BorelInstance(4, 2, (2, 4))
    limit = ctx.guards.max_power_generators
    depths = {k: depth_report(inst, k, limit).depth for k in (2, 3, 4)}
    obstruction = {k: veronese_support_obstruction(inst, k, limit) for k in (2, 3)}
    rank = fiber_dimension(inst)
    passed = all(d == 1 for d in depths.values()) and all(obstruction.values()) and rank == 3
    return CheckResult(8, "Veronese powers have limit depth d-1", passed,
                       {'depths': depths, 'obstruction': obstruction, 'fiber_dimension': rank})


def check_fiber_dimension(ctx: ReproductionContext) -> CheckResult:
    rng = ctx.rng(9)
    instances = [BorelInstance(8, 2, (3, 5, 8))]
    for _ in range(10):
        instances.append(random_instance(rng, n_max=10, d_max=4, full_support=True, min_first_gap=True))
    rows = [{'instance': inst.to_dict(), 'rank': fiber_dimension(inst)} for inst in instances]
    passed = all(r['rank'] == r['instance']['n'] for r in rows)
    return CheckResult(9, "dim K[G(B_t(u))] = n when i_1 >= t+1", passed, {'runs': rows})


def check_lex_witness(ctx: ReproductionContext) -> CheckResult:
    report = lex_quadratic_witness()
    return CheckResult(10, "Lex Gröbner basis of the fiber ideal is not quadratic", report.not_quadratic,
                       report.to_dict())


def check_persistence(ctx: ReproductionContext) -> CheckResult:
    guards = ctx.guards
    rows = []
    for inst in (BorelInstance(3, 1, (2, 3)), BorelInstance(4, 2, (2, 4))):
        result = persistence_check(inst, 3, guards.max_power_generators, guards.max_decomposition_vars,
                                   guards.max_components, cross_check=True, max_box=guards.max_witness_box)
        rows.append({'instance': inst.to_dict(), **result.to_dict()})
    passed = all(r['holds'] and r['oracle_agreement'] for r in rows)
    return CheckResult(11, "Ass(I^k) is increasing in k", passed, {'runs': rows})


def check_first_minimal_prime(ctx: ReproductionContext) -> CheckResult:
    n_max = ctx.scaled(8, 6)
    checked = 0
    missing = []
    for n in range(2, n_max + 1):
        for inst in all_instances(n):
            checked += 1
            if tuple(range(1, inst.u[0] + 1)) not in minimal_primes(inst):
                missing.append(inst.to_dict())
    return CheckResult(12, "(x_1, ..., x_{i_1}) is a minimal prime", not missing,
                       {'instances': checked, 'missing': missing[:10]})


def _random_non_veronese(rng: np.random.Generator) -> BorelInstance:
    while True:
        inst = random_instance(rng, n_max=10, d_max=4, n_min=3, full_support=True, max_generators=200)
        if inst.d >= 2 and not is_veronese(inst) and not uncovered_variables(inst):
            return inst


def check_cohen_macaulay(ctx: ReproductionContext) -> CheckResult:
    rows = []
    for t in range(1, 11):
        for d in range(1, 10 // t + 1):
            inst = veronese_instance(d * t, d, t)
            rows.append({'instance': inst.to_dict(), 'expected': True, **cohen_macaulay_check(inst)})
    rng = ctx.rng(13)
    for _ in range(10):
        inst = _random_non_veronese(rng)
        rows.append({'instance': inst.to_dict(), 'expected': False, **cohen_macaulay_check(inst)})
    passed = all(r['cohen_macaulay'] == r['expected'] for r in rows)
    return CheckResult(13, "B_t(u) is Cohen-Macaulay iff it is Veronese", passed,
                       {'runs': [r for r in rows if r['cohen_macaulay'] != r['expected']], 'checked': len(rows)})


CHECKS: List[Callable[[ReproductionContext], CheckResult]] = [
    check_example_dual, check_scm_suite, check_facet_oracle, check_generator_closure, check_rees_gb,
    check_ell_exchange, check_limit_depth, check_veronese_limit, check_fiber_dimension, check_lex_witness,
    check_persistence, check_first_minimal_prime, check_cohen_macaulay,
]


def reproduce_all(seed: int = 20240101, quick: bool = False, inject_fault: bool = False,
                  guards: Optional[GuardLimits] = None,
                  only: Optional[List[int]] = None) -> Dict[str, Any]:
    """
    Run every acceptance check and summarise pass/fail per claim

    Args:
        seed: Seed for the randomized suites (reported back)
        quick: Reduced instance counts
        inject_fault: Drop a generator before the dual/SCM check
        guards: Size guards
        only: Restrict to these criterion numbers
    """
    ctx = ReproductionContext(seed, quick, inject_fault, guards or GuardLimits())
    logger.info(f"Reproduction run with seed {seed}{' (quick)' if quick else ''}")
    results = []
    for number, check in enumerate(CHECKS, 1):
        if only and number not in only:
            continue
        start = time.time()
        try:
            result = check(ctx)
        except BorelError as e:
            logger.error(f"Criterion {number} raised {type(e).__name__}: {e}")
            result = CheckResult(number, check.__doc__ or check.__name__, False,
                                 {'error': str(e), 'error_type': type(e).__name__})
        logger.info(f"{'✅' if result.passed else '❌'} {number}. {result.claim} ({time.time() - start:.2f}s)")
        results.append(result)

    failed = [r.criterion for r in results if not r.passed]
    return {
        'seed': seed,
        'quick': quick,
        'inject_fault': inject_fault,
        'checks': [r.to_dict() for r in results],
        'passed': len(results) - len(failed),
        'failed': failed,
        'success': not failed,
    }
