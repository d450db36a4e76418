"""
Powers of B_t(u): lex linear quotients, projective dimension and depth, the limit-depth
witness, and associated primes with two independent oracles
"""
import logging
import time
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

try:
    from ..utils.errors import ClaimFailure, GuardExceededError, HypothesisError, InstanceError
    from ..utils.monomial import IndexSet, Monomial, divides, purelex_compare, same_ambient, sort_decreasing
    from ..utils.run_config import GuardLimits
    from .borel import BorelInstance, contains, generators, is_veronese
    from .dual import QuotientProfile, krull_dimension, linear_quotients_check
    from .oracle import colon_ideal, ideal_contains, irreducible_decomposition
    from .sortnet import sorted_tuples
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import ClaimFailure, GuardExceededError, HypothesisError, InstanceError
    from utils.monomial import IndexSet, Monomial, divides, purelex_compare, same_ambient, sort_decreasing
    from utils.run_config import GuardLimits
    from processors.borel import BorelInstance, contains, generators, is_veronese
    from processors.dual import QuotientProfile, krull_dimension, linear_quotients_check
    from processors.oracle import colon_ideal, ideal_contains, irreducible_decomposition
    from processors.sortnet import sorted_tuples

logger = logging.getLogger(__name__)

__all__ = [
    'QuotientProfile', 'DepthReport', 'power_generators', 'lex_quotient_profiles', 'depth_report',
    'limdepth_witness', 'veronese_support_obstruction', 'associated_primes', 'persistence_check',
    'ass_witness_oracle', 'cohen_macaulay_check', 'depth_sequence', 'oracles_agree', 'PowerAnalyzer',
]


@dataclass(frozen=True)
class DepthReport:
    """projdim S/I^k = max r_j + 1 and depth = n - projdim"""

    k: int
    projdim: int
    depth: int
    witness: Optional[Monomial] = None
    generator_count: int = 0

    def __post_init__(self):
        if self.depth < 0:
            raise ClaimFailure(f"Negative depth {self.depth} for k={self.k}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'projdim': self.projdim,
            'depth': self.depth,
            'witness': self.witness.to_text() if self.witness is not None else None,
            'generators': self.generator_count,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int) -> "DepthReport":
        try:
            from ..utils.text_utils import TextUtils
        except ImportError:
            from utils.text_utils import TextUtils
        witness = TextUtils.parse_monomial(data['witness'], n) if data.get('witness') else None
        return cls(int(data['k']), int(data['projdim']), int(data['depth']), witness, int(data.get('generators', 0)))


def power_generators(inst: BorelInstance, k: int, max_generators: int = 200_000) -> List[Monomial]:
    """G(I^k) in decreasing pure lex order, one product per sorted k-tuple"""
    if k < 1:
        raise InstanceError(f"Power k must be at least 1, got {k}")
    gens = generators(inst)
    if k == 1:
        return gens
    products = [st.product() for st in sorted_tuples(gens, k, limit=max_generators)]
    return sort_decreasing(products)


def lex_quotient_profiles(inst: BorelInstance, k: int, max_generators: int = 200_000) -> List[QuotientProfile]:
    """
    Linear quotients of G(I^k) in decreasing lex order; a failure raises ClaimFailure
    """
    start = time.time()
    gens = power_generators(inst, k, max_generators)
    logger.info(f"Profiling {len(gens)} generators of ({inst.label})^{k}")
    result = linear_quotients_check(gens)
    if not result.success:
        raise ClaimFailure(f"I^{k} of {inst.label} has no linear quotients in lex order: "
                           f"step {result.failure_index} fails against generator {result.offending_index}")
    logger.info(f"Profiles for k={k} done in {time.time() - start:.2f}s")
    return result.profiles


def depth_report(inst: BorelInstance, k: int, max_generators: int = 200_000) -> DepthReport:
    profiles = lex_quotient_profiles(inst, k, max_generators)
    max_r = max(p.r for p in profiles)
    witness = next(p.generator for p in profiles if p.r == max_r)
    projdim = max_r + 1
    return DepthReport(k, projdim, inst.n - projdim, witness, len(profiles))


def depth_sequence(inst: BorelInstance, kmax: int, max_generators: int = 200_000) -> List[DepthReport]:
    return [depth_report(inst, k, max_generators) for k in range(1, kmax + 1)]


def cohen_macaulay_check(inst: BorelInstance) -> Dict[str, Any]:
    """depth S/I against dim S/I (largest facet)"""
    depth = depth_report(inst, 1).depth
    dim = krull_dimension(inst)
    return {'depth': depth, 'dim': dim, 'cohen_macaulay': depth == dim, 'veronese': is_veronese(inst)}


@dataclass
class LimDepthWitness:
    """The monomial w whose colon by the lex-larger generators of I^k is (x_1, ..., x_{n-1})"""

    k: int
    witness: Monomial
    factors: List[Monomial]
    steps: List[Dict[str, Any]] = field(default_factory=list)
    colon_variables: IndexSet = ()

    @property
    def verified(self) -> bool:
        n = self.witness.n
        return (all(step['ok'] for step in self.steps)
                and [step['j'] for step in self.steps] == list(range(1, n))
                and self.colon_variables == tuple(range(1, n)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'witness': self.witness.to_text(),
            'factors': [m.to_text() for m in self.factors],
            'steps': self.steps,
            'colon_variables': list(self.colon_variables),
            'verified': self.verified,
        }


def _colon_variables(earlier: Sequence[Monomial], w: Monomial) -> IndexSet:
    if not earlier:
        return ()
    exps = np.array([m.exponents for m in earlier], dtype=np.int64)
    colons = np.maximum(exps - np.array(w.exponents, dtype=np.int64), 0)
    linear = colons[colons.sum(axis=1) == 1]
    return tuple(int(v) + 1 for v in np.unique(np.argmax(linear, axis=1))) if len(linear) else ()


def limdepth_witness(inst: BorelInstance, k: int, max_generators: int = 200_000) -> LimDepthWitness:
    """
    Build w = v_1 ... v_d u^(k-d) with v_{d-s+1} = x_1 x_{1+t} ... x_{1+(s-2)t} x_{i_s} ... x_{i_d}
    and show x_j w lies in the ideal of the lex-larger generators of I^k for each j < n

    Requires i_1 >= t+1, i_d = n and k >= d.
    """
    n, t, u, d = inst.n, inst.t, inst.u, inst.d
    if u[0] < t + 1:
        raise HypothesisError(f"i_1 = {u[0]} < t+1 = {t + 1}; the witness needs i_1 >= t+1 "
                              f"(Veronese-type instances have depth d-1 in the limit)")
    if u[-1] != n:
        raise HypothesisError(f"i_d = {u[-1]} differs from n = {n}")
    if k < d:
        raise HypothesisError(f"k = {k} < d = {d}")

    factors = []
    for s in range(d, 0, -1):
        indices = [1 + (l - 1) * t for l in range(1, s)] + list(u[s - 1:])
        factors.append(Monomial.from_indices(indices, n))
    w = Monomial.one(n)
    for m in factors + [inst.u_monomial] * (k - d):
        w = w * m

    steps = []
    bounds = (1,) + u
    for s in range(1, d + 1):
        for j in range(bounds[s - 1], u[s - 1]):
            replaced = factors[d - s].replace(u[s - 1], j)
            larger = w.replace(u[s - 1], j)
            ok = (contains(inst, replaced) and replaced.is_squarefree
                  and purelex_compare(larger, w) > 0 and divides(larger, w * Monomial.variable(j, n)))
            steps.append({'j': j, 's': s, 'replacement': replaced.to_text(), 'larger': larger.to_text(), 'ok': ok})

    power = power_generators(inst, k, max_generators)
    if w not in set(power):
        raise ClaimFailure(f"{w} is not a minimal generator of I^{k}")
    earlier = [g for g in power if purelex_compare(g, w) > 0]
    result = LimDepthWitness(k, w, factors, steps, _colon_variables(earlier, w))
    logger.debug(f"Limit-depth witness {w}: {len(result.colon_variables)} colon variables")
    return result


def veronese_support_obstruction(inst: BorelInstance, k: int, max_generators: int = 200_000) -> bool:
    """True iff no colon variable set V_j of I^k meets supp(u) = {t, 2t, ..., dt}"""
    if not is_veronese(inst) or inst.n != inst.d * inst.t:
        raise HypothesisError(f"{inst.label} is not u = x_t x_2t ... x_dt with n = dt")
    support = set(inst.u)
    return all(not support.intersection(p.variables) for p in lex_quotient_profiles(inst, k, max_generators))


def associated_primes(gens: Sequence[Monomial], n: int, max_vars: int = 12,
                      max_components: int = 5_000) -> List[IndexSet]:
    """Radicals of an irredundant irreducible decomposition, sorted"""
    components = irreducible_decomposition(gens, n, max_vars, max_components)
    return sorted({c.radical for c in components})


def ass_witness_oracle(gens: Sequence[Monomial], n: int, prime: IndexSet,
                       max_box: int = 1_000_000) -> Optional[Monomial]:
    """
    Search exponent vectors below the generator maxima for m with (I : m) = P

    Args:
        gens: Monomial generators of I
        n: Ambient variable count
        prime: Variable set of P
        max_box: Refuse boxes with more points
    """
    same_ambient(gens)
    caps = np.max(np.array([g.exponents for g in gens], dtype=np.int64), axis=0)
    box = int(np.prod(caps + 1, dtype=np.int64))
    if box > max_box:
        raise GuardExceededError(f"Witness box has {box} points (limit {max_box})")
    target = sort_decreasing(Monomial.variable(i, n) for i in prime)
    for exps in cartesian(*(range(int(c) + 1) for c in caps)):
        m = Monomial(tuple(exps))
        if ideal_contains(gens, m):
            continue
        if colon_ideal(gens, m) == target:
            return m
    return None


@dataclass
class PersistenceResult:
    holds: bool
    ass_by_k: Dict[int, List[IndexSet]]
    violating_k: Optional[int] = None
    oracle_agreement: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'violating_k': self.violating_k,
            'ass': {str(k): [list(p) for p in primes] for k, primes in self.ass_by_k.items()},
            'oracle_agreement': self.oracle_agreement,
        }


def oracles_agree(gens: Sequence[Monomial], n: int, primes: Sequence[IndexSet], max_box: int = 1_000_000) -> bool:
    """Every candidate prime over the used variables has a witness iff it is associated"""
    used = sorted({i for g in gens for i in g.support})
    expected = set(primes)
    for mask in range(1, 1 << len(used)):
        prime = tuple(used[b] for b in range(len(used)) if (mask >> b) & 1)
        if (ass_witness_oracle(gens, n, prime, max_box) is not None) != (prime in expected):
            logger.info(f"Associated-prime oracles disagree on {prime}")
            return False
    return True


def persistence_check(inst: BorelInstance, kmax: int, max_generators: int = 200_000,
                      max_vars: int = 12, max_components: int = 5_000,
                      cross_check: bool = False, max_box: int = 1_000_000) -> PersistenceResult:
    """
    Ass(I^k) ⊆ Ass(I^(k+1)) for 1 <= k < kmax

    Args:
        inst: The instance
        kmax: Largest power examined
        cross_check: Also confirm every prime against the witness oracle
    """
    start = time.time()
    ass_by_k: Dict[int, List[IndexSet]] = {}
    agreement: Optional[bool] = True if cross_check else None
    for k in range(1, kmax + 1):
        gens = power_generators(inst, k, max_generators)
        ass_by_k[k] = associated_primes(gens, inst.n, max_vars, max_components)
        if cross_check and not oracles_agree(gens, inst.n, ass_by_k[k], max_box):
            agreement = False
        logger.debug(f"Ass(I^{k}) = {ass_by_k[k]}")
    for k in range(1, kmax):
        if not set(ass_by_k[k]) <= set(ass_by_k[k + 1]):
            return PersistenceResult(False, ass_by_k, k, agreement)
    logger.info(f"Persistence up to k={kmax} checked in {time.time() - start:.2f}s")
    return PersistenceResult(True, ass_by_k, None, agreement)


class PowerAnalyzer:
    """Depth, associated primes and persistence of the powers of one instance under fixed size guards"""

    def __init__(self, inst: BorelInstance, guards: Optional[GuardLimits] = None):
        """
        Initialize the analyzer

        Args:
            inst: The instance whose powers are examined
            guards: Size guards (defaults when omitted)
        """
        self.inst = inst
        self.guards = guards or GuardLimits()

    def generators(self, k: int) -> List[Monomial]:
        return power_generators(self.inst, k, self.guards.max_power_generators)

    def depth(self, k: int) -> DepthReport:
        return depth_report(self.inst, k, self.guards.max_power_generators)

    def veronese_obstruction(self, k: int) -> Optional[bool]:
        """None unless I is a Veronese ideal with i_d = n"""
        if not (is_veronese(self.inst) and self.inst.n == self.inst.d * self.inst.t):
            return None
        return veronese_support_obstruction(self.inst, k, self.guards.max_power_generators)

    def limdepth(self, k: int) -> LimDepthWitness:
        return limdepth_witness(self.inst, k, self.guards.max_power_generators)

    def associated_primes(self, k: int) -> List[IndexSet]:
        return associated_primes(self.generators(k), self.inst.n, self.guards.max_decomposition_vars,
                                 self.guards.max_components)

    def oracles_agree(self, k: int, primes: Sequence[IndexSet]) -> bool:
        return oracles_agree(self.generators(k), self.inst.n, primes, self.guards.max_witness_box)

    def persistence(self, kmax: int, cross_check: bool = False) -> PersistenceResult:
        guards = self.guards
        return persistence_check(self.inst, kmax, guards.max_power_generators, guards.max_decomposition_vars,
                                 guards.max_components, cross_check=cross_check, max_box=guards.max_witness_box)
