"""
Stanley-Reisner facets of B_t(u), the Alexander dual generators, the ordering that
certifies sequential Cohen-Macaulayness, and the linear-quotients certifier
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from ..utils.errors import GuardExceededError, InstanceError
    from ..utils.monomial import IndexSet, Monomial, purelex_key, same_ambient
    from .borel import BorelInstance, bounded_chains, contains, generators, uncovered_variables
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import GuardExceededError, InstanceError
    from utils.monomial import IndexSet, Monomial, purelex_key, same_ambient
    from processors.borel import BorelInstance, bounded_chains, contains, generators, uncovered_variables

logger = logging.getLogger(__name__)

FORM_ORDER = {'F2': 0, 'F3': 1, 'F1': 2}
MAX_BRUTE_FORCE_VARS = 16


@dataclass(frozen=True)
class IntervalMonomial:
    """v_j = x_j x_{j+1} ... x_{j+t-1}"""

    start: int
    width: int
    n: int

    def __post_init__(self):
        if self.start < 1 or self.start + self.width - 1 > self.n:
            raise InstanceError(f"Interval [{self.start}, {self.start + self.width - 1}] exceeds [1, {self.n}]")

    @property
    def members(self) -> IndexSet:
        return tuple(range(self.start, self.start + self.width))

    @property
    def monomial(self) -> Monomial:
        return Monomial.from_indices(self.members, self.n)


def interval_monomial(start: int, t: int, n: int) -> IntervalMonomial:
    return IntervalMonomial(start, t, n)


@dataclass(frozen=True)
class Facet:
    """
    A facet of the complex Delta with I_Delta = B_t(u), with its classification

    kind F1: parameters (j_1, ..., j_{d-1}); kind F2: no parameters;
    kind F3: parameters (j_1, ..., j_{s-1}, s).
    """

    kind: str
    parameters: Tuple[int, ...]
    members: IndexSet

    def complement(self, n: int) -> IndexSet:
        inside = set(self.members)
        return tuple(i for i in range(1, n + 1) if i not in inside)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'parameters': list(self.parameters), 'members': list(self.members)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Facet":
        return cls(data['kind'], tuple(data['parameters']), tuple(data['members']))


@dataclass(frozen=True)
class DualGenerator:
    """A minimal generator of the Alexander dual, tagged with the form of its facet"""

    monomial: Monomial
    facet: Facet

    @property
    def form(self) -> str:
        return self.facet.kind

    def to_dict(self) -> Dict[str, Any]:
        return {'monomial': self.monomial.to_text(), 'form': self.form, 'facet': self.facet.to_dict()}


@dataclass(frozen=True)
class QuotientProfile:
    """
    One step of a linear-quotients run: the colon (w_1, ..., w_{j-1}) : w_j

    variables holds V_j, the variables x with x * w_j in the previous ideal.
    """

    index: int
    generator: Monomial
    variables: IndexSet
    linear: bool = True

    @property
    def r(self) -> int:
        return len(self.variables)

    def to_dict(self) -> Dict[str, Any]:
        return {'index': self.index, 'generator': self.generator.to_text(), 'r': self.r,
                'variables': list(self.variables), 'linear': self.linear}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int) -> "QuotientProfile":
        try:
            from ..utils.text_utils import TextUtils
        except ImportError:
            from utils.text_utils import TextUtils
        return cls(int(data['index']), TextUtils.parse_monomial(data['generator'], n),
                   tuple(data['variables']), bool(data['linear']))


@dataclass
class LinearQuotientsResult:
    """Profiles of every step, or the first failing step and the offending earlier generator"""

    success: bool
    profiles: List[QuotientProfile] = field(default_factory=list)
    failure_index: Optional[int] = None
    offending_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.success

    def to_dict(self) -> Dict[str, Any]:
        return {
            'success': self.success,
            'profiles': [p.to_dict() for p in self.profiles],
            'failure_index': self.failure_index,
            'offending_index': self.offending_index,
        }


def _union(parts: Sequence[Sequence[int]]) -> IndexSet:
    return tuple(sorted({i for part in parts for i in part}))


def _facets_full_support(inst: BorelInstance) -> List[Facet]:
    """Facets for i_d = n, forms (ii), (iii), (i) in that order, deduplicated by members"""
    n, t, u, d = inst.n, inst.t, inst.u, inst.d
    candidates: List[Facet] = [Facet('F2', (), tuple(range(u[0] + 1, n + 1)))]

    for s in range(2, d):
        tail = tuple(range(u[s - 1] + 1, n + 1))
        for chain in bounded_chains(u[:s - 1], t):
            intervals = [interval_monomial(j, t, n).members for j in chain]
            candidates.append(Facet('F3', chain + (s,), _union(intervals + [tail])))

    for chain in bounded_chains(u[:d - 1], t):
        intervals = [interval_monomial(j, t, n).members for j in chain]
        candidates.append(Facet('F1', chain, _union(intervals)))

    seen = set()
    result = []
    for facet in candidates:
        if facet.members in seen:
            continue
        seen.add(facet.members)
        result.append(facet)
    return result


def facets(inst: BorelInstance) -> List[Facet]:
    """
    All facets of the Stanley-Reisner complex of B_t(u)

    When i_d < n the variables x_{i_d+1}, ..., x_n divide no generator; the facets are
    computed in K[x_1, ..., x_{i_d}] and those cone points are added to every facet.
    """
    uncovered = uncovered_variables(inst)
    if uncovered:
        logger.warning(f"{inst.label}: variables {list(uncovered)} divide no generator")

    if inst.u[-1] == inst.n:
        return _facets_full_support(inst)

    logger.info(f"{inst.label}: re-embedding into n'={inst.u[-1]} variables")
    cone = tuple(range(inst.u[-1] + 1, inst.n + 1))
    return [Facet(f.kind, f.parameters, f.members + cone) for f in _facets_full_support(inst.restricted())]


def _scm_key(g: DualGenerator) -> Tuple[int, Tuple[int, ...]]:
    return FORM_ORDER[g.form], tuple(-e for e in purelex_key(g.monomial))


def tagged_dual_generators(inst: BorelInstance) -> List[DualGenerator]:
    tagged = [DualGenerator(Monomial.from_indices(f.complement(inst.n), inst.n), f) for f in facets(inst)]
    return sorted(tagged, key=_scm_key)


def dual_generators(inst: BorelInstance) -> List[Monomial]:
    """
    One generator prod_{k not in F} x_k of the Alexander dual per facet F, listed in the
    order certified by scm_order
    """
    return [g.monomial for g in tagged_dual_generators(inst)]


def scm_order(duals: Sequence[Monomial], inst: BorelInstance) -> List[DualGenerator]:
    """
    Order the dual generators as w_1 = x_1...x_{i_1}, then the form-(3) block in
    decreasing pure lex order, then the form-(1) block in decreasing pure lex order
    """
    tagged = {g.monomial: g for g in tagged_dual_generators(inst)}
    unknown = [m for m in duals if m not in tagged]
    if unknown:
        raise InstanceError(f"Not dual generators of {inst.label}: {[str(m) for m in unknown]}")
    if set(duals) != set(tagged):
        raise InstanceError(f"Incomplete dual generator list for {inst.label}")

    chosen = [tagged[m] for m in dict.fromkeys(duals)]
    return sorted(chosen, key=_scm_key)


def linear_quotients_check(ordered: Sequence[Monomial]) -> LinearQuotientsResult:
    """
    Certify linear quotients of an ordered generator list

    For each j, V_j collects the variables x_l equal to some w_g / gcd(w_g, w_j), g < j;
    the step is linear iff every such colon monomial is divisible by a member of V_j.
    """
    if not ordered:
        return LinearQuotientsResult(True)
    n = same_ambient(ordered)
    exps = np.array([m.exponents for m in ordered], dtype=np.int64).reshape(len(ordered), n)
    profiles = [QuotientProfile(1, ordered[0], ())]

    for j in range(1, len(ordered)):
        colons = np.maximum(exps[:j] - exps[j], 0)
        degrees = colons.sum(axis=1)
        if (degrees == 0).any():
            g = int(np.argmax(degrees == 0))
            logger.debug(f"w_{g + 1} divides w_{j + 1}: not a minimal generating list")
            profiles.append(QuotientProfile(j + 1, ordered[j], (), False))
            return LinearQuotientsResult(False, profiles, j + 1, g + 1)

        linear_rows = colons[degrees == 1]
        variables = np.unique(np.argmax(linear_rows, axis=1)) if len(linear_rows) else np.array([], dtype=np.int64)
        covered = (colons[:, variables] > 0).any(axis=1) if len(variables) else np.zeros(j, dtype=bool)
        var_set = tuple(int(v) + 1 for v in variables)
        if not covered.all():
            g = int(np.argmin(covered))
            profiles.append(QuotientProfile(j + 1, ordered[j], var_set, False))
            return LinearQuotientsResult(False, profiles, j + 1, g + 1)
        profiles.append(QuotientProfile(j + 1, ordered[j], var_set))

    return LinearQuotientsResult(True, profiles)


def minimal_primes(inst: BorelInstance) -> List[IndexSet]:
    """Variable sets of the minimal primes P_{[n] minus F}, one per facet"""
    return sorted({f.complement(inst.n) for f in facets(inst)})


def krull_dimension(inst: BorelInstance) -> int:
    """dim S/I = the largest facet size"""
    return max(len(f.members) for f in facets(inst))


def _generator_masks(inst: BorelInstance, gens: Optional[Sequence[Monomial]] = None) -> List[int]:
    if inst.n > MAX_BRUTE_FORCE_VARS:
        raise GuardExceededError(f"Brute-force scans are limited to n <= {MAX_BRUTE_FORCE_VARS}")
    return [g.mask for g in (generators(inst) if gens is None else gens)]


def facet_oracle(inst: BorelInstance, gens: Optional[Sequence[Monomial]] = None) -> List[IndexSet]:
    """
    Maximal squarefree non-members of I, by exhaustive bit-set scan

    Args:
        inst: Supplies n and, unless gens is given, the generators
        gens: Squarefree generators to scan instead of G(B_t(u))
    """
    masks = _generator_masks(inst, gens)
    full = (1 << inst.n) - 1

    def in_ideal(s: int) -> bool:
        return any(g & s == g for g in masks)

    found = []
    for s in range(full + 1):
        if in_ideal(s):
            continue
        free = full & ~s
        if all(in_ideal(s | (1 << k)) for k in range(inst.n) if (free >> k) & 1):
            found.append(tuple(k + 1 for k in range(inst.n) if (s >> k) & 1))
    return sorted(found)


def intersection_check(inst: BorelInstance) -> bool:
    """I equals the intersection of the primes P_{[n] minus F} (checked on squarefree monomials)"""
    _generator_masks(inst)
    comp_masks = [sum(1 << (i - 1) for i in comp) for comp in minimal_primes(inst)]
    for s in range(1 << inst.n):
        in_intersection = all(s & c for c in comp_masks)
        if in_intersection != contains(inst, Monomial.from_mask(s, inst.n)):
            logger.debug(f"Intersection mismatch at {Monomial.from_mask(s, inst.n)}")
            return False
    return True
