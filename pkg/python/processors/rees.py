"""
Rees algebra presentation of B_t(u): the closed-form Gröbner basis of the toric ideal,
its verification by marked reduction, the exchange property and the lex witness
"""
import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from ..utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from ..utils.monomial import Monomial, product, sort_decreasing
    from .borel import BorelInstance, contains, generators
    from .oracle import MarkedBinomial, MarkedReducer, Polynomial, leads_coprime, s_polynomial
    from .sortnet import is_sorted_tuple, sort_pair, sorted_tuples
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from utils.monomial import Monomial, product, sort_decreasing
    from processors.borel import BorelInstance, contains, generators
    from processors.oracle import MarkedBinomial, MarkedReducer, Polynomial, leads_coprime, s_polynomial
    from processors.sortnet import is_sorted_tuple, sort_pair, sorted_tuples

logger = logging.getLogger(__name__)

SORTING = "sorting"
X_FAMILY = "x"
REMARK_INSTANCE = (10, 2, (6, 8, 10))
REMARK_CUBIC = ((1, 3, 8), (1, 7, 9), (2, 4, 6))
REMARK_PARTNER = ((1, 3, 9), (1, 6, 8), (2, 4, 7))


@dataclass(frozen=True)
class PresVar:
    """A variable of R = S[t_v : v in G(I)]: x_i (index set) or t_v (generator set)"""

    kind: str
    index: Optional[int] = None
    generator: Optional[Monomial] = None

    def __post_init__(self):
        if self.kind == 'x' and (self.index is None or self.generator is not None):
            raise InstanceError("x-variables carry an index only")
        if self.kind == 't' and (self.generator is None or self.index is not None):
            raise InstanceError("t-variables carry a generator only")
        if self.kind not in ('x', 't'):
            raise InstanceError(f"Unknown variable kind {self.kind!r}")

    def to_text(self) -> str:
        return f"x{self.index}" if self.kind == 'x' else f"t[{self.generator}]"


@dataclass(frozen=True)
class ReesTerm:
    """x^a * t_{v_1} ... t_{v_r}; the t-part is a multiset kept in decreasing lex order"""

    x: Monomial
    t: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 't', tuple(sort_decreasing(self.t)))

    @classmethod
    def of(cls, n: int, x_indices: Sequence[int] = (), t: Sequence[Monomial] = ()) -> "ReesTerm":
        return cls(Monomial.from_indices(x_indices, n), tuple(t))

    @property
    def x_degree(self) -> int:
        return self.x.degree

    @property
    def t_degree(self) -> int:
        return len(self.t)

    def image(self) -> Tuple[Monomial, int]:
        """(x-monomial, power of t) under x_i -> x_i, t_v -> v t"""
        result = self.x
        for v in self.t:
            result = product(result, v)
        return result, self.t_degree

    def variables(self) -> List[PresVar]:
        return ([PresVar('x', index=i) for i in self.x.indices]
                + [PresVar('t', generator=v) for v in self.t])

    def to_text(self) -> str:
        parts = [v.to_text() for v in self.variables()]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class ToricBinomial:
    """lhs - rhs in the toric ideal J; lhs is the marked initial term"""

    lhs: ReesTerm
    rhs: ReesTerm
    family: str

    def to_text(self) -> str:
        return f"{self.lhs.to_text()} - {self.rhs.to_text()}"

    def to_dict(self) -> Dict[str, Any]:
        return {'lhs': self.lhs.to_text(), 'rhs': self.rhs.to_text(), 'marked': 'lhs', 'family': self.family}


class ReesLayout:
    """Exponent-vector layout of R: x_1..x_n first, then t_v in generator order"""

    def __init__(self, inst: BorelInstance):
        self.inst = inst
        self.gens = generators(inst)
        self.position = {g: inst.n + k for k, g in enumerate(self.gens)}

    @property
    def size(self) -> int:
        return self.inst.n + len(self.gens)

    def encode(self, term: ReesTerm) -> Tuple[int, ...]:
        exps = list(term.x.exponents) + [0] * len(self.gens)
        for v in term.t:
            if v not in self.position:
                raise InstanceError(f"t[{v}] is not a variable of the presentation ring")
            exps[self.position[v]] += 1
        return tuple(exps)

    def decode(self, exps: Sequence[int]) -> ReesTerm:
        n = self.inst.n
        t_part = [g for k, g in enumerate(self.gens) for _ in range(exps[n + k])]
        return ReesTerm(Monomial(tuple(exps[:n])), tuple(t_part))

    def marked(self, b: ToricBinomial) -> MarkedBinomial:
        return MarkedBinomial(self.encode(b.lhs), self.encode(b.rhs))

    def format_polynomial(self, poly: Polynomial) -> str:
        if not poly:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{self.decode(t).to_text()}"
                        for t, c in sorted(poly.items(), reverse=True))


def sorting_relations(inst: BorelInstance) -> List[ToricBinomial]:
    """t_v t_w - t_v' t_w' for every unordered unsorted pair {v, w}"""
    gens = generators(inst)
    n = inst.n
    relations = []
    for v, w in combinations(gens, 2):
        v_sorted, w_sorted = sort_pair(v, w)
        if {v_sorted, w_sorted} == {v, w}:
            continue
        relations.append(ToricBinomial(ReesTerm.of(n, t=(v, w)), ReesTerm.of(n, t=(v_sorted, w_sorted)), SORTING))
    return relations


def x_relations(inst: BorelInstance) -> List[ToricBinomial]:
    """x_i t_v - x_j t_w with i < j, w = x_i v / x_j in G(I) and j as large as possible"""
    gens = generators(inst)
    members = set(gens)
    n = inst.n
    relations = []
    for v in gens:
        for i in range(1, n + 1):
            if v.exponent(i):
                continue
            for j in sorted((j for j in v.support if j > i), reverse=True):
                w = v.replace(j, i)
                if w in members:
                    relations.append(ToricBinomial(ReesTerm.of(n, [i], [v]), ReesTerm.of(n, [j], [w]), X_FAMILY))
                    break
    return relations


def reduced_gb(inst: BorelInstance) -> List[ToricBinomial]:
    """The x-relations followed by the sorting relations; first-match reduction prefers x-parts"""
    return x_relations(inst) + sorting_relations(inst)


def verify_kernel(b: ToricBinomial, inst: BorelInstance) -> bool:
    """True iff lhs != rhs, every t-variable is a generator and both sides share one image"""
    if b.lhs == b.rhs:
        return False
    members = set(generators(inst))
    if any(v not in members for v in b.lhs.t + b.rhs.t):
        return False
    return b.lhs.image() == b.rhs.image()


@dataclass
class BuchbergerResult:
    """verified, failed (with the first non-reducing pair) or inconclusive"""

    status: str
    pairs_checked: int = 0
    pairs_skipped: int = 0
    failing_pair: Optional[Tuple[int, int]] = None
    remainder: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def __bool__(self) -> bool:
        return self.verified

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status,
            'pairs_checked': self.pairs_checked,
            'pairs_skipped': self.pairs_skipped,
            'failing_pair': list(self.failing_pair) if self.failing_pair else None,
            'remainder': self.remainder,
        }


def buchberger_verify(gb: Sequence[ToricBinomial], inst: BorelInstance) -> BuchbergerResult:
    """
    Buchberger's criterion under the markings: every S-pair reduces to zero

    Pairs with coprime leads are skipped. A tripped step bound is reported as
    inconclusive, never as success.
    """
    start = time.time()
    layout = ReesLayout(inst)
    marked = [layout.marked(b) for b in gb]
    reducer = MarkedReducer(marked)
    checked = skipped = 0
    logger.info(f"Buchberger check of {len(marked)} binomials for {inst.label}")
    for a, b in combinations(range(len(marked)), 2):
        if leads_coprime(marked[a], marked[b]):
            skipped += 1
            continue
        checked += 1
        try:
            remainder = reducer.reduce(s_polynomial(marked[a], marked[b]))
        except InconclusiveError as e:
            logger.warning(f"S-pair ({a + 1}, {b + 1}) inconclusive: {e}")
            return BuchbergerResult("inconclusive", checked, skipped, (a + 1, b + 1))
        if remainder:
            text = layout.format_polynomial(remainder)
            logger.info(f"S-pair ({a + 1}, {b + 1}) leaves remainder {text}")
            return BuchbergerResult("failed", checked, skipped, (a + 1, b + 1), text)
    logger.info(f"Buchberger check done: {checked} pairs reduced, {skipped} skipped "
                f"in {time.time() - start:.2f}s")
    return BuchbergerResult("verified", checked, skipped)


def quadratic_kernel_probes(inst: BorelInstance) -> List[ToricBinomial]:
    """
    Every quadratic binomial of J up to sign: t_v t_w - t_v' t_w' for each unsorted pair and
    x_i t_v - x_j t_w for each pair with x_i v = x_j w
    """
    gens = generators(inst)
    members = set(gens)
    n = inst.n
    probes = [ToricBinomial(r.lhs, r.rhs, SORTING) for r in sorting_relations(inst)]
    seen = set()
    for v in gens:
        for j in v.support:
            for i in range(1, n + 1):
                if i == j or v.exponent(i):
                    continue
                w = v.replace(j, i)
                if w not in members:
                    continue
                key = frozenset([(i, v), (j, w)])
                if key in seen:
                    continue
                seen.add(key)
                lead, tail = ((i, v), (j, w)) if i < j else ((j, w), (i, v))
                probes.append(ToricBinomial(ReesTerm.of(n, [lead[0]], [lead[1]]),
                                            ReesTerm.of(n, [tail[0]], [tail[1]]), X_FAMILY))
    return probes


@dataclass
class GBVerification:
    kernel_ok: bool
    buchberger: BuchbergerResult
    probes_ok: bool
    failing_probe: Optional[str] = None
    x_condition: bool = True
    reduced: bool = True

    @property
    def verified(self) -> bool:
        return self.kernel_ok and self.buchberger.verified and self.probes_ok

    @property
    def inconclusive(self) -> bool:
        return self.buchberger.status == "inconclusive"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verified': self.verified,
            'kernel_ok': self.kernel_ok,
            'buchberger': self.buchberger.to_dict(),
            'probes_ok': self.probes_ok,
            'failing_probe': self.failing_probe,
            'x_condition': self.x_condition,
            'reduced': self.reduced,
        }


def verify_gb(inst: BorelInstance, gb: Optional[Sequence[ToricBinomial]] = None) -> GBVerification:
    """
    Kernel membership, Buchberger's criterion, and completeness probes

    The probes catch deleted relations: every quadratic binomial of J has to reduce to zero.
    """
    gb = list(gb) if gb is not None else reduced_gb(inst)
    kernel_ok = all(verify_kernel(b, inst) for b in gb)
    layout = ReesLayout(inst)
    reducer = MarkedReducer([layout.marked(b) for b in gb])
    failing = None
    for probe in quadratic_kernel_probes(inst):
        try:
            remainder = reducer.reduce(layout.marked(probe).as_polynomial())
        except InconclusiveError:
            failing = f"{probe.to_text()} (inconclusive)"
            break
        if remainder:
            failing = probe.to_text()
            break
    return GBVerification(kernel_ok, buchberger_verify(gb, inst), failing is None, failing,
                          x_condition_check(gb), reducedness_check(gb, inst))


def x_condition_check(gb: Sequence[ToricBinomial]) -> bool:
    """Every marked initial has x-degree at most 1 and t-degree at most 2"""
    return all(b.lhs.x_degree <= 1 and b.lhs.t_degree <= 2 for b in gb)


def reducedness_check(gb: Sequence[ToricBinomial], inst: BorelInstance) -> bool:
    """Leads squarefree and pairwise non-divisible; no tail divisible by a lead"""
    layout = ReesLayout(inst)
    leads = [layout.encode(b.lhs) for b in gb]
    tails = [layout.encode(b.rhs) for b in gb]

    def divides(a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    if any(e > 1 for lead in leads for e in lead):
        return False
    for a, b in combinations(range(len(leads)), 2):
        if divides(leads[a], leads[b]) or divides(leads[b], leads[a]):
            logger.debug(f"Lead {gb[a].lhs.to_text()} and {gb[b].lhs.to_text()} are comparable")
            return False
    return not any(divides(lead, tail) for lead in leads for tail in tails)


def standard_monomials(inst: BorelInstance, N: int, limit: int = 200_000) -> List[Tuple[Monomial, ...]]:
    """t-monomials of degree N divisible by no sorting-relation lead"""
    gens = generators(inst)
    unsorted = {frozenset([r.lhs.t[0], r.lhs.t[1]]) for r in sorting_relations(inst)}
    result = []
    for count, chosen in enumerate(combinations_with_replacement(gens, N), 1):
        if count > limit:
            raise GuardExceededError(f"More than {limit} t-monomials of degree {N}")
        if not any(frozenset([a, b]) in unsorted for a, b in combinations(chosen, 2)):
            result.append(tuple(chosen))
    return result


@dataclass
class ExchangeResult:
    holds: bool
    pairs_checked: int
    counterexample: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        return {'holds': self.holds, 'pairs_checked': self.pairs_checked, 'counterexample': self.counterexample}


def ell_exchange_check(inst: BorelInstance, N: int, limit: int = 200_000) -> ExchangeResult:
    """
    The exchange property for standard monomials of degree N under the sorting markings

    For sorted tuples (u_1..u_N), (v_1..v_N) whose products first differ at x_q with the
    first product smaller there (q <= n-1), look for delta and j > q, j in supp(u_delta),
    with x_q u_delta / x_j in I.
    """
    if N < 1:
        raise InstanceError(f"N must be at least 1, got {N}")
    gens = generators(inst)
    found = list(sorted_tuples(gens, N, limit))
    tuples = [st.monomials for st in found]
    products = np.array([st.product().exponents for st in found], dtype=np.int64).reshape(len(found), inst.n)
    checked = 0
    for a in range(len(tuples)):
        diffs = products - products[a]
        for b in range(len(tuples)):
            nonzero = np.nonzero(diffs[b])[0]
            if not len(nonzero):
                continue
            q = int(nonzero[0]) + 1
            if diffs[b, q - 1] <= 0 or q > inst.n - 1:
                continue
            checked += 1
            if not _has_exchange(tuples[a], q, inst):
                counterexample = {'u': [m.to_text() for m in tuples[a]],
                                  'v': [m.to_text() for m in tuples[b]], 'q': q}
                return ExchangeResult(False, checked, counterexample)
    return ExchangeResult(True, checked)


def _has_exchange(monomials: Sequence[Monomial], q: int, inst: BorelInstance) -> bool:
    for u in monomials:
        for j in u.support:
            if j > q and contains(inst, u.replace(j, q)):
                return True
    return False


@dataclass
class LexWitnessReport:
    """
    Quadratic lex initials of the fiber ideal, and, when a cubic t-monomial is given,
    whether any of them divides it
    """

    instance: BorelInstance
    initials: List[Tuple[Monomial, Monomial]]
    cubic: Tuple[Monomial, ...] = ()
    partner: Tuple[Monomial, ...] = ()
    kernel: Optional[bool] = None
    cubic_is_initial: Optional[bool] = None
    quadratic_divisors: List[Tuple[str, str]] = field(default_factory=list)
    cubic_sorted: Optional[bool] = None

    @property
    def has_cubic(self) -> bool:
        return bool(self.cubic)

    @property
    def not_quadratic(self) -> bool:
        """The cubic lies in the lex initial ideal but has no quadratic initial divisor"""
        return self.has_cubic and bool(self.kernel) and bool(self.cubic_is_initial) and not self.quadratic_divisors

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'instance': self.instance.to_dict(),
            'quadratic_initial_count': len(self.initials),
            'not_quadratic': self.not_quadratic,
        }
        if not self.has_cubic:
            data['quadratic_initials'] = [f"t[{a}]*t[{b}]" for a, b in self.initials]
        else:
            data.update({
                'binomial': " - ".join("*".join(f"t[{m}]" for m in side) for side in (self.cubic, self.partner)),
                'kernel': self.kernel,
                'cubic_is_initial': self.cubic_is_initial,
                'quadratic_divisors': [list(p) for p in self.quadratic_divisors],
                'cubic_sorted': self.cubic_sorted,
            })
        return data


def _lex_key(chosen: Sequence[Monomial], order: Dict[Monomial, int]) -> Tuple[int, ...]:
    exps = [0] * len(order)
    for m in chosen:
        exps[order[m]] += 1
    return tuple(exps)


def quadratic_lex_initials(inst: BorelInstance) -> List[Tuple[Monomial, Monomial]]:
    """
    Quadratic t-monomials in the lex initial ideal of the fiber toric ideal

    t-variables are ordered by t_v > t_w iff v >_lex w. A quadratic t-monomial is a lex
    initial term iff it is not the lex-smallest member of its fiber.
    """
    gens = generators(inst)
    order = {g: k for k, g in enumerate(gens)}
    fibers: Dict[Monomial, List[Tuple[Monomial, Monomial]]] = defaultdict(list)
    for a, b in combinations_with_replacement(gens, 2):
        fibers[product(a, b)].append((a, b))
    initials = []
    for pairs in fibers.values():
        smallest = min(pairs, key=lambda p: _lex_key(p, order))
        initials.extend(p for p in pairs if p != smallest)
    return initials


def lex_quadratic_witness(inst: Optional[BorelInstance] = None,
                          cubic: Optional[Sequence[Monomial]] = None,
                          partner: Optional[Sequence[Monomial]] = None) -> LexWitnessReport:
    """
    Collect the quadratic lex-initial terms of the fiber ideal and look for one dividing
    a cubic t-monomial

    Defaults to u = x6 x8 x10, t = 2, the cubic t[x1*x3*x8] t[x1*x7*x9] t[x2*x4*x6] and
    its partner t[x1*x3*x9] t[x1*x6*x8] t[x2*x4*x7]. Other instances without a cubic
    only report their quadratic initials.
    """
    if inst is None:
        inst = BorelInstance(*REMARK_INSTANCE)
    if cubic is None and partner is None and (inst.n, inst.t, inst.u) == REMARK_INSTANCE:
        cubic = [Monomial.from_indices(c, inst.n) for c in REMARK_CUBIC]
        partner = [Monomial.from_indices(c, inst.n) for c in REMARK_PARTNER]
    if (cubic is None) != (partner is None):
        raise InstanceError("A cubic t-monomial and its partner must be given together")

    initials = quadratic_lex_initials(inst)
    if cubic is None or partner is None:
        logger.debug(f"{len(initials)} quadratic lex initials for {inst.label}")
        return LexWitnessReport(instance=inst, initials=initials)

    order = {g: k for k, g in enumerate(generators(inst))}
    for m in list(cubic) + list(partner):
        if m not in order:
            raise InstanceError(f"{m} is not a minimal generator of {inst.label}")

    initial_set = set(initials)
    divisors = []
    for a, b in combinations(sort_decreasing(cubic), 2):
        if (a, b) in initial_set and (str(a), str(b)) not in divisors:
            divisors.append((str(a), str(b)))

    binomial = ToricBinomial(ReesTerm.of(inst.n, t=cubic), ReesTerm.of(inst.n, t=partner), "fiber")
    report = LexWitnessReport(
        instance=inst,
        initials=initials,
        cubic=tuple(sort_decreasing(cubic)),
        partner=tuple(sort_decreasing(partner)),
        kernel=verify_kernel(binomial, inst),
        cubic_is_initial=_lex_key(cubic, order) > _lex_key(partner, order),
        quadratic_divisors=divisors,
        cubic_sorted=is_sorted_tuple(cubic),
    )
    logger.debug(f"Lex witness for {inst.label}: not quadratic = {report.not_quadratic}")
    return report


def fiber_dimension(inst: BorelInstance) -> int:
    """Rank of the exponent matrix of G(I), the Krull dimension of K[G(I)]"""
    matrix = np.array([g.exponents for g in generators(inst)], dtype=np.int64)
    return int(np.linalg.matrix_rank(matrix))
