"""
Independent brute-force engines: irreducible decomposition of monomial ideals,
ideal arithmetic on generating sets, and marked-binomial reduction
"""
import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

try:
    from ..utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from ..utils.monomial import IndexSet, Monomial, colon_monomial, divides, same_ambient, sort_decreasing
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from utils.monomial import IndexSet, Monomial, colon_monomial, divides, same_ambient, sort_decreasing

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Polynomial = Dict[Exponents, int]


# Ideal arithmetic on generating sets

def minimalize(gens: Iterable[Monomial]) -> List[Monomial]:
    """Minimal generators of the ideal generated by gens, decreasing pure lex"""
    unique = sorted(set(gens), key=lambda m: (m.degree, m.exponents))
    kept: List[Monomial] = []
    for m in unique:
        if not any(divides(g, m) for g in kept):
            kept.append(m)
    return sort_decreasing(kept)


def ideal_contains(gens: Sequence[Monomial], m: Monomial) -> bool:
    return any(divides(g, m) for g in gens)


def ideal_equal(gens_a: Sequence[Monomial], gens_b: Sequence[Monomial], n: int) -> bool:
    """Mutual containment of the ideals generated by two monomial lists in K[x_1..x_n]"""
    for m in list(gens_a) + list(gens_b):
        if m.n != n:
            raise InstanceError(f"Ambient mismatch: n={m.n} vs n={n}")
    return (all(ideal_contains(gens_b, m) for m in gens_a)
            and all(ideal_contains(gens_a, m) for m in gens_b))


def intersect_ideals(gens_a: Sequence[Monomial], gens_b: Sequence[Monomial]) -> List[Monomial]:
    """(A) ∩ (B) is generated by the pairwise lcms"""
    return minimalize(a.lcm(b) for a in gens_a for b in gens_b)


def colon_ideal(gens: Sequence[Monomial], m: Monomial) -> List[Monomial]:
    """(I : m) is generated by g / gcd(g, m)"""
    return minimalize(colon_monomial(g, m) for g in gens)


# Irreducible decomposition

@dataclass(frozen=True)
class IrreducibleComponent:
    """(x_{i_1}^{a_1}, ..., x_{i_r}^{a_r}); powers holds the pairs (i, a) sorted by i"""

    powers: Tuple[Tuple[int, int], ...]
    n: int

    @property
    def radical(self) -> IndexSet:
        return tuple(i for i, _ in self.powers)

    @property
    def generators(self) -> List[Monomial]:
        return [Monomial.from_indices([i] * a, self.n) for i, a in self.powers]

    def contains(self, m: Monomial) -> bool:
        return any(m.exponent(i) >= a for i, a in self.powers)

    def contains_component(self, other: "IrreducibleComponent") -> bool:
        """other ⊆ self"""
        mine = dict(self.powers)
        return all(i in mine and mine[i] <= a for i, a in other.powers)

    def to_text(self) -> str:
        return "(" + ", ".join(g.to_text() for g in self.generators) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {'generators': [g.to_text() for g in self.generators], 'radical': list(self.radical)}


def _pure_power_component(gens: Sequence[Monomial], n: int) -> IrreducibleComponent:
    return IrreducibleComponent(tuple(sorted((g.support[0], g.degree) for g in gens)), n)


def irreducible_decomposition(gens: Sequence[Monomial], n: int,
                              max_vars: int = 12, max_components: int = 5_000) -> List[IrreducibleComponent]:
    """
    Irredundant irreducible decomposition by recursive splitting

    The pivot is the lex-first generator m with at least two support variables;
    with x_i^a the power of its first variable, I = (I + x_i^a) ∩ (I + m / x_i^a).

    Args:
        gens: Monomial generators (need not be minimal)
        n: Ambient variable count
        max_vars: Refuse ideals involving more variables
        max_components: Refuse once this many distinct components have been produced
    """
    start = time.time()
    minimal = minimalize(gens)
    if not minimal:
        raise InstanceError("The zero ideal has no irreducible decomposition")
    same_ambient(minimal)
    if minimal[0].n != n:
        raise InstanceError(f"Ambient mismatch: n={minimal[0].n} vs n={n}")
    if minimal[-1].degree == 0:
        return []

    used = {i for g in minimal for i in g.support}
    if len(used) > max_vars:
        raise GuardExceededError(f"Decomposition involves {len(used)} variables (limit {max_vars})")

    memo: Dict[FrozenSet[Monomial], Tuple[IrreducibleComponent, ...]] = {}
    produced: set = set()

    def split(current: List[Monomial]) -> Tuple[IrreducibleComponent, ...]:
        key = frozenset(current)
        if key in memo:
            return memo[key]
        pivot = next((g for g in current if len(g.support) >= 2), None)
        if pivot is None:
            result: Tuple[IrreducibleComponent, ...] = (_pure_power_component(current, n),)
            produced.add(result[0])
            if len(produced) > max_components:
                raise GuardExceededError(f"More than {max_components} components during splitting")
        else:
            i = pivot.support[0]
            power = Monomial.from_indices([i] * pivot.exponent(i), n)
            left = split(minimalize(list(current) + [power]))
            right = split(minimalize(list(current) + [pivot.divide(power)]))
            result = left + right
        memo[key] = result
        return result

    components = list(dict.fromkeys(split(minimal)))
    irredundant = [c for c in components
                   if not any(o != c and c.contains_component(o) for o in components)]
    irredundant.sort(key=lambda c: (c.radical, c.powers))
    logger.debug(f"Decomposed {len(minimal)} generators into {len(irredundant)} components "
                 f"({len(produced)} leaves) in {time.time() - start:.2f}s")
    return irredundant


def intersect_components(components: Sequence[IrreducibleComponent], n: int) -> List[Monomial]:
    """Generators of the intersection; the unit ideal for an empty list"""
    result = [Monomial.one(n)]
    for component in components:
        result = intersect_ideals(result, component.generators)
    return result


# Marked-binomial reduction

@dataclass(frozen=True)
class MarkedBinomial:
    """lead - tail over a fixed variable layout, with the lead designated as initial term"""

    lead: Exponents
    tail: Exponents

    def __post_init__(self):
        if len(self.lead) != len(self.tail):
            raise InstanceError("Binomial sides live in different rings")
        if self.lead == self.tail:
            raise InstanceError("Binomial with equal sides is zero")

    @property
    def degree(self) -> int:
        return max(sum(self.lead), sum(self.tail))

    def as_polynomial(self) -> Polynomial:
        return {self.lead: 1, self.tail: -1}


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(term: Exponents, remove: Exponents, add: Exponents) -> Exponents:
    return tuple(x - r + s for x, r, s in zip(term, remove, add))


def _add_term(poly: Polynomial, term: Exponents, coeff: int) -> None:
    value = poly.get(term, 0) + coeff
    if value:
        poly[term] = value
    else:
        poly.pop(term, None)


def s_polynomial(a: MarkedBinomial, b: MarkedBinomial) -> Polynomial:
    """(L/lead_a) * a - (L/lead_b) * b with L = lcm of the marked leads"""
    lcm = _lcm(a.lead, b.lead)
    poly: Polynomial = {}
    _add_term(poly, _shift(lcm, a.lead, a.tail), -1)
    _add_term(poly, _shift(lcm, b.lead, b.tail), 1)
    return poly


def leads_coprime(a: MarkedBinomial, b: MarkedBinomial) -> bool:
    return not any(x and y for x, y in zip(a.lead, b.lead))


class MarkedReducer:
    """
    Reduction modulo a list of marked binomials

    A term is rewritten by the first binomial (in list order) whose lead divides it;
    leads are indexed by their first support variable.
    """

    def __init__(self, binomials: Sequence[MarkedBinomial]):
        self.binomials = list(binomials)
        self._index: Dict[int, List[int]] = {}
        for pos, b in enumerate(self.binomials):
            first = next((v for v, e in enumerate(b.lead) if e), None)
            if first is None:
                raise InstanceError("Marked lead 1 reduces every polynomial to zero")
            self._index.setdefault(first, []).append(pos)

    def reducer_for(self, term: Exponents) -> Optional[MarkedBinomial]:
        best: Optional[int] = None
        for v, e in enumerate(term):
            if not e:
                continue
            for pos in self._index.get(v, ()):
                if best is not None and pos >= best:
                    break
                if _divides(self.binomials[pos].lead, term):
                    best = pos
                    break
        return self.binomials[best] if best is not None else None

    def step_bound(self, poly: Polynomial) -> int:
        degree = max([b.degree for b in self.binomials] + [sum(t) for t in poly] + [1])
        return 4 * degree * max(1, len(self.binomials))

    def reduce(self, poly: Polynomial, max_steps: Optional[int] = None) -> Polynomial:
        """
        Normal form of poly; raises InconclusiveError past the step bound

        Args:
            poly: Mapping term -> integer coefficient
            max_steps: Defaults to 4 * (max degree) * (number of binomials)
        """
        result: Polynomial = {}
        work = {t: c for t, c in poly.items() if c}
        bound = max_steps if max_steps is not None else self.step_bound(work)
        steps = 0
        while work:
            term = max(work)
            coeff = work.pop(term)
            reducer = self.reducer_for(term)
            if reducer is None:
                _add_term(result, term, coeff)
                continue
            steps += 1
            if steps > bound:
                raise InconclusiveError(f"Marked reduction exceeded {bound} steps")
            _add_term(work, _shift(term, reducer.lead, reducer.tail), coeff)
        return result


def marked_reduce(poly: Polynomial, gb: Sequence[MarkedBinomial], max_steps: Optional[int] = None) -> Polynomial:
    return MarkedReducer(gb).reduce(poly, max_steps)
