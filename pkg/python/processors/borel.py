"""
t-spread principal Borel ideals B_t(u): predicates, generator enumeration, membership
and the strongly-stable closure oracle
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

try:
    from ..utils.errors import InstanceError
    from ..utils.monomial import IndexSet, Monomial, index_set, sort_decreasing
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import InstanceError
    from utils.monomial import IndexSet, Monomial, index_set, sort_decreasing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BorelInstance:
    """
    The triple (n, t, u) defining I = B_t(u) in K[x_1, ..., x_n]

    u is given by its support i_1 < ... < i_d, which must be t-spread.
    """

    n: int
    t: int
    u: IndexSet

    def __post_init__(self):
        if self.t < 1:
            raise InstanceError(f"Spread t must be at least 1, got {self.t}")
        if not self.u:
            raise InstanceError("u = 1 (degree 0) does not define a proper Borel ideal")
        object.__setattr__(self, 'u', index_set(self.u, self.n))
        for a, b in zip(self.u, self.u[1:]):
            if b - a < self.t:
                raise InstanceError(f"u = {self.u_monomial} is not {self.t}-spread ({a}, {b})")

    @classmethod
    def create(cls, n: int, t: int, u: Sequence[int]) -> "BorelInstance":
        return cls(n, t, tuple(u))

    @property
    def d(self) -> int:
        return len(self.u)

    @property
    def u_monomial(self) -> Monomial:
        return Monomial.from_indices(self.u, self.n)

    @property
    def label(self) -> str:
        return f"B_{self.t}({self.u_monomial}) in n={self.n}"

    def restricted(self) -> "BorelInstance":
        """The same ideal in K[x_1, ..., x_{i_d}]"""
        return BorelInstance(self.u[-1], self.t, self.u)

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 't': self.t, 'u': list(self.u)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BorelInstance":
        return cls(int(data['n']), int(data['t']), tuple(data['u']))


def is_tspread(m: Monomial, t: int) -> bool:
    """True iff m is squarefree with consecutive support gaps at least t"""
    if not m.is_squarefree:
        return False
    support = m.support
    return all(b - a >= t for a, b in zip(support, support[1:]))


def bounded_chains(bounds: Sequence[int], t: int, start: int = 1) -> Iterator[Tuple[int, ...]]:
    """
    All sequences j_1 < ... < j_r with start <= j_1, j_l <= bounds[l] and gaps >= t

    Sequences are produced in ascending lexicographic order, which is decreasing pure lex
    order for the corresponding squarefree monomials.
    """
    r = len(bounds)
    if r == 0:
        yield ()
        return
    chain: List[int] = []

    def extend(lowest: int) -> Iterator[Tuple[int, ...]]:
        level = len(chain)
        for j in range(lowest, bounds[level] + 1):
            chain.append(j)
            if level + 1 == r:
                yield tuple(chain)
            else:
                yield from extend(j + t)
            chain.pop()

    yield from extend(start)


@lru_cache(maxsize=256)
def _generator_tuple(inst: BorelInstance) -> Tuple[Monomial, ...]:
    gens = tuple(Monomial.from_indices(chain, inst.n) for chain in bounded_chains(inst.u, inst.t))
    logger.debug(f"{inst.label}: {len(gens)} minimal generators")
    return gens


def generators(inst: BorelInstance) -> List[Monomial]:
    """G(B_t(u)) in decreasing pure lex order: j_k <= i_k and j_k - j_{k-1} >= t"""
    return list(_generator_tuple(inst))


def contains(inst: BorelInstance, m: Monomial) -> bool:
    """
    Ideal membership: some generator divides m

    Greedily picks the smallest admissible support index at each position; the greedy
    chain is componentwise minimal, so it fits under u whenever any chain does.
    """
    if m.n != inst.n:
        raise InstanceError(f"Ambient mismatch: n={m.n} vs n={inst.n}")
    previous = None
    position = 0
    for j in m.support:
        if position == inst.d:
            break
        if previous is not None and j - previous < inst.t:
            continue
        if j > inst.u[position]:
            return False
        previous = j
        position += 1
    return position == inst.d


def exchange_moves(m: Monomial, t: int) -> Iterator[Monomial]:
    """All x_i (m / x_j) with i < j, j in supp(m), that are t-spread"""
    support = set(m.support)
    for j in m.support:
        for i in range(1, j):
            if i in support:
                continue
            candidate = m.replace(j, i)
            if is_tspread(candidate, t):
                yield candidate


def closure_oracle(inst: BorelInstance) -> List[Monomial]:
    """Fixpoint of the exchange moves started from {u}; must equal generators(inst)"""
    seen: Set[Monomial] = {inst.u_monomial}
    frontier = [inst.u_monomial]
    while frontier:
        next_frontier = []
        for m in frontier:
            for candidate in exchange_moves(m, inst.t):
                if candidate not in seen:
                    seen.add(candidate)
                    next_frontier.append(candidate)
        frontier = next_frontier
    return sort_decreasing(seen)


def is_tspread_strongly_stable(monomials: Sequence[Monomial], t: int) -> bool:
    """True iff every admissible exchange move of a generator stays in the ideal"""
    gens = list(monomials)
    for m in gens:
        for candidate in exchange_moves(m, t):
            if not any(all(a <= b for a, b in zip(g.exponents, candidate.exponents)) for g in gens):
                logger.debug(f"Exchange move {m} -> {candidate} leaves the ideal")
                return False
    return True


def is_veronese(inst: BorelInstance) -> bool:
    """u = x_{n-(d-1)t} ... x_n, i.e. B_t(u) = I_{n,d,t} contains every t-spread degree-d monomial"""
    expected = tuple(inst.n - (inst.d - k) * inst.t for k in range(1, inst.d + 1))
    return inst.u == expected


def veronese_instance(n: int, d: int, t: int) -> BorelInstance:
    """The t-spread Veronese ideal I_{n,d,t}"""
    first = n - (d - 1) * t
    if first < 1:
        raise InstanceError(f"No {t}-spread monomial of degree {d} in {n} variables")
    return BorelInstance(n, t, tuple(first + k * t for k in range(d)))


def uncovered_variables(inst: BorelInstance) -> IndexSet:
    """[n] minus the union of the generator supports"""
    covered = 0
    for g in _generator_tuple(inst):
        covered |= g.mask
    return tuple(i for i in range(1, inst.n + 1) if not (covered >> (i - 1)) & 1)


def all_instances(n: int, t: Optional[int] = None, full_support: bool = False) -> Iterator[BorelInstance]:
    """
    Every t-spread u in [n] (for all 1 <= t <= max(1, n-1) unless t is fixed)

    Args:
        n: Ambient variable count
        t: Restrict to one spread parameter
        full_support: Only u with i_d = n
    """
    spreads = [t] if t is not None else list(range(1, max(1, n - 1) + 1))
    for spread in spreads:
        for d in range(1, n + 1):
            if (d - 1) * spread + 1 > n:
                break
            for chain in bounded_chains([n] * d, spread):
                if full_support and chain[-1] != n:
                    continue
                yield BorelInstance(n, spread, chain)


def random_instance(rng: np.random.Generator, n_max: int, d_max: int,
                    n_min: int = 2, full_support: bool = True,
                    min_first_gap: bool = False, max_generators: Optional[int] = None,
                    d_min: int = 1, min_generators: Optional[int] = None,
                    attempts: int = 1000) -> BorelInstance:
    """
    Draw a random instance with a seeded numpy generator

    Args:
        rng: numpy random generator (seeded by the caller)
        n_max: Largest ambient variable count
        d_max: Largest degree
        n_min: Smallest ambient variable count
        full_support: Require i_d = n
        min_first_gap: Require i_1 >= t + 1
        max_generators: Reject instances with more minimal generators
        d_min: Smallest degree
        min_generators: Reject instances with fewer minimal generators
        attempts: Rejection-sampling budget
    """
    if d_min > d_max:
        raise InstanceError(f"d_min={d_min} exceeds d_max={d_max}")
    for _ in range(attempts):
        n = int(rng.integers(n_min, n_max + 1))
        if n < d_min:
            continue
        d = int(rng.integers(d_min, min(d_max, n) + 1))
        # t only matters between support indices
        t = int(rng.integers(1, (n - 1) // (d - 1) + 1)) if d > 1 else 1
        chains = [c for c in bounded_chains([n] * d, t)
                  if (not full_support or c[-1] == n) and (not min_first_gap or c[0] >= t + 1)]
        if not chains:
            continue
        inst = BorelInstance(n, t, chains[int(rng.integers(0, len(chains)))])
        count = len(_generator_tuple(inst))
        if max_generators is not None and count > max_generators:
            continue
        if min_generators is not None and count < min_generators:
            continue
        return inst
    raise InstanceError("Could not draw a random instance satisfying the constraints")
