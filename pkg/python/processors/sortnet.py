"""
The sorting operator on pairs and r-tuples of equal-degree monomials
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

try:
    from ..utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from ..utils.monomial import Monomial, same_ambient, sort_decreasing
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import GuardExceededError, InconclusiveError, InstanceError
    from utils.monomial import Monomial, same_ambient, sort_decreasing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SortedTuple:
    """A sorted r-tuple (u_1, ..., u_r) of degree-d monomials"""

    monomials: Tuple[Monomial, ...]

    @property
    def degree(self) -> int:
        return self.monomials[0].degree if self.monomials else 0

    @property
    def length(self) -> int:
        return len(self.monomials)

    def product(self) -> Monomial:
        result = Monomial.one(self.monomials[0].n)
        for m in self.monomials:
            result = result * m
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {'tuple': [m.to_text() for m in self.monomials], 'degree': self.degree, 'length': self.length}


@dataclass(frozen=True)
class SortableResult:
    """Outcome of a sortability scan; falsy when a counterexample exists"""

    sortable: bool
    pairs_checked: int
    witness: Optional[Tuple[Monomial, Monomial]] = None
    image: Optional[Tuple[Monomial, Monomial]] = None

    def __bool__(self) -> bool:
        return self.sortable

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sortable': self.sortable,
            'pairs_checked': self.pairs_checked,
            'witness': [m.to_text() for m in self.witness] if self.witness else None,
            'image': [m.to_text() for m in self.image] if self.image else None,
        }


def _check_degrees(monomials: Sequence[Monomial]) -> int:
    same_ambient(monomials)
    degrees = {m.degree for m in monomials}
    if len(degrees) != 1:
        raise InstanceError(f"Sorting needs equal degrees, got {sorted(degrees)}")
    return degrees.pop()


def sort_pair(v: Monomial, w: Monomial) -> Tuple[Monomial, Monomial]:
    """Merge the indices of vw; v' takes the odd positions and w' the even ones"""
    _check_degrees([v, w])
    merged = sorted(v.indices + w.indices)
    return Monomial.from_indices(merged[0::2], v.n), Monomial.from_indices(merged[1::2], v.n)


def is_sorted_pair(v: Monomial, w: Monomial) -> bool:
    return sort_pair(v, w) == (v, w)


def is_sorted_tuple(monomials: Sequence[Monomial]) -> bool:
    """True iff every pair (u_i, u_j), i < j, is fixed by the sorting operator"""
    if len(monomials) <= 1:
        return True
    _check_degrees(monomials)
    return all(is_sorted_pair(a, b) for a, b in combinations(monomials, 2))


def sort_tuple(monomials: Sequence[Monomial], max_passes: Optional[int] = None) -> SortedTuple:
    """
    Sort an r-tuple by repeated pairwise sorting until nothing changes

    Args:
        monomials: Equal-degree monomials
        max_passes: Pass bound (default r*d*n); tripping it raises InconclusiveError
    """
    current = list(monomials)
    if len(current) <= 1:
        return SortedTuple(tuple(current))
    d = _check_degrees(current)
    bound = max_passes if max_passes is not None else max(1, len(current) * d * current[0].n)

    for _ in range(bound):
        changed = False
        for i, j in combinations(range(len(current)), 2):
            pair = sort_pair(current[i], current[j])
            if pair != (current[i], current[j]):
                current[i], current[j] = pair
                changed = True
        if not changed:
            return SortedTuple(tuple(current))
    raise InconclusiveError(f"Pairwise sorting did not settle within {bound} passes")


def sorted_tuple_closed_form(monomials: Sequence[Monomial]) -> SortedTuple:
    """u'_p = x_{a_p} x_{a_{p+r}} x_{a_{p+2r}} ... for the merged indices a_1 <= ... <= a_{rd}"""
    r = len(monomials)
    if r <= 1:
        return SortedTuple(tuple(monomials))
    _check_degrees(monomials)
    merged = sorted(i for m in monomials for i in m.indices)
    n = monomials[0].n
    return SortedTuple(tuple(Monomial.from_indices(merged[p::r], n) for p in range(r)))


def sortable_check(gens: Sequence[Monomial]) -> SortableResult:
    """True iff sort(B x B) lies in B x B; otherwise return the offending pair"""
    members = set(gens)
    checked = 0
    ordered = sort_decreasing(members)
    for a, b in combinations(ordered, 2):
        checked += 1
        image = sort_pair(a, b)
        if image[0] not in members or image[1] not in members:
            return SortableResult(False, checked, (a, b), image)
    return SortableResult(True, checked)


def sorted_tuples(gens: Sequence[Monomial], r: int, limit: Optional[int] = None) -> Iterator[SortedTuple]:
    """
    Every sorted r-multiset of gens, each exactly once

    Members of a sorted tuple are componentwise increasing in their index sequences, so
    candidates are drawn from gens in decreasing pure lex order with repetition.

    Args:
        gens: A sortable set of equal-degree monomials
        r: Tuple length
        limit: Guard on the number of tuples produced
    """
    ordered = sort_decreasing(set(gens))
    produced = 0
    chosen: List[Monomial] = []

    def extend(first: int) -> Iterator[SortedTuple]:
        nonlocal produced
        for pos in range(first, len(ordered)):
            candidate = ordered[pos]
            if not all(is_sorted_pair(prev, candidate) for prev in chosen):
                continue
            chosen.append(candidate)
            if len(chosen) == r:
                produced += 1
                if limit is not None and produced > limit:
                    raise GuardExceededError(f"More than {limit} sorted {r}-tuples")
                yield SortedTuple(tuple(chosen))
            else:
                yield from extend(pos)
            chosen.pop()

    if r < 1:
        return
    yield from extend(0)
