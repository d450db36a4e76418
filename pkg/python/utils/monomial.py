"""
Exponent-vector monomials over a fixed variable set [n]

Variables are 1-based (x_1 > x_2 > ... > x_n). Squarefree monomials also expose a
bit-set view of their support for the enumeration-heavy oracles.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

try:
    from .errors import InstanceError
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import InstanceError

IndexSet = Tuple[int, ...]


def index_set(indices: Iterable[int], n: int) -> IndexSet:
    """Validate and return a strictly increasing subset of [n]"""
    result = tuple(indices)
    for a, b in zip(result, result[1:]):
        if b <= a:
            raise InstanceError(f"Index set must be strictly increasing: {list(result)}")
    if result and (result[0] < 1 or result[-1] > n):
        raise InstanceError(f"Index set {list(result)} is not contained in [1, {n}]")
    return result


@dataclass(frozen=True)
class Monomial:
    """A monomial x^a of S = K[x_1, ..., x_n], stored as its exponent vector"""

    exponents: Tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise InstanceError(f"Negative exponent in {list(self.exponents)}")

    # Construction

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, i: int, n: int) -> "Monomial":
        if not 1 <= i <= n:
            raise InstanceError(f"Variable x{i} outside of [1, {n}]")
        return cls(tuple(1 if k == i else 0 for k in range(1, n + 1)))

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "Monomial":
        """Build x_{i_1} ... x_{i_d}; repeated indices raise the exponent"""
        exps = [0] * n
        for i in indices:
            if not 1 <= i <= n:
                raise InstanceError(f"Variable x{i} outside of [1, {n}]")
            exps[i - 1] += 1
        return cls(tuple(exps))

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "Monomial":
        return cls(tuple((mask >> k) & 1 for k in range(n)))

    # Basic invariants

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> IndexSet:
        return tuple(i + 1 for i, e in enumerate(self.exponents) if e > 0)

    @property
    def indices(self) -> Tuple[int, ...]:
        """Variable indices with multiplicity, ascending (i_1 <= ... <= i_d)"""
        return tuple(i + 1 for i, e in enumerate(self.exponents) for _ in range(e))

    @property
    def mask(self) -> int:
        return sum(1 << i for i, e in enumerate(self.exponents) if e > 0)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def exponent(self, i: int) -> int:
        return self.exponents[i - 1]

    # Arithmetic

    def _check_ambient(self, other: "Monomial") -> None:
        if self.n != other.n:
            raise InstanceError(f"Ambient mismatch: n={self.n} vs n={other.n}")

    def __mul__(self, other: "Monomial") -> "Monomial":
        return product(self, other)

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check_ambient(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check_ambient(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def divide(self, other: "Monomial") -> "Monomial":
        """Exact quotient self / other"""
        if not divides(other, self):
            raise InstanceError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def replace(self, old: int, new: int) -> "Monomial":
        """x_new * self / x_old"""
        exps = list(self.exponents)
        if exps[old - 1] == 0:
            raise InstanceError(f"x{old} does not divide {self}")
        exps[old - 1] -= 1
        exps[new - 1] += 1
        return Monomial(tuple(exps))

    # Text forms

    def to_text(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents, 1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"

    def to_list(self) -> List[int]:
        return list(self.exponents)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Monomial({self.to_text()}, n={self.n})"


def product(a: Monomial, b: Monomial) -> Monomial:
    """Exponentwise sum"""
    a._check_ambient(b)
    return Monomial(tuple(x + y for x, y in zip(a.exponents, b.exponents)))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b"""
    a._check_ambient(b)
    return all(x <= y for x, y in zip(a.exponents, b.exponents))


def colon_monomial(a: Monomial, b: Monomial) -> Monomial:
    """a / gcd(a, b), the generator of (a) : b"""
    a._check_ambient(b)
    return Monomial(tuple(max(x - y, 0) for x, y in zip(a.exponents, b.exponents)))


def purelex_key(m: Monomial) -> Tuple[int, ...]:
    """Sort key for the pure lexicographic order with x_1 > ... > x_n"""
    return m.exponents


def purelex_compare(a: Monomial, b: Monomial) -> int:
    """1 if a > b, -1 if a < b, 0 if equal (degree is ignored)"""
    a._check_ambient(b)
    if a.exponents == b.exponents:
        return 0
    return 1 if a.exponents > b.exponents else -1


def sort_decreasing(monomials: Iterable[Monomial]) -> List[Monomial]:
    return sorted(monomials, key=purelex_key, reverse=True)


def same_ambient(monomials: Sequence[Monomial]) -> int:
    """Common n of a non-empty monomial list"""
    if not monomials:
        raise InstanceError("Empty monomial list")
    n = monomials[0].n
    for m in monomials:
        if m.n != n:
            raise InstanceError(f"Ambient mismatch: n={n} vs n={m.n}")
    return n
