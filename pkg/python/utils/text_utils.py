"""
Text processing utilities for monomials, index lists and reports
"""
import json
import re
from typing import Any, List, Optional, Sequence

try:
    from .errors import InstanceError
    from .monomial import Monomial
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import InstanceError
    from utils.monomial import Monomial

_FACTOR = re.compile(r'^x(\d+)(?:\^(\d+))?$')


class TextUtils:
    """Parsing and formatting of the textual forms accepted by the CLI"""

    @staticmethod
    def parse_index_list(text: str) -> List[int]:
        """Parse "2,4,9" (1-based variable indices)"""
        text = text.strip().strip('[]')
        if not text:
            raise InstanceError("Empty index list")
        try:
            return [int(part) for part in re.split(r'[,\s]+', text) if part]
        except ValueError:
            raise InstanceError(f"Malformed index list: {text!r}")

    @staticmethod
    def max_variable(text: str) -> int:
        """Largest variable index mentioned in a product form such as "x2*x4^2" """
        found = [int(i) for i in re.findall(r'x(\d+)', text)]
        return max(found) if found else 0

    @staticmethod
    def exponent_vector(values: Any, n: Optional[int] = None) -> Monomial:
        """Monomial from a decoded JSON exponent list; entries must be integers"""
        if not isinstance(values, list):
            raise InstanceError(f"Exponent list expected, got {values!r}")
        for e in values:
            if isinstance(e, bool) or not isinstance(e, int):
                raise InstanceError(f"Exponents must be integers, got {e!r} in {values!r}")
        if n is not None and len(values) != n:
            raise InstanceError(f"Exponent list has length {len(values)}, expected n={n}")
        return Monomial(tuple(values))

    @staticmethod
    def parse_monomial(text: str, n: Optional[int] = None) -> Monomial:
        """
        Parse a monomial from "x2*x4*x9", "x1^2*x3", "1" or an exponent list
        "[0,1,0,1,0,0,0,0,1]"

        Args:
            text: Monomial text
            n: Ambient variable count (inferred from the text when omitted)
        """
        text = text.strip()
        if text.startswith('['):
            try:
                exps = json.loads(text)
            except json.JSONDecodeError:
                raise InstanceError(f"Malformed exponent list: {text!r}")
            return TextUtils.exponent_vector(exps, n)

        if n is None:
            n = TextUtils.max_variable(text)
        if text == '1':
            return Monomial.one(n)

        exps = [0] * n
        for factor in text.replace(' ', '').split('*'):
            match = _FACTOR.match(factor)
            if not match:
                raise InstanceError(f"Malformed monomial factor {factor!r} in {text!r}")
            i = int(match.group(1))
            if not 1 <= i <= n:
                raise InstanceError(f"Variable x{i} outside of [1, {n}]")
            exps[i - 1] += int(match.group(2) or 1)
        return Monomial(tuple(exps))

    @staticmethod
    def parse_monomial_list(text: str, n: Optional[int] = None) -> List[Monomial]:
        """Parse "x2*x4*x6,x1*x3*x9" or a JSON list of exponent lists"""
        text = text.strip()
        if text.startswith('[['):
            try:
                rows = json.loads(text)
            except json.JSONDecodeError:
                raise InstanceError(f"Malformed exponent matrix: {text!r}")
            if not isinstance(rows, list):
                raise InstanceError(f"Exponent matrix expected, got {text!r}")
            return [TextUtils.exponent_vector(row, n) for row in rows]

        parts = [p for p in re.split(r'[,;\s]+', text) if p]
        if not parts:
            raise InstanceError("Empty monomial list")
        if n is None:
            n = max(TextUtils.max_variable(p) for p in parts)
        return [TextUtils.parse_monomial(p, n) for p in parts]

    @staticmethod
    def format_monomials(monomials: Sequence[Monomial]) -> str:
        return "(" + ", ".join(m.to_text() for m in monomials) + ")"

    @staticmethod
    def format_index_set(indices: Sequence[int]) -> str:
        return "{" + ",".join(str(i) for i in indices) + "}"
