"""
Run configuration and size guards
"""
import os
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Mapping, Optional

try:
    from .errors import InstanceError
except ImportError:
    import sys
    from pathlib import Path
    sys.path.append(str(Path(__file__).parent.parent))
    from utils.errors import InstanceError

ENV_PREFIX = "BOREL_"


@dataclass(frozen=True)
class GuardLimits:
    """Size guards; exceeding one is a clean refusal"""

    max_power_generators: int = 200_000
    max_decomposition_vars: int = 12
    max_components: int = 5_000
    max_witness_box: int = 1_000_000

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not isinstance(value, int) or value <= 0:
                raise InstanceError(f"Guard {name} must be a positive integer, got {value!r}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "GuardLimits":
        """
        Read overrides such as ``BOREL_MAX_POWER_GENERATORS`` from the environment

        Args:
            environ: Mapping to read instead of ``os.environ`` (tests)
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for name in asdict(cls()).keys():
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                overrides[name] = int(raw)
            except ValueError:
                raise InstanceError(f"{ENV_PREFIX + name.upper()} must be an integer, got {raw!r}")
        return cls(**overrides)


@dataclass
class RunConfig:
    """Everything a CLI command needs; defaults mirror the argparse defaults"""

    n: Optional[int] = None
    t: Optional[int] = None
    u: List[int] = field(default_factory=list)
    k: int = 1
    kmax: int = 3
    N: int = 2
    seed: int = 20240101
    output_format: str = "text"
    monomials: Optional[str] = None
    generators: Optional[str] = None
    verify: bool = False
    inject_fault: bool = False
    quick: bool = False
    output_file: Optional[str] = None
    guards: GuardLimits = field(default_factory=GuardLimits)

    def __post_init__(self):
        if self.output_format not in ("text", "json"):
            raise InstanceError(f"Unknown output format: {self.output_format!r}")
        for name in ("k", "kmax", "N"):
            if getattr(self, name) < 1:
                raise InstanceError(f"--{name} must be at least 1")

    @property
    def has_instance(self) -> bool:
        return self.t is not None and bool(self.u)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("output_file")
        return data
