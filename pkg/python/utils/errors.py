"""
Exception types shared by the processors and the command-line front end
"""


class BorelError(Exception):
    """Base class for every error raised by the toolkit"""


class InstanceError(BorelError, ValueError):
    """Invalid instance, monomial, ambient mismatch or malformed input"""


class HypothesisError(BorelError, ValueError):
    """A precondition of a theorem-backed construction does not hold"""


class GuardExceededError(BorelError, RuntimeError):
    """A size guard refused the computation (never a silent truncation)"""


class InconclusiveError(BorelError, RuntimeError):
    """A pass or step bound tripped before a fixpoint was reached"""


class ClaimFailure(BorelError, AssertionError):
    """A property guaranteed by theory failed on a concrete instance"""
