"""Exception hierarchy shared by all census modules.

Every rejection carries a stable machine-readable ``code`` so that the
CLI can name the violated constraint without string matching.
"""

from __future__ import annotations


class CensusError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ParameterError(CensusError):
    """A (p, e, f) parameter set is outside the supported family."""

    code = "invalid-parameters"


class NotPrime(ParameterError):
    code = "p-not-prime"


class EvenPrime(ParameterError):
    code = "p-even"


class ModulusTooSmall(ParameterError):
    code = "n-too-small"


class ModulusTooLarge(ParameterError):
    code = "n-too-large"


class NotInvertible(CensusError):
    code = "not-invertible"


class BoundExceeded(CensusError):
    code = "bound-exceeded"


class EpiRejected(CensusError):
    """A candidate generator-image tuple fails one of the validity congruences."""

    code = "epi-rejected"


class SumCongruence(EpiRejected):
    code = "sum-congruence"


class SCongruence(EpiRejected):
    code = "s-congruence"


class NotSurjective(EpiRejected):
    code = "not-surjective"


class NeedsRotation(CensusError):
    code = "needs-rotation"


class NotFixed(CensusError):
    code = "not-fixed"


class AllDivisible(CensusError):
    code = "all-divisible"


class NotUnit(CensusError):
    code = "not-unit"


class HypothesisFailed(CensusError):
    code = "hypothesis-failed"


class NoCoprimePair(CensusError):
    code = "no-coprime-pair"


class OracleFailure(CensusError):
    """An internal invariant broke; this always indicates a bug, never bad input."""

    code = "oracle-failure"
