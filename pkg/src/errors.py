"""Domain errors raised by the plumbline library.

Every error the CLI reports by name is a subclass of `PlumblineError`.
"""


class PlumblineError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


# =============================================================================
# GRAPH INPUT
# =============================================================================


class GraphSyntaxError(PlumblineError):
    """Malformed line in a graph file."""


class DuplicateVertex(PlumblineError):
    pass


class UnknownVertex(PlumblineError):
    pass


class NotATree(PlumblineError):
    pass


class NotNegativeDefinite(PlumblineError):
    pass


class GenusNonzero(PlumblineError):
    pass


class NotStarShaped(PlumblineError):
    pass


class UnknownCorpusEntry(PlumblineError):
    pass


# =============================================================================
# LATTICE
# =============================================================================


class NotInDualLattice(PlumblineError):
    """A rational cycle pairs non-integrally with some E_v."""


class NonEffectiveZ(PlumblineError):
    """Z must be a nonzero cycle with nonnegative coefficients."""


class EcaEmpty(PlumblineError):
    """ECa^{l'}(Z) is empty because -l' is not in the Lipman cone."""


class ComponentNotSupported(PlumblineError):
    pass


# =============================================================================
# SERIES
# =============================================================================


class ExponentOutOfBound(PlumblineError):
    pass


class BoundInsufficient(PlumblineError):
    pass


class NotStabilized(PlumblineError):
    pass


class InconsistentTruncation(PlumblineError):
    """A coefficient beyond the known truncation order was requested."""


class TruncationInsufficient(PlumblineError):
    pass


# =============================================================================
# SEIFERT / CHARTS / SUPERISOLATED
# =============================================================================


class NotCoprime(PlumblineError):
    pass


class BadRange(PlumblineError):
    pass


class PoleAtEvaluationPoint(PlumblineError):
    pass


class HypothesisViolated(PlumblineError):
    pass
