"""Exception types shared across the package."""


class DormantError(Exception):
    """Base class for domain errors."""


class NonCommuting(DormantError):
    """Matrices expected to commute pairwise do not."""


class NonDiagonalizable(DormantError):
    """A matrix is not semisimple over the coefficient field."""


class NonCommutingGenerators(DormantError):
    """Generator action matrices do not commute."""


class InconsistentAlgebra(DormantError):
    """Generators do not extend to a consistent operator-algebra action."""


class TruncationUnstable(DormantError):
    """A filtration basis changed when the truncation order was doubled."""


class NonSplitLocal(DormantError):
    """Monodromy is not simultaneously diagonalizable over F_p."""


class NotInXi(DormantError):
    """Exponent multiset has coinciding mod-p images."""


class NotUnit(DormantError):
    """Edge integer a has p | 2a+1, so it defines no radius."""


class IncompatibleExponents(DormantError):
    """Prescribed local exponents violate the degree (Fuchs) constraint."""


class NotDormantStage(DormantError):
    """Descent requested for a stage with nonzero p-curvature."""


class EmptyExtension(DormantError):
    """No admissible extension exists at this level."""


class LiftNotAdmissible(DormantError):
    """Level-lifted vertex triples are missing from the higher table."""


class GraphDependence(DormantError):
    """Counts disagree across graphs of equal type (internal invariant bug)."""


class TableMissing(DormantError):
    """No admissibility table available for the requested (p, N)."""


class IdentityViolated(DormantError):
    """A gluing factorization identity failed."""


class NotTrivalent(DormantError):
    """A vertex does not have exactly three incidences."""


class Disconnected(DormantError):
    """The semi-graph is not connected."""


class CapExceeded(DormantError):
    """Requested enumeration exceeds the configured complexity cap."""


class UnknownQuery(DormantError):
    """Unrecognized closed-form query name."""
