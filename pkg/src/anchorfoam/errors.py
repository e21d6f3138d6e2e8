"""Exception hierarchy shared across the package."""


class FoamError(Exception):
    """Base class for all anchorfoam errors."""


class NonExactDivision(FoamError):
    """Polynomial division left a nonzero remainder."""


class NonIntegral(FoamError):
    """A factored sum did not clear its common denominator.

    For genuine (embeddable) foams the evaluation is always a polynomial,
    so this signals a malformed encoding rather than a math failure.
    """


class ParityViolation(FoamError):
    """An anchor label pair count was odd for a colorable foam."""


class BoundaryMismatch(FoamError):
    """Composition attempted along unequal circle configurations."""


class AnchoredComponent(FoamError):
    """Kempe move requested along a component meeting the anchor line."""


class NotStandardGenerator(FoamError):
    """phi_map received a foam that is not a standard generator."""


class InternalInconsistency(FoamError):
    """A structural self-check failed (e.g. d^2 != 0)."""


class SchemaError(FoamError):
    """Input file does not match the JSON schema."""


class InvariantViolation(FoamError):
    """Parsed object violates a structural invariant."""


class SuiteFailure(FoamError):
    """A randomized verification suite found a counterexample."""
