"""Exception hierarchy shared by all qhopf modules."""


class QhopfError(Exception):
    """Base class for all errors raised by this package."""


# -- scalar layer ------------------------------------------------------------

class FieldMismatch(QhopfError):
    """Operands live in different cyclotomic fields (no prior embedding)."""


class NotASubfield(QhopfError):
    """Requested embedding Q(zeta_m) -> Q(zeta_n) with m not dividing n."""


class NotCoprime(QhopfError):
    """Galois substitution zeta -> zeta^k with gcd(k, n) != 1."""


class ScalarParseError(QhopfError):
    """A scalar string does not match the polynomial grammar."""


# -- linear algebra layer ----------------------------------------------------

class DimensionMismatch(QhopfError):
    pass


class SlotOutOfRange(QhopfError):
    pass


class OrderMismatch(QhopfError):
    pass


class SingularMatrix(QhopfError):
    pass


# -- algebra layer -----------------------------------------------------------

class AlgebraMismatch(QhopfError):
    """Elements of two different algebras were combined."""


class PresentationError(QhopfError):
    """A structure-constant file is malformed (bad indices, bad scalars...)."""


class ValidationFailure(QhopfError):
    """An axiom check failed on load; carries the offending report."""

    def __init__(self, report):
        self.report = report
        super().__init__("axiom validation failed:\n%s" % report)


class InternalInconsistency(QhopfError):
    """Two printed closed forms of the same derived element disagree."""


# -- solvers -----------------------------------------------------------------

class DegenerateIntegralSpace(QhopfError):
    """Left or right integral space does not have dimension one."""


class NoCointegral(QhopfError):
    pass


class NonUniqueCointegral(QhopfError):
    pass


class NoSolution(QhopfError):
    pass


class NonUniqueSolution(QhopfError):
    pass


class NoPivot(QhopfError):
    """A pivotal-only operation was invoked on a non-pivotal algebra."""


class NoRMatrix(QhopfError):
    pass


class MissingOmegaHat(QhopfError):
    pass


class MissingRibbon(QhopfError):
    pass


class NotInAlphaZ(QhopfError):
    pass


class NotAHopfAlgebra(QhopfError):
    pass


class BadBeta(QhopfError):
    """Coassociator parameter does not satisfy beta^4 = (-1)^N."""


class TheoremViolation(QhopfError):
    """A verified bijection failed; signals a bug or malformed input."""
