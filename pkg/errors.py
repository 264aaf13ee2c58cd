"""
Exception hierarchy shared by every layer of the workbench.

Two families, split by who is at fault:
  - PreconditionError: the caller passed arguments outside an operation's domain
    (CLI exit code 2).
  - InternalAssertion: an identity the code relies on did not hold
    (CLI exit code 3).
"""


class WhfError(ValueError):
    """Base class for all workbench errors."""


class PreconditionError(WhfError):
    pass


class InternalAssertion(WhfError):
    pass


# ──────────────────────────────────────────────
# Preconditions
# ──────────────────────────────────────────────

class InputOutOfRange(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class EvenModulus(PreconditionError):
    pass


class NotResidue(PreconditionError):
    pass


class NotQuadraticResidue(PreconditionError):
    pass


class SharesFactor(PreconditionError):
    pass


class BadResidueClass(PreconditionError):
    pass


class RadicandMismatch(PreconditionError):
    pass


class NotSplit(PreconditionError):
    pass


class NotConvertible(PreconditionError):
    pass


class NotMutualResidue(PreconditionError):
    pass


class DegenerateFraction(PreconditionError):
    pass


class OddB(PreconditionError):
    pass


class UnsupportedFormat(PreconditionError):
    pass


# ──────────────────────────────────────────────
# Internal assertions
# ──────────────────────────────────────────────

class AmbiguousSymbol(InternalAssertion):
    """Conjugate residues disagree: the surd symbol depends on the chosen root."""


class RootCheckFailed(InternalAssertion):
    pass


class PrecompositionFailure(InternalAssertion):
    pass
