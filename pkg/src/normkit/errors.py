"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`NormkitError`, so callers (the CLI in particular) can tell a
diagnosed failure apart from a genuine crash.
"""


class NormkitError(Exception):
    pass


# signatures

class SignatureError(NormkitError):
    pass


class DuplicateName(SignatureError):
    pass


class NullaryRelation(SignatureError):
    pass


class BadPairing(SignatureError):
    pass


class NotASubsignature(SignatureError):
    pass


class SignatureHomError(SignatureError):
    pass


class KindMismatch(SignatureHomError):
    pass


class ArityMismatch(SignatureHomError):
    pass


class PairingNotPreserved(SignatureHomError):
    pass


class NotComposable(NormkitError):
    pass


# formulas and the DSL

class DSLError(NormkitError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class DSLSyntaxError(DSLError):
    def __init__(self, line, column, expected, found=None):
        self.expected = expected
        self.found = found
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, line, column)


class UnknownSymbol(DSLError):
    pass


class ArityError(DSLError):
    pass


class UnresolvedReference(DSLError):
    pass


class UninterpretedSymbol(NormkitError):
    pass


class BudgetExceeded(NormkitError):
    pass


# theories and structures

class TheoryError(NormkitError):
    pass


class SignatureMismatch(TheoryError):
    pass


class NameClash(TheoryError):
    pass


class NotEmbeddable(TheoryError):
    pass


class NotASubtheory(TheoryError):
    pass


class NotAModel(TheoryError):
    pass


class StructureError(NormkitError):
    pass


class NotBinary(StructureError):
    pass


class NotAPreorder(StructureError):
    pass


# prenorms and categories

class SignatureHomInvalid(NormkitError):
    pass


class PhiNotTotal(NormkitError):
    pass


class NotAPrenorm(NormkitError):
    pass


class InternalInvariantViolation(NormkitError):
    pass


class NotPivotal(NormkitError):
    pass


class NotNullary(NormkitError):
    pass


class NotPrealgebraic(NormkitError):
    pass


class RestrictionUndefined(NormkitError):
    pass


class TargetMismatch(NormkitError):
    pass


class ExampleAssertionFailed(NormkitError):
    pass
