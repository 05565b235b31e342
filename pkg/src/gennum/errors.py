"""Exception hierarchy.

Every failure the library can produce deliberately derives from GennumError,
so drivers (CLI, suites) can convert them into structured reports.  Anything
else escaping is a genuine bug.
"""


class GennumError(Exception):
    """Base class for all structured library errors."""

    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ModeError(GennumError):
    code = "mode-error"


class IncompatibleFamilies(GennumError):
    code = "incompatible-families"


class NotModerate(GennumError):
    code = "not-moderate"


class DivisionByZero(GennumError):
    code = "division-by-zero"


class NotInvertible(GennumError):
    code = "not-invertible"


class NotInvertibleOnS(GennumError):
    code = "not-invertible-on-set"


class NotOrthogonal(GennumError):
    code = "not-orthogonal"


class Undecided(GennumError):
    """Raised when a query leaves the decidable fragment.

    Soundness over completeness: we never guess.
    """

    code = "undecided"


class UnsupportedCancellation(Undecided):
    code = "unsupported-cancellation"


class UndecidableRegion(Undecided):
    code = "undecidable-region"


class UnnormalizableIdeal(GennumError):
    code = "unnormalizable-ideal"


class ImproperFilter(GennumError):
    code = "improper-filter"


class SIsCovered(GennumError):
    code = "set-is-covered"


class NotApplicable(GennumError):
    code = "not-applicable"


class UnknownSuite(GennumError):
    code = "unknown-suite"


class ResourceLimit(GennumError):
    code = "resource-limit"


class LangError(GennumError):
    code = "lang-error"


class SyntaxErr(LangError):
    """Position-annotated syntax error."""

    code = "syntax-error"

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        msg = f"{line}:{col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)

    def payload(self) -> dict:
        return {
            "error": self.code,
            "line": self.line,
            "col": self.col,
            "expected": self.expected,
            "found": self.found,
        }


class TypeMismatch(LangError):
    code = "type-mismatch"


class UnknownIdentifier(LangError):
    code = "unknown-identifier"
