"""Exception hierarchy. Every error carries a stable string code used by the CLI."""


class MajlatError(Exception):
    code = "MAJLAT_ERROR"

    def __init__(self, message="", **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {"code": self.code, "message": self.message, "context": self.context}


class EmptyVector(MajlatError, ValueError):
    code = "EMPTY_VECTOR"


class NegativeEntry(MajlatError, ValueError):
    code = "NEGATIVE_ENTRY"


class SumNotOne(MajlatError, ValueError):
    code = "SUM_NOT_ONE"


class NotSorted(MajlatError, ValueError):
    code = "NOT_SORTED"


class OutOfDomain(MajlatError, ValueError):
    code = "OUT_OF_DOMAIN"


class DimensionMismatch(MajlatError, ValueError):
    code = "DIMENSION_MISMATCH"


class EmptySet(MajlatError, ValueError):
    code = "EMPTY_SET"


class InvalidRadius(MajlatError, ValueError):
    code = "INVALID_RADIUS"


class NegativeEps(MajlatError, ValueError):
    code = "NEGATIVE_EPS"


class UnsupportedNorm(MajlatError, ValueError):
    code = "UNSUPPORTED_NORM"


class NotAdmissible(MajlatError, ValueError):
    code = "NOT_ADMISSIBLE"


class WrongDimension(MajlatError, ValueError):
    code = "WRONG_DIMENSION"


class BallTouchesBoundary(MajlatError, ValueError):
    code = "BALL_TOUCHES_BOUNDARY"


class UnsupportedP(MajlatError, ValueError):
    code = "UNSUPPORTED_P"


class NotHermitian(MajlatError, ValueError):
    code = "NOT_HERMITIAN"


class NotDensityMatrix(MajlatError, ValueError):
    code = "NOT_DENSITY_MATRIX"


class TooLarge(MajlatError, ValueError):
    code = "TOO_LARGE"


class EmptyPolytope(MajlatError, ValueError):
    code = "EMPTY_POLYTOPE"
