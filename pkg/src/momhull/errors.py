"""Exception hierarchy. Every error is a ``ValueError`` so callers that only
care about "bad input" can catch that."""


class MomhullError(ValueError):
    pass


class InvalidNaming(MomhullError):
    pass


class InvalidShape(MomhullError):
    pass


class DegenerateNodes(MomhullError):
    pass


class ConditioningFailure(MomhullError):
    pass


class NotReducible(MomhullError):
    pass


class NotProper(MomhullError):
    pass


class ParityMismatch(MomhullError):
    pass


class DomainMismatch(MomhullError):
    pass


class ReductionStalled(MomhullError):
    pass


class OutsideHull(MomhullError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NonRealRoots(MomhullError):
    pass


class OracleFailure(MomhullError):
    pass


class NotInterior(MomhullError):
    pass


class NotInvertible(MomhullError):
    pass
