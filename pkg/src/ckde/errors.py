"""Exception types shared across the package."""


class CkdeError(Exception):
    pass


class NotPrime(CkdeError, ValueError):
    pass


class FieldMismatch(CkdeError, ValueError):
    pass


class ZeroInverse(CkdeError, ZeroDivisionError):
    pass


class SingularCurve(CkdeError, ValueError):
    pass


class PointNotOnCurve(CkdeError, ValueError):
    pass


class FieldTooLarge(CkdeError, ValueError):
    pass


class SearchExhausted(CkdeError, RuntimeError):
    pass


class PointNotInSubgroup(CkdeError, ValueError):
    pass


class HashToPointExhausted(CkdeError, RuntimeError):
    pass


class PolicyError(CkdeError, ValueError):
    pass


class DuplicateId(CkdeError, ValueError):
    pass


class ZeroId(CkdeError, ValueError):
    pass


class InsufficientShares(CkdeError, ValueError):
    pass


class TooManyShares(CkdeError, ValueError):
    pass


class UnknownField(CkdeError, KeyError):
    pass


class ProtocolReject(CkdeError):
    """A protocol party refused a message. ``reason`` is the transcript code."""

    reason = "Rejected"

    def __init__(self, detail=""):
        super().__init__(f"{self.reason}: {detail}" if detail else self.reason)
        self.detail = detail


class NodeRevoked(ProtocolReject):
    reason = "NodeRevoked"


class InvalidRequester(ProtocolReject):
    reason = "InvalidRequester"


class IllegalShare(ProtocolReject):
    reason = "IllegalShare"


class ConfigInvalid(CkdeError, ValueError):
    """Scenario config rejected; ``diagnostics`` lists ``(field, message)`` pairs."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(f"{f}: {m}" for f, m in self.diagnostics)
        super().__init__(f"invalid scenario config: {lines}")


class DegenerateEphemeral(UserWarning):
    pass
