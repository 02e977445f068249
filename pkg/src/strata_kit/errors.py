"""Error types shared across the package."""


class StrataKitError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"
    exit_code = 1


class DimensionError(StrataKitError, ValueError):
    code = "dimension"
    exit_code = 4


class MembershipError(StrataKitError, ValueError):
    code = "membership"
    exit_code = 3


class InvertibilityError(StrataKitError, ValueError):
    code = "invertibility"
    exit_code = 3

    def __init__(self, message, determinant=None):
        super().__init__(message if determinant is None else f"{message} (det = {determinant!r})")
        self.determinant = determinant


class CapabilityError(StrataKitError, NotImplementedError):
    code = "capability"
    exit_code = 5


class HomogeneityError(StrataKitError, ValueError):
    code = "homogeneity"
    exit_code = 3


class InconsistencyError(StrataKitError, RuntimeError):
    """Two independent computations disagreed; carries both sides."""

    code = "internal_inconsistency"
    exit_code = 6

    def __init__(self, message, **evidence):
        detail = ", ".join(f"{k}={v}" for k, v in evidence.items())
        super().__init__(f"{message} [{detail}]" if detail else message)
        self.evidence = evidence


class ParseError(StrataKitError, ValueError):
    code = "parse"
    exit_code = 2
