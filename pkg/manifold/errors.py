class ManifoldError(Exception):
    """Base class for every failure raised by this package."""


class DomainError(ManifoldError, ValueError):
    pass


class StructuralError(ManifoldError):
    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            summary += f"; and {more} more"
        super().__init__(f"malformed complex: {summary}")


class UnknownNameError(ManifoldError, LookupError):
    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        super().__init__(f"unknown {kind} '{name}'")

    def __str__(self):
        return self.args[0]


class EliminationError(ManifoldError):
    pass


class CapacityError(ManifoldError):
    pass


class UnsupportedQuotientError(ManifoldError):
    pass


class DocumentParseError(ManifoldError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
