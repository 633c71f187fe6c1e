"""Exception types shared across the package."""


class LbcutError(Exception):
    """Base class for all package-specific errors."""


class GraphError(LbcutError):
    """Malformed graph or instance (self-loop, duplicate edge, bad id)."""


class InvalidCut(LbcutError):
    """Cut set has members that are invalid for the graph or instance."""


class NoVertexCut(LbcutError):
    """No vertex s-t cut exists because s and t are adjacent."""


class InvalidAssignment(LbcutError):
    """Assignment violates a domain or a hard constraint."""


class DecompositionMismatch(LbcutError):
    """Tree decomposition does not cover the CSP's constraint scopes."""


class InvalidDecomposition(LbcutError):
    """Tree decomposition failed validation or broke a solver guarantee."""


class ResourceExceeded(LbcutError):
    """A dynamic-programming table would exceed the configured budget."""


class BudgetExceeded(LbcutError):
    """Brute-force enumeration would exceed its budget."""


class ParseError(LbcutError):
    """Malformed instance or decomposition file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UsageError(LbcutError):
    """Invalid combination of command-line options or parameters."""
