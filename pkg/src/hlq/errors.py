"""Exception types shared by the kernel and the CLI."""


class HLQError(Exception):
    pass


class ValidationError(HLQError):
    """Input data violates a structural axiom; ``violations`` holds the report."""

    def __init__(self, what, violations):
        self.violations = list(violations)
        lines = [f"invalid {what}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations[:20]]
        super().__init__("\n".join(lines))


class SizeCapError(HLQError):
    """An enumeration would exceed a configured cap."""


class MismatchError(HLQError, ValueError):
    """Operands do not share the required base, foot or index."""


class NotInvertibleError(HLQError):
    pass


class LoadError(HLQError):
    """Input file could not be read or parsed."""
