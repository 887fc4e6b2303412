"""Exception types shared across the package, mapped to CLI exit codes."""


class DomainError(ValueError):
    """Invalid argument or violated precondition (CLI exit code 1)."""


class SizeLimitError(RuntimeError):
    """Instance exceeds a solver's enforced size guard (CLI exit code 2)."""


class PipelineError(RuntimeError):
    """A multi-stage randomized run cannot continue (CLI exit code 3)."""


class AbsorptionStuckError(PipelineError):
    """No unused family member can absorb the pending vertex set (exit code 3)."""

    def __init__(self, pending):
        self.pending = tuple(sorted(pending))
        super().__init__(
            "absorption stuck: no unused family member absorbs "
            f"{list(self.pending)} (family too small for this instance)"
        )


class CertificationError(RuntimeError):
    """An exact internal certificate failed to validate; indicates a bug."""
