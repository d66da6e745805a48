"""Exception hierarchy; the CLI maps each class to an exit code."""


class RepGFError(Exception):
    exit_code = 1


class ValidationError(RepGFError, ValueError):
    """Malformed or inconsistent input (bad field, non-automorphism, ...)."""

    exit_code = 2


class CharacteristicError(ValidationError):
    """The field characteristic divides the group order."""

    def __init__(self, p, order):
        super().__init__(
            f"characteristic divides group order: p={p} divides |G|={order}; "
            "this tool assumes char K does not divide |G|"
        )
        self.p = p
        self.order = order


class HypothesisError(RepGFError):
    """A required hypothesis (such as irreducibility) is not met by the supplied data."""

    exit_code = 3


class CertificationError(RepGFError, RuntimeError):
    """An internal cross-check disagreed. Always indicates a bug."""

    exit_code = 4
