"""Exception types shared across the toolkit."""


class ArtifactError(Exception):
    """Base class for domain errors (bad input, unsatisfied preconditions)."""


class PolynomialSyntaxError(ArtifactError, ValueError):
    """Raised by the polynomial parser; ``position`` is a 0-based offset."""

    def __init__(self, message, position, source=""):
        self.position = position
        self.source = source
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(ArtifactError, KeyError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown variable {name!r}{where}")

    def __str__(self):
        return self.args[0]


class NonHomogeneousError(ArtifactError, ValueError):
    """The polynomial mixes several weighted degrees."""

    def __init__(self, degrees):
        self.degrees = tuple(sorted(degrees))
        super().__init__(f"polynomial is not weighted homogeneous; degrees present: {list(self.degrees)}")


class ZeroPolynomialError(ArtifactError, ValueError):
    pass


class NotQuasiSmoothError(ArtifactError, ValueError):
    pass


class ActionError(ArtifactError, ValueError):
    """Malformed group data, or an action that does not fix the polynomial."""


class LatticeError(ArtifactError, ValueError):
    pass


class GenusUndecidedError(LatticeError):
    """The discriminant group is too large for the exhaustive isomorphism search."""
