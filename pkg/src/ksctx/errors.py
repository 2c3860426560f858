"""Exception types raised across ksctx."""


class KsctxError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class ParseError(KsctxError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScenarioError(KsctxError, ValueError):
    pass


class ScenarioTooLarge(KsctxError):
    pass


class DegeneratePolytope(KsctxError):
    def __init__(self, hull_dimension, ambient_dimension):
        self.hull_dimension = hull_dimension
        self.ambient_dimension = ambient_dimension
        super().__init__(
            f"point set spans an affine hull of dimension {hull_dimension} "
            f"in ambient dimension {ambient_dimension}; re-project first"
        )


class UnboundedPolyhedron(KsctxError):
    pass


class EmptyPolyhedron(KsctxError):
    pass


class InfeasibleTarget(KsctxError):
    pass


class DuplicateAtomInContext(ParseError):
    pass


class TooManyAtoms(KsctxError):
    pass


class NonExhaustiveStates(KsctxError):
    pass


class SpecInvalid(KsctxError, ValueError):
    pass


class EmptyStream(KsctxError):
    pass


class TargetOutOfRange(KsctxError, ValueError):
    pass
