"""Exception hierarchy. Every model error derives from ``SupermazeError``."""


class SupermazeError(Exception):
    pass


class DimensionMismatch(SupermazeError, ValueError):
    pass


class NonHermitianInput(SupermazeError, ValueError):
    pass


class NonUnitaryTarget(SupermazeError, ValueError):
    pass


class DegenerateBranch(SupermazeError, ValueError):
    """An eigenphase sits on the branch cut of the principal logarithm."""


class NonPositiveBudget(SupermazeError, ValueError):
    pass


class MissingGenerator(SupermazeError, KeyError):
    pass


class DanglingEdge(SupermazeError, ValueError):
    pass


class DuplicateId(SupermazeError, ValueError):
    pass


class UnknownNode(SupermazeError, KeyError):
    pass


class NegativeInput(SupermazeError, ValueError):
    pass


class UnknownState(SupermazeError, KeyError):
    pass


class InvalidDistribution(SupermazeError, ValueError):
    pass


class NonAscendingGrid(SupermazeError, ValueError):
    pass


class NoStationaryDistribution(SupermazeError):
    pass


class NotReachedWithinGrid(SupermazeError):
    def __init__(self, horizon: float, distance: float, epsilon: float):
        self.horizon = horizon
        self.distance = distance
        self.epsilon = epsilon
        super().__init__(
            f"L1 distance {distance:.3g} still >= epsilon {epsilon:.3g} at horizon t={horizon:.6g}"
        )


class OrderingViolation(SupermazeError, ValueError):
    pass


class ComplexRoots(SupermazeError, ValueError):
    pass


class InvalidRoot(SupermazeError, ValueError):
    pass


class ParseError(SupermazeError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class ValidationError(SupermazeError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
