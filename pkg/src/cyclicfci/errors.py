class CyclicFCIError(Exception):
    """Base class for all errors raised by this package."""


class GraphValidationError(CyclicFCIError, ValueError):
    pass


class SelfLoop(GraphValidationError):
    pass


class DuplicateEdge(GraphValidationError):
    pass


class UnknownNode(GraphValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidEdgeType(GraphValidationError):
    pass


class InvalidWalk(CyclicFCIError, ValueError):
    pass


class NotAcyclic(CyclicFCIError, ValueError):
    pass


class UniverseMismatch(CyclicFCIError, ValueError):
    pass


class UniverseTooLarge(CyclicFCIError, ValueError):
    pass


class EdgeNotDirected(CyclicFCIError, ValueError):
    pass


class OracleInconsistent(CyclicFCIError):
    """Orientation conflict during discovery; the input is not faithful to any graph."""


class InvalidJciSubset(CyclicFCIError, ValueError):
    pass


class PairNotEligible(CyclicFCIError, ValueError):
    pass


class ChordalityViolation(CyclicFCIError, ValueError):
    pass


class CapExceeded(CyclicFCIError, ValueError):
    pass


class InvalidDensity(CyclicFCIError, ValueError):
    pass


class ParseError(CyclicFCIError, ValueError):
    pass
