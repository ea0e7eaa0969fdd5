"""Exception hierarchy shared by the library and the CLI."""


class QWalkError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QWalkError, ValueError):
    """Bad user-supplied data or parameters. The CLI maps these to exit code 2."""


# graph validation / parsing
class MalformedInput(InputError):
    pass


class NotRegular(InputError):
    pass


class SelfLoop(InputError):
    pass


class AsymmetricEdge(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


# generation
class InfeasibleParameters(InputError):
    pass


class GenerationFailed(QWalkError):
    pass


# operators
class DimensionMismatch(InputError):
    pass


class BadLength(InputError):
    pass


# spectral
class NotConnectedComponent(InputError):
    pass


class BadEpsilon(InputError):
    pass


# amplification
class OutOfRange(InputError):
    pass


class Unreachable(QWalkError):
    pass
