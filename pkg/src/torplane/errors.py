"""Exception hierarchy shared by every module.

The class name doubles as the error code reported by the command line
front end, so keep names stable.
"""


class TorplaneError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DivisionByZero(TorplaneError, ZeroDivisionError):
    pass


class OrderTooLarge(TorplaneError, ValueError):
    """A cyclotomic order or group order exceeded TORPLANE_MAX_ORDER."""


class ParseError(TorplaneError, ValueError):
    pass


class NotAutomorphism(TorplaneError):
    pass


class NotReduced(TorplaneError):
    pass


class NotSemisimple(TorplaneError):
    pass


class NotCommuting(TorplaneError):
    pass


class BadParameters(TorplaneError, ValueError):
    pass


class InvalidForm(TorplaneError, ValueError):
    pass


class NotEmbedding(TorplaneError):
    pass


class NotEquivariant(TorplaneError):
    pass


class NotFiniteWithinBound(TorplaneError):
    pass


class NotHomogeneous(TorplaneError, ValueError):
    pass
