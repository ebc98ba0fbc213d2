"""Exception hierarchy for numerical failures."""


class XYDiscordError(Exception):
    """Base class for every numerical failure raised by the package."""


class QuadratureFailure(XYDiscordError):
    pass


class UnsupportedRange(XYDiscordError):
    pass


class PositivityViolation(XYDiscordError):
    pass


class FormViolation(XYDiscordError):
    """Kraus evolution produced entries outside the X pattern."""


class DegenerateState(XYDiscordError):
    pass


class MultiRoot(XYDiscordError):
    pass


class DomainEdge(XYDiscordError):
    pass


class NoPeak(XYDiscordError):
    pass
