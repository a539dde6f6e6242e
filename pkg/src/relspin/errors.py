"""Exception types raised by the relspin numerics."""


class SuperluminalError(ValueError):
    """Velocity with |beta| >= 1 (or non-finite) was supplied."""


class MalformedTensorError(ValueError):
    """A tensor that must be antisymmetric (or of a given shape) is not."""


class InvalidFactorError(ValueError):
    """A Lorentz factor below 1 or a vanishing gyromagnetic ratio."""


class WrongModelError(ValueError):
    """An operation was asked of a spin model that does not support it."""
