"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Inputs are well formed but violate an operation's precondition.

    Examples: an extension candidate that already lies in the subalgebra, a
    non-regular element where an eigenbasis is needed, or two discrete states
    that are not equivalent when a transport witness is requested.
    """
