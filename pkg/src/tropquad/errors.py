"""Error types shared across the package."""


class PreconditionError(Exception):
    """An algebraic precondition was violated.

    `precondition` is a short stable label naming the violated requirement
    (used verbatim in CLI error output, exit code 2).
    """

    def __init__(self, precondition: str, message: str = ""):
        self.precondition = precondition
        super().__init__(message or precondition)
