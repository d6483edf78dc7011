class GCTLabError(Exception):
    """Base error; ``exit_code`` is what the CLI exits with."""

    exit_code = 2


class InvalidInputError(GCTLabError):
    exit_code = 2


class ClosedFormInapplicableError(InvalidInputError):
    """A closed form was forced on inputs outside its domain."""


class ResourceLimitError(GCTLabError):
    exit_code = 2


class VerificationError(GCTLabError):
    """Oracle disagreement, failed certificate re-check or a non-integral expansion."""

    exit_code = 1


class CacheCorruptionError(GCTLabError):
    exit_code = 1
