"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class HitkitError(Exception):
    """Base class for library errors."""


class UsageError(HitkitError, ValueError):
    """Arguments are malformed or incompatible (CLI exit code 2)."""


class DomainError(HitkitError, ValueError):
    """Arguments are well formed but outside the mathematical domain."""


class ResourceError(HitkitError, RuntimeError):
    """A configured size cap would be exceeded (CLI exit code 3)."""
