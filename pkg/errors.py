"""Exception hierarchy shared by every heckelab module."""


class HeckelabError(Exception):
    """Base class for errors raised by heckelab."""


class ConfigurationError(HeckelabError):
    """Bad descriptor, unknown suite name, or a size limit exceeded."""


class PreconditionError(HeckelabError):
    """An operation was called outside its stated precondition."""


class DomainError(HeckelabError):
    """A partial map was applied outside the set it is defined on."""


class UnsupportedCaseError(HeckelabError):
    """The computation needs a type or a field extension that is not implemented."""


class InternalConsistencyError(HeckelabError):
    """A derived structure violates one of its own defining properties."""


class SchemaError(HeckelabError):
    """A JSON document does not match the expected schema."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field
