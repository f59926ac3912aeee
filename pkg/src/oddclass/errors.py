"""Exception hierarchy.

Every domain failure carries a ``kind`` (the class name) so the CLI and the
survey can report it in machine-readable form.
"""


class OddClassError(Exception):
    @property
    def kind(self) -> str:
        return type(self).__name__


class DiscriminantMismatch(OddClassError):
    pass


class BoundExceeded(OddClassError):
    pass


class FactorizationFailure(OddClassError):
    pass


class InvalidP(OddClassError):
    pass


class InvalidN(OddClassError):
    pass


class InvalidK(OddClassError):
    pass


class NotCoprime(OddClassError):
    pass


class SizeViolation(OddClassError):
    pass


class DegenerateField(OddClassError):
    pass


class InternalInvariantViolation(OddClassError):
    pass


class OracleMismatch(OddClassError):
    pass


class ConfigInvalid(OddClassError):
    pass


class IOFailure(OddClassError):
    pass
