class LoopError(Exception):
    """Base class for loopsmith errors."""


class NotLatin(LoopError):
    pass


class NoIdentity(LoopError):
    pass


class TableFormatError(LoopError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrderUndefined(LoopError):
    pass


class NotASubloop(LoopError):
    pass


class NotNormal(LoopError):
    pass


class IllDefined(LoopError):
    pass


class DegreeMismatch(LoopError):
    pass


class InternalDisagreement(LoopError):
    pass


class NotDivisible(LoopError):
    """Squaring is not a bijection; ``witness`` is (x, y, square) with x != y."""

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        x, y, s = witness
        super().__init__(f"squaring is not injective: {x}^2 = {y}^2 = {s}")


class FactorizationMismatch(LoopError):
    pass


class IdentityFailure(LoopError):
    """An identity the loop was required to satisfy failed; ``witness`` is a tuple."""

    def __init__(self, name: str, witness: tuple):
        self.name = name
        self.witness = witness
        super().__init__(f"{name} fails at {witness}")


class BolFailure(IdentityFailure):
    def __init__(self, witness):
        super().__init__("left Bol identity", witness)


class AipFailure(IdentityFailure):
    def __init__(self, witness):
        super().__init__("automorphic inverse property", witness)


class SingularTranslation(LoopError):
    pass


class CeilingExceeded(LoopError):
    pass


class BudgetExhausted(LoopError):
    pass
