"""Exception types raised by the kernel and the harness."""


class FrobGBError(Exception):
    """Base class for all errors raised by frobgb."""


class DivisionByZero(FrobGBError, ZeroDivisionError):
    pass


class ModulusMismatch(FrobGBError, ValueError):
    pass


class DimensionMismatch(FrobGBError, ValueError):
    pass


class NotDivisible(FrobGBError, ValueError):
    pass


class ZeroPolynomial(FrobGBError, ValueError):
    pass


class ExponentOverflow(FrobGBError, OverflowError):
    """An exponent or total degree left the signed 64-bit range."""


class ParseError(FrobGBError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class ContextMismatch(FrobGBError, ValueError):
    pass


class CharMismatch(FrobGBError, ValueError):
    pass


class NotComaximal(FrobGBError, ValueError):
    pass


class DomainNotCovered(FrobGBError, ValueError):
    pass


class SameTypeUnsupported(FrobGBError, ValueError):
    pass


class UnknownFamily(FrobGBError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"
