"""Exception types shared by the evaluators."""


class CombidError(Exception):
    """Base class for every domain error raised by combid."""


class DomainError(CombidError, ValueError):
    pass


class PoleError(CombidError, ValueError):
    """Gamma function evaluated at (or within tolerance of) a nonpositive integer."""

    def __init__(self, s, message=None):
        self.s = s
        super().__init__(message or f"gamma pole at s={s!r}")


class IndeterminateError(CombidError, ValueError):
    pass


class SingularTermError(CombidError, ZeroDivisionError):
    """A summand 1/(c+k)^m with c+k at zero; ``k`` names the offending index."""

    def __init__(self, k, c=None):
        self.k = k
        self.c = c
        super().__init__(f"singular term at k={k} (offset c={c!r})")


class ZeroToNonpositivePowerError(CombidError, ZeroDivisionError):
    pass


class NotExactlyEvaluableError(CombidError):
    """The instance has a subterm that is not a rational number."""

    def __init__(self, subterm):
        self.subterm = subterm
        super().__init__(f"not exactly evaluable: {subterm}")


class DivisionByZeroError(CombidError, ZeroDivisionError):
    def __init__(self, denominator):
        self.denominator = denominator
        super().__init__(f"vanishing denominator: {denominator}")
