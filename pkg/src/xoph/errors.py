"""Exception types shared across the package."""


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""

    def __init__(self, dividend, divisor):
        self.dividend = dividend
        self.divisor = divisor
        super().__init__(f"{dividend} is not divisible by {divisor}")


class DenominatorNotCleared(ArithmeticError):
    """An operator expected to have polynomial coefficients kept a denominator."""


class PoleAtIndex(ArithmeticError):
    def __init__(self, offset: int, n: int):
        self.offset = offset
        self.n = n
        super().__init__(f"coefficient of shift {offset:+d} has a pole at n={n}")


class NotAStabilizer(ValueError):
    """f' is not divisible by the Wronskian eta, so f is not a stabilizer element."""
