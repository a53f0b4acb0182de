"""Exception types shared across the library."""


class PuiseuxError(Exception):
    """Base class for all library-specific errors."""


class CharTooSmall(PuiseuxError):
    """Field characteristic is positive but not larger than the working degree."""


class NotSeparable(PuiseuxError):
    """The input polynomial is not separable in Y (gcd(F, F_Y) nontrivial)."""


class PrecisionExhausted(PuiseuxError):
    """An operation was asked for more X-adic precision than its input carries."""


class DivisibleByX(PuiseuxError):
    """Weierstrass preparation requires X not to divide the input."""


class KappaExceedsCap(PuiseuxError):
    """No Bezout relation U*G + V*H = X^k found for any k up to the cap."""


class PreconditionViolated(PuiseuxError):
    """An algorithm contract check failed (indicates a caller bug)."""


class RandomnessExhausted(PuiseuxError):
    """Las Vegas retry budget exceeded (bad luck or violated precondition)."""


class PrecisionTooLow(PuiseuxError):
    """The requested truncation order is too small to certify the output."""


class NegativeGenus(PuiseuxError):
    """Genus formula returned a negative value; F is likely not irreducible."""
