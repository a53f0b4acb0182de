"""Exact coefficient fields: F_p (elements are ints in [0,p)) and Q (Fraction)."""

from fractions import Fraction

from .errors import CharTooSmall

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    """Deterministic Miller-Rabin, valid for n < 3.3*10^24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic context for F_p; elements are plain ints reduced mod p."""

    kind = "prime-field"

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def rand(self, rng):
        return rng.randrange(self.p)

    def check_char(self, d):
        """Raise CharTooSmall unless p > d."""
        if self.p <= d:
            raise CharTooSmall("characteristic %d <= working degree %d" % (self.p, d))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class RationalField:
    """Arithmetic context for Q; elements are fractions.Fraction."""

    kind = "rationals"
    char = 0
    p = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def rand(self, rng):
        return Fraction(rng.randrange(-9, 10))

    def check_char(self, d):
        """Characteristic zero: always fine."""

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


def field_of(spec):
    """Build a field from 'Q'/'0' or a prime modulus (int or decimal string)."""
    if isinstance(spec, str):
        if spec in ("Q", "q", "0"):
            return QQ
        spec = int(spec)
    if spec == 0:
        return QQ
    return PrimeField(spec)
