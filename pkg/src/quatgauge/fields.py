"""Exact base coefficient fields: the rationals and odd prime fields.

Rational elements are `fractions.Fraction`; prime-field elements are plain
ints in [0, p).  Field objects supply the operations the polynomial and
scalar layers need, including square decisions and canonical square-class
representatives (squarefree integers over Q, {1, r} with r the least
non-residue over F_p).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DomainError, FactorBoundError

DEFAULT_FACTOR_BOUND = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
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


def squarefree_part(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Largest squarefree divisor of n (with sign), by trial division.

    Raises FactorBoundError when the unfactored cofactor cannot be
    certified squarefree with primes up to `bound`.
    """
    if n == 0:
        raise DomainError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for d in range(2, bound + 1):
        if d * d > n:
            break
        if n % d:
            continue
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
    if n > 1:
        # no prime factor <= bound remains below sqrt; n is prime, a prime
        # square, or too large to certify
        r = isqrt(n)
        if r * r == n:
            if not (r <= bound or is_prime(r)):
                raise FactorBoundError(f"cannot certify squarefree part of {n}")
        elif n <= bound * bound or is_prime(n):
            out *= n
        else:
            raise FactorBoundError(f"cannot certify squarefree part of {n}")
    return sign * out


def fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None."""
    if x < 0:
        return None
    pn, qn = x.numerator, x.denominator
    rp, rq = isqrt(pn), isqrt(qn)
    if rp * rp == pn and rq * rq == qn:
        return Fraction(rp, rq)
    return None


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mod_sqrt(a: int, p: int) -> int | None:
    """Square root mod odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2i = 0, t
        while t2i != 1:
            t2i = t2i * t2i % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r, c, t, m = r * b % p, b * b % p, t * b * b % p, i
    return r


class Rationals:
    """The field Q.  Elements are Fractions."""

    variant = "rational"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, v) -> Fraction:
        return Fraction(v)

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
            raise DomainError("division by zero")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_square(self, a) -> bool:
        if a == 0:
            raise DomainError("square test on 0")
        return fraction_sqrt(Fraction(a)) is not None

    def sqrt(self, a):
        return fraction_sqrt(Fraction(a))

    def square_class_rep(self, a, bound: int = DEFAULT_FACTOR_BOUND) -> Fraction:
        """Squarefree integer representing a mod squares (p/q ~ p*q)."""
        a = Fraction(a)
        if a == 0:
            raise DomainError("square class of 0")
        return Fraction(squarefree_part(a.numerator * a.denominator, bound))

    def fmt(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class PrimeField:
    """The field F_p for an odd prime p.  Elements are ints in [0, p)."""

    variant = "prime"

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise DomainError(f"{p} is not an odd prime")
        self.p = p
        self._nonresidue = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def coerce(self, v) -> int:
        if isinstance(v, Fraction):
            return self.div(self.from_int(v.numerator), self.from_int(v.denominator))
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DomainError("division by zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def is_square(self, a) -> bool:
        if a % self.p == 0:
            raise DomainError("square test on 0")
        return legendre(a, self.p) == 1

    def sqrt(self, a):
        return mod_sqrt(a, self.p)

    def square_class_rep(self, a, bound: int = DEFAULT_FACTOR_BOUND) -> int:
        if a % self.p == 0:
            raise DomainError("square class of 0")
        if self.is_square(a):
            return 1
        if self._nonresidue is None:
            r = 2
            while legendre(r, self.p) != -1:
                r += 1
            self._nonresidue = r
        return self._nonresidue

    def fmt(self, a) -> str:
        return str(a % self.p)


QQ = Rationals()
