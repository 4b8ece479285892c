"""Exact arithmetic on positive integers kept in factored form.

Every bound in this package is a product of explicit prime powers, often far
beyond 2**63, so values are carried as maps prime -> exponent and only
expanded to decimal for display.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class NonDivisible(ValueError):
    """Exact division was requested but the divisor does not divide."""


# Primes below 100 are enough to factor every cofactor that actually shows up
# (the largest prime in any shipped value is 43); is_prime falls back to trial
# division for anything bigger.
_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    # trial division; values handled here are < 10**8 so this is cheap
    d = 101
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Factor a positive integer by trial division."""
    if n < 1:
        raise DomainError("can only factor positive integers, got %r" % n)
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 101
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer as a sorted tuple of (prime, exponent) pairs.

    The empty tuple is 1.  Construction validates primality of every base
    and positivity of every exponent, so a value that exists is well formed.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 0
        for p, e in self.factors:
            if not is_prime(p):
                raise DomainError("base %r is not prime" % p)
            if e < 1:
                raise DomainError("exponent for %d must be >= 1, got %r" % (p, e))
            if p <= last:
                raise DomainError("factors must be strictly increasing by prime")
            last = p

    @classmethod
    def from_map(cls, factors: dict[int, int]) -> "FactoredInteger":
        """Build from a prime -> exponent map, dropping zero exponents."""
        return cls(tuple(sorted((p, e) for p, e in factors.items() if e != 0)))

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        return cls.from_map(factorize(n))

    def as_map(self) -> dict[int, int]:
        return dict(self.factors)

    def to_int(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def __int__(self) -> int:
        return self.to_int()

    def __str__(self) -> str:
        return fi_to_decimal(self)

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        return fi_mul(self, other)

    def __lt__(self, other: "FactoredInteger") -> bool:
        return fi_cmp(self, other) < 0

    def __le__(self, other: "FactoredInteger") -> bool:
        return fi_cmp(self, other) <= 0


ONE = FactoredInteger(())


def fi_mul(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    m = a.as_map()
    for p, e in b.factors:
        m[p] = m.get(p, 0) + e
    return FactoredInteger.from_map(m)


def fi_div_exact(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    """a / b when b divides a exactly, else NonDivisible."""
    m = a.as_map()
    for p, e in b.factors:
        r = m.get(p, 0) - e
        if r < 0:
            raise NonDivisible("%s does not divide %s" % (b, a))
        m[p] = r
    return FactoredInteger.from_map(m)


def fi_cmp(a: FactoredInteger, b: FactoredInteger) -> int:
    """-1, 0 or 1 as a <, =, > b.

    Common prime powers are cancelled first and the residuals compared after
    exact expansion, so the answer never depends on a rounded logarithm.
    """
    ma, mb = a.as_map(), b.as_map()
    for p in set(ma) & set(mb):
        c = min(ma[p], mb[p])
        ma[p] -= c
        mb[p] -= c
    ra = FactoredInteger.from_map(ma).to_int()
    rb = FactoredInteger.from_map(mb).to_int()
    return (ra > rb) - (ra < rb)


def fi_to_decimal(a: FactoredInteger, group: bool = False) -> str:
    """Decimal rendering; group=True inserts spaces in groups of three.

    grouped:  24 103 053 950 976 000
    plain:    24103053950976000
    """
    s = str(a.to_int())
    if not group:
        return s
    chunks = []
    while len(s) > 3:
        chunks.append(s[-3:])
        s = s[:-3]
    chunks.append(s)
    return " ".join(reversed(chunks))


def fi_to_factored_str(a: FactoredInteger) -> str:
    """Power-product rendering, e.g. 2^7 * 3^2 * 5; the empty product is 1."""
    if not a.factors:
        return "1"
    parts = []
    for p, e in a.factors:
        parts.append(str(p) if e == 1 else "%d^%d" % (p, e))
    return " * ".join(parts)


def valuation(p: int, a: FactoredInteger) -> int:
    """Exponent of the prime p in a."""
    if not is_prime(p):
        raise DomainError("%r is not prime" % p)
    return a.as_map().get(p, 0)


def valuation_int(p: int, n: int) -> int:
    """Exponent of p in a plain positive integer."""
    if not is_prime(p):
        raise DomainError("%r is not prime" % p)
    if n < 1:
        raise DomainError("valuation of a non-positive integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(p: int, k: int) -> int:
    """v_p(k!) by Legendre: sum of floor(k / p^i)."""
    if not is_prime(p):
        raise DomainError("%r is not prime" % p)
    if k < 0:
        raise DomainError("factorial of a negative integer")
    total = 0
    q = p
    while q <= k:
        total += k // q
        q *= p
    return total
