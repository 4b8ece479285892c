"""Euler's totient and its exact inversion.

invphi_max(B) is the largest n with phi(n) <= B.  It exists because
phi(n) >= sqrt(n/2), so the scan below the cutoff 2*B**2 is exhaustive.
"""

from __future__ import annotations

from .exactnum import DomainError, factorize


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("phi is defined for positive integers, got %r" % n)
    out = 1
    for p, e in factorize(n).items():
        out *= p ** (e - 1) * (p - 1)
    return out


def invphi_all(bound: int) -> list[int]:
    """All n with phi(n) <= bound, ascending.  Includes 1."""
    if bound < 1:
        raise DomainError("bound must be >= 1, got %r" % bound)
    cutoff = 2 * bound * bound
    return [n for n in range(1, cutoff + 1) if euler_phi(n) <= bound]


def invphi_max(bound: int) -> int:
    if bound < 1:
        raise DomainError("bound must be >= 1, got %r" % bound)
    cutoff = 2 * bound * bound
    best = 1
    for n in range(1, cutoff + 1):
        if euler_phi(n) <= bound:
            best = n
    return best


def semicyclic_degree(n: int) -> int:
    """Degree of the real subfield Q(z_n + 1/z_n) over Q, i.e. phi(n)/2.

    Only defined for n > 2; below that the subfield is Q itself and the
    half does not make sense.
    """
    if n <= 2:
        raise DomainError("semicyclic degree needs n > 2, got %r" % n)
    phi = euler_phi(n)
    assert phi % 2 == 0
    return phi // 2
