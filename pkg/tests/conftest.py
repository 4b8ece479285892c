from __future__ import annotations

import math

import pytest

from glbounds.cyclotomic import Conductor
from glbounds.ledger import paper_ledger


@pytest.fixture(scope="session")
def ledger():
    return paper_ledger()


def member_by_cosines(m: int, n: Conductor) -> bool:
    """Numeric Galois-orbit oracle for z_m + 1/z_m lying in Q(z_n).

    An automorphism of the compositum fixing Q(z_n) sends the element to
    2cos(2*pi*a/m); cosine distinguishes residues a != +-1 (mod m), and
    for m <= 64 distinct values differ by far more than float noise.
    """
    if m in (1, 2, 3, 4, 6):
        return True
    base = n.value
    big = math.lcm(base, m)
    target = math.cos(2 * math.pi / m)
    for a in range(1, big, base):
        if math.gcd(a, big) != 1:
            continue
        if abs(math.cos(2 * math.pi * a / m) - target) > 1e-9:
            return False
    return True
