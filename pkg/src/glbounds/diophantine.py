"""Enumeration of the invariant equation p^(m-1) * (p-1) * e = d * t.

Every appendix-style case split reduces to: which triples (m, e, t) can the
invariants of a degree-d field take at the prime p, subject to side
constraints read off from gcd and parity lemmas.  Solutions feed straight
into schur_exponent; an empty solution list is meaningful and yields
exponent 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import schur_exponent
from .cyclotomic import CycloInvariants
from .exactnum import DomainError, is_prime


@dataclass(frozen=True)
class EquationSolution:
    m: int
    e: int
    t: int


@dataclass(frozen=True)
class SolutionConstraints:
    """Side conditions for the enumeration.

    e_min: lower bound for e (default 1, i.e. no constraint).
    t_max: upper bound for t; None means "decided by the caller"
           (max_schur_exponent substitutes the matrix size n).
    extra: tags, each one of
             "e = K"   e equals the constant K
             "e even" / "e odd"
             "m = K"   m equals K
             "t >= K"  t at least K
    """

    e_min: int = 1
    t_max: int | None = None
    extra: tuple[str, ...] = ()

    def __post_init__(self):
        if self.e_min < 1:
            raise DomainError("e_min must be >= 1, got %r" % self.e_min)
        if self.t_max is not None and self.t_max < 1:
            raise DomainError("t_max must be >= 1, got %r" % self.t_max)
        for tag in self.extra:
            _parse_tag(tag)  # validate eagerly


def _parse_tag(tag: str):
    """Turn a constraint tag into a predicate on EquationSolution."""
    words = tag.split()
    if words == ["e", "even"]:
        return lambda s: s.e % 2 == 0
    if words == ["e", "odd"]:
        return lambda s: s.e % 2 == 1
    if len(words) == 3 and words[0] == "e" and words[1] == "=":
        k = int(words[2])
        return lambda s: s.e == k
    if len(words) == 3 and words[0] == "m" and words[1] == "=":
        k = int(words[2])
        return lambda s: s.m == k
    if len(words) == 3 and words[0] == "t" and words[1] == ">=":
        k = int(words[2])
        return lambda s: s.t >= k
    raise DomainError("unknown constraint tag %r" % tag)


def solve_standard_equation(p: int, d: int, c: SolutionConstraints) -> list[EquationSolution]:
    """All (m, e, t) with p^(m-1)(p-1)e = dt meeting the constraints.

    Ordered by t then m.  Requires a concrete t_max.
    """
    if not is_prime(p):
        raise DomainError("%r is not prime" % p)
    if d < 1:
        raise DomainError("degree d must be >= 1, got %r" % d)
    if c.t_max is None:
        raise DomainError("solve_standard_equation needs a concrete t_max")
    preds = [_parse_tag(tag) for tag in c.extra]
    out = []
    for t in range(1, c.t_max + 1):
        rhs = d * t
        m = 1
        lhs = p - 1  # p^(m-1) * (p-1)
        while lhs <= rhs:
            if rhs % lhs == 0:
                sol = EquationSolution(m=m, e=rhs // lhs, t=t)
                if sol.e >= c.e_min and all(pred(sol) for pred in preds):
                    out.append(sol)
            m += 1
            lhs *= p
    return out


def max_schur_exponent(
    p: int,
    n: int,
    d: int,
    c: SolutionConstraints | None = None,
    xi4: str = "unknown",
) -> int:
    """Largest schur_exponent(n, p, .) over all admissible (m, e, t).

    Odd p only; the p = 2 analysis never goes through this equation.  A
    missing t_max defaults to n since t > n forces exponent 0 anyway.
    The xi4 flag is accepted for symmetry with the field API but does not
    influence odd-p exponents.
    """
    if not is_prime(p) or p == 2:
        raise DomainError("p must be an odd prime, got %r" % p)
    if c is None:
        c = SolutionConstraints(t_max=n)
    elif c.t_max is None:
        c = SolutionConstraints(e_min=c.e_min, t_max=n, extra=c.extra)
    best = 0
    for sol in solve_standard_equation(p, d, c):
        inv = CycloInvariants(p=p, t_p=sol.t, m_p=sol.m, e_p=sol.e, xi4_in_k=(xi4 == "yes"))
        best = max(best, schur_exponent(n, p, inv))
    return best


def brute_solutions(p: int, d: int, m_max: int, e_max: int, t_max: int) -> list[EquationSolution]:
    """Reference enumeration by exhaustive triple loop, for cross-checks."""
    out = []
    for t in range(1, t_max + 1):
        for m in range(1, m_max + 1):
            for e in range(1, e_max + 1):
                if p ** (m - 1) * (p - 1) * e == d * t:
                    out.append(EquationSolution(m=m, e=e, t=t))
    return out
