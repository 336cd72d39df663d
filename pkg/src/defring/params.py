"""Parameter conditions for the twisting exponent, and the instance search.

A tuple (p, n, ell, q, u, a) is usable when three conditions hold for
H = <u> inside (Z/ell)*:

(a) (h - 1) a != 0 mod ell for every 1 != h in H (the twisted induced
    module is absolutely irreducible);
(b) exactly one ordered pair (h2, h3) in H^2 has h3 - h2 = a mod ell (the
    twist appears with multiplicity one in the endomorphism module);
(c) the residue field generated by the twisted character values equals the
    field generated by the faithful character's values.

Condition (b) is implemented with the difference convention h3 - h2 = a.
The opposite convention h2 - h3 = a appears in places; the two pair counts
always agree (negation swaps the roles of h2 and h3 bijectively), so both
pair lists are reported and the count is convention-independent.

Residue degrees are decided by Frobenius orbits on exact cyclotomic values
(cyc_frobenius fixing every value, tested with cyc_equal_in_zeta), never
by characteristic-p evaluation: distinct cyclotomic integers can collide
mod p, which would silently shrink the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import cyc_equal_in_zeta, cyc_frobenius, cyc_sum


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _subgroup(u, ell):
    H = [1]
    x = u % ell
    while x != 1:
        H.append(x)
        x = (x * u) % ell
    return H


@dataclass(frozen=True)
class ParameterTuple:
    """One candidate instance: primes and twisting data."""

    p: int
    n: int
    ell: int
    q: int
    u: int
    a: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("p must be prime")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        # ell must be prime to p (roots of unity live in characteristic p);
        # q may share factors with p: the p = 2, q = 2 family is the
        # symmetric-group example and every check downstream still applies
        if math.gcd(self.p, self.ell) != 1:
            raise ValueError("ell must be coprime to p")
        if self.a % self.ell == 0:
            raise ValueError("the twisting exponent a must be nonzero mod ell")

    @property
    def H(self):
        return _subgroup(self.u, self.ell)


@dataclass
class ConditionReport:
    passed: bool
    detail: dict


@dataclass
class HypothesisReport:
    cond_a: ConditionReport
    cond_b: ConditionReport
    cond_c: ConditionReport
    k_degree: int

    @property
    def passed(self):
        return self.cond_a.passed and self.cond_b.passed and self.cond_c.passed


def check_condition_a(t):
    """No 1 != h in H may satisfy (h - 1) a = 0 mod ell."""
    for h in t.H:
        if h != 1 and ((h - 1) * t.a) % t.ell == 0:
            return ConditionReport(False, {"failing_h": h})
    return ConditionReport(True, {"failing_h": None})


def check_condition_b(t):
    """Exactly one ordered pair (h2, h3) in H^2 with h3 - h2 = a mod ell."""
    H = t.H
    pairs = [(h2, h3) for h2 in H for h3 in H if (h3 - h2) % t.ell == t.a % t.ell]
    swapped = [(h2, h3) for h2 in H for h3 in H if (h2 - h3) % t.ell == t.a % t.ell]
    assert len(pairs) == len(swapped), "pair count must be sign-convention independent"
    return ConditionReport(
        len(pairs) == 1,
        {"pairs_h3_minus_h2": pairs, "pairs_h2_minus_h3": swapped, "count": len(pairs)},
    )


def residue_degree_of_character(ell, H, a, p):
    """Residue degree of Q_p adjoined the values sum_h zeta^(a c h), c mod ell.

    The smallest e >= 1 with frobenius^e fixing every value as an element of
    Z[zeta_ell]; e divides the multiplicative order of p mod ell, which
    bounds the loop.
    """
    if math.gcd(p, ell) != 1:
        raise ValueError("p must be coprime to ell")
    values = [cyc_sum(ell, [(a * c * h) % ell for h in H]) for c in range(ell)]
    bound = 1
    x = p % ell
    while x != 1:
        x = (x * p) % ell
        bound += 1
    current = values
    for e in range(1, bound + 1):
        current = [cyc_frobenius(v, p) for v in current]
        if all(cyc_equal_in_zeta(cv, v) for cv, v in zip(current, values)):
            return e
    raise AssertionError("frobenius order must divide ord_ell(p)")  # unreachable


def check_condition_c(t):
    """The twisted character field must equal the full character field."""
    d_a = residue_degree_of_character(t.ell, t.H, t.a, t.p)
    d_1 = residue_degree_of_character(t.ell, t.H, 1, t.p)
    assert d_1 % d_a == 0, "twisted field must embed in the full character field"
    return ConditionReport(d_a == d_1, {"theta_degree": d_1, "theta_a_degree": d_a})


def check_hypothesis(t):
    ca = check_condition_a(t)
    cb = check_condition_b(t)
    cc = check_condition_c(t)
    return HypothesisReport(ca, cb, cc, cc.detail["theta_degree"])


def _units_of_order(ell, q):
    out = []
    for u in range(2, ell):
        if math.gcd(u, ell) != 1:
            continue
        x, k = u, 1
        while x != 1:
            x = (x * u) % ell
            k += 1
        if k == q:
            out.append(u)
    return out


def search(p, n, max_ell, max_q):
    """Exhaustive scan for passing tuples with ell <= max_ell, q <= max_q.

    Deterministic order: ell, then q, then u, then a, ascending.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    found = []
    for ell in range(2, max_ell + 1):
        if ell % p == 0:
            continue
        for q in range(2, max_q + 1):
            for u in _units_of_order(ell, q):
                for a in range(1, ell):
                    t = ParameterTuple(p, n, ell, q, u, a)
                    rep = check_hypothesis(t)
                    if rep.passed:
                        found.append((t, rep))
    return found
