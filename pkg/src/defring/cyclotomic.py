"""Exact sums of roots of unity as elements of Z[x]/(x^ell - 1).

A ``CyclotomicSum`` stores ell integer coefficients; coefficient j counts
(with multiplicity, possibly negative) the root-of-unity power zeta^j.  Two
sums represent the same element of Z[zeta_ell] exactly when their
difference is divisible by the ell-th cyclotomic polynomial, and that is
decided by exact integer polynomial division: no root of unity is ever
evaluated numerically.  Distinct cyclotomic integers can collide after
reduction mod p, so character-field computations must stay at this exact
level.

Phi_ell is computed by the recursion Phi_ell = (x^ell - 1) / prod of the
Phi_d over proper divisors d, again with exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BadModulus, ModulusMismatch


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _poly_divmod_exact(num, den):
    """Quotient and remainder of integer polynomials; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - dd] = c
        for j in range(dd + 1):
            num[i - dd + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficient tuple of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        q, r = _poly_divmod_exact(num, cyclotomic_polynomial(d))
        assert not r, "cyclotomic recursion must divide exactly"
        num = q
    return tuple(num)


@dataclass(frozen=True)
class CyclotomicSum:
    """An element of Z[x]/(x^ell - 1), usually a sum of ell-th roots of unity."""

    ell: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ell:
            raise ValueError("need exactly ell coefficients")

    @classmethod
    def zero(cls, ell):
        return cls(ell, (0,) * ell)

    @classmethod
    def constant(cls, ell, c):
        return cls(ell, (c,) + (0,) * (ell - 1))

    def _same(self, other):
        if self.ell != other.ell:
            raise ModulusMismatch("cyclotomic sums over different moduli")

    def __add__(self, other):
        self._same(other)
        return CyclotomicSum(self.ell, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return CyclotomicSum(self.ell, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicSum(self.ell, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._same(other)
        ell = self.ell
        out = [0] * ell
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % ell] += a * b
        return CyclotomicSum(ell, tuple(out))

    def conjugate_by_exponent_negation(self):
        """x^j -> x^(-j); realises complex conjugation on sums of roots."""
        ell = self.ell
        out = [0] * ell
        for j, c in enumerate(self.coeffs):
            out[(-j) % ell] += c
        return CyclotomicSum(ell, tuple(out))


def cyc_sum(ell, exponents):
    """The sum of x^e over the exponent multiset (taken mod ell)."""
    coeffs = [0] * ell
    for e in exponents:
        coeffs[e % ell] += 1
    return CyclotomicSum(ell, tuple(coeffs))


def cyc_equal_in_zeta(u, v):
    """Equality as elements of Z[zeta_ell]: Phi_ell divides u - v exactly."""
    if u.ell != v.ell:
        raise ModulusMismatch("cyclotomic sums over different moduli")
    diff = [a - b for a, b in zip(u.coeffs, v.coeffs)]
    while diff and diff[-1] == 0:
        diff.pop()
    if not diff:
        return True
    _, r = _poly_divmod_exact(diff, cyclotomic_polynomial(u.ell))
    return not r


def cyc_frobenius(u, p):
    """Coefficient at exponent j moves to exponent p*j mod ell (zeta -> zeta^p)."""
    if u.ell % p == 0:
        raise BadModulus("frobenius prime divides the modulus")
    out = [0] * u.ell
    for j, c in enumerate(u.coeffs):
        out[(p * j) % u.ell] += c
    return CyclotomicSum(u.ell, tuple(out))
