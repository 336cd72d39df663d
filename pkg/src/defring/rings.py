"""Exact arithmetic in Galois rings GR(p^m, d) and their residue fields.

GR(p^m, d) is the unique unramified extension of Z/p^m with residue field
F_{p^d}; it is realised here as (Z/p^m)[X]/(g) for the lexicographically
first monic degree-d integer polynomial g that is irreducible mod p.  Ring
element *values* are d-tuples of integers in [0, p^m): the coefficients of
the polynomial-basis form a_0 + a_1 X + ... + a_{d-1} X^{d-1}.

Residue-field elements are packed integers in [0, p^d): the integer
sum(c_i * p^i) encodes the coset of sum(c_i * X^i).

Every ring element has a second, canonical description as a tuple of m
Teichmueller digits: e = sum(p^i * w(x_i)) with x_i in F_{p^d} and w the
Teichmueller lift (the unique lift with w(x)^(p^d) = w(x)).  The digit view
makes Frobenius and subring coercion digit-local; the polynomial view is
what matrix arithmetic uses.  ``GaloisRing.digits`` / ``from_digits``
convert between them, and the conversion round-trips on every element.

All values are immutable tuples; ring objects carry only caches that are
filled deterministically, so everything here is safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotInSubring

# ---------------------------------------------------------------------------
# polynomial helpers: coefficient tuples, ascending degree, coefficients mod N
# ---------------------------------------------------------------------------


def _trim(f):
    i = len(f)
    while i > 0 and f[i - 1] == 0:
        i -= 1
    return f[:i]


def _poly_mod(f, g, N):
    """Remainder of f modulo the *monic* polynomial g, coefficients mod N."""
    f = [c % N for c in f]
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c == 0:
            continue
        f[i] = 0
        for j in range(dg):
            f[i - dg + j] = (f[i - dg + j] - c * g[j]) % N
    return f[:dg] + [0] * (dg - len(f[:dg]))


def _poly_mulmod(a, b, g, N):
    prod = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % N
    return _poly_mod(prod, g, N)


def _poly_powmod(a, e, g, N):
    result = [1] + [0] * (len(g) - 2)
    base = _poly_mod(list(a), g, N)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, g, N)
        base = _poly_mulmod(base, base, g, N)
        e >>= 1
    return result


def _poly_gcd_fp(f, g, p):
    """Monic gcd over F_p."""
    f, g = list(_trim(f)), list(_trim(g))
    while g:
        inv = pow(g[-1], p - 2, p)
        monic = [(c * inv) % p for c in g]
        f = [c % p for c in f]
        dg = len(monic) - 1
        for i in range(len(f) - 1, dg - 1, -1):
            c = f[i]
            if c == 0:
                continue
            f[i] = 0
            for j in range(dg):
                f[i - dg + j] = (f[i - dg + j] - c * monic[j]) % p
        f = list(_trim(f[:dg] if dg > 0 else []))
        f, g = g, f
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return [(c * inv) % p for c in f]


def _is_irreducible_fp(g, p):
    """Is the monic polynomial g irreducible over F_p?  Uses x^(p^(d/r)) tests."""
    d = len(g) - 1
    if d < 1:
        return False
    x = [0, 1]
    xq = _poly_powmod(x, p**d, g, p)
    if _trim([(a - b) % p for a, b in zip(xq, x + [0] * d)]):
        return False
    for r in _prime_factors(d):
        xe = _poly_powmod(x, p ** (d // r), g, p)
        diff = list(_trim([(a - b) % p for a, b in zip(xe, x + [0] * d)]))
        if len(_poly_gcd_fp(diff, list(g), p)) > 1:
            return False
    return True


def _prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _canonical_irreducible(p, d):
    """Lexicographically first monic irreducible of degree d over F_p.

    Low-order coefficients are enumerated as the base-p digits of an
    ascending counter, so the choice is deterministic.
    """
    if d == 1:
        return (0, 1)
    for packed in range(p**d):
        low, x = [], packed
        for _ in range(d):
            x, r = divmod(x, p)
            low.append(r)
        g = tuple(low) + (1,)
        if _is_irreducible_fp(g, p):
            return g
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# residue fields F_{p^d}
# ---------------------------------------------------------------------------


class FiniteField:
    """F_{p^d} = F_p[X]/(g) with elements packed as integers sum(c_i p^i)."""

    def __init__(self, p, d, poly=None):
        self.p = p
        self.d = d
        self.size = p**d
        self.poly = tuple(poly) if poly is not None else _canonical_irreducible(p, d)
        if len(self.poly) != d + 1 or self.poly[d] % p != 1:
            raise ValueError("defining polynomial must be monic of degree d")
        if not _is_irreducible_fp(tuple(c % p for c in self.poly), p):
            raise ValueError("defining polynomial is not irreducible mod p")
        self._gen = None

    def unpack(self, x):
        out, v = [], x
        for _ in range(self.d):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def pack(self, coeffs):
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + (c % self.p)
        return out

    def add(self, x, y):
        xs, ys = self.unpack(x), self.unpack(y)
        return self.pack((a + b) % self.p for a, b in zip(xs, ys))

    def sub(self, x, y):
        xs, ys = self.unpack(x), self.unpack(y)
        return self.pack((a - b) % self.p for a, b in zip(xs, ys))

    def neg(self, x):
        return self.pack(-a % self.p for a in self.unpack(x))

    def mul(self, x, y):
        prod = _poly_mulmod(self.unpack(x), self.unpack(y), self.poly, self.p)
        return self.pack(prod)

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        return self.pack(_poly_powmod(self.unpack(x), e, self.poly, self.p))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in finite field")
        return self.pow(x, self.size - 2)

    def frobenius(self, x):
        return self.pow(x, self.p)

    def elements(self):
        return range(self.size)

    def multiplicative_generator(self):
        """Smallest packed element generating the unit group."""
        if self._gen is None:
            n = self.size - 1
            primes = _prime_factors(n)
            for x in range(1, self.size):
                if all(self.pow(x, n // r) != 1 for r in primes):
                    self._gen = x
                    break
        return self._gen

    def __repr__(self):
        return f"FiniteField({self.p}, {self.d})"


# ---------------------------------------------------------------------------
# Galois rings GR(p^m, d)
# ---------------------------------------------------------------------------


class GaloisRing:
    """GR(p^m, d) = W(F_{p^d})/p^m; values are d-tuples of ints in [0, p^m).

    Plays the role of the ring descriptor: the attributes ``p``, ``m``,
    ``d`` and ``defining_poly`` pin the ring down, and instances with equal
    descriptors are interchangeable.
    """

    def __init__(self, p, m, d=1, poly=None):
        if m < 1 or d < 1:
            raise ValueError("need m >= 1 and d >= 1")
        self.p = p
        self.m = m
        self.d = d
        self.pm = p**m
        self.field = FiniteField(p, d, poly)
        self.defining_poly = tuple(c % p for c in self.field.poly)
        self.size = self.pm**d
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        self._teich = {0: self.zero}

    # -- basic arithmetic ---------------------------------------------------

    def add(self, a, b):
        pm = self.pm
        return tuple((x + y) % pm for x, y in zip(a, b))

    def sub(self, a, b):
        pm = self.pm
        return tuple((x - y) % pm for x, y in zip(a, b))

    def neg(self, a):
        pm = self.pm
        return tuple(-x % pm for x in a)

    def mul(self, a, b):
        if self.d == 1:
            return ((a[0] * b[0]) % self.pm,)
        return tuple(_poly_mulmod(list(a), list(b), self.defining_poly, self.pm))

    def int_mul(self, k, a):
        pm = self.pm
        return tuple((k * x) % pm for x in a)

    def pow(self, a, e):
        result = self.one
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, k):
        return (k % self.pm,) + (0,) * (self.d - 1)

    # -- residue field, units, valuations ------------------------------------

    def residue(self, a):
        """Image in F_{p^d} (packed)."""
        return self.field.pack(c % self.p for c in a)

    def lift_field(self, x):
        """The coefficient-wise lift of a residue-field element (not Teichmueller)."""
        return tuple(self.field.unpack(x))

    def is_unit(self, a):
        return self.residue(a) != 0

    def valuation(self, a):
        """Largest v <= m with a in p^v GR (so valuation(0) = m)."""
        v = self.m
        for c in a:
            if c == 0:
                continue
            w = 0
            while c % self.p == 0:
                c //= self.p
                w += 1
            v = min(v, w)
        return v

    def unit_inv(self, a):
        """Inverse of a unit, by Hensel lifting the residue-field inverse."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in the Galois ring")
        y = self.lift_field(self.field.inv(self.residue(a)))
        two = self.from_int(2)
        prec = 1
        while prec < self.m:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            prec *= 2
        return y

    def mod_pv(self, a, v):
        """Canonical representative of a modulo p^v GR."""
        pv = self.p**v
        return tuple(c % pv for c in a)

    def divide_by_p(self, a, j=1):
        """Exact division by p^j; the result is canonical modulo p^(m-j)."""
        pj = self.p**j
        if any(c % pj for c in a):
            raise ValueError("element not divisible by p^j")
        return tuple((c // pj) % self.pm for c in a)

    # -- Teichmueller digits --------------------------------------------------

    def teichmuller(self, x):
        """The unique lift w(x) of the residue element x with w(x)^(p^d) = w(x)."""
        w = self._teich.get(x)
        if w is None:
            w = self.lift_field(x)
            q = self.p**self.d
            for _ in range(self.m - 1):
                w = self.pow(w, q)
            self._teich[x] = w
        return w

    def digits(self, a):
        """Teichmueller digits (x_0, ..., x_{m-1}) with a = sum p^i w(x_i)."""
        out = []
        rest = a
        for i in range(self.m):
            x = self.field.pack(c % self.p for c in rest)
            out.append(x)
            rest = self.sub(rest, self.teichmuller(x))
            rest = tuple((c // self.p) % self.pm for c in rest)
        return tuple(out)

    def from_digits(self, digits):
        acc = self.zero
        for i, x in enumerate(digits):
            acc = self.add(acc, self.int_mul(self.p**i, self.teichmuller(x)))
        return acc

    def frobenius(self, a):
        """The ring automorphism acting on each Teichmueller digit by x -> x^p."""
        return self.from_digits(tuple(self.field.frobenius(x) for x in self.digits(a)))

    # -- enumeration ----------------------------------------------------------

    def elements(self):
        def rec(i):
            if i == self.d:
                yield ()
                return
            for rest in rec(i + 1):
                for c in range(self.pm):
                    yield (c,) + rest

        return rec(0)

    def __repr__(self):
        return f"GaloisRing({self.p}, {self.m}, {self.d})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisRing)
            and (self.p, self.m, self.d, self.defining_poly)
            == (other.p, other.m, other.d, other.defining_poly)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.d, self.defining_poly))


@lru_cache(maxsize=None)
def ring(p, m, d=1):
    """Cached constructor for the canonical GR(p^m, d)."""
    return GaloisRing(p, m, d)


# ---------------------------------------------------------------------------
# subfield embeddings and subring coercion
# ---------------------------------------------------------------------------


class _Embedding:
    """The fixed embedding F_{p^d0} -> F_{p^d} via the first root of the
    small defining polynomial, together with its partial inverse."""

    def __init__(self, p, d0, d):
        if d % d0 != 0:
            raise ValueError("subfield degree must divide the big degree")
        self.small = FiniteField(p, d0)
        self.big = FiniteField(p, d)
        beta = None
        for x in range(self.big.size):
            acc, xp = 0, self.big.pack([1])
            for c in self.small.poly:
                if c % p:
                    acc = self.big.add(acc, self.big.mul(self.big.pack([c % p]), xp))
                xp = self.big.mul(xp, x)
            if acc == 0:
                beta = x
                break
        assert beta is not None, "subfield root must exist when d0 | d"
        self.beta_powers = [self.big.pack([1])]
        for _ in range(d0 - 1):
            self.beta_powers.append(self.big.mul(self.beta_powers[-1], beta))
        # column-reduced basis matrix for inverting the embedding over F_p
        self._cols = [self.big.unpack(bp) for bp in self.beta_powers]

    def forward(self, x):
        out = 0
        for c, bp in zip(self.small.unpack(x), self.beta_powers):
            if c:
                out = self.big.add(out, self.big.mul(self.big.pack([c]), bp))
        return out

    def backward(self, y):
        """Preimage in the small field, or None if y is outside the image."""
        p = self.big.p
        rows = [list(col) for col in self._cols]  # d0 rows of length d
        target = self.big.unpack(y)
        # solve sum c_i * cols[i] = target over F_p by Gaussian elimination
        ncols = len(rows)
        aug = [[rows[i][j] for i in range(ncols)] + [target[j]] for j in range(self.big.d)]
        piv = []
        r = 0
        for c in range(ncols):
            sel = next((i for i in range(r, len(aug)) if aug[i][c] % p), None)
            if sel is None:
                continue
            aug[r], aug[sel] = aug[sel], aug[r]
            inv = pow(aug[r][c], p - 2, p)
            aug[r] = [(v * inv) % p for v in aug[r]]
            for i in range(len(aug)):
                if i != r and aug[i][c] % p:
                    f = aug[i][c]
                    aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[r])]
            piv.append(c)
            r += 1
        sol = [0] * ncols
        for i, c in enumerate(piv):
            sol[c] = aug[i][-1]
        for i in range(r, len(aug)):
            if aug[i][-1] % p:
                return None
        return self.small.pack(sol)


@lru_cache(maxsize=None)
def _embedding(p, d0, d):
    return _Embedding(p, d0, d)


# ---------------------------------------------------------------------------
# element wrapper and the public operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaloisRingElement:
    """A Galois ring element: the ring descriptor plus the value tuple.

    Equality requires matching rings.  ``digits`` gives the Teichmueller
    digit decomposition, ``value`` the polynomial-basis coefficients.
    """

    ring: GaloisRing
    value: tuple

    @property
    def digits(self):
        return self.ring.digits(self.value)

    def __add__(self, other):
        self._check(other)
        return GaloisRingElement(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return GaloisRingElement(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return GaloisRingElement(self.ring, self.ring.mul(self.value, other.value))

    def __pow__(self, e):
        return GaloisRingElement(self.ring, self.ring.pow(self.value, e))

    def is_unit(self):
        return self.ring.is_unit(self.value)

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("elements live in different rings")


def teichmuller_lift(ring_, x):
    """The Teichmueller lift of the residue-field element x into GR(p^m, d)."""
    return GaloisRingElement(ring_, ring_.teichmuller(x))


def frobenius(e):
    """Digit-wise Frobenius x_i -> x_i^p; a ring automorphism of order d."""
    return GaloisRingElement(e.ring, e.ring.frobenius(e.value))


def coerce_to_subring(e, d0):
    """Re-express e in GR(p^m, d0) for d0 | d, via the fixed subfield embedding.

    Raises NotInSubring unless frobenius^d0 fixes e.
    """
    R = e.ring
    if R.d % d0 != 0:
        raise ValueError("d0 must divide the residue degree")
    v = e.value
    for _ in range(d0):
        v = R.frobenius(v)
    if v != e.value:
        raise NotInSubring(f"element is not fixed by frobenius^{d0}")
    emb = _embedding(R.p, d0, R.d)
    small = ring(R.p, R.m, d0)
    new_digits = []
    for x in e.digits:
        y = emb.backward(x)
        if y is None:
            raise NotInSubring("digit outside the subfield image")
        new_digits.append(y)
    return GaloisRingElement(small, small.from_digits(tuple(new_digits)))


def embed_to_extension(e, big):
    """Embed e in a larger ring GR(p^m, D) with the same p, m and d | D."""
    R = e.ring
    if big.p != R.p or big.m != R.m or big.d % R.d != 0:
        raise ValueError("target must be an unramified extension at equal precision")
    emb = _embedding(R.p, R.d, big.d)
    return GaloisRingElement(big, big.from_digits(tuple(emb.forward(x) for x in e.digits)))
