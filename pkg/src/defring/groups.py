"""Concrete finite groups: the metacyclic base and its abelian-kernel extension.

Groups here are stored by enumerated elements with an explicit
multiplication table (desk scale, a few thousand elements at most), not by
presentations: all the cohomology and lifting computations downstream
iterate over concrete elements.

Conventions, fixed once and cited by every other module:

* ``MetacyclicGroup`` has elements (c, s) for c mod ell, s mod q, indexed
  as c*q + s, with product (c1, s1)(c2, s2) = (c1 + u^s1 c2, s1 + s2); the
  generators are tau = (1, 0) and sigma = (0, 1) and satisfy
  sigma tau sigma^(-1) = tau^u.
* ``ExtensionGroup`` has elements (v, g) for v in K = (Z/p^n)^r and g in
  the base, indexed as v_index * |base| + g_index with v_index the base
  p^n mixed-radix value of v; the product is
  (v1, g1)(v2, g2) = (v1 + action(g1) v2, g1 g2).  Its generator list is
  the r standard basis vectors of K followed by the lifted tau and sigma.

Groups are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import BadAction, RelationViolation, TooLarge

_TABLE_LIMIT = 6000


def _mult_order(u, ell):
    if ell <= 1:
        return 1
    x = u % ell
    k = 1
    while x != 1:
        x = (x * u) % ell
        k += 1
        if k > ell:
            raise ValueError("u is not invertible mod ell")
    return k


class MetacyclicGroup:
    """G = (Z/ell) semidirect (Z/q), twisted by c -> u*c."""

    def __init__(self, ell, q, u):
        self.ell = ell
        self.q = q
        self.u = u % ell
        self.order = ell * q
        if self.order > _TABLE_LIMIT:
            raise TooLarge(f"group of order {self.order} exceeds the table limit")
        self.elements = [(c, s) for c in range(ell) for s in range(q)]
        upow = [1]
        for _ in range(q - 1):
            upow.append((upow[-1] * self.u) % ell)
        self.u_pow = upow
        self.H = upow  # image of nu, listed as u^0, u^1, ..., u^(q-1)
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        for i, (c1, s1) in enumerate(self.elements):
            us1 = upow[s1]
            for j, (c2, s2) in enumerate(self.elements):
                table[i, j] = ((c1 + us1 * c2) % ell) * q + (s1 + s2) % q
        self.mult = table
        self.identity = 0
        self.tau = 1 * q + 0
        self.sigma = 0 * q + 1
        self.generator_indices = [self.tau, self.sigma]
        self.inv = np.empty(n, dtype=np.int32)
        for i in range(n):
            self.inv[i] = int(np.nonzero(table[i] == self.identity)[0][0])

    def index(self, c, s):
        return (c % self.ell) * self.q + (s % self.q)

    def nu(self, s):
        """nu(sigma^s) = u^s mod ell."""
        return self.u_pow[s % self.q]

    def element_order(self, i):
        k, x = 1, i
        while x != self.identity:
            x = int(self.mult[x, i])
            k += 1
        return k

    def conjugacy_classes(self):
        n = self.order
        seen = [False] * n
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            cls = set()
            for g in range(n):
                j = int(self.mult[int(self.mult[g, i]), int(self.inv[g])])
                cls.add(j)
            for j in cls:
                seen[j] = True
            classes.append(sorted(cls))
        return classes

    def __repr__(self):
        return f"MetacyclicGroup(ell={self.ell}, q={self.q}, u={self.u})"


def make_metacyclic(ell, q, u):
    """Construct G = (Z/ell) semidirect (Z/q); u must have order exactly q mod ell."""
    if ell <= 1 or q <= 1:
        raise ValueError("need ell, q > 1")
    import math

    if math.gcd(u, ell) != 1:
        raise BadAction("twisting unit is not coprime to ell")
    got = _mult_order(u, ell)
    if got != q:
        raise BadAction(f"order of {u} mod {ell} is {got}, expected {q}")
    return MetacyclicGroup(ell, q, u)


class ExtensionGroup:
    """Gamma = K semidirect G for K = (Z/p^n)^r with G acting by matrices."""

    def __init__(self, base, p, n, r, action_all):
        self.base = base
        self.p = p
        self.n = n
        self.r = r
        self.pn = p**n
        self.k_size = self.pn**r
        self.order = self.k_size * base.order
        if self.order > _TABLE_LIMIT:
            raise TooLarge(f"group of order {self.order} exceeds the table limit")
        self.action = action_all  # list over base indices of r x r arrays mod p^n

        pn, K, GN = self.pn, self.k_size, base.order
        radix = pn ** np.arange(r, dtype=np.int64)
        V = np.empty((K, r), dtype=np.int64)
        tmp = np.arange(K, dtype=np.int64)
        for i in range(r):
            V[:, i] = tmp % pn
            tmp //= pn
        self._V = V
        self._radix = radix

        table = np.empty((self.order, self.order), dtype=np.int32)
        gres = base.mult.astype(np.int64)
        for g1 in range(GN):
            W = (V @ np.asarray(action_all[g1], dtype=np.int64).T) % pn  # [K, r]
            for v1 in range(K):
                vres = ((V[v1][None, :] + W) % pn) @ radix  # [K]
                block = vres[:, None] * GN + gres[g1][None, :]
                table[v1 * GN + g1] = block.reshape(-1)
        self.mult = table
        self.identity = 0
        self.generator_indices = [
            int(radix[i]) * GN for i in range(r)
        ] + [base.tau, base.sigma]
        inv = np.empty(self.order, dtype=np.int32)
        ginv = base.inv
        for g in range(GN):
            gi = int(ginv[g])
            A = np.asarray(action_all[gi], dtype=np.int64)
            W = (V @ A.T) % pn
            vres = ((-W) % pn) @ radix
            for v in range(K):
                inv[v * GN + g] = int(vres[v]) * GN + gi
        self.inv = inv

    def pi(self, i):
        """Projection to the base group."""
        return i % self.base.order

    def k_part(self, i):
        """The K component as a length-r tuple."""
        return tuple(int(x) for x in self._V[i // self.base.order])

    def index_of(self, v, g_index):
        vidx = 0
        for i in reversed(range(self.r)):
            vidx = vidx * self.pn + (v[i] % self.pn)
        return vidx * self.base.order + g_index

    def element_order(self, i):
        k, x = 1, i
        while x != self.identity:
            x = int(self.mult[x, i])
            k += 1
        return k

    def __repr__(self):
        return (
            f"ExtensionGroup(|K|={self.k_size}, base={self.base!r}, order={self.order})"
        )


def _matpow(A, e, mod):
    r = np.eye(A.shape[0], dtype=np.int64)
    B = A % mod
    while e > 0:
        if e & 1:
            r = (r @ B) % mod
        B = (B @ B) % mod
        e >>= 1
    return r


def _invertible_mod(A, p, n):
    # invertible over Z/p^n iff invertible mod p
    from .linalg import rank_fp

    A = np.asarray(A, dtype=np.int64)
    return rank_fp(A % p, p) == A.shape[0]


def make_extension(G, k_shape, action):
    """Build K semidirect G from generator action matrices.

    ``k_shape`` is (p, n, r); ``action`` maps "tau" and "sigma" to r x r
    integer matrices.  The matrices must be invertible mod p^n and satisfy
    the defining relations of G; otherwise RelationViolation names the
    failing relation.
    """
    p, n, r = k_shape
    pn = p**n
    At = np.asarray(action["tau"], dtype=np.int64) % pn
    As = np.asarray(action["sigma"], dtype=np.int64) % pn
    if At.shape != (r, r) or As.shape != (r, r):
        raise ValueError("action matrices must be r x r")
    for name, A in (("tau", At), ("sigma", As)):
        if not _invertible_mod(A, p, n):
            raise RelationViolation(f"action of {name} is not invertible mod p^n")
    eye = np.eye(r, dtype=np.int64)
    if not np.array_equal(_matpow(At, G.ell, pn), eye):
        raise RelationViolation("tau^ell != 1 on K")
    if not np.array_equal(_matpow(As, G.q, pn), eye):
        raise RelationViolation("sigma^q != 1 on K")
    lhs = (As @ At @ _matpow(As, G.q - 1, pn)) % pn
    if not np.array_equal(lhs, _matpow(At, G.u, pn)):
        raise RelationViolation("sigma tau sigma^-1 != tau^u on K")

    action_all = []
    for c, s in G.elements:
        M = (_matpow(At, c, pn) @ _matpow(As, s, pn)) % pn
        action_all.append(M)
    # the relations above force a homomorphism; verify on all base pairs anyway
    for i in range(G.order):
        for j in range(G.order):
            prod = (action_all[i] @ action_all[j]) % pn
            if not np.array_equal(prod, action_all[int(G.mult[i, j])]):
                raise RelationViolation("action fails to be a homomorphism")
    return ExtensionGroup(G, p, n, r, action_all)


def group_checks(group, seed=0):
    """Structural report: associativity, inverses, identity, order data.

    Associativity is exhaustive for order <= 200 and sampled on 10^5
    random triples (fixed seed) above that.  Isomorphism testing is not
    attempted: the order multiset is only a partial fingerprint, and the
    report says so.
    """
    n = group.order
    T = group.mult
    report = {"order": n}

    if n <= 200:
        lhs = T[T]  # [g,h,k] -> T[T[g,h],k]
        rhs = T[:, T]  # [g,h,k] -> T[g,T[h,k]]
        ok = bool(np.array_equal(lhs, rhs))
        report["associativity"] = {"mode": "exhaustive", "ok": ok}
    else:
        rng = random.Random(seed)
        triples = np.array(
            [[rng.randrange(n) for _ in range(3)] for _ in range(10**5)], dtype=np.int64
        )
        g, h, k = triples.T
        ok = bool(np.array_equal(T[T[g, h], k], T[g, T[h, k]]))
        report["associativity"] = {"mode": "sampled-100000", "ok": ok}

    ident = [e for e in range(n) if np.array_equal(T[e], np.arange(n)) and np.array_equal(T[:, e], np.arange(n))]
    report["identity_unique"] = ident == [group.identity]
    inv_ok = all(
        int(T[i, int(group.inv[i])]) == group.identity
        and int(T[int(group.inv[i]), i]) == group.identity
        for i in range(n)
    )
    report["inverses_ok"] = inv_ok

    orders = {}
    for i in range(n):
        o = group.element_order(i)
        orders[o] = orders.get(o, 0) + 1
    report["element_order_multiset"] = dict(sorted(orders.items()))
    report["abelian"] = bool(np.array_equal(T, T.T))
    report["order_multiset_is_partial_fingerprint"] = True

    if n <= 1500:
        center = [i for i in range(n) if np.array_equal(T[i], T[:, i])]
        report["center_size"] = len(center)
        if isinstance(group, ExtensionGroup):
            base = group.base
            hom_ok = all(
                group.pi(int(T[i, j])) == int(base.mult[group.pi(i), group.pi(j)])
                for i in range(n)
                for j in range(n)
            )
            kernel = [i for i in range(n) if group.pi(i) == base.identity]
            report["projection"] = {
                "homomorphism_ok": hom_ok,
                "surjective": len({group.pi(i) for i in range(n)}) == base.order,
                "kernel_size": len(kernel),
                "kernel_size_expected": group.k_size,
            }
    report["ok"] = bool(
        report["associativity"]["ok"] and report["identity_unique"] and inv_ok
    )
    return report
