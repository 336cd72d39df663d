"""Degree-one and degree-two cohomology of finite groups on mod-p modules.

Cocycle computations use generator propagation rather than dense
group-indexed linear systems: a 1-cochain is determined by its values on a
generating set, values elsewhere follow by c(g s) = c(g) + g c(s) [- o(g, s)]
along a breadth-first Cayley spanning tree, and every non-tree edge yields
a linear consistency constraint over F_p.  That reduces the unknown count
from |group| * D to |generators| * D.  Solvability of the edge-restricted
system is equivalent to genuine coboundary solvability by induction on
word length, *given* the 2-cocycle identity: with dc = o on all pairs
(g, s) for generators s,

    dc(g, hs) = dc(g, h) - g o(h, s) + o(gh, s)
              = o(g, h) + o(gh, s) - g o(h, s) = o(g, hs).

The identity is therefore checked on the generator-restricted triple
family (g, h, s) (exhaustively on all triples for groups of order <= 300,
plus a 10^5 random-triple sample above that), and every returned witness
cochain is additionally validated against all |group|^2 pairs.

All module values are F_p vectors; dimensions over a residue field of
degree d are obtained by dividing by d with a divisibility assertion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import (
    KernelViolation,
    ModuleNotInflated,
    NotALift,
    NotGenerating,
)
from .linalg import nullspace_fp, rank_fp, rref_fp, solve_fp


@dataclass
class ActionModule:
    """An F_p vector space with a group acting by invertible matrices.

    ``action`` is an integer array [order, D, D]; column-vector convention.
    """

    group: object
    p: int
    dim: int
    action: np.ndarray

    def validate(self):
        G = self.group
        if G.order > 1500:
            raise ValueError("exhaustive validation is limited to order 1500")
        act = self.action % self.p
        eye = np.eye(self.dim, dtype=np.int64)
        if not np.array_equal(act[G.identity], eye):
            return False
        for g in range(G.order):
            prod = np.matmul(act[g], act) % self.p  # [order, D, D]
            if not np.array_equal(prod, act[G.mult[g]]):
                return False
        return True

    def fixed_dim(self):
        """Dimension of the subspace fixed by the whole group."""
        eye = np.eye(self.dim, dtype=np.int64)
        stacked = np.concatenate(
            [self.action[g] - eye for g in self.group.generator_indices], axis=0
        )
        return self.dim - rank_fp(stacked % self.p, self.p)


def module_from_flats(group, p, flats):
    act = np.stack([np.asarray(f, dtype=np.int64) % p for f in flats])
    return ActionModule(group, p, act.shape[1], act)


def inflate_module(gamma, m0):
    """Inflate a base-group module along the projection of the extension."""
    base = gamma.base
    idx = np.arange(gamma.order, dtype=np.int64) % base.order
    return ActionModule(gamma, m0.p, m0.dim, m0.action[idx])


# ---------------------------------------------------------------------------
# Cayley spanning tree and affine propagation
# ---------------------------------------------------------------------------


def _cayley_tree(group, gens):
    """BFS tree edges (g, i, gs) plus the full edge list; NotGenerating if
    the generators do not reach the whole group."""
    T = group.mult
    order = group.order
    parent = {group.identity: None}
    bfs = [group.identity]
    tree = []
    for g in bfs:
        for i, s in enumerate(gens):
            h = int(T[g, s])
            if h not in parent:
                parent[h] = (g, i)
                tree.append((g, i, h))
                bfs.append(h)
    if len(parent) != order:
        raise NotGenerating("supplied elements do not generate the group")
    return bfs, tree


def _propagate(module, gens, rhs=None):
    """Affine expressions c(g) = A_g u + b_g for the unknown generator values.

    With ``rhs`` (a 2-cocycle table) the recursion subtracts o(g, s); without
    it the propagation is linear.  Returns (A, b, constraint matrix, constraint
    rhs) with A: [order, D, kD], b: [order, D].
    """
    p = module.p
    D = module.dim
    act = module.action
    group = module.group
    T = group.mult
    k = len(gens)
    bfs, tree = _cayley_tree(group, gens)
    treeset = {(g, i) for g, i, _ in tree}

    A = np.zeros((group.order, D, k * D), dtype=np.int64)
    b = np.zeros((group.order, D), dtype=np.int64)
    if rhs is not None:
        # the cocycle identity forces c(e) = o(e, e); zero for the
        # normalised cocycles produced by identity-preserving sections
        b[group.identity] = rhs[group.identity, group.identity] % p
    for g, i, h in tree:
        s = gens[i]
        blk = np.zeros((D, k * D), dtype=np.int64)
        blk[:, i * D : (i + 1) * D] = act[g]
        A[h] = (A[g] + blk) % p
        b[h] = b[g].copy()
        if rhs is not None:
            b[h] = (b[h] - rhs[g, s]) % p

    rows = []
    cons = []
    for g in bfs:
        for i in range(k):
            if (g, i) in treeset:
                continue
            s = gens[i]
            h = int(T[g, s])
            blk = np.zeros((D, k * D), dtype=np.int64)
            blk[:, i * D : (i + 1) * D] = act[g]
            lhs = (A[g] + blk - A[h]) % p
            rows.append(lhs)
            if rhs is None:
                cons.append(np.zeros(D, dtype=np.int64))
            else:
                cons.append((b[h] - b[g] + rhs[g, s]) % p)
    C = np.concatenate(rows, axis=0) if rows else np.zeros((0, k * D), dtype=np.int64)
    crhs = np.concatenate(cons) if cons else np.zeros(0, dtype=np.int64)
    return A, b, C, crhs


@dataclass
class OneCocycleSpace:
    """Z^1 described by generator values; dimensions counted over F_p."""

    module: object
    generators: list
    dim_z1: int
    dim_b1: int
    basis: np.ndarray  # [dim_z1, k*D] generator-value vectors

    @property
    def dim_h1(self):
        return self.dim_z1 - self.dim_b1


def one_cocycle_space(module, generators):
    A, b, C, _ = _propagate(module, generators)
    basis = nullspace_fp(C, module.p)
    dim_z1 = basis.shape[0]
    dim_b1 = module.dim - module.fixed_dim()
    return OneCocycleSpace(module, list(generators), dim_z1, dim_b1, basis)


def h1_dim(module, generators, d=1):
    """dim H^1 over F_p and over the degree-d residue field."""
    space = one_cocycle_space(module, generators)
    fp = space.dim_h1
    assert fp % d == 0, "F_p dimension must be divisible by the field degree"
    return fp, fp // d


def h1_via_inflation(gamma, m0, d=1):
    """dim_k H^1 of the extension on an inflated module, via the degenerate
    identity H^1 = Hom(K, M_0)^G = equivariant maps K/pK -> M_0."""
    p = m0.p
    if m0.group is gamma:
        base = gamma.base
        for i in range(gamma.order):
            if gamma.pi(i) == base.identity and not np.array_equal(
                m0.action[i] % p, np.eye(m0.dim, dtype=np.int64)
            ):
                raise ModuleNotInflated("kernel subgroup acts nontrivially")
        base_action = np.stack([m0.action[g] for g in range(base.order)])
        m0 = ActionModule(base, p, m0.dim, base_action)
    base = gamma.base
    if m0.group is not base:
        raise ValueError("module must live over the extension's base group")
    r = gamma.r
    D = m0.dim
    # unknown Phi: D x r over F_p with act(g) Phi = Phi delta(g) mod p
    rows = []
    for g in base.generator_indices:
        Ag = m0.action[g] % p
        Dg = np.asarray(gamma.action[g], dtype=np.int64) % p
        # vec(Phi) row-major: coefficient of Phi[k, l] in equation (i, j):
        # Ag[i, k] delta_{l j} - delta_{i k} Dg[l, j]
        blk = np.zeros((D * r, D * r), dtype=np.int64)
        for i in range(D):
            for j in range(r):
                row = np.zeros((D, r), dtype=np.int64)
                row[:, j] += Ag[i, :]
                row[i, :] -= Dg[:, j]
                blk[i * r + j] = row.reshape(-1)
        rows.append(blk % p)
    C = np.concatenate(rows, axis=0)
    fp = nullspace_fp(C, p).shape[0]
    assert fp % d == 0, "F_p dimension must be divisible by the field degree"
    return fp // d


# ---------------------------------------------------------------------------
# two-cocycles and the obstruction machinery
# ---------------------------------------------------------------------------


@dataclass
class TwoCocycle:
    """A full table of module-valued values o(g, h), indexed by elements."""

    module: object
    table: np.ndarray  # [order, order, D] mod p

    def validate_identity(self, generators=None, seed=0):
        """Cocycle identity g o(h,k) - o(gh,k) + o(g,hk) - o(g,h) = 0.

        Exhaustive for order <= 300; otherwise the generator-restricted
        family (g, h, s) for generators s (what the word-length induction
        needs) plus 10^5 random triples.
        """
        G = self.module.group
        p = self.module.p
        act = self.module.action
        T = G.mult
        O = self.table
        n = G.order
        if n <= 300:
            for g in range(n):
                t1 = np.matmul(O, act[g].T) % p  # o(h,k) acted by g
                t2 = O[T[g]]  # o(gh, k)
                t3 = O[g][T]  # o(g, hk)
                t4 = O[g][:, None, :]
                if np.any((t1 - t2 + t3 - t4) % p):
                    return False
            return True
        gens = list(generators) if generators is not None else list(G.generator_indices)
        for s in gens:
            Os = O[:, s, :]  # [n, D]
            hs = T[:, s]  # [n]
            chunk = 128
            for lo in range(0, n, chunk):
                hi = min(lo + chunk, n)
                # identity at (g, h, s): g o(h,s) - o(gh,s) + o(g,hs) - o(g,h)
                t1 = np.einsum("gde,he->ghd", act[lo:hi], Os) % p
                t2 = Os[T[lo:hi]]  # o(gh, s)
                t3 = O[lo:hi][:, hs, :]  # o(g, hs)
                if np.any((t1 - t2 + t3 - O[lo:hi]) % p):
                    return False
        rng = random.Random(seed)
        idx = np.array(
            [[rng.randrange(n) for _ in range(3)] for _ in range(10**5)], dtype=np.int64
        )
        g, h, k = idx.T
        t1 = np.einsum("ide,ie->id", act[g], O[h, k]) % p
        t2 = O[T[g, h], k]
        t3 = O[g, T[h, k]]
        t4 = O[g, h]
        return not np.any((t1 - t2 + t3 - t4) % p)


def coboundary_of(module, c):
    """The 2-coboundary (dc)(g, h) = g c(h) - c(gh) + c(g), as a full table."""
    G = module.group
    p = module.p
    act = module.action
    T = G.mult
    n = G.order
    table = np.empty((n, n, module.dim), dtype=np.int64)
    for g in range(n):
        gc = (c @ act[g].T) % p  # [n, D]: g applied to every c(h)
        table[g] = (gc - c[T[g]] + c[g][None, :]) % p
    return table


def is_coboundary(o, generators):
    """A 1-cochain c with dc = o (validated on all pairs), or None.

    The solve runs on generator unknowns with edge constraints only; the
    returned witness is checked against every pair before being returned,
    so a non-None answer is unconditionally correct.  None is a normal
    outcome and certifies obstruction given the validated cocycle identity.
    """
    module = o.module
    G = module.group
    p = module.p
    gens = list(generators)
    A, b, C, crhs = _propagate(module, gens, rhs=o.table)
    u = solve_fp(C, crhs, p)
    if u is None:
        return None
    n = G.order
    c = np.empty((n, module.dim), dtype=np.int64)
    for g in range(n):
        c[g] = (A[g] @ u + b[g]) % p
    # full validation pass: dc must equal o on all |G|^2 pairs
    if not np.array_equal(coboundary_of(module, c), o.table % p):
        raise AssertionError("propagated witness failed full-pair validation")
    return c


def obstruction_cocycle(lift_images, extension, module, rho_r_images=None):
    """The 2-cocycle o with sec(g) sec(h) = (1 + z o(g, h)) sec(gh).

    ``lift_images`` are matrices over the small-extension ring, one per
    group element (the canonical set-theoretic lift of the base-ring
    representation).  Entries of each defect must lie on the kernel line
    z * k; KernelViolation otherwise.  When ``rho_r_images`` is supplied,
    entrywise reduction of the lift is checked against it (NotALift).
    """
    C = extension
    G = module.group
    n = G.order
    if rho_r_images is not None:
        for i in range(n):
            red = C.mat_reduce_to_R(lift_images[i])
            if red != rho_r_images[i]:
                raise NotALift(f"lift does not reduce to the base image at {i}")
    D = module.dim
    inv = [C.mat_inv(lift_images[i]) for i in range(n)]
    table = np.zeros((n, n, D), dtype=np.int64)
    for g in range(n):
        Lg = lift_images[g]
        for h in range(n):
            E = C.mat_mul(C.mat_mul(Lg, lift_images[h]), inv[int(G.mult[g, h])])
            vec = C.kernel_coefficient_matrix(E)
            if vec is None:
                raise KernelViolation(
                    f"product defect escapes the kernel line at pair ({g}, {h})"
                )
            table[g, h] = vec
    o = TwoCocycle(module, table % module.p)
    if not o.validate_identity():
        raise AssertionError("obstruction table fails the cocycle identity")
    return o
