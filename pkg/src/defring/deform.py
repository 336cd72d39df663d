"""Finite models of the target ring, its small extensions, and the lift.

The target ring truncated at W-precision m is the "R-model": elements
w + a*t with w in GR(p^m, d), a in GR(p^n, d), and t^2 = 0 = p^n t.  The
small extensions C -> R with one-dimensional kernel annihilated by the
maximal ideal come in two shapes:

* case (a), one per residue-field parameter c: elements w + a*t with a
  now mod p^(n+1) and t^2 = c p^n t (the kernel line is generated by
  z = p^n t); needs m >= n + 2 so every product is exact;
* case (b): elements w + a*t + e*t^2 with a mod p^n, e mod p, and
  t^3 = p t^2 = 0 (kernel generated by z = t^2); needs m >= n + 1.

That enumeration has p^d + 1 members: an extension ideal is generated by
(p^(n+1) t, p t^2, t^3) together with one element a p^n t + b t^2 where a
or b is a unit; when b is a unit the ideal depends only on c = -b^(-1) a
mod p (rescaling by units collapses the rest), and when b is not a unit
the ideal is (p^n t, p t^2, t^3) regardless of the unit a.

Soundness at finite precision: a homomorphic lift over a full small
extension would truncate to one over its model here, so Obstructed
verdicts at the model certify obstruction in full; conversely the lift
over the R-model is produced by an algebraic construction (equivariance
of the kernel embedding plus t^2 = 0) and is re-verified exhaustively at
the configured precision.

Everything is exact integer arithmetic; the d = 1 hot paths (full-pair
homomorphism validation, obstruction tables) run vectorised on numpy
int64 arrays, and the generic element-tuple path covers d > 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import TwoCocycle, is_coboundary, obstruction_cocycle
from .errors import (
    DecompositionFailure,
    HomomorphismFailure,
    PrecisionTooLow,
    TooLarge,
)
from .linalg import Mat
from .rings import ring

# ---------------------------------------------------------------------------
# test rings
# ---------------------------------------------------------------------------


class TestRing:
    """One of the finite coefficient rings the deformation functor is probed on.

    Elements are tuples of component values (each a Galois-ring value
    tuple): (w,) for a plain ring, (w, t) for the R-model and case (a),
    (w, t, e) for case (b).
    """

    def __init__(self, kind, p, n, m, d=1, parameter=None):
        self.kind = kind
        self.p, self.n, self.m, self.d = p, n, m, d
        self.gw = ring(p, m, d)
        if kind == "R":
            if m < n:
                raise PrecisionTooLow("R-model needs m >= n")
            self.gt = ring(p, n, d)
            self.parts = (self.gw, self.gt)
        elif kind == "case_a":
            if m < n + 2:
                raise PrecisionTooLow("case (a) needs m >= n + 2")
            self.gt = ring(p, n + 1, d)
            self.parts = (self.gw, self.gt)
            self.c_param = parameter if parameter is not None else 0
            self._c_lift = self.gt.teichmuller(self.c_param)
        elif kind == "case_b":
            if m < n + 1:
                raise PrecisionTooLow("case (b) needs m >= n + 1")
            self.gt = ring(p, n, d)
            self.ge = ring(p, 1, d)
            self.parts = (self.gw, self.gt, self.ge)
        elif kind == "ring":
            self.parts = (self.gw,)
        else:
            raise ValueError(f"unknown test ring kind {kind!r}")
        self.ncomp = len(self.parts)
        self.zero = tuple(g.zero for g in self.parts)
        self.one = (self.gw.one,) + tuple(g.zero for g in self.parts[1:])
        self.size = 1
        for g in self.parts:
            self.size *= g.size

    def __repr__(self):
        par = f", c={self.c_param}" if self.kind == "case_a" else ""
        return f"TestRing({self.kind}, p={self.p}, n={self.n}, m={self.m}, d={self.d}{par})"

    # -- element arithmetic ---------------------------------------------------

    def add(self, x, y):
        return tuple(g.add(a, b) for g, a, b in zip(self.parts, x, y))

    def sub(self, x, y):
        return tuple(g.sub(a, b) for g, a, b in zip(self.parts, x, y))

    def neg(self, x):
        return tuple(g.neg(a) for g, a in zip(self.parts, x))

    def int_mul(self, k, x):
        return tuple(g.int_mul(k, a) for g, a in zip(self.parts, x))

    def _wred(self, w, g):
        return tuple(c % g.pm for c in w)

    def mul(self, x, y):
        gw = self.gw
        w = gw.mul(x[0], y[0])
        if self.kind == "ring":
            return (w,)
        gt = self.gt
        w1, w2 = self._wred(x[0], gt), self._wred(y[0], gt)
        t = gt.add(gt.mul(w1, y[1]), gt.mul(w2, x[1]))
        if self.kind == "case_a":
            cross = gt.int_mul(self.p**self.n, gt.mul(self._c_lift, gt.mul(x[1], y[1])))
            return (w, gt.add(t, cross))
        if self.kind == "R":
            return (w, t)
        ge = self.ge
        w1e, w2e = self._wred(x[0], ge), self._wred(y[0], ge)
        t1e, t2e = self._wred(x[1], ge), self._wred(y[1], ge)
        e = ge.add(
            ge.add(ge.mul(w1e, y[2]), ge.mul(w2e, x[2])), ge.mul(t1e, t2e)
        )
        return (w, t, e)

    def is_unit(self, x):
        return self.gw.is_unit(x[0])

    def inv(self, x):
        """Unit inverse: invert the W-part, then a two-step Neumann series
        soaks up the nilpotent rest (its cube vanishes in every kind)."""
        if not self.is_unit(x):
            raise ZeroDivisionError("not a unit")
        x0 = (self.gw.unit_inv(x[0]),) + tuple(g.zero for g in self.parts[1:])
        r = self.sub(self.one, self.mul(x, x0))
        corr = self.add(self.one, self.add(r, self.mul(r, r)))
        out = self.mul(x0, corr)
        assert self.mul(x, out) == self.one
        return out

    def elements(self):
        return (
            tuple(combo) for combo in itertools.product(*(g.elements() for g in self.parts))
        )

    def from_w(self, w):
        return (w,) + tuple(g.zero for g in self.parts[1:])

    # -- structure maps -------------------------------------------------------

    def reduce_to_R(self, x):
        """Image in the R-model (case kinds only)."""
        if self.kind == "case_a":
            pn = self.p**self.n
            return (x[0], tuple(c % pn for c in x[1]))
        if self.kind == "case_b":
            return (x[0], x[1])
        raise ValueError("only small extensions reduce to the R-model")

    def section_from_R(self, x):
        """The canonical coefficient section of reduce_to_R: identity on the
        W-part; the t-coefficient takes its digit-minimal lift in case (a)
        and a zero t^2-coefficient in case (b).  Deterministic, so reports
        are reproducible; any other section shifts the obstruction cocycle
        by a coboundary."""
        if self.kind == "case_a":
            small = ring(self.p, self.n, self.d)
            digits = small.digits(x[1])
            return (x[0], self.gt.from_digits(digits + (0,)))
        if self.kind == "case_b":
            return (x[0], x[1], self.ge.zero)
        raise ValueError("only small extensions have a section")

    @property
    def z_element(self):
        """Generator of the kernel of the reduction to the R-model."""
        if self.kind == "case_a":
            return (self.gw.zero, self.gt.from_int(self.p**self.n))
        if self.kind == "case_b":
            return (self.gw.zero, self.gt.zero, self.ge.one)
        raise ValueError("only small extensions have a kernel line")

    def kernel_coefficient(self, x):
        """x = z * (residue c): the packed field element c, or None."""
        if self.kind == "case_a":
            pn = self.p**self.n
            if any(c != 0 for c in x[0]) or any(c % pn for c in x[1]):
                return None
            return self.gt.field.pack((c // pn) % self.p for c in x[1])
        if self.kind == "case_b":
            if any(c != 0 for c in x[0]) or any(c != 0 for c in x[1]):
                return None
            return self.ge.field.pack(c % self.p for c in x[2])
        raise ValueError("only small extensions have a kernel line")

    # -- matrices (lists of tuples of elements) --------------------------------

    def mat_identity(self, q):
        return tuple(
            tuple(self.one if i == j else self.zero for j in range(q)) for i in range(q)
        )

    def mat_mul(self, A, B):
        q = len(A)
        r = len(B[0])
        out = []
        for i in range(q):
            row = []
            for j in range(r):
                acc = self.zero
                for k in range(len(B)):
                    acc = self.add(acc, self.mul(A[i][k], B[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def mat_inv(self, A):
        q = len(A)
        W = Mat(self.gw, [[x[0] for x in row] for row in A])
        from .linalg import mat_inv as gr_mat_inv

        W0 = gr_mat_inv(W)
        X0 = tuple(tuple(self.from_w(W0.rows[i][j]) for j in range(q)) for i in range(q))
        eye = self.mat_identity(q)
        R1 = self.mat_sub(eye, self.mat_mul(A, X0))
        R2 = self.mat_mul(R1, R1)
        corr = self.mat_add(eye, self.mat_add(R1, R2))
        out = self.mat_mul(X0, corr)
        assert self.mat_mul(A, out) == eye
        return out

    def mat_add(self, A, B):
        return tuple(
            tuple(self.add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(A, B)
        )

    def mat_sub(self, A, B):
        return tuple(
            tuple(self.sub(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(A, B)
        )

    def mat_reduce_to_R(self, A):
        return tuple(tuple(self.reduce_to_R(x) for x in row) for row in A)

    def mat_section(self, A):
        return tuple(tuple(self.section_from_R(x) for x in row) for row in A)

    def kernel_coefficient_matrix(self, E):
        """Flatten E - I to the F_p coordinates of its kernel coefficient,
        ordered (i*q + j)*d + b; None if any entry escapes the line."""
        q = len(E)
        eye = self.mat_identity(q)
        out = np.zeros(q * q * self.d, dtype=np.int64)
        for i in range(q):
            for j in range(q):
                x = self.sub(E[i][j], eye[i][j])
                c = self.kernel_coefficient(x)
                if c is None:
                    return None
                coeffs = self.parts[1].field.unpack(c)
                for b in range(self.d):
                    out[(i * q + j) * self.d + b] = coeffs[b]
        return out


def build_test_ring(kind, p, n, m, d=1, parameter=None):
    """Constructor mirroring the ring families; ``parameter`` is the case (a)
    residue c as a packed field element."""
    return TestRing(kind, p, n, m, d, parameter)


def dual_numbers(p, d=1):
    """k[epsilon] with epsilon^2 = 0: the R-model at n = m = 1."""
    return TestRing("R", p, 1, 1, d)


def enumerate_small_extensions(p, n, m, d=1):
    """All p^d + 1 small extensions of the R-model: case (a) per residue
    parameter (ascending packed order), then case (b)."""
    out = [TestRing("case_a", p, n, m, d, parameter=c) for c in range(p**d)]
    out.append(TestRing("case_b", p, n, m, d))
    return out


# ---------------------------------------------------------------------------
# the explicit lift over the R-model
# ---------------------------------------------------------------------------


def nu_embed(X, R):
    """1 + t X for a Mat over GR(p^n, d): the additive-to-multiplicative
    embedding of the kernel line (exact because t^2 = 0 in the R-model)."""
    q = X.nrows
    eye = R.mat_identity(q)
    return tuple(
        tuple(
            (eye[i][j][0], X.rows[i][j]) for j in range(q)
        )
        for i in range(q)
    )


@dataclass
class LiftRecord:
    """The verified lift over the R-model, with its ingredients."""

    group: object
    ring: TestRing
    dim: int
    images: list
    rho_w: object
    pairs_checked: int = 0


def construct_rho_R(gamma, psi_of, rho_w, R):
    """The lift (v, g) -> (1 + t psi(v)) * rho_W(g) over the R-model.

    ``psi_of`` maps a K coordinate vector to a Mat over GR(p^n, d).  The
    homomorphism property is verified on every pair (vectorised when
    d = 1); HomomorphismFailure carries a witness pair, which signals a
    non-equivariant psi or an action mismatch upstream.  Also checked:
    reduction mod t is rho_W, restriction to K is 1 + t psi, reduction
    mod (p, t) is the inflated residual representation.
    """
    q = rho_w.dim
    gt = R.gt
    base = gamma.base
    w_reduced = []
    for g in range(base.order):
        M = rho_w.images[g]
        w_reduced.append(
            Mat(gt, [[tuple(c % gt.pm for c in v) for v in row] for row in M.rows])
        )
    images = []
    for idx in range(gamma.order):
        v = gamma.k_part(idx)
        g = gamma.pi(idx)
        P = psi_of(v)
        T = P @ w_reduced[g]
        W = rho_w.images[g]
        images.append(
            tuple(
                tuple((W.rows[i][j], T.rows[i][j]) for j in range(q)) for i in range(q)
            )
        )

    lift = LiftRecord(gamma, R, q, images, rho_w)
    _verify_lift(lift)

    # reduction mod t recovers rho_W composed with the projection
    for idx in range(gamma.order):
        g = gamma.pi(idx)
        for i in range(q):
            for j in range(q):
                assert images[idx][i][j][0] == rho_w.images[g].rows[i][j]
    # restriction to K is the embedded kernel map
    for vidx in range(gamma.k_size):
        idx = vidx * base.order + base.identity
        v = gamma.k_part(idx)
        expected = nu_embed(psi_of(v), R)
        assert images[idx] == expected, "restriction to K must be 1 + t psi"
    return lift


def _verify_lift(lift):
    gamma = lift.group
    R = lift.ring
    n_el = gamma.order
    if R.d == 1 and R.kind == "R":
        W = np.array(
            [[[x[0][0] for x in row] for row in M] for M in lift.images], dtype=np.int64
        )
        T = np.array(
            [[[x[1][0] for x in row] for row in M] for M in lift.images], dtype=np.int64
        )
        pm, pn = R.gw.pm, R.gt.pm
        mult = gamma.mult
        for g in range(n_el):
            wp = np.matmul(W[g], W) % pm
            tp = (np.matmul(W[g], T) + np.matmul(T[g], W)) % pn
            row = mult[g]
            if not (np.array_equal(wp, W[row]) and np.array_equal(tp, T[row])):
                h = int(
                    np.nonzero(
                        np.any((wp != W[row]) | (tp != T[row]), axis=(1, 2))
                    )[0][0]
                )
                raise HomomorphismFailure(
                    f"lift fails multiplicativity at pair ({g}, {h})", witness=(g, h)
                )
        lift.pairs_checked = n_el * n_el
        return
    for g in range(n_el):
        Lg = lift.images[g]
        for h in range(n_el):
            prod = R.mat_mul(Lg, lift.images[h])
            if prod != lift.images[int(gamma.mult[g, h])]:
                raise HomomorphismFailure(
                    f"lift fails multiplicativity at pair ({g}, {h})", witness=(g, h)
                )
    lift.pairs_checked = n_el * n_el


# ---------------------------------------------------------------------------
# unliftability over every small extension
# ---------------------------------------------------------------------------


@dataclass
class ObstructionResult:
    ring: TestRing
    obstructed: bool
    cocycle: object = None
    cochain: object = None
    lift_images: object = None


def _section_images_numpy(lift, C):
    """Vectorised canonical section for d = 1: arrays (W, T[, E])."""
    p, n = C.p, C.n
    pn = p**n
    small = ring(p, n, 1)
    big = C.gt
    lift_table = np.array(
        [big.from_digits(small.digits((t,)) + (0,))[0] for t in range(pn)],
        dtype=np.int64,
    )
    W = np.array(
        [[[x[0][0] for x in row] for row in M] for M in lift.images], dtype=np.int64
    )
    T = np.array(
        [[[x[1][0] for x in row] for row in M] for M in lift.images], dtype=np.int64
    )
    if C.kind == "case_a":
        return W, lift_table[T], None
    return W, T, np.zeros_like(T)


def _obstruction_table_numpy(lift, C, module):
    """Full defect table o(g, h) for d = 1, built with batched matmuls."""
    gamma = lift.group
    n_el = gamma.order
    q = lift.dim
    p, n = C.p, C.n
    pn = p**n
    W, T, E = _section_images_numpy(lift, C)
    pm = C.gw.pm
    pt = C.gt.pm
    c_lift = C._c_lift[0] if C.kind == "case_a" else 0

    # inverses, one generic matrix inversion per element
    inv_mats = []
    for i in range(n_el):
        M = tuple(
            tuple(
                (
                    ((int(W[i, a, b]),), (int(T[i, a, b]),))
                    if C.kind == "case_a"
                    else ((int(W[i, a, b]),), (int(T[i, a, b]),), (int(E[i, a, b]),))
                )
                for b in range(q)
            )
            for a in range(q)
        )
        inv_mats.append(C.mat_inv(M))
    Wi = np.array(
        [[[x[0][0] for x in row] for row in M] for M in inv_mats], dtype=np.int64
    )
    Ti = np.array(
        [[[x[1][0] for x in row] for row in M] for M in inv_mats], dtype=np.int64
    )
    Ei = (
        np.array([[[x[2][0] for x in row] for row in M] for M in inv_mats], dtype=np.int64)
        if C.kind == "case_b"
        else None
    )

    mult = gamma.mult
    D = module.dim
    table = np.empty((n_el, n_el, D), dtype=np.int64)
    eye = np.eye(q, dtype=np.int64)
    for g in range(n_el):
        # P = L[g] L[h] for all h
        Pw = np.matmul(W[g], W) % pm
        Pt = (np.matmul(W[g], T) + np.matmul(T[g], W)) % pt
        if C.kind == "case_a":
            Pt = (Pt + c_lift * pn * np.matmul(T[g], T)) % pt
        else:
            Pe = (np.matmul(W[g], E) + np.matmul(E[g], W) + np.matmul(T[g], T)) % p
        row = mult[g]
        Iw, It = Wi[row], Ti[row]
        Ew_ = np.matmul(Pw, Iw) % pm
        Et_ = (np.matmul(Pw, It) + np.matmul(Pt, Iw)) % pt
        if C.kind == "case_a":
            Et_ = (Et_ + c_lift * pn * np.matmul(Pt, It)) % pt
            if np.any(Ew_ != eye) or np.any(Et_ % pn):
                raise AssertionError("defect escapes the kernel line")
            table[g] = ((Et_ // pn) % p).reshape(n_el, q * q)
        else:
            Ie = Ei[row]
            Ee_ = (np.matmul(Pw, Ie) + np.matmul(Pe, Iw) + np.matmul(Pt, It)) % p
            if np.any(Ew_ != eye) or np.any(Et_):
                raise AssertionError("defect escapes the kernel line")
            table[g] = (Ee_ % p).reshape(n_el, q * q)
    return table


def test_unliftability(lift, C, module):
    """Obstructed, or LiftFound with a fully verified homomorphic lift.

    Builds the canonical set-theoretic lift through the fixed section,
    reads off the defect 2-cocycle, and solves for a trivialising
    1-cochain.  Unsolvable certifies that no homomorphism over C reduces
    to the lift; a solution is materialised into an actual lift and
    verified on every pair (that outcome would contradict the expected
    obstruction for genuine instances and is reported loudly upstream).
    """
    gamma = lift.group
    q = lift.dim
    if C.d == 1:
        table = _obstruction_table_numpy(lift, C, module)
        o = TwoCocycle(module, table % module.p)
        if not o.validate_identity():
            raise AssertionError("obstruction table fails the cocycle identity")
        sec_images = None
    else:
        sec_images = [C.mat_section(M) for M in lift.images]
        o = obstruction_cocycle(sec_images, C, module, rho_r_images=lift.images)
    c = is_coboundary(o, gamma.generator_indices)
    if c is None:
        return ObstructionResult(C, True, cocycle=o)

    # materialise the lift (1 - z c(gamma)) * sec(gamma) and verify it fully
    if sec_images is None:
        sec_images = [C.mat_section(M) for M in lift.images]
    z = C.z_element
    eye = C.mat_identity(q)
    d = C.d
    images = []
    for idx in range(gamma.order):
        vec = c[idx]
        E = tuple(
            tuple(
                C.add(
                    eye[i][j],
                    _scale_kernel(
                        C,
                        z,
                        [int(-vec[(i * q + j) * d + b]) % C.p for b in range(d)],
                    ),
                )
                for j in range(q)
            )
            for i in range(q)
        )
        images.append(C.mat_mul(E, sec_images[idx]))
    for g in range(gamma.order):
        for h in range(gamma.order):
            if C.mat_mul(images[g], images[h]) != images[int(gamma.mult[g, h])]:
                raise AssertionError("materialised lift failed verification")
    return ObstructionResult(C, False, cocycle=o, cochain=c, lift_images=images)


def _scale_kernel(C, z, coeffs):
    """z times the residue element with the given F_p coordinates."""
    d = C.d
    acc = C.zero
    if all(x == 0 for x in coeffs):
        return acc
    gk = C.parts[1] if C.kind == "case_a" else C.ge
    cval = gk.field.pack(coeffs)
    lift = C.from_w(C.gw.lift_field(cval))
    return C.mul(z, lift)


# ---------------------------------------------------------------------------
# coefficient extraction for kernel-restricted images
# ---------------------------------------------------------------------------


def extract_alpha(C, M, psi_value=None):
    """Decompose a kernel-element image I + t alpha + p t xi (+ t^2 beta).

    alpha has Teichmueller-or-zero entries (the canonical digit split of
    the t-coefficient); beta exists only in case (b).  When ``psi_value``
    is given, the congruence alpha = psi mod p (mod the maximal ideal) is
    asserted.  DecompositionFailure if the W-part is not the identity.
    """
    q = len(M)
    gt = C.gt
    eyew = [[C.gw.one if i == j else C.gw.zero for j in range(q)] for i in range(q)]
    for i in range(q):
        for j in range(q):
            if M[i][j][0] != eyew[i][j]:
                raise DecompositionFailure("W-part of a kernel image must be I")
    alpha, xi = [], []
    beta = [] if C.kind == "case_b" else None
    for i in range(q):
        ra, rx, rb = [], [], []
        for j in range(q):
            t = M[i][j][1]
            digits = gt.digits(t)
            a = gt.teichmuller(digits[0])
            ra.append(a)
            rest = gt.sub(t, a)
            rx.append(gt.divide_by_p(rest))
            if beta is not None:
                rb.append(M[i][j][2])
        alpha.append(tuple(ra))
        xi.append(tuple(rx))
        if beta is not None:
            beta.append(tuple(rb))
    if psi_value is not None:
        for i in range(q):
            for j in range(q):
                lhs = gt.residue(alpha[i][j])
                rhs = gt.residue(
                    tuple(c % gt.pm for c in psi_value.rows[i][j])
                )
                assert lhs == rhs, "alpha must reduce to psi mod p"
    if beta is not None:
        return tuple(alpha), tuple(xi), tuple(beta)
    return tuple(alpha), tuple(xi)


# ---------------------------------------------------------------------------
# brute-force deformation counting and the Hom-count oracle
# ---------------------------------------------------------------------------


def hom_count_R_to_A(p, n, d, A):
    """Number of algebra maps out of the target ring: elements x of the
    maximal ideal with p^n x = 0 and x^2 = 0 (candidate images of t)."""
    count = 0
    for x in A.elements():
        if A.is_unit(x):
            continue
        if A.int_mul(p**n, x) != A.zero:
            continue
        if A.mul(x, x) == A.zero:
            count += 1
    return count


def brute_force_def_count(gamma, rho_bar, A, guard=2 * 10**6):
    """Count strict-equivalence classes of homomorphic lifts of the residual
    representation over the small ring A, by exhaustive enumeration.

    ``rho_bar`` is the residual representation of the base group; the
    representation being deformed is its inflation along the projection.
    Candidate generator images are the full fibres over the residual
    images; per-generator order relations prune first, then the mixed
    relations of the semidirect presentation, and every surviving tuple is
    extended along the Cayley tree and validated as a homomorphism on all
    pairs.  Classes are orbits under conjugation by the kernel of
    GL_q(A) -> GL_q(k).  TooLarge if the candidate count exceeds ``guard``.
    """
    q = rho_bar.dim
    gens = gamma.generator_indices
    m_A = [x for x in A.elements() if not A.is_unit(x)]
    n_cand = len(m_A) ** (q * q)
    total = n_cand ** len(gens)
    if total > guard:
        raise TooLarge(f"{total} candidate tuples exceed the guard {guard}")

    def lifts_of(idx):
        Mbar = rho_bar.images[gamma.pi(idx)]
        base = tuple(
            tuple(
                A.from_w(A.gw.lift_field(rho_bar.ring.residue(Mbar.rows[i][j])))
                for j in range(q)
            )
            for i in range(q)
        )
        out = []
        for combo in itertools.product(m_A, repeat=q * q):
            cand = tuple(
                tuple(A.add(base[i][j], combo[i * q + j]) for j in range(q))
                for i in range(q)
            )
            out.append(cand)
        return out

    def mat_pow(M, e):
        out = A.mat_identity(q)
        for _ in range(e):
            out = A.mat_mul(out, M)
        return out

    # per-generator order pruning
    orders = [gamma.element_order(g) for g in gens]
    eye = A.mat_identity(q)
    survivor_lists = []
    for gen, order in zip(gens, orders):
        survivors = [M for M in lifts_of(gen) if mat_pow(M, order) == eye]
        survivor_lists.append(survivors)

    # mixed relations, evaluated against the group itself: for each pair of
    # generators the product relation g_i g_j = (element) must lift, where
    # the element is re-expressed through the Cayley tree below; here we
    # prune with the conjugation relations that keep tuples small
    valid = []
    base = gamma.base
    r = gamma.r
    pn = gamma.pn

    def k_word(images_k, vec):
        out = A.mat_identity(q)
        for i, e in enumerate(vec):
            out = A.mat_mul(out, mat_pow(images_k[i], int(e) % pn))
        return out

    tau_i, sigma_i = gens[-2], gens[-1]
    for combo in itertools.product(*survivor_lists):
        ims = dict(zip(gens, combo))
        ok = True
        Tm, Sm = ims[tau_i], ims[sigma_i]
        images_k = [ims[g] for g in gens[:r]]
        # commuting kernel generators
        for i in range(r):
            for j in range(i + 1, r):
                if A.mat_mul(images_k[i], images_k[j]) != A.mat_mul(
                    images_k[j], images_k[i]
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            # sigma tau sigma^-1 = tau^u
            lhs = A.mat_mul(A.mat_mul(Sm, Tm), mat_pow(Sm, base.q - 1))
            if lhs != mat_pow(Tm, base.u):
                ok = False
        if ok and r:
            # generator conjugation realises the kernel action
            for name, M in (("tau", Tm), ("sigma", Sm)):
                act = np.asarray(gamma.action[getattr(base, name)], dtype=np.int64)
                Minv = A.mat_inv(M)
                for i in range(r):
                    lhs = A.mat_mul(A.mat_mul(M, images_k[i]), Minv)
                    if lhs != k_word(images_k, act[:, i]):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            valid.append(ims)

    # Cayley extension + full validation
    homs = []
    for ims in valid:
        full = _extend_via_tree(gamma, gens, ims, A)
        if full is not None:
            homs.append(tuple(full[g] for g in gens))

    # conjugation orbits under 1 + m_A Mat_q
    kernel_group = []
    for combo in itertools.product(m_A, repeat=q * q):
        U = tuple(
            tuple(A.add(eye[i][j], combo[i * q + j]) for j in range(q))
            for i in range(q)
        )
        kernel_group.append((U, A.mat_inv(U)))

    seen = set()
    reps = []
    for tup in homs:
        if tup in seen:
            continue
        reps.append(tup)
        for U, Uinv in kernel_group:
            conj = tuple(A.mat_mul(A.mat_mul(U, M), Uinv) for M in tup)
            seen.add(conj)
    return len(reps), reps


def _extend_via_tree(gamma, gens, gen_images, A):
    T = gamma.mult
    images = {gamma.identity: A.mat_identity(len(next(iter(gen_images.values()))))}
    bfs = [gamma.identity]
    for g in bfs:
        for s in gens:
            h = int(T[g, s])
            if h not in images:
                images[h] = A.mat_mul(images[g], gen_images[s])
                bfs.append(h)
    for g in range(gamma.order):
        for h in range(gamma.order):
            if A.mat_mul(images[g], images[h]) != images[int(T[g, h])]:
                return None
    return images
