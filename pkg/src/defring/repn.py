"""Representations of the metacyclic group over Galois rings.

The q-dimensional representations in play are induced from characters of
the cyclic normal subgroup: tau acts diagonally by Teichmueller lifts of
powers of a fixed primitive ell-th root of unity, sigma by the cyclic
basis permutation.  That model needs a big ring containing the root of
unity; the descended model over W(k)/p^m is the module W(k)/p^m [x]/(f)
for f = prod over h in H of (x - w(zeta^(a h))), with tau acting as
multiplication by x (the companion matrix of f) and sigma as the
substitution x -> x^u reduced mod f.  Both x^ell = 1 in the quotient and
sigma tau sigma^(-1) = tau^u hold on the nose, so no conjugating-matrix
search is ever needed; agreement with the big-ring model is certified by
comparing characteristic polynomials element by element.

Brauer characters are kept symbolic: eigenvalue exponent multisets encoded
as exact cyclotomic sums, never matrix traces in residue characteristic.

Hom modules between G-modules are computed over Z/p^n by flattening the
coefficient ring to its polynomial basis; the extra structure (closure
under coefficient-ring scalars, freeness of rank one) is then tested
explicitly on the solution span.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CyclotomicSum, cyc_equal_in_zeta, cyc_sum
from .errors import (
    HomomorphismFailure,
    HypothesisFailure,
    NoRootOfUnity,
    NotDescendable,
    NotIntegral,
)
from .linalg import Mat, howell_form, in_row_span, kernel_generators, mat_inv, span_size
from .rings import GaloisRingElement, coerce_to_subring, embed_to_extension, ring

# ---------------------------------------------------------------------------
# matrix representations
# ---------------------------------------------------------------------------


@dataclass
class MatrixRepresentation:
    """All element images of a group in GL over a Galois ring, precomputed."""

    group: object
    ring: object
    dim: int
    images: tuple

    def image(self, i):
        return self.images[i]

    def verify(self):
        """Exhaustive homomorphism check (groups of order <= 1500)."""
        G = self.group
        if G.order > 1500:
            raise ValueError("exhaustive verification is limited to order 1500")
        eye = Mat.identity(self.ring, self.dim)
        if self.images[G.identity] != eye:
            raise HomomorphismFailure("identity does not map to the identity matrix")
        for i in range(G.order):
            gi = self.images[i]
            for j in range(G.order):
                if gi @ self.images[j] != self.images[int(G.mult[i, j])]:
                    raise HomomorphismFailure(
                        f"multiplicativity fails at pair ({i}, {j})", witness=(i, j)
                    )
        return True


def rep_from_metacyclic_generators(G, R, tau_mat, sigma_mat):
    """Images of all (c, s) as tau^c sigma^s; the caller verifies afterwards."""
    taus = [Mat.identity(R, tau_mat.nrows)]
    for _ in range(G.ell - 1):
        taus.append(taus[-1] @ tau_mat)
    sigmas = [Mat.identity(R, sigma_mat.nrows)]
    for _ in range(G.q - 1):
        sigmas.append(sigmas[-1] @ sigma_mat)
    images = [taus[c] @ sigmas[s] for (c, s) in G.elements]
    return MatrixRepresentation(G, R, tau_mat.nrows, tuple(images))


# ---------------------------------------------------------------------------
# induced representation over a big Galois ring
# ---------------------------------------------------------------------------


def primitive_root_of_unity(R, ell):
    """Teichmueller lift of a fixed primitive ell-th root of unity in GR(p^m, D)."""
    if (R.p**R.d - 1) % ell != 0:
        raise NoRootOfUnity(f"no ell-th root of unity: {ell} does not divide p^D - 1")
    g = R.field.multiplicative_generator()
    zeta_bar = R.field.pow(g, (R.p**R.d - 1) // ell)
    return zeta_bar  # residue-field element; lift with R.teichmuller


def induced_rep_big(G, a, big_ring):
    """The induced q-dimensional representation on the basis {w_s : s in <sigma>}.

    tau acts by diag of Teichmueller lifts w(zeta^(a nu(s^-1))), sigma by the
    cyclic permutation w_s -> w_{sigma s}.  Basis position j carries s = sigma^j.
    """
    q, ell = G.q, G.ell
    zeta_bar = primitive_root_of_unity(big_ring, ell)
    diag = []
    for j in range(q):
        nu_inv = G.u_pow[(q - j) % q]  # nu(sigma^-j)
        e = (a * nu_inv) % ell
        diag.append(big_ring.teichmuller(big_ring.field.pow(zeta_bar, e)))
    tau_rows = [[diag[i] if i == j else big_ring.zero for j in range(q)] for i in range(q)]
    sigma_rows = [
        [big_ring.one if i == (j + 1) % q else big_ring.zero for j in range(q)]
        for i in range(q)
    ]
    rep = rep_from_metacyclic_generators(G, big_ring, Mat(big_ring, tau_rows), Mat(big_ring, sigma_rows))
    rep.verify()
    return rep


# ---------------------------------------------------------------------------
# Brauer characters
# ---------------------------------------------------------------------------


@dataclass
class BrauerCharacter:
    """Exact character values, one cyclotomic sum per group element."""

    group: object
    values: tuple

    def validate(self):
        G = self.group
        for cls in G.conjugacy_classes():
            vals = [self.values[i] for i in cls]
            assert all(cyc_equal_in_zeta(v, vals[0]) for v in vals[1:]), (
                "character is not constant on a conjugacy class"
            )
        return True


def char_of_induced(G, a):
    """Brauer character of the induction: sum over H at powers of tau, zero elsewhere."""
    ell, q = G.ell, G.q
    values = []
    for c, s in G.elements:
        if s == 0:
            values.append(cyc_sum(ell, [(a * c * h) % ell for h in G.H]))
        else:
            values.append(CyclotomicSum.zero(ell))
    chi = BrauerCharacter(G, tuple(values))
    chi.validate()
    ident = chi.values[G.identity]
    assert cyc_equal_in_zeta(ident, CyclotomicSum.constant(ell, q))
    return chi


# ---------------------------------------------------------------------------
# descent to W(k)/p^m by the companion-matrix model
# ---------------------------------------------------------------------------


def _lcm(a, b):
    import math

    return a * b // math.gcd(a, b)


def _charpoly(M):
    """Characteristic polynomial det(xI - M), descending coefficients.

    Division-free (Berkowitz), so it is valid over any commutative ring;
    Galois rings have zero divisors, hence no fraction-based shortcut.
    """
    R = M.ring
    rows = [list(r) for r in M.rows]

    def berk(A):
        n = len(A)
        if n == 1:
            return [R.one, R.neg(A[0][0])]
        a = A[0][0]
        row = A[0][1:]
        col = [A[i][0] for i in range(1, n)]
        sub = [r[1:] for r in A[1:]]
        items = [R.one, R.neg(a)]
        vec = col
        for _ in range(n - 1):
            dot = R.zero
            for x, y in zip(row, vec):
                dot = R.add(dot, R.mul(x, y))
            items.append(R.neg(dot))
            vec = [
                _rowdot(R, sub[i], vec) for i in range(n - 1)
            ]
        lower = berk(sub)
        out = []
        for i in range(n + 1):
            acc = R.zero
            for j in range(len(lower)):
                k = i - j
                if 0 <= k < len(items):
                    acc = R.add(acc, R.mul(items[k], lower[j]))
            out.append(acc)
        return out

    return tuple(berk(rows))


def _rowdot(R, xs, ys):
    acc = R.zero
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


def descend_rep(G, a, target):
    """Companion-matrix model of the induced representation over GR(p^m, d).

    Underlying module: target[x]/(f) with f = prod_{h in H} (x - w(zeta^(a h))),
    computed in a big ring and coerced down; tau = multiplication by x,
    sigma = the substitution x -> x^u (well defined because x^ell = 1 in the
    quotient).  Verified: homomorphism, exact generator orders, conjugation
    relation, and per-element characteristic-polynomial agreement with the
    big-ring model.
    """
    p, m, d = target.p, target.m, target.d
    ell, q, u = G.ell, G.q, G.u
    exponents = sorted((a * h) % ell for h in G.H)
    if len(set(exponents)) != q:
        raise HypothesisFailure("eigenvalue exponents collide; condition (a) fails for a")
    D0 = _mult_order_int(p, ell)
    big = ring(p, m, _lcm(D0, d))
    zeta_bar = primitive_root_of_unity(big, ell)

    # f(x) = prod (x - w(zeta^e)) over the exponent orbit, in the big ring
    coeffs = [big.one]  # ascending, current degree 0
    for e in exponents:
        root = big.teichmuller(big.field.pow(zeta_bar, e))
        new = [big.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = big.add(new[i + 1], c)
            new[i] = big.sub(new[i], big.mul(root, c))
        coeffs = new
    assert coeffs[-1] == big.one

    f_target = []
    for c in coeffs[:-1]:
        elt = GaloisRingElement(big, c)
        try:
            f_target.append(coerce_to_subring(elt, d).value)
        except Exception as exc:
            raise NotDescendable(
                f"coefficient not fixed by frobenius^{d}: {exc}"
            ) from exc

    R = target
    # companion matrix of the monic f: columns are images of 1, x, ..., x^{q-1}
    comp = [[R.zero] * q for _ in range(q)]
    for j in range(q - 1):
        comp[j + 1][j] = R.one
    for i in range(q):
        comp[i][q - 1] = R.neg(f_target[i])
    tau_mat = Mat(R, comp)

    # powers of x mod f, enough to read off x^(j*u mod ell)
    xpow = [tuple(R.one if i == 0 else R.zero for i in range(q))]
    for _ in range(ell - 1):
        prev = xpow[-1]
        shifted = [R.zero] + list(prev[: q - 1])
        top = prev[q - 1]
        xpow.append(tuple(R.sub(shifted[i], R.mul(top, f_target[i])) for i in range(q)))
    # x^ell must equal 1 in the quotient (f divides x^ell - 1)
    shifted = [R.zero] + list(xpow[-1][: q - 1])
    top = xpow[-1][q - 1]
    xell = tuple(R.sub(shifted[i], R.mul(top, f_target[i])) for i in range(q))
    assert xell == tuple(R.one if i == 0 else R.zero for i in range(q)), (
        "x^ell != 1 in the companion model"
    )

    sigma_cols = [xpow[(j * u) % ell] for j in range(q)]
    sigma_mat = Mat(R, [[sigma_cols[j][i] for j in range(q)] for i in range(q)])

    rep = rep_from_metacyclic_generators(G, R, tau_mat, sigma_mat)
    rep.verify()

    # exact order of the sigma image
    acc = sigma_mat
    order = 1
    eye = Mat.identity(R, q)
    while acc != eye:
        acc = acc @ sigma_mat
        order += 1
    assert order == q, "sigma image must have order exactly q"
    conj = sigma_mat @ tau_mat @ mat_inv(sigma_mat)
    tau_u = Mat.identity(R, q)
    for _ in range(u):
        tau_u = tau_u @ tau_mat
    assert conj == tau_u, "conjugation relation fails in the descended model"

    big_rep = induced_rep_big(G, a, big)
    for i in range(G.order):
        cp_small = _charpoly(rep.images[i])
        cp_big = _charpoly(big_rep.images[i])
        lifted = tuple(
            embed_to_extension(GaloisRingElement(R, c), big).value for c in cp_small
        )
        if lifted != cp_big:
            raise NotDescendable(f"characteristic polynomial mismatch at element {i}")
    return rep


def _mult_order_int(p, ell):
    import math

    if math.gcd(p, ell) != 1:
        raise NoRootOfUnity(f"no ell-th roots of unity in characteristic {p}")
    x, k = p % ell, 1
    while x != 1:
        x = (x * p) % ell
        k += 1
    return k


def reduce_rep(rep, target):
    """Entrywise reduction GR(p^m, d) -> GR(p^m', d) for m' <= m."""
    R = target
    images = tuple(
        Mat(R, [[tuple(c % R.pm for c in v) for v in row] for row in M.rows])
        for M in rep.images
    )
    return MatrixRepresentation(rep.group, R, rep.dim, images)


# ---------------------------------------------------------------------------
# G-modules over A and Hom computations over Z/p^n
# ---------------------------------------------------------------------------


@dataclass
class GModuleOverA:
    """A free A-module with a G-action given by invertible matrices over A."""

    group: object
    ring: object
    rank: int
    action: tuple  # Mat over A per group element index

    def flattened(self):
        """Z/p^n action matrices (rank*d square, numpy int64) per element."""
        return [flatten_A_matrix(self.ring, M) for M in self.action]


def flatten_A_matrix(A, M):
    """Expand a Mat over GR(p^n, d) to its (k d) x (k d) integer matrix over Z/p^n.

    Basis order: module coordinate i tensor ring basis power X^b at flat
    index i*d + b; block (i, j) is multiplication by M[i][j] in the
    polynomial basis.
    """
    d = A.d
    k = M.nrows
    out = np.zeros((k * d, k * d), dtype=np.int64)
    for i in range(k):
        for j in range(M.ncols):
            entry = M.rows[i][j]
            xb = entry
            for b in range(d):
                out[i * d : i * d + d, j * d + b] = xb
                if b + 1 < d:
                    xb = A.mul(xb, (0, 1) + (0,) * (d - 2)) if d > 1 else xb
    return out % A.pm


def module_from_rep(rep):
    """The representation module itself: rank q with the given action."""
    return GModuleOverA(rep.group, rep.ring, rep.dim, rep.images)


def build_M(rho_hat):
    """Endomorphism module Mat_q(A) with g acting by X -> rho(g) X rho(g)^-1.

    Flat coordinates are row-major: matrix entry (i, j) sits at i*q + j,
    and the action matrix is kron(rho(g), rho(g)^-T).
    """
    A = rho_hat.ring
    q = rho_hat.dim
    action = []
    for M in rho_hat.images:
        Minv = mat_inv(M)
        rows = []
        for i in range(q):
            for j in range(q):
                row = []
                for k in range(q):
                    for l in range(q):
                        row.append(A.mul(M.rows[i][k], Minv.rows[l][j]))
                rows.append(row)
        action.append(Mat(A, rows))
    return GModuleOverA(rho_hat.group, A, q * q, tuple(action))


def multiplicity_by_character(G, a, p):
    """(multiplicity of the a-twisted induced module in End, the triple set S).

    S = {(h1, h2, h3) in H^3 : a h1 + h2 - h3 = 0 mod ell}; the count #S/q
    is cross-checked against the exact cyclotomic inner-product sum.
    """
    ell, q, H = G.ell, G.q, G.H
    S = [
        (h1, h2, h3)
        for h1 in H
        for h2 in H
        for h3 in H
        if (a * h1 + h2 - h3) % ell == 0
    ]
    if len(S) % q != 0:
        raise NotIntegral("#S must be divisible by q (free H-action on triples)")
    mult = len(S) // q
    total = CyclotomicSum.zero(ell)
    for c in range(ell):
        va = cyc_sum(ell, [(a * c * h) % ell for h in H])
        v1 = cyc_sum(ell, [(c * h) % ell for h in H])
        v1c = cyc_sum(ell, [(-c * h) % ell for h in H])
        total = total + va * v1 * v1c
    assert cyc_equal_in_zeta(total, CyclotomicSum.constant(ell, ell * len(S))), (
        "inner-product sum disagrees with the triple count"
    )
    return mult, S


@dataclass
class HomModule:
    """Solution module of equivariant Z/p^n-linear maps source -> target.

    ``basis`` rows are flat vectors of length (target rank * d) * (source
    rank * d) over Z/p^n; the Howell form makes membership tests and the
    generator choice canonical.
    """

    zpn: object
    target_shape: tuple
    source_shape: tuple
    basis: list
    howell: object
    invariant_factor_orders: list
    size: int
    a_stable: bool
    free_rank_one_over_A: bool
    generator: tuple


def _scalar_ops_flat(A, rank):
    """Flattened multiplication-by-X^b operators on a rank-``rank`` A-module."""
    d = A.d
    ops = []
    for b in range(d):
        xb = tuple(1 if i == b else 0 for i in range(d))
        Mb = Mat(A, [[xb if i == j else A.zero for j in range(rank)] for i in range(rank)])
        ops.append(flatten_A_matrix(A, Mb))
    return ops


def hom_module(source, target):
    """All Z/p^n-linear G-maps source -> target, with the A-structure report.

    Freeness of rank one over A is decided by: the span is closed under
    the coefficient-ring scalars acting on the target, its order is
    p^(n d), and a single Howell basis row generates it over A.
    """
    A = source.ring
    assert target.ring == A
    p, n, d = A.p, A.m, A.d
    zpn = ring(p, n, 1)
    G = source.group
    S_flat = source.flattened()
    T_flat = target.flattened()
    rs = source.rank * d
    rt = target.rank * d
    nunk = rt * rs

    rows = []
    for g in G.generator_indices:
        Sg = S_flat[g]
        Tg = T_flat[g]
        for i in range(rt):
            for j in range(rs):
                row = [zpn.zero] * nunk
                for k in range(rt):
                    row[k * rs + j] = zpn.add(row[k * rs + j], zpn.from_int(int(Tg[i, k])))
                for l in range(rs):
                    row[i * rs + l] = zpn.sub(row[i * rs + l], zpn.from_int(int(Sg[l, j])))
                rows.append(row)
    system = Mat(zpn, rows)
    kern = kernel_generators(system)
    kmat = Mat(zpn, kern) if kern else Mat(zpn, [[zpn.zero] * nunk])
    hf = howell_form(kmat)
    basis = [r for r in hf.form.rows if any(c != zpn.zero for c in r)]
    size = span_size(kmat)
    inv_orders = sorted(
        (p ** (n - v) for _, _, v in hf.pivots if v < n), reverse=True
    )

    scalar_ops = _scalar_ops_flat(A, target.rank)
    a_stable = True
    for h in basis:
        Fh = np.array([int(c[0]) for c in h], dtype=np.int64).reshape(rt, rs)
        for op in scalar_ops:
            moved = (op @ Fh) % zpn.pm
            vec = tuple(zpn.from_int(int(x)) for x in moved.reshape(-1))
            if not in_row_span(hf, vec):
                a_stable = False

    free_rank_one = False
    generator = None
    if a_stable and size == p ** (n * d):
        nonzero_span = {tuple(r) for r in basis}
        for h in basis:
            Fh = np.array([int(c[0]) for c in h], dtype=np.int64).reshape(rt, rs)
            gen_rows = []
            for op in scalar_ops:
                moved = (op @ Fh) % zpn.pm
                gen_rows.append([zpn.from_int(int(x)) for x in moved.reshape(-1)])
            sub_hf = howell_form(Mat(zpn, gen_rows))
            sub_nonzero = {
                tuple(r) for r in sub_hf.form.rows if any(c != zpn.zero for c in r)
            }
            if sub_nonzero == nonzero_span:
                free_rank_one = True
                generator = tuple(h)
                break
    return HomModule(
        zpn=zpn,
        target_shape=(target.rank, d),
        source_shape=(source.rank, d),
        basis=basis,
        howell=hf,
        invariant_factor_orders=inv_orders,
        size=size,
        a_stable=a_stable,
        free_rank_one_over_A=free_rank_one,
        generator=generator,
    )


def hom_as_matrix(hom, vec=None):
    """A basis/generator flat vector as a numpy (rt x rs) integer matrix."""
    rt = hom.target_shape[0] * hom.target_shape[1]
    rs = hom.source_shape[0] * hom.source_shape[1]
    v = vec if vec is not None else hom.generator
    return np.array([int(c[0]) for c in v], dtype=np.int64).reshape(rt, rs)


def psi_injectivity(F, p, n):
    """Is the Z/p^n-linear map with integer matrix F injective?"""
    zpn = ring(p, n, 1)
    A = Mat(zpn, [[zpn.from_int(int(x)) for x in row] for row in F])
    gens = kernel_generators(A)
    return all(all(c == zpn.zero for c in g) for g in gens)


def psi_apply(F, v, A, q):
    """Value of the flat map F at the kernel vector v, as a Mat_q over A.

    v has length q*d (mixed-radix coordinates of K); the output row-major
    flat index (i*q + j)*d + b carries coordinate X^b of matrix entry (i, j).
    """
    d = A.d
    out_flat = (np.asarray(F, dtype=np.int64) @ np.asarray(v, dtype=np.int64)) % A.pm
    rows = []
    for i in range(q):
        row = []
        for j in range(q):
            base = (i * q + j) * d
            row.append(tuple(int(out_flat[base + b]) for b in range(d)))
        rows.append(row)
    return Mat(A, rows)


# ---------------------------------------------------------------------------
# commutation witnesses
# ---------------------------------------------------------------------------


@dataclass
class CommutatorWitness:
    v1: tuple
    v2: tuple
    column: int
    evaluation: tuple  # column of the commutator, a vector not in p V-hat


def commutator_witness(psi_of, A, q, r, p):
    """Search psi images for a pair not commuting mod p.

    ``psi_of`` maps a length-r kernel coordinate vector to a Mat_q over A.
    The standard basis pairs are tried first, then every pair of K-elements
    mod p (the obstruction only depends on K/pK, which is exhaustible).
    Returns None when everything commutes mod p.
    """
    basis = [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)]
    rest = [v for v in itertools.product(range(p), repeat=r) if v not in set(basis)]
    candidates = basis + rest

    def check(v1, v2):
        M1, M2 = psi_of(v1), psi_of(v2)
        C = (M1 @ M2) - (M2 @ M1)
        for j in range(q):
            col = tuple(C.rows[i][j] for i in range(q))
            if any(A.is_unit(x) for x in col):
                return CommutatorWitness(v1, v2, j, col)
        return None

    for v1 in basis:
        for v2 in basis:
            w = check(v1, v2)
            if w is not None:
                return w
    for v1 in candidates:
        for v2 in candidates:
            w = check(v1, v2)
            if w is not None:
                return w
    return None


@dataclass
class ElementaryWitness:
    s_power: int
    f_we: Mat
    f_ws: Mat
    composite_se: tuple
    composite_es: tuple


def paper_witness(G, a, field_ring):
    """The explicit elementary-matrix non-commutation certificate.

    Works in the big residue field model at precision 1.  Requires both a
    collision-free eigenvalue orbit and a unique difference pair (h2, h3)
    with h3 - h2 = a; raises HypothesisFailure otherwise.  The two
    composites on the distinguished basis vector must differ: the first is
    a basis vector, the second is zero.
    """
    ell, q, u, H = G.ell, G.q, G.u, G.H
    if len({(a * h) % ell for h in H}) != q:
        raise HypothesisFailure("eigenvalue exponents collide; condition (a) fails")
    pairs = [(h2, h3) for h2 in H for h3 in H if (h3 - h2) % ell == a % ell]
    if len(pairs) != 1:
        raise HypothesisFailure(
            f"need exactly one ordered pair with h3 - h2 = a; found {len(pairs)}"
        )
    h2, h3 = pairs[0]
    log = {h: j for j, h in enumerate(G.u_pow)}
    h3_inv = pow(h3, -1, ell)
    h2_inv = pow(h2, -1, ell)

    def sigma_log(target):
        t = target % ell
        if t not in log:
            raise HypothesisFailure("value outside the image of nu")
        return log[t]

    R = field_ring

    def f_of(t):
        # f(w_{sigma^t}) sends x_{s2} to x_{s3}, everything else to 0, where
        # nu(s2) = nu(sigma^t) h2^-1 and nu(s3) = nu(sigma^t) h3^-1
        nu_t = G.u_pow[t % q]
        t2 = sigma_log(nu_t * h2_inv)
        t3 = sigma_log(nu_t * h3_inv)
        rows = [[R.zero] * q for _ in range(q)]
        rows[t3][t2] = R.one
        return Mat(R, rows), t2, t3

    j = sigma_log(h2 * h3_inv)
    A_e, e_t2, _ = f_of(0)
    A_s, _, _ = f_of(j)

    # G-equivariance of the whole assignment, checked in flat coordinates
    rep_a = induced_rep_big(G, a, R)
    rep_1 = induced_rep_big(G, 1, R)
    M0 = build_M(rep_1)
    F_cols = []
    for t in range(q):
        Mt, _, _ = f_of(t)
        F_cols.append([Mt.rows[i][jj] for i in range(q) for jj in range(q)])
    F = Mat(R, [[F_cols[t][k] for t in range(q)] for k in range(q * q)])
    for g in G.generator_indices:
        lhs = M0.action[g] @ F
        rhs = F @ rep_a.images[g]
        assert lhs == rhs, "elementary witness map is not G-equivariant"

    x = tuple(R.one if i == e_t2 else R.zero for i in range(q))
    first = (A_s @ A_e).apply(x)
    second = (A_e @ A_s).apply(x)
    assert first != second, "composites must differ"
    assert all(c == R.zero for c in second), "reversed composite must vanish"
    return ElementaryWitness(j, A_e, A_s, first, second)
