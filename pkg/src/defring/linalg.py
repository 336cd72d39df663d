"""Exact dense linear algebra over GR(p^m, d) and fast elimination over F_p.

Matrices over a Galois ring carry the ring object and store rows of value
tuples.  Because GR(p^m, d) is a chain ring (every element is a unit times
a power of p), row reduction only ever needs valuations, unit inverses and
exact division by powers of p.

The canonical form for row spans is the Howell normal form: echelon shape,
pivots normalised to p^v, entries above a pivot reduced mod p^v, and the
span closed under the "shadow" rows p^(m-v) * row (which is what makes
greedy reduction a complete membership test over Z/p^m, unlike plain
echelon form).  Two matrices have equal row spans iff their Howell forms
are identical, which is what Hom-module and cocycle computations rely on.
Smith-style invariant factors are provided separately for module readouts.

The F_p helpers at the bottom run vectorised Gaussian elimination on numpy
integer arrays; all arithmetic is exact (explicit mod p, no floats).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rings import GaloisRingElement

# ---------------------------------------------------------------------------
# matrices over a Galois ring
# ---------------------------------------------------------------------------


class Mat:
    """Immutable dense matrix over a GaloisRing; entries are value tuples."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_ints(cls, ring, int_rows):
        return cls(ring, [[ring.from_int(c) for c in row] for row in int_rows])

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, r, c):
        return cls(ring, [[ring.zero] * c for _ in range(r)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j):
        return GaloisRingElement(self.ring, self.rows[i][j])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __add__(self, other):
        R = self.ring
        return Mat(R, [[R.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        R = self.ring
        return Mat(R, [[R.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        R = self.ring
        return Mat(R, [[R.neg(a) for a in row] for row in self.rows])

    def __matmul__(self, other):
        R = self.ring
        n, k, m = self.nrows, self.ncols, other.ncols
        if other.nrows != k:
            raise ValueError("dimension mismatch")
        bt = list(zip(*other.rows))
        out = []
        for i in range(n):
            ri = self.rows[i]
            out.append([_dot(R, ri, bt[j]) for j in range(m)])
        return Mat(R, out)

    def scalar(self, s):
        R = self.ring
        return Mat(R, [[R.mul(s, a) for a in row] for row in self.rows])

    def transpose(self):
        return Mat(self.ring, list(zip(*self.rows)))

    def apply(self, vec):
        """Matrix times column vector (tuple of values)."""
        R = self.ring
        return tuple(_dot(R, row, vec) for row in self.rows)

    def to_int_array(self):
        """numpy array of the d = 1 integer values (requires ring.d == 1)."""
        if self.ring.d != 1:
            raise ValueError("integer view only exists for residue degree 1")
        return np.array([[c[0] for c in row] for row in self.rows], dtype=np.int64)

    def __repr__(self):
        return f"Mat({self.ring}, {self.nrows}x{self.ncols})"


def _dot(R, xs, ys):
    acc = R.zero
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


def mat_inv(M):
    """Inverse of a square matrix over the chain ring (unit pivots exist iff invertible)."""
    R = M.ring
    n = M.nrows
    work = [list(row) + [R.one if i == j else R.zero for j in range(n)] for i, row in enumerate(M.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if R.is_unit(work[i][c])), None)
        if piv is None:
            raise ZeroDivisionError("matrix is not invertible over the local ring")
        work[c], work[piv] = work[piv], work[c]
        inv = R.unit_inv(work[c][c])
        work[c] = [R.mul(inv, v) for v in work[c]]
        for i in range(n):
            if i != c and work[i][c] != R.zero:
                f = work[i][c]
                work[i] = [R.sub(v, R.mul(f, w)) for v, w in zip(work[i], work[c])]
    return Mat(R, [row[n:] for row in work])


# ---------------------------------------------------------------------------
# Howell normal form
# ---------------------------------------------------------------------------


@dataclass
class HowellForm:
    """Howell form H = U @ (M padded with zero rows), with U unimodular.

    ``pivots`` lists (row, col, valuation); nonzero rows come first, with
    strictly increasing pivot columns.
    """

    form: Mat
    transform: Mat
    pivots: list


def howell_form(M):
    """Canonical Howell normal form of the row span of M over GR(p^m, d).

    Returns a HowellForm whose ``form`` has nrows(M) + ncols(M) rows (zero
    rows pad the bottom; shadows may occupy some of them) and whose square
    unimodular ``transform`` satisfies transform @ vstack(M, 0) = form.
    Only elementary row operations are used, so the transform stays
    unimodular throughout.
    """
    R = M.ring
    n = M.ncols
    s = M.nrows
    rows = []
    for i in range(s + n):
        data = list(M.rows[i]) if i < s else [R.zero] * n
        u = [R.one if j == i else R.zero for j in range(s + n)]
        rows.append(data + u)

    pivot_at = {}  # data column -> row index holding its pivot
    pivot_val = {}  # row index -> pivot valuation
    spare = list(range(s, s + n))  # padding rows available for shadow installs

    def normalise(i, col):
        v = R.valuation(rows[i][col])
        pv = R.p**v
        unit = tuple((c // pv) % R.pm for c in rows[i][col])
        inv = R.unit_inv(unit)
        rows[i] = [R.mul(inv, x) for x in rows[i]]
        pivot_val[i] = v
        return v

    def reduce_row(i):
        """Clear row i against installed pivots; install it when it meets an
        empty column or beats an existing pivot's valuation.  Returns the
        column where it got installed, or None if it reduced to zero data."""
        while True:
            lead = next((c for c in range(n) if rows[i][c] != R.zero), None)
            if lead is None:
                return None
            v = R.valuation(rows[i][lead])
            holder = pivot_at.get(lead)
            if holder is None:
                normalise(i, lead)
                pivot_at[lead] = i
                return lead
            hv = pivot_val[holder]
            if v < hv:
                rows[i], rows[holder] = rows[holder], rows[i]
                normalise(holder, lead)
                continue  # the displaced pivot row keeps reducing as row i
            pv = R.p**hv
            q = tuple((c // pv) % R.pm for c in rows[i][lead])
            rows[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(rows[i], rows[holder])]

    for i in range(s):
        reduce_row(i)

    # shadow closure: p^(m-v) times a pivot row stays in the span; install
    # whatever part of it is not yet reachable, until nothing new appears.
    # A shadow that reduces to zero data leaves its carrier row reusable
    # (zero data part; the transform tail it accumulated is harmless).
    changed = True
    while changed:
        changed = False
        for col in sorted(pivot_at):
            i = pivot_at[col]
            v = pivot_val[i]
            if v == 0:
                continue
            if not spare:
                raise AssertionError("howell padding exhausted")  # unreachable
            j = spare[0]
            shift = R.from_int(R.p ** (R.m - v))
            rows[j] = [R.add(x, R.mul(shift, y)) for x, y in zip(rows[j], rows[i])]
            if reduce_row(j) is not None:
                spare.pop(0)
                changed = True

    order = sorted(pivot_at.items())
    pivot_rows = [i for _, i in order]
    rest = [i for i in range(s + n) if i not in set(pivot_rows)]
    new_rows = [rows[i] for i in pivot_rows + rest]

    # reduce entries above each pivot mod p^v, processing pivots left to right
    pivots = []
    for rank_pos, (col, old_i) in enumerate(order):
        v = pivot_val[old_i]
        pivots.append((rank_pos, col, v))
        pv = R.p**v
        for i in range(rank_pos):
            e = new_rows[i][col]
            if e == R.zero:
                continue
            rem = tuple(c % pv for c in e)
            q = tuple(((c - rc) // pv) % R.pm for c, rc in zip(e, rem))
            if q != R.zero:
                new_rows[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(new_rows[i], new_rows[rank_pos])]

    H = Mat(R, [row[:n] for row in new_rows])
    U = Mat(R, [row[n:] for row in new_rows])
    return HowellForm(H, U, pivots)


def row_span_elements(M):
    """Every element of the row span (for small oracles only)."""
    R = M.ring
    span = {(R.zero,) * M.ncols}
    frontier = [(R.zero,) * M.ncols]
    while frontier:
        nxt = []
        for v in frontier:
            for row in M.rows:
                w = tuple(R.add(a, b) for a, b in zip(v, row))
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return span


# ---------------------------------------------------------------------------
# linear solving over the chain ring
# ---------------------------------------------------------------------------


@dataclass
class LinearSolution:
    """A particular solution together with a generating set of the kernel."""

    particular: tuple
    kernel: list


def solve_linear(A, b):
    """Solve A @ x = b over GR(p^m, d); None when the system is unsolvable.

    The kernel generators span {x : A @ x = 0} as a module.  Completeness
    follows from the Howell property of the reduced augmented system.
    """
    R = A.ring
    r, c = A.nrows, A.ncols
    if len(b) != r:
        raise ValueError("dimension mismatch")
    if r == 0:
        basis = [tuple(R.one if j == i else R.zero for j in range(c)) for i in range(c)]
        return LinearSolution((R.zero,) * c, basis)
    aug = Mat(R, [list(col) + [R.one if j == i else R.zero for j in range(c)]
                  for i, col in enumerate(zip(*A.rows))])
    hf = howell_form(aug)
    H = hf.form
    first_piv = {}
    for row_i, col, v in hf.pivots:
        if col < r:
            first_piv[col] = (row_i, v)
    kernel = []
    for i in range(H.nrows):
        data, u = H.rows[i][:r], H.rows[i][r:]
        if all(x == R.zero for x in data) and any(x != R.zero for x in u):
            kernel.append(tuple(u))
    work = list(b)
    x = [R.zero] * c
    for col in range(r):
        e = work[col]
        if e == R.zero:
            continue
        if col not in first_piv:
            return None
        row_i, v = first_piv[col]
        ev = R.valuation(e)
        if ev < v:
            return None
        pv = R.p**v
        q = tuple((cc // pv) % R.pm for cc in e)
        hrow = H.rows[row_i]
        for j in range(col, r):
            work[j] = R.sub(work[j], R.mul(q, hrow[j]))
        for j in range(c):
            x[j] = R.add(x[j], R.mul(q, hrow[r + j]))
    if any(w != R.zero for w in work):
        return None
    return LinearSolution(tuple(x), kernel)


def kernel_generators(A):
    """Generators of {x : A @ x = 0}."""
    sol = solve_linear(A, (A.ring.zero,) * A.nrows)
    return sol.kernel


def smith_invariants(M):
    """Valuations (v_1 <= v_2 <= ...) of the nonzero Smith invariant factors p^v."""
    R = M.ring
    work = [list(row) for row in M.rows]
    r = len(work)
    c = len(work[0]) if work else 0
    out = []
    k = 0
    while k < min(r, c):
        best = None
        for i in range(k, r):
            for j in range(k, c):
                v = R.valuation(work[i][j])
                if v < R.m and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        work[k], work[bi] = work[bi], work[k]
        for row in work:
            row[k], row[bj] = row[bj], row[k]
        pv = R.p**v
        unit = tuple((cc // pv) % R.pm for cc in work[k][k])
        inv = R.unit_inv(unit)
        work[k] = [R.mul(inv, x) for x in work[k]]
        for i in range(r):
            if i != k and work[i][k] != R.zero:
                q = tuple((cc // pv) % R.pm for cc in work[i][k])
                work[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(work[i], work[k])]
        for j in range(k + 1, c):
            e = work[k][j]
            if e != R.zero:
                q = tuple((cc // pv) % R.pm for cc in e)
                for i in range(r):
                    work[i][j] = R.sub(work[i][j], R.mul(q, work[i][k]))
        out.append(v)
        k += 1
    return out


def span_size(M):
    """Order of the row span as a finite module, from the Howell pivots."""
    hf = howell_form(M)
    size = 1
    for _, _, v in hf.pivots:
        size *= M.ring.p ** ((M.ring.m - v) * M.ring.d)
    return size


def in_row_span(hf, vec):
    """Membership of vec in the row span captured by a HowellForm."""
    R = hf.form.ring
    n = hf.form.ncols
    work = list(vec)
    piv = {col: (row_i, v) for row_i, col, v in hf.pivots}
    for col in range(n):
        e = work[col]
        if e == R.zero:
            continue
        if col not in piv:
            return False
        row_i, v = piv[col]
        if R.valuation(e) < v:
            return False
        pv = R.p**v
        q = tuple((cc // pv) % R.pm for cc in e)
        hrow = hf.form.rows[row_i]
        for j in range(col, n):
            work[j] = R.sub(work[j], R.mul(q, hrow[j]))
    return all(w == R.zero for w in work)


# ---------------------------------------------------------------------------
# fast exact elimination over F_p (numpy, integer arithmetic only)
# ---------------------------------------------------------------------------


def rref_fp(A, p):
    """Reduced row echelon form mod p; returns (R, pivot column list)."""
    A = np.asarray(A, dtype=np.int64) % p
    A = A.copy()
    nr, nc = A.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        sub = A[r:, c]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        A -= np.outer(col, A[r])
        A %= p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_fp(A, p):
    return len(rref_fp(A, p)[1])


def nullspace_fp(A, p):
    """Basis (rows) of {x : A x = 0 mod p}."""
    A = np.asarray(A, dtype=np.int64)
    nc = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(nc, dtype=np.int64)
    R, pivots = rref_fp(A, p)
    free = [c for c in range(nc) if c not in pivots]
    basis = np.zeros((len(free), nc), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, fc]) % p
    return basis


def solve_fp(A, b, p):
    """One solution of A x = b mod p, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.size == 0:
        return None if np.any(b % p) else np.zeros(A.shape[1], dtype=np.int64)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref_fp(aug, p)
    nc = A.shape[1]
    if nc in pivots:
        return None
    x = np.zeros(nc, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, nc]
    return x
