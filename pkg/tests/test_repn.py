"""Induced representations, companion descent, characters, Hom modules."""

import numpy as np
import pytest

from defring.cyclotomic import CyclotomicSum, cyc_equal_in_zeta, cyc_sum
from defring.errors import HypothesisFailure, NoRootOfUnity, NotDescendable
from defring.groups import make_metacyclic
from defring.linalg import Mat, rank_fp
from defring.repn import (
    build_M,
    char_of_induced,
    commutator_witness,
    descend_rep,
    flatten_A_matrix,
    hom_as_matrix,
    hom_module,
    induced_rep_big,
    module_from_rep,
    multiplicity_by_character,
    paper_witness,
    psi_apply,
    psi_injectivity,
    reduce_rep,
)
from defring.rings import ring


@pytest.fixture(scope="module")
def s3():
    return make_metacyclic(3, 2, 2)


@pytest.fixture(scope="module")
def g16():
    return make_metacyclic(8, 2, 3)


def test_induced_rep_big_s3(s3):
    big = ring(2, 1, 2)
    rep = induced_rep_big(s3, 1, big)
    assert rep.verify()
    tau = rep.images[s3.tau]
    # diagonal with the two primitive cube roots of unity
    z1 = tau.rows[0][0]
    z2 = tau.rows[1][1]
    assert big.pow(z1, 3) == big.one and z1 != big.one
    assert big.mul(z1, z2) == big.one  # z2 = z1^2 = z1^-1
    sigma = rep.images[s3.sigma]
    assert sigma.rows[0][1] == big.one and sigma.rows[1][0] == big.one


def test_induced_rep_trivial_character(s3):
    big = ring(2, 1, 2)
    rep = induced_rep_big(s3, 0, big)
    tau = rep.images[s3.tau]
    assert tau == Mat.identity(big, 2)


def test_induced_rep_order_of_tau_image(g16):
    big = ring(3, 1, 2)
    rep = induced_rep_big(g16, 2, big)
    tau = rep.images[g16.tau]
    acc, order = tau, 1
    eye = Mat.identity(big, 2)
    while acc != eye:
        acc = acc @ tau
        order += 1
    assert order == 4  # zeta_8^2 has order 4


def test_no_root_of_unity_error(s3):
    with pytest.raises(NoRootOfUnity):
        induced_rep_big(s3, 1, ring(2, 1, 1))


def test_char_of_induced_s3(s3):
    chi = char_of_induced(s3, 1)
    at_tau = chi.values[s3.tau]
    assert cyc_equal_in_zeta(at_tau, CyclotomicSum.constant(3, -1))
    assert cyc_equal_in_zeta(chi.values[s3.identity], CyclotomicSum.constant(3, 2))
    assert cyc_equal_in_zeta(chi.values[s3.sigma], CyclotomicSum.zero(3))


def test_char_of_induced_ell8(g16):
    chi = char_of_induced(g16, 2)
    at_tau = chi.values[g16.tau]
    assert at_tau.coeffs == cyc_sum(8, [2, 6]).coeffs
    assert cyc_equal_in_zeta(at_tau, CyclotomicSum.zero(8))


def test_descend_rep_s3_integer_model(s3):
    for m in (1, 2, 3):
        R = ring(2, m, 1)
        rep = descend_rep(s3, 1, R)
        tau = rep.images[s3.tau].to_int_array() % 2
        # companion of x^2 + x + 1 mod 2
        assert tau.tolist() == [[0, 1], [1, 1]]
        # the same rational-integer f = x^2 + x + 1 appears over every base
        R5 = ring(5, m, 1)
        rep5 = descend_rep(s3, 1, R5)
        assert rep5.verify()
        pm = 5**m
        assert rep5.images[s3.tau].to_int_array().tolist() == [[0, pm - 1], [1, pm - 1]]


def test_descend_rep_ell8_coefficients(g16):
    # f = x^2 - (zeta + zeta^3) x + zeta^4 with both coefficients in Z_3
    R = ring(3, 2, 1)
    rep = descend_rep(g16, 1, R)
    tau = rep.images[g16.tau]
    # companion of x^2 - t x - 1: column 1 is (0, 1), column 2 is (1, t)
    c0 = tau.rows[0][1]
    t = tau.rows[1][1]
    assert c0 == (1,)  # -zeta^4 = 1
    # t = zeta + zeta^3 satisfies t^2 = -2
    assert R.mul(t, t) == R.from_int(-2)


def test_descend_rep_a2_ell8(g16):
    R = ring(3, 2, 1)
    rep = descend_rep(g16, 2, R)
    assert rep.verify()
    tau = rep.images[g16.tau]
    acc, order = tau, 1
    eye = Mat.identity(R, 2)
    while acc != eye:
        acc = acc @ tau
        order += 1
    assert order == 4


def test_descend_rep_rejects_colliding_exponents(g16):
    with pytest.raises(HypothesisFailure):
        descend_rep(g16, 4, ring(3, 2, 1))  # 4*1 = 4 = 4*3 mod 8


def test_descend_rep_not_descendable():
    # ell = 5, p = 2: the character field is F_4, so degree-1 descent fails
    G = make_metacyclic(5, 2, 4)
    with pytest.raises(NotDescendable):
        descend_rep(G, 1, ring(2, 2, 1))
    rep = descend_rep(G, 1, ring(2, 2, 2))
    assert rep.verify()


def test_build_M_properties(s3):
    A = ring(2, 1, 1)
    rho = descend_rep(s3, 1, A)
    M = build_M(rho)
    assert M.rank == 4
    assert M.action[s3.identity] == Mat.identity(A, 4)
    # trace is G-equivariant onto the trivial module: act(g) preserves
    # the trace functional, i.e. columns of act(g) have the same trace
    for g in range(s3.order):
        act = M.action[g]
        for j in range(4):
            col = [act.rows[i][j] for i in range(4)]
            trace = A.add(col[0], col[3])
            expected = A.one if j in (0, 3) else A.zero
            assert trace == expected


def test_multiplicity_examples(s3, g16):
    mult, S = multiplicity_by_character(g16, 2, 3)
    assert (mult, len(S)) == (1, 2)
    mult, S = multiplicity_by_character(s3, 1, 5)
    assert mult == 1
    mult, S = multiplicity_by_character(s3, 0, 5)
    assert (mult, len(S)) == (2, 4)


def test_hom_module_endomorphisms_of_v_hat(s3):
    for n in (1, 2):
        A = ring(2, n, 1)
        rho = descend_rep(s3, 1, A)
        V = module_from_rep(rho)
        end = hom_module(V, V)
        assert end.free_rank_one_over_A
        assert end.size == 2**n
        assert end.a_stable


def test_hom_module_psi_s4_instance(s3):
    A = ring(2, 1, 1)
    rho = descend_rep(s3, 1, A)
    V = module_from_rep(rho)
    M = build_M(rho)
    hom = hom_module(V, M)
    assert hom.free_rank_one_over_A
    assert hom.size == 2
    F = hom_as_matrix(hom)
    assert psi_injectivity(F, 2, 1)
    # the image of psi must not contain the identity matrix mod p:
    # rank over F_2 of [images | vec(I)] exceeds the image rank
    vecI = np.array([1, 0, 0, 1])
    cols = F.T  # rows = images of basis vectors, flattened
    aug = np.vstack([cols, vecI])
    assert rank_fp(aug, 2) == rank_fp(cols, 2) + 1


def test_hom_module_p3_instance(g16):
    A = ring(3, 1, 1)
    rho1 = descend_rep(g16, 1, A)
    rho2 = descend_rep(g16, 2, A)
    M = build_M(rho1)
    V2 = module_from_rep(rho2)
    hom = hom_module(V2, M)
    assert hom.free_rank_one_over_A
    assert hom.size == 3
    assert psi_injectivity(hom_as_matrix(hom), 3, 1)


def test_hom_module_zero_case(s3):
    # no common constituent: V(theta) against the trivial one-dimensional module
    A = ring(2, 1, 1)
    rho = descend_rep(s3, 1, A)
    V = module_from_rep(rho)
    triv = module_from_rep(
        type(rho)(s3, A, 1, tuple(Mat.identity(A, 1) for _ in range(s3.order)))
    )
    hom = hom_module(V, triv)
    assert hom.size == 1
    assert hom.basis == []


def test_multiplicity_matches_hom_dimension(s3, g16):
    # character count = dim_k Hom at n = 1, for irreducible twists
    for G, p in ((s3, 2), (g16, 3)):
        A = ring(p, 1, 1)
        rho1 = descend_rep(G, 1, A)
        M = build_M(rho1)
        for a in range(1, G.ell):
            if len({(a * h) % G.ell for h in G.H}) != G.q:
                continue
            mult, _ = multiplicity_by_character(G, a, p)
            rho_a = descend_rep(G, a, A)
            hom = hom_module(module_from_rep(rho_a), M)
            dim_fp = len(hom.basis)
            assert dim_fp == mult  # d = 1 in both families


def test_psi_apply_shapes(s3):
    A = ring(2, 2, 1)
    rho = descend_rep(s3, 1, A)
    V = module_from_rep(rho)
    M = build_M(rho)
    hom = hom_module(V, M)
    F = hom_as_matrix(hom)
    img = psi_apply(F, (1, 0), A, 2)
    assert img.nrows == 2 and img.ncols == 2


def test_commutator_witness_s4(s3):
    A = ring(2, 1, 1)
    rho = descend_rep(s3, 1, A)
    V = module_from_rep(rho)
    M = build_M(rho)
    hom = hom_module(V, M)
    F = hom_as_matrix(hom)
    w = commutator_witness(lambda v: psi_apply(F, v, A, 2), A, 2, 2, 2)
    assert w is not None
    assert any(A.is_unit(c) for c in w.evaluation)


def test_commutator_witness_scalar_map_has_none(s3):
    A = ring(2, 1, 1)

    def scalar_psi(v):
        c = A.from_int(int(sum(v)) % 2)
        return Mat(A, [[c, A.zero], [A.zero, c]])

    assert commutator_witness(scalar_psi, A, 2, 2, 2) is None


def test_paper_witness_p3(g16):
    w = paper_witness(g16, 2, ring(3, 1, 2))
    assert w.composite_es == (ring(3, 1, 2).zero,) * 2
    assert w.composite_se != w.composite_es


def test_paper_witness_p5():
    G = make_metacyclic(3, 2, 2)
    w = paper_witness(G, 1, ring(5, 1, 2))
    assert w.composite_se != w.composite_es


def test_paper_witness_degenerate(s3):
    with pytest.raises(HypothesisFailure):
        paper_witness(s3, 0, ring(5, 1, 2))


def test_flatten_A_matrix_d2():
    A = ring(2, 2, 2)
    x = (0, 1)
    M = Mat(A, [[x]])
    flat = flatten_A_matrix(A, M)
    # multiplication by X on basis {1, X} with X^2 = -(poly low part)
    g = A.defining_poly
    assert flat[:, 0].tolist() == [0, 1]  # X * 1 = X
    expected = [(-g[0]) % 4, (-g[1]) % 4]
    assert flat[:, 1].tolist() == expected  # X * X = -g0 - g1 X


def test_reduce_rep(s3):
    R3 = ring(2, 3, 1)
    rep = descend_rep(s3, 1, R3)
    red = reduce_rep(rep, ring(2, 1, 1))
    assert red.verify()
    assert red.images[s3.tau].to_int_array().tolist() == [[0, 1], [1, 1]]
