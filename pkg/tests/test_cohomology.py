"""H^1 two ways, coboundary solving, cocycle identity validation."""

import numpy as np
import pytest

from defring.cohomology import (
    ActionModule,
    TwoCocycle,
    coboundary_of,
    h1_dim,
    h1_via_inflation,
    inflate_module,
    is_coboundary,
    module_from_flats,
    one_cocycle_space,
)
from defring.errors import ModuleNotInflated, NotGenerating
from defring.groups import make_extension, make_metacyclic
from defring.repn import build_M, descend_rep, module_from_rep
from defring.rings import ring


@pytest.fixture(scope="module")
def s4_setup():
    G = make_metacyclic(3, 2, 2)
    A = ring(2, 1, 1)
    rho = descend_rep(G, 1, A)
    M = build_M(rho)
    m0 = module_from_flats(G, 2, M.flattened())
    tau = rho.images[G.tau].to_int_array()
    sigma = rho.images[G.sigma].to_int_array()
    Gamma = make_extension(G, (2, 1, 2), {"tau": tau, "sigma": sigma})
    m0_gamma = inflate_module(Gamma, m0)
    return G, Gamma, m0, m0_gamma


def test_action_module_validates(s4_setup):
    _, Gamma, m0, m0_gamma = s4_setup
    assert m0.validate()
    assert m0_gamma.validate()
    assert m0.fixed_dim() == 1  # scalars only (End = k)


def test_h1_s4_instance_both_ways(s4_setup):
    _, Gamma, m0, m0_gamma = s4_setup
    fp, k = h1_dim(m0_gamma, Gamma.generator_indices)
    assert (fp, k) == (1, 1)
    assert h1_via_inflation(Gamma, m0) == 1
    assert h1_via_inflation(Gamma, m0_gamma) == 1  # same module given over Gamma
    space = one_cocycle_space(m0_gamma, Gamma.generator_indices)
    assert space.dim_b1 == 3  # 4 - fixed scalars
    assert space.dim_z1 == 4


def test_h1_trivial_modules(s4_setup):
    _, Gamma, _, _ = s4_setup
    # trivial F_2 module: H^1 = Hom(Gamma, F_2); the S4-shaped group has
    # abelianisation Z/2, so dimension 1
    triv2 = ActionModule(Gamma, 2, 1, np.ones((Gamma.order, 1, 1), dtype=np.int64))
    fp, _ = h1_dim(triv2, Gamma.generator_indices)
    assert fp == 1
    # trivial F_3 module: no homomorphisms to an odd group
    triv3 = ActionModule(Gamma, 3, 1, np.ones((Gamma.order, 1, 1), dtype=np.int64))
    fp3, _ = h1_dim(triv3, Gamma.generator_indices)
    assert fp3 == 0


def test_h1_p3_instance_both_ways():
    G = make_metacyclic(8, 2, 3)
    A = ring(3, 1, 1)
    rho1 = descend_rep(G, 1, A)
    rho2 = descend_rep(G, 2, A)
    M = build_M(rho1)
    m0 = module_from_flats(G, 3, M.flattened())
    tau = rho2.images[G.tau].to_int_array()
    sigma = rho2.images[G.sigma].to_int_array()
    Gamma = make_extension(G, (3, 1, 2), {"tau": tau, "sigma": sigma})
    assert Gamma.order == 144
    fp, k = h1_dim(inflate_module(Gamma, m0), Gamma.generator_indices)
    assert (fp, k) == (1, 1)
    assert h1_via_inflation(Gamma, m0) == 1


def test_h1_multiplicity_two_for_degenerate_twist():
    # a = 0 fails the uniqueness condition with multiplicity 2, and the
    # inflation formula then gives a two-dimensional H^1
    G = make_metacyclic(8, 2, 3)
    A = ring(3, 1, 1)
    rho1 = descend_rep(G, 1, A)
    m0 = module_from_flats(G, 3, build_M(rho1).flattened())
    Gamma0 = make_extension(G, (3, 1, 2), {"tau": [[1, 0], [0, 1]], "sigma": [[0, 1], [1, 0]]})
    assert h1_via_inflation(Gamma0, m0) == 2
    fp, k = h1_dim(inflate_module(Gamma0, m0), Gamma0.generator_indices)
    assert (fp, k) == (2, 2)


def test_h1_trivial_kernel_gives_zero(s4_setup):
    G, _, m0, _ = s4_setup
    # literally trivial K (rank 0): no nonzero homomorphisms out of it
    Z = np.zeros((0, 0), dtype=np.int64)
    Gamma0 = make_extension(G, (2, 1, 0), {"tau": Z, "sigma": Z})
    assert h1_via_inflation(Gamma0, m0) == 0
    # K = Z/2 with trivial action: equivariant maps K -> M_0 are the
    # G-fixed vectors of M_0, the scalars
    Gamma1 = make_extension(G, (2, 1, 1), {"tau": [[1]], "sigma": [[1]]})
    assert h1_via_inflation(Gamma1, m0) == 1


def test_module_not_inflated_error(s4_setup):
    G, Gamma, _, _ = s4_setup
    # the module K itself (via delta mod p) is not inflated: K acts... K is
    # abelian so K acts trivially on itself; use a faithful Gamma-module
    # instead: the regular-ish action through delta twisted by pi fails for
    # a module where kernel elements act nontrivially.  Build one directly.
    act = np.stack(
        [np.eye(2, dtype=np.int64) for _ in range(Gamma.order)]
    )
    e1 = Gamma.generator_indices[0]
    act[e1] = np.array([[1, 1], [0, 1]])
    bad = ActionModule(Gamma, 2, 2, act)
    with pytest.raises(ModuleNotInflated):
        h1_via_inflation(Gamma, bad)


def test_not_generating(s4_setup):
    _, Gamma, _, m0_gamma = s4_setup
    with pytest.raises(NotGenerating):
        h1_dim(m0_gamma, [Gamma.generator_indices[0]])


def test_random_coboundaries_are_solvable(s4_setup):
    _, Gamma, _, m0_gamma = s4_setup
    rng = np.random.default_rng(7)
    for _ in range(100):
        c = rng.integers(0, 2, size=(Gamma.order, 4))
        c[Gamma.identity] = 0
        table = coboundary_of(m0_gamma, c)
        o = TwoCocycle(m0_gamma, table)
        assert o.validate_identity()
        w = is_coboundary(o, Gamma.generator_indices)
        assert w is not None
        assert np.array_equal(coboundary_of(m0_gamma, w), table)


def test_zero_cocycle_solvable(s4_setup):
    _, Gamma, _, m0_gamma = s4_setup
    o = TwoCocycle(m0_gamma, np.zeros((24, 24, 4), dtype=np.int64))
    w = is_coboundary(o, Gamma.generator_indices)
    assert w is not None
    # the witness is itself a cocycle shift of zero: dc = 0
    assert not np.any(coboundary_of(m0_gamma, w) % 2)


def test_corrupted_table_fails_identity(s4_setup):
    _, Gamma, _, m0_gamma = s4_setup
    rng = np.random.default_rng(3)
    c = rng.integers(0, 2, size=(Gamma.order, 4))
    table = coboundary_of(m0_gamma, c)
    g, h = 3, 5
    table[g, h, 0] = (table[g, h, 0] + 1) % 2
    o = TwoCocycle(m0_gamma, table)
    assert not o.validate_identity()


def test_validate_identity_sampled_path():
    # order > 300 exercises the generator-restricted + random-sample branch
    G = make_metacyclic(3, 2, 2)
    Gamma = make_extension(G, (2, 3, 2), {"tau": [[0, 7], [1, 7]], "sigma": [[1, 7], [0, 7]]})
    assert Gamma.order == 384
    triv = ActionModule(Gamma, 2, 1, np.ones((Gamma.order, 1, 1), dtype=np.int64))
    rng = np.random.default_rng(11)
    c = rng.integers(0, 2, size=(Gamma.order, 1))
    c[Gamma.identity] = 0
    table = coboundary_of(triv, c)
    o = TwoCocycle(triv, table)
    assert o.validate_identity()
    w = is_coboundary(o, Gamma.generator_indices)
    assert w is not None
