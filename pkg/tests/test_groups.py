"""Metacyclic groups and their abelian-kernel extensions."""

import random

import numpy as np
import pytest

from defring.errors import BadAction, RelationViolation
from defring.groups import ExtensionGroup, group_checks, make_extension, make_metacyclic


def test_make_metacyclic_s3():
    G = make_metacyclic(3, 2, 2)
    assert G.order == 6
    rep = group_checks(G)
    assert rep["ok"]
    # S3 fingerprint: orders {1:1, 2:3, 3:2}
    assert rep["element_order_multiset"] == {1: 1, 2: 3, 3: 2}
    assert not rep["abelian"]


def test_make_metacyclic_ell8():
    G = make_metacyclic(8, 2, 3)
    assert G.order == 16
    assert G.H == [1, 3]
    assert group_checks(G)["ok"]


def test_make_metacyclic_bad_action():
    with pytest.raises(BadAction):
        make_metacyclic(8, 2, 1)
    with pytest.raises(BadAction):
        make_metacyclic(8, 2, 2)  # gcd(2,8) != 1


def test_conjugation_relation():
    G = make_metacyclic(8, 2, 3)
    t, s = G.tau, G.sigma
    lhs = G.mult[G.mult[s, t], G.inv[s]]
    tu = t
    for _ in range(G.u - 1):
        tu = G.mult[tu, t]
    assert int(lhs) == int(tu)


def test_tau_subgroup_normal():
    for ell, q, u in [(3, 2, 2), (8, 2, 3), (5, 4, 2)]:
        G = make_metacyclic(ell, q, u)
        sub = set()
        x = G.identity
        for _ in range(ell):
            x = int(G.mult[x, G.tau])
            sub.add(x)
        assert len(sub) == ell
        for g in range(G.order):
            for h in sub:
                assert int(G.mult[int(G.mult[g, h]), int(G.inv[g])]) in sub


def test_direct_product_trivial_action():
    G = make_metacyclic(3, 2, 2)
    Gamma = make_extension(G, (5, 1, 1), {"tau": [[1]], "sigma": [[1]]})
    assert Gamma.order == 5 * 6
    rep = group_checks(Gamma)
    assert rep["ok"]
    assert rep["projection"]["kernel_size"] == 5


def test_s4_instance():
    # S3 acting on (Z/2)^2 through its two-dimensional representation over F_2
    G = make_metacyclic(3, 2, 2)
    tau = [[0, 1], [1, 1]]
    sigma = [[1, 1], [0, 1]]
    Gamma = make_extension(G, (2, 1, 2), {"tau": tau, "sigma": sigma})
    assert Gamma.order == 24
    rep = group_checks(Gamma)
    assert rep["ok"]
    assert rep["element_order_multiset"] == {1: 1, 2: 9, 3: 8, 4: 6}
    assert rep["projection"]["homomorphism_ok"]
    assert rep["projection"]["kernel_size"] == 4


def test_relation_violation_detected():
    G = make_metacyclic(3, 2, 2)
    # sigma = identity conjugates tau to itself, but the relation needs tau^2
    with pytest.raises(RelationViolation):
        make_extension(G, (2, 1, 2), {"tau": [[0, 1], [1, 1]], "sigma": [[1, 0], [0, 1]]})
    with pytest.raises(RelationViolation):
        make_extension(G, (2, 1, 2), {"tau": [[0, 1], [1, 1]], "sigma": [[0, 0], [0, 1]]})


def test_extension_group_multiplication_law():
    G = make_metacyclic(3, 2, 2)
    tau = np.array([[0, 1], [1, 1]])
    sigma = np.array([[1, 1], [0, 1]])
    Gamma = make_extension(G, (2, 1, 2), {"tau": tau, "sigma": sigma})
    rng = random.Random(4)
    for _ in range(200):
        i, j = rng.randrange(24), rng.randrange(24)
        vi, vj = Gamma.k_part(i), Gamma.k_part(j)
        gi, gj = Gamma.pi(i), Gamma.pi(j)
        A = np.asarray(Gamma.action[gi])
        v = tuple((a + b) % 2 for a, b in zip(vi, (A @ np.array(vj)) % 2))
        expected = Gamma.index_of(v, int(G.mult[gi, gj]))
        assert int(Gamma.mult[i, j]) == expected


def test_inverse_formula():
    G = make_metacyclic(8, 2, 3)
    # (Z/3)^2 with an order-8 tau action: use the companion of x^2 - tx - 1
    # with t^2 = -2 mod 3 => t = 1: x^2 - x - 1 -> companion [[0,1],[1,1]]
    tau = [[0, 1], [1, 1]]
    A = np.array(tau)
    # sigma realises x -> x^3 mod f: it fixes 1 and sends x to the coords of x^3
    x3 = (A @ A @ A) % 3
    sigma = np.column_stack([np.array([1, 0]), (x3 @ np.array([1, 0])) % 3])
    Gamma = make_extension(G, (3, 1, 2), {"tau": tau, "sigma": sigma.tolist()})
    assert Gamma.order == 144
    assert group_checks(Gamma)["ok"]


def test_sampled_associativity_for_larger_group():
    G = make_metacyclic(3, 2, 2)
    Gamma = make_extension(G, (2, 3, 2), {"tau": [[0, 7], [1, 7]], "sigma": [[1, 7], [0, 7]]})
    assert Gamma.order == 384
    rep = group_checks(Gamma)
    assert rep["associativity"]["mode"] == "sampled-100000"
    assert rep["ok"]


def test_element_indexing_round_trip():
    G = make_metacyclic(3, 2, 2)
    Gamma = make_extension(G, (2, 2, 2), {"tau": [[0, 3], [1, 3]], "sigma": [[1, 3], [0, 3]]})
    for i in range(Gamma.order):
        assert Gamma.index_of(Gamma.k_part(i), Gamma.pi(i)) == i
