import numpy as np
import pytest

from sp8local import ff, tensor


def key_eq(a, b):
    return ff.key(a) == ff.key(b)


def order_of(m):
    n = 1
    x = m
    while not key_eq(x, ff.identity(8)):
        x = ff.mat_mul(x, m, 3)
        n += 1
    return n


def test_generator_orders():
    g = tensor.named_generators()
    assert order_of(g["d1"]) == 3
    assert order_of(g["d2"]) == 3
    assert order_of(g["d3"]) == 3
    assert order_of(g["sigma"]) == 2
    assert order_of(g["pi"]) == 2
    assert order_of(g["tau"]) == 3
    assert order_of(g["q8a_1"]) == 4


def test_permutation_lift_moves_factors():
    g = tensor.named_generators()
    tau = g["tau"]
    d1 = g["d1"]
    conj = ff.mat_mul(ff.mat_mul(ff.mat_inv(tau, 3), d1, 3), tau, 3)
    middle = tensor.lift_base_triple(tensor.I2, tensor.D_MAT, tensor.I2)
    assert key_eq(conj, middle)


def test_pi_swaps_first_two_factors():
    pi = tensor.named_generators()["pi"]
    efe = tensor.basis_vector("efe")
    fee = tensor.basis_vector("fee")
    assert np.array_equal(ff.mat_mul(efe.reshape(1, -1), pi, 3)[0], fee)


def test_generators_are_symplectic_similitudes():
    form = tensor.tensor_form()
    for name, g in tensor.named_generators().items():
        lam = form.similitude_factor(g)
        assert lam in (1, 2), name
        assert (lam == 2) == (name == "m3"), name


def test_r_central_product_structure():
    r = tensor.build_r()
    assert r.order == 128
    assert len(r.involutions()) == 55
    assert r.center().order == 2
    # the three quaternion factors share their central involution
    g = tensor.named_generators()
    minus = ff.fmat(-np.eye(8, dtype=np.int64), 3)
    assert key_eq(g["sigma"], minus)
    for name in ("q8a_1", "q8a_2", "q8a_3", "q8b_1"):
        assert key_eq(ff.mat_pow(g[name], 2, 3), minus)


def test_fixed_and_commutator_space_dims():
    g = tensor.named_generators()
    assert tensor.fixed_space(g["d1"]).dim == 4
    assert tensor.commutator_space(g["d3"]).dim == 5
    assert tensor.commutator_space(g["d3"], depth=2).dim == 2
    assert tensor.fixed_space([g["d1"], g["d2"], g["d3"]]).dim == 1


def test_span_of_and_basis_vectors():
    s = tensor.span_of([[(1, "eee")], [(1, "eef"), (-1, "efe")]])
    assert s.dim == 2
    assert s.contains_vector((tensor.basis_vector("eef").astype(np.int64)
                              - tensor.basis_vector("efe").astype(np.int64)) % 3)
    with pytest.raises(ValueError):
        tensor.basis_vector("exe")


def test_lift_base_triple_rejects_singular_factor():
    with pytest.raises(ValueError):
        tensor.lift_base_triple(np.zeros((2, 2)), tensor.I2, tensor.I2)
