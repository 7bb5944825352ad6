import numpy as np
import pytest

from sp8local import extraspecial, ff, normalizers, tensor

RNG = np.random.default_rng(777)


@pytest.fixture(scope="module")
def model():
    return extraspecial.build_q39()


def random_x_word(rng, length=8):
    gens = tensor.x_generators()
    m = ff.identity(8)
    for _ in range(length):
        m = ff.mat_mul(m, gens[rng.integers(0, len(gens))], 3)
    return m


def test_group_laws_on_random_triples(model):
    for _ in range(200):
        xs = [model.element(RNG.integers(0, 3, size=8), int(RNG.integers(0, 3)))
              for _ in range(3)]
        a, b, c = xs
        left = model.mul(model.mul(a, b), c)
        right = model.mul(a, model.mul(b, c))
        assert model.key(left) == model.key(right)
        assert model.key(model.mul(a, model.inv(a))) == model.key(model.identity)


def test_exponent_three(model):
    assert extraspecial.exponent_three_everywhere(model)


def test_commutation_form_is_the_tensor_form(model):
    assert np.array_equal(model.commutation_form().gram, tensor.tensor_form().gram)
    for _ in range(50):
        v, w = RNG.integers(0, 3, size=(2, 8))
        a = model.element(v, 0)
        b = model.element(w, 0)
        comm = model.mul(model.mul(model.inv(a), model.inv(b)), model.mul(a, b))
        assert int(comm[1]) == model.commutator_value(v, w)
        assert np.all(comm[0] == 0)


def test_sp_action_is_an_automorphism(model):
    for _ in range(100):
        g = random_x_word(RNG)
        a = model.element(RNG.integers(0, 3, size=8), int(RNG.integers(0, 3)))
        b = model.element(RNG.integers(0, 3, size=8), int(RNG.integers(0, 3)))
        image = extraspecial.sp_action(model, g, model.mul(a, b))
        split = model.mul(extraspecial.sp_action(model, g, a),
                          extraspecial.sp_action(model, g, b))
        assert model.key(image) == model.key(split)


def test_perp_duality_for_200_random_automorphisms(model):
    ident = ff.key(ff.identity(8))
    count = 0
    while count < 200:
        g = random_x_word(RNG)
        if ff.key(g) == ident:
            continue
        assert extraspecial.perp_duality(model, g)["all_hold"]
        count += 1


def test_subspace_structure_against_enumeration(model):
    for _ in range(10):
        rows = int(RNG.integers(1, 4))
        s = ff.row_space(ff.fmat(RNG.integers(0, 3, size=(rows, 8)), 3), 3)
        info = model.subspace_structure(s)
        group = model.preimage_group(s)
        assert group.order == info["order"]
        assert group.is_abelian() == info["abelian"]
        assert group.center().order == info["center_order"]
        if info["extraspecial"]:
            assert group.center().order == 3
            assert group.derived_subgroup().order == 3


def test_centralizer_in_q_orders(model):
    gens = tensor.named_generators()
    assert extraspecial.centralizer_in_q(model, gens["pi"])["order"] == 3**7
    assert extraspecial.centralizer_in_q(model, gens["d3"])["order"] == 3**4
    # multiplier 2 kills the center: the m3 centralizer is a complement
    info = extraspecial.centralizer_in_q(model, gens["m3"])
    assert info["order"] == 3**4
    assert not info["extraspecial"]


def test_p2_model_types():
    for kind, rank in (("plus", 2), ("minus", 1)):
        m = extraspecial.build_e2(2, kind)
        assert m.order == 32
        assert extraspecial.max_elementary_abelian_order(m) == 2 ** (1 + rank)


def test_p2_correction_automorphisms():
    m = extraspecial.build_e2(2, "minus")
    q = m.quadratic
    vecs = m.all_vectors()
    nonsingular = [v for v in vecs[1:] if q.value(v) == 1]
    rng = np.random.default_rng(5)
    count = 0
    while count < 200:
        g = ff.identity(4)
        for _ in range(3):
            v = nonsingular[rng.integers(0, len(nonsingular))]
            g = ff.mat_mul(g, normalizers.orthogonal_transvection(q, v), 2)
        phi = extraspecial.automorphism_with_correction(m, g)
        a = m.element(rng.integers(0, 2, size=4), int(rng.integers(0, 2)))
        b = m.element(rng.integers(0, 2, size=4), int(rng.integers(0, 2)))
        assert m.key(phi(m.mul(a, b))) == m.key(m.mul(phi(a), phi(b)))
        count += 1


def test_correction_rejects_non_isometry():
    m = extraspecial.build_e2(2, "minus")
    # swapping a singular basis vector with a non-singular one changes q
    bad = ff.fmat(np.array([[0, 0, 1, 0], [0, 1, 0, 0],
                            [1, 0, 0, 0], [0, 0, 0, 1]]), 2)
    with pytest.raises(ValueError):
        extraspecial.automorphism_with_correction(m, bad)
