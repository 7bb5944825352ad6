import numpy as np

from sp8local import ff, semidirect, tensor


def test_associativity_200_random_triples(ctx):
    group = ctx.u_data["group"]
    assert semidirect.associativity_holds(group, 200, seed=42)


def test_identity_and_inverse(ctx):
    group = ctx.u_data["group"]
    rng = np.random.default_rng(9)
    for _ in range(20):
        x = group.random_element(rng)
        assert group.key(group.mul(group.identity, x)) == group.key(x)
        assert group.key(group.mul(x, group.identity)) == group.key(x)
        assert group.key(group.inv(group.inv(x))) == group.key(x)


def test_action_is_by_conjugation_convention(ctx):
    # phi_{l1} phi_{l2} = phi_{l1 l2}: the action is a left action
    group = ctx.u_data["group"]
    rng = np.random.default_rng(17)
    handle = ctx.l_result["handle"]
    model = group.model
    for _ in range(30):
        l1 = handle.random_element(rng)
        l2 = handle.random_element(rng)
        q = model.element(rng.integers(0, 3, size=8), int(rng.integers(0, 3)))
        nested = group.phi(l1, group.phi(l2, q))
        direct = group.phi(ff.mat_mul(l1, l2, 3), q)
        assert model.key(nested) == model.key(direct)


def test_u_and_m_orders(ctx):
    assert ctx.u_data["order"] == 65303470080
    m = semidirect.build_m(ctx.l_result, ctx.p_result["handle"])
    assert m["order"] == 1632586752
    assert m["index_in_u"] == 40


def test_u_center_and_fitting(ctx):
    assert ctx.u_data["center_is_z"]
    assert ctx.u_data["q_self_centralizing"]


def test_centralizer_criterion_sampling(ctx):
    assert semidirect.centralizer_product_criterion(ctx.l_result, 30, seed=5)


def test_chosen_r_is_a_noncentral_involution(ctx):
    r = semidirect.chosen_r(ctx.l_result)
    ident = ff.identity(8)
    assert ff.key(ff.mat_mul(r, r, 3)) == ff.key(ident)
    assert ff.key(r) != ff.key(ident)
    sigma = tensor.named_generators()["sigma"]
    assert ff.key(r) != ff.key(sigma)
    assert r in ctx.l_result["r"]


def test_coset_involution_fusion():
    fus = semidirect.coset_involution_fusion()
    assert fus["rpi_order"] == 256
    assert fus["coset_involutions"] == 8
    assert fus["all_covered"]
    assert fus["classes_distinct"]
    assert fus["fixed_dims"] == (6, 2)


def test_two_classes_report(ctx):
    info = ctx.two_classes
    assert info["orbit_sizes"] == [1440, 5120]
    assert sum(info["orbit_sizes"]) == 3**8 - 1
    assert info["rho_centralizer_order"] * 1440 == ctx.l_result["handle"].order()
    assert info["big_orbit_centralizer_order"] * 5120 == ctx.l_result["handle"].order()
