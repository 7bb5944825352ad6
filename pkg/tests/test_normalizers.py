import numpy as np

from sp8local import engine, ff, normalizers, tensor


def test_r_quotient_chart(l_result):
    labels = l_result["labels"]
    assert labels.form.quad_type() == "minus"
    assert labels.verify_chart()


def test_isometry_group_order_both_scan_directions(l_result):
    form = l_result["labels"].form
    fwd, _ = normalizers.isometry_group(form)
    rev, _ = normalizers.isometry_group(form, reverse=True)
    assert fwd.order() == 51840
    assert rev.order() == 51840


def test_lifts_are_similitudes(l_result):
    assert all(lam in (1, 2) for lam in l_result["lift_lambdas"])
    assert any(lam == 2 for lam in l_result["lift_lambdas"])


def test_l_construction_independent_of_generating_set(ctx, l_result):
    other = normalizers.construct_l(ctx.ops, reverse=True)
    assert other["handle"].order() == l_result["handle"].order() == 3317760
    assert l_result["handle"].is_subgroup(other["handle"])


def test_l_normalizes_r_and_contains_x(ctx, l_result):
    handle = l_result["handle"]
    assert normalizers.normalizes(handle.gens, l_result["r"])
    assert handle.is_subgroup(ctx.x_handle)
    assert handle.order() // ctx.x_handle.order() == 40


def test_l_mod_r_quotient(ctx, l_result):
    lbar = ctx.lbar
    assert lbar.group.order == 25920
    g = l_result["handle"].random_element(np.random.default_rng(3))
    p = lbar.perm_of(g)
    assert p in lbar.group
    # preimages invert perm_of up to R
    pre = lbar.preimage_of(p)
    assert np.array_equal(lbar.perm_of(pre), p)


def test_parabolic(ctx):
    res = ctx.p_result
    assert res["handle"].order() == 82944
    assert res["n_mod_r"].order == 648
    assert res["syl"].order == 81


def test_sylow3_and_small_subgroups(ctx):
    syl = ctx.syl
    assert syl.order == 81
    assert syl.exponent() == 9
    ea9 = ctx.ea9
    assert len(ea9) == 16
    assert all(e.order == 9 and e.is_elementary_abelian(3) for e in ea9)
    found = normalizers.exponent3_27_subgroups(syl)
    assert len(found) == 2


def test_conjugate_into_d(ctx, l_result):
    g = tensor.named_generators()
    d_group = engine.matrix_group([g["d1"], g["d2"], g["d3"]], 3,
                                  generated=True, limit=30)
    e = ctx.ea9[0]
    w = normalizers.conjugate_into_d(e, ctx.lbar, l_result["r"])
    assert w is not None
    wi = ff.mat_inv(w, 3)
    for m in e.gens:
        assert ff.key(ff.mat_mul(ff.mat_mul(wi, m, 3), w, 3)) in d_group.index
