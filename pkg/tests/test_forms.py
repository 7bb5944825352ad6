import numpy as np
import pytest

from sp8local import extraspecial, ff, forms, tensor

RNG = np.random.default_rng(999)


def test_symplectic_antisymmetry():
    form = tensor.tensor_form()
    for _ in range(50):
        v, w = RNG.integers(0, 3, size=(2, 8))
        assert form.value(v, w) == (-form.value(w, v)) % 3
        assert form.value(v, v) == 0


def test_perp_is_involution():
    form = tensor.tensor_form()
    for _ in range(200):
        rows = int(RNG.integers(1, 6))
        s = ff.row_space(ff.fmat(RNG.integers(0, 3, size=(rows, 8)), 3), 3)
        p = form.perp(s)
        assert p.dim == 8 - s.dim
        assert form.perp(p) == s


def test_radical_of_nondegenerate_space_is_zero():
    form = tensor.tensor_form()
    full = ff.Subspace.full(8, 3)
    assert form.radical_of(full).dim == 0


def test_similitude_factors_of_generators():
    form = tensor.tensor_form()
    gens = tensor.named_generators()
    assert form.similitude_factor(gens["d1"]) == 1
    assert form.similitude_factor(gens["sigma"]) == 1
    assert form.similitude_factor(gens["pi"]) == 1
    assert form.similitude_factor(gens["m3"]) == 2
    assert form.similitude_factor(ff.fmat(np.zeros((8, 8)), 3)) is None


def test_kron_power_form_gram():
    w = forms.SymplecticForm(tensor.GRAM_W, 3)
    cube = forms.kron_power_form(w, 3)
    manual = np.kron(tensor.GRAM_W.astype(np.int64),
                     np.kron(tensor.GRAM_W.astype(np.int64),
                             tensor.GRAM_W.astype(np.int64))) % 3
    assert np.array_equal(cube.gram, manual.astype(np.uint8))


@pytest.mark.parametrize("n,kind,singular", [
    (2, "plus", 10), (2, "minus", 6), (3, "plus", 36), (3, "minus", 28)])
def test_quadratic_type_by_singular_count(n, kind, singular):
    q = extraspecial.quadratic_form_2n(n, kind)
    assert q.singular_count() == singular
    assert q.quad_type() == kind


def test_polarization_of_quadratic_form():
    q = extraspecial.quadratic_form_2n(2, "minus")
    b = q.polarization
    for _ in range(50):
        v, w = RNG.integers(0, 2, size=(2, 4))
        expect = (q.value((v + w) % 2) + q.value(v) + q.value(w)) % 2
        assert b.value(v, w) == expect
