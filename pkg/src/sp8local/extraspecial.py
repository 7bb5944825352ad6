"""Cocycle models of extraspecial groups and their symplectic automorphisms.

An extraspecial group p^{1+2n} is modeled on GF(p)^{2n} x GF(p) with
multiplication (v, a)(w, b) = (v + w, a + b + c(v, w)) for a bilinear
cocycle c.  The center is {(0, a)} and commutation induces a symplectic
form on the quotient by the center.

For p = 3 the cocycle is c(v, w) = 2<v, w> with <,> the symplectic form;
this makes the model exponent 3 and every symplectic similitude acts by
(v, a) -> (v g, lambda a) with no correction term.  For p = 2 the cocycle
is an upper-triangular bilinear form whose diagonal is a quadratic form q,
so squaring realizes q and the type of the model is the type of q.
"""

from __future__ import annotations

import numpy as np

from . import engine, ff, forms, tensor


class ExtraspecialModel:
    """Extraspecial group p^{1+2n} with a fixed bilinear cocycle."""

    def __init__(self, p: int, cocycle_matrix) -> None:
        self.p = p
        self.cmat = ff.fmat(cocycle_matrix, p)
        self.dim = self.cmat.shape[0]
        self.order = p ** (self.dim + 1)

    def cocycle(self, v, w) -> int:
        return int(np.asarray(v, dtype=np.int64) @ self.cmat.astype(np.int64)
                   @ np.asarray(w, dtype=np.int64)) % self.p

    def element(self, v, a: int):
        return (ff.fmat(np.asarray(v).reshape(self.dim), self.p), a % self.p)

    @property
    def identity(self):
        return self.element(np.zeros(self.dim), 0)

    def mul(self, x, y):
        v, a = x
        w, b = y
        return self.element(v.astype(np.int64) + w.astype(np.int64),
                            a + b + self.cocycle(v, w))

    def inv(self, x):
        v, a = x
        return self.element(-v.astype(np.int64), -a + self.cocycle(v, v))

    def key(self, x):
        return (x[0].tobytes(), x[1])

    def commutator_value(self, v, w) -> int:
        """The central value of [(v,.), (w,.)]: the commutation form."""
        return (self.cocycle(v, w) - self.cocycle(w, v)) % self.p

    def commutation_form(self) -> forms.SymplecticForm:
        gram = (self.cmat.astype(np.int64) - self.cmat.astype(np.int64).T) % self.p
        return forms.SymplecticForm(gram, self.p)

    def all_vectors(self) -> np.ndarray:
        n, p = self.dim, self.p
        idx = np.arange(p**n, dtype=np.int64)
        return ((idx[:, None] // p ** np.arange(n)[None, :]) % p).astype(np.uint8)

    def as_finite_group(self, vectors=None) -> engine.FiniteGroup:
        """Enumerate (a subgroup given by coset vectors of) the model."""
        vecs = self.all_vectors() if vectors is None else np.asarray(vectors)
        elems = [self.element(v, a) for v in vecs for a in range(self.p)]
        return engine.FiniteGroup(elems, self.mul, self.inv, self.key, self.identity)

    def preimage_group(self, s: ff.Subspace) -> engine.FiniteGroup:
        """The preimage in the model of a subspace of the central quotient."""
        return self.as_finite_group(vectors=s.vectors())

    def subspace_structure(self, s: ff.Subspace) -> dict:
        """Structure of the preimage of s, by linear algebra on the form.

        The preimage has order p^(dim s + 1), is abelian iff s is totally
        isotropic for the commutation form, has center the preimage of the
        radical of s, and is extraspecial iff s is nondegenerate of positive
        dimension (odd p, exponent-p model).
        """
        form = self.commutation_form()
        radical = form.radical_of(s)
        return {
            "order": self.p ** (s.dim + 1),
            "abelian": form.is_totally_isotropic(s),
            "center_order": self.p ** (radical.dim + 1),
            "extraspecial": s.dim > 0 and radical.dim == 0,
            "elementary_abelian": form.is_totally_isotropic(s),
        }


# ---------------------------------------------------------------------------
# p = 3: the group Q of order 3^9 on the tensor module


def build_q39() -> ExtraspecialModel:
    """Q = 3^{1+8} of exponent 3 on the tensor space, cocycle 2<v,w>."""
    gram = tensor.tensor_form().gram
    return ExtraspecialModel(3, (2 * gram.astype(np.int64)) % 3)


def sp_action(model: ExtraspecialModel, g, x):
    """The automorphism (v, a) -> (v g, lambda a) for a similitude g."""
    lam = _similitude(model, g)
    v, a = x
    return model.element(ff.mat_mul(v.reshape(1, -1), g, model.p)[0], lam * a)


def _similitude(model: ExtraspecialModel, g) -> int:
    lam = model.commutation_form().similitude_factor(g)
    if lam is None:
        raise ValueError("matrix is not a similitude of the commutation form")
    return lam


def fixed_subspace(model: ExtraspecialModel, mats) -> ff.Subspace:
    """Common fixed space on the central quotient, C_{Q/Z}(gens)."""
    mats = mats if isinstance(mats, (list, tuple)) else [mats]
    out = ff.Subspace.full(model.dim, model.p)
    eye = np.eye(model.dim, dtype=np.int64)
    for m in mats:
        out = out & ff.null_rows(ff.fmat(m.astype(np.int64) - eye, model.p), model.p)
    return out


def commutator_subspace(model: ExtraspecialModel, g) -> ff.Subspace:
    """[Q, g]Z / Z as a subspace of the central quotient."""
    eye = np.eye(model.dim, dtype=np.int64)
    return ff.row_space(ff.fmat(g.astype(np.int64) - eye, model.p), model.p)


def centralizer_in_q(model: ExtraspecialModel, mats) -> dict:
    """Structure of C_Q(gens) for similitude matrices acting on the model.

    With multiplier 1 the centralizer is the full preimage of the fixed
    space; a multiplier != 1 kills the central coordinate, leaving the
    order-p^dim complement {(v, 0)} over the fixed space.
    """
    mats = mats if isinstance(mats, (list, tuple)) else [mats]
    s = fixed_subspace(model, mats)
    all_lambda_one = all(_similitude(model, m) == 1 for m in mats)
    info = model.subspace_structure(s)
    if all_lambda_one:
        return info
    form = model.commutation_form()
    # the fixed vectors lift to {(v, 0)}, a complement to the center
    return {
        "order": model.p ** s.dim,
        "abelian": form.is_totally_isotropic(s),
        "center_order": model.p ** form.radical_of(s).dim,
        "extraspecial": False,
        "elementary_abelian": form.is_totally_isotropic(s),
    }


def perp_duality(model: ExtraspecialModel, g) -> dict:
    """The commutation-duality facts for an automorphism fixing the center.

    With F the preimage of the fixed space of g on E/Z and [E,g] taken
    together with the center: C_E(F) = Z[E,g] and C_E([E,g]) = F.  Both
    equalities are checked through the perp correspondence and again by a
    direct vectorized centralizing test over all of E/Z.
    """
    if _similitude(model, g) != 1:
        raise ValueError("automorphism must centralize the center")
    form = model.commutation_form()
    fixed = fixed_subspace(model, g)
    comm = commutator_subspace(model, g)
    first = form.perp(fixed) == comm
    second = form.perp(comm) == fixed
    # independent element-wise verification on the quotient
    vecs = model.all_vectors().astype(np.int64)
    gram = form.gram.astype(np.int64)
    pairing_f = (vecs @ gram @ fixed.basis.astype(np.int64).T) % model.p if fixed.dim else None
    cent_f = vecs[np.all(pairing_f == 0, axis=1)] if fixed.dim else vecs
    elementwise = ff.Subspace(model.dim, model.p, cent_f) == comm
    return {"fixed": fixed, "commutator": comm,
            "perp_of_fixed_is_commutator": first,
            "perp_of_commutator_is_fixed": second,
            "elementwise_agrees": elementwise,
            "all_hold": first and second and elementwise}


def exponent_three_everywhere(model: ExtraspecialModel) -> bool:
    """Cube every element of the p = 3 model at once (vectorized)."""
    if model.p != 3:
        raise ValueError("exponent-3 check only applies to the p = 3 model")
    vecs = model.all_vectors().astype(np.int64)
    # (v,a)^3 = (3v, 3a + 3 c(v,v)) and c(v,v) = 2<v,v> = 0, so the cube is
    # trivial exactly when the diagonal cocycle values vanish
    diag = np.einsum("vi,ij,vj->v", vecs, model.cmat.astype(np.int64), vecs) % 3
    return not np.any(diag)


# ---------------------------------------------------------------------------
# p = 2 models


def quadratic_form_2n(n: int, kind: str) -> forms.QuadraticForm2:
    """The standard plus/minus quadratic form on GF(2)^{2n}."""
    if kind not in ("plus", "minus"):
        raise ValueError("kind must be 'plus' or 'minus'")
    upper = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    for i in range(n):
        upper[2 * i, 2 * i + 1] = 1
    if kind == "minus":
        upper[2 * n - 2, 2 * n - 2] = 1
        upper[2 * n - 1, 2 * n - 1] = 1
    return forms.QuadraticForm2(upper)


def build_e2(n: int, kind: str) -> ExtraspecialModel:
    """The extraspecial 2-group 2^{1+2n} of the requested type."""
    if n > 11:
        raise ValueError("n too large")
    q = quadratic_form_2n(n, kind)
    model = ExtraspecialModel(2, q.upper)
    model.quadratic = q
    return model


def automorphism_with_correction(model: ExtraspecialModel, g):
    """For p = 2: the automorphism over an isometry g of the quadratic form.

    Returns a function on elements: (v, a) -> (v g, a + corr(v)) where the
    quadratic correction corr solves the coboundary equation
    corr(v+w) + corr(v) + corr(w) = b(vg, wg) + b(v, w).
    """
    if model.p != 2:
        raise ValueError("correction terms are a p = 2 construction")
    b = model.cmat.astype(np.int64)
    gi = g.astype(np.int64)
    beta = (gi @ b @ gi.T + b) % 2
    if np.any(np.diag(beta)):
        raise ValueError("matrix is not an isometry of the quadratic form")
    if np.any((beta + beta.T) % 2):
        raise ValueError("matrix is not an isometry of the polarization")
    corr_mat = ff.fmat(np.triu(beta, 1), 2)

    def phi(x):
        v, a = x
        vi = v.astype(np.int64)
        corr = int(vi @ corr_mat.astype(np.int64) @ vi) % 2
        return model.element(ff.mat_mul(v.reshape(1, -1), g, 2)[0], a + corr)

    return phi


def max_elementary_abelian_order(model: ExtraspecialModel) -> int:
    """2^(1+k), k the largest totally singular subspace dimension (p = 2)."""
    if model.p != 2:
        raise ValueError("only used for p = 2 models")
    q = model.quadratic
    vecs = model.all_vectors()
    singular = [v for v in vecs[1:] if q.value(v) == 0]
    gram = q.polarization.gram.astype(np.int64)

    best = 0

    def extend(basis: list, start: int) -> None:
        nonlocal best
        best = max(best, len(basis))
        for i in range(start, len(singular)):
            v = singular[i].astype(np.int64)
            if basis and np.any((np.array(basis) @ gram @ v) % 2):
                continue
            span = ff.Subspace(model.dim, 2, np.array(basis + [v]))
            if span.dim != len(basis) + 1:
                continue
            if all(q.value(w) == 0 for w in span.vectors()):
                extend(basis + [v.tolist()], i + 1)

    extend([], 0)
    return 2 ** (1 + best)
