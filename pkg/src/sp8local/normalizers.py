"""Construction of L = N_{Sp8(3)}(R) and the 3-local parabolic P.

R/<sigma> is elementary abelian of order 2^6 and carries a minus-type
quadratic form (squares detect the sign, commutators give the bilinear
form).  The isometry group of that form is generated by orthogonal
transvections; each isometry lifts back through the 8-dimensional
representation of R to a similitude of V, and L is generated by X together
with the symplectic lifts.  P is the preimage in L of the normalizer in
L/R of the center of a Sylow 3-subgroup.
"""

from __future__ import annotations

import numpy as np

from . import engine, ff, forms, tensor


class RQuotientLabels:
    """Coordinates on R/<sigma> = GF(2)^6 with the induced quadratic form."""

    def __init__(self, r: engine.FiniteGroup) -> None:
        if r.order != 128:
            raise ValueError("expected the 128-element group R")
        self.r = r
        self.neg_key = {}
        for m in r.elements:
            self.neg_key[ff.key(m)] = ff.key(ff.fmat(-m.astype(np.int64), 3))

        def class_key(m) -> bytes:
            k = ff.key(m)
            return min(k, self.neg_key[k])

        self.class_key = class_key
        ident = r.identity
        # greedy basis of the elementary abelian quotient
        basis: list = []
        span_reps = {class_key(ident): ident}
        for m in r.elements:
            if class_key(m) in span_reps:
                continue
            basis.append(m)
            for rep in list(span_reps.values()):
                prod = r.mul(rep, m)
                span_reps.setdefault(class_key(prod), prod)
            if len(basis) == 6:
                break
        self.basis = basis
        self.rep_of = {}
        self.coords_of = {}
        for c in range(64):
            bits = [(c >> i) & 1 for i in range(6)]
            m = ident
            for bit, b in zip(bits, basis):
                if bit:
                    m = r.mul(m, b)
            vec = np.array(bits, dtype=np.uint8)
            self.rep_of[vec.tobytes()] = m
            self.coords_of[class_key(m)] = vec
        if len(self.coords_of) != 64:
            raise AssertionError("chosen elements do not form a basis of R/<sigma>")

        # quadratic form: q = 1 exactly when the lift squares to -I
        upper = np.zeros((6, 6), dtype=np.uint8)
        for i in range(6):
            sq = r.mul(basis[i], basis[i])
            upper[i, i] = 0 if ff.key(sq) == ff.key(ident) else 1
        for i in range(6):
            for j in range(i + 1, 6):
                comm = r.commutator(basis[i], basis[j])
                upper[i, j] = 0 if ff.key(comm) == ff.key(ident) else 1
        self.form = forms.QuadraticForm2(upper)

    def coords(self, m) -> np.ndarray:
        return self.coords_of[self.class_key(m)]

    def rep(self, vec) -> np.ndarray:
        return self.rep_of[ff.fmat(vec, 2).tobytes()]

    def verify_chart(self) -> bool:
        """The chart is a quadratic-space isomorphism on all 64 classes."""
        r = self.r
        ident_key = ff.key(r.identity)
        for c1 in range(64):
            v1 = np.array([(c1 >> i) & 1 for i in range(6)], dtype=np.uint8)
            m1 = self.rep(v1)
            sq = r.mul(m1, m1)
            q_ok = (ff.key(sq) == ident_key) == (self.form.value(v1) == 0)
            if not q_ok:
                return False
            prod_ok = np.array_equal(
                self.coords(r.mul(m1, self.rep(np.eye(6, dtype=np.uint8)[0]))),
                (v1 + np.eye(6, dtype=np.uint8)[0]) % 2,
            )
            if not prod_ok:
                return False
        return True


def orthogonal_transvection(form: forms.QuadraticForm2, v) -> np.ndarray:
    """The isometry x -> x + b(x, v) v for a non-singular vector v."""
    if form.value(v) != 1:
        raise ValueError("transvections require a non-singular vector")
    gram = form.polarization.gram.astype(np.int64)
    vv = np.asarray(v, dtype=np.int64)
    return ff.fmat(np.eye(form.dim, dtype=np.int64) + np.outer(gram @ vv, vv), 2)


def isometry_group(form: forms.QuadraticForm2, reverse: bool = False):
    """Generators (orthogonal transvections) for the full isometry group.

    Greedy: scan non-singular vectors in index order and keep transvections
    that enlarge the group; `reverse` scans the other way (used to confirm
    the construction does not depend on the generating set).
    """
    n = form.dim
    vecs = ((np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.uint8)
    nonsingular = [v for v in vecs[1:] if form.value(v) == 1]
    if reverse:
        nonsingular = nonsingular[::-1]
    ops = engine.MatrixOps(2, n)
    gens = engine.reduce_generators(
        [orthogonal_transvection(form, v) for v in nonsingular], ops)
    return engine.GroupHandle(gens, ops, name="O(q)"), gens


def lift_isometry(labels: RQuotientLabels, phi: np.ndarray) -> np.ndarray:
    """A matrix g in GL8(3) inducing the isometry phi on R/<sigma>.

    Any sign assignment on the images extends to an automorphism of R
    (the defining relations only see squares and commutators, which are
    blind to signs), so the intertwiner always exists and is unique up to
    scalar by irreducibility.
    """
    avs = [m for m in labels.basis]
    bvs = [labels.rep(ff.mat_mul(np.eye(6, dtype=np.uint8)[i].reshape(1, -1), phi, 2)[0])
           for i in range(6)]
    g = ff.solve_conjugating_matrix(avs, bvs, 3)
    if g is None:
        raise ValueError("isometry does not lift: no intertwiner found")
    return g


def construct_l(ops: engine.MatrixOps | None = None, reverse: bool = False):
    """L = N_{Sp8(3)}(R), returned with its ingredients.

    Returns a dict with the handle for L, the R labelling, and the
    symplectic form multipliers encountered during lifting.
    """
    ops = ops or tensor.vector_ops()
    r = tensor.build_r()
    labels = RQuotientLabels(r)
    if labels.form.quad_type() != "minus":
        raise AssertionError("R/<sigma> must carry a minus-type form")
    iso_handle, iso_gens = isometry_group(labels.form, reverse=reverse)
    sp_form = tensor.tensor_form()
    lifts = []
    lambdas = []
    for phi in iso_gens:
        g = lift_isometry(labels, phi)
        lam = sp_form.similitude_factor(g)
        if lam is None:
            raise AssertionError("lift is not a similitude")
        lifts.append(g)
        lambdas.append(lam)
    # fold multiplier-2 lifts into Sp by pairing them with a fixed one
    anchor = next((g for g, lam in zip(lifts, lambdas) if lam != 1), None)
    sp_lifts = []
    for g, lam in zip(lifts, lambdas):
        if lam == 1:
            sp_lifts.append(g)
        else:
            sp_lifts.append(ff.mat_mul(g, anchor, 3))
    gens = engine.reduce_generators(tensor.x_generators() + sp_lifts, ops)
    handle = engine.GroupHandle(gens, ops, name="L")
    return {"handle": handle, "labels": labels, "r": r,
            "iso_order": iso_handle.order(), "lift_lambdas": lambdas}


def normalizes(handle_gens, group: engine.FiniteGroup) -> bool:
    """Do the given matrices normalize the enumerated matrix group?"""
    for g in handle_gens:
        gi = ff.mat_inv(g, 3)
        for m in group.gens:
            if ff.key(ff.mat_mul(ff.mat_mul(gi, m, 3), g, 3)) not in group.index:
                return False
    return True


class LModR:
    """The quotient L/R as an explicit permutation group on R/<sigma>.

    Conjugation permutes the 64 classes of R/<sigma>; the kernel of that
    action is R itself, so the image is a faithful copy of L/R with a
    matrix preimage remembered for every element.
    """

    def __init__(self, l_handle: engine.GroupHandle, labels: RQuotientLabels) -> None:
        self.labels = labels
        self.ops = engine.PermOps(64)
        self.preimage: dict[bytes, np.ndarray] = {}
        gen_perms = []
        for g in l_handle.gens:
            p = self.perm_of(g)
            gen_perms.append(p)
        self.gens = gen_perms
        # breadth-first closure carrying matrix preimages along
        ident = self.ops.identity
        self.preimage[self.ops.key(ident)] = ff.fmat(np.eye(8), 3)
        elems = {self.ops.key(ident): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                pre = self.preimage[self.ops.key(p)]
                for gp, g in zip(gen_perms, l_handle.gens):
                    q = self.ops.mul(p, gp)
                    qk = self.ops.key(q)
                    if qk not in elems:
                        elems[qk] = q
                        self.preimage[qk] = ff.mat_mul(pre, g, 3)
                        nxt.append(q)
            frontier = nxt
        self.group = engine.FiniteGroup(
            list(elems.values()), self.ops.mul, self.ops.inv, self.ops.key,
            ident, gens=gen_perms)

    def perm_of(self, g: np.ndarray) -> np.ndarray:
        """The permutation of the 64 classes induced by conjugation by g."""
        gi = ff.mat_inv(g, 3)
        out = np.empty(64, dtype=np.int32)
        for c in range(64):
            vec = np.array([(c >> i) & 1 for i in range(6)], dtype=np.uint8)
            m = self.labels.rep(vec)
            img = ff.mat_mul(ff.mat_mul(gi, m, 3), g, 3)
            w = self.labels.coords(img)
            out[c] = int(w @ (1 << np.arange(6)))
        out.setflags(write=False)
        return out

    def preimage_of(self, p: np.ndarray) -> np.ndarray:
        return self.preimage[self.ops.key(p)]


def construct_p(l_handle: engine.GroupHandle, lbar: LModR):
    """The parabolic P: preimage in L of N_{L/R}(Z(Syl_3(L/R))).

    The Sylow 3-subgroup is the image of <d1, d2, d3, tau>, its center is
    generated by the image of d3, and the normalizer of that center has
    order 648 and shape 3^{1+2}.SL2(3).
    """
    g = tensor.named_generators()
    ops = lbar.ops
    syl = engine.FiniteGroup.generated(
        [lbar.perm_of(g[k]) for k in ("d1", "d2", "d3", "tau")],
        ops.mul, ops.inv, ops.key, ops.identity, limit=200)
    d3bar = lbar.perm_of(g["d3"])
    zsyl = syl.subgroup([d3bar])
    if not (syl.order == 81 and zsyl.same_group(syl.center())):
        raise AssertionError("Sylow 3-subgroup structure unexpected")

    # conjugation orbit of the subgroup, tracked as index sets
    idx_set = frozenset(lbar.group.index[ops.key(x)] for x in zsyl.elements)

    def act_idx(h, s):
        hi = ops.inv(h)
        return frozenset(
            lbar.group.index[ops.key(ops.mul(ops.mul(hi, lbar.group.elements[i]), h))]
            for i in s)

    stab_gens, orbit_size = engine.orbit_stabilizer(
        lbar.group.gens, ops, idx_set, act=act_idx, key=lambda s: s, limit=10_000)
    n_group = engine.FiniteGroup.generated(
        engine.reduce_generators(stab_gens, ops) if len(stab_gens) > 12 else stab_gens,
        ops.mul, ops.inv, ops.key, ops.identity, limit=2000)
    p_gens = tensor.r_generators() + [lbar.preimage_of(h) for h in n_group.gens]
    p_handle = engine.GroupHandle(
        engine.reduce_generators(p_gens, tensor.vector_ops()),
        l_handle.ops, name="P")
    return {"handle": p_handle, "n_mod_r": n_group, "syl": syl,
            "orbit_size": orbit_size}


def sylow3_matrix_group() -> engine.FiniteGroup:
    """The Sylow 3-subgroup <d1, d2, d3, tau> of L as 81 matrices."""
    g = tensor.named_generators()
    return engine.matrix_group(
        [g["d1"], g["d2"], g["d3"], g["tau"]], 3, generated=True, limit=200)


def elementary_abelian_9_subgroups(syl: engine.FiniteGroup) -> list[engine.FiniteGroup]:
    """All elementary abelian subgroups of order 9 of a finite 3-group."""
    order3 = [x for x in syl.elements if syl.element_order(x) == 3]
    seen = set()
    out = []
    for i, a in enumerate(order3):
        for b in order3[i + 1:]:
            if not syl.commutes(a, b):
                continue
            sub = syl.subgroup([a, b])
            if sub.order != 9:
                continue
            fz = frozenset(syl.key(x) for x in sub.elements)
            if fz not in seen:
                seen.add(fz)
                out.append(sub)
    return out


def exponent3_27_subgroups(syl: engine.FiniteGroup) -> list[frozenset]:
    """Key-sets of the order-27 exponent-3 subgroups of an order-81 group.

    Index-3 subgroups all contain the Frattini subgroup (derived subgroup
    together with the cubes), so they are the preimages of the lines in the
    elementary abelian Frattini quotient.
    """
    if syl.order != 81:
        raise ValueError("expected a group of order 81")
    cubes = [syl.mul(syl.mul(x, x), x) for x in syl.elements]
    comms = [syl.commutator(a, b) for a in syl.gens for b in syl.gens]
    phi = syl.subgroup(cubes + comms)
    qt = syl.quotient(phi)
    if not qt.is_elementary_abelian(3):
        raise AssertionError("Frattini quotient is not elementary abelian")
    lines = set()
    for x in qt.elements:
        if qt.element_order(x) == 3:
            lines.add(frozenset(qt.key(y) for y in qt.subgroup([x]).elements))
    out = []
    for line in sorted(lines, key=lambda s: sorted(s)[0]):
        members = [x for x in syl.elements if qt.key(x) in line]
        if len(members) != 27:
            raise AssertionError("preimage of a line has the wrong size")
        if all(syl.element_order(x) in (1, 3) for x in members):
            out.append(frozenset(syl.key(x) for x in members))
    return out


def conjugate_into_d(e_sub: engine.FiniteGroup, lbar: LModR,
                     r: engine.FiniteGroup) -> np.ndarray | None:
    """A matrix g in L with E^g <= D, found through the quotient L/R.

    First a conjugator of the image of E into the image of D is located by
    breadth-first search over L/R; the translated subgroup then lies in RD,
    where an R-element finishes the job (Sylow conjugacy inside RD).
    """
    g = tensor.named_generators()
    ops = lbar.ops
    d_mat = engine.matrix_group([g["d1"], g["d2"], g["d3"]], 3, generated=True, limit=50)
    dbar_keys = frozenset(
        ops.key(x) for x in engine.closure(
            [lbar.perm_of(m) for m in (g["d1"], g["d2"], g["d3"])],
            ops.mul, ops.key, ops.identity, limit=50))
    e_perms = [lbar.perm_of(m) for m in e_sub.gens]

    start = tuple(sorted(ops.key(p) for p in e_perms))
    seen = {start}
    frontier = [(e_perms, ff.fmat(np.eye(8), 3))]
    witness = None
    while frontier and witness is None:
        nxt = []
        for perms, word in frontier:
            if all(ops.key(p) in dbar_keys for p in perms):
                witness = word
                break
            for hp, hm in zip(lbar.group.gens, [lbar.preimage_of(x) for x in lbar.group.gens]):
                hpi = ops.inv(hp)
                new_perms = [ops.mul(ops.mul(hpi, p), hp) for p in perms]
                kk = tuple(sorted(ops.key(p) for p in new_perms))
                if kk not in seen:
                    seen.add(kk)
                    nxt.append((new_perms, ff.mat_mul(word, hm, 3)))
        frontier = nxt
    if witness is None:
        return None
    # E^witness lies in RD; finish with an R-element
    for rr in r.elements:
        conj = ff.mat_mul(witness, rr, 3)
        ci = ff.mat_inv(conj, 3)
        if all(ff.key(ff.mat_mul(ff.mat_mul(ci, m, 3), conj, 3)) in d_mat.index
               for m in e_sub.gens):
            return conj
    return None
