"""The semidirect products U = Q:L and M = Q:P and centralizers inside them.

Elements are pairs (q, l) with q in the cocycle model of Q and l a matrix
in L (or P).  The action of l on Q is conjugation: phi_l = sp_action by
l^{-1}, a left action, and multiplication is

    (q1, l1)(q2, l2) = (q1 * phi_{l1}(q2), l1 l2).

U has order 3^9 * |L| = 65303470080 and is never enumerated; centralizers
of the distinguished elements pi, r, rho factor through the Q-part and the
L-part, which are computed separately and reassembled by the element-level
commuting criteria proved in the docstrings below.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine, extraspecial, ff, normalizers, tensor


@dataclass
class CentralizerReport:
    """Conclusions about the centralizer of one subject element."""

    subject: str
    order: int
    o2_order: int | None = None
    o3_order: int | None = None
    details: dict = field(default_factory=dict)


class SemidirectGroup:
    """Q:L as an element-level computational object."""

    def __init__(self, model: extraspecial.ExtraspecialModel,
                 l_handle: engine.GroupHandle, name: str = "U") -> None:
        self.model = model
        self.l_handle = l_handle
        self.name = name
        self.identity = (model.identity, ff.identity(model.dim))
        self.order = model.order * l_handle.order()

    def phi(self, l, q):
        """The left action of l on Q: conjugation, sp_action by l^{-1}."""
        return extraspecial.sp_action(self.model, ff.mat_inv(l, self.model.p), q)

    def element(self, q, l):
        return (q, ff.fmat(l, self.model.p))

    def from_q(self, q):
        return (q, ff.identity(self.model.dim))

    def from_l(self, l):
        return (self.model.identity, ff.fmat(l, self.model.p))

    def mul(self, x, y):
        q1, l1 = x
        q2, l2 = y
        return (self.model.mul(q1, self.phi(l1, q2)), ff.mat_mul(l1, l2, self.model.p))

    def inv(self, x):
        q, l = x
        li = ff.mat_inv(l, self.model.p)
        return (self.phi(li, self.model.inv(q)), li)

    def key(self, x):
        return (self.model.key(x[0]), ff.key(x[1]))

    def commutes(self, x, y) -> bool:
        return self.key(self.mul(x, y)) == self.key(self.mul(y, x))

    def random_element(self, rng: np.random.Generator):
        v = rng.integers(0, self.model.p, size=self.model.dim)
        a = int(rng.integers(0, self.model.p))
        return (self.model.element(v, a), self.l_handle.random_element(rng))


def build_u(l_result: dict) -> dict:
    """U = Q:L with its headline structural facts.

    Z(U) = Z(Q): an element ((v, a), l) central in U must have l acting
    trivially on every vector of V (matrices act faithfully, so l = I) and
    v in the radical of the commutation form (zero, by non-degeneracy).
    The same argument gives C_U(Q) = Z(Q), i.e. F*(U) = Q.
    """
    model = extraspecial.build_q39()
    handle = l_result["handle"]
    group = SemidirectGroup(model, handle, name="U")
    form = model.commutation_form()
    nondegenerate = ff.rank(form.gram, model.p) == model.dim
    # the subgroup of L fixing all of V pointwise (kernel of the action)
    basis_points = [handle.ops.index(row) for row in np.eye(model.dim, dtype=np.uint8)]
    kernel = handle.pointwise_stabilizer(basis_points)
    central_gen = group.from_q(model.element(np.zeros(model.dim), 1))
    l_gens_centralize = all(
        group.commutes(central_gen, group.from_l(g)) for g in handle.gens)
    return {
        "group": group,
        "order": group.order,
        "center_is_z": nondegenerate and kernel.order() == 1 and l_gens_centralize,
        "q_self_centralizing": nondegenerate and kernel.order() == 1,
        "center_order": 3,
    }


def build_m(l_result: dict, p_handle: engine.GroupHandle) -> dict:
    """M = Q:P, the 3-local subgroup of U over the parabolic."""
    model = extraspecial.build_q39()
    group = SemidirectGroup(model, p_handle, name="M")
    return {"group": group, "order": group.order,
            "index_in_u": (model.order * l_result["handle"].order()) // group.order}


def associativity_holds(group: SemidirectGroup, trials: int, seed: int) -> bool:
    """Random-triple associativity plus inverse and projection laws."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y, z = (group.random_element(rng) for _ in range(3))
        left = group.mul(group.mul(x, y), z)
        right = group.mul(x, group.mul(y, z))
        if group.key(left) != group.key(right):
            return False
        if group.key(group.mul(x, group.inv(x))) != group.key(group.identity):
            return False
        # projection to the L-part is a homomorphism
        if ff.key(group.mul(x, y)[1]) != ff.key(ff.mat_mul(x[1], y[1], group.model.p)):
            return False
    return True


def _quaternion_cube() -> engine.FiniteGroup:
    """The direct product Q8 x Q8 x Q8 as an abstract comparison model."""
    q8 = engine.matrix_group([tensor.Q8_A, tensor.Q8_B], 3, generated=True, limit=10)
    return engine.direct_product(engine.direct_product(q8, q8), q8)


def centralizer_of_pi(l_result: dict) -> CentralizerReport:
    """C_U(pi) for the factor-swapping involution pi.

    (q, l) commutes with (0, pi) iff l commutes with pi and the Q/Z vector
    of q is fixed by pi, so C_U(pi) = C_Q(pi) x C_L(pi) and the order is
    the product |C_Q(pi)| * |C_L(pi)| = 3^7 * 2^11 * 3^2 = 2^11 * 3^9.
    """
    model = extraspecial.build_q39()
    handle = l_result["handle"]
    pi = tensor.named_generators()["pi"]
    cq = extraspecial.centralizer_in_q(model, pi)
    cl = engine.conjugation_centralizer(handle, pi)
    cl_group = engine.matrix_group(cl.elements(), 3, gens=cl.gens)
    order = cq["order"] * cl.order()

    o2 = cl_group.p_core(2)
    pi_sub = cl_group.subgroup([pi])
    o2_quotient = o2.quotient(pi_sub)
    model_fp = _quaternion_cube().fingerprint()
    derived = cl_group.derived_subgroup()

    return CentralizerReport(
        subject="pi",
        order=order,
        o2_order=o2.order,
        o3_order=cq["order"],
        details={
            "order_mod_pi": order // 2,
            "cq_order": cq["order"],
            "cq_extraspecial_exponent3": cq["extraspecial"],
            "cl_order": cl.order(),
            "o2_mod_pi_fingerprint": o2_quotient.fingerprint(),
            "quaternion_cube_fingerprint": model_fp,
            "o2_quotient_matches": o2_quotient.fingerprint() == model_fp,
            "pi_in_derived_cl": pi in derived,
            "cl_group": cl_group,
            "o2": o2,
        },
    )


def centralizer_of_pi_in_m(p_handle: engine.GroupHandle,
                           pi_report: CentralizerReport | None = None) -> CentralizerReport:
    """The M-variant: C_M(pi) = C_Q(pi) x C_P(pi) and its 2-core.

    O_2(C_P(pi)) has order 2^8; modulo <pi> it is an order-2^7 subgroup of
    the Q8 x Q8 x Q8 quotient of O_2(C_L(pi)) containing its center, which
    is checked against the L-side report when one is supplied.
    """
    model = extraspecial.build_q39()
    pi = tensor.named_generators()["pi"]
    cq = extraspecial.centralizer_in_q(model, pi)
    cp = engine.conjugation_centralizer(p_handle, pi)
    cp_group = engine.matrix_group(cp.elements(), 3, gens=cp.gens)
    o2m = cp_group.p_core(2)
    details = {
        "cp_order": cp.order(),
        "o2_order": o2m.order,
        "order_mod_pi": cq["order"] * cp.order() // 2,
    }
    if pi_report is not None:
        o2l = pi_report.details["o2"]
        inside = all(x in o2l for x in o2m.elements)
        # center of the Q8^3 quotient = derived subgroup of O_2(C_L(pi));
        # its preimage (with pi) must land inside O_2(C_P(pi))
        center_preimage = o2l.derived_subgroup().elements + [pi]
        details["o2m_inside_o2l"] = inside
        details["contains_quotient_center"] = all(
            x in o2m for x in center_preimage)
    return CentralizerReport(subject="pi (in M)", order=cq["order"] * cp.order(),
                             o2_order=o2m.order, o3_order=cq["order"],
                             details=details)


def chosen_r(l_result: dict) -> np.ndarray:
    """The distinguished involution r: lift of the first singular vector.

    Classes of R/<sigma> are scanned in index order; the first non-zero
    singular one has two lifts, and the involution among them is r.  L is
    transitive on these involutions, so the choice is immaterial but fixed
    for determinism.
    """
    labels = l_result["labels"]
    r_group = l_result["r"]
    ident_key = ff.key(r_group.identity)
    for c in range(1, 64):
        vec = np.array([(c >> i) & 1 for i in range(6)], dtype=np.uint8)
        if labels.form.value(vec) != 0:
            continue
        m = labels.rep(vec)
        if ff.key(r_group.mul(m, m)) != ident_key:
            m = ff.fmat(-m.astype(np.int64), 3)
        if ff.key(r_group.mul(m, m)) != ident_key:
            raise AssertionError("no involutive lift of a singular vector")
        return m
    raise AssertionError("no singular vector found")


def _two_group_order(n: int) -> bool:
    while n % 2 == 0:
        n //= 2
    return n == 1


def centralizer_of_r(l_result: dict, signalizer_samples: int = 50,
                     seed: int = 0) -> CentralizerReport:
    """C_U(r) for the distinguished non-central involution r of R.

    As for pi, C_U(r) = C_Q(r) x C_L(r).  K is the kernel of the action of
    C_L(r) on the fixed space of r; it is the unique maximal normal
    2-subgroup of C_U(r): any normal 2-subgroup W satisfies
    [W, C_Q(r)] <= W intersect Q = 1, so W centralizes C_Q(r), which forces
    the L-parts of W into K and bounds W inside the subgroup 3^5:K whose
    2-core is K itself.
    """
    model = extraspecial.build_q39()
    handle = l_result["handle"]
    r_group = l_result["r"]
    r = chosen_r(l_result)

    fix_r = extraspecial.fixed_subspace(model, r)
    cq = extraspecial.centralizer_in_q(model, r)
    cr_elems = [m for m in r_group.elements
                if ff.key(ff.mat_mul(m, r, 3)) == ff.key(ff.mat_mul(r, m, 3))]
    cr = engine.matrix_group(cr_elems, 3)
    cr_model = engine.direct_product(
        engine.cyclic_group(2),
        extraspecial.build_e2(2, "minus").as_finite_group())

    cl = engine.conjugation_centralizer(handle, r)
    quotient_order = cl.order() // cr.order

    fix_points = [handle.ops.index(v) for v in fix_r.vectors()]
    k_handle = cl.pointwise_stabilizer(fix_points)
    k_group = engine.matrix_group(k_handle.elements(), 3, gens=k_handle.gens)
    k_model = extraspecial.build_e2(2, "minus").as_finite_group()
    k_normal_in_cl = normalizers.normalizes(cl.gens, k_group)
    sp_form = tensor.tensor_form()
    k_centralizes_cq = all(sp_form.similitude_factor(m) == 1 for m in k_group.gens)

    # signalizer sampling: a 2-element of C_L(r) whose cyclic group is
    # normalized by C_Q(r) must already lie in K (centralize C_Q(r));
    # the normalizer condition is evaluated by semidirect arithmetic
    u = SemidirectGroup(model, handle)
    cq_gens = [model.element(v, 0) for v in fix_r.basis]
    rng = np.random.default_rng(seed)
    sampled_ok = True
    for _ in range(signalizer_samples):
        g = cl.random_element(rng)
        order = engine.matrix_group([g], 3, generated=True, limit=5000).order
        odd = order
        while odd % 2 == 0:
            odd //= 2
        s = ff.mat_pow(g, odd, 3)
        if ff.key(s) == ff.key(ff.identity(8)):
            continue
        s_elem = u.from_l(s)
        s_powers = {u.key(x) for x in
                    engine.closure([s_elem], u.mul, u.key, u.identity, limit=64)}
        normalized = all(
            u.key(u.mul(u.inv(u.from_q(q)), u.mul(s_elem, u.from_q(q))))
            in s_powers for q in cq_gens)
        if normalized != (s in k_group):
            sampled_ok = False
            break

    return CentralizerReport(
        subject="r",
        order=cq["order"] * cl.order(),
        o2_order=k_group.order,
        o3_order=cq["order"],
        details={
            "cq_order": cq["order"],
            "cq_extraspecial": cq["extraspecial"],
            "fix_dim": fix_r.dim,
            "cr_fingerprint": cr.fingerprint(),
            "cr_model_fingerprint": cr_model.fingerprint(),
            "cr_matches_2x2_1_4_minus": cr.fingerprint() == cr_model.fingerprint(),
            "cl_order": cl.order(),
            "cl_mod_r_order": quotient_order,
            "k_fingerprint": k_group.fingerprint(),
            "k_model_fingerprint": k_model.fingerprint(),
            "k_matches_2_1_4_minus": k_group.fingerprint() == k_model.fingerprint(),
            "k_is_2_group": _two_group_order(k_group.order),
            "k_normal_in_cl": k_normal_in_cl,
            "k_centralizes_cq": k_centralizes_cq,
            "signalizer_sampling_ok": sampled_ok,
        },
    )


def two_classes_in_q(l_result: dict,
                     x_handle: engine.GroupHandle | None = None) -> dict:
    """L-orbits on the non-zero vectors of Q/Z and the induced U-classes.

    Two orbits, of sizes 1440 and 5120; each carries a single U-class of
    subgroups <rho, Z> since -1 is in L, and element classes are three times
    larger because conjugation by Q sweeps out the central coordinate
    (non-degeneracy of the commutation form).
    """
    handle = l_result["handle"]
    nonzero = list(range(1, handle.ops.domain))
    orbits = handle.orbit_partition(nonzero)
    sizes = sorted(len(o) for o in orbits)
    small = min(orbits, key=len)
    big = max(orbits, key=len)
    rho_point = min(small)
    rho_vec = handle.ops.vector(rho_point)
    c_small = handle.stabilizer(rho_point).order()
    big_point = min(big)
    c_big = handle.stabilizer(big_point).order()
    out = {
        "orbit_sizes": sizes,
        "rho_vector": rho_vec,
        "rho_centralizer_order": c_small,
        "big_orbit_centralizer_order": c_big,
        "element_class_sizes": sorted(3 * s for s in sizes),
        "centralizer_orders_distinguish": c_small != c_big,
        "sigma_fuses_scalars": True,
    }
    # sigma = -1 lies in L, so v and -v are L-conjugate: single class of
    # subgroups <rho, Z> per vector orbit
    neg_point = handle.ops.index((-rho_vec.astype(np.int64)) % 3)
    out["sigma_fuses_scalars"] = neg_point in set(small)
    if x_handle is not None:
        x_orbits = x_handle.orbit_partition(nonzero)
        out["x_refinement_sizes"] = sorted(len(o) for o in x_orbits)
    return out


def fingerprint_cr2(l_result: dict) -> CentralizerReport:
    """C_U(rho) for rho in the small L-orbit on Q/Z.

    (q, l) commutes with (rho, 1) iff l fixes the vector of rho and the
    vector of q pairs trivially with it, so |C_U(rho)| = 3^8 |C_L(rho)|.
    J = O_2(C_L(rho)) acts on V with [V, J] of dimension 6; its preimage
    [Q, J] is extraspecial 3^7, meets <rho> trivially, and together with
    <rho> fills C_Q(rho), giving the split C_U(rho) = <rho> x [Q,J]C_L(rho).
    """
    model = extraspecial.build_q39()
    handle = l_result["handle"]
    info = two_classes_in_q(l_result)
    rho_vec = info["rho_vector"]
    rho_point = handle.ops.index(rho_vec)
    stab = handle.stabilizer(rho_point)
    cl_order = stab.order()
    cu_order = 3**8 * cl_order

    cl_group = engine.matrix_group(stab.elements(), 3, gens=stab.gens)
    j = cl_group.p_core(2)
    vj = ff.Subspace.zero(8, 3)
    for g in j.gens:
        vj = vj + tensor.commutator_space(g)
    qj = model.subspace_structure(vj)
    form = model.commutation_form()
    rho_span = ff.Subspace(8, 3, rho_vec.reshape(1, -1))
    rho_perp = form.perp(rho_span)
    r_group = l_result["r"]
    cr_elems = [m for m in r_group.elements
                if np.array_equal(ff.mat_mul(rho_vec.reshape(1, -1), m, 3)[0], rho_vec)]
    cr = engine.matrix_group(cr_elems, 3)

    return CentralizerReport(
        subject="rho",
        order=cu_order,
        o2_order=j.order,
        o3_order=3**8,
        details={
            "order_mod_rho": cu_order // 3,
            "cl_order": cl_order,
            "j_order": j.order,
            "vj_dim": vj.dim,
            "qj_order": qj["order"],
            "qj_extraspecial": qj["extraspecial"],
            "rho_outside_vj": not vj.contains_vector(rho_vec),
            "rho_plus_vj_is_perp": (rho_span + vj) == rho_perp,
            "cr_rho_order": cr.order,
            "cr_rho_elementary_abelian": cr.is_elementary_abelian(2),
            "split_orders_multiply": 3 * qj["order"] * cl_order == cu_order,
        },
    )


def involution_classes_in_cd3(l_result: dict) -> dict:
    """Involution classes of C_L(d3) and their Q-centralizer orders."""
    model = extraspecial.build_q39()
    handle = l_result["handle"]
    gens = tensor.named_generators()
    d3 = gens["d3"]
    cl = engine.conjugation_centralizer(handle, d3)
    cl_group = engine.matrix_group(cl.elements(), 3, gens=cl.gens)
    inv_classes = [c for c in cl_group.conjugacy_classes()
                   if cl_group.element_order(c[0]) == 2]
    cq_orders = sorted(
        extraspecial.centralizer_in_q(model, c[0])["order"] for c in inv_classes)
    r_group = l_result["r"]
    crd3 = [m for m in r_group.elements
            if ff.key(ff.mat_mul(m, d3, 3)) == ff.key(ff.mat_mul(d3, m, 3))]
    sigma_keys = {ff.key(ff.identity(8)), ff.key(gens["sigma"])}
    return {
        "cl_d3_order": cl.order(),
        "num_involution_classes": len(inv_classes),
        "cq_orders": cq_orders,
        "cr_d3_is_sigma": {ff.key(m) for m in crd3} == sigma_keys,
    }


def coset_involution_fusion() -> dict:
    """Involutions in the coset R pi fuse into the classes of pi and sigma pi.

    R<pi> has order 256; every involution in the non-trivial coset is
    conjugate under R<pi> to pi or to sigma pi, and the two targets are
    distinguished by the dimension of their fixed space on V (6 vs 2).
    """
    gens = tensor.named_generators()
    pi, sigma = gens["pi"], gens["sigma"]
    r_group = tensor.build_r()
    coset = [ff.mat_mul(m, pi, 3) for m in r_group.elements]
    rpi = engine.matrix_group(r_group.elements + coset, 3,
                              gens=r_group.gens + [pi])
    ident_key = ff.key(ff.identity(8))
    involutions = [m for m in coset
                   if ff.key(ff.mat_mul(m, m, 3)) == ident_key]
    classes = rpi.conjugacy_classes()
    sigpi = ff.mat_mul(sigma, pi, 3)

    def class_of(x):
        xk = ff.key(x)
        for c in classes:
            if any(ff.key(y) == xk for y in c):
                return frozenset(ff.key(y) for y in c)
        raise AssertionError("element not in any class")

    cls_pi = class_of(pi)
    cls_sigpi = class_of(sigpi)
    covered = all(ff.key(m) in cls_pi or ff.key(m) in cls_sigpi
                  for m in involutions)
    return {
        "rpi_order": rpi.order,
        "coset_involutions": len(involutions),
        "pi_class_size": len(cls_pi),
        "sigma_pi_class_size": len(cls_sigpi),
        "all_covered": covered,
        "classes_distinct": cls_pi != cls_sigpi,
        "fixed_dims": (tensor.fixed_space(pi).dim, tensor.fixed_space(sigpi).dim),
    }


def centralizer_product_criterion(l_result: dict, trials: int, seed: int) -> bool:
    """(q, l) commutes with (0, pi) iff l commutes with pi and pi fixes q.

    Random elements of U are tested both ways: raw samples, and samples
    forced into C_Q(pi) x C_L(pi), must agree with the criterion.
    """
    u = build_u(l_result)["group"]
    pi = tensor.named_generators()["pi"]
    pi_elem = u.from_l(pi)
    model = u.model
    handle = l_result["handle"]
    cl = engine.conjugation_centralizer(handle, pi)
    fixed = extraspecial.fixed_subspace(model, pi)
    rng = np.random.default_rng(seed)
    for i in range(trials):
        if i % 2 == 0:
            x = u.random_element(rng)
        else:
            # an element built to centralize: fixed vector and C_L(pi) part
            vecs = fixed.vectors()
            v = vecs[rng.integers(0, len(vecs))]
            x = (model.element(v, int(rng.integers(0, 3))),
                 cl.random_element(rng))
        q, l = x
        criterion = (ff.key(ff.mat_mul(l, pi, 3)) == ff.key(ff.mat_mul(pi, l, 3))
                     and fixed.contains_vector(q[0]))
        if criterion != u.commutes(x, pi_elem):
            return False
    return True
