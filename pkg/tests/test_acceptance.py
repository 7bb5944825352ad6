"""Acceptance suite: the twelve headline criteria, one line each.

Each test evaluates one criterion completely and emits a single
pass/fail line; the shared session context keeps the expensive
constructions (L, the parabolic, the centralizer reports) cached.
"""

import numpy as np

from sp8local import checks, engine, ff, semidirect, tensor


def _run(ctx, pattern):
    return checks.run_checks(pattern, seed=0, include_slow=True, ctx=ctx)


def _report(num, label, results):
    ok = all(r.passed for r in results)
    print(f"criterion {num:02d} [{label}]: {'PASS' if ok else 'FAIL'}")
    for r in results:
        assert r.passed, f"{r.check_id}: expected {r.expected}, got {r.computed}"
    return ok


def test_criterion_01_lemma_3_1_table(ctx):
    _report(1, "lemma 3.1 action table and spans", _run(ctx, "lemma-3.1-*"))


def test_criterion_02_lemma_3_2(ctx):
    _report(2, "lemma 3.2 centralizer of pi in X", _run(ctx, "lemma-3.2-*"))


def test_criterion_03_lemma_3_3(ctx):
    _report(3, "lemma 3.3 involutions in every coset", _run(ctx, "lemma-3.3-*"))


def test_criterion_04_constructions(ctx):
    _report(4, "orders and shapes of X, R, L, P", _run(ctx, "construct-*"))


def test_criterion_05_q_model(ctx):
    results = _run(ctx, "q-model-*") + _run(ctx, "lemma-2.6-*")
    _report(5, "Q model and commutation duality", results)


def test_criterion_06_lemma_4_1(ctx):
    results = [r for r in _run(ctx, "lemma-4.1-*") if r.check_id != "lemma-4.1-x"]
    assert len(results) == 6
    _report(6, "lemma 4.1 clauses (iv)-(ix)", results)


def test_criterion_07_lemmas_4_2_and_4_3(ctx):
    results = _run(ctx, "lemma-4.2-*") + _run(ctx, "lemma-4.3-*")
    _report(7, "elementary abelian and exponent-3 subgroups", results)


def test_criterion_08_lemma_4_4(ctx):
    _report(8, "lemma 4.4 involution classes in C_L(d3)", _run(ctx, "lemma-4.4-*"))


def test_criterion_09_lemma_4_7(ctx):
    _report(9, "lemma 4.7 centralizer of pi in U and M", _run(ctx, "lemma-4.7-*"))


def test_criterion_10_lemma_4_8(ctx):
    _report(10, "lemma 4.8 centralizer of r", _run(ctx, "lemma-4.8-*"))


def test_criterion_11_lemma_4_9(ctx):
    _report(11, "lemma 4.9 two classes and C_U(rho)", _run(ctx, "lemma-4.9-*"))


def test_criterion_12_property_suites(ctx):
    failures = []

    rng = np.random.default_rng(0)
    for _ in range(200):  # rank-nullity
        rows, cols = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        m = ff.fmat(rng.integers(0, 3, size=(rows, cols)), 3)
        if ff.rank(m, 3) + ff.solve_right_kernel(m, 3).dim != cols:
            failures.append("rank-nullity")

    for _ in range(200):  # modular subspace law
        a = ff.row_space(ff.fmat(rng.integers(0, 3, size=(2, 6)), 3), 3)
        b = ff.row_space(ff.fmat(rng.integers(0, 3, size=(2, 6)), 3), 3)
        c = a + ff.row_space(ff.fmat(rng.integers(0, 3, size=(1, 6)), 3), 3)
        if (a + b) & c != a + (b & c):
            failures.append("modular-law")

    form = tensor.tensor_form()
    for _ in range(200):  # perp involution
        s = ff.row_space(ff.fmat(rng.integers(0, 3, size=(3, 8)), 3), 3)
        if form.perp(form.perp(s)) != s:
            failures.append("perp-involution")

    # BSGS vs brute force on groups of order <= 5000
    for n, q, count in ((3, 2, 100), (2, 3, 100)):
        ops = engine.MatrixOps(q, n)
        done = 0
        while done < count:
            gens = [ff.fmat(rng.integers(0, q, size=(n, n)), q) for _ in range(2)]
            if any(ff.mat_inv(g, q) is None for g in gens):
                continue
            brute = engine.closure(gens, lambda a, b: ff.mat_mul(a, b, q),
                                   ff.key, ff.identity(n), limit=6000)
            if engine.GroupHandle(gens, ops).order() != len(brute):
                failures.append("bsgs")
            done += 1

    if not semidirect.associativity_holds(ctx.u_data["group"], 200, seed=0):
        failures.append("semidirect-associativity")

    ok = not failures
    print(f"criterion 12 [property suites, 5 x 200 cases]: "
          f"{'PASS' if ok else 'FAIL ' + str(set(failures))}")
    assert ok
