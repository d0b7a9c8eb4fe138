import itertools

import numpy as np
import pytest

from hololab import cs, liealg as la, standard
from hololab.errors import CapExceeded, CertificateFailed, GroupMismatch, InvalidParameter, PTooSmall, TTooSmall
from hololab.fp import rank, rref

SEED = 11


@pytest.fixture(scope="module")
def cs35():
    return cs.build(cs.CsParams(standard.cyclic(3), 5))


def test_weight_scalar_examples():
    B = la.hall_basis(3, 3)
    for i in range(len(B)):
        assert cs.weight_scalar((1, 1, 1), B.weights[i], 5) == 1
    for i in range(3):
        a = (2, 3, 4)
        assert cs.weight_scalar(a, B.weights[i], 5) == a[i]
    B2 = la.hall_basis(2, 3)
    x1, x2 = B2.generator(1, 5), B2.generator(2, 5)
    v = la.bracket(x1, la.bracket(x2, x1))
    (idx, _), = v.coefficients.items()
    assert cs.weight_scalar((2, 3), B2.weights[idx], 5) == 2


def test_q_act_is_automorphism():
    B = la.hall_basis(3, 3)
    p = 7
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        a = tuple(int(x) for x in rng.integers(1, p, size=3))
        u, v = B.random(p, rng), B.random(p, rng)
        assert cs.q_act(a, la.bracket(u, v)) == la.bracket(cs.q_act(a, u), cs.q_act(a, v))
        assert cs.q_act(a, la.bch_multiply(u, v)) == la.bch_multiply(cs.q_act(a, u), cs.q_act(a, v))
        b = tuple(int(x) for x in rng.integers(1, p, size=3))
        ab = tuple(x * y % p for x, y in zip(a, b))
        assert cs.q_act(ab, u) == cs.q_act(a, cs.q_act(b, u))


def test_n_fold_vector_identity_element():
    T = standard.cyclic(3)
    B = la.hall_basis(3, 3)
    v = cs.n_fold_commutator_vector(T, 0, 5, B)
    t1, t2 = B.generator(1, 5), B.generator(2, 5)
    assert v == la.bracket(t1, la.bracket(t2, t1))
    assert v.support_degrees() == {3}


@pytest.mark.parametrize("T,p", [("C3", 5), ("C4", 7), ("C2xC2", 7)])
def test_relation_vectors_homogeneous(T, p):
    G = cs.build(cs.CsParams(standard.builtin(T), p))
    n = G.n
    for t in range(n):
        v = cs.n_fold_commutator_vector(G.params.T, t, p, G.basis)
        assert v.support_degrees() <= {n}
        entries = [int(G.params.T.table[t, j]) for j in range(n - 1)] + [t]
        expected = tuple(sum(1 for e in entries if e == i) for i in range(n))
        for idx in v.coefficients:
            assert tuple(G.basis.weights[idx]) == expected


def test_build_c3_5(cs35):
    G = cs35
    assert G.D == 14 and G.dims == (3, 3, 8)
    assert G.r == rank(G.relation_vectors, 5)
    assert G.order == 5 ** (14 - G.r) * 64
    assert G.r <= 3


def test_build_errors():
    with pytest.raises(PTooSmall):
        cs.CsParams(standard.cyclic(3), 3)
    with pytest.raises(TTooSmall):
        cs.CsParams(standard.cyclic(2), 7)
    with pytest.raises(InvalidParameter):
        cs.CsParams(standard.cyclic(3), 9)
    with pytest.raises(CapExceeded):
        cs.CsParams(standard.cyclic(5), 7)


def test_relation_space_is_q_stable(cs35):
    G = cs35
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        a = tuple(int(x) for x in rng.integers(1, 5, size=3))
        for row in G.relation_space:
            moved = cs.q_act(a, la.LieVector(G.basis, 5, row)).coeffs
            assert rank(np.vstack([G.relation_space, moved]), 5) == G.r


def test_canonicalize_idempotent(cs35):
    rng = np.random.default_rng(SEED)
    U = rng.integers(0, 5, size=(100, cs35.D))
    once = cs35.canonicalize(U)
    assert np.array_equal(cs35.canonicalize(once), once)
    assert not once[:, cs35.pivots].any()
    # the difference lies in the relation space
    for u, c in zip(U, once):
        assert rank(np.vstack([cs35.relation_space, (u - c) % 5]), 5) == cs35.r


def test_group_axioms(cs35):
    G = cs35
    rng = np.random.default_rng(SEED)
    e = G.identity()
    for _ in range(1000):
        x, y, z = (G.random_element(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
    for _ in range(200):
        x = G.random_element(rng)
        assert x * e == x == e * x
        assert x * G.inverse(x) == e == G.inverse(x) * x


def test_pure_parts(cs35):
    G = cs35
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        v = G.element(rng.integers(0, 5, size=G.D))
        assert G.power(v, 5) == G.identity()
        q1 = tuple(int(x) for x in rng.integers(1, 5, size=3))
        q2 = tuple(int(x) for x in rng.integers(1, 5, size=3))
        prod = G.element(q=q1) * G.element(q=q2)
        assert prod.q == tuple(a * b % 5 for a, b in zip(q1, q2)) and not prod.lie.any()
        u = G.element(rng.integers(0, 5, size=G.D))
        w = u * v
        assert np.array_equal(w.lie, G.canonicalize(la.bch_rows(G.basis, u.lie, v.lie, 5)[0]))


def test_group_mismatch(cs35):
    other = cs.build(cs.CsParams(standard.cyclic(3), 7))
    with pytest.raises(GroupMismatch):
        cs35.multiply(cs35.identity(), other.identity())


def test_q_fixed_levels_zero(cs35):
    for k in (1, 2, 3):
        assert cs35.q_fixed_subspace(k).shape[0] == 0
        assert cs35.q_fixed_by_multiplicity(k) == []


def test_synthetic_fixed_vectors_p3():
    B = la.hall_basis(3, 3)
    assert cs.fixed_subspace(B, 3, 2).shape[0] == 0
    assert cs.multiplicity_fixed(B, 3, 2) == []
    B = la.hall_basis(2, 4)
    fixed = cs.fixed_subspace(B, 3, 4)
    crit = cs.multiplicity_fixed(B, 3, 4)
    assert len(crit) == 1 and tuple(B.weights[crit[0]]) == (2, 2)
    assert fixed.shape[0] == 1 and np.flatnonzero(fixed[0]).tolist() == crit
    # weight (1, 2) elements of degree 3 are not fixed
    assert cs.fixed_subspace(B, 3, 3).shape[0] == 0


def test_fixed_subspace_against_direct_check():
    """Brute force over all vectors of a small component: fixed by every element of Q."""
    B = la.hall_basis(2, 4)
    p = 3
    idx = np.flatnonzero(B.degrees == 4)
    fixed = []
    for coeffs in itertools.product(range(p), repeat=len(idx)):
        v = np.zeros(len(B), dtype=np.int64)
        v[idx] = coeffs
        vec = la.LieVector(B, p, v)
        if all(cs.q_act(a, vec) == vec for a in itertools.product(range(1, p), repeat=2)):
            fixed.append(v)
    basis = cs.fixed_subspace(B, p, 4)
    assert len(fixed) == p ** basis.shape[0]


def test_faithful_degree1(cs35):
    assert cs.faithful_on_degree1(cs35)


def test_random_center_check(cs35):
    res = cs.random_center_check(cs35, samples=1000, seed=3)
    assert res["witnesses"] == 0 and res["samples"] >= 999 and res["seed"] == 3


@pytest.mark.parametrize("T,p", [("C3", 5), ("C4", 7)])
def test_center_certificate(T, p):
    G = cs.build(cs.CsParams(standard.builtin(T), p))
    cert = cs.center_certificate(G)
    assert cert.passed
    d = cert.to_dict()
    assert d["q_fixed_total"] == 0
    assert d["random_center_check"]["witnesses"] == 0
    assert set(d) >= {"n", "p", "dims", "r", "order_factored", "q_fixed_levels", "faithful_degree1",
                      "random_center_check"}


def test_center_certificate_detects_failure(cs35, monkeypatch):
    monkeypatch.setattr(cs, "faithful_on_degree1", lambda G: False)
    with pytest.raises(CertificateFailed):
        cs.center_certificate(cs35, samples=10)


def test_certificate_deterministic(cs35):
    a = cs.center_certificate(cs35, samples=200).to_dict()
    b = cs.center_certificate(cs35, samples=200).to_dict()
    assert a == b


def test_element_serialization(cs35):
    x = cs35.random_element(np.random.default_rng(1))
    d = x.to_dict()
    assert len(d["q"]) == 3 and all(v != 0 for v in d["q"])
    lie = np.zeros(cs35.D, dtype=np.int64)
    for i, v in d["lie"]:
        lie[i] = v
    assert cs35.element(lie, d["q"]) == x


def test_rref_basics():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    R, piv = rref(M, 5)
    assert piv == [0, 1] and R.shape == (2, 3)
