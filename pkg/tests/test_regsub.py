import itertools

import numpy as np
import pytest

from hololab import standard
from hololab.errors import DomainMismatch, NotCenterless, NotFpf
from hololab.groups import identity_hom, is_decomposable, trivial_hom
from hololab.holomorph import centralizer_in_sym, inhol, is_regular, lambda_rep, rho_rep
from hololab.homs import homomorphisms
from hololab.regsub import (Classification, FpfPair, centralizer_pair_condition, classify_pair,
                            enumerate_fpf_pairs, enumerate_regular_subgroups_brute, is_fixed_point_free,
                            is_projection_pair, minimality_verdict, projection_pair, realization_set,
                            regular_from_pair, realizations_isomorphic, decomposition_check)


def id_triv(G):
    return FpfPair(identity_hom(G), trivial_hom(G, G))


def triv_id(G):
    return FpfPair(trivial_hom(G, G), identity_hom(G))


def test_fixed_point_free_examples():
    S3 = standard.symmetric(3)
    assert is_fixed_point_free(identity_hom(S3), trivial_hom(S3, S3))
    assert not is_fixed_point_free(identity_hom(S3), identity_hom(S3))
    G = standard.builtin("S3xS3")
    pair = projection_pair(*is_decomposable(G))
    assert is_fixed_point_free(pair.f, pair.g)
    with pytest.raises(DomainMismatch):
        is_fixed_point_free(identity_hom(S3), trivial_hom(standard.cyclic(6), S3))
    with pytest.raises(NotFpf):
        FpfPair(identity_hom(S3), identity_hom(S3))


def test_regular_from_trivial_pairs():
    G = standard.dihedral(5)
    w = regular_from_pair(id_triv(G))
    assert w.classification is Classification.LAMBDA
    assert w.subgroup.same_elements(lambda_rep(G).subgroup)
    w = regular_from_pair(triv_id(G))
    assert w.classification is Classification.RHO
    assert w.subgroup.same_elements(rho_rep(G).subgroup)


def test_projection_pair_realization():
    G = standard.builtin("S3xS3")
    pair = projection_pair(*is_decomposable(G))
    assert is_projection_pair(pair)
    w = regular_from_pair(pair)
    assert w.subgroup.order == 36 and is_regular(w.subgroup)
    assert w.classification is Classification.OTHER


def test_fpf_pairs_c2():
    C2 = standard.cyclic(2)
    pairs = enumerate_fpf_pairs(C2, C2)
    got = {(p.f.images, p.g.images) for p in pairs}
    assert got == {((0, 1), (0, 0)), ((0, 0), (0, 1))}


@pytest.mark.parametrize("N,G", [("S3", "S3"), ("C6", "S3"), ("D5", "D5"), ("C10", "D5"), ("C4", "C2xC2"),
                                 ("S3xS3", "S3xS3")])
def test_fpf_pairs_match_double_loop(N, G):
    N, G = standard.builtin(N), standard.builtin(G)
    homs = homomorphisms(N, G)
    expected = set()
    for f, g in itertools.product(homs, repeat=2):
        if all(f(x) != g(x) for x in range(1, N.order)):
            expected.add((f.images, g.images))
    got = {(p.f.images, p.g.images) for p in enumerate_fpf_pairs(N, G)}
    assert got == expected


@pytest.mark.parametrize("N,G", [("S3", "S3"), ("C6", "S3"), ("D5", "D5"), ("C10", "D5")])
def test_realizations_are_regular_copies_of_domain(N, G):
    N, G = standard.builtin(N), standard.builtin(G)
    H = inhol(G)
    for pair in enumerate_fpf_pairs(N, G):
        R = regular_from_pair(pair).subgroup
        assert R.order == N.order
        assert is_regular(R)
        assert R.is_subgroup_of(H)
        assert realizations_isomorphic(pair)
        assert set(pair.f.kernel().elements) & set(pair.g.kernel().elements) == {0}


def test_centralizer_pair_condition_examples():
    G = standard.symmetric(3)
    assert centralizer_pair_condition(id_triv(G), triv_id(G))
    assert not centralizer_pair_condition(id_triv(G), id_triv(G))
    P = standard.builtin("S3xS3")
    proj = projection_pair(*is_decomposable(P))
    assert centralizer_pair_condition(proj, proj.swapped())
    with pytest.raises(NotCenterless):
        C3 = standard.cyclic(3)
        centralizer_pair_condition(id_triv(C3), triv_id(C3))


@pytest.mark.parametrize("name", ["S3", "D5"])
def test_centralizer_duality(name):
    G = standard.builtin(name)
    pairs = enumerate_fpf_pairs(G, G)
    for p1, p2 in itertools.product(pairs, repeat=2):
        if centralizer_pair_condition(p1, p2):
            R1 = regular_from_pair(p1).subgroup
            R2 = regular_from_pair(p2).subgroup
            assert centralizer_in_sym(R1).same_elements(R2)
            assert centralizer_in_sym(R2).same_elements(R1)


def _as_set(subgroups):
    return {R.elements.tobytes() for R in subgroups}


@pytest.mark.parametrize("name,domains", [("S3", ["C6", "S3"]), ("D5", ["C10", "D5"])])
def test_realizations_equal_brute_force(name, domains):
    G = standard.builtin(name)
    real = realization_set(G, [standard.builtin(d) for d in domains])
    brute = enumerate_regular_subgroups_brute(G)
    assert _as_set(real) == _as_set(brute)


def test_brute_force_abelian_only_lambda():
    G = standard.cyclic(5)
    brute = enumerate_regular_subgroups_brute(G)
    assert len(brute) == 1 and brute[0].same_elements(lambda_rep(G).subgroup)


@pytest.mark.parametrize("name", ["S3", "D5", "A5"])
def test_minimal_groups(name):
    G = standard.builtin(name)
    v = minimality_verdict(G)
    assert v.verdict == "MINIMAL" and v.witness is None
    rep = decomposition_check(G)
    assert rep.decomposition is None and rep.consistent


@pytest.mark.parametrize("name", ["S3xS3", "S3xD5"])
def test_decomposable_groups(name):
    G = standard.builtin(name)
    rep = decomposition_check(G)
    assert rep.verdict.verdict == "STRICTLY_LARGER"
    assert rep.consistent, rep.cross_checks
    pair, partner = rep.projection_witness
    assert is_projection_pair(pair)
    kernels = {pair.f.kernel().elements, pair.g.kernel().elements}
    H, K = rep.decomposition
    assert kernels == {H.elements, K.elements}
    for p, q in rep.verdict.witnesses[:50]:
        assert centralizer_pair_condition(p, q)
        assert classify_pair(p) is Classification.OTHER


def test_s3xs3_kernels_recover_factors():
    G = standard.builtin("S3xS3")
    rep = decomposition_check(G)
    pair, _ = rep.projection_witness
    assert pair.f.kernel().elements == tuple(range(0, 36, 6))       # 1 x S3
    assert pair.g.kernel().elements == tuple(range(6))              # S3 x 1


def test_minimality_requires_centerless():
    with pytest.raises(NotCenterless):
        minimality_verdict(standard.dihedral(4))


def test_witness_images_generate():
    G = standard.builtin("S3xS3")
    v = minimality_verdict(G)
    t = G.table
    for p, _ in v.witnesses[:100]:
        fi = set(p.f.image().elements)
        gi = set(p.g.image().elements)
        prods = {int(t[a, b]) for a in fi for b in gi}
        assert len(prods) == G.order


def test_pair_serialization():
    G = standard.symmetric(3)
    d = id_triv(G).to_dict()
    assert d == {"f": list(range(6)), "g": [0] * 6}
    w = regular_from_pair(id_triv(G)).to_dict()
    assert w["classification"] == "LAMBDA"
    assert np.array(w["subgroup"]).shape == (6, 6)
