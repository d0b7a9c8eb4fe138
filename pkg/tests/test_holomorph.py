import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hololab import standard
from hololab.errors import CapExceeded
from hololab.holomorph import (centralizer_in_sym, hol, hol_inv, inhol, inv_perm, is_regular, lambda_perm,
                               lambda_rep, nhol, outer_automorphism_group, rho_perm, rho_rep)
from hololab.homs import automorphisms
from hololab.perms import (Permutation, PermSubgroup, centralizer_scan, generating_subset, normalizer_in_sym,
                           scan_sym, symmetric_group)

CORPUS = ["C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "D4", "Q8", "D5", "A4"]


def brute_normalizer(H: PermSubgroup) -> set:
    """Every permutation s with s^-1 H s = H, by conjugating all of H."""
    d = H.degree
    elems = {tuple(r) for r in H.elements.tolist()}
    out = set()
    for s in itertools.permutations(range(d)):
        sp = Permutation(s)
        conj = {tuple(Permutation(h).conjugate_by(sp).images) for h in elems}
        if conj == elems:
            out.add(s)
    return out


def test_composition_convention():
    s = Permutation([1, 2, 0])
    t = Permutation([1, 0, 2])
    st_ = s * t
    assert all(st_(x) == s(t(x)) for x in range(3))
    c = t.conjugate_by(s)
    assert c == s.inverse() * t * s


def test_permutation_basics():
    p = Permutation([1, 2, 0, 4, 3])
    assert p.order() == 6
    assert not p.is_even()
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert (p * p.inverse()).is_identity()
    with pytest.raises(Exception):
        Permutation([0, 0, 1])


def test_lambda_examples():
    C3 = standard.cyclic(3)
    assert lambda_perm(C3, 0).is_identity()
    assert lambda_perm(C3, 1).images == (1, 2, 0)
    assert rho_perm(C3, 0).is_identity()


@pytest.mark.parametrize("name", CORPUS)
def test_lambda_rho_are_commuting_embeddings(name):
    G = standard.builtin(name)
    lam, rho = lambda_rep(G), rho_rep(G)
    t = G.table
    for g, h in itertools.product(range(G.order), repeat=2):
        assert lam[g] * lam[h] == lam[int(t[g, h])]
        assert rho[g] * rho[h] == rho[int(t[g, h])]
        assert lam[g] * rho[h] == rho[h] * lam[g]
    assert len({p.images for p in lam.perms}) == G.order
    assert is_regular(lam.subgroup) and is_regular(rho.subgroup)


@pytest.mark.parametrize("name", CORPUS)
def test_inv_swaps_lambda_and_rho(name):
    G = standard.builtin(name)
    inv = inv_perm(G)
    assert (inv * inv).is_identity()
    for g in range(G.order):
        assert inv * lambda_perm(G, g) * inv == rho_perm(G, g)


def test_abelian_rho_is_lambda_of_inverse():
    G = standard.cyclic(5)
    for g in range(5):
        assert rho_perm(G, g) == lambda_perm(G, G.inv(g))
    assert inhol(G).same_elements(lambda_rep(G).subgroup)


def test_inv_in_hol_iff_abelian():
    assert inv_perm(standard.cyclic(4)) in hol(standard.cyclic(4))
    assert inv_perm(standard.symmetric(3)) not in hol(standard.symmetric(3))


def test_hol_and_inhol_orders():
    assert hol(standard.cyclic(3)).order == 6
    S3 = standard.symmetric(3)
    assert inhol(S3).order == 36
    lam, rho = lambda_rep(S3).subgroup, rho_rep(S3).subgroup
    assert len(lam.element_set() & rho.element_set()) == 1
    assert hol(S3).order == 36
    assert hol_inv(S3).order == 72


def test_is_regular_examples():
    stab = PermSubgroup(3, [Permutation([0, 2, 1])])
    assert not is_regular(stab)
    assert not is_regular(inhol(standard.symmetric(3)))


@pytest.mark.parametrize("name", ["C3", "S3", "D4"])
def test_centralizer_of_lambda_is_rho_both_methods(name):
    G = standard.builtin(name)
    lam, rho = lambda_rep(G).subgroup, rho_rep(G).subgroup
    closed = centralizer_in_sym(lam, method="regular")
    scanned = centralizer_in_sym(lam, method="scan")
    assert closed.same_elements(rho)
    assert scanned.same_elements(rho)


def test_double_centralizer_and_trivial_centralizer():
    S3 = standard.symmetric(3)
    lam = lambda_rep(S3).subgroup
    assert centralizer_in_sym(centralizer_in_sym(lam)).same_elements(lam)
    for d in (3, 4, 5):
        assert centralizer_scan(symmetric_group(d)).order == 1


@pytest.mark.parametrize("name", ["C3", "C4", "C2xC2", "S3"])
def test_normalizer_matches_full_conjugation(name):
    G = standard.builtin(name)
    for H in (lambda_rep(G).subgroup, inhol(G)):
        fast = {tuple(r) for r in normalizer_in_sym(H).elements.tolist()}
        assert fast == brute_normalizer(H)


def test_normalizer_examples():
    C3 = standard.cyclic(3)
    assert normalizer_in_sym(lambda_rep(C3).subgroup).order == 6
    S3 = standard.symmetric(3)
    N = normalizer_in_sym(inhol(S3))
    assert N.order == 72 and N.same_elements(hol_inv(S3))


@pytest.mark.slow
def test_normalizer_inhol_d5():
    D5 = standard.dihedral(5)
    N = normalizer_in_sym(inhol(D5))
    assert N.order == 400 == 2 * 10 * len(automorphisms(D5))
    assert N.same_elements(hol_inv(D5))


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7"])
def test_normalizer_of_lambda_is_hol(name):
    G = standard.builtin(name)
    assert normalizer_in_sym(lambda_rep(G).subgroup).same_elements(hol(G))


def test_normalizer_contains_subgroup_and_is_closed():
    H = inhol(standard.builtin("C2xC2"))
    N = normalizer_in_sym(H)
    assert H.is_subgroup_of(N)
    rows = N.elements
    for a in rows:
        assert N.contains_rows(a[rows]).all()


def test_scan_threads_agree():
    S3 = standard.symmetric(3)
    H = inhol(S3)
    one = scan_sym(6, H.generators, H.keys, "normalize", threads=1)
    two = scan_sym(6, H.generators, H.keys, "normalize", threads=2)
    assert np.array_equal(one, two)


def test_scan_alternating_is_even_part():
    H = lambda_rep(standard.cyclic(5)).subgroup
    full = normalizer_in_sym(H)
    alt = normalizer_in_sym(H, alternating=True)
    even = [r for r in full.elements.tolist() if Permutation(r).is_even()]
    assert alt.elements.tolist() == even


def test_degree_cap(monkeypatch):
    monkeypatch.delenv("HOLOLAB_MAX_DEGREE", raising=False)
    H = PermSubgroup(11, [])
    with pytest.raises(CapExceeded):
        normalizer_in_sym(H)
    with pytest.raises(CapExceeded):
        normalizer_in_sym(PermSubgroup(13, []), max_degree=13)
    monkeypatch.setenv("HOLOLAB_MAX_DEGREE", "4")
    with pytest.raises(CapExceeded):
        normalizer_in_sym(PermSubgroup(5, []))


def test_nhol_small():
    C3 = standard.cyclic(3)
    assert hol(C3).is_subgroup_of(nhol(C3))
    S3 = standard.symmetric(3)
    N = nhol(S3)
    assert N.order % 36 == 0
    assert N.order == 72
    with pytest.raises(CapExceeded):
        nhol(standard.cyclic(12))


def regular_normal_copies(G):
    """Regular normal subgroups of Hol(G) isomorphic to G (G cyclic of prime order here)."""
    H = hol(G)
    rows = H.elements
    found = set()
    for r in rows:
        p = Permutation(r)
        if p.order() != G.order:
            continue
        S = PermSubgroup(G.order, [p])
        if not is_regular(S):
            continue
        normal = all(PermSubgroup(G.order, [p.conjugate_by(Permutation(s))]).same_elements(S) for s in rows)
        if normal:
            found.add(S.elements.tobytes())
    return found


def test_nhol_count_for_c5():
    C5 = standard.cyclic(5)
    N, H = nhol(C5), hol(C5)
    assert N.order == 20
    assert len(regular_normal_copies(C5)) == N.order // H.order


def test_outer_automorphism_group():
    assert outer_automorphism_group(standard.symmetric(3)).order == 1
    assert outer_automorphism_group(standard.dihedral(5)).order == 2
    assert outer_automorphism_group(standard.cyclic(5)).order == 4


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(range(6)), min_size=1, max_size=3))
def test_generating_subset_generates_same_group(perms):
    G = PermSubgroup(6, [Permutation(p) for p in perms])
    gens = generating_subset(6, G.elements)
    assert PermSubgroup(6, gens).same_elements(G)
    # each greedy generator at least doubles the order
    assert 2 ** len(gens) <= G.order
