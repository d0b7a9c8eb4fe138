import math

import numpy as np
import pytest

from hololab import standard
from hololab.errors import Abelian, CapExceeded, DegreeTooSmall, InvalidParameter, NotCenterless
from hololab.groups import quotient, subgroup_from_mask
from hololab.holomorph import hol_inv, inhol
from hololab.homs import is_isomorphic
from hololab.lifting import (Ambient, LiftSpec, embed, holomorph_assembly, index_in_alternating,
                             intersect_alternating, invariant_subsets, lift_check, normalizer_quotient, pad,
                             structural_normalizer)
from hololab.perms import Permutation, PermSubgroup, normalizer_in_sym, parity_even, symmetric_group

CYCLE3 = PermSubgroup(3, [Permutation([1, 2, 0])])


def test_liftspec_validation():
    with pytest.raises(DegreeTooSmall):
        LiftSpec(CYCLE3, 3, 6)
    with pytest.raises(InvalidParameter):
        LiftSpec(CYCLE3, 4, 9)
    LiftSpec(CYCLE3, 3, 7)


def test_pad_fixes_new_points():
    p = pad(Permutation([1, 0]), 5)
    assert p.images == (1, 0, 2, 3, 4)


def test_embed_orders():
    H1 = embed(LiftSpec(PermSubgroup(2, []), 2, 5))
    assert H1.order == 6
    H1 = embed(LiftSpec(CYCLE3, 3, 7))
    assert H1.order == 3 * math.factorial(4) == 72
    H2 = intersect_alternating(H1)
    assert H2.order == 36
    assert parity_even(H2.elements).all()


def test_h2_examples():
    H1 = embed(LiftSpec(PermSubgroup(2, [Permutation([1, 0])]), 2, 5))
    assert H1.order == 12
    H2 = intersect_alternating(H1)
    assert H2.order == 6
    # H2 is not H x A_{m-n}: it contains elements odd on both blocks
    assert any(r[0] == 1 for r in H2.elements.tolist())
    assert (Permutation([1, 0, 3, 2, 4]).images) in {tuple(r) for r in H2.elements.tolist()}


def test_invariant_subsets():
    H1 = embed(LiftSpec(CYCLE3, 3, 7))
    assert invariant_subsets(H1, 4) == [(3, 4, 5, 6)]
    assert invariant_subsets(H1, 3) == [(0, 1, 2)]
    assert invariant_subsets(symmetric_group(4), 2) == []


def test_index_in_alternating():
    assert index_in_alternating(symmetric_group(4).elements) == 2
    assert index_in_alternating(CYCLE3.elements) == 1


@pytest.mark.parametrize("H,n,m,expect", [
    (PermSubgroup(2, []), 2, 5, "C2"),
    (CYCLE3, 3, 7, "C2"),
    (PermSubgroup(2, [Permutation([1, 0])]), 2, 5, "C1"),
])
def test_lift_examples(H, n, m, expect):
    rep = lift_check(H, n, m, standard.builtin(expect))
    assert rep.iso_sym and rep.iso_alt
    assert rep.passed, rep.cross_checks
    base = normalizer_in_sym(H)
    NT = base.to_group_table()
    idx = base.index_rows(H.elements)
    mask = np.zeros(NT.order, dtype=bool)
    mask[idx] = True
    Q, _ = quotient(NT, subgroup_from_mask(NT, mask))
    assert is_isomorphic(Q, rep.sym.table) is not None


@pytest.mark.parametrize("m", [3, 4, 5])
def test_lift_degree_one(m):
    rep = lift_check(PermSubgroup(1, []), 1, m, standard.builtin("C1"))
    assert rep.passed and rep.sym.order == 1 and rep.alt.order == 1


def test_product_construction_fails_in_a3():
    """Why n = 1 is handled directly: the even part of S_1 x S_2 is trivial in A_3."""
    H2 = intersect_alternating(embed(LiftSpec(PermSubgroup(1, []), 1, 3)))
    assert H2.order == 1
    assert normalizer_quotient(Ambient.ALT, 3, H2).order == 3


def test_lift_reports_mismatch_honestly():
    rep = lift_check(CYCLE3, 3, 7, standard.builtin("C3"))
    assert not rep.iso_sym and not rep.passed


def test_structural_normalizer_matches_scan():
    H = PermSubgroup(3, [Permutation([1, 0, 2])])
    H1 = embed(LiftSpec(H, 3, 7))
    scanned = normalizer_in_sym(H1)
    assert structural_normalizer(H, 7).same_elements(scanned)


def test_normalizer_quotient_alt_requires_even():
    H1 = embed(LiftSpec(CYCLE3, 3, 7))
    with pytest.raises(InvalidParameter):
        normalizer_quotient(Ambient.ALT, 7, H1)
    q = normalizer_quotient("ALT", 7, intersect_alternating(H1))
    assert q.order == 2


def test_lift_report_serialization():
    d = lift_check(CYCLE3, 3, 7, standard.builtin("C2")).to_dict()
    assert d["H1_order"] == 72 and d["H2_order"] == 36
    assert d["iso_to_expected"] == {"SYM": True, "ALT": True}
    assert d["normalizer_orders"] == {"SYM": 144, "ALT": 72}


def test_assembly_s3():
    rep = holomorph_assembly(standard.symmetric(3))
    assert rep.H_order == 72 and rep.normalizer_order == 72
    assert rep.self_normalizing and rep.quotient.order == 1 and rep.out.order == 1
    assert rep.equals_hol_inv and rep.quotient_iso_out
    assert rep.label == "EXPLORATORY"
    assert all(rep.cross_checks.values())


@pytest.mark.slow
def test_assembly_d5():
    D5 = standard.dihedral(5)
    rep = holomorph_assembly(D5)
    assert rep.H_order == 200 and rep.out.order == 2
    assert rep.normalizer_order == hol_inv(D5).order == 400
    assert rep.quotient_iso_out and rep.label == "EXPLORATORY"
    assert rep.to_dict()["self_normalizing"] is False


def test_assembly_errors():
    with pytest.raises(Abelian):
        holomorph_assembly(standard.cyclic(4))
    with pytest.raises(NotCenterless):
        holomorph_assembly(standard.dihedral(4))
    with pytest.raises(CapExceeded):
        holomorph_assembly(standard.alternating(4))


def test_inhol_subgroup_of_h():
    S3 = standard.symmetric(3)
    assert inhol(S3).is_subgroup_of(hol_inv(S3))
