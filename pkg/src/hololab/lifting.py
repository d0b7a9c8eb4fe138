"""Moving a normalizer quotient N(H)/H from S_n up to S_m and A_m, and the
desk-scale pipeline H = <InHol(G), inv_G> inside Sym(G).

Points of S_m are {0..m-1}; H acts on the first n of them and the factor
S_{m-n} on the remaining points {n..m-1}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import Abelian, CapExceeded, DegreeTooSmall, InvalidParameter, NotCenterless, NotNormalInNormalizer
from .groups import GroupTable, center, quotient, subgroup_from_mask
from .holomorph import hol, hol_inv, inhol, inhol_inv, inv_perm, outer_automorphism_group
from .homs import inner_automorphisms, is_characteristic, is_isomorphic
from .perms import (Permutation, PermSubgroup, generating_subset, normalizer_in_sym, parity_even,
                    symmetric_group)

ASSEMBLY_MAX_ORDER = 10
CHARACTERISTIC_MAX_ORDER = 200
INVARIANT_SCAN_MAX_DEGREE = 10


class Ambient(str, Enum):
    SYM = "SYM"
    ALT = "ALT"


@dataclass
class LiftSpec:
    H: PermSubgroup
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter("n must be at least 1")
        if self.H.degree != self.n:
            raise InvalidParameter(f"H has degree {self.H.degree}, expected n = {self.n}")
        if self.m < 2 * self.n + 1:
            raise DegreeTooSmall(f"m = {self.m} < 2n + 1 = {2 * self.n + 1}")


def pad(perm: Permutation, m: int) -> Permutation:
    """Extend a permutation of {0..n-1} to {0..m-1} fixing the new points."""
    return Permutation(list(perm.images) + list(range(perm.degree, m)), check=False)


def pad_rows(rows: np.ndarray, m: int) -> np.ndarray:
    rows = np.atleast_2d(rows)
    tail = np.broadcast_to(np.arange(rows.shape[1], m), (rows.shape[0], m - rows.shape[1]))
    return np.hstack([rows, tail])


def embed(spec: LiftSpec) -> PermSubgroup:
    """H1 = H x Sym({n..m-1}) inside S_m."""
    tail = symmetric_group(spec.m - spec.n, points=range(spec.n, spec.m), degree=spec.m)
    gens = [pad(g, spec.m) for g in spec.H.generators] + tail.generators
    return PermSubgroup(spec.m, gens, name="H1")


def intersect_alternating(H1: PermSubgroup) -> PermSubgroup:
    """Even permutations of H1."""
    rows = H1.elements
    even = rows[parity_even(rows)]
    return PermSubgroup(H1.degree, generating_subset(H1.degree, even), elements=even, name="H2")


@dataclass
class NormalizerQuotient:
    ambient: Ambient
    K: PermSubgroup
    normalizer: PermSubgroup
    table: GroupTable

    @property
    def order(self) -> int:
        return self.table.order


def normalizer_quotient(ambient: Ambient | str, m: int, K: PermSubgroup, max_degree: int | None = None,
                        threads: int = 1) -> NormalizerQuotient:
    """N(K)/K with N(K) taken in S_m or A_m by a full scan."""
    ambient = Ambient(ambient)
    if K.degree != m:
        raise InvalidParameter(f"K has degree {K.degree}, expected {m}")
    alt = ambient is Ambient.ALT
    if alt and not parity_even(K.elements).all():
        raise InvalidParameter("K is not contained in A_m")
    N = normalizer_in_sym(K, max_degree=max_degree, threads=threads, alternating=alt)
    NT = N.to_group_table(name=f"N_{ambient.value}")
    idx = N.index_rows(K.elements)
    if (idx < 0).any():
        raise NotNormalInNormalizer("K is not contained in its computed normalizer")
    mask = np.zeros(NT.order, dtype=bool)
    mask[idx] = True
    Ksub = subgroup_from_mask(NT, mask)
    if not Ksub.is_normal():
        raise NotNormalInNormalizer("K is not normal in its computed normalizer")
    Q, _ = quotient(NT, Ksub, name=f"N_{ambient.value}(K)/K")
    return NormalizerQuotient(ambient, K, N, Q)


def structural_normalizer(H: PermSubgroup, m: int, max_degree: int | None = None) -> PermSubgroup:
    """N_{S_n}(H) x Sym({n..m-1}) inside S_m."""
    n = H.degree
    NH = normalizer_in_sym(H, max_degree=max_degree)
    tail = symmetric_group(m - n, points=range(n, m), degree=m)
    gens = [pad(g, m) for g in generating_subset(n, NH.elements)] + tail.generators
    return PermSubgroup(m, gens)


def invariant_subsets(K: PermSubgroup, size: int) -> list[tuple[int, ...]]:
    """All ``size``-subsets of the points mapped to themselves by K."""
    m = K.degree
    if m > INVARIANT_SCAN_MAX_DEGREE:
        raise CapExceeded(f"invariant subset scan limited to degree {INVARIANT_SCAN_MAX_DEGREE}")
    gens = [np.array(g.images) for g in K.generators]
    out = []
    for X in itertools.combinations(range(m), size):
        mask = np.zeros(m, dtype=bool)
        mask[list(X)] = True
        if all(mask[g[list(X)]].all() for g in gens):
            out.append(X)
    return out


def index_in_alternating(rows: np.ndarray) -> int:
    even = int(parity_even(rows).sum())
    return rows.shape[0] // even


@dataclass
class LiftReport:
    n: int
    m: int
    H_order: int
    H1_order: int
    H2_order: int
    expected: GroupTable
    sym: NormalizerQuotient
    alt: NormalizerQuotient
    iso_sym: bool
    iso_alt: bool
    cross_checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.iso_sym and self.iso_alt and all(self.cross_checks.values())

    def to_dict(self) -> dict:
        return {"input": {"n": self.n, "m": self.m, "H_order": self.H_order,
                          "expected": self.expected.to_dict()},
                "H1_order": self.H1_order, "H2_order": self.H2_order,
                "normalizer_orders": {"SYM": self.sym.normalizer.order, "ALT": self.alt.normalizer.order},
                "quotient_table": {"SYM": self.sym.table.to_dict(), "ALT": self.alt.table.to_dict()},
                "iso_to_expected": {"SYM": self.iso_sym, "ALT": self.iso_alt},
                "cross_checks": self.cross_checks, "passed": self.passed}


def lift_check(H: PermSubgroup, n: int, m: int, expected: GroupTable, max_degree: int | None = None,
               threads: int = 1) -> LiftReport:
    """Compute N(H1)/H1 in S_m and N(H2)/H2 in A_m and compare both with ``expected``."""
    spec = LiftSpec(H, n, m)
    H1 = embed(spec)
    H2 = intersect_alternating(H1)
    if n == 1:
        return _lift_degree_one(H1, H2, m, expected, max_degree, threads)
    qs = normalizer_quotient(Ambient.SYM, m, H1, max_degree, threads)
    qa = normalizer_quotient(Ambient.ALT, m, H2, max_degree, threads)
    iso_sym = is_isomorphic(qs.table, expected) is not None
    iso_alt = is_isomorphic(qa.table, expected) is not None

    structural = structural_normalizer(H, m, max_degree)
    checks = {
        "H1_order": H1.order == H.order * math.factorial(m - n),
        "H2_index": H1.order == 2 * H2.order,
        "structural_normalizer_sym": structural.same_elements(qs.normalizer),
        "alt_normalizer_is_even_part": np.array_equal(
            structural.elements[parity_even(structural.elements)], qa.normalizer.elements),
        "index_two_in_alternating": index_in_alternating(structural.elements) == 2,
        "sym_alt_quotients_isomorphic": is_isomorphic(qs.table, qa.table) is not None,
    }
    if m <= INVARIANT_SCAN_MAX_DEGREE:
        target = [tuple(range(n, m))]
        checks["H1_invariant_subset_unique"] = invariant_subsets(H1, m - n) == target
        checks["H2_invariant_subset_unique"] = invariant_subsets(H2, m - n) == target
    return LiftReport(n, m, H.order, H1.order, H2.order, expected, qs, qa, iso_sym, iso_alt, checks)


def _lift_degree_one(H1: PermSubgroup, H2: PermSubgroup, m: int, expected: GroupTable,
                     max_degree: int | None, threads: int) -> LiftReport:
    """n = 1: the only quotient is trivial, realized by K = S_m and K = A_m.

    The product construction is not used here: for m = 3 its even part is
    trivial and N_{A_3}(1)/1 is C_3.
    """
    Sm = symmetric_group(m)
    qs = normalizer_quotient(Ambient.SYM, m, Sm, max_degree, threads)
    qa = normalizer_quotient(Ambient.ALT, m, intersect_alternating(Sm), max_degree, threads)
    checks = {
        "H1_order": H1.order == math.factorial(m - 1),
        "H2_index": H1.order == 2 * H2.order,
        "sym_alt_quotients_isomorphic": is_isomorphic(qs.table, qa.table) is not None,
    }
    return LiftReport(1, m, 1, H1.order, H2.order, expected, qs, qa,
                      is_isomorphic(qs.table, expected) is not None,
                      is_isomorphic(qa.table, expected) is not None, checks)


@dataclass
class AssemblyReport:
    group: GroupTable
    H_order: int
    normalizer_order: int
    quotient: GroupTable
    out: GroupTable
    equals_hol_inv: bool
    quotient_iso_out: bool
    inhol_characteristic: bool | None
    cross_checks: dict[str, bool]
    label: str = "EXPLORATORY"

    @property
    def self_normalizing(self) -> bool:
        return self.normalizer_order == self.H_order

    def to_dict(self) -> dict:
        return {"group": self.group.name, "group_order": self.group.order, "H_order": self.H_order,
                "normalizer_order": self.normalizer_order, "self_normalizing": self.self_normalizing,
                "quotient_order": self.quotient.order, "quotient_table": self.quotient.to_dict(),
                "out_order": self.out.order, "equals_hol_inv": self.equals_hol_inv,
                "quotient_iso_out": self.quotient_iso_out,
                "inhol_characteristic": self.inhol_characteristic,
                "cross_checks": self.cross_checks, "label": self.label}


def holomorph_assembly(G: GroupTable, max_degree: int | None = None, threads: int = 1) -> AssemblyReport:
    """Build H = <InHol(G), inv_G>, compute N_{Sym(G)}(H)/H and compare it with Out(G).

    No general claim is made for these inputs, so every report carries the
    label EXPLORATORY: the values are observations.
    """
    if G.order > ASSEMBLY_MAX_ORDER and (max_degree is None or G.order > max_degree):
        raise CapExceeded(f"assembly needs |G| <= {ASSEMBLY_MAX_ORDER}")
    if G.is_abelian:
        raise Abelian(f"{G.name or 'G'} is abelian")
    if center(G).order != 1:
        raise NotCenterless(f"{G.name or 'G'} has a nontrivial center")
    H = inhol_inv(G)
    n_inn = len(inner_automorphisms(G))
    q = normalizer_quotient(Ambient.SYM, G.order, H, max_degree=max_degree, threads=threads)
    out = outer_automorphism_group(G)
    equals = hol_inv(G).same_elements(q.normalizer)
    iso = is_isomorphic(q.table, out) is not None

    characteristic = None
    if H.order <= CHARACTERISTIC_MAX_ORDER:
        HT = H.to_group_table(name="H")
        mask = np.zeros(HT.order, dtype=bool)
        mask[H.index_rows(inhol(G).elements)] = True
        characteristic = is_characteristic(subgroup_from_mask(HT, mask), HT)
    checks = {
        "H_order": H.order == 2 * G.order * n_inn,
        "inv_outside_hol": inv_perm(G) not in hol(G),
    }
    return AssemblyReport(G, H.order, q.normalizer.order, q.table, out, equals, iso, characteristic, checks)


main_theorem_assembly = holomorph_assembly
