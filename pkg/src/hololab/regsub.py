"""Regular subgroups of InHol(G) from fixed-point-free homomorphism pairs.

For homomorphisms f, g: N -> G with f(x) = g(x) only at x = 1, the set

    R(f, g) = { lambda(f(x)) rho(g(x)) : x in N }

is a regular subgroup of InHol(G) isomorphic to N.  For centerless G two such
subgroups centralize each other exactly when the images of f, f' commute and
the images of g, g' commute.  This module enumerates the pairs, realizes them
as permutation groups, and decides whether lambda(G) and rho(G) are the only
regular subgroups isomorphic to G whose centralizer stays inside InHol(G).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, DomainMismatch, NotCenterless, NotFpf, OrderMismatch, VerificationError
from .groups import (
    GroupTable,
    Homomorphism,
    Subgroup,
    center,
    centralizer_mask,
    closure,
    is_decomposable,
)
from .holomorph import centralizer_of_regular, inhol, is_regular, lambda_rep, rho_rep
from .homs import homomorphisms, is_isomorphic
from .perms import PermSubgroup


class Classification(str, enum.Enum):
    LAMBDA = "LAMBDA"
    RHO = "RHO"
    OTHER = "OTHER"


def is_fixed_point_free(f: Homomorphism, g: Homomorphism) -> bool:
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise DomainMismatch("f and g must share domain and codomain")
    return int(np.count_nonzero(f.array == g.array)) == 1


@dataclass(frozen=True)
class FpfPair:
    f: Homomorphism
    g: Homomorphism

    def __post_init__(self):
        if not is_fixed_point_free(self.f, self.g):
            raise NotFpf("f and g coincide away from the identity")

    @property
    def domain(self) -> GroupTable:
        return self.f.domain

    @property
    def codomain(self) -> GroupTable:
        return self.f.codomain

    def swapped(self) -> "FpfPair":
        return FpfPair(self.g, self.f)

    def to_dict(self) -> dict:
        return {"f": list(self.f.images), "g": list(self.g.images)}


@dataclass
class RegularWitness:
    pair: FpfPair
    subgroup: PermSubgroup
    classification: Classification

    def to_dict(self) -> dict:
        return {
            "pair": self.pair.to_dict(),
            "subgroup": self.subgroup.elements.tolist(),
            "classification": self.classification.value,
        }


def realization_rows(f: Homomorphism, g: Homomorphism) -> np.ndarray:
    """Row x is the permutation y -> f(x) * y * g(x)^-1 of G."""
    G = f.codomain
    t = G.table
    right = t[:, G.inverses[g.array]]         # right[y, x] = y g(x)^-1
    return t[f.array[:, None], right.T]


@lru_cache(maxsize=32)
def _inhol_cached(G: GroupTable) -> PermSubgroup:
    H = inhol(G)
    H.materialize()
    return H


def regular_from_pair(pair: FpfPair, G: GroupTable | None = None) -> RegularWitness:
    """Materialize R(f, g) and check it is a regular subgroup of InHol(G) of order |N|."""
    G = pair.codomain if G is None else G
    N = pair.domain
    if G is not pair.codomain:
        raise DomainMismatch("pair codomain differs from G")
    if N.order != G.order:
        raise OrderMismatch(f"|N| = {N.order} but |G| = {G.order}")
    rows = realization_rows(pair.f, pair.g)
    R = PermSubgroup.from_elements(G.order, rows)
    if R.order != N.order:
        raise VerificationError("realization has repeated elements")
    if not is_regular(R):
        raise VerificationError("realization is not regular")
    if not R.is_subgroup_of(_inhol_cached(G)):
        raise VerificationError("realization escapes InHol(G)")
    if R.same_elements(lambda_rep(G).subgroup):
        cls = Classification.LAMBDA
    elif R.same_elements(rho_rep(G).subgroup):
        cls = Classification.RHO
    else:
        cls = Classification.OTHER
    return RegularWitness(pair, R, cls)


def _fpf_matrix(E: np.ndarray) -> np.ndarray:
    """fpf[i, j] iff rows i and j of the image array agree only at index 0."""
    h = E.shape[0]
    out = np.empty((h, h), dtype=bool)
    for i in range(h):
        out[i] = ~(E[i, 1:] == E[:, 1:]).any(axis=1)
    return out


def enumerate_fpf_pairs(N: GroupTable, G: GroupTable, cap: int | None = None) -> list[FpfPair]:
    """All fixed-point-free pairs, lexicographic in homomorphism discovery order."""
    homs = homomorphisms(N, G, cap)
    if not homs:
        return []
    E = np.array([f.images for f in homs])
    fpf = _fpf_matrix(E)
    return [FpfPair(homs[i], homs[j]) for i, j in zip(*np.nonzero(fpf))]


def _require_centerless(G: GroupTable) -> None:
    if center(G).order != 1:
        raise NotCenterless(f"{G.name or 'group'} has nontrivial center")


def centralizer_pair_condition(p1: FpfPair, p2: FpfPair) -> bool:
    """[f(N), f'(N)] = 1 and [g(N), g'(N)] = 1."""
    G = p1.codomain
    if p2.codomain is not G:
        raise DomainMismatch("pairs have different codomains")
    _require_centerless(G)
    cf = centralizer_mask(G, np.unique(p1.f.array))
    cg = centralizer_mask(G, np.unique(p1.g.array))
    return bool(cf[p2.f.array].all() and cg[p2.g.array].all())


def classify_pair(pair: FpfPair) -> Classification:
    """Classification of R(f, g) for centerless G, read off from the pair.

    InHol(G) = lambda(G) x rho(G) here, so R(f, g) = lambda(G) exactly when
    g is trivial and R(f, g) = rho(G) exactly when f is trivial.
    """
    if pair.g.is_trivial:
        return Classification.LAMBDA
    if pair.f.is_trivial:
        return Classification.RHO
    return Classification.OTHER


# ---------------------------------------------------------------------------
# brute-force oracle


def _table_closure_limited(t: np.ndarray, seed_mask: np.ndarray, gens: list[int], limit: int) -> np.ndarray | None:
    mask = seed_mask.copy()
    mask[0] = True
    gens_arr = np.array(sorted(set(gens)), dtype=np.int64)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prods = np.unique(t[np.ix_(frontier, gens_arr)])
        frontier = prods[~mask[prods]]
        mask[frontier] = True
        if mask.sum() > limit:
            return None
    return mask


def enumerate_regular_subgroups_brute(G: GroupTable, max_seed: int | None = None) -> list[PermSubgroup]:
    """Every regular subgroup of InHol(G), by closing small seed sets.

    Seeds have size <= 2, or <= 3 when 8 divides |G| (the only way a group of
    order <= 12 needs three generators).  Results are sorted by element rows.
    """
    if G.order > 12:
        raise CapExceeded(f"brute-force regular subgroups need |G| <= 12 (got {G.order})")
    H = _inhol_cached(G)
    if H.order > 10**4:
        raise CapExceeded(f"|InHol(G)| = {H.order} exceeds 10**4")
    if max_seed is None:
        max_seed = 3 if G.order % 8 == 0 else 2
    n = G.order
    T = H.to_group_table()
    t = T.table
    elems = [x for x in range(1, T.order) if n % int(T.element_orders[x]) == 0]
    found: dict[bytes, np.ndarray] = {}
    empty = np.zeros(T.order, dtype=bool)
    layer = {empty.tobytes(): (empty, [])}
    for _ in range(max_seed):
        nxt = {}
        for mask, gens in layer.values():
            for x in elems:
                if mask[x]:
                    continue
                m = _table_closure_limited(t, mask, gens + [x], n)
                if m is None:
                    continue
                key = m.tobytes()
                if key not in found and key not in nxt:
                    nxt[key] = (m, gens + [x])
        for key, (m, _) in nxt.items():
            found[key] = m
        layer = {k: v for k, v in nxt.items() if v[0].sum() < n}
    out = []
    for m in found.values():
        if m.sum() != n:
            continue
        R = PermSubgroup.from_elements(n, H.elements[m])
        if is_regular(R):
            out.append(R)
    out.sort(key=lambda R: R.elements.tobytes())
    return out


def realization_set(G: GroupTable, domains: list[GroupTable]) -> list[PermSubgroup]:
    """Distinct R(f, g) over every fpf pair N -> G for N in ``domains``."""
    seen: dict[bytes, PermSubgroup] = {}
    for N in domains:
        for pair in enumerate_fpf_pairs(N, G):
            R = PermSubgroup.from_elements(G.order, realization_rows(pair.f, pair.g))
            seen.setdefault(R.elements.tobytes(), R)
    return sorted(seen.values(), key=lambda R: R.elements.tobytes())


# ---------------------------------------------------------------------------
# minimality verdict and the decomposability dichotomy


@dataclass
class MinimalityVerdict:
    group: GroupTable
    verdict: str                                   # "MINIMAL" or "STRICTLY_LARGER"
    witness: tuple[FpfPair, FpfPair] | None
    witnesses: list[tuple[FpfPair, FpfPair]] = field(repr=False)
    n_endomorphisms: int = 0
    n_fpf_pairs: int = 0

    @property
    def minimal(self) -> bool:
        return self.verdict == "MINIMAL"

    def to_dict(self, full: bool = False) -> dict:
        d = {
            "verdict": self.verdict,
            "n_endomorphisms": self.n_endomorphisms,
            "n_fpf_pairs": self.n_fpf_pairs,
            "n_witnesses": len(self.witnesses),
            "witness": None if self.witness is None else
            {"pair": self.witness[0].to_dict(), "partner": self.witness[1].to_dict()},
        }
        if full:
            d["witnesses"] = [{"pair": a.to_dict(), "partner": b.to_dict()} for a, b in self.witnesses]
        return d


def minimality_verdict(G: GroupTable, cap: int | None = None) -> MinimalityVerdict:
    """MINIMAL iff no OTHER fpf pair G -> G has an fpf partner satisfying the
    centralizer condition; otherwise STRICTLY_LARGER with all witnesses, the
    first in enumeration order singled out."""
    _require_centerless(G)
    homs = homomorphisms(G, G, cap)
    E = np.array([f.images for f in homs])
    fpf = _fpf_matrix(E)
    trivial = ~E.any(axis=1)
    # image of j inside the centralizer of the image of i
    cent = np.array([centralizer_mask(G, np.unique(row)) for row in E])
    inside = cent[:, E].all(axis=2)
    witnesses = []
    for i, j in zip(*np.nonzero(fpf)):
        if trivial[i] or trivial[j]:
            continue       # lambda(G) or rho(G)
        partners = fpf[np.ix_(inside[i], inside[j])]
        fi, gj = np.flatnonzero(inside[i]), np.flatnonzero(inside[j])
        for a, b in zip(*np.nonzero(partners)):
            witnesses.append((FpfPair(homs[i], homs[j]), FpfPair(homs[fi[a]], homs[gj[b]])))
    return MinimalityVerdict(
        group=G,
        verdict="MINIMAL" if not witnesses else "STRICTLY_LARGER",
        witness=witnesses[0] if witnesses else None,
        witnesses=witnesses,
        n_endomorphisms=len(homs),
        n_fpf_pairs=int(fpf.sum()),
    )


def projection_pair(H: Subgroup, K: Subgroup) -> FpfPair:
    """(f, g) with f(hk) = h and g(hk) = k for G = H x K."""
    G = H.ambient
    f = np.full(G.order, -1)
    g = np.full(G.order, -1)
    for h in H.elements:
        for k in K.elements:
            x = G.table[h, k]
            f[x], g[x] = h, k
    if (f < 0).any():
        raise VerificationError("H K does not cover G")
    return FpfPair(Homomorphism(G, G, tuple(int(v) for v in f)), Homomorphism(G, G, tuple(int(v) for v in g)))


def is_projection_pair(pair: FpfPair) -> bool:
    """f, g idempotent with ker f = g(G) and ker g = f(G)."""
    f, g = pair.f, pair.g
    return (np.array_equal(f.array[f.array], f.array) and np.array_equal(g.array[g.array], g.array)
            and f.kernel().elements == g.image().elements and g.kernel().elements == f.image().elements)


def _is_internal_direct(A: Subgroup, B: Subgroup) -> bool:
    G = A.ambient
    return (A.is_normal() and B.is_normal() and np.count_nonzero(A.mask & B.mask) == 1
            and A.order * B.order == G.order)


@dataclass
class DecompositionReport:
    group: GroupTable
    verdict: MinimalityVerdict
    decomposition: tuple[Subgroup, Subgroup] | None
    cross_checks: dict[str, bool]
    projection_witness: tuple[FpfPair, FpfPair] | None = None

    @property
    def consistent(self) -> bool:
        return all(self.cross_checks.values())

    def to_dict(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "verdict": self.verdict.to_dict(),
            "decomposition": None if self.decomposition is None
            else [list(self.decomposition[0].elements), list(self.decomposition[1].elements)],
            "projection_witness": None if self.projection_witness is None else
            {"pair": self.projection_witness[0].to_dict(), "partner": self.projection_witness[1].to_dict()},
            "cross_checks": [{"name": k, "ok": v} for k, v in self.cross_checks.items()],
        }


def decomposition_check(G: GroupTable, cap: int | None = None) -> DecompositionReport:
    """Minimal normalizer  <=>  indecomposable, with the kernel decomposition
    G = ker(f) x ker(g) recovered from the first witness when decomposable."""
    verdict = minimality_verdict(G, cap)
    decomp = is_decomposable(G)
    checks = {"verdict_matches_decomposability": verdict.minimal == (decomp is None)}
    if verdict.witness is not None:
        (p, q) = verdict.witness
        kf, kg = p.f.kernel(), p.g.kernel()
        checks["witness_kernels_direct"] = _is_internal_direct(kf, kg)
        checks["kernels_meet_trivially"] = (np.count_nonzero(kf.mask & kg.mask) == 1
                                            and np.count_nonzero(q.f.kernel().mask & q.g.kernel().mask) == 1)
        fg = closure(G, list(p.f.image().elements) + list(p.g.image().elements))
        checks["images_generate"] = fg.order == G.order
        if decomp is not None:
            checks["kernels_match_factors"] = ({kf.elements, kg.elements}
                                               == {decomp[0].elements, decomp[1].elements})
        R1 = regular_from_pair(p)
        R2 = regular_from_pair(q)
        checks["witness_centralizers_dual"] = (centralizer_of_regular(R1.subgroup).same_elements(R2.subgroup)
                                               and centralizer_of_regular(R2.subgroup).same_elements(R1.subgroup))
        checks["witness_is_other"] = R1.classification is Classification.OTHER
    proj_witness = None
    if decomp is not None:
        proj = projection_pair(*decomp)
        swapped = proj.swapped()
        checks["projection_pair_condition"] = centralizer_pair_condition(proj, swapped)
        matches = [(a, b) for a, b in verdict.witnesses
                   if a.f == proj.f and a.g == proj.g and b.f == swapped.f and b.g == swapped.g]
        checks["projection_pair_in_witnesses"] = bool(matches)
        if matches:
            proj_witness = matches[0]
            pk = (proj_witness[0].f.kernel(), proj_witness[0].g.kernel())
            checks["projection_kernels_direct"] = _is_internal_direct(*pk)
            checks["projection_kernels_match_factors"] = ({pk[0].elements, pk[1].elements}
                                                          == {decomp[0].elements, decomp[1].elements})
    return DecompositionReport(G, verdict, decomp, checks, proj_witness)


def realizations_isomorphic(pair: FpfPair) -> bool:
    """R(f, g) is isomorphic to the domain N (isomorphism search)."""
    R = regular_from_pair(pair).subgroup
    return is_isomorphic(pair.domain, R.to_group_table()) is not None


# names used by the command line and external callers
thm13_check = decomposition_check
