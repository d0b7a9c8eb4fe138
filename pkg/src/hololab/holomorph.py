"""Regular representations and the holomorph family inside Sym(G).

The underlying set of G is identified with its element indices, so every
object here is a permutation group of degree |G|.

    lambda(g): x -> g x        rho(g): x -> x g^-1        inv: x -> x^-1
    Hol(G)   = < lambda(G), Aut(G) >
    InHol(G) = < lambda(G), rho(G) >
    NHol(G)  = N_Sym(G)(Hol(G))
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .groups import GroupTable, quotient, subgroup_from_mask
from .homs import automorphisms, inner_automorphisms
from .perms import Permutation, PermSubgroup, centralizer_scan, join, normalizer_in_sym


@dataclass
class RegularRep:
    """A regular representation with its labelling: ``perms[g]`` represents g."""

    group: GroupTable
    perms: list[Permutation]
    subgroup: PermSubgroup

    def __getitem__(self, g: int) -> Permutation:
        return self.perms[g]


def lambda_perm(G: GroupTable, g: int) -> Permutation:
    return Permutation(G.table[g], check=False)


def rho_perm(G: GroupTable, g: int) -> Permutation:
    return Permutation(G.table[:, G.inverses[g]], check=False)


def _rep(G: GroupTable, perm_of, name: str) -> RegularRep:
    perms = [perm_of(G, g) for g in range(G.order)]
    gens = [perms[s] for s in G.generating_sequence]
    rows = np.array([p.images for p in perms], dtype=np.int64)
    sub = PermSubgroup(G.order, gens, elements=rows, name=name)
    return RegularRep(G, perms, sub)


def lambda_rep(G: GroupTable) -> RegularRep:
    return _rep(G, lambda_perm, f"lambda({G.name or 'G'})")


def rho_rep(G: GroupTable) -> RegularRep:
    return _rep(G, rho_perm, f"rho({G.name or 'G'})")


def inv_perm(G: GroupTable) -> Permutation:
    return Permutation(G.inverses, check=False)


def automorphism_generators(G: GroupTable, cap: int | None = None) -> list[Permutation]:
    """A small generating set of Aut(G) as permutations of the element indices."""
    auts = automorphisms(G, cap)
    d = G.order
    gens: list[Permutation] = []
    current = PermSubgroup(d, [])
    for f in auts:
        p = Permutation(f.images, check=False)
        if p not in current:
            gens.append(p)
            current = PermSubgroup(d, gens)
    return gens


def hol(G: GroupTable, cap: int | None = None) -> PermSubgroup:
    lam = lambda_rep(G).subgroup
    return join(lam, extra=automorphism_generators(G, cap), name=f"Hol({G.name or 'G'})")


def inhol(G: GroupTable) -> PermSubgroup:
    gens = [lambda_perm(G, s) for s in G.generating_sequence] + [rho_perm(G, s) for s in G.generating_sequence]
    return PermSubgroup(G.order, gens, name=f"InHol({G.name or 'G'})")


def hol_inv(G: GroupTable, cap: int | None = None) -> PermSubgroup:
    """<Hol(G), inv_G>."""
    return join(hol(G, cap), extra=[inv_perm(G)], name=f"<Hol({G.name or 'G'}),inv>")


def inhol_inv(G: GroupTable) -> PermSubgroup:
    """<InHol(G), inv_G>."""
    return join(inhol(G), extra=[inv_perm(G)], name=f"<InHol({G.name or 'G'}),inv>")


def is_regular(R: PermSubgroup, d: int | None = None) -> bool:
    """|R| = d and s -> s(0) is a bijection R -> {0..d-1}."""
    d = R.degree if d is None else d
    els = R.elements
    if els.shape[0] != d or R.degree != d:
        return False
    return len(np.unique(els[:, 0])) == d


def centralizer_of_regular(R: PermSubgroup) -> PermSubgroup:
    """C_Sym(d)(R) for regular R: for each point a, the permutation x -> r_x(a)
    where r_x is the unique element of R sending 0 to x."""
    if not is_regular(R):
        raise ValueError("closed form needs a regular subgroup")
    els = R.elements
    by_point = np.empty_like(els)
    by_point[els[:, 0]] = els          # row x is r_x
    rows = by_point.T.copy()           # rows[a][x] = r_x(a)
    return PermSubgroup.from_elements(R.degree, rows)


def centralizer_in_sym(R: PermSubgroup, method: str = "auto", max_degree: int | None = None,
                       threads: int = 1) -> PermSubgroup:
    """Full centralizer of R in Sym(d).

    ``method`` is "regular" (closed form), "scan" (every permutation, d <= 12)
    or "auto" (closed form when R is regular, else scan).
    """
    if method == "regular" or (method == "auto" and is_regular(R)):
        return centralizer_of_regular(R)
    if method not in ("auto", "scan"):
        raise ValueError(f"unknown method {method!r}")
    return centralizer_scan(R, max_degree=max_degree, threads=threads)


def nhol(G: GroupTable, max_degree: int | None = None, threads: int = 1) -> PermSubgroup:
    if G.order > 10 and (max_degree is None or max_degree < G.order):
        raise CapExceeded(f"NHol needs |G| <= 10 (got {G.order})")
    N = normalizer_in_sym(hol(G), max_degree=max_degree, threads=threads)
    N.name = f"NHol({G.name or 'G'})"
    return N


def outer_automorphism_group(G: GroupTable, cap: int | None = None) -> GroupTable:
    """Out(G) = Aut(G)/Inn(G) as a coset table."""
    auts = PermSubgroup.from_elements(G.order, np.array([f.images for f in automorphisms(G, cap)]))
    A = auts.to_group_table(name="Aut")
    inn = np.array([f.images for f in inner_automorphisms(G)])
    mask = np.zeros(A.order, dtype=bool)
    mask[auts.index_rows(inn)] = True
    Q, _ = quotient(A, subgroup_from_mask(A, mask), name=f"Out({G.name or 'G'})")
    return Q
