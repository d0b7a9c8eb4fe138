"""Homomorphism, automorphism and isomorphism search between table groups.

A homomorphism out of N is fixed by the images of a generating sequence.  We
scan all image tuples (pruned by element orders), extend each one along a
spanning tree of the Cayley graph, and keep the tuples whose extension agrees
on every Cayley-graph edge.  Tuples are processed in numpy batches.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import config
from .errors import CapExceeded, InvalidParameter
from .groups import GroupTable, Homomorphism, Subgroup, element_order_profile

BATCH = 8192


@lru_cache(maxsize=64)
def _spanning_tree(N: GroupTable) -> tuple[np.ndarray, np.ndarray, np.ndarray, tuple[int, ...]]:
    """BFS order over N from the identity by right multiplication by generators.

    Returns (order, parent, gen_index, gens) with element order[i] equal to
    parent[i] * gens[gen_index[i]] for i >= 1.
    """
    gens = N.generating_sequence
    seen = {0}
    order, parent, via = [0], [-1], [-1]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for i, s in enumerate(gens):
            y = int(N.table[x, s])
            if y not in seen:
                seen.add(y)
                order.append(y)
                parent.append(x)
                via.append(i)
    return np.array(order), np.array(parent), np.array(via), gens


def _check_cap(N: GroupTable, G: GroupTable, k: int, cap: int | None) -> None:
    cap = config.HOM_TUPLE_CAP if cap is None else cap
    if G.order ** k > cap:
        raise CapExceeded(f"|G|^k = {G.order}^{k} exceeds homomorphism cap {cap}")


def _extend_batch(N: GroupTable, G: GroupTable, tuples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extend generator images to full image arrays; return (images, valid)."""
    order, parent, via, gens = _spanning_tree(N)
    images = np.zeros((len(tuples), N.order), dtype=np.int64)
    gt = G.table
    for x, p, i in zip(order[1:], parent[1:], via[1:]):
        images[:, x] = gt[images[:, p], tuples[:, i]]
    # every edge x -> x*s of the Cayley graph must be respected
    targets = N.table[:, list(gens)]                       # (|N|, k)
    lhs = images[:, targets]                               # f(x s)
    rhs = gt[images[:, :, None], tuples[:, None, :]]       # f(x) f(s)
    valid = (lhs == rhs).all(axis=(1, 2))
    return images, valid


def _tuple_batches(candidates: list[np.ndarray]) -> Iterator[np.ndarray]:
    it = itertools.product(*[c.tolist() for c in candidates])
    k = len(candidates)
    while True:
        chunk = list(itertools.islice(it, BATCH))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(len(chunk), k)


def _candidates(N: GroupTable, G: GroupTable, exact: bool) -> list[np.ndarray]:
    gens = N.generating_sequence
    go = G.element_orders
    out = []
    for s in gens:
        o = int(N.element_orders[s])
        out.append(np.flatnonzero(go == o) if exact else np.flatnonzero(o % go == 0))
    return out


def _scan(N: GroupTable, G: GroupTable, exact: bool, bijective: bool, cap: int | None,
          first_only: bool = False) -> list[Homomorphism]:
    if N.order == 1:
        return [Homomorphism(N, G, (0,))] if (not bijective or G.order == 1) else []
    gens = N.generating_sequence
    _check_cap(N, G, len(gens), cap)
    cands = _candidates(N, G, exact)
    if any(c.size == 0 for c in cands):
        return []
    found = []
    for tuples in _tuple_batches(cands):
        images, valid = _extend_batch(N, G, tuples)
        images = images[valid]
        if bijective:
            srt = np.sort(images, axis=1)
            images = images[(srt == np.arange(G.order)).all(axis=1)]
        for row in images:
            found.append(Homomorphism(N, G, tuple(int(v) for v in row)))
            if first_only:
                return found
    return found


def homomorphisms(N: GroupTable, G: GroupTable, cap: int | None = None) -> list[Homomorphism]:
    """All homomorphisms N -> G, in tuple-scan discovery order."""
    return _scan(N, G, exact=False, bijective=False, cap=cap)


def naive_homomorphisms(N: GroupTable, G: GroupTable) -> list[Homomorphism]:
    """Filter over all |G|^|N| maps; an independent oracle for tiny groups."""
    if G.order ** N.order > 10**6:
        raise CapExceeded("naive homomorphism filter limited to 10**6 maps")
    out = []
    for images in itertools.product(range(G.order), repeat=N.order):
        f = Homomorphism(N, G, images)
        if f.is_homomorphism():
            out.append(f)
    return out


def automorphisms(G: GroupTable, cap: int | None = None) -> list[Homomorphism]:
    return _scan(G, G, exact=True, bijective=True, cap=cap)


def inner_automorphisms(G: GroupTable) -> list[Homomorphism]:
    """Conjugation maps x -> g x g^-1, one per distinct map, ordered by g."""
    t, inv = G.table, G.inverses
    seen, out = set(), []
    for g in range(G.order):
        images = tuple(int(v) for v in t[t[g], inv[g]])
        if images not in seen:
            seen.add(images)
            out.append(Homomorphism(G, G, images))
    return out


def outer_order(G: GroupTable, cap: int | None = None) -> int:
    n_aut = len(automorphisms(G, cap))
    n_inn = len(inner_automorphisms(G))
    if n_aut % n_inn:
        raise AssertionError("|Inn| does not divide |Aut|")
    return n_aut // n_inn


def is_isomorphic(G: GroupTable, H: GroupTable, cap: int | None = None) -> Homomorphism | None:
    """An isomorphism G -> H, or None.  First in tuple-scan order."""
    if G.order != H.order:
        return None
    if G.is_abelian != H.is_abelian or element_order_profile(G) != element_order_profile(H):
        return None
    found = _scan(G, H, exact=True, bijective=True, cap=cap, first_only=True)
    return found[0] if found else None


def is_characteristic(S: Subgroup, G: GroupTable, cap: int | None = None) -> bool:
    """True iff every automorphism of G maps S onto S."""
    if S.ambient is not G:
        raise InvalidParameter("subgroup belongs to a different group")
    els = np.array(S.elements)
    return all(S.mask[f.array[els]].all() for f in automorphisms(G, cap))

