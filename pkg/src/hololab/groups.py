"""Finite groups as multiplication tables.

A :class:`GroupTable` stores ``table[a][b] = a*b`` over element indices
``0..order-1`` with the identity at index 0.  Everything here is exact and
exhaustive; routines that scale badly check a cap from :mod:`hololab.config`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import (
    CapExceeded,
    InvalidParameter,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    OddOrder,
)


class GroupTable:
    """An immutable finite group given by its Cayley table.

    Construct through :func:`make_group`, which validates and relabels; the
    bare constructor trusts its input.
    """

    def __init__(self, table, name: str | None = None):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        self.table = t
        self.name = name

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"GroupTable({label}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1)
        inv.setflags(write=False)
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        xs = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        power = xs.copy()
        for k in range(1, n + 1):
            hit = (power == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            power = self.table[power, xs]
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generating_sequence(self) -> tuple[int, ...]:
        """Greedy small generating sequence.

        Repeatedly adds the element whose inclusion gives the largest
        closure, ties broken by smallest index.
        """
        gens: list[int] = []
        current = _closure_mask(self, [])
        while not current.all():
            best, best_size = -1, -1
            for x in np.flatnonzero(~current):
                size = int(_closure_mask(self, gens + [int(x)], start=current).sum())
                if size > best_size:
                    best, best_size = int(x), size
            gens.append(best)
            current = _closure_mask(self, gens, start=current)
        return tuple(gens)

    def to_dict(self) -> dict:
        return {"name": self.name, "order": self.order, "table": self.table.tolist()}


def _first_bad_triple(t: np.ndarray, full_limit: int, samples: int, seed: int):
    n = t.shape[0]
    if n <= full_limit:
        for a in range(n):
            left = t[t[a]]      # (a*b)*c
            right = t[a][t]     # a*(b*c)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                return a, int(b), int(c)
        return None
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if bad.size:
        i = bad[0]
        return int(a[i]), int(b[i]), int(c[i])
    return None


def make_group(table, name: str | None = None) -> GroupTable:
    """Validate a Cayley table and relabel so the identity is element 0.

    Raises NotLatinSquare, NoIdentity or NotAssociative.  Associativity is
    checked on every triple up to order 256 and on 10**6 seeded random
    triples beyond that.
    """
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotLatinSquare(f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotLatinSquare(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    ar = np.arange(n)
    if t.min() < 0 or t.max() >= n:
        raise NotLatinSquare("entries out of range")
    if not (np.sort(t, axis=1) == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
        raise NotLatinSquare("some row or column is not a permutation")

    ident = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ident:
        raise NoIdentity("no two-sided identity element")
    e = ident[0]
    if e != 0:
        swap = ar.copy()
        swap[0], swap[e] = e, 0   # swap is its own inverse
        t = swap[t[np.ix_(swap, swap)]]

    bad = _first_bad_triple(t, config.ASSOC_FULL_LIMIT, config.ASSOC_SAMPLES, config.ASSOC_SEED)
    if bad is not None:
        raise NotAssociative(f"(a*b)*c != a*(b*c) at (a, b, c) = {bad}")
    return GroupTable(t, name)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``ambient`` stored as a sorted tuple of element indices."""

    ambient: GroupTable
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient is other.ambient and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ambient.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def sort_key(self) -> tuple:
        return (self.order, self.elements)

    def is_normal(self) -> bool:
        t, inv = self.ambient.table, self.ambient.inverses
        els = np.array(self.elements)
        conj = t[t[:, els], inv[:, None]]      # g h g^-1
        return bool(self.mask[conj].all())

    def is_abelian(self) -> bool:
        els = np.array(self.elements)
        sub = self.ambient.table[np.ix_(els, els)]
        return bool(np.array_equal(sub, sub.T))

    def as_group(self, name: str | None = None) -> tuple[GroupTable, np.ndarray]:
        """The subgroup as a standalone table, plus the index map into ``ambient``."""
        els = np.array(self.elements)
        pos = np.full(self.ambient.order, -1)
        pos[els] = np.arange(len(els))
        return GroupTable(pos[self.ambient.table[np.ix_(els, els)]], name), els


def subgroup_from_mask(G: GroupTable, mask: np.ndarray) -> Subgroup:
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(mask)))


def _closure_mask(G: GroupTable, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
    t = G.table
    mask = np.zeros(G.order, dtype=bool) if start is None else start.copy()
    mask[0] = True
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    if gens.size == 0:
        return mask
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prods = np.unique(t[np.ix_(frontier, gens)])
        frontier = prods[~mask[prods]]
        mask[frontier] = True
    # yields start * <gens>: a subgroup only if start is a subgroup that either
    # lies in <gens> or is normal; callers guarantee one of the two
    return mask


def closure(G: GroupTable, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing ``seed``."""
    seed = [int(s) for s in seed]
    for s in seed:
        if not 0 <= s < G.order:
            raise InvalidParameter(f"element {s} out of range for order {G.order}")
    return subgroup_from_mask(G, _closure_mask(G, seed))


def whole(G: GroupTable) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial(G: GroupTable) -> Subgroup:
    return Subgroup(G, (0,))


def center(G: GroupTable) -> Subgroup:
    t = G.table
    return subgroup_from_mask(G, (t == t.T).all(axis=1))


def centralizer_mask(G: GroupTable, elements: Iterable[int]) -> np.ndarray:
    """Mask of the elements commuting with every element in ``elements``."""
    els = np.asarray(list(elements), dtype=np.int64)
    if els.size == 0:
        return np.ones(G.order, dtype=bool)
    t = G.table
    return (t[:, els] == t[els, :].T).all(axis=1)


def commutator_subgroup(G: GroupTable) -> Subgroup:
    t, inv = G.table, G.inverses
    comm = t[t[t, inv[:, None]], inv[None, :]]   # a b a^-1 b^-1
    return closure(G, np.unique(comm).tolist())


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples, ordered by smallest member."""
    if G.order > config.NORMAL_SUBGROUP_CAP:
        raise CapExceeded(f"order {G.order} exceeds class cap {config.NORMAL_SUBGROUP_CAP}")
    t, inv = G.table, G.inverses
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(t[t[:, x], inv])    # g x g^-1 over all g
        seen[cls] = True
        classes.append(tuple(int(c) for c in cls))
    return classes


def normal_subgroups(G: GroupTable) -> list[Subgroup]:
    """All normal subgroups, sorted by (order, elements).

    Breadth-first from the trivial subgroup: each step joins one more
    conjugacy class and closes, so every union-of-classes subgroup is reached.
    """
    classes = conjugacy_classes(G)
    start = np.zeros(G.order, dtype=bool)
    start[0] = True
    found = {start.tobytes(): start}
    queue = [start]
    while queue:
        N = queue.pop(0)
        for cls in classes:
            if N[cls[0]]:
                continue
            M = _closure_mask(G, list(cls), start=N)
            key = M.tobytes()
            if key not in found:
                found[key] = M
                queue.append(M)
    subs = [subgroup_from_mask(G, m) for m in found.values()]
    return sorted(subs, key=Subgroup.sort_key)


def is_decomposable(G: GroupTable) -> tuple[Subgroup, Subgroup] | None:
    """First (H, K) with G = H x K, H and K proper nontrivial normal, else None."""
    n = G.order
    proper = [N for N in normal_subgroups(G) if 1 < N.order < n]
    for H in proper:
        for K in proper:
            if H.order * K.order != n:
                continue
            if np.count_nonzero(H.mask & K.mask) == 1:
                return H, K
    return None


def element_order_profile(G: GroupTable) -> tuple[int, ...]:
    return tuple(sorted(int(k) for k in G.element_orders))


# ---------------------------------------------------------------------------
# homomorphisms as image arrays


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A map ``domain -> codomain`` given by its full image array."""

    domain: GroupTable
    codomain: GroupTable
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.domain is other.domain and self.codomain is other.codomain
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain), self.images))

    def __repr__(self) -> str:
        return f"Homomorphism({list(self.images)})"

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.images, dtype=np.int64)
        a.setflags(write=False)
        return a

    def is_homomorphism(self) -> bool:
        f = self.array
        return bool(np.array_equal(f[self.domain.table], self.codomain.table[np.ix_(f, f)]))

    def kernel(self) -> Subgroup:
        return subgroup_from_mask(self.domain, self.array == 0)

    def image(self) -> Subgroup:
        m = np.zeros(self.codomain.order, dtype=bool)
        m[self.array] = True
        return subgroup_from_mask(self.codomain, m)

    @property
    def is_trivial(self) -> bool:
        return not any(self.images)

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.images)) == self.domain.order

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        return Homomorphism(other.domain, self.codomain, tuple(int(x) for x in self.array[other.array]))


def identity_hom(G: GroupTable) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.order)))


def trivial_hom(N: GroupTable, G: GroupTable) -> Homomorphism:
    return Homomorphism(N, G, (0,) * N.order)


def quotient(G: GroupTable, N: Subgroup, name: str | None = None) -> tuple[GroupTable, Homomorphism]:
    """G/N as a coset table (identity coset at 0) and the projection."""
    if N.ambient is not G:
        raise NotNormal("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    t = G.table
    els = np.array(N.elements)
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if label[g] < 0:
            label[t[g, els]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    Q = GroupTable(label[t[np.ix_(reps, reps)]], name)
    return Q, Homomorphism(G, Q, tuple(int(x) for x in label))


# ---------------------------------------------------------------------------
# index-two abelian subgroups


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def index_two_subgroups(M: GroupTable) -> list[Subgroup]:
    """All subgroups of index 2, as kernels of the nonzero maps M -> C_2.

    Such maps factor through V = M / [M,M] M^2, an elementary abelian
    2-group; each nonzero linear functional on V gives one subgroup.
    """
    if M.order % 2:
        raise OddOrder(f"order {M.order} is odd")
    if M.order > config.NORMAL_SUBGROUP_CAP:
        raise CapExceeded(f"order {M.order} exceeds cap {config.NORMAL_SUBGROUP_CAP}")
    A, to_ab = quotient(M, commutator_subgroup(M))
    squares = closure(A, np.unique(A.table[np.arange(A.order), np.arange(A.order)]).tolist())
    V, to_v = quotient(A, squares)
    basis = V.generating_sequence
    # coordinates of each element of V over the basis (V is elementary abelian)
    coords = np.zeros(V.order, dtype=np.int64)
    span = [0]
    for i, b in enumerate(basis):
        for x in list(span):
            y = V.mul(x, b)
            coords[y] = coords[x] | (1 << i)
            span.append(y)
    if len(span) != V.order:
        raise AssertionError("basis of the elementary abelian quotient is not independent")
    m_coords = coords[to_v.array[to_ab.array]]
    subs = []
    for phi in range(1, 1 << len(basis)):
        mask = np.array([_parity(int(c) & phi) == 0 for c in m_coords])
        subs.append(subgroup_from_mask(M, mask))
    return sorted(subs, key=Subgroup.sort_key)


def index_two_abelian_subgroups(M: GroupTable) -> list[Subgroup]:
    return [S for S in index_two_subgroups(M) if S.is_abelian()]


# ---------------------------------------------------------------------------
# semidirect products


@dataclass(frozen=True, eq=False)
class SemidirectSpec:
    """A ⋊ B with ``action[b]`` the image array of the automorphism b acts by."""

    normal_part: GroupTable
    acting_part: GroupTable
    action: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        A, B = self.normal_part, self.acting_part
        act = np.array(self.action, dtype=np.int64)
        if act.shape != (B.order, A.order):
            raise InvalidParameter(f"action must have shape {(B.order, A.order)}, got {act.shape}")
        for phi in act:
            if sorted(phi.tolist()) != list(range(A.order)):
                raise InvalidParameter("action entry is not a bijection")
            if not np.array_equal(phi[A.table], A.table[np.ix_(phi, phi)]):
                raise InvalidParameter("action entry is not an automorphism")
        if not np.array_equal(act[0], np.arange(A.order)):
            raise InvalidParameter("identity of B must act trivially")
        # action[b1 b2] = action[b1] o action[b2]
        composed = act[np.arange(B.order)[:, None, None], act[None, :, :]]   # act[b1][act[b2]]
        if not np.array_equal(act[B.table], composed):
            raise InvalidParameter("action is not a homomorphism B -> Aut(A)")

    @property
    def action_array(self) -> np.ndarray:
        return np.array(self.action, dtype=np.int64)

    def index(self, a: int, b: int) -> int:
        """Index of the pair (a, b) = a*b in the assembled product."""
        return a + self.normal_part.order * b


def semidirect(spec: SemidirectSpec, name: str | None = None) -> GroupTable:
    """Assemble A ⋊ B with (a1,b1)(a2,b2) = (a1 * act[b1](a2), b1 b2)."""
    A, B = spec.normal_part, spec.acting_part
    na, nb = A.order, B.order
    act = spec.action_array
    idx = np.arange(na * nb)
    a, b = idx % na, idx // na
    a_new = A.table[a[:, None], act[b[:, None], a[None, :]]]
    b_new = B.table[b[:, None], b[None, :]]
    return GroupTable(a_new + na * b_new, name)


def center_of_semidirect(spec: SemidirectSpec, product: GroupTable | None = None) -> Subgroup:
    """Center of A ⋊ B from the component conditions.

    (a, b) is central iff b is central in B, a is fixed by every element of B,
    and conjugation by a*b is the identity on A.
    """
    A, B = spec.normal_part, spec.acting_part
    act = spec.action_array
    M = product if product is not None else semidirect(spec)
    zb = center(B).mask
    fixed_by_B = (act == np.arange(A.order)).all(axis=0)
    members = []
    for b in np.flatnonzero(zb):
        phi = act[b]
        for a in np.flatnonzero(fixed_by_B):
            # (ab) a' (ab)^-1 = a * phi_b(a') * a^-1
            conj = A.table[A.table[a, phi], A.inverses[a]]
            if np.array_equal(conj, np.arange(A.order)):
                members.append(spec.index(int(a), int(b)))
    return Subgroup(M, tuple(sorted(members)))
