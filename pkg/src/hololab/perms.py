"""Permutations of {0..d-1}, permutation groups, and brute-force scans of Sym(d).

Composition is right-to-left: ``(s * t)(x) = s(t(x))``.  Conjugation of g by
s means ``s^-1 * g * s``.

A materialized :class:`PermSubgroup` keeps its elements as a (order, d) array
sorted lexicographically by image tuple, so the identity is always row 0.
For d <= 15 each row packs into one int64 key and membership is a binary
search; larger degrees fall back to a dict over row bytes.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CapExceeded, InvalidParameter
from .groups import GroupTable, make_group

log = logging.getLogger(__name__)

PACK_LIMIT = 15


class Permutation:
    """A bijection of {0..d-1}; ``images[x]`` is the image of x."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        self.images = tuple(int(x) for x in images)
        if check and sorted(self.images) != list(range(len(self.images))):
            raise InvalidParameter(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise InvalidParameter("degree mismatch")
        s = self.images
        return Permutation((s[y] for y in other.images), check=False)

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for x, y in enumerate(self.images):
            out[y] = x
        return Permutation(out, check=False)

    def conjugate_by(self, s: "Permutation") -> "Permutation":
        """s^-1 * self * s."""
        return s.inverse() * self * s

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def to_list(self) -> list[int]:
        return list(self.images)


def as_array(perms: Sequence[Permutation] | np.ndarray, degree: int | None = None) -> np.ndarray:
    if isinstance(perms, np.ndarray):
        return perms.astype(np.int64, copy=False)
    if not perms:
        return np.zeros((0, degree or 0), dtype=np.int64)
    return np.array([p.images for p in perms], dtype=np.int64)


def pack_keys(arr: np.ndarray) -> np.ndarray:
    """Lexicographic rank-preserving int64 key of each row (degree <= 15)."""
    d = arr.shape[-1]
    weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ weights


def _lex_sort(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] <= 1:
        return arr
    if arr.shape[1] <= PACK_LIMIT:
        return arr[np.argsort(pack_keys(arr), kind="stable")]
    return arr[np.lexsort(arr.T[::-1])]


def parity_even(arr: np.ndarray) -> np.ndarray:
    """Row mask of even permutations (inversion count parity)."""
    d = arr.shape[1]
    inv = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(d):
        inv += (arr[:, i:i + 1] > arr[:, i + 1:]).sum(axis=1)
    return inv % 2 == 0


def inverse_rows(arr: np.ndarray) -> np.ndarray:
    out = np.empty_like(arr)
    ar = np.broadcast_to(np.arange(arr.shape[1], dtype=arr.dtype), arr.shape)
    np.put_along_axis(out, arr.astype(np.intp), ar, axis=1)
    return out


class PermSubgroup:
    """A subgroup of Sym(degree) given by generators, materialized on demand."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: np.ndarray | None = None,
                 name: str | None = None):
        self.degree = int(degree)
        self.generators = [g for g in generators]
        for g in self.generators:
            if g.degree != self.degree:
                raise InvalidParameter("generator degree mismatch")
        self.name = name
        self._elements = None if elements is None else _lex_sort(np.asarray(elements, dtype=np.int64))
        self._keys = None
        self._index = None

    @classmethod
    def from_elements(cls, degree: int, elements, generators: Sequence[Permutation] | None = None,
                      name: str | None = None) -> "PermSubgroup":
        arr = as_array(elements, degree) if not isinstance(elements, np.ndarray) else elements
        if generators is None:
            generators = [Permutation(row, check=False) for row in arr]
        return cls(degree, generators, elements=arr, name=name)

    def __repr__(self) -> str:
        size = self.order if self._elements is not None else "?"
        return f"PermSubgroup({self.name or ''} degree={self.degree}, order={size}, gens={len(self.generators)})"

    # -- materialization -------------------------------------------------

    def materialize(self, cap: int | None = None) -> np.ndarray:
        if self._elements is not None:
            return self._elements
        cap = config.ELEMENT_CAP if cap is None else cap
        d = self.degree
        gens = [np.array(g.images) for g in self.generators if not g.is_identity()]
        ident = np.arange(d, dtype=np.int64)[None, :]
        if not gens:
            self._elements = ident
            return self._elements
        blocks = [ident]
        seen = {ident[0].tobytes()}
        frontier = ident
        while frontier.shape[0]:
            cand = np.concatenate([frontier[:, g] for g in gens])     # x o g
            cand = np.unique(cand, axis=0)
            fresh = [row for row in cand if row.tobytes() not in seen]
            if not fresh:
                break
            frontier = np.array(fresh)
            seen.update(row.tobytes() for row in frontier)
            blocks.append(frontier)
            if len(seen) > cap:
                raise CapExceeded(f"group exceeds element cap {cap}")
        self._elements = _lex_sort(np.concatenate(blocks))
        return self._elements

    @property
    def elements(self) -> np.ndarray:
        return self.materialize()

    @property
    def order(self) -> int:
        return self.materialize().shape[0]

    def __len__(self) -> int:
        return self.order

    def permutations(self) -> list[Permutation]:
        return [Permutation(row, check=False) for row in self.elements]

    @property
    def keys(self) -> np.ndarray:
        if self._keys is None:
            if self.degree > PACK_LIMIT:
                raise CapExceeded(f"packed keys need degree <= {PACK_LIMIT}")
            self._keys = pack_keys(self.elements)
        return self._keys

    def _row_index(self) -> dict[bytes, int]:
        if self._index is None:
            self._index = {row.tobytes(): i for i, row in enumerate(self.elements)}
        return self._index

    def index_rows(self, arr: np.ndarray) -> np.ndarray:
        """Row index of each permutation in ``arr`` or -1 if absent."""
        arr = np.atleast_2d(np.asarray(arr, dtype=np.int64))
        if self.degree <= PACK_LIMIT:
            keys = self.keys
            q = pack_keys(arr)
            pos = np.searchsorted(keys, q).clip(max=len(keys) - 1)
            return np.where(keys[pos] == q, pos, -1)
        idx = self._row_index()
        return np.array([idx.get(row.tobytes(), -1) for row in arr], dtype=np.int64)

    def contains_rows(self, arr: np.ndarray) -> np.ndarray:
        return self.index_rows(arr) >= 0

    def __contains__(self, perm: Permutation) -> bool:
        return bool(self.contains_rows(np.array(perm.images))[0])

    def element_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple(row) for row in self.elements.tolist())

    def same_elements(self, other: "PermSubgroup") -> bool:
        return self.degree == other.degree and np.array_equal(self.elements, other.elements)

    def is_subgroup_of(self, other: "PermSubgroup") -> bool:
        return bool(other.contains_rows(self.elements).all())

    def to_group_table(self, name: str | None = None) -> GroupTable:
        """Abstract table over the sorted element rows (row 0 is the identity)."""
        els = self.elements
        n = els.shape[0]
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            table[i] = self.index_rows(els[i][els])      # els[i] o els[j]
        if (table < 0).any():
            raise AssertionError("element set not closed")
        return make_group(table, name or self.name)

    def closure_with(self, extra: Sequence[Permutation], name: str | None = None) -> "PermSubgroup":
        return PermSubgroup(self.degree, list(self.generators) + list(extra), name=name)


def generating_subset(degree: int, rows: np.ndarray) -> list[Permutation]:
    """Greedy generators for the group whose elements are ``rows``."""
    gens: list[Permutation] = []
    current = PermSubgroup(degree, [])
    for row in np.asarray(rows):
        if not current.contains_rows(row)[0]:
            gens.append(Permutation(row, check=False))
            current = PermSubgroup(degree, gens)
    return gens


def join(*groups: PermSubgroup, extra: Sequence[Permutation] = (), name: str | None = None) -> PermSubgroup:
    d = groups[0].degree
    gens = [g for G in groups for g in G.generators] + list(extra)
    return PermSubgroup(d, gens, name=name)


def symmetric_group(d: int, points: Sequence[int] | None = None, degree: int | None = None) -> PermSubgroup:
    """Sym on ``points`` (default all of {0..d-1}) inside Sym(degree)."""
    degree = d if degree is None else degree
    points = list(range(d)) if points is None else list(points)
    gens = []
    if len(points) >= 2:
        t = list(range(degree))
        t[points[0]], t[points[1]] = points[1], points[0]
        gens.append(Permutation(t))
    if len(points) >= 3:
        c = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            c[a] = b
        gens.append(Permutation(c))
    return PermSubgroup(degree, gens)


# ---------------------------------------------------------------------------
# brute-force scans over Sym(d)


@lru_cache(maxsize=16)
def lex_permutations(k: int) -> np.ndarray:
    """All permutations of range(k) in lexicographic order, as int8 rows."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    sub = lex_permutations(k - 1)
    blocks = []
    for first in range(k):
        rest = np.where(sub >= first, sub + 1, sub).astype(np.int8)
        blocks.append(np.concatenate([np.full((sub.shape[0], 1), first, dtype=np.int8), rest], axis=1))
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def _prefix_length(d: int) -> int:
    return max(0, d - 9)


def _prefixes(d: int) -> list[tuple[int, ...]]:
    from itertools import permutations
    return list(permutations(range(d), _prefix_length(d)))


def _chunk(d: int, prefix: tuple[int, ...]) -> np.ndarray:
    remaining = np.array(sorted(set(range(d)) - set(prefix)), dtype=np.int8)
    tail = remaining[lex_permutations(d - len(prefix))]
    head = np.broadcast_to(np.array(prefix, dtype=np.int8), (tail.shape[0], len(prefix)))
    return np.concatenate([head, tail], axis=1)


def _scan_chunk(args) -> np.ndarray:
    d, prefix, gens, keys, mode, alternating = args
    P = _chunk(d, prefix)
    if alternating:
        P = P[parity_even(P)]
    for g in gens:
        if P.shape[0] == 0:
            break
        conj = np.take_along_axis(inverse_rows(P), g[P.astype(np.intp)], axis=1)  # s^-1 g s
        q = pack_keys(conj)
        if mode == "centralize":
            keep = q == pack_keys(g[None, :])[0]
        else:
            pos = np.searchsorted(keys, q).clip(max=len(keys) - 1)
            keep = keys[pos] == q
        P = P[keep]
    return P.astype(np.int64)


def _check_degree(d: int, max_degree: int | None) -> None:
    limit = config.max_degree_from_env() if max_degree is None else max_degree
    if d > config.HARD_MAX_DEGREE:
        raise CapExceeded(f"degree {d} exceeds the hard scan limit {config.HARD_MAX_DEGREE}")
    if d > limit:
        raise CapExceeded(f"degree {d} exceeds max degree {limit} (raise it explicitly to scan {math.factorial(d)} permutations)")
    if d > config.DEFAULT_MAX_DEGREE:
        log.warning("scanning Sym(%d): %d permutations, expect a long run", d, math.factorial(d))


def scan_sym(d: int, gens: Sequence[Permutation], member_keys: np.ndarray | None, mode: str,
             alternating: bool = False, max_degree: int | None = None, threads: int = 1) -> np.ndarray:
    """Rows s of Sym(d) (or Alt(d)) in rank order with s^-1 g s in the member set
    (mode "normalize") or equal to g (mode "centralize") for every g in gens."""
    _check_degree(d, max_degree)
    garr = [np.array(g.images, dtype=np.int8) for g in gens if not g.is_identity()]
    jobs = [(d, pre, garr, member_keys, mode, alternating) for pre in _prefixes(d)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    return np.concatenate(parts) if parts else np.zeros((0, d), dtype=np.int64)


def normalizer_in_sym(H: PermSubgroup, max_degree: int | None = None, threads: int = 1,
                      alternating: bool = False) -> PermSubgroup:
    """N_{Sym(d)}(H) (or N_{Alt(d)}(H)) by scanning every permutation.

    Conjugating the generators of H is enough: conjugation by a fixed s is an
    automorphism of Sym(d), so s^-1 H s lies in H once the generators do.
    """
    d = H.degree
    _check_degree(d, max_degree)
    rows = scan_sym(d, H.generators, H.keys, "normalize", alternating, max_degree, threads)
    gens = [Permutation(r, check=False) for r in rows]
    return PermSubgroup.from_elements(d, rows, generators=gens)


def centralizer_scan(R: PermSubgroup, max_degree: int | None = None, threads: int = 1) -> PermSubgroup:
    d = R.degree
    rows = scan_sym(d, R.generators, None, "centralize", False,
                    max_degree=config.HARD_MAX_DEGREE if max_degree is None else max_degree,
                    threads=threads)
    return PermSubgroup.from_elements(d, rows)
