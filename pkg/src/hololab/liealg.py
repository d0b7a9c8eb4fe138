"""Free nilpotent Lie algebras over F_p in a Hall basis, and the truncated
Baker-Campbell-Hausdorff group law on them.

Basis elements are binary bracket trees over generators x_1 < ... < x_n.
Within the basis list, elements are sorted by degree and then by the
positions of their two subtrees; ``[u, v]`` is basic iff u, v are basic,
u > v, and (when u = [u1, u2]) u2 <= v.

Structure constants are integers computed once per (n, c) by rewriting with
antisymmetry and the Jacobi identity

    [[a, b], v] = [a, [b, v]] - [b, [a, v]]

and are reduced mod p only when a vector is formed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .errors import BadModulus, BasisMismatch, CapExceeded
from .fp import is_prime

MAX_RANK = 6
MAX_CLASS = 4


def mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


def witt_dimension(n: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra on n generators."""
    if n < 1 or k < 1:
        raise ValueError("witt_dimension needs n >= 1 and k >= 1")
    total = sum(mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


@dataclass(frozen=True)
class HallElement:
    index: int
    degree: int
    weight: tuple[int, ...]              # multiplicity of each generator
    generator: int | None = None         # 1-based, for degree 1
    left: int | None = None
    right: int | None = None


class HallBasis:
    """Hall basis of the free Lie algebra on n generators truncated at class c."""

    def __init__(self, n: int, c: int):
        if not (1 <= n <= MAX_RANK and 1 <= c <= MAX_CLASS):
            raise CapExceeded(f"hall_basis supports 1 <= n <= {MAX_RANK}, 1 <= c <= {MAX_CLASS}; got ({n}, {c})")
        self.n, self.c = n, c
        elements: list[HallElement] = []
        for i in range(n):
            w = [0] * n
            w[i] = 1
            elements.append(HallElement(i, 1, tuple(w), generator=i + 1))
        for k in range(2, c + 1):
            new = []
            for u in elements:
                for v in elements:
                    if u.degree + v.degree != k or u.index <= v.index:
                        continue
                    if u.left is not None and u.right > v.index:
                        continue
                    new.append((u.index, v.index))
            new.sort()
            for u, v in new:
                w = tuple(a + b for a, b in zip(elements[u].weight, elements[v].weight))
                elements.append(HallElement(len(elements), k, w, left=u, right=v))
        self.elements = elements
        self.lookup = {(e.left, e.right): e.index for e in elements if e.left is not None}

    def __repr__(self) -> str:
        return f"HallBasis(n={self.n}, c={self.c}, dims={self.dims})"

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    @cached_property
    def dims(self) -> tuple[int, ...]:
        return tuple(sum(1 for e in self.elements if e.degree == k) for k in range(1, self.c + 1))

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([e.degree for e in self.elements])

    @cached_property
    def weights(self) -> np.ndarray:
        """(dimension, n) array of generator multiplicities."""
        return np.array([e.weight for e in self.elements], dtype=np.int64)

    def degree_slice(self, k: int) -> slice:
        idx = np.flatnonzero(self.degrees == k)
        return slice(int(idx[0]), int(idx[-1]) + 1)

    def label(self, i: int) -> str:
        e = self.elements[i]
        if e.generator is not None:
            return f"t{e.generator}"
        return f"[{self.label(e.left)},{self.label(e.right)}]"

    def index_of(self, label: str) -> int:
        for i in range(len(self.elements)):
            if self.label(i) == label:
                return i
        raise KeyError(label)

    # -- structure constants --------------------------------------------

    @cached_property
    def _brackets(self) -> dict[tuple[int, int], dict[int, int]]:
        memo: dict[tuple[int, int], dict[int, int]] = {}
        els = self.elements

        def add(acc: dict[int, int], vec: dict[int, int], scale: int) -> None:
            for k, v in vec.items():
                s = acc.get(k, 0) + scale * v
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)

        def br_vec(a: int, vec: dict[int, int]) -> dict[int, int]:
            out: dict[int, int] = {}
            for k, v in vec.items():
                add(out, br(a, k), v)
            return out

        def br(a: int, b: int) -> dict[int, int]:
            key = (a, b)
            if key in memo:
                return memo[key]
            if els[a].degree + els[b].degree > self.c or a == b:
                out: dict[int, int] = {}
            elif a < b:
                out = {k: -v for k, v in br(b, a).items()}
            elif els[a].left is None or els[a].right <= b:
                out = {self.lookup[(a, b)]: 1}
            else:
                a1, a2 = els[a].left, els[a].right
                out = br_vec(a1, br(a2, b))
                add(out, br_vec(a2, br(a1, b)), -1)
            memo[key] = out
            return out

        for a, b in itertools.product(range(len(els)), repeat=2):
            br(a, b)
        return memo

    def bracket_basis(self, a: int, b: int) -> dict[int, int]:
        """Integer expansion of [e_a, e_b] in the basis."""
        return dict(self._brackets[(a, b)])

    @cached_property
    def structure_matrix(self) -> sp.csr_matrix:
        """Sparse (D*D, D) matrix S with [u, v] = (u outer v).ravel() @ S."""
        D = len(self.elements)
        rows, cols, vals = [], [], []
        for (a, b), vec in self._brackets.items():
            for k, v in vec.items():
                rows.append(a * D + b)
                cols.append(k)
                vals.append(v)
        return sp.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=(D * D, D))

    @cached_property
    def bracket_terms(self) -> tuple[np.ndarray, np.ndarray, sp.csr_matrix]:
        """Nonzero structure constants as (left index, right index, scatter
        matrix from terms to output coordinates with the constants as values)."""
        S = self.structure_matrix.tocoo()
        D = len(self.elements)
        scatter = sp.csr_matrix((S.data, (np.arange(S.nnz), S.col)), shape=(S.nnz, D))
        return S.row // D, S.row % D, scatter

    # -- vectors -----------------------------------------------------------

    def zero(self, p: int) -> "LieVector":
        return LieVector(self, p, np.zeros(len(self), dtype=np.int64))

    def basis_vector(self, i: int, p: int, coeff: int = 1) -> "LieVector":
        v = np.zeros(len(self), dtype=np.int64)
        v[i] = coeff
        return LieVector(self, p, v)

    def generator(self, i: int, p: int) -> "LieVector":
        """x_i, 1-based."""
        return self.basis_vector(i - 1, p)

    def random(self, p: int, rng: np.random.Generator, max_degree: int | None = None) -> "LieVector":
        v = rng.integers(0, p, size=len(self))
        if max_degree is not None:
            v[self.degrees > max_degree] = 0
        return LieVector(self, p, v)


@lru_cache(maxsize=None)
def hall_basis(n: int, c: int) -> HallBasis:
    return HallBasis(n, c)


class LieVector:
    """Element of the free nilpotent Lie algebra over F_p in a Hall basis.

    Coefficients are held densely (the largest supported basis has 90
    elements) and exposed sparsely through :attr:`coefficients`.
    """

    __slots__ = ("basis", "p", "coeffs")

    def __init__(self, basis: HallBasis, p: int, coeffs):
        self.basis = basis
        self.p = int(p)
        c = np.asarray(coeffs, dtype=np.int64) % self.p
        c.setflags(write=False)
        self.coeffs = c

    def _same(self, other: "LieVector") -> None:
        if other.basis is not self.basis or other.p != self.p:
            raise BasisMismatch("vectors live in different algebras")

    @property
    def coefficients(self) -> dict[int, int]:
        return {int(i): int(self.coeffs[i]) for i in np.flatnonzero(self.coeffs)}

    def __add__(self, other: "LieVector") -> "LieVector":
        self._same(other)
        return LieVector(self.basis, self.p, self.coeffs + other.coeffs)

    def __sub__(self, other: "LieVector") -> "LieVector":
        self._same(other)
        return LieVector(self.basis, self.p, self.coeffs - other.coeffs)

    def __neg__(self) -> "LieVector":
        return LieVector(self.basis, self.p, -self.coeffs)

    def __mul__(self, scalar: int) -> "LieVector":
        return LieVector(self.basis, self.p, self.coeffs * (int(scalar) % self.p))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieVector) and other.basis is self.basis and other.p == self.p
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((id(self.basis), self.p, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        if not self.coeffs.any():
            return "LieVector(0)"
        terms = [f"{v}*{self.basis.label(i)}" for i, v in self.coefficients.items()]
        return "LieVector(" + " + ".join(terms) + f", p={self.p})"

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def component(self, k: int) -> "LieVector":
        c = np.where(self.basis.degrees == k, self.coeffs, 0)
        return LieVector(self.basis, self.p, c)

    def support_degrees(self) -> set[int]:
        return {int(d) for d in self.basis.degrees[self.coeffs != 0]}

    def to_dict(self) -> dict:
        return {"n": self.basis.n, "c": self.basis.c, "p": self.p,
                "coeffs": [[i, v] for i, v in sorted(self.coefficients.items())]}

    @classmethod
    def from_dict(cls, d: dict) -> "LieVector":
        B = hall_basis(d["n"], d["c"])
        v = np.zeros(len(B), dtype=np.int64)
        for i, c in d["coeffs"]:
            v[i] = c
        return cls(B, d["p"], v)


def bracket_rows(B: HallBasis, U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """Row-wise brackets of two (m, D) coefficient arrays, reduced mod p."""
    U = np.atleast_2d(U)
    V = np.atleast_2d(V)
    left, right, scatter = B.bracket_terms
    terms = U[:, left] * V[:, right] % p
    return np.asarray(scatter.T @ terms.T).T % p


def bracket(u: LieVector, v: LieVector) -> LieVector:
    u._same(v)
    return LieVector(u.basis, u.p, bracket_rows(u.basis, u.coeffs, v.coeffs, u.p)[0])


def bracket_many(first: LieVector, *rest: LieVector) -> LieVector:
    """Right-nested bracket [g1, [g2, ..., [g_{l-1}, g_l]]]."""
    items = (first,) + rest
    out = items[-1]
    for g in reversed(items[:-1]):
        out = bracket(g, out)
    return out


def _check_modulus(p: int, c: int) -> None:
    if not is_prime(p):
        raise BadModulus(f"{p} is not prime")
    if p in (2, 3):
        raise BadModulus("the truncated BCH law needs p >= 5")
    if c > MAX_CLASS:
        raise CapExceeded(f"BCH implemented for class <= {MAX_CLASS}")


def bch_rows(B: HallBasis, U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """Row-wise truncated BCH products of (m, D) coefficient arrays."""
    _check_modulus(p, B.c)
    U = np.atleast_2d(U) % p
    V = np.atleast_2d(V) % p
    out = U + V
    if B.c >= 2:
        W = bracket_rows(B, U, V, p)
        out = out + pow(2, -1, p) * W
        if B.c >= 3:
            UW = bracket_rows(B, U, W, p)
            inv12 = pow(12, -1, p)
            out = out + inv12 * UW - inv12 * bracket_rows(B, V, W, p)
            if B.c >= 4:
                out = out - pow(24, -1, p) * bracket_rows(B, V, UW, p)
    return out % p


def bch_multiply(u: LieVector, v: LieVector) -> LieVector:
    """u + v + 1/2[u,v] + 1/12[u,[u,v]] - 1/12[v,[u,v]] - 1/24[v,[u,[u,v]]]."""
    u._same(v)
    return LieVector(u.basis, u.p, bch_rows(u.basis, u.coeffs, v.coeffs, u.p)[0])


def bch_inverse(u: LieVector) -> LieVector:
    _check_modulus(u.p, u.basis.c)
    return -u


def bch_power(u: LieVector, m: int) -> LieVector:
    out = u.basis.zero(u.p)
    for _ in range(m):
        out = bch_multiply(out, u)
    return out


def group_commutator(x: LieVector, y: LieVector) -> LieVector:
    """x o y o x^-1 o y^-1 in the BCH group."""
    return bch_multiply(bch_multiply(bch_multiply(x, y), bch_inverse(x)), bch_inverse(y))


# ---------------------------------------------------------------------------
# embedding into the free associative algebra: an independent check


def tensor_expansion(B: HallBasis, i: int) -> dict[tuple[int, ...], int]:
    """Basis element i as a noncommutative polynomial: word -> integer coefficient."""
    return _tensor_expansions(B)[i]


@lru_cache(maxsize=None)
def _tensor_expansions(B: HallBasis) -> tuple[dict, ...]:
    out: list[dict] = []
    for e in B.elements:
        if e.generator is not None:
            out.append({(e.generator,): 1})
        else:
            out.append(commutator_poly(out[e.left], out[e.right]))
    return tuple(out)


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            out[w] = out.get(w, 0) + ca * cb
    return {w: c for w, c in out.items() if c}


def commutator_poly(a: dict, b: dict) -> dict:
    out = poly_mul(a, b)
    for w, c in poly_mul(b, a).items():
        out[w] = out.get(w, 0) - c
    return {w: c for w, c in out.items() if c}


def expand_vector(v: LieVector) -> dict:
    out: dict = {}
    for i, c in v.coefficients.items():
        for w, cw in tensor_expansion(v.basis, i).items():
            out[w] = (out.get(w, 0) + c * cw) % v.p
    return {w: c for w, c in out.items() if c}


def truncate_poly(a: dict, c: int, p: int | None = None) -> dict:
    out = {w: (x % p if p else x) for w, x in a.items() if len(w) <= c}
    return {w: x for w, x in out.items() if x}


def expansion_rank(B: HallBasis, k: int) -> int:
    """Rank over Q of the degree-k basis expansions (linear independence check)."""
    idx = [e.index for e in B.elements if e.degree == k]
    words = sorted({w for i in idx for w in tensor_expansion(B, i)})
    pos = {w: j for j, w in enumerate(words)}
    M = np.zeros((len(idx), len(words)))
    for r, i in enumerate(idx):
        for w, c in tensor_expansion(B, i).items():
            M[r, pos[w]] = c
    return int(np.linalg.matrix_rank(M)) if M.size else 0


def weight_of_word(word: Iterable[int], n: int) -> tuple[int, ...]:
    w = [0] * n
    for g in word:
        w[g - 1] += 1
    return tuple(w)
