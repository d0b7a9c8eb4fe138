"""The groups CS(T, p) = P x| Q built from a finite group T and a prime p.

With n = |T|, the generators t_1..t_n of P are the elements of T in table
order (t_1 is the identity).  P is modelled as the free nilpotent Lie algebra
of class n on n generators with the truncated BCH product, modulo the
degree-n subspace spanned by the right-nested brackets

    [t*t_1, t*t_2, ..., t*t_{n-1}, t*t_1]        (t in T)

Q = (F_p^x)^n acts diagonally: generator t_i is scaled by a_i, so a basis
bracket is scaled by the product of a_i over its leaves.

Elements are pairs (u, q) with u a canonical coefficient vector (pivot
coordinates of the relation space eliminated) and q a tuple of units mod p.
The product is (u, q)(v, r) = (u o act(q, v), q r).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import config
from .errors import CapExceeded, CertificateFailed, GroupMismatch, InvalidParameter, PTooSmall, TTooSmall
from .fp import is_prime, nullspace, primitive_root, rref
from .groups import GroupTable
from .liealg import HallBasis, LieVector, bch_rows, bracket_many, hall_basis

MAX_T = 4
CENTER_SAMPLES = 1000


@dataclass(frozen=True)
class CsParams:
    T: GroupTable
    p: int

    def __post_init__(self):
        n = self.T.order
        if n <= 2:
            raise TTooSmall(f"|T| = {n}; need |T| >= 3")
        if not is_prime(self.p):
            raise InvalidParameter(f"p = {self.p} is not prime")
        if self.p <= n + 1:
            raise PTooSmall(f"p = {self.p}; need p > |T| + 1 = {n + 1}")
        if n > MAX_T:
            raise CapExceeded(f"|T| = {n} exceeds the class cap {MAX_T}")

    @property
    def n(self) -> int:
        return self.T.order


def weight_scalar(a, multiplicities, p: int) -> int:
    """prod a_i^m_i mod p."""
    out = 1
    for ai, mi in zip(a, multiplicities):
        out = out * pow(int(ai), int(mi), p) % p
    return out


def weight_scalars(B: HallBasis, a, p: int) -> np.ndarray:
    """The scalar by which q = a multiplies each basis element."""
    return np.array([weight_scalar(a, w, p) for w in B.weights], dtype=np.int64)


def q_act(a, v: LieVector) -> LieVector:
    return LieVector(v.basis, v.p, v.coeffs * weight_scalars(v.basis, a, v.p))


def _q_act_rows(B: HallBasis, Q: np.ndarray, U: np.ndarray, p: int) -> np.ndarray:
    """Row-wise action of the q-tuples Q (m, n) on coefficient rows U (m, D)."""
    W = B.weights                                           # (D, n)
    scal = np.ones((Q.shape[0], W.shape[0]), dtype=np.int64)
    for i in range(W.shape[1]):
        for e in range(1, int(W[:, i].max(initial=0)) + 1):
            hit = W[:, i] >= e
            scal[:, hit] = scal[:, hit] * Q[:, i:i + 1] % p
    return U * scal % p


def n_fold_commutator_vector(T: GroupTable, t: int, p: int, basis: HallBasis | None = None) -> LieVector:
    """[t*t_1, t*t_2, ..., t*t_{n-1}, t*t_1] in the class-n Hall basis."""
    n = T.order
    B = basis or hall_basis(n, n)
    entries = [int(T.table[t, j]) for j in range(n - 1)] + [int(T.table[t, 0])]
    gens = [B.basis_vector(e, p) for e in entries]
    return bracket_many(*gens)


@dataclass(frozen=True, eq=False)
class CsElement:
    group: "CsGroup"
    lie: np.ndarray
    q: tuple[int, ...]

    def __mul__(self, other: "CsElement") -> "CsElement":
        return self.group.multiply(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CsElement) and other.group is self.group
                and self.q == other.q and np.array_equal(self.lie, other.lie))

    def __hash__(self) -> int:
        return hash((self.q, self.lie.tobytes()))

    def is_identity(self) -> bool:
        return not self.lie.any() and all(x == 1 for x in self.q)

    def to_dict(self) -> dict:
        return {"lie": [[int(i), int(self.lie[i])] for i in np.flatnonzero(self.lie)],
                "q": list(self.q)}


class CsGroup:
    def __init__(self, params: CsParams):
        self.params = params
        n, p = params.n, params.p
        self.n, self.p = n, p
        self.basis = hall_basis(n, n)
        self.D = len(self.basis)
        rel = np.array([n_fold_commutator_vector(params.T, t, p, self.basis).coeffs for t in range(n)])
        self.relation_vectors = rel
        rows, pivots = rref(rel, p)
        self.relation_space = rows
        self.pivots = pivots
        self.r = len(pivots)

    def __repr__(self) -> str:
        return f"CsGroup(T={self.params.T.name or 'T'}, p={self.p}, D={self.D}, r={self.r})"

    @property
    def dims(self) -> tuple[int, ...]:
        return self.basis.dims

    @property
    def order(self) -> int:
        return self.p ** (self.D - self.r) * (self.p - 1) ** self.n

    @property
    def order_factored(self) -> list[list[int]]:
        return [[self.p, self.D - self.r], [self.p - 1, self.n]]

    # -- canonical forms ----------------------------------------------------

    def canonicalize(self, U: np.ndarray) -> np.ndarray:
        """Eliminate pivot coordinates of the relation space (rows or a vector)."""
        U = np.array(U, dtype=np.int64) % self.p
        one = U.ndim == 1
        U = np.atleast_2d(U)
        for row, c in zip(self.relation_space, self.pivots):
            U = (U - np.outer(U[:, c], row)) % self.p
        return U[0] if one else U

    def element(self, lie=None, q=None) -> CsElement:
        lie = np.zeros(self.D, dtype=np.int64) if lie is None else lie
        if isinstance(lie, LieVector):
            if lie.basis is not self.basis or lie.p != self.p:
                raise GroupMismatch("Lie vector from a different algebra")
            lie = lie.coeffs
        q = tuple(int(x) % self.p for x in (q if q is not None else (1,) * self.n))
        if len(q) != self.n or any(x == 0 for x in q):
            raise InvalidParameter("q must be n units mod p")
        lie = self.canonicalize(lie)
        lie.setflags(write=False)
        return CsElement(self, lie, q)

    def identity(self) -> CsElement:
        return self.element()

    def generator(self, i: int) -> CsElement:
        """t_i as a pure P element, 1-based."""
        return self.element(self.basis.basis_vector(i - 1, self.p))

    def q_generators(self) -> list[CsElement]:
        """The coordinate generators (1,..,g,..,1) of Q for a primitive root g."""
        g = primitive_root(self.p)
        return [self.element(q=tuple(g if j == i else 1 for j in range(self.n))) for i in range(self.n)]

    def random_element(self, rng: np.random.Generator) -> CsElement:
        lie = rng.integers(0, self.p, size=self.D)
        q = tuple(int(x) for x in rng.integers(1, self.p, size=self.n))
        return self.element(lie, q)

    # -- group law -------------------------------------------------------------

    def _own(self, *xs: CsElement) -> None:
        for x in xs:
            if x.group is not self:
                raise GroupMismatch("element belongs to a different CS group")

    def multiply_rows(self, U, QU, V, QV) -> tuple[np.ndarray, np.ndarray]:
        """Batched product on arrays of lie parts (m, D) and q parts (m, n)."""
        acted = _q_act_rows(self.basis, QU, V, self.p)
        lie = self.canonicalize(bch_rows(self.basis, U, acted, self.p))
        return lie, QU * QV % self.p

    def multiply(self, x: CsElement, y: CsElement) -> CsElement:
        self._own(x, y)
        lie, q = self.multiply_rows(x.lie[None], np.array([x.q]), y.lie[None], np.array([y.q]))
        return self.element(lie[0], tuple(int(v) for v in q[0]))

    def inverse(self, x: CsElement) -> CsElement:
        self._own(x)
        qinv = tuple(pow(v, -1, self.p) for v in x.q)
        lie = _q_act_rows(self.basis, np.array([qinv]), (-x.lie)[None], self.p)[0]
        return self.element(lie, qinv)

    def power(self, x: CsElement, m: int) -> CsElement:
        out = self.identity()
        for _ in range(m):
            out = self.multiply(out, x)
        return out

    def commutes(self, x: CsElement, y: CsElement) -> bool:
        return self.multiply(x, y) == self.multiply(y, x)

    # -- fixed points of Q ------------------------------------------------------

    def q_fixed_subspace(self, k: int) -> np.ndarray:
        """Basis rows (full D coordinates) of the Q-fixed part of degree k; the
        top degree is taken modulo the relation space."""
        rel = self.relation_space if k == self.n else None
        return fixed_subspace(self.basis, self.p, k, rel, self.pivots if rel is not None else None)

    def q_fixed_by_multiplicity(self, k: int) -> list[int]:
        """Degree-k basis indices whose every multiplicity is divisible by p-1."""
        return multiplicity_fixed(self.basis, self.p, k)


def build(params: CsParams) -> CsGroup:
    return CsGroup(params)


def multiplicity_fixed(B: HallBasis, p: int, k: int) -> list[int]:
    idx = np.flatnonzero(B.degrees == k)
    W = B.weights[idx]
    return [int(i) for i in idx[(W % (p - 1) == 0).all(axis=1)]]


def fixed_subspace(B: HallBasis, p: int, k: int, relations: np.ndarray | None = None,
                   pivots: list[int] | None = None) -> np.ndarray:
    """Vectors of degree k fixed by every coordinate generator of Q.

    With ``relations`` (rows in RREF with the given pivots, all of degree k)
    the computation happens in the quotient, whose coordinates are the
    non-pivot degree-k basis indices.
    """
    if not 1 <= k <= B.c:
        raise InvalidParameter(f"degree {k} outside 1..{B.c}")
    g = primitive_root(p)
    idx = np.flatnonzero(B.degrees == k)
    piv = set(pivots or [])
    coords = [int(i) for i in idx if int(i) not in piv]
    m = len(coords)
    if m == 0:
        return np.zeros((0, len(B)), dtype=np.int64)
    blocks = []
    for i in range(B.n):
        a = [g if j == i else 1 for j in range(B.n)]
        scal = weight_scalars(B, a, p)
        # image of each quotient basis vector, reduced mod the relations
        M = np.zeros((len(B), m), dtype=np.int64)
        for col, c in enumerate(coords):
            M[c, col] = scal[c]
        if relations is not None:
            for row, pc in zip(relations, pivots):
                M = (M - np.outer(row, M[pc])) % p
        M = M[coords] - np.eye(m, dtype=np.int64)
        blocks.append(M % p)
    null = nullspace(np.vstack(blocks), p)
    out = np.zeros((null.shape[0], len(B)), dtype=np.int64)
    out[:, coords] = null
    return out


@dataclass
class CenterCertificate:
    n: int
    p: int
    dims: tuple[int, ...]
    r: int
    order_factored: list[list[int]]
    q_fixed_levels: list[int]
    q_fixed_by_multiplicity: list[int]
    faithful_degree1: bool
    semidirect: dict
    random_center_check: dict = field(default_factory=dict)

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "q_fixed_levels_zero": all(d == 0 for d in self.q_fixed_levels),
            "q_fixed_matches_multiplicity": self.q_fixed_levels == self.q_fixed_by_multiplicity,
            "faithful_degree1": self.faithful_degree1,
            "semidirect_center_trivial": bool(self.semidirect.get("center_trivial")),
            "random_center_check": self.random_center_check.get("witnesses") == 0,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        D = sum(self.dims)
        return {"n": self.n, "p": self.p, "dims": list(self.dims), "D": D, "r": self.r,
                "order_factored": self.order_factored,
                "order": str(self.p ** (D - self.r) * (self.p - 1) ** self.n),
                "q_fixed_levels": self.q_fixed_levels,
                "q_fixed_total": sum(self.q_fixed_levels),
                "q_fixed_by_multiplicity": self.q_fixed_by_multiplicity,
                "faithful_degree1": self.faithful_degree1,
                "semidirect": self.semidirect,
                "random_center_check": self.random_center_check,
                "checks": self.checks}


def faithful_on_degree1(G: CsGroup) -> bool:
    """Only the identity of Q acts trivially on the degree-1 component."""
    p, n = G.p, G.n
    Q = np.array(list(itertools.product(range(1, p), repeat=n)), dtype=np.int64)
    deg1 = np.flatnonzero(G.basis.degrees == 1)
    ones = np.ones((Q.shape[0], G.D), dtype=np.int64)
    scal = _q_act_rows(G.basis, Q, ones, p)[:, deg1]
    trivial = (scal == 1).all(axis=1)
    return int(trivial.sum()) == 1 and bool((Q[trivial] == 1).all())


def random_center_check(G: CsGroup, samples: int = CENTER_SAMPLES, seed: int | None = None) -> dict:
    """Count sampled nonidentity elements commuting with every generator.

    The generators are t_1..t_n and the coordinate generators of Q, so a
    sample commuting with all of them is central.
    """
    seed = config.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    p, n = G.p, G.n
    U = G.canonicalize(rng.integers(0, p, size=(samples, G.D)))
    QU = rng.integers(1, p, size=(samples, n))
    ident = ~U.any(axis=1) & (QU == 1).all(axis=1)
    U, QU = U[~ident], QU[~ident]
    gens = [G.generator(i) for i in range(1, n + 1)] + G.q_generators()
    central = np.ones(U.shape[0], dtype=bool)
    for g in gens:
        gl = np.broadcast_to(g.lie, U.shape)
        gq = np.broadcast_to(np.array(g.q), QU.shape)
        l1, q1 = G.multiply_rows(U, QU, gl, gq)
        l2, q2 = G.multiply_rows(gl, gq, U, QU)
        central &= (l1 == l2).all(axis=1) & (q1 == q2).all(axis=1)
    return {"seed": seed, "samples": int(U.shape[0]), "witnesses": int(central.sum())}


def center_certificate(G: CsGroup, samples: int = CENTER_SAMPLES, seed: int | None = None,
                       strict: bool = True) -> CenterCertificate:
    """Evidence that Z(CS(T, p)) = 1; raises CertificateFailed if a check fails
    (unless ``strict`` is False)."""
    levels = [int(G.q_fixed_subspace(k).shape[0]) for k in range(1, G.n + 1)]
    by_mult = []
    for k in range(1, G.n + 1):
        idx = G.q_fixed_by_multiplicity(k)
        if k == G.n and idx:
            E = np.zeros((len(idx), G.D), dtype=np.int64)
            E[np.arange(len(idx)), idx] = 1
            by_mult.append(len(rref(G.canonicalize(E), G.p)[1]))
        else:
            by_mult.append(len(idx))
    faithful = faithful_on_degree1(G)
    # Z(P x| Q) consists of u q with q in Z(Q), u fixed by Q and u q acting
    # trivially on P; Q is abelian, so trivial fixed points force u = 0 and
    # faithfulness then forces q = 1.
    semidirect = {"q_abelian": True, "q_fixed_in_p_trivial": all(d == 0 for d in levels),
                  "faithful_on_p": faithful}
    semidirect["center_trivial"] = all(semidirect.values())
    cert = CenterCertificate(G.n, G.p, G.dims, G.r, G.order_factored, levels, by_mult, faithful,
                             semidirect, random_center_check(G, samples, seed))
    if strict and not cert.passed:
        raise CertificateFailed(f"center certificate failed: {', '.join(cert.failing())}")
    return cert


def build_certificate(G: CsGroup) -> dict:
    return {"n": G.n, "p": G.p, "dims": list(G.dims), "D": G.D, "r": G.r,
            "order_factored": G.order_factored, "order": str(G.order),
            "relation_pivots": [int(c) for c in G.pivots]}
