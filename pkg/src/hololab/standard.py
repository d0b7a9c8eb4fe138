"""Builders for the small groups used throughout: cyclic, symmetric,
alternating, dihedral, quaternion, direct and semidirect products, plus the
``builtin:`` name registry used by the CLI."""

from __future__ import annotations

import itertools
import re
from typing import Sequence

import numpy as np

from .errors import InvalidParameter
from .groups import GroupTable, SemidirectSpec, make_group, semidirect


def from_permutations(perms: Sequence[Sequence[int]], name: str | None = None) -> GroupTable:
    """Table of a set of permutations closed under composition.

    ``perms[0]`` must be the identity; the product is (s*t)(x) = s(t(x)).
    """
    arr = np.array(perms, dtype=np.int64)
    d = arr.shape[1]
    weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    keys = arr @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]
    if np.any(sorted_keys[1:] == sorted_keys[:-1]):
        raise InvalidParameter("duplicate permutations")
    prod_keys = arr[:, arr] @ weights      # arr[i][arr[j][x]]
    pos = np.searchsorted(sorted_keys, prod_keys).clip(max=len(keys) - 1)
    if not np.array_equal(sorted_keys[pos], prod_keys):
        raise InvalidParameter("permutations are not closed under composition")
    table = order[pos]
    return make_group(table, name)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InvalidParameter(f"cyclic group needs n >= 1, got {n}")
    ar = np.arange(n)
    return make_group((ar[:, None] + ar[None, :]) % n, f"C{n}")


def symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise InvalidParameter(f"symmetric group builder supports 1 <= n <= 6, got {n}")
    perms = list(itertools.permutations(range(n)))
    return from_permutations(perms, f"S{n}")


def _is_even(p: Sequence[int]) -> bool:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2 == 0


def alternating(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise InvalidParameter(f"alternating group builder supports 1 <= n <= 6, got {n}")
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return from_permutations(perms, f"A{n}")


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n; element r^i s^j has index i + n*j."""
    if n < 1:
        raise InvalidParameter(f"dihedral group needs n >= 1, got {n}")
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 0, 1, -1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return make_group(rot + n * ref, f"D{n}")


def quaternion() -> GroupTable:
    # units 1, i, j, k with signs; element index = unit + 4*(sign is negative)
    mult = {  # (unit, unit) -> (sign, unit)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            s, u = mult[(a % 4, b % 4)]
            if (a >= 4) != (b >= 4):
                s = -s
            table[a, b] = u + (4 if s < 0 else 0)
    return make_group(table, "Q8")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """G x H with (g, h) at index g + |G|*h, so G x 1 is {0..|G|-1}."""
    ng, nh = G.order, H.order
    idx = np.arange(ng * nh)
    g, h = idx % ng, idx // ng
    table = G.table[g[:, None], g[None, :]] + ng * H.table[h[:, None], h[None, :]]
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return make_group(table, name)


def direct_power(G: GroupTable, k: int) -> GroupTable:
    out = G
    for _ in range(k - 1):
        out = direct_product(out, G)
    return out


def semidirect_product(spec: SemidirectSpec, name: str | None = None) -> GroupTable:
    return make_group(semidirect(spec).table, name)


def inversion_action(A: GroupTable, B: GroupTable) -> SemidirectSpec:
    """B = C_2 acting on abelian A by inversion."""
    if B.order != 2 or not A.is_abelian:
        raise InvalidParameter("inversion action needs abelian A and B of order 2")
    ident = tuple(range(A.order))
    return SemidirectSpec(A, B, (ident, tuple(int(x) for x in A.inverses)))


def swap_action(A: GroupTable) -> SemidirectSpec:
    """C_2 acting on A x A by swapping coordinates."""
    n = A.order
    AA = direct_product(A, A)
    idx = np.arange(n * n)
    swapped = (idx // n) + n * (idx % n)
    return SemidirectSpec(AA, cyclic(2), (tuple(range(n * n)), tuple(int(x) for x in swapped)))


def standard_groups(kind: str, *params) -> GroupTable:
    """Dispatch by name: C, S, A, D, Q8, direct, semidirect."""
    kind = kind.lower()
    try:
        if kind in ("c", "cyclic"):
            return cyclic(*params)
        if kind in ("s", "symmetric"):
            return symmetric(*params)
        if kind in ("a", "alternating"):
            return alternating(*params)
        if kind in ("d", "dihedral"):
            return dihedral(*params)
        if kind in ("q8", "quaternion"):
            return quaternion()
        if kind in ("direct", "direct_product"):
            return direct_product(*params)
        if kind in ("semidirect", "semidirect_product"):
            return semidirect_product(*params)
    except TypeError as exc:
        raise InvalidParameter(f"bad parameters for {kind}: {exc}") from None
    raise InvalidParameter(f"unknown group kind {kind!r}")


_FACTOR = re.compile(r"^(C|S|A|D)(\d+)$|^Q8$")


def _builtin_factor(token: str) -> GroupTable:
    m = _FACTOR.match(token)
    if not m:
        raise InvalidParameter(f"unknown builtin group {token!r}")
    if token == "Q8":
        return quaternion()
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic(n)
    if kind in "SA" and n > 5:
        raise InvalidParameter(f"builtin {kind}n only for n <= 5")
    if kind == "D" and n > 6:
        raise InvalidParameter("builtin Dn only for n <= 6")
    return {"S": symmetric, "A": alternating, "D": dihedral}[kind](n)


def builtin(name: str) -> GroupTable:
    """Parse names like ``S3``, ``D5``, ``C2xC2`` or ``S3xD5``."""
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    factors = [tok for tok in name.split("x") if tok]
    if not factors:
        raise InvalidParameter("empty group name")
    G = _builtin_factor(factors[0])
    for tok in factors[1:]:
        G = direct_product(G, _builtin_factor(tok))
    G.name = name
    return G
