"""Reading group inputs and writing canonical JSON documents."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidParameter
from .groups import GroupTable, make_group
from .perms import Permutation, PermSubgroup, symmetric_group
from .standard import builtin, cyclic


def load_group(spec: str) -> GroupTable:
    """``builtin:NAME`` (also a bare builtin name such as ``S3xD5``) or a JSON
    file holding {"name", "order", "table"}."""
    if spec.startswith("builtin:"):
        return builtin(spec)
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return read_group_file(path)
    if spec in ("trivial", "1"):
        G = cyclic(1)
        G.name = "1"
        return G
    return builtin(spec)


def read_group_file(path: str | Path) -> GroupTable:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameter(f"cannot read group file {path}: {exc}") from None
    return group_from_dict(data)


def group_from_dict(data: dict) -> GroupTable:
    if "table" not in data:
        raise InvalidParameter("group document needs a 'table'")
    table = np.asarray(data["table"], dtype=np.int64)
    if "order" in data and int(data["order"]) != table.shape[0]:
        raise InvalidParameter(f"order {data['order']} does not match table size {table.shape[0]}")
    return make_group(table, data.get("name"))


def write_group_file(G: GroupTable, path: str | Path) -> None:
    Path(path).write_text(dumps(G.to_dict()))


def parse_perm_subgroup(spec: str, n: int) -> PermSubgroup:
    """A subgroup of S_n: ``trivial``, ``symmetric``, ``alternating`` or
    generators as image lists, e.g. ``1,2,0`` or ``1,0,2;0,2,1``."""
    s = spec.strip().lower()
    if s in ("trivial", "1"):
        return PermSubgroup(n, [], name="1")
    if s in ("symmetric", "sym", "full"):
        H = symmetric_group(n)
        H.name = f"S{n}"
        return H
    if s in ("alternating", "alt"):
        gens = [Permutation(p) for p in _alternating_generators(n)]
        return PermSubgroup(n, gens, name=f"A{n}")
    gens = []
    for part in s.split(";"):
        try:
            images = [int(x) for x in part.split(",")]
        except ValueError:
            raise InvalidParameter(f"cannot parse permutation {part!r}") from None
        if len(images) != n:
            raise InvalidParameter(f"permutation {part!r} does not have degree {n}")
        gens.append(Permutation(images))
    return PermSubgroup(n, gens)


def _alternating_generators(n: int) -> list[list[int]]:
    """3-cycles (0 1 k) generate A_n."""
    out = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        out.append(p)
    return out


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def dumps(doc) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, default=_default) + "\n"
