"""Reading and writing lattice and cone files.

Numbers are written as exact strings (``"3"``, ``"-3/2"``); on input plain
JSON integers are accepted too.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import linalg as la
from .exactlat import Lattice, LatticeError


def lattice_from_dict(data: dict) -> Lattice:
    try:
        gram = data["gram"]
    except (KeyError, TypeError) as exc:
        raise LatticeError("lattice file needs a 'gram' field") from exc
    try:
        L = Lattice(
            gram,
            label=data.get("label", ""),
            named=data.get("named_vectors", {}),
            isometries=data.get("isometries", {}),
        )
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise LatticeError(f"malformed lattice data: {exc}") from exc
    if "rank" in data and int(data["rank"]) != L.rank:
        raise LatticeError(f"rank field {data['rank']} disagrees with the Gram matrix")
    return L


def lattice_to_dict(L: Lattice) -> dict:
    out: dict[str, Any] = {
        "label": L.label,
        "rank": L.rank,
        "gram": [[la.fmt(x) for x in row] for row in L.gram],
        "named_vectors": {k: [la.fmt(x) for x in v] for k, v in L.named},
    }
    if L.isometries:
        out["isometries"] = {k: [[la.fmt(x) for x in r] for r in m] for k, m in L.isometries}
    return out


def load_lattice(path) -> Lattice:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise LatticeError(f"cannot read lattice file {path}: {exc}") from exc
    return lattice_from_dict(data)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no trailing whitespace."""
    return json.dumps(obj, sort_keys=True)


def parse_vector(L: Lattice, text: str):
    """A named vector, or a literal like ``1,0,-1/2`` or ``[1, 0, "-1/2"]``."""
    text = text.strip()
    try:
        return L.vector(text)
    except KeyError:
        pass
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LatticeError(f"cannot parse vector {text!r}") from exc
    else:
        items = [t for t in text.split(",") if t.strip()]
    try:
        v = la.vec(items)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise LatticeError(f"unknown vector name or bad literal {text!r}") from exc
    if len(v) != L.rank:
        raise LatticeError(f"vector {text!r} has length {len(v)}, lattice rank is {L.rank}")
    return v


def parse_matrix(L: Lattice, text: str):
    text = text.strip()
    try:
        return L.isometry(text)
    except KeyError:
        pass
    try:
        m = la.mat(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise LatticeError(f"unknown isometry name or bad matrix {text!r}") from exc
    return m
