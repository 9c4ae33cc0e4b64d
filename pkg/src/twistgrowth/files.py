"""JSON documents for groups, endomorphisms and generating sets."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .group import Endomorphism, GroupElement, VAGroupData
from .intlin import IntMatrix


class InputError(ValueError):
    """Malformed input; ``field`` points at the offending JSON location."""

    def __init__(self, field: str, msg: str):
        self.field = field
        super().__init__(f"{field}: {msg}")


def _int(v: Any, field: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(field, f"expected an integer, got {v!r}")
    return v


def _vector(v: Any, n: int, field: str) -> tuple[int, ...]:
    if not isinstance(v, list) or len(v) != n:
        raise InputError(field, f"expected a list of {n} integers")
    return tuple(_int(x, f"{field}[{i}]") for i, x in enumerate(v))


def _matrix(v: Any, n: int, field: str) -> IntMatrix:
    if not isinstance(v, list) or len(v) != n:
        raise InputError(field, f"expected {n} rows")
    return IntMatrix.from_rows([_vector(r, n, f"{field}[{i}]") for i, r in enumerate(v)], n)


def _coset(G: VAGroupData, v: Any, field: str) -> int:
    try:
        if isinstance(v, str):
            return G.coset_index(v)
        return G.coset_index(_int(v, field))
    except (KeyError, IndexError) as exc:
        raise InputError(field, str(exc)) from None


def group_from_dict(doc: dict) -> VAGroupData:
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    for key in ("n", "cosets", "mult", "cocycle", "action"):
        if key not in doc:
            raise InputError(key, "missing field")
    n = _int(doc["n"], "n")
    if n < 0:
        raise InputError("n", "must be nonnegative")
    cosets = doc["cosets"]
    if not isinstance(cosets, list) or not cosets:
        raise InputError("cosets", "expected a nonempty list of labels")
    labels = [str(c) for c in cosets]
    if len(set(labels)) != len(labels):
        raise InputError("cosets", "labels must be distinct")
    m = len(labels)

    def table(key):
        t = doc[key]
        if not isinstance(t, list) or len(t) != m or any(not isinstance(r, list) or len(r) != m for r in t):
            raise InputError(key, f"expected a {m}x{m} table")
        return t

    mult = [[_int(v, f"mult[{a}][{b}]") for b, v in enumerate(row)]
            for a, row in enumerate(table("mult"))]
    cocycle = [[_vector(v, n, f"cocycle[{a}][{b}]") for b, v in enumerate(row)]
               for a, row in enumerate(table("cocycle"))]
    action = doc["action"]
    if not isinstance(action, list) or len(action) != m:
        raise InputError("action", f"expected {m} matrices")
    mats = [_matrix(M, n, f"action[{a}]") for a, M in enumerate(action)]
    return VAGroupData.build(n, labels, mult, cocycle, mats)


def group_to_dict(G: VAGroupData) -> dict:
    return {
        "n": G.n,
        "cosets": list(G.cosets),
        "mult": [list(r) for r in G.mult],
        "cocycle": [[list(v) for v in r] for r in G.cocycle],
        "action": [M.tolist() for M in G.action],
    }


def element_from_dict(G: VAGroupData, doc: Any, field: str) -> GroupElement:
    if not isinstance(doc, dict) or "vector" not in doc or "coset" not in doc:
        raise InputError(field, 'expected {"vector": [...], "coset": ...}')
    return GroupElement(_vector(doc["vector"], G.n, f"{field}.vector"),
                        _coset(G, doc["coset"], f"{field}.coset"))


def element_to_dict(g: GroupElement) -> dict:
    return {"vector": list(g.vector), "coset": g.coset}


def endo_from_dict(G: VAGroupData, doc: dict) -> Endomorphism:
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    for key in ("matrix", "rep_image"):
        if key not in doc:
            raise InputError(key, "missing field")
    M = _matrix(doc["matrix"], G.n, "matrix")
    imgs = doc["rep_image"]
    if not isinstance(imgs, list) or len(imgs) != G.m:
        raise InputError("rep_image", f"expected {G.m} entries")
    return Endomorphism(M, tuple(element_from_dict(G, d, f"rep_image[{i}]")
                                 for i, d in enumerate(imgs)))


def endo_to_dict(phi: Endomorphism) -> dict:
    return {"matrix": phi.matrix.tolist(),
            "rep_image": [element_to_dict(g) for g in phi.rep_image]}


def gens_from_doc(G: VAGroupData, doc: Any) -> list[GroupElement]:
    if isinstance(doc, dict) and "generators" in doc:
        doc = doc["generators"]
    if not isinstance(doc, list) or not doc:
        raise InputError("$", "expected a nonempty list of elements")
    return [element_from_dict(G, d, f"[{i}]") for i, d in enumerate(doc)]


def parse_element(G: VAGroupData, text: str) -> GroupElement:
    """Element literal ``"x1,x2,...;label"``; the label defaults to the identity coset."""
    vec, _, label = text.partition(";")
    try:
        parts = [p.strip() for p in vec.split(",")] if vec.strip() else []
        vector = tuple(int(p) for p in parts)
    except ValueError:
        raise InputError("element", f"bad integer in {text!r}") from None
    if len(vector) != G.n:
        raise InputError("element", f"expected {G.n} coordinates in {text!r}")
    label = label.strip()
    if not label:
        return GroupElement(vector, 0)
    if label in G.cosets:
        return GroupElement(vector, G.cosets.index(label))
    if label.isdigit():
        return GroupElement(vector, _coset(G, int(label), "element"))
    raise InputError("element", f"unknown coset label {label!r}")


def format_element(G: VAGroupData, g: GroupElement) -> str:
    return ",".join(map(str, g.vector)) + ";" + G.cosets[g.coset]


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise InputError(str(path), f"invalid JSON ({exc})") from None


def load_group(path: str | Path) -> VAGroupData:
    return group_from_dict(load_json(path))


def load_endo(G: VAGroupData, path: str | Path) -> Endomorphism:
    return endo_from_dict(G, load_json(path))


def load_gens(G: VAGroupData, path: str | Path) -> list[GroupElement]:
    return gens_from_doc(G, load_json(path))


def data_path(name: str) -> Path:
    """Path of a bundled example file."""
    return Path(str(resources.files("twistgrowth") / "data" / name))
