"""Backend selection for the hot loops.

The Cython extension ``_ckernels`` is used when it was built and the inputs
fit comfortably in int64; otherwise the pure-Python kernels run on exact
Python ints.  Set ``TWISTGROWTH_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

INT64_SAFE = 2**62

if _ckernels is not None and not os.environ.get("TWISTGROWTH_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _ckernels is not None else ["python"]


@dataclass(frozen=True)
class CanonTables:
    """Nested-list tables driving batch canonicalization.

    For candidate c and element coset a, the moved element is
    ``(lin[c] x + offset[c][a], target[c][a])``; the residue is reduced with
    the Smith data ``P``, ``P_inv``, ``diag`` of the target coset.
    """

    lin: list
    offset: list
    target: list
    P: list
    P_inv: list
    diag: list


def _max_abs(nested) -> int:
    if isinstance(nested, (list, tuple)):
        return max((_max_abs(x) for x in nested), default=0)
    return abs(int(nested))


def sort_rows(arr: np.ndarray) -> np.ndarray:
    """Rows sorted lexicographically, first column most significant."""
    if len(arr) == 0:
        return arr
    if arr.dtype == object:
        return np.array(sorted(arr.tolist()), dtype=object).reshape(arr.shape)
    return arr[np.lexsort(arr.T[::-1])]


def bfs_layers(offset: list, mult: list, r_max: int, budget: int,
               backend: str | None = None) -> list[np.ndarray] | None:
    """Sorted Cayley-ball layers as ``(N, n+1)`` int64 arrays, None past budget."""
    backend = backend or BACKEND
    n = len(offset[0][0])
    step = _max_abs(offset)
    bound = max(1, r_max * step)
    m = len(mult)
    fits = (2 * bound + 1) ** n * m < INT64_SAFE
    if not fits:
        raise OverflowError("ball coordinates exceed the int64 range")
    if backend == "cython" and _ckernels is not None:
        layers = _ckernels.bfs_layers(
            np.ascontiguousarray(offset, dtype=np.int64),
            np.ascontiguousarray(mult, dtype=np.int64),
            r_max, bound, budget,
        )
    else:
        raw = _pykernels.bfs_layers(offset, mult, r_max, budget)
        layers = None if raw is None else [
            np.array(layer, dtype=np.int64).reshape(len(layer), n + 1) for layer in raw
        ]
    if layers is None:
        return None
    return [sort_rows(layer) for layer in layers]


def canonicalize(elems, tables: CanonTables, backend: str | None = None) -> np.ndarray:
    """Canonical ``[coset, residue...]`` rows for ``[coset, x...]`` rows."""
    backend = backend or BACKEND
    elems = np.asarray(elems)
    if elems.ndim != 2:
        raise ValueError("expected a 2-d array of [coset, x...] rows")
    n = elems.shape[1] - 1
    if len(elems) == 0:
        return np.zeros((0, n + 1), dtype=np.int64)
    if backend == "cython" and _ckernels is not None and _fits_int64(elems, tables, n):
        return _ckernels.canonicalize(
            np.ascontiguousarray(elems, dtype=np.int64),
            np.ascontiguousarray(tables.lin, dtype=np.int64).reshape(-1, n, n),
            np.ascontiguousarray(tables.offset, dtype=np.int64).reshape(len(tables.lin), -1, n),
            np.ascontiguousarray(tables.target, dtype=np.int64),
            np.ascontiguousarray(tables.P, dtype=np.int64).reshape(-1, n, n),
            np.ascontiguousarray(tables.P_inv, dtype=np.int64).reshape(-1, n, n),
            np.ascontiguousarray(tables.diag, dtype=np.int64).reshape(-1, n),
        )
    rows = [[int(v) for v in r] for r in elems.tolist()]
    out = _pykernels.canonicalize(rows, tables.lin, tables.offset, tables.target,
                                  tables.P, tables.P_inv, tables.diag)
    if _max_abs(out) < INT64_SAFE:
        return np.array(out, dtype=np.int64).reshape(len(out), n + 1)
    return np.array(out, dtype=object).reshape(len(out), n + 1)


def _fits_int64(elems: np.ndarray, tables: CanonTables, n: int) -> bool:
    if elems.dtype == object:
        if _max_abs(elems.tolist()) >= INT64_SAFE:
            return False
    x = int(np.abs(elems[:, 1:]).max()) if n else 0
    v = n * _max_abs(tables.lin) * x + _max_abs(tables.offset)
    y = n * _max_abs(tables.P_inv) * v
    z = n * _max_abs(tables.P) * y
    return max(v, y, z) < INT64_SAFE
