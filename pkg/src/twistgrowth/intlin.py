"""Exact integer linear algebra.

Smith and Hermite normal forms over Python integers, lattices in Z^n with a
canonical (column HNF) basis, coset representatives, indices of
``H + (kZ)^n`` and isolators.  Nothing here touches floating point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionError("column length mismatch")
        return cls(rows, len(columns), tuple(
            int(columns[j][i]) for i in range(rows) for j in range(len(columns))
        ))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, tuple(int(diag[i]) if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), self.rows) if self.cols else IntMatrix(0, self.rows, ())

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = other.columns()
            return IntMatrix(self.rows, other.cols, tuple(
                sum(a * b for a, b in zip(self.row(i), ocols[j]))
                for i in range(self.rows) for j in range(other.cols)
            ))
        return self.apply(other)

    def apply(self, x: Sequence[int]) -> Vector:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * x[j] for j in range(c)) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("row count mismatch in hstack")
        return IntMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)],
                                   self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def max_abs(self) -> int:
        return max((abs(a) for a in self.entries), default=0)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")


def det(M: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = M.rows
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SNFDecomposition:
    """``P^-1 @ B @ Q = diag(d_1, ..., d_l, 0, ...)`` with unimodular P, Q.

    ``P_inv`` is carried along exactly so that coordinates in the basis given
    by the columns of ``P`` never need rational arithmetic.
    """

    P: IntMatrix
    P_inv: IntMatrix
    Q: IntMatrix
    diag: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def n(self) -> int:
        return self.P.rows

    def invariants(self) -> tuple[int, ...]:
        """``d_i`` padded with zeros to the row dimension."""
        return self.diag + (0,) * (self.n - len(self.diag))


def snf(M: IntMatrix) -> SNFDecomposition:
    """Smith normal form with a fixed pivot rule.

    The pivot is the nonzero entry of least absolute value in the trailing
    submatrix, ties broken by (row, col).  Works for rectangular input.
    """
    nr, nc = M.rows, M.cols
    A = M.tolist()
    # U tracks P^-1 (row ops applied to the identity); P is maintained by the
    # inverse column ops so it never has to be inverted afterwards.
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    P = [[int(i == j) for j in range(nr)] for i in range(nr)]
    Q = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in P:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]
        for r in P:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        if c == 0:
            return
        for r in A:
            r[dst] += c * r[src]
        for r in Q:
            r[dst] += c * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in P:
            r[i] = -r[i]

    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a remainder survived: re-pivot on the smallest entry of row/col t
                best = (abs(p), t, t)
                for i in range(t + 1, nr):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, nc):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, pi, pj = best
                if pi != t:
                    swap_rows(t, pi)
                if pj != t:
                    swap_cols(t, pj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)
        diag.append(A[t][t])
        t += 1

    return SNFDecomposition(
        P=IntMatrix.from_rows(P, nr),
        P_inv=IntMatrix.from_rows(U, nr),
        Q=IntMatrix.from_rows(Q, nc),
        diag=tuple(diag),
    )


def rank(M: IntMatrix) -> int:
    return snf(M).rank


def solve(D: SNFDecomposition, v: Sequence[int]) -> Vector | None:
    """An integer z with ``B z = v`` for the matrix B behind ``D``, or None."""
    if len(v) != D.n:
        raise DimensionError("vector length does not match matrix rows")
    y = D.P_inv.apply(v)
    l = D.rank
    if any(y[i] for i in range(l, len(y))):
        return None
    w = []
    for i in range(D.Q.rows):
        if i < l:
            q, r = divmod(y[i], D.diag[i])
            if r:
                return None
            w.append(q)
        else:
            w.append(0)
    return D.Q.apply(w)


# -- residue windows --------------------------------------------------------

def window_reduce(y: int, d: int) -> int:
    """The unique residue of y mod d in ``floor(-d/2)+1 .. floor(d/2)``."""
    r = y % d
    return r - d if r > d // 2 else r


def window_range(d: int) -> range:
    return range(-d // 2 + 1, d // 2 + 1)


def minimal_rep(D: SNFDecomposition, x: Sequence[int]) -> Vector:
    """Minimal representative of ``x + Image(B)``.

    Coordinates in the basis of P's columns are pulled into the symmetric
    window for each invariant factor; coordinates past the rank are free and
    left alone.
    """
    if len(x) != D.n:
        raise DimensionError(f"vector of length {len(x)} for rank-{D.n} lattice")
    y = list(D.P_inv.apply(x))
    for i, d in enumerate(D.diag):
        y[i] = window_reduce(y[i], d)
    return D.P.apply(y)


def coset_representatives(D: SNFDecomposition) -> Iterator[Vector]:
    """All minimal representatives of Z^n / Image(B); B must have full rank."""
    if D.rank < D.n:
        raise ValueError("infinitely many cosets: matrix is rank deficient")
    for ys in itertools.product(*(window_range(d) for d in D.diag)):
        yield D.P.apply(ys)


# -- lattices ---------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^n stored by its column Hermite normal form."""

    ambient_rank: int
    basis: IntMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.basis.cols

    def columns(self) -> list[Vector]:
        return self.basis.columns()

    def index(self) -> int | None:
        """``[Z^n : L]``, or None when the lattice is not of full rank."""
        if self.rank < self.ambient_rank:
            return None
        return math.prod(self.basis[p, j] for j, p in enumerate(self.pivots))


def _hnf_columns(gens: list[list[int]], n: int) -> tuple[list[list[int]], list[int]]:
    cols = [list(g) for g in gens if any(g)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in range(n):
        active = [c for c in cols if c[row] != 0]
        rest = [c for c in cols if c[row] == 0]
        # Euclid on the row entries across the active columns
        while len(active) > 1:
            active.sort(key=lambda c: (abs(c[row]), c))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[row] // piv[row]
                c = [a - q * b for a, b in zip(c, piv)]
                if c[row] != 0:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            active = nxt
        if active:
            piv = active[0]
            if piv[row] < 0:
                piv = [-a for a in piv]
            h = piv[row]
            for b in basis:
                q = b[row] // h
                if q:
                    b[:] = [a - q * p for a, p in zip(b, piv)]
            basis.append(piv)
            pivots.append(row)
        cols = rest
    return basis, pivots


def lattice_from_generators(gens: Iterable[Sequence[int]], n: int) -> Lattice:
    gens = [list(g) for g in gens]
    for g in gens:
        if len(g) != n:
            raise DimensionError("generator length mismatch")
    basis, pivots = _hnf_columns(gens, n)
    return Lattice(n, IntMatrix.from_columns(basis, n), tuple(pivots))


def image_lattice(M: IntMatrix) -> Lattice:
    return lattice_from_generators(M.columns(), M.rows)


def full_lattice(n: int) -> Lattice:
    return image_lattice(IntMatrix.identity(n))


def reduce_mod(L: Lattice, x: Sequence[int]) -> Vector:
    """Canonical representative of ``x + L`` by HNF reduction.

    Pivot coordinates end up in ``[0, pivot)``; independent of any SNF.
    """
    if len(x) != L.ambient_rank:
        raise DimensionError("vector length does not match lattice")
    x = list(x)
    for j, p in enumerate(L.pivots):
        col = L.basis.column(j)
        q = x[p] // col[p]
        if q:
            x = [a - q * b for a, b in zip(x, col)]
    return tuple(x)


def member(L: Lattice, x: Sequence[int]) -> bool:
    if len(x) != L.ambient_rank:
        raise DimensionError(f"vector of length {len(x)} for lattice in Z^{L.ambient_rank}")
    x = list(x)
    for j, p in enumerate(L.pivots):
        if any(x[:p]):
            return False
        col = L.basis.column(j)
        q, r = divmod(x[p], col[p])
        if r:
            return False
        x = [a - q * b for a, b in zip(x, col)]
    return not any(x)


def lattice_sum(L: Lattice, k: int) -> Lattice:
    """``L + (kZ)^n``."""
    if k <= 0:
        raise ValueError("k must be a positive integer")
    n = L.ambient_rank
    return image_lattice(L.basis.hstack(IntMatrix.identity(n).scale(k)))


def augmented_snf(B: IntMatrix, k: int) -> SNFDecomposition:
    """SNF of ``[B | k*I]``; its P, P_inv and diag describe ``Image(B) + (kZ)^n``."""
    if k <= 0:
        raise ValueError("k must be a positive integer")
    return snf(B.hstack(IntMatrix.identity(B.rows).scale(k)))


def index_mod_k(H: Lattice, k: int) -> int:
    """``[Z^n : H + (kZ)^n]`` from the augmented Smith form."""
    if k <= 0:
        raise ValueError("k must be a positive integer")
    D = augmented_snf(H.basis, k)
    return math.prod(D.diag)


def index_mod_k_closed_form(H: Lattice, k: int) -> int:
    if k <= 0:
        raise ValueError("k must be a positive integer")
    d = snf(H.basis).diag if H.rank else ()
    return math.prod(math.gcd(di, k) for di in d) * k ** (H.ambient_rank - len(d))


def isolator(H: Lattice) -> tuple[Lattice, int]:
    """The saturation of H and the order of the finite quotient."""
    n = H.ambient_rank
    if H.rank == 0:
        return H, 1
    D = snf(H.basis)
    sat = lattice_from_generators([D.P.column(i) for i in range(D.rank)], n)
    return sat, math.prod(D.diag)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
