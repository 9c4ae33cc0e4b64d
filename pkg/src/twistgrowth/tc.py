"""Twisted conjugacy in virtually abelian groups.

Every twisted conjugator factors as ``(w, 1) * (0, c)``.  Conjugating by the
coset representative ``(0, c)`` moves ``g`` to some ``(x_c, a_c)``, and the
lattice part ``(w, 1)`` then translates ``x_c`` by ``Image(I - M_{a_c} Phi)``.
So the smallest pair ``(a_c, minimal_rep(x_c))`` over all c labels the class.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from . import kernels
from .group import (
    Endomorphism,
    GroupElement,
    VAGroupData,
    apply_endo,
    inverse,
    product,
    twisted_conjugate,
)
from .intlin import (
    IntMatrix,
    Lattice,
    SNFDecomposition,
    Vector,
    augmented_snf,
    coset_representatives,
    image_lattice,
    minimal_rep,
    snf,
    solve,
)


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured size budget."""


class ClassCanonicalForm(NamedTuple):
    coset: int
    residue: Vector


@dataclass(frozen=True)
class CosetLattice:
    coset: int
    matrix: IntMatrix
    snf: SNFDecomposition
    image: Lattice

    @property
    def rank(self) -> int:
        return self.snf.rank


@dataclass(frozen=True)
class ReidemeisterCount:
    value: int | None

    @property
    def infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "infinite" if self.value is None else str(self.value)


@dataclass(frozen=True)
class Predictions:
    fR_degree: int
    ranks: tuple[int, ...]
    fQ_degree: int
    ball_degree: int


class TwistEngine:
    """Cached per-(group, endomorphism) data for canonicalization."""

    def __init__(self, G: VAGroupData, phi: Endomorphism):
        self.G = G
        self.phi = phi
        n = G.n
        self.lattices = []
        for a in range(G.m):
            B = IntMatrix.identity(n) - G.action[a] @ phi.matrix
            self.lattices.append(CosetLattice(a, B, snf(B), image_lattice(B)))
        # (0,c) * (x,a) * phi((0,c))^-1 == (M_c x + offset[c][a], target[c][a])
        self.offset = []
        self.target = []
        for c in range(G.m):
            ec = G.coset_element(c)
            tail = inverse(G, apply_endo(G, phi, ec))
            offs, targs = [], []
            for a in range(G.m):
                g = product(G, ec, G.coset_element(a), tail)
                offs.append(g.vector)
                targs.append(g.coset)
            self.offset.append(tuple(offs))
            self.target.append(tuple(targs))
        self._quotient_snfs: dict[int, tuple[SNFDecomposition, ...]] = {}

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(L.rank for L in self.lattices)

    def snfs(self, k: int | None = None) -> tuple[SNFDecomposition, ...]:
        if k is None:
            return tuple(L.snf for L in self.lattices)
        if k <= 0:
            raise ValueError("k must be a positive integer")
        if k not in self._quotient_snfs:
            self._quotient_snfs[k] = tuple(augmented_snf(L.matrix, k) for L in self.lattices)
        return self._quotient_snfs[k]

    def moved(self, g: GroupElement, c: int) -> GroupElement:
        """``(0,c) g phi((0,c))^-1`` via the precomputed affine tables."""
        Mx = self.G.action[c].apply(g.vector)
        off = self.offset[c][g.coset]
        return GroupElement(tuple(u + v for u, v in zip(Mx, off)), self.target[c][g.coset])

    def canonical(self, g: GroupElement, k: int | None = None) -> ClassCanonicalForm:
        snfs = self.snfs(k)
        best = None
        for c in range(self.G.m):
            gc = self.moved(g, c)
            if best is not None and gc.coset > best.coset:
                continue
            cand = ClassCanonicalForm(gc.coset, minimal_rep(snfs[gc.coset], gc.vector))
            if best is None or cand < best:
                best = cand
        return best

    def tables(self, k: int | None = None) -> kernels.CanonTables:
        G = self.G
        snfs = self.snfs(k)
        return kernels.CanonTables(
            lin=[M.tolist() for M in G.action],
            offset=[[list(v) for v in row] for row in self.offset],
            target=[list(row) for row in self.target],
            P=[D.P.tolist() for D in snfs],
            P_inv=[D.P_inv.tolist() for D in snfs],
            diag=[list(D.invariants()) for D in snfs],
        )


@lru_cache(maxsize=64)
def engine(G: VAGroupData, phi: Endomorphism) -> TwistEngine:
    return TwistEngine(G, phi)


def coset_lattices(G: VAGroupData, phi: Endomorphism) -> list[CosetLattice]:
    return list(engine(G, phi).lattices)


def canonical_form(G: VAGroupData, phi: Endomorphism, g: GroupElement) -> ClassCanonicalForm:
    return engine(G, phi).canonical(g)


def canonical_forms(G: VAGroupData, phi: Endomorphism, elems, k: int | None = None):
    """Batch canonicalization; ``elems`` is an (N, n+1) array of ``[coset, x...]`` rows."""
    return kernels.canonicalize(elems, engine(G, phi).tables(k))


def are_twisted_conjugate(G: VAGroupData, phi: Endomorphism,
                          g: GroupElement, h: GroupElement) -> bool:
    return canonical_form(G, phi, g) == canonical_form(G, phi, h)


def find_conjugator(G: VAGroupData, phi: Endomorphism,
                    g: GroupElement, h: GroupElement) -> GroupElement | None:
    """Some z with ``g = z h phi(z)^-1``, or None when the classes differ."""
    eng = engine(G, phi)
    moved_h = {}
    for c in range(G.m):
        hc = eng.moved(h, c)
        moved_h.setdefault(hc.coset, []).append((c, hc))
    for c in range(G.m):
        gc = eng.moved(g, c)
        D = eng.lattices[gc.coset].snf
        for c2, hc in moved_h.get(gc.coset, ()):
            w = solve(D, [x - y for x, y in zip(gc.vector, hc.vector)])
            if w is None:
                continue
            # gc = (w,1) hc phi((w,1))^-1, then undo the two coset moves
            z = product(G, inverse(G, G.coset_element(c)), GroupElement(w, 0),
                        G.coset_element(c2))
            assert twisted_conjugate(G, phi, z, h) == g
            return z
    return None


def class_support_and_degree(G: VAGroupData, phi: Endomorphism,
                             g: GroupElement) -> tuple[frozenset[int], int]:
    eng = engine(G, phi)
    support = frozenset(eng.moved(g, c).coset for c in range(G.m))
    return support, max(eng.lattices[a].rank for a in support)


def predicted_degrees(G: VAGroupData, phi: Endomorphism) -> Predictions:
    ranks = engine(G, phi).ranks
    d = G.n - min(ranks)
    return Predictions(fR_degree=d, ranks=ranks, fQ_degree=d, ball_degree=G.n)


def reidemeister_number(G: VAGroupData, phi: Endomorphism) -> ReidemeisterCount:
    eng = engine(G, phi)
    if min(eng.ranks) < G.n:
        return ReidemeisterCount(None)
    forms = set()
    for L in eng.lattices:
        for x in coset_representatives(L.snf):
            forms.add(eng.canonical(GroupElement(x, L.coset)))
    return ReidemeisterCount(len(forms))


def quotient_canonical_form(G: VAGroupData, phi: Endomorphism, k: int,
                            g: GroupElement) -> ClassCanonicalForm:
    if k <= 0:
        raise ValueError("k must be a positive integer")
    return engine(G, phi).canonical(g, k)


def quotient_reidemeister(G: VAGroupData, phi: Endomorphism, k: int) -> int:
    """Number of twisted classes of the induced map on ``G / (kZ)^n``."""
    if k <= 0:
        raise ValueError("k must be a positive integer")
    eng = engine(G, phi)
    snfs = eng.snfs(k)
    forms = set()
    for a, D in enumerate(snfs):
        for x in coset_representatives(D):
            forms.add(eng.canonical(GroupElement(x, a), k))
    return len(forms)


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)
            self.count -= 1


BRUTE_LIMIT = 10**7


def quotient_reidemeister_bruteforce(G: VAGroupData, phi: Endomorphism, k: int,
                                     limit: int = BRUTE_LIMIT) -> int:
    """Orbit count on all of ``G / (kZ)^n`` by union-find.

    Closing under twisted conjugation by the lattice basis vectors and the
    coset representatives suffices, since these generate the quotient.
    """
    if k <= 0:
        raise ValueError("k must be a positive integer")
    n, m = G.n, G.m
    size = k**n * m
    if size > limit:
        raise ResourceLimitError(f"quotient has {size} elements (limit {limit})")

    def encode(g: GroupElement) -> int:
        idx = 0
        for v in g.vector:
            idx = idx * k + v % k
        return idx * m + g.coset

    def decode(idx: int) -> GroupElement:
        idx, a = divmod(idx, m)
        vec = []
        for _ in range(n):
            idx, r = divmod(idx, k)
            vec.append(r)
        return GroupElement(tuple(reversed(vec)), a)

    gens = [G.lattice_element(tuple(int(i == j) for j in range(n))) for i in range(n)]
    gens += [G.coset_element(c) for c in range(1, m)]
    uf = UnionFind(size)
    for idx in range(size):
        g = decode(idx)
        for z in gens:
            uf.union(idx, encode(twisted_conjugate(G, phi, z, g)))
    return uf.count

