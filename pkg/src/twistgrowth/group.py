"""Virtually abelian groups presented as extensions of Z^n by a finite group.

An element is a pair ``(x, a)`` standing for the product ``x * a`` of a
lattice vector and a fixed coset representative.  With ``M_a`` the action of
``a`` on the lattice by conjugation and ``t(a, b)`` the cocycle defined by
``a * b = t(a, b) * m(a, b)``, the group law reads::

    (x, a) (y, b) = (x + M_a y + t(a, b), m(a, b))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .intlin import IntMatrix, Vector, det


class GroupDataError(ValueError):
    """Raised when extension data or an endomorphism fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.failures[0] if report.failures else "invalid data")


class GroupElement(NamedTuple):
    vector: Vector
    coset: int


@dataclass
class ValidationReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class VAGroupData:
    n: int
    cosets: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    cocycle: tuple[tuple[Vector, ...], ...]
    action: tuple[IntMatrix, ...]

    @classmethod
    def build(cls, n, cosets, mult, cocycle, action) -> "VAGroupData":
        return cls(
            n=int(n),
            cosets=tuple(str(c) for c in cosets),
            mult=tuple(tuple(int(b) for b in row) for row in mult),
            cocycle=tuple(tuple(tuple(int(v) for v in vec) for vec in row) for row in cocycle),
            action=tuple(m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m, int(n))
                         for m in action),
        )

    @property
    def m(self) -> int:
        return len(self.cosets)

    def coset_index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.m:
                raise IndexError(f"coset index {label} out of range")
            return label
        try:
            return self.cosets.index(label)
        except ValueError:
            raise KeyError(f"unknown coset label {label!r}") from None

    @property
    def coset_inverse(self) -> tuple[int, ...]:
        inv = self.__dict__.get("_coset_inverse")
        if inv is None:
            inv = tuple(next(b for b in range(self.m) if self.mult[a][b] == 0)
                        for a in range(self.m))
            object.__setattr__(self, "_coset_inverse", inv)
        return inv

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, 0)

    def element(self, vector: Sequence[int], coset: str | int = 0) -> GroupElement:
        if len(vector) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        return GroupElement(tuple(int(v) for v in vector), self.coset_index(coset))

    def coset_element(self, a: int) -> GroupElement:
        return GroupElement((0,) * self.n, a)

    def lattice_element(self, x: Sequence[int]) -> GroupElement:
        return GroupElement(tuple(x), 0)


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """phi restricted to the lattice plus the images ``phi(a) = (u_a, abar)``."""

    matrix: IntMatrix
    rep_image: tuple[GroupElement, ...]

    @classmethod
    def build(cls, matrix, rep_image) -> "Endomorphism":
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix)
        imgs = tuple(GroupElement(tuple(int(v) for v in g[0]), int(g[1])) for g in rep_image)
        return cls(matrix, imgs)

    @property
    def coset_map(self) -> tuple[int, ...]:
        return tuple(g.coset for g in self.rep_image)


def _check(G: VAGroupData, g: GroupElement) -> None:
    if len(g.vector) != G.n:
        raise ValueError(f"element vector has length {len(g.vector)}, expected {G.n}")
    if not 0 <= g.coset < G.m:
        raise ValueError(f"coset index {g.coset} out of range")


def multiply(G: VAGroupData, g: GroupElement, h: GroupElement) -> GroupElement:
    _check(G, g)
    _check(G, h)
    a, b = g.coset, h.coset
    My = G.action[a].apply(h.vector)
    t = G.cocycle[a][b]
    return GroupElement(tuple(x + y + s for x, y, s in zip(g.vector, My, t)), G.mult[a][b])


def inverse(G: VAGroupData, g: GroupElement) -> GroupElement:
    _check(G, g)
    a = g.coset
    b = G.coset_inverse[a]
    t = G.cocycle[a][b]
    # M_a^-1 = M_b since M_a M_b = M_e = I
    y = G.action[b].apply([x + s for x, s in zip(g.vector, t)])
    return GroupElement(tuple(-v for v in y), b)


def product(G: VAGroupData, *elems: GroupElement) -> GroupElement:
    out = G.identity()
    for e in elems:
        out = multiply(G, out, e)
    return out


def validate_group(G: VAGroupData) -> ValidationReport:
    """Exhaustive check of every table identity; failures name the indices."""
    rep = ValidationReport()
    n, m = G.n, G.m
    if m == 0:
        rep.fail("cosets: at least the identity coset is required")
        return rep
    if len(G.mult) != m or any(len(r) != m for r in G.mult):
        rep.fail(f"mult: expected a {m}x{m} table")
        return rep
    if len(G.cocycle) != m or any(len(r) != m for r in G.cocycle):
        rep.fail(f"cocycle: expected a {m}x{m} table")
        return rep
    if len(G.action) != m:
        rep.fail(f"action: expected {m} matrices")
        return rep
    for a in range(m):
        for b in range(m):
            if not 0 <= G.mult[a][b] < m:
                rep.fail(f"mult[{a}][{b}] = {G.mult[a][b]} is not a coset index")
            if len(G.cocycle[a][b]) != n:
                rep.fail(f"cocycle[{a}][{b}] must have length {n}")
    for a, M in enumerate(G.action):
        if (M.rows, M.cols) != (n, n):
            rep.fail(f"action[{a}] must be {n}x{n}")
    if not rep.ok:
        return rep

    for a in range(m):
        if G.mult[0][a] != a or G.mult[a][0] != a:
            rep.fail(f"mult: coset 0 is not an identity (a={a})")
        if any(G.cocycle[0][a]) or any(G.cocycle[a][0]):
            rep.fail(f"cocycle: t(0,{a}) and t({a},0) must vanish")
    if G.action[0] != IntMatrix.identity(n):
        rep.fail("action[0] must be the identity matrix")
    for a in range(m):
        if sorted(G.mult[a]) != list(range(m)):
            rep.fail(f"mult: row {a} is not a permutation")
        if sorted(G.mult[b][a] for b in range(m)) != list(range(m)):
            rep.fail(f"mult: column {a} is not a permutation")
    if not rep.ok:
        return rep
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if G.mult[G.mult[a][b]][c] != G.mult[a][G.mult[b][c]]:
                    rep.fail(f"mult: associativity fails at (a,b,c)=({a},{b},{c})")
                    return rep
    for a, M in enumerate(G.action):
        if abs(det(M)) != 1:
            rep.fail(f"action[{a}] is not unimodular")
    for a in range(m):
        for b in range(m):
            if G.action[a] @ G.action[b] != G.action[G.mult[a][b]]:
                rep.fail(f"action: M_{a} M_{b} != M_{G.mult[a][b]} at (a,b)=({a},{b})")
    if not rep.ok:
        return rep
    for a in range(m):
        Ma = G.action[a]
        for b in range(m):
            ab = G.mult[a][b]
            for c in range(m):
                lhs = tuple(x + y for x, y in zip(G.cocycle[a][b], G.cocycle[ab][c]))
                rhs = tuple(x + y for x, y in zip(Ma.apply(G.cocycle[b][c]),
                                                  G.cocycle[a][G.mult[b][c]]))
                if lhs != rhs:
                    rep.fail(f"cocycle condition fails at (a,b,c)=({a},{b},{c})")
                    return rep
    return rep


def apply_endo(G: VAGroupData, phi: Endomorphism, g: GroupElement) -> GroupElement:
    _check(G, g)
    u, abar = phi.rep_image[g.coset]
    Px = phi.matrix.apply(g.vector)
    return GroupElement(tuple(p + v for p, v in zip(Px, u)), abar)


def validate_endo(G: VAGroupData, phi: Endomorphism) -> ValidationReport:
    rep = ValidationReport()
    n, m = G.n, G.m
    if (phi.matrix.rows, phi.matrix.cols) != (n, n):
        rep.fail(f"matrix must be {n}x{n}")
        return rep
    if len(phi.rep_image) != m:
        rep.fail(f"rep_image: expected {m} entries")
        return rep
    for a, (u, abar) in enumerate(phi.rep_image):
        if len(u) != n:
            rep.fail(f"rep_image[{a}].vector must have length {n}")
        if not 0 <= abar < m:
            rep.fail(f"rep_image[{a}].coset = {abar} out of range")
    if not rep.ok:
        return rep
    if phi.rep_image[0] != G.identity():
        rep.fail("rep_image[0] must be the identity element")
    Phi = phi.matrix
    for a in range(m):
        abar = phi.rep_image[a].coset
        if Phi @ G.action[a] != G.action[abar] @ Phi:
            rep.fail(f"intertwining fails: Phi M_{a} != M_{abar} Phi")
    if not rep.ok:
        return rep
    for a in range(m):
        for b in range(m):
            lhs = multiply(G, phi.rep_image[a], phi.rep_image[b])
            rhs = apply_endo(G, phi, GroupElement(G.cocycle[a][b], G.mult[a][b]))
            if lhs != rhs:
                rep.fail(f"multiplicativity fails: phi({a}) phi({b}) != phi({a}*{b})")
                return rep
    return rep


def twisted_conjugate(G: VAGroupData, phi: Endomorphism,
                      z: GroupElement, g: GroupElement) -> GroupElement:
    """``z g phi(z)^-1``."""
    return multiply(G, multiply(G, z, g), inverse(G, apply_endo(G, phi, z)))


@dataclass(frozen=True)
class TwistData:
    coset: int
    stabiliser: tuple[int, ...]
    shifts: dict[int, Vector]
    twisted_matrix: IntMatrix


def twisted_commutator(G: VAGroupData, phi: Endomorphism, a: int, c: int) -> GroupElement:
    """``phi(c) a^-1 c^-1 a`` for coset representatives a and c."""
    ea, ec = G.coset_element(a), G.coset_element(c)
    return product(G, apply_endo(G, phi, ec), inverse(G, ea), inverse(G, ec), ea)


def twist_data(G: VAGroupData, phi: Endomorphism, a: int) -> TwistData:
    ea = G.coset_element(a)
    stab = []
    shifts = {}
    for b in range(G.m):
        eb = G.coset_element(b)
        conj = twisted_conjugate(G, phi, eb, ea)
        if conj.coset != a:
            continue
        stab.append(b)
        comm = twisted_commutator(G, phi, a, b)
        if comm.coset != 0:
            raise RuntimeError(f"twisted commutator for c={b} left the lattice")
        shifts[b] = G.action[a].apply(comm.vector)
    B = IntMatrix.identity(G.n) - G.action[a] @ phi.matrix
    return TwistData(a, tuple(stab), shifts, B)
