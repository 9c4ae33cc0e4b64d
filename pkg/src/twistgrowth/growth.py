"""Word-metric growth: Cayley balls and the series built on them."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .group import Endomorphism, GroupElement, VAGroupData, inverse
from .tc import (
    ResourceLimitError,
    canonical_form,
    canonical_forms,
    quotient_reidemeister,
    quotient_reidemeister_bruteforce,
)

DEFAULT_BUDGET = 20_000_000
DEFAULT_TOLERANCE = 0.2


@dataclass(frozen=True)
class GeneratingSet:
    elements: tuple[GroupElement, ...]
    symmetric: tuple[GroupElement, ...]

    @classmethod
    def from_elements(cls, G: VAGroupData, elems: Sequence[GroupElement]) -> "GeneratingSet":
        elems = tuple(elems)
        if not elems:
            raise ValueError("generating set must be nonempty")
        ident = G.identity()
        sym = set()
        for s in elems:
            for t in (s, inverse(G, s)):
                if t != ident:
                    sym.add(t)
        if not sym:
            raise ValueError("generating set contains only the identity")
        return cls(elems, tuple(sorted(sym, key=lambda g: (g.coset, g.vector))))


@dataclass
class BallEnumeration:
    """Layers of the closed ball; row layout is ``[coset, x_1, ..., x_n]``."""

    radius: int
    layers: list[np.ndarray]

    @property
    def sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def beta(self, r: int) -> int:
        return sum(self.sizes[: r + 1])

    @property
    def total(self) -> int:
        return self.beta(self.radius)

    def elements(self) -> np.ndarray:
        return np.concatenate(self.layers)

    def layer_of(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.layers)), self.sizes)

    def group_elements(self, r: int | None = None):
        r = self.radius if r is None else r
        for layer in self.layers[: r + 1]:
            for row in layer.tolist():
                yield GroupElement(tuple(row[1:]), row[0])


class SeriesKind(str, enum.Enum):
    BALL = "ball"
    TWISTED_CLASSES = "twisted-classes"
    CLASS_SUBSET = "class-subset"
    QUOTIENT = "quotient"


@dataclass
class GrowthSeries:
    kind: SeriesKind
    points: list[tuple[int, int]]

    def counts(self) -> list[int]:
        return [c for _, c in self.points]

    def __getitem__(self, r: int) -> int:
        for x, c in self.points:
            if x == r:
                return c
        raise KeyError(r)


@dataclass(frozen=True)
class SlopeReport:
    fitted_slope: float
    predicted_degree: int
    window: tuple[int, int]
    residual: float
    tolerance: float
    passed: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class Generation(str, enum.Enum):
    VERIFIED = "verified"
    UNKNOWN = "unknown"


def _step_tables(G: VAGroupData, S: GeneratingSet):
    offset = [[[u + v for u, v in zip(G.action[a].apply(s.vector), G.cocycle[a][s.coset])]
               for s in S.symmetric] for a in range(G.m)]
    mult = [[G.mult[a][s.coset] for s in S.symmetric] for a in range(G.m)]
    return offset, mult


def bfs_ball(G: VAGroupData, S: GeneratingSet, r_max: int,
             budget: int = DEFAULT_BUDGET, backend: str | None = None) -> BallEnumeration:
    if r_max < 0:
        raise ValueError("radius must be nonnegative")
    offset, mult = _step_tables(G, S)
    layers = kernels.bfs_layers(offset, mult, r_max, budget, backend=backend)
    if layers is None:
        raise ResourceLimitError(f"ball of radius {r_max} exceeds {budget} elements")
    return BallEnumeration(r_max, layers)


def _ball(G, S, r_max, ball):
    if ball is not None:
        if ball.radius < r_max:
            raise ValueError("supplied ball is smaller than the requested radius")
        return ball
    return bfs_ball(G, S, r_max)


def _row_ids(rows: np.ndarray) -> np.ndarray:
    if rows.dtype != object:
        _, ids = np.unique(rows, axis=0, return_inverse=True)
        return ids.reshape(-1)
    table: dict[tuple, int] = {}
    return np.array([table.setdefault(tuple(r), len(table)) for r in rows.tolist()])


def beta_series(G: VAGroupData, S: GeneratingSet, r_max: int,
                ball: BallEnumeration | None = None) -> GrowthSeries:
    ball = _ball(G, S, r_max, ball)
    cum = np.cumsum(ball.sizes[: r_max + 1])
    return GrowthSeries(SeriesKind.BALL, [(r, int(c)) for r, c in enumerate(cum)])


def f_R_series(G: VAGroupData, S: GeneratingSet, phi: Endomorphism, r_max: int,
               ball: BallEnumeration | None = None) -> GrowthSeries:
    """Number of twisted classes meeting each ball."""
    ball = _ball(G, S, r_max, ball)
    forms = canonical_forms(G, phi, ball.elements())
    ids = _row_ids(forms)
    first = np.full(ids.max() + 1, ball.radius + 1)
    np.minimum.at(first, ids, ball.layer_of())
    cum = np.cumsum(np.bincount(first, minlength=ball.radius + 2))
    return GrowthSeries(SeriesKind.TWISTED_CLASSES,
                        [(r, int(cum[r])) for r in range(r_max + 1)])


def class_series(G: VAGroupData, S: GeneratingSet, phi: Endomorphism, g0: GroupElement,
                 r_max: int, ball: BallEnumeration | None = None) -> GrowthSeries:
    """Number of elements of the twisted class of ``g0`` in each ball."""
    ball = _ball(G, S, r_max, ball)
    target = canonical_form(G, phi, g0)
    want = (target.coset,) + target.residue
    points = []
    total = 0
    for r in range(r_max + 1):
        forms = canonical_forms(G, phi, ball.layers[r])
        if len(forms):
            total += int(np.all(forms == np.array(want, dtype=forms.dtype), axis=1).sum())
        points.append((r, total))
    return GrowthSeries(SeriesKind.CLASS_SUBSET, points)


def quotient_series(G: VAGroupData, phi: Endomorphism, k_max: int,
                    brute: bool = False) -> GrowthSeries:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    f = quotient_reidemeister_bruteforce if brute else quotient_reidemeister
    return GrowthSeries(SeriesKind.QUOTIENT, [(k, f(G, phi, k)) for k in range(1, k_max + 1)])


def default_window(series: GrowthSeries) -> tuple[int, int]:
    hi = series.points[-1][0]
    return max(1, math.ceil(hi / 3)), hi


def slope_fit(series: GrowthSeries, window: tuple[int, int] | None, predicted: int,
              tolerance: float = DEFAULT_TOLERANCE) -> SlopeReport:
    """Least-squares slope of log(count) against log(r) over ``window``.

    A predicted degree of 0 is judged by eventual constancy: the last three
    values in the window must agree.
    """
    window = window or default_window(series)
    lo, hi = window
    pts = [(x, c) for x, c in series.points if lo <= x <= hi]
    if len(pts) < 3 or pts[0][0] <= 0:
        raise ValueError(f"window {window} needs at least three positive arguments")
    if any(c <= 0 for _, c in pts):
        raise ValueError("counts must be positive on the window")
    lx = np.log([x for x, _ in pts])
    ly = np.log([c for _, c in pts])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    slope = float(slope)
    if predicted == 0:
        tail = [c for _, c in pts[-3:]]
        passed = tail[0] == tail[1] == tail[2]
    else:
        passed = abs(slope - predicted) <= tolerance
    return SlopeReport(slope, predicted, (lo, hi), resid, tolerance, passed)


def check_generates(G: VAGroupData, S: GeneratingSet, budget: int = 100_000) -> Generation:
    """Semi-decision: VERIFIED if a BFS within budget reaches every standard generator."""
    n = G.n
    targets = {(a,) + (0,) * n for a in range(1, G.m)}
    for i in range(n):
        for sign in (1, -1):
            targets.add((0,) + tuple(sign * int(i == j) for j in range(n)))
    offset, mult = _step_tables(G, S)
    start = (0,) + (0,) * n
    seen = {start}
    frontier = [start]
    while frontier and len(seen) <= budget:
        targets -= seen
        if not targets:
            return Generation.VERIFIED
        nxt = []
        for key in frontier:
            a = key[0]
            for o, b in zip(offset[a], mult[a]):
                new = (b,) + tuple(u + v for u, v in zip(key[1:], o))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    targets -= seen
    return Generation.VERIFIED if not targets else Generation.UNKNOWN
