"""Budgeted breadth-first flood fill of Z^10 inside the translated strip."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .cluster import Basis, Vec2, build_basis, cluster_points
from .errors import InfiniteStrip, StartOutsideStrip
from .strip import (Classification, StripTable, build_strip_table, classify, default_eps,
                    project_physical)

LatticePoint = tuple[int, ...]

DEFAULT_SEED1 = (1.0, 0.0)
DEFAULT_SEED2 = (0.9, 1.1)
DEFAULT_TRANSLATION = 3.7
DEFAULT_BUDGET = 10_000

DEDUP_REL_TOL = 1e-9


def _broadcast_translation(translation: float | Sequence[float]) -> tuple[float, ...]:
    if np.ndim(translation) == 0:
        return (float(translation),) * 10
    values = tuple(float(t) for t in translation)
    if len(values) != 10:
        raise ValueError(f"translation needs 1 or 10 components, got {len(values)}")
    return values


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one generation run; defaults reproduce the reference run.

    ``eps_boundary`` and ``dedup_tol`` default to ``1e-9 * norm_sq`` and
    ``1e-9 * (1 + norm_sq)`` of the basis when left as ``None``.

    When the budget runs out part way through a breadth-first layer, only the
    layers analysed completely are emitted, which keeps the output symmetric
    under the symmetries of the traversal. ``keep_partial_layer`` emits every
    accepted point instead.
    """

    seed1: tuple[float, float] = DEFAULT_SEED1
    seed2: tuple[float, float] = DEFAULT_SEED2
    translation: tuple[float, ...] = (DEFAULT_TRANSLATION,) * 10
    budget: int = DEFAULT_BUDGET
    eps_boundary: float | None = None
    dedup_tol: float | None = None
    start_override: LatticePoint | None = None
    debug_preimages: bool = False
    keep_partial_layer: bool = False

    def __post_init__(self):
        object.__setattr__(self, "seed1", tuple(float(c) for c in self.seed1))
        object.__setattr__(self, "seed2", tuple(float(c) for c in self.seed2))
        object.__setattr__(self, "translation", _broadcast_translation(self.translation))
        if len(self.seed1) != 2 or len(self.seed2) != 2:
            raise ValueError("seeds must be 2-vectors")
        if not all(math.isfinite(c) for c in (*self.seed1, *self.seed2, *self.translation)):
            raise ValueError("seeds and translation must be finite")
        if int(self.budget) != self.budget or self.budget < 1:
            raise ValueError(f"budget must be a positive integer, got {self.budget!r}")
        if self.eps_boundary is not None and self.eps_boundary < 0:
            raise ValueError("eps_boundary must be >= 0")
        if self.dedup_tol is not None and self.dedup_tol < 0:
            raise ValueError("dedup_tol must be >= 0")
        if self.start_override is not None:
            start = tuple(int(c) for c in self.start_override)
            if len(start) != 10:
                raise ValueError("start_override needs 10 integer components")
            object.__setattr__(self, "start_override", start)

    def basis(self) -> Basis:
        return build_basis(self.seed1, self.seed2)

    def resolved_eps(self, basis: Basis) -> float:
        return default_eps(basis) if self.eps_boundary is None else self.eps_boundary

    def resolved_dedup_tol(self, basis: Basis) -> float:
        return DEDUP_REL_TOL * (1.0 + basis.norm_sq) if self.dedup_tol is None else self.dedup_tol


@dataclass
class Pattern:
    """Projected point set and run statistics.

    With ``debug_preimages`` the accepted lattice points are kept in
    ``preimages`` (in acceptance order) and ``preimage_index[k]`` is the index
    in ``points`` of the projection of ``preimages[k]``.
    """

    points: list[Vec2]
    analysed: int
    boundary: int
    truncated: bool
    preimages: list[LatticePoint] | None = None
    preimage_index: list[int] | None = None

    @property
    def obtained(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)


def start_point(config: GenConfig) -> LatticePoint:
    """Nearest lattice point to the translation, halves rounded away from zero."""
    if config.start_override is not None:
        return config.start_override
    t = np.asarray(config.translation)
    return tuple(int(c) for c in np.sign(t) * np.floor(np.abs(t) + 0.5))


def lattice_neighbors(p: LatticePoint) -> Iterator[LatticePoint]:
    """The 20 points ``p -+ e_j``, j ascending, the -1 step first."""
    for j in range(10):
        for step in (-1, 1):
            q = list(p)
            q[j] += step
            yield tuple(q)


class _PointSet:
    """Planar points with coincidence detection on a hash grid."""

    def __init__(self, tol_sq: float):
        self.tol_sq = tol_sq
        self.cell = max(math.sqrt(tol_sq), 1e-12)
        self.points: list[Vec2] = []
        self.grid: dict[tuple[int, int], list[int]] = {}

    def find_or_add(self, p: Vec2) -> tuple[int, bool]:
        cx, cy = math.floor(p.x / self.cell), math.floor(p.y / self.cell)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self.grid.get((cx + dx, cy + dy), ()):
                    q = self.points[idx]
                    if (q.x - p.x) ** 2 + (q.y - p.y) ** 2 <= self.tol_sq:
                        return idx, False
        self.points.append(p)
        self.grid.setdefault((cx, cy), []).append(len(self.points) - 1)
        return len(self.points) - 1, True


Classifier = Callable[[np.ndarray], Classification]


def _flood(basis: Basis, config: GenConfig, member: Classifier) -> Pattern:
    translation = np.asarray(config.translation)
    start = start_point(config)
    if member(np.asarray(start) - translation) == Classification.OUTSIDE:
        raise StartOutsideStrip(
            f"start point {start} lies outside the strip translated by {config.translation}; "
            "change the translation or pass start_override")

    seen = {start}
    queue = deque([(start, 0)])
    accepted: list[tuple[LatticePoint, np.ndarray, Classification, int]] = []
    analysed = 0
    while queue and analysed < config.budget:
        p, depth = queue.popleft()
        analysed += 1
        v = np.asarray(p, dtype=float) - translation
        where = member(v)
        if where == Classification.OUTSIDE:
            continue
        accepted.append((p, v, where, depth))
        for q in lattice_neighbors(p):
            if q not in seen:
                seen.add(q)
                queue.append((q, depth + 1))

    if queue and accepted and not config.keep_partial_layer:
        # a layer is complete once the queue head is deeper than it
        last_complete = queue[0][1] - 1
        accepted = [a for a in accepted if a[3] <= last_complete]

    found = _PointSet(config.resolved_dedup_tol(basis))
    preimages: list[LatticePoint] | None = [] if config.debug_preimages else None
    preimage_index: list[int] | None = [] if config.debug_preimages else None
    boundary = 0
    for p, v, where, _ in accepted:
        idx, new = found.find_or_add(project_physical(basis, v))
        if new and where == Classification.BOUNDARY:
            boundary += 1
        if preimages is not None:
            preimages.append(p)
            preimage_index.append(idx)
    return Pattern(points=found.points, analysed=analysed, boundary=boundary,
                   truncated=bool(queue), preimages=preimages, preimage_index=preimage_index)


def generate(config: GenConfig, basis: Basis | None = None,
             table: StripTable | None = None) -> Pattern:
    """Flood-fill the strip from :func:`start_point` and project what is accepted.

    Lattice points are taken from a FIFO queue; each is classified after
    subtracting the translation. Inside and boundary points are projected,
    kept unless they coincide with an earlier point, and their 20 unit-step
    neighbours are queued if never seen before. The run stops when the queue
    empties or ``budget`` points have been classified; a truncated run drops
    the unfinished last layer unless ``config.keep_partial_layer`` is set.
    """
    basis = config.basis() if basis is None else basis
    table = build_strip_table(basis) if table is None else table
    if table.n_active == 0:
        raise InfiniteStrip("no face family of the window is active; the strip is unbounded")
    eps = config.resolved_eps(basis)
    return _flood(basis, config, lambda v: classify(basis, table, v, eps))


def step_displacement(basis: Basis, p: Sequence[int], q: Sequence[int]) -> Vec2:
    """Projected displacement ``P q - P p`` of a unit lattice step ``q = p -+ e_j``."""
    diff = np.asarray(q) - np.asarray(p)
    if np.count_nonzero(diff) != 1 or np.abs(diff).sum() != 1:
        raise ValueError(f"{p} and {q} are not unit-step neighbours")
    a = project_physical(basis, p)
    b = project_physical(basis, q)
    return Vec2(b.x - a.x, b.y - a.y)


@dataclass
class AdjacencyReport:
    pairs: int = 0
    on_cluster: int = 0
    max_error: float = 0.0
    offenders: list[tuple[LatticePoint, LatticePoint]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pairs == self.on_cluster


def check_cluster_adjacency(basis: Basis, pattern: Pattern, tol: float = 1e-9) -> AdjacencyReport:
    """Check every accepted unit-step pair projects onto a vertex of the cluster.

    Displacements are measured between the emitted pattern points, so this
    exercises the deduplicated output rather than recomputing projections.
    Needs a pattern generated with ``debug_preimages``.
    """
    if pattern.preimages is None:
        raise ValueError("pattern was generated without debug_preimages")
    vertices = np.array(cluster_points(basis).vertices())
    where = dict(zip(pattern.preimages, pattern.preimage_index))
    report = AdjacencyReport()
    for p, i in where.items():
        for j in range(10):
            q = list(p)
            q[j] += 1
            k = where.get(tuple(q))
            if k is None:
                continue
            a, b = pattern.points[i], pattern.points[k]
            d = np.array([b.x - a.x, b.y - a.y])
            err = float(np.min(np.hypot(*(vertices - d).T)))
            report.pairs += 1
            report.max_error = max(report.max_error, err)
            if err <= tol:
                report.on_cluster += 1
            else:
                report.offenders.append((p, tuple(q)))
    return report
