"""Strip membership for lattice points of Z^10.

The window is the projection of the cube ``[-0.5, 0.5]^10`` onto the
orthogonal complement of the physical plane. Its 7-dimensional faces come in
120 parallel families, one per index triple ``i1 < i2 < i3``; the normal of
a family pairs a vector ``v`` with the 3x3 determinant::

    | v[i1]   v[i2]   v[i3]  |
    | x[i1]   x[i2]   x[i3]  |
    | y[i1]   y[i2]   y[i3]  |

where ``x`` and ``y`` are the basis rows. A point lies in the strip iff every
such determinant is bounded in absolute value by the family's half-width.

:func:`membership_oracle` decides the same question without determinants, by
checking that ``v - a*x - b*y`` lies in the cube for some real ``(a, b)``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .cluster import Basis, Vec2
from .errors import DegenerateBasis

BOUNDARY_REL_EPS = 1e-9
ZERO_WIDTH_TOL = 1e-12
ORACLE_EPS = 1e-7
HALF_WIDTH_CHECK_TOL = 1e-12


class Triple(NamedTuple):
    i1: int
    i2: int
    i3: int


TRIPLES: tuple[Triple, ...] = tuple(Triple(*t) for t in itertools.combinations(range(10), 3))

_SIGN_VECTORS = tuple(itertools.product((-0.5, 0.5), repeat=3))


class Classification(enum.IntEnum):
    INSIDE = 0
    BOUNDARY = 1
    OUTSIDE = 2


def default_eps(basis: Basis) -> float:
    return BOUNDARY_REL_EPS * basis.norm_sq


def _minors(basis: Basis, t: Triple) -> tuple[float, float, float]:
    """2x2 column minors (m23, m13, m12) of the basis restricted to ``t``."""
    x, y = basis.rows
    i, j, k = t
    m23 = x[j] * y[k] - x[k] * y[j]
    m13 = x[i] * y[k] - x[k] * y[i]
    m12 = x[i] * y[j] - x[j] * y[i]
    return float(m23), float(m13), float(m12)


def face_functional(basis: Basis, t: Triple, v: Sequence[float]) -> float:
    """Determinant with rows ``v[t]``, ``x[t]``, ``y[t]``; linear in ``v``."""
    x, y = basis.row_lists
    i, j, k = t
    vi, vj, vk = float(v[i]), float(v[j]), float(v[k])
    return (vi * x[j] * y[k] + vk * x[i] * y[j] + vj * x[k] * y[i]
            - vk * x[j] * y[i] - vi * x[k] * y[j] - vj * x[i] * y[k])


def half_width_by_enumeration(basis: Basis, t: Triple) -> float:
    """Max of the face functional over the eight corners ``(+-0.5, +-0.5, +-0.5)``.

    Kept as an independent check of the closed form used by
    :func:`build_strip_table`.
    """
    best = 0.0
    u = [0.0] * 10
    for signs in _SIGN_VECTORS:
        u[t.i1], u[t.i2], u[t.i3] = signs
        best = max(best, face_functional(basis, t, u))
    return best


@dataclass(frozen=True, eq=False)
class StripTable:
    """Half-widths and face normals for all 120 triples, in :data:`TRIPLES` order.

    ``normals[n] @ v`` equals ``face_functional(basis, TRIPLES[n], v)``.
    """

    half_widths: np.ndarray
    active_mask: np.ndarray
    normals: np.ndarray

    def half_width(self, t: Triple) -> float:
        return float(self.half_widths[TRIPLES.index(t)])

    def active(self, t: Triple) -> bool:
        return bool(self.active_mask[TRIPLES.index(t)])

    @property
    def n_active(self) -> int:
        return int(self.active_mask.sum())

    @property
    def n_inactive(self) -> int:
        return len(TRIPLES) - self.n_active


def build_strip_table(basis: Basis, zero_width_tol: float = ZERO_WIDTH_TOL,
                      check: bool = False) -> StripTable:
    """Closed-form half-widths ``0.5 * (|m23| + |m13| + |m12|)``.

    With ``check=True`` every entry is also recomputed by enumerating the
    eight sign corners and a mismatch above 1e-12 raises ``RuntimeError``.
    """
    half_widths = np.empty(len(TRIPLES))
    normals = np.zeros((len(TRIPLES), 10))
    for n, t in enumerate(TRIPLES):
        m23, m13, m12 = _minors(basis, t)
        normals[n, t.i1] = m23
        normals[n, t.i2] = -m13
        normals[n, t.i3] = m12
        half_widths[n] = 0.5 * (abs(m23) + abs(m13) + abs(m12))
        if check:
            enumerated = half_width_by_enumeration(basis, t)
            if abs(enumerated - half_widths[n]) > HALF_WIDTH_CHECK_TOL:
                raise RuntimeError(
                    f"half-width mismatch for {t}: closed form {half_widths[n]!r}, "
                    f"enumeration {enumerated!r}")
    active = half_widths > zero_width_tol * basis.norm_sq
    for arr in (half_widths, active, normals):
        arr.flags.writeable = False
    return StripTable(half_widths=half_widths, active_mask=active, normals=normals)


def classify(basis: Basis, table: StripTable, v: Sequence[float], eps: float) -> Classification:
    """Place ``v`` relative to the strip; inactive triples impose no constraint.

    ``basis`` is the one ``table`` was built from; the face normals stored in
    the table already encode it.
    """
    return Classification(int(classify_many(table, np.asarray(v, dtype=float)[None, :], eps)[0]))


def classify_many(table: StripTable, vs: np.ndarray, eps: float) -> np.ndarray:
    """Vectorised :func:`classify` over the rows of ``vs``; returns codes."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    normals = table.normals[table.active_mask]
    hw = table.half_widths[table.active_mask]
    r = np.abs(np.asarray(vs, dtype=float) @ normals.T)
    outside = np.any(r > hw + eps, axis=1)
    boundary = np.any(r >= hw - eps, axis=1)
    codes = np.full(len(r), Classification.INSIDE, dtype=np.int8)
    codes[boundary] = Classification.BOUNDARY
    codes[outside] = Classification.OUTSIDE
    return codes


class OracleResult(NamedTuple):
    feasible: bool
    abstained: bool
    witness: tuple[float, float] | None


def _clip(poly: list[tuple[float, float]], nx: float, ny: float, c: float) -> list[tuple[float, float]]:
    """Keep the part of a convex polygon with ``nx*a + ny*b <= c``."""
    out = []
    if not poly:
        return out
    px, py = poly[-1]
    dp = nx * px + ny * py - c
    for qx, qy in poly:
        dq = nx * qx + ny * qy - c
        if dq <= 0.0:
            if dp > 0.0:
                s = dp / (dp - dq)
                out.append((px + s * (qx - px), py + s * (qy - py)))
            out.append((qx, qy))
        elif dp < 0.0:
            s = dp / (dp - dq)
            out.append((px + s * (qx - px), py + s * (qy - py)))
        px, py, dp = qx, qy, dq
    return out


def _feasible_polygon(x: np.ndarray, y: np.ndarray, norm_sq: float, v: np.ndarray,
                      offset: float) -> list[tuple[float, float]]:
    """Polygon of ``(a, b)`` with ``|v_j - a x_j - b y_j| <= 0.5`` for all j.

    Each constraint line is moved outward by ``offset`` (inward when
    negative), measured as Euclidean distance in the ``(a, b)`` plane.
    """
    half = 0.5 * float(np.sum(np.abs(x)) + np.sum(np.abs(y))) / norm_sq + 1.0 + abs(offset)
    ca = float(np.dot(v, x)) / norm_sq
    cb = float(np.dot(v, y)) / norm_sq
    poly = [(ca - half, cb - half), (ca + half, cb - half),
            (ca + half, cb + half), (ca - half, cb + half)]
    for xj, yj, vj in zip(x.tolist(), y.tolist(), v.tolist()):
        length = math.hypot(xj, yj)
        if length == 0.0:
            if abs(vj) > 0.5 + offset:
                return []
            continue
        slack = offset * length
        # v_j - a x_j - b y_j <= 0.5  and  >= -0.5
        poly = _clip(poly, -xj, -yj, 0.5 - vj + slack)
        poly = _clip(poly, xj, yj, 0.5 + vj + slack)
        if not poly:
            return poly
    return poly


def membership_oracle(basis: Basis, v: Sequence[float], eps: float = ORACLE_EPS) -> OracleResult:
    """Decide whether ``v`` lies in the strip by 2-variable feasibility.

    ``v`` is in the strip iff ``v - a*x - b*y`` lies in the cube for some
    ``(a, b)``. The feasible ``(a, b)`` region is cut out of a bounding box by
    the 20 half-planes. The answer abstains when it would change under moving
    every constraint by ``eps``, i.e. when the region is empty or has inradius
    below ``eps`` but becomes nonempty once relaxed by ``eps``.
    """
    x, y = basis.rows
    vec = np.asarray(v, dtype=float)
    if basis.norm_sq <= 0.0:
        raise DegenerateBasis("norm_sq must be positive")

    shrunk = _feasible_polygon(x, y, basis.norm_sq, vec, -eps)
    if shrunk:
        return OracleResult(True, False, _centroid(shrunk))
    relaxed = _feasible_polygon(x, y, basis.norm_sq, vec, eps)
    if not relaxed:
        return OracleResult(False, False, None)
    exact = _feasible_polygon(x, y, basis.norm_sq, vec, 0.0)
    return OracleResult(bool(exact), True, _centroid(exact) if exact else None)


def _centroid(poly: list[tuple[float, float]]) -> tuple[float, float]:
    n = len(poly)
    return (sum(p[0] for p in poly) / n, sum(p[1] for p in poly) / n)


def project_physical(basis: Basis, v: Sequence[float]) -> Vec2:
    """Unscaled projection ``(<v, x>, <v, y>)`` onto the physical plane."""
    x, y = basis.rows
    vec = np.asarray(v, dtype=float)
    return Vec2(float(vec @ x), float(vec @ y))


def project_internal(basis: Basis, v: Sequence[float]) -> np.ndarray:
    """Orthogonal projection onto the 8-dimensional internal space."""
    if basis.norm_sq <= 0.0:
        raise DegenerateBasis("norm_sq must be positive")
    x, y = basis.rows
    vec = np.asarray(v, dtype=float)
    return vec - (vec @ x / basis.norm_sq) * x - (vec @ y / basis.norm_sq) * y


@dataclass
class OracleSweep:
    samples: int
    abstained: int
    agreed: int
    disagreements: list[np.ndarray]

    @property
    def compared(self) -> int:
        return self.samples - self.abstained

    @property
    def agreement(self) -> float:
        return self.agreed / self.compared if self.compared else 1.0


def oracle_sweep(basis: Basis, samples: int = 10_000, low: int = -5, high: int = 5,
                 seed: int = 0, eps: float | None = None) -> OracleSweep:
    """Compare :func:`classify` with :func:`membership_oracle` on random lattice points.

    Points are drawn uniformly from ``[low, high]^10``; boundary points count
    as members, abstentions are excluded from the comparison.
    """
    table = build_strip_table(basis)
    eps = default_eps(basis) if eps is None else eps
    rng = np.random.default_rng(seed)
    vs = rng.integers(low, high, size=(samples, 10), endpoint=True)
    codes = classify_many(table, vs, eps)
    abstained = agreed = 0
    bad = []
    for v, code in zip(vs, codes):
        res = membership_oracle(basis, v)
        if res.abstained:
            abstained += 1
        elif res.feasible == (code != Classification.OUTSIDE):
            agreed += 1
        else:
            bad.append(v)
    return OracleSweep(samples=samples, abstained=abstained, agreed=agreed, disagreements=bad)
