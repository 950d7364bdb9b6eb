"""Pentagonal rotation, shell orbits and the 2x10 basis of the physical plane.

Column ``j`` of the basis is the planar image of the unit vector ``e_j`` of
Z^10. Columns 0-4 are the C5 orbit of the first seed and columns 5-9 the
orbit of the second seed; together with their negatives and the origin they
form the 21-point two-shell decagonal cluster.

Indices are 0-based throughout the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateBasis

COS72 = (math.sqrt(5.0) - 1.0) / 4.0
SIN72 = math.sqrt(5.0 + math.sqrt(5.0)) / (2.0 * math.sqrt(2.0))

# relative tolerance for the representation identities
REPR_TOL = 1e-9


class Vec2(NamedTuple):
    x: float
    y: float


def c5_matrix() -> np.ndarray:
    """Rotation by 72 degrees, with the entries written in radicals."""
    return np.array([[COS72, -SIN72], [SIN72, COS72]])


def generate_orbit(seed: Sequence[float]) -> list[Vec2]:
    """Return ``[seed, C5 seed, C5^2 seed, C5^3 seed, C5^4 seed]``.

    Each entry is obtained from the previous one by one more rotation, the
    same recurrence used to fill the basis columns.
    """
    rot = c5_matrix()
    current = np.asarray(seed, dtype=float)
    if current.shape != (2,) or not np.all(np.isfinite(current)):
        raise ValueError(f"seed must be a finite 2-vector, got {seed!r}")
    orbit = [Vec2(float(current[0]), float(current[1]))]
    for _ in range(4):
        current = rot @ current
        orbit.append(Vec2(float(current[0]), float(current[1])))
    return orbit


@dataclass(frozen=True)
class Basis:
    """The 2x10 matrix whose columns are cluster vertices.

    ``norm_sq`` is the common squared norm of the two rows, summed directly
    from the entries of the first row.
    """

    columns: tuple[Vec2, ...]
    norm_sq: float

    @cached_property
    def rows(self) -> np.ndarray:
        arr = np.array(self.columns, dtype=float).T
        arr.flags.writeable = False
        return arr

    @cached_property
    def row_lists(self) -> tuple[list[float], list[float]]:
        x, y = self.rows.tolist()
        return x, y

    @property
    def seed1(self) -> Vec2:
        return self.columns[0]

    @property
    def seed2(self) -> Vec2:
        return self.columns[5]

    def row_inner_product(self) -> float:
        x, y = self.rows
        return float(np.dot(x, y))

    def row_norms_sq(self) -> tuple[float, float]:
        x, y = self.rows
        return float(np.dot(x, x)), float(np.dot(y, y))


def build_basis(seed1: Sequence[float], seed2: Sequence[float]) -> Basis:
    columns = tuple(generate_orbit(seed1) + generate_orbit(seed2))
    norm_sq = sum(col.x * col.x for col in columns)
    if norm_sq <= 0.0:
        raise DegenerateBasis("seed1 and seed2 are both zero; the basis rows span nothing")
    return Basis(columns=columns, norm_sq=norm_sq)


@dataclass(frozen=True)
class Cluster:
    first_shell: tuple[Vec2, ...]
    second_shell: tuple[Vec2, ...]
    center: Vec2 = Vec2(0.0, 0.0)

    def vertices(self) -> list[Vec2]:
        """All 21 points: shells first, origin last."""
        return [*self.first_shell, *self.second_shell, self.center]

    def shell_radii(self) -> tuple[float, float]:
        return (math.hypot(*self.first_shell[0]), math.hypot(*self.second_shell[0]))


def _signed_shell(cols: Sequence[Vec2]) -> tuple[Vec2, ...]:
    return tuple(cols) + tuple(Vec2(-c.x, -c.y) for c in cols)


def cluster_points(basis: Basis) -> Cluster:
    """Shells are ordered as the five positive columns followed by their negatives."""
    return Cluster(
        first_shell=_signed_shell(basis.columns[:5]),
        second_shell=_signed_shell(basis.columns[5:]),
    )
