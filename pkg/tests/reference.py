"""Independent reference computations used as test oracles.

Nothing here calls the determinant path of ``quasipack.strip`` except where
the oracle abstains, which the generator contract resolves that way.
"""
import itertools
from collections import deque

import numpy as np

from quasipack.strip import Classification, build_strip_table, classify, default_eps, membership_oracle


def brute_half_width(rows, t):
    """Max over the 8 corners of ``numpy.linalg.det`` of the 3x3 matrix."""
    cols = list(t)
    best = -np.inf
    for signs in itertools.product((-0.5, 0.5), repeat=3):
        m = np.vstack([signs, rows[0, cols], rows[1, cols]])
        best = max(best, np.linalg.det(m))
    return best


def reference_bfs(basis, translation, budget, start=None, keep_partial=False):
    """Oracle-driven flood fill with the generator's traversal contract.

    FIFO from the rounded translation, neighbours ``-e_j`` before ``+e_j`` with
    j ascending, stop after ``budget`` classifications, drop the unfinished
    last layer when truncated, deduplicate projections by brute force.
    Boundary points are the ones on which the oracle abstains.
    """
    translation = np.broadcast_to(np.asarray(translation, dtype=float), (10,))
    if start is None:
        start = tuple(int(c) for c in np.where(translation >= 0, np.floor(translation + 0.5),
                                               -np.floor(-translation + 0.5)))
    table = build_strip_table(basis)
    eps = default_eps(basis)
    rows = np.array(basis.rows)
    tol_sq = 1e-9 * (1 + basis.norm_sq)

    seen = {start}
    queue = deque([(start, 0)])
    analysed = 0
    accepted = []
    while queue and analysed < budget:
        p, depth = queue.popleft()
        analysed += 1
        v = np.array(p, dtype=float) - translation
        res = membership_oracle(basis, v)
        member = res.feasible
        if res.abstained:
            member = classify(basis, table, v, eps) != Classification.OUTSIDE
        if not member:
            continue
        accepted.append((p, depth, res.abstained))
        for j in range(10):
            for step in (-1, 1):
                q = list(p)
                q[j] += step
                q = tuple(q)
                if q not in seen:
                    seen.add(q)
                    queue.append((q, depth + 1))
    truncated = bool(queue)
    if truncated and not keep_partial:
        full = queue[0][1] - 1
        accepted = [a for a in accepted if a[1] <= full]

    points = np.empty((0, 2))
    boundary = 0
    for p, _, abstained in accepted:
        xy = rows @ (np.array(p, dtype=float) - translation)
        if len(points) and np.min(np.sum((points - xy) ** 2, axis=1)) <= tol_sq:
            continue
        points = np.vstack([points, xy])
        boundary += abstained
    lattice = {a[0] for a in accepted}
    return points, analysed, boundary, truncated, lattice
