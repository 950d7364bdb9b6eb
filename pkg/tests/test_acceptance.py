"""Exit criteria for the package, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary then
lists one PASS/FAIL line per criterion (see ``conftest.py``). Each test also
enforces its runtime limit.
"""
import io
import json
import time
from pathlib import Path

import numpy as np
import pytest

from quasipack.cluster import Vec2, build_basis, c5_matrix, cluster_points
from quasipack.generator import GenConfig, Pattern, check_cluster_adjacency, generate
from quasipack.render import read_csv, write_csv, write_json, write_mathematica
from quasipack.strip import TRIPLES, build_strip_table, half_width_by_enumeration, oracle_sweep
from reference import reference_bfs

DEFAULT = GenConfig()
DATA = Path(__file__).parent / "data"

# reference_bfs on the default configuration, frozen when first computed
REFERENCE_OBTAINED = 671
REFERENCE_BOUNDARY = 0


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_1_representation_identities():
    rng = np.random.default_rng(20261015)
    seeds = rng.uniform(-10, 10, size=(1000, 4))
    with Timer() as t:
        c5_err = np.max(np.abs(np.linalg.matrix_power(c5_matrix(), 5) - np.eye(2)))
        worst_orth = worst_norm = worst_orbit = 0.0
        for s in seeds:
            basis = build_basis(s[:2], s[2:])
            xx, yy = basis.row_norms_sq()
            worst_orth = max(worst_orth, abs(basis.row_inner_product()) / basis.norm_sq)
            worst_norm = max(worst_norm, abs(xx - yy) / basis.norm_sq)
            cols = np.array(basis.columns)
            sums = np.abs(np.concatenate([cols[:5].sum(axis=0), cols[5:].sum(axis=0)]))
            worst_orbit = max(worst_orbit, float(sums.max()) / (1 + basis.norm_sq))
    print(f"\n  C5^5 err {c5_err:.2e}; orthogonality {worst_orth:.2e}; "
          f"norms {worst_norm:.2e}; orbit sums {worst_orbit:.2e}; {t.elapsed:.3f}s")
    assert c5_err <= 1e-12
    assert worst_orth <= 1e-9
    assert worst_norm <= 1e-9
    assert worst_orbit <= 1e-9
    assert t.elapsed < 1.0


def test_criterion_2_half_width_equivalence():
    rng = np.random.default_rng(7)
    seeds = rng.uniform(-10, 10, size=(100, 4))
    with Timer() as t:
        worst = 0.0
        for s in seeds:
            basis = build_basis(s[:2], s[2:])
            table = build_strip_table(basis)
            enumerated = np.array([half_width_by_enumeration(basis, tr) for tr in TRIPLES])
            worst = max(worst, float(np.max(np.abs(enumerated - table.half_widths))))
    print(f"\n  max |closed form - enumeration| {worst:.2e} over 100 x 120; {t.elapsed:.3f}s")
    assert worst <= 1e-12
    assert t.elapsed < 1.0


def test_criterion_3_oracle_equivalence():
    with Timer() as t:
        sweep = oracle_sweep(DEFAULT.basis(), samples=10_000, low=-5, high=5, seed=3)
    print(f"\n  {sweep.samples} samples, {sweep.abstained} abstained, "
          f"agreement {100 * sweep.agreement:.2f}%; {t.elapsed:.2f}s")
    assert sweep.samples >= 10_000
    assert sweep.disagreements == []
    assert sweep.agreement == 1.0
    assert sweep.abstained <= 0.01 * sweep.samples
    assert t.elapsed < 30.0


def test_criterion_4_default_reproduction():
    with Timer() as t:
        ref_points, ref_analysed, ref_boundary, _, _ = reference_bfs(
            DEFAULT.basis(), DEFAULT.translation, DEFAULT.budget)
        first = generate(DEFAULT)
        second = generate(DEFAULT)
    print(f"\n  reference obtained {len(ref_points)} boundary {ref_boundary}; "
          f"generator analysed {first.analysed} obtained {first.obtained} "
          f"boundary {first.boundary}; {t.elapsed:.2f}s")
    assert (len(ref_points), ref_boundary) == (REFERENCE_OBTAINED, REFERENCE_BOUNDARY)
    assert first.obtained == len(ref_points)
    assert first.boundary == ref_boundary
    assert first.analysed == ref_analysed == DEFAULT.budget
    assert first == second
    assert t.elapsed < 60.0


def test_criterion_5_inversion_symmetry():
    cfg = GenConfig(translation=0.0, budget=2000)
    with Timer() as t:
        p = generate(cfg)
    pts = p.as_array()
    tol = cfg.resolved_dedup_tol(cfg.basis())
    d2 = np.sum((pts[:, None, :] + pts[None, :, :]) ** 2, axis=2)
    unmatched = int(np.sum(d2.min(axis=1) > tol))
    has_origin = bool(np.any(np.sum(pts ** 2, axis=1) <= tol))
    print(f"\n  {p.obtained} points, {unmatched} without a mirror image; {t.elapsed:.2f}s")
    assert unmatched == 0
    assert has_origin
    assert t.elapsed < 10.0


def test_criterion_6_cluster_packing():
    cfg = GenConfig(debug_preimages=True)
    p = generate(cfg)
    report = check_cluster_adjacency(cfg.basis(), p, tol=1e-9)
    print(f"\n  {report.on_cluster}/{report.pairs} unit steps on cluster vertices, "
          f"max error {report.max_error:.2e}")
    assert report.pairs > 0
    assert report.on_cluster == report.pairs


def test_criterion_7_serialization():
    cluster = cluster_points(DEFAULT.basis())
    fixture = Pattern(points=[Vec2(0.0, 0.0), Vec2(-12.5, 3.14159265), Vec2(123.456789, -0.000004)],
                      analysed=40, boundary=1, truncated=False)
    sink = io.StringIO()
    write_mathematica(cluster, fixture, sink)
    assert sink.getvalue().encode() == (DATA / "golden_3pt.m").read_bytes()

    p = generate(DEFAULT)
    csv_sink, json_sink = io.StringIO(), io.StringIO()
    write_csv(p, csv_sink)
    write_json(cluster, p, DEFAULT, json_sink)
    csv_back = np.array(read_csv(io.StringIO(csv_sink.getvalue())))
    json_back = np.array(json.loads(json_sink.getvalue())["points"])
    csv_err = float(np.max(np.abs(csv_back - p.as_array())))
    json_err = float(np.max(np.abs(json_back - p.as_array())))
    print(f"\n  golden file identical; CSV err {csv_err:.1e}; JSON err {json_err:.1e}")
    assert csv_err <= 1e-8
    assert json_err <= 1e-8
