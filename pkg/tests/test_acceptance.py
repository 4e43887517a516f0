"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are printed immediately (visible with ``-s``) and repeated in the
terminal summary.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from kreinframes import (
    esmeral_bounds,
    exactness,
    jframe_check,
    make_krein_space,
    make_subspace,
    optimal_bounds,
    project_family,
    validate_symmetry,
)
from kreinframes.checks import check_subfamily_spans, check_union, projection_products, trial_space
from kreinframes.frames import FrameBounds
from kreinframes.io import load_problem
from kreinframes.oracle import (
    bounds_gap,
    projected_bounds,
    random_definite_subspace,
    random_jframe,
    random_regular_subspace,
    rng_for,
    sampled_bounds,
)
from kreinframes.subspace import j_complement

RESULTS: list[str] = []
S3 = np.sqrt(3.0)


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _dims(trials: int, max_dim: int = 8):
    """Cycle through every (dim, n+) with dim <= max_dim."""
    pairs = [(n, p) for n in range(1, max_dim + 1) for p in range(n + 1)]
    for t in range(trials):
        yield t, pairs[t % len(pairs)]


def test_criterion_01_example_golden():
    t0 = time.perf_counter()
    space = make_krein_space(np.diag([1.0, -1.0, 1.0]))
    fam = np.array([[1, 1, -1001], [10, -1 / 200, -5], [0, 1, 0]], dtype=float).T
    M = make_subspace(space, np.eye(3)[:, :2])
    orig = jframe_check(space, fam)
    proj = project_family(space, M, fam)
    P = proj.projection
    ok_p = np.array_equal(np.round(P @ np.array([3.0, 5.0, 7.0]), 12), [3, 5, 0])
    reasons = proj.sub_report.failure_reasons
    dt = time.perf_counter() - t0
    ok = orig.is_j_frame is True and proj.is_j_frame is False and "neutral_vector" in reasons and ok_p and dt < 1
    report(1, "three-vector example", ok, f"original={orig.is_j_frame}, projected={proj.is_j_frame} {reasons}, {dt:.3f}s")


def test_criterion_02_symmetry_truncation():
    t0 = time.perf_counter()
    space = make_krein_space(np.diag([1.0, -1.0, 1.0, -1.0]))
    J1 = validate_symmetry(space, np.diag([1.0, -1.0, 1.0, -1.0]))
    J2 = validate_symmetry(space, np.array([[2, -S3, 0, 0], [S3, -2, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]))
    e1 = esmeral_bounds(space, J1, np.eye(4))
    e2 = esmeral_bounds(space, J2, np.eye(4))
    # the verdict never looks at a symmetry; evaluate it once per symmetry anyway
    v1 = jframe_check(space, np.eye(4)).is_j_frame
    v2 = jframe_check(space, np.eye(4)).is_j_frame
    err = max(abs(e1.A - 1), abs(e1.B - 1), abs(e2.A - (2 - S3)), abs(e2.B - (2 + S3)))
    dt = time.perf_counter() - t0
    ok = J1.is_valid and J2.is_valid and err <= 1e-9 and v1 == v2 and dt < 1
    report(2, "symmetry dependence of bounds", ok, f"J1=({e1.A:.12g},{e1.B:.12g}) J2=({e2.A:.12g},{e2.B:.12g}) max err {err:.2e}, verdicts {v1}/{v2}, {dt:.3f}s")


def test_criterion_03_projection_products():
    t0 = time.perf_counter()
    worst = {"literal_p_from_q": 0.0, "literal_q_from_p": 0.0}
    bad = 0
    for t, (n, p) in _dims(200):
        space, seed = trial_space(n, (p, n - p), 3, t)
        err = projection_products(space, random_regular_subspace(space, seed))
        if err["literal_p_from_q"] > 1e-7 or err["literal_q_from_p"] > 1e-7:
            bad += 1
        for k in worst:
            worst[k] = max(worst[k], err[k])
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 10
    report(
        3,
        "products of metric/J projections (literal form)",
        ok,
        f"{bad}/200 pairs violate 1e-7; worst rel err {worst['literal_p_from_q']:.3g} / {worst['literal_q_from_p']:.3g}, {dt:.2f}s",
    )


def test_criterion_04_projection_keeps_j_frames():
    t0 = time.perf_counter()
    failures = 0
    for t, (n, p) in _dims(200):
        space, seed = trial_space(n, (p, n - p), 4, t)
        sign = "+" if (t % 2 == 0 and p > 0) or n - p == 0 else "-"
        fam = random_jframe(space, n + int(rng_for(seed, 1).integers(0, 4)), seed)
        M = random_definite_subspace(space, seed, sign)
        ok_m = project_family(space, M, fam).is_j_frame
        ok_c = project_family(space, j_complement(space, M), fam).is_j_frame
        failures += not (ok_m and ok_c)
    dt = time.perf_counter() - t0
    report(4, "projection onto maximal definite subspace and complement", failures == 0 and dt < 30, f"{failures}/200 failures, {dt:.2f}s")


def test_criterion_05_union_of_parts():
    t0 = time.perf_counter()
    failures = 0
    for t, (n, p) in _dims(200):
        space, seed = trial_space(n, (p, n - p), 5, t)
        ok, _ = check_union(space, seed)
        failures += not ok
    dt = time.perf_counter() - t0
    report(5, "union of complementary J-frames", failures == 0 and dt < 30, f"{failures}/200 failures (rtol 1e-8), {dt:.2f}s")


def test_criterion_06_span_equivalence():
    disagree = 0
    for t, (n, p) in _dims(200):
        space, seed = trial_space(n, (p, n - p), 6, t)
        ok, _ = check_subfamily_spans(space, seed)
        disagree += not ok
    report(6, "span criterion vs direct check", disagree == 0, f"{200 - disagree}/200 agree")


def _within(est: FrameBounds, exact: FrameBounds, rel: float) -> tuple[bool, float]:
    worst = 0.0
    inside = True
    pairs = [(est.A1, exact.A1), (est.B1, exact.B1), (est.A2, exact.A2), (est.B2, exact.B2)]
    for e, x in pairs:
        if x is None:
            inside &= e is None
            continue
        worst = max(worst, abs(e - x) / abs(x))
    pad = 1e-12
    if exact.A1 is not None:
        inside &= exact.A1 * (1 - pad) <= est.A1 <= est.B1 <= exact.B1 * (1 + pad)
    if exact.A2 is not None:
        inside &= exact.B2 * (1 + pad) <= est.B2 <= est.A2 <= exact.A2 * (1 - pad)
    return inside and worst <= rel, worst


def test_criterion_07_sampled_bounds():
    failures, worst = 0, 0.0
    sig = [(n, p) for n in range(1, 9) for p in range(n + 1) if p <= 4 and n - p <= 4]
    for t in range(100):
        n, p = sig[t % len(sig)]
        space, seed = trial_space(n, (p, n - p), 7, t)
        fam = random_jframe(space, n + int(rng_for(seed, 2).integers(0, 4)), seed)
        ok, w = _within(sampled_bounds(space, fam, 10_000, seed), optimal_bounds(space, fam), 0.05)
        failures += not ok
        worst = max(worst, w)
    report(7, "Monte-Carlo bounds agree with the pencil", failures == 0, f"{failures}/100 failures, worst endpoint gap {100 * worst:.2f}%")


def test_criterion_08_exactness():
    failures = 0
    for t, (n, p) in _dims(100, max_dim=6):
        space, seed = trial_space(n, (p, n - p), 8, t)
        small = exactness(space, random_jframe(space, n, seed), depth=2)
        big = exactness(space, random_jframe(space, n + 2, seed), depth=2)
        failures += not (small.is_exact and big.proper and big.near_exact and not big.is_exact)
    report(8, "exact and proper near-exact random frames", failures == 0, f"{100 - failures}/100 seeds as expected")


def test_criterion_09_frozen_counterexample(corpus):
    a = load_problem(str(corpus / "counterexample_a.json"))
    b = load_problem(str(corpus / "counterexample_b.json"))
    same_space = np.array_equal(a.space.gram, b.space.gram)
    M = make_subspace(a.space, a.subspace)
    before = bounds_gap(optimal_bounds(a.space, a.vectors), optimal_bounds(b.space, b.vectors))
    after = bounds_gap(projected_bounds(a.space, M, a.vectors), projected_bounds(b.space, M, b.vectors))
    frames = jframe_check(a.space, a.vectors).is_j_frame and jframe_check(b.space, b.vectors).is_j_frame
    ok = same_space and frames and M.is_uniformly_positive and M.is_regular and before <= 1e-9 and after >= 0.10
    report(9, "frozen counterexample pair", ok, f"relative gap before {before:.2e}, after {100 * after:.1f}%")


COMMANDS = [
    ["analyze", "--input", "example33.json"],
    ["bounds", "--input", "example33.json"],
    ["project", "--input", "example33.json"],
    ["exact", "--input", "example33.json"],
    ["analyze", "--input", "example210_dim4.json"],
    ["bounds", "--input", "example210_dim4.json"],
    ["bounds", "--input", "example210_dim4_j1.json"],
    ["project", "--input", "counterexample_a.json"],
    ["project", "--input", "counterexample_b.json"],
    ["merge", "--input", "merge_f.json", "--input2", "merge_g.json"],
    ["sequence", "--input", "split_dim5.json"],
    ["exact", "--input", "split_dim5.json", "--depth", "2"],
    ["fuzz", "--trials", "5", "--dim", "4", "--sig", "2,2", "--seed", "10"],
]


def test_criterion_10_byte_identical_reports(corpus, tmp_path):
    mismatched = []
    for i, cmd in enumerate(COMMANDS):
        outputs = []
        for rep in range(2):
            out = tmp_path / f"{i}_{rep}.json"
            argv = [sys.executable, "-m", "kreinframes", *cmd, "--output", str(out), "--quiet"]
            proc = subprocess.run(argv, cwd=corpus, capture_output=True)
            if proc.returncode not in (0, 1):
                mismatched.append(f"{cmd[0]} exit {proc.returncode}")
            outputs.append(out.read_bytes() if out.exists() else b"")
        if not outputs[0] or outputs[0] != outputs[1]:
            mismatched.append(" ".join(cmd))
    report(10, "deterministic CLI reports", not mismatched, f"{len(COMMANDS) - len(mismatched)}/{len(COMMANDS)} commands byte-identical")
