"""Randomised property suite for the structural results on J-frames.

Every check takes a ``KreinSpace`` and an integer seed, builds its own random
instance and returns ``(ok, detail)``.  ``run_suite`` drives all checks over
many random spaces with per-trial derived seeds, so any violation can be
replayed from ``(seed, trial)`` alone.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from kreinframes import oracle
from kreinframes.frames import jframe_check, optimal_bounds
from kreinframes.kspace import KreinSpace, _norm
from kreinframes.sequences import intersection_test, subsequence_frame_test
from kreinframes.subspace import Subspace, image, j_complement, j_projection, pinv_in_metric, q_projection
from kreinframes.transforms import project_family, union_families

PROJECTION_RTOL = 1e-7
UNION_RTOL = 1e-8


def _seed(rng_seed: int, *tags) -> int:
    return int(oracle.rng_for(rng_seed, *tags).integers(2**63))


def projection_products(space: KreinSpace, M: Subspace) -> dict[str, float]:
    """Relative errors of the product identities between J- and metric projections.

    ``literal_*`` compare ``Q_{JM} Q_M`` with ``P_M`` and ``P_{JM} P_M`` with
    ``Q_M``.  ``pinv_*`` compare ``P_M`` with the metric Moore-Penrose inverse
    of ``Q_{JM} Q_M`` and ``Q_M`` with ``P_M P_M^+``.
    """
    J = space.canonical_J
    JM = image(space, J, M)
    P = j_projection(space, M).matrix
    PJ = j_projection(space, JM).matrix
    Q = q_projection(space, None, M).matrix
    QJ = q_projection(space, None, JM).matrix
    W = space.j_gram
    return {
        "literal_p_from_q": _norm(QJ @ Q - P) / _norm(P),
        "literal_q_from_p": _norm(PJ @ P - Q) / _norm(Q),
        "pinv_p_from_q": _norm(pinv_in_metric(QJ @ Q, W) - P) / _norm(P),
        "pinv_q_from_p": _norm(P @ pinv_in_metric(P, W) - Q) / _norm(Q),
    }


def check_projection_identity(space: KreinSpace, seed: int):
    M = oracle.random_regular_subspace(space, seed)
    err = projection_products(space, M)
    ok = err["pinv_p_from_q"] <= PROJECTION_RTOL and err["pinv_q_from_p"] <= PROJECTION_RTOL
    return ok, err


def _projection_pair(space: KreinSpace, seed: int, sign: str):
    fam = oracle.random_jframe(space, space.dim + 2, _seed(seed, 10))
    M = oracle.random_definite_subspace(space, _seed(seed, 11), sign)
    Mc = j_complement(space, M)
    on_m = project_family(space, M, fam)
    on_c = project_family(space, Mc, fam)
    return fam, M, Mc, on_m, on_c


def _check_projection(space: KreinSpace, seed: int, sign: str):
    fam, M, Mc, on_m, on_c = _projection_pair(space, seed, sign)
    ok = on_m.is_j_frame and on_c.is_j_frame
    return ok, {
        "subspace": on_m.sub_report.failure_reasons if on_m.sub_report else (),
        "complement": on_c.sub_report.failure_reasons if on_c.sub_report else (),
    }


def check_projection_onto_positive(space: KreinSpace, seed: int):
    if space.n_plus == 0:
        return True, {"skipped": "no positive part"}
    return _check_projection(space, seed, "+")


def check_projection_onto_negative(space: KreinSpace, seed: int):
    if space.n_minus == 0:
        return True, {"skipped": "no negative part"}
    return _check_projection(space, seed, "-")


def check_project_then_merge(space: KreinSpace, seed: int):
    sign = "+" if space.n_plus else "-"
    fam, M, Mc, on_m, on_c = _projection_pair(space, seed, sign)
    rep = union_families(space, M, on_m.projected, on_c.projected)
    return rep.report.is_j_frame, {"reasons": rep.report.failure_reasons}


def check_union(space: KreinSpace, seed: int):
    M = oracle.random_regular_subspace(space, _seed(seed, 20))
    Mc = j_complement(space, M)
    rng = oracle.rng_for(seed, 21)
    parts = []
    for S in (M, Mc):
        if S.is_trivial:
            parts.append(np.zeros((space.dim, 1)))
            continue
        size = S.k + int(rng.integers(0, 3))
        parts.append(oracle.random_frame_in(space, S, size, _seed(seed, 22, len(parts))).synthesis)
    rep = union_families(space, M, parts[0], parts[1], rtol=UNION_RTOL)
    ok = rep.report.is_j_frame and rep.bounds_enclosed and rep.parts_are_j_frames
    return ok, {
        "union": rep.report.bounds.as_tuple(),
        "common": rep.common_bounds.as_tuple(),
        "reasons": rep.report.failure_reasons,
    }


def check_subfamily_spans(space: KreinSpace, seed: int):
    fam, split = oracle.random_split_family(space, seed)
    rep = subsequence_frame_test(space, fam, split)
    return rep.agree, {"spans_equal": rep.spans_equal, "n_block_is_j_frame": rep.n_report.is_j_frame}


def check_intersection(space: KreinSpace, seed: int):
    fam, split = oracle.random_split_family(space, seed)
    rep = intersection_test(space, fam, split)
    return rep.consistent, {"dim": rep.dim, "regular": rep.intersection_regular}


def check_sampled_bounds(space: KreinSpace, seed: int, samples: int = 2000):
    fam = oracle.random_jframe(space, space.dim + 1, _seed(seed, 30))
    exact = optimal_bounds(space, fam)
    est = oracle.sampled_bounds(space, fam, samples, _seed(seed, 31))
    ok = bounds_inside(est, exact, 1e-9)
    return ok, {"optimal": exact.as_tuple(), "sampled": est.as_tuple()}


def bounds_inside(est, exact, rtol: float) -> bool:
    """``est`` lies in ``[A1, B1] x [B2, A2]`` of ``exact`` up to ``rtol``."""
    def within(x, lo, hi):
        if x is None:
            return lo is None
        pad = rtol * max(abs(lo), abs(hi))
        return lo - pad <= x <= hi + pad

    return (
        within(est.A1, exact.A1, exact.B1)
        and within(est.B1, exact.A1, exact.B1)
        and within(est.A2, exact.B2, exact.A2)
        and within(est.B2, exact.B2, exact.A2)
    )


CHECKS: dict[str, Callable] = {
    "projection_product_identity": check_projection_identity,
    "projection_onto_positive_subspace": check_projection_onto_positive,
    "projection_onto_negative_subspace": check_projection_onto_negative,
    "union_of_complementary_frames": check_union,
    "project_then_merge": check_project_then_merge,
    "subfamily_span_equivalence": check_subfamily_spans,
    "intersection_frame_sequences": check_intersection,
    "sampled_bounds_enclosed": check_sampled_bounds,
}


def trial_space(dim: int, signature: tuple[int, int], seed: int, trial: int) -> tuple[KreinSpace, int]:
    trial_seed = _seed(seed, 100, trial)
    cfg = oracle.GenConfig(dim=dim, signature=signature, family_size=dim, seed=trial_seed)
    return oracle.random_krein(cfg), trial_seed


def run_suite(trials: int, dim: int, signature: tuple[int, int], seed: int, samples: int = 2000) -> dict:
    counts = {name: {"passed": 0, "failed": 0} for name in CHECKS}
    violations = []
    for trial in range(trials):
        space, trial_seed = trial_space(dim, signature, seed, trial)
        for name, fn in CHECKS.items():
            kwargs = {"samples": samples} if name == "sampled_bounds_enclosed" else {}
            ok, detail = fn(space, trial_seed, **kwargs)
            counts[name]["passed" if ok else "failed"] += 1
            if not ok:
                violations.append({"check": name, "trial": trial, "trial_seed": trial_seed, "detail": detail})
    return {"counts": counts, "violations": violations}
