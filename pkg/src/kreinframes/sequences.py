"""Frame sequences, exactness, and the sub-family results for J-frames.

Infinite increasing index sequences are modelled as a two-block partition of
the finite index set ``0..N-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla

from kreinframes.errors import BadPartition, HypothesisFailed, NotAJFrame
from kreinframes.frames import JFrameReport, VectorFamily, as_family, classify_family, jframe_check
from kreinframes.kspace import KreinSpace
from kreinframes.subspace import Subspace, make_subspace, rank_tol


@dataclass(frozen=True, eq=False)
class SequenceReport:
    is_frame_sequence: bool
    plus_span: Subspace
    minus_span: Subspace
    margins: tuple[float, float]
    neutral_offenders: tuple[int, ...]


def frame_sequence_check(space: KreinSpace, family, tol: Optional[float] = None) -> SequenceReport:
    """Uniform definiteness of both side spans, without maximality."""
    cls = classify_family(space, family, tol)
    mp, mm = cls.m_plus, cls.m_minus
    ok = not cls.neutral_offenders and mp.is_uniformly_positive and mm.is_uniformly_negative
    margins = (
        float(mp.positive_margin or 0.0) if mp.is_uniformly_positive else 0.0,
        float(mm.negative_margin or 0.0) if mm.is_uniformly_negative else 0.0,
    )
    return SequenceReport(
        is_frame_sequence=bool(ok),
        plus_span=mp,
        minus_span=mm,
        margins=margins,
        neutral_offenders=cls.neutral_offenders,
    )


def _check_split(n: int, split) -> tuple[tuple[int, ...], tuple[int, ...]]:
    try:
        m_idx, n_idx = split
        m_idx = tuple(sorted(int(i) for i in m_idx))
        n_idx = tuple(sorted(int(i) for i in n_idx))
    except (TypeError, ValueError):
        raise BadPartition("split must be a pair of index collections") from None
    both = m_idx + n_idx
    if len(set(m_idx)) != len(m_idx) or len(set(n_idx)) != len(n_idx):
        raise BadPartition("repeated index inside a block")
    if set(m_idx) & set(n_idx):
        raise BadPartition("blocks are not disjoint")
    if sorted(both) != list(range(n)):
        raise BadPartition(f"blocks must cover 0..{n - 1} exactly")
    return m_idx, n_idx


def _sub(fam: VectorFamily, idx: Sequence[int]) -> Optional[VectorFamily]:
    return fam.subfamily(idx) if idx else None


def _empty_report(space: KreinSpace, tol) -> JFrameReport:
    # the empty family: both spans trivial
    zero = VectorFamily(np.zeros((space.dim, 1)))
    return jframe_check(space, zero, tol)


@dataclass(frozen=True, eq=False)
class SubsequenceReport:
    plus_spans_equal: bool
    minus_spans_equal: bool
    n_report: JFrameReport

    @property
    def spans_equal(self) -> bool:
        return self.plus_spans_equal and self.minus_spans_equal

    @property
    def agree(self) -> bool:
        return self.spans_equal == self.n_report.is_j_frame


def subsequence_frame_test(space: KreinSpace, family, split, tol: Optional[float] = None) -> SubsequenceReport:
    """Compare the span criterion with a direct J-frame check on the ``n``-block.

    Hypotheses (validated): the whole family and its ``m``-block are J-frames.
    The ``n``-block is a J-frame exactly when its positive and negative spans
    coincide with those of the ``m``-block; both verdicts are reported.
    """
    fam = as_family(family)
    fam.check(space)
    m_idx, n_idx = _check_split(len(fam), split)
    if not jframe_check(space, fam, tol).is_j_frame:
        raise HypothesisFailed("the full family is not a J-frame")
    if not m_idx:
        raise HypothesisFailed("the m-block is empty")
    m_rep = jframe_check(space, fam.subfamily(m_idx), tol)
    if not m_rep.is_j_frame:
        raise HypothesisFailed("the m-block is not a J-frame")
    n_rep = jframe_check(space, fam.subfamily(n_idx), tol) if n_idx else _empty_report(space, tol)
    mc, nc = m_rep.classification, n_rep.classification
    return SubsequenceReport(
        plus_spans_equal=mc.m_plus.same_span(nc.m_plus),
        minus_spans_equal=mc.m_minus.same_span(nc.m_minus),
        n_report=n_rep,
    )


def span_intersection(space: KreinSpace, A: Subspace, B: Subspace, tol: Optional[float] = None) -> Subspace:
    if A.is_trivial or B.is_trivial:
        return make_subspace(space, [], tol)
    qa, qb = A.orthonormal, B.orthonormal
    ns = sla.null_space(np.concatenate([qa, -qb], axis=1), rcond=rank_tol(space, tol) * 10)
    return make_subspace(space, qa @ ns[: qa.shape[1]], tol)


@dataclass(frozen=True, eq=False)
class IntersectionReport:
    intersection: Subspace
    intersection_regular: bool
    full_is_j_frame: bool
    m_report: SequenceReport
    n_report: SequenceReport

    @property
    def dim(self) -> int:
        return self.intersection.k

    @property
    def hypothesis_holds(self) -> bool:
        return self.full_is_j_frame and self.intersection_regular

    @property
    def conclusion_holds(self) -> bool:
        return self.m_report.is_frame_sequence and self.n_report.is_frame_sequence

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_holds or self.conclusion_holds


def intersection_test(space: KreinSpace, family, split, tol: Optional[float] = None) -> IntersectionReport:
    """Intersect the spans of the two blocks and frame-sequence-check both blocks."""
    fam = as_family(family)
    fam.check(space)
    m_idx, n_idx = _check_split(len(fam), split)
    span_m = make_subspace(space, fam.synthesis[:, list(m_idx)], tol)
    span_n = make_subspace(space, fam.synthesis[:, list(n_idx)], tol)
    inter = span_intersection(space, span_m, span_n, tol)
    empty = VectorFamily(np.zeros((space.dim, 1)))
    return IntersectionReport(
        intersection=inter,
        intersection_regular=inter.is_regular,
        full_is_j_frame=jframe_check(space, fam, tol).is_j_frame,
        m_report=frame_sequence_check(space, _sub(fam, m_idx) or empty, tol),
        n_report=frame_sequence_check(space, _sub(fam, n_idx) or empty, tol),
    )


@dataclass(frozen=True)
class ExactnessReport:
    is_exact: bool
    removable: tuple[int, ...]
    near_exact: bool
    proper: bool
    search_depth_hit: bool
    exact_after_removing: Optional[tuple[int, ...]]


def exactness(space: KreinSpace, family, depth: int = 3, tol: Optional[float] = None) -> ExactnessReport:
    """Exactness and near-exactness by breadth-first search over removal sets.

    ``removable`` lists every single index whose removal still leaves a
    J-frame.  Removal sets of size ``0..depth`` are tried in lexicographic order;
    the first that leaves an exact J-frame is reported.  ``search_depth_hit``
    is set when none was found but larger removal sets could still leave
    enough vectors to span the space.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    fam = as_family(family)
    fam.check(space)
    n = len(fam)
    memo: dict[frozenset, bool] = {}

    def is_frame(removed: frozenset) -> bool:
        if removed not in memo:
            if len(removed) >= n:
                memo[removed] = False
            else:
                memo[removed] = jframe_check(space, fam.without(removed), tol).is_j_frame
        return memo[removed]

    def is_exact(removed: frozenset) -> bool:
        return is_frame(removed) and not any(
            is_frame(removed | {i}) for i in range(n) if i not in removed
        )

    if not is_frame(frozenset()):
        raise NotAJFrame("exactness is only defined for J-frames")
    removable = tuple(i for i in range(n) if is_frame(frozenset({i})))
    found = None
    for r in range(0, min(depth, n - 1) + 1):
        for combo in combinations(range(n), r):
            if is_exact(frozenset(combo)):
                found = combo
                break
        if found is not None:
            break
    exact = not removable
    near = found is not None
    hit = not near and n - (depth + 1) >= space.dim
    return ExactnessReport(
        is_exact=exact,
        removable=removable,
        near_exact=near,
        proper=near and not exact,
        search_depth_hit=hit,
        exact_after_removing=tuple(found) if near else None,
    )
