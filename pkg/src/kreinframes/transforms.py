"""Projecting J-frames onto regular subspaces and merging frames of complementary parts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from kreinframes.errors import VectorOutsideSubspace
from kreinframes.frames import FrameBounds, JFrameReport, VectorFamily, as_family, jframe_check
from kreinframes.kspace import KreinSpace, _norm, make_krein_space
from kreinframes.subspace import Subspace, j_complement, j_projection, rank_tol


def induced_space(space: KreinSpace, M: Subspace) -> KreinSpace:
    """``(M, [., .])`` in the coordinates of ``M.orthonormal``."""
    B = M.orthonormal
    h = B.conj().T @ space.gram @ B
    return make_krein_space((h + h.conj().T) / 2, space.tol)


def coordinates(M: Subspace, vectors: np.ndarray) -> np.ndarray:
    return M.orthonormal.conj().T @ vectors


def _check_inside(space: KreinSpace, S: Subspace, vectors: np.ndarray, tol) -> tuple[Optional[KreinSpace], Optional[JFrameReport]]:
    # the zero space carries no structure; every family in it is vacuously a J-frame
    if S.is_trivial:
        return None, None
    sub = induced_space(space, S)
    return sub, jframe_check(sub, coordinates(S, vectors), tol)


@dataclass(frozen=True, eq=False)
class ProjectedFamilyReport:
    projected: VectorFamily
    subspace: Subspace
    projection: np.ndarray
    sub_space: Optional[KreinSpace]
    sub_report: Optional[JFrameReport]
    hypothesis_definite: bool
    commuting_case: bool

    @property
    def is_j_frame(self) -> bool:
        """J-frame verdict inside the subspace (vacuously true for ``{0}``)."""
        return self.sub_report is None or self.sub_report.is_j_frame


def project_family(space: KreinSpace, M: Subspace, family, tol: Optional[float] = None) -> ProjectedFamilyReport:
    """Apply the J-projection onto ``M`` to every vector and test the result in ``(M, [., .])``.

    For the complementary projection ``I - P_M`` call this again with
    ``j_complement(space, M)``.
    """
    tol = space.tol if tol is None else tol
    fam = as_family(family)
    fam.check(space)
    P = j_projection(space, M).matrix
    projected = VectorFamily(P @ fam.synthesis)
    sub, sub_report = _check_inside(space, M, projected.synthesis, tol)
    J = space.canonical_J
    commuting = _norm(P @ J - J @ P) <= rank_tol(space, tol) * max(1.0, _norm(P))
    return ProjectedFamilyReport(
        projected=projected,
        subspace=M,
        projection=P,
        sub_space=sub,
        sub_report=sub_report,
        hypothesis_definite=M.is_definite,
        commuting_case=bool(commuting),
    )


def _envelope(parts: list[FrameBounds]) -> FrameBounds:
    def pick(vals, fn):
        vals = [v for v in vals if v is not None]
        return fn(vals) if vals else None

    return FrameBounds(
        A1=pick([b.A1 for b in parts], min),
        B1=pick([b.B1 for b in parts], max),
        A2=pick([b.A2 for b in parts], max),
        B2=pick([b.B2 for b in parts], min),
    )


def _encloses(outer: FrameBounds, inner: FrameBounds, rtol: float) -> bool:
    def le(a, b):
        if a is None or b is None:
            return a is None and b is None
        return a <= b + rtol * max(abs(a), abs(b))

    return (
        le(outer.A1, inner.A1)
        and le(inner.B1, outer.B1)
        and le(inner.A2, outer.A2)
        and le(outer.B2, inner.B2)
    )


@dataclass(frozen=True, eq=False)
class UnionReport:
    report: JFrameReport
    f_report: Optional[JFrameReport]
    g_report: Optional[JFrameReport]
    f_bounds: FrameBounds
    g_bounds: FrameBounds
    common_bounds: FrameBounds
    bounds_enclosed: bool

    @property
    def parts_are_j_frames(self) -> bool:
        return all(r is None or r.is_j_frame for r in (self.f_report, self.g_report))

    @property
    def holds(self) -> bool:
        return self.report.is_j_frame and self.bounds_enclosed


def union_families(
    space: KreinSpace,
    M: Subspace,
    f_family,
    g_family,
    tol: Optional[float] = None,
    rtol: float = 1e-8,
) -> UnionReport:
    """Merge a family in ``M`` with a family in ``M^[perp]`` and check the union.

    Each part is judged as a J-frame of its own subspace.  The union's optimal
    bounds are compared against the envelope of the parts' bounds (smallest
    lower, largest upper on each side) with relative tolerance ``rtol``.
    """
    tol = space.tol if tol is None else tol
    f = as_family(f_family)
    g = as_family(g_family)
    f.check(space)
    g.check(space)
    P = j_projection(space, M).matrix
    Mc = j_complement(space, M)
    rt = rank_tol(space, tol) * 10
    for i, v in enumerate(f.vectors):
        if np.linalg.norm(v - P @ v) > rt * max(np.linalg.norm(v), 1e-300) * max(1.0, _norm(P)):
            raise VectorOutsideSubspace(f"f_family[{i}] is not in M")
    for i, v in enumerate(g.vectors):
        if np.linalg.norm(P @ v) > rt * max(np.linalg.norm(v), 1e-300) * max(1.0, _norm(P)):
            raise VectorOutsideSubspace(f"g_family[{i}] is not in the J-orthogonal complement of M")

    _, f_report = _check_inside(space, M, f.synthesis, tol)
    _, g_report = _check_inside(space, Mc, g.synthesis, tol)
    f_bounds = f_report.bounds if f_report else FrameBounds()
    g_bounds = g_report.bounds if g_report else FrameBounds()
    union = VectorFamily(np.concatenate([f.synthesis, g.synthesis], axis=1))
    report = jframe_check(space, union, tol)
    common = _envelope([f_bounds, g_bounds])
    return UnionReport(
        report=report,
        f_report=f_report,
        g_report=g_report,
        f_bounds=f_bounds,
        g_bounds=g_bounds,
        common_bounds=common,
        bounds_enclosed=_encloses(common, report.bounds, rtol),
    )
