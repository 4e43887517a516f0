"""Vector families, sign classification, the J-frame criterion and frame bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla

from kreinframes.errors import DimensionMismatch, InvalidSymmetry, NotDefinite
from kreinframes.kspace import KreinSpace, SymmetryReport
from kreinframes.subspace import Subspace, make_subspace

FAILURE_TAGS = (
    "neutral_vector",
    "plus_not_definite",
    "minus_not_definite",
    "plus_not_maximal",
    "minus_not_maximal",
)


@dataclass(frozen=True, eq=False)
class VectorFamily:
    """An ordered finite family ``{f_i}``; ``synthesis`` has the vectors as columns."""

    synthesis: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.synthesis)
        if t.ndim != 2 or t.shape[1] < 1:
            raise DimensionMismatch(f"synthesis matrix must be dim x N with N >= 1, got {t.shape}")
        if t.dtype.kind not in "fc":
            t = t.astype(float)
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "synthesis", t)

    @classmethod
    def from_vectors(cls, vectors: Sequence) -> "VectorFamily":
        vecs = [np.asarray(v) for v in vectors]
        if not vecs:
            raise DimensionMismatch("a family needs at least one vector")
        dims = {v.shape for v in vecs}
        if len(dims) != 1 or vecs[0].ndim != 1:
            raise DimensionMismatch(f"vectors must share one length, got shapes {sorted(dims)}")
        return cls(np.column_stack(vecs))

    @property
    def dim(self) -> int:
        return self.synthesis.shape[0]

    def __len__(self) -> int:
        return self.synthesis.shape[1]

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.synthesis[:, i] for i in range(len(self))]

    def synthesize(self, c) -> np.ndarray:
        return self.synthesis @ np.asarray(c)

    def subfamily(self, indices: Sequence[int]) -> "VectorFamily":
        return VectorFamily(self.synthesis[:, list(indices)])

    def without(self, indices) -> "VectorFamily":
        drop = set(indices)
        return self.subfamily([i for i in range(len(self)) if i not in drop])

    def scaled(self, c) -> "VectorFamily":
        return VectorFamily(self.synthesis * c)

    def check(self, space: KreinSpace) -> None:
        if self.dim != space.dim:
            raise DimensionMismatch(f"family vectors have length {self.dim}, space has dim {space.dim}")


def as_family(family) -> VectorFamily:
    if isinstance(family, VectorFamily):
        return family
    if isinstance(family, np.ndarray) and family.ndim == 2:
        return VectorFamily(family)
    return VectorFamily.from_vectors(family)


@dataclass(frozen=True, eq=False)
class Classification:
    i_plus: tuple[int, ...]
    i_minus: tuple[int, ...]
    i_neutral: tuple[int, ...]
    i_zero: tuple[int, ...]
    self_products: np.ndarray
    t_plus: np.ndarray
    t_minus: np.ndarray
    m_plus: Subspace
    m_minus: Subspace

    @property
    def neutral_offenders(self) -> tuple[int, ...]:
        """Nonzero neutral vectors (zero vectors are tolerated)."""
        zero = set(self.i_zero)
        return tuple(i for i in self.i_neutral if i not in zero)


def classify_family(space: KreinSpace, family, tol: Optional[float] = None) -> Classification:
    """Split indices by the sign of ``[f_i, f_i]``.

    ``i`` is positive when ``[f_i, f_i] > tol ||f_i||_J^2``, negative when
    ``[f_i, f_i] < -tol ||f_i||_J^2`` and neutral otherwise.  Zero vectors
    (J-norm below ``tol`` times the family's largest J-norm) land in the
    neutral bucket and are also listed in ``i_zero``.
    """
    tol = space.tol if tol is None else tol
    fam = as_family(family)
    fam.check(space)
    T = fam.synthesis
    G = space.gram
    selfp = np.real(np.einsum("ij,ij->j", T.conj(), G @ T))
    jn2 = np.real(np.einsum("ij,ij->j", T.conj(), space.j_gram @ T))
    theta = tol * jn2
    biggest = float(np.max(jn2)) if jn2.size else 0.0
    zero = jn2 <= (tol**2) * biggest
    plus = np.flatnonzero((selfp > theta) & ~zero)
    minus = np.flatnonzero((selfp < -theta) & ~zero)
    neutral = np.setdiff1d(np.arange(len(fam)), np.concatenate([plus, minus]))
    t_plus = T[:, plus]
    t_minus = T[:, minus]
    return Classification(
        i_plus=tuple(int(i) for i in plus),
        i_minus=tuple(int(i) for i in minus),
        i_neutral=tuple(int(i) for i in neutral),
        i_zero=tuple(int(i) for i in np.flatnonzero(zero)),
        self_products=selfp,
        t_plus=t_plus,
        t_minus=t_minus,
        m_plus=make_subspace(space, t_plus, tol),
        m_minus=make_subspace(space, t_minus, tol),
    )


def definiteness_margin(space: KreinSpace, M: Subspace, sign: str = "+") -> float:
    """Largest ``eps`` with ``+-[x, x] >= eps ||x||^2`` on ``M``; 0 if there is none."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if M.is_trivial:
        return 0.0
    h = M.orthonormal.conj().T @ space.gram @ M.orthonormal
    w = np.linalg.eigvalsh((h + h.conj().T) / 2)
    val = float(w[0]) if sign == "+" else float(-w[-1])
    return val if val > space.tol * space.gram_norm else 0.0


@dataclass(frozen=True)
class FrameBounds:
    """Optimal J-frame bounds; a side is ``None`` when its span is trivial.

    Positive side: ``A1 [f,f] <= sum |[f,f_i]|^2 <= B1 [f,f]`` on ``M+``.
    Negative side: ``A2 [f,f] <= sum |[f,f_i]|^2 <= B2 [f,f]`` on ``M-`` with
    ``B2 <= A2 < 0``.
    """

    A1: Optional[float] = None
    B1: Optional[float] = None
    A2: Optional[float] = None
    B2: Optional[float] = None

    def as_tuple(self):
        return (self.A1, self.B1, self.A2, self.B2)

    def scaled(self, c2: float) -> "FrameBounds":
        return FrameBounds(*(None if v is None else v * c2 for v in self.as_tuple()))


def _pencil_extremes(space: KreinSpace, M: Subspace, T_side: np.ndarray, sign: float) -> tuple[float, float]:
    B = M.orthonormal
    G = space.gram
    GB = G @ B
    S = T_side.conj().T @ GB  # rows: [b_j, f_i]^conj
    C = S.conj().T @ S
    N = sign * (B.conj().T @ GB)
    C = (C + C.conj().T) / 2
    N = (N + N.conj().T) / 2
    w = sla.eigh(C, N, eigvals_only=True)
    return float(w[0]), float(w[-1])


def side_bounds(space: KreinSpace, cls: Classification, side: str) -> Optional[tuple[float, float]]:
    if side == "+":
        M, T = cls.m_plus, cls.t_plus
        if M.is_trivial:
            return None
        if not M.is_uniformly_positive:
            raise NotDefinite("positive part does not span a uniformly J-positive subspace")
        lo, hi = _pencil_extremes(space, M, T, 1.0)
        return lo, hi
    M, T = cls.m_minus, cls.t_minus
    if M.is_trivial:
        return None
    if not M.is_uniformly_negative:
        raise NotDefinite("negative part does not span a uniformly J-negative subspace")
    lo, hi = _pencil_extremes(space, M, T, -1.0)
    return -lo, -hi


def optimal_bounds(space: KreinSpace, family, tol: Optional[float] = None) -> FrameBounds:
    """Tightest per-side constants, as extreme eigenvalues of definite pencils.

    Raises ``NotDefinite`` when a nontrivial side span is not uniformly
    definite in its sign.
    """
    cls = classify_family(space, family, tol)
    plus = side_bounds(space, cls, "+")
    minus = side_bounds(space, cls, "-")
    return FrameBounds(*(plus or (None, None)), *(minus or (None, None)))


@dataclass(frozen=True, eq=False)
class JFrameReport:
    is_j_frame: bool
    classification: Classification
    plus_margin: float
    minus_margin: float
    plus_maximal: bool
    minus_maximal: bool
    bounds: FrameBounds
    failure_reasons: tuple[str, ...] = field(default_factory=tuple)


def jframe_check(space: KreinSpace, family, tol: Optional[float] = None) -> JFrameReport:
    """Decide whether ``family`` is a J-frame for ``space``.

    The positive vectors must span a maximal uniformly J-positive subspace and
    the negative vectors a maximal uniformly J-negative one; nonzero neutral
    vectors disqualify the family.  Finite families are always Bessel.  Only
    the Gram matrix is consulted, never a fundamental symmetry.
    """
    cls = classify_family(space, family, tol)
    reasons = []
    if cls.neutral_offenders:
        reasons.append("neutral_vector")
    mp, mm = cls.m_plus, cls.m_minus
    plus_def = mp.is_uniformly_positive
    minus_def = mm.is_uniformly_negative
    plus_max = plus_def and mp.k == space.n_plus
    minus_max = minus_def and mm.k == space.n_minus
    if not plus_def:
        reasons.append("plus_not_definite")
    if not minus_def:
        reasons.append("minus_not_definite")
    if not plus_max:
        reasons.append("plus_not_maximal")
    if not minus_max:
        reasons.append("minus_not_maximal")
    plus = side_bounds(space, cls, "+") if plus_def else None
    minus = side_bounds(space, cls, "-") if minus_def else None
    return JFrameReport(
        is_j_frame=not reasons,
        classification=cls,
        plus_margin=mp.positive_margin if plus_def and not mp.is_trivial else 0.0,
        minus_margin=mm.negative_margin if minus_def and not mm.is_trivial else 0.0,
        plus_maximal=plus_max,
        minus_maximal=minus_max,
        bounds=FrameBounds(*(plus or (None, None)), *(minus or (None, None))),
        failure_reasons=tuple(reasons),
    )


@dataclass(frozen=True)
class EsmeralBounds:
    A: float
    B: float
    spans: bool


def esmeral_bounds(space: KreinSpace, symmetry: SymmetryReport, family) -> EsmeralBounds:
    """Bounds of ``A ||f||_J'^2 <= sum |[f_n, f]|^2 <= B ||f||_J'^2`` on the whole space.

    These depend on the chosen fundamental symmetry ``J'``.  If the family
    does not span the space, ``A`` is 0 and ``spans`` is False.
    """
    if not symmetry.is_valid:
        raise InvalidSymmetry("not a valid fundamental symmetry for this space")
    fam = as_family(family)
    fam.check(space)
    G = space.gram
    GT = G @ fam.synthesis
    C = GT @ GT.conj().T
    C = (C + C.conj().T) / 2
    W = symmetry.j_gram
    w = sla.eigh(C, (W + W.conj().T) / 2, eigvals_only=True)
    spans = make_subspace(space, fam.synthesis).k == space.dim
    lo = float(w[0]) if spans else 0.0
    return EsmeralBounds(A=max(lo, 0.0), B=float(w[-1]), spans=spans)
