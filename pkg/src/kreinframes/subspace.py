"""Subspaces of a Krein space and the two kinds of projections onto them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla

from kreinframes.errors import DimensionMismatch, InvalidSymmetry, NotRegular
from kreinframes.kspace import EPS, KreinSpace, SymmetryReport, _norm

TRIVIAL = "trivial"
POSITIVE = "uniformly_positive"
NEGATIVE = "uniformly_negative"
INDEFINITE = "indefinite_regular"
DEGENERATE = "degenerate"


def rank_tol(space: KreinSpace, tol: Optional[float] = None) -> float:
    tol = space.tol if tol is None else tol
    return max(tol, space.dim * EPS)


def _stack(space: KreinSpace, vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        if vectors.shape[0] != space.dim:
            raise DimensionMismatch(f"columns must have length {space.dim}, got {vectors.shape[0]}")
        return vectors
    vecs = [np.asarray(v) for v in vectors]
    for i, v in enumerate(vecs):
        if v.ndim != 1 or v.shape[0] != space.dim:
            raise DimensionMismatch(f"vector {i} has shape {v.shape}, expected ({space.dim},)")
    if not vecs:
        return np.zeros((space.dim, 0))
    return np.column_stack(vecs)


def _sign_fix(q: np.ndarray) -> np.ndarray:
    # make the largest-magnitude entry of every column real positive
    if q.shape[1] == 0:
        return q
    idx = np.argmax(np.abs(q), axis=0)
    piv = q[idx, np.arange(q.shape[1])]
    return q * (np.abs(piv) / piv).conj()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace given by a basis, classified against the indefinite form.

    ``basis`` keeps the selected input vectors (in input order);
    ``orthonormal`` is a Euclidean orthonormal basis of the same span used for
    all numerics.  Margins are the best constants ``eps`` in
    ``+-[x, x] >= eps ||x||^2``; they are ``None`` for the trivial subspace.
    """

    space: KreinSpace
    basis: np.ndarray
    orthonormal: np.ndarray
    restricted_gram: np.ndarray
    definiteness: str
    positive_margin: Optional[float]
    negative_margin: Optional[float]
    is_regular: bool
    is_maximal_definite: bool

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    @property
    def is_uniformly_positive(self) -> bool:
        return self.definiteness in (TRIVIAL, POSITIVE)

    @property
    def is_uniformly_negative(self) -> bool:
        return self.definiteness in (TRIVIAL, NEGATIVE)

    @property
    def is_definite(self) -> bool:
        return self.definiteness in (POSITIVE, NEGATIVE)

    @property
    def margin(self) -> Optional[float]:
        if self.definiteness == POSITIVE:
            return self.positive_margin
        if self.definiteness == NEGATIVE:
            return self.negative_margin
        return None

    def contains(self, x, tol: Optional[float] = None) -> bool:
        tol = rank_tol(self.space, tol)
        x = self.space.check_vector(x)
        nx = np.linalg.norm(x)
        if nx == 0:
            return True
        q = self.orthonormal
        return bool(np.linalg.norm(x - q @ (q.conj().T @ x)) <= tol * nx * 10)

    def same_span(self, other: "Subspace", tol: Optional[float] = None) -> bool:
        if self.k != other.k:
            return False
        if self.k == 0:
            return True
        tol = rank_tol(self.space, tol)
        q = self.orthonormal
        resid = other.orthonormal - q @ (q.conj().T @ other.orthonormal)
        return bool(_norm(resid) <= 10 * tol)


def _classify(space: KreinSpace, q: np.ndarray, tol: float):
    k = q.shape[1]
    h = q.conj().T @ space.gram @ q
    h = (h + h.conj().T) / 2
    if k == 0:
        return h, TRIVIAL, None, None, True, True
    w = np.linalg.eigvalsh(h)
    thr = tol * space.gram_norm
    regular = bool(np.min(np.abs(w)) > thr)
    pos = float(w[0]) if w[0] > thr else 0.0
    neg = float(-w[-1]) if w[-1] < -thr else 0.0
    if pos > 0:
        kind, maximal = POSITIVE, k == space.n_plus
    elif neg > 0:
        kind, maximal = NEGATIVE, k == space.n_minus
    elif regular:
        kind, maximal = INDEFINITE, False
    else:
        kind, maximal = DEGENERATE, False
    return h, kind, pos, neg, regular, maximal


def _from_orthonormal(space: KreinSpace, basis: np.ndarray, q: np.ndarray, tol: float) -> Subspace:
    h, kind, pos, neg, regular, maximal = _classify(space, q, tol)
    for arr in (basis, q, h):
        arr.setflags(write=False)
    return Subspace(
        space=space,
        basis=basis,
        orthonormal=q,
        restricted_gram=basis.conj().T @ space.gram @ basis if basis.size else h,
        definiteness=kind,
        positive_margin=pos,
        negative_margin=neg,
        is_regular=regular,
        is_maximal_definite=maximal,
    )


def make_subspace(space: KreinSpace, spanning: Sequence | np.ndarray, tol: Optional[float] = None) -> Subspace:
    """Reduce a spanning set to a basis and classify the span.

    Basis extraction is a column-pivoted QR factorisation; columns whose pivot
    falls below the relative rank threshold are dropped.  Surviving columns are
    kept in their input order.
    """
    tol = space.tol if tol is None else tol
    a = _stack(space, spanning)
    if a.shape[1] == 0 or not np.any(a):
        empty = np.zeros((space.dim, 0), dtype=a.dtype if a.size else float)
        return _from_orthonormal(space, empty, empty.copy(), tol)
    # scale columns to unit length so pivoting reflects directions, not magnitudes
    norms = np.linalg.norm(a, axis=0)
    nz = np.flatnonzero(norms > 0)
    a_nz = a[:, nz] / norms[nz]
    _, r, piv = sla.qr(a_nz, mode="economic", pivoting=True)
    d = np.abs(np.diag(r))
    rank = int(np.sum(d > rank_tol(space, tol) * d[0]))
    keep = np.sort(nz[piv[:rank]])
    basis = np.array(a[:, keep])
    q, _ = np.linalg.qr(basis / np.linalg.norm(basis, axis=0))
    return _from_orthonormal(space, basis, _sign_fix(q), tol)


def image(space: KreinSpace, A, M: Subspace, tol: Optional[float] = None) -> Subspace:
    """The subspace ``A M`` for a square matrix ``A``."""
    A = space.check_matrix(A)
    return make_subspace(space, A @ M.basis, tol)


def whole_space(space: KreinSpace) -> Subspace:
    return make_subspace(space, np.eye(space.dim))


def j_complement(space: KreinSpace, M: Subspace) -> Subspace:
    """``M^[perp] = {x : [x, m] = 0 for all m in M}``, the kernel of ``B^* G``."""
    if M.is_trivial:
        return whole_space(space)
    constraints = M.orthonormal.conj().T @ space.gram
    ns = sla.null_space(constraints, rcond=rank_tol(space) * 10)
    return make_subspace(space, _sign_fix(ns), space.tol)


@dataclass(frozen=True, eq=False)
class Operator:
    matrix: np.ndarray
    role: str = "general"

    def is_valid(self, space: KreinSpace, metric: Optional[np.ndarray] = None, tol: Optional[float] = None) -> bool:
        """Check the defining identities of the role.

        ``j_projection``: idempotent and ``G P = P^* G``.
        ``j_metric_projection``: idempotent and selfadjoint for ``metric``
        (defaults to the canonical J-metric ``|G|``).
        """
        tol = rank_tol(space, tol)
        P = self.matrix
        scale = max(1.0, _norm(P))
        idem = _norm(P @ P - P) <= tol * scale * scale
        if self.role == "j_projection":
            W = space.gram
        elif self.role == "j_metric_projection":
            W = space.j_gram if metric is None else metric
        else:
            return True
        wn = max(_norm(W), 1e-300)
        selfadj = _norm(W @ P - P.conj().T @ W) <= tol * wn * scale
        return bool(idem and selfadj)


def j_projection(space: KreinSpace, M: Subspace) -> Operator:
    """The J-orthogonal projection onto ``M`` parallel to ``M^[perp]``."""
    if not M.is_regular:
        raise NotRegular("subspace is degenerate; no J-projection onto it exists")
    B = M.orthonormal
    if B.shape[1] == 0:
        return Operator(np.zeros((space.dim, space.dim)), "j_projection")
    G = space.gram
    P = B @ np.linalg.solve(B.conj().T @ G @ B, B.conj().T @ G)
    return Operator(P, "j_projection")


def q_projection(space: KreinSpace, symmetry: SymmetryReport | None, M: Subspace) -> Operator:
    """Orthogonal projection onto ``M`` in the Hilbert space ``(K, [., J .])``.

    ``symmetry=None`` selects the canonical fundamental symmetry.
    """
    if symmetry is None:
        W = space.j_gram
    else:
        if not symmetry.is_valid:
            raise InvalidSymmetry("symmetry report is not a valid fundamental symmetry")
        W = symmetry.j_gram
        if W.shape != (space.dim, space.dim):
            raise DimensionMismatch("symmetry does not match the space dimension")
    if M.basis.shape[0] != space.dim:
        raise DimensionMismatch("subspace does not live in this space")
    B = M.orthonormal
    if B.shape[1] == 0:
        return Operator(np.zeros((space.dim, space.dim)), "j_metric_projection")
    Q = B @ np.linalg.solve(B.conj().T @ W @ B, B.conj().T @ W)
    return Operator(Q, "j_metric_projection")


def pinv_in_metric(A: np.ndarray, metric: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Moore-Penrose inverse of ``A`` in the inner product ``<x, y> = y^* W x``."""
    L = np.linalg.cholesky(metric).conj().T  # W = L^* L
    return np.linalg.solve(L, np.linalg.pinv(L @ A @ np.linalg.inv(L), rcond=rcond) @ L)
