"""Krein spaces realised by a Hermitian invertible Gram matrix.

The indefinite form is ``[x, y] = y^* G x`` (linear in the first slot).  The
canonical fundamental symmetry is the sign function of ``G``,
``J = U sign(L) U^*`` for ``G = U L U^*``, so that ``G J = |G|`` is the Gram
matrix of the associated Hilbert space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from kreinframes.errors import Degenerate, DimensionMismatch, NonHermitian, NotSquare

DEFAULT_TOL = 1e-9
EPS = np.finfo(float).eps


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a)
    if m.dtype.kind not in "fc":
        m = m.astype(float)
    return m


def _norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


@dataclass(frozen=True, eq=False)
class KreinSpace:
    """A finite-dimensional Krein space with its canonical decomposition.

    ``j_gram`` is ``G J`` for the canonical symmetry, i.e. ``|G|``.
    """

    gram: np.ndarray
    canonical_J: np.ndarray
    p_plus: np.ndarray
    p_minus: np.ndarray
    signature: tuple[int, int]
    field_kind: str
    j_gram: np.ndarray = field(repr=False)
    gram_norm: float = field(repr=False)
    tol: float = DEFAULT_TOL

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def n_plus(self) -> int:
        return self.signature[0]

    @property
    def n_minus(self) -> int:
        return self.signature[1]

    def check_vector(self, x) -> np.ndarray:
        v = np.asarray(x)
        if v.ndim != 1 or v.shape[0] != self.dim:
            raise DimensionMismatch(f"expected a vector of length {self.dim}, got shape {v.shape}")
        return v

    def check_matrix(self, a, name: str = "matrix") -> np.ndarray:
        m = _as_matrix(a)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"{name} must be {self.dim}x{self.dim}, got {m.shape}")
        return m


def make_krein_space(gram, tol: float = DEFAULT_TOL) -> KreinSpace:
    g = _as_matrix(gram)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
        raise NotSquare(f"Gram matrix must be square and non-empty, got shape {g.shape}")
    n = g.shape[0]
    scale = _norm(g)
    if _norm(g - g.conj().T) > tol * max(scale, 1.0):
        raise NonHermitian("Gram matrix is not Hermitian within tolerance")
    g = (g + g.conj().T) / 2
    if np.iscomplexobj(g) and not np.any(g.imag):
        g = g.real.copy()
    sv = np.linalg.svd(g, compute_uv=False)
    if sv[-1] <= n * EPS * sv[0]:
        raise Degenerate(
            f"Gram matrix is numerically singular (sigma_min={sv[-1]:.3e}, sigma_max={sv[0]:.3e})"
        )

    w, u = np.linalg.eigh(g)
    order = np.argsort(-w, kind="stable")
    w, u = w[order], u[:, order]
    sign = np.sign(w)
    J = (u * sign) @ u.conj().T
    abs_g = (u * np.abs(w)) @ u.conj().T
    abs_g = (abs_g + abs_g.conj().T) / 2
    eye = np.eye(n)
    space = KreinSpace(
        gram=g,
        canonical_J=J,
        p_plus=(eye + J) / 2,
        p_minus=(eye - J) / 2,
        signature=(int(np.sum(w > 0)), int(np.sum(w < 0))),
        field_kind="complex" if np.iscomplexobj(g) else "real",
        j_gram=abs_g,
        gram_norm=float(sv[0]),
        tol=tol,
    )
    for arr in (space.gram, space.canonical_J, space.p_plus, space.p_minus, abs_g):
        arr.setflags(write=False)
    return space


def indefinite_inner(space: KreinSpace, x, y):
    """Return ``[x, y] = y^* G x``."""
    x = space.check_vector(x)
    y = space.check_vector(y)
    return np.vdot(y, space.gram @ x)


def j_inner(space: KreinSpace, x, y, symmetry: Optional[np.ndarray] = None):
    """The J-metric ``[x, J y]``; canonical symmetry unless one is supplied."""
    J = space.canonical_J if symmetry is None else space.check_matrix(symmetry, "symmetry")
    return indefinite_inner(space, x, J @ space.check_vector(y))


@dataclass(frozen=True, eq=False)
class SymmetryReport:
    symmetry: np.ndarray
    is_involution: bool
    is_j_selfadjoint: bool
    is_positivizing: bool
    j_gram: Optional[np.ndarray]

    @property
    def is_valid(self) -> bool:
        return self.is_involution and self.is_j_selfadjoint and self.is_positivizing


def validate_symmetry(space: KreinSpace, candidate, tol: Optional[float] = None) -> SymmetryReport:
    """Check whether ``candidate`` is a fundamental symmetry of ``space``.

    A fundamental symmetry is an involution that is selfadjoint for the
    indefinite form and turns it into a positive definite one, ``G J' > 0``.
    """
    tol = space.tol if tol is None else tol
    Jc = space.check_matrix(candidate, "symmetry")
    n = space.dim
    jn = _norm(Jc)
    involution = _norm(Jc @ Jc - np.eye(n)) <= tol * max(1.0, jn * jn)
    G = space.gram
    GJ = G @ Jc
    selfadj = _norm(GJ - Jc.conj().T @ G) <= tol * max(1.0, space.gram_norm * jn)
    H = (GJ + GJ.conj().T) / 2
    w = np.linalg.eigvalsh(H)
    positivizing = bool(w[0] > n * EPS * max(abs(w[-1]), 1.0) and w[0] > 0)
    valid = involution and selfadj and positivizing
    return SymmetryReport(
        symmetry=Jc,
        is_involution=bool(involution),
        is_j_selfadjoint=bool(selfadj),
        is_positivizing=positivizing,
        j_gram=H if valid else None,
    )


def j_adjoint(space: KreinSpace, T) -> np.ndarray:
    """Adjoint with respect to the indefinite form: ``G^{-1} T^* G``."""
    T = space.check_matrix(T)
    return np.linalg.solve(space.gram, T.conj().T @ space.gram)
