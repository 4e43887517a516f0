"""Seeded generators and Monte-Carlo estimators used by the property suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from kreinframes.errors import (
    BadSignature,
    EmptySide,
    InvalidSamples,
    RetriesExhausted,
    SearchBudgetExhausted,
)
from kreinframes.frames import FrameBounds, VectorFamily, as_family, classify_family, jframe_check, optimal_bounds
from kreinframes.kspace import KreinSpace, make_krein_space
from kreinframes.subspace import Subspace, make_subspace
from kreinframes.transforms import coordinates, induced_space, project_family

COND_CAP = 1e3
MAX_RETRIES = 100


@dataclass(frozen=True)
class GenConfig:
    dim: int
    signature: tuple[int, int]
    family_size: int
    seed: int = 0
    scale: float = 1.0
    field: str = "real"

    def __post_init__(self):
        n_plus, n_minus = self.signature
        if self.dim < 1 or n_plus < 0 or n_minus < 0 or n_plus + n_minus != self.dim:
            raise BadSignature(f"signature {self.signature} does not fit dimension {self.dim}")
        if self.family_size < self.dim:
            raise BadSignature("family_size must be at least n+ + n-")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.field not in ("real", "complex"):
            raise ValueError("field must be 'real' or 'complex'")


def rng_for(seed, *stream) -> np.random.Generator:
    """Generator for ``seed`` mixed with extra integers (trial index, purpose tag)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


def _normal(rng: np.random.Generator, shape, field: str) -> np.ndarray:
    if field == "complex":
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    return rng.standard_normal(shape)


def _unitary(rng: np.random.Generator, n: int, field: str) -> np.ndarray:
    q, r = np.linalg.qr(_normal(rng, (n, n), field))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_krein(config: GenConfig) -> KreinSpace:
    """``G = S^* D S`` with ``D = diag(+1 x n+, -1 x n-)`` and ``cond(G) <= 1e3``."""
    rng = rng_for(config.seed, 0)
    n = config.dim
    n_plus, n_minus = config.signature
    D = np.diag([1.0] * n_plus + [-1.0] * n_minus)
    # singular values of S in [1, sqrt(cap)) keep cond(G) = cond(S)^2 under the cap
    log_spread = 0.5 * np.log(COND_CAP)
    for _ in range(MAX_RETRIES):
        s = np.exp(rng.uniform(0.0, log_spread, n))
        S = (_unitary(rng, n, config.field) * s) @ _unitary(rng, n, config.field)
        S = S * np.sqrt(config.scale)
        G = S.conj().T @ D @ S
        G = (G + G.conj().T) / 2
        if np.linalg.cond(G) <= COND_CAP:
            return make_krein_space(G)
    raise RetriesExhausted("could not draw a Gram matrix under the condition-number cap")


def _side_bases(space: KreinSpace, rng, contraction: float, field: str) -> tuple[np.ndarray, np.ndarray]:
    """Bases of a maximal uniformly positive and a maximal uniformly negative subspace.

    Both are graphs of strict contractions between the canonical parts,
    written in a basis ``W`` with ``W^* G W = diag(+-1)``.
    """
    n_plus, n_minus = space.signature
    w, u = np.linalg.eigh(space.gram)
    order = np.argsort(-w, kind="stable")
    w, u = w[order], u[:, order]
    W = u / np.sqrt(np.abs(w))
    Wp, Wm = W[:, :n_plus], W[:, n_plus:]

    def contraction_matrix(rows, cols):
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols))
        K = _normal(rng, (rows, cols), field)
        return K * (contraction * rng.uniform(0.1, 1.0) / np.linalg.norm(K, 2))

    Bp = Wp + Wm @ contraction_matrix(n_minus, n_plus)
    Bm = Wm + Wp @ contraction_matrix(n_plus, n_minus)
    return Bp, Bm


def _well_conditioned(rng, k: int, field: str) -> np.ndarray:
    if k == 0:
        return np.zeros((0, 0))
    s = np.exp(rng.uniform(0.0, np.log(3.0), k))
    return (_unitary(rng, k, field) * s) @ _unitary(rng, k, field)


def random_jframe(space: KreinSpace, family_size: int, seed: int, contraction: float = 0.5) -> VectorFamily:
    """A J-frame of ``family_size`` vectors.

    ``n+`` vectors span a maximal uniformly positive subspace, ``n-`` span a
    maximal uniformly negative one, and the remaining vectors are random
    combinations inside one of those spans.  The order is shuffled.
    """
    n_plus, n_minus = space.signature
    if family_size < n_plus + n_minus:
        raise BadSignature("family_size must be at least n+ + n-")
    field = space.field_kind
    for attempt in range(MAX_RETRIES):
        rng = rng_for(seed, 1, attempt)
        Bp, Bm = _side_bases(space, rng, contraction, field)
        Fp = Bp @ _well_conditioned(rng, n_plus, field)
        Fm = Bm @ _well_conditioned(rng, n_minus, field)
        extra = []
        for _ in range(family_size - n_plus - n_minus):
            if n_minus == 0 or (n_plus > 0 and rng.uniform() < n_plus / space.dim):
                side, k = Fp, n_plus
            else:
                side, k = Fm, n_minus
            c = _normal(rng, k, field)
            extra.append(side @ (c / np.linalg.norm(c)))
        cols = [Fp, Fm] + [e[:, None] for e in extra]
        T = np.concatenate(cols, axis=1)
        T = T[:, rng.permutation(T.shape[1])]
        fam = VectorFamily(T)
        if jframe_check(space, fam).is_j_frame:
            return fam
    raise RetriesExhausted("could not draw a J-frame within the retry cap")


def random_definite_subspace(space: KreinSpace, seed: int, sign: str = "+", dim: Optional[int] = None) -> Subspace:
    """A uniformly definite subspace; ``dim=None`` gives a maximal one."""
    rng = rng_for(seed, 2)
    Bp, Bm = _side_bases(space, rng, 0.5, space.field_kind)
    B = Bp if sign == "+" else Bm
    k = B.shape[1] if dim is None else dim
    if k > B.shape[1]:
        raise BadSignature("requested subspace dimension exceeds the signature")
    mix = _normal(rng, (B.shape[1], k), space.field_kind)
    return make_subspace(space, B @ mix)


def random_regular_subspace(space: KreinSpace, seed: int, k: Optional[int] = None) -> Subspace:
    """A random subspace with invertible restricted Gram (generic, then checked)."""
    rng = rng_for(seed, 3)
    for _ in range(MAX_RETRIES):
        kk = int(rng.integers(1, space.dim + 1)) if k is None else k
        M = make_subspace(space, _normal(rng, (space.dim, kk), space.field_kind))
        h = M.orthonormal.conj().T @ space.gram @ M.orthonormal
        if M.is_regular and np.min(np.abs(np.linalg.eigvalsh(h))) > 1e-3 * space.gram_norm:
            return M
    raise RetriesExhausted("could not draw a regular subspace")


def sampled_bounds(space: KreinSpace, family, samples: int, seed: int) -> FrameBounds:
    """Monte-Carlo estimates of the optimal bounds.

    On each side span the ratio ``sum |[f, f_i]|^2 / [f, f]`` is evaluated
    directly at ``samples`` random vectors that are unit in the side's own
    norm ``+-[f, f]``, and its extremes are returned.  Sampling can only
    under-approximate the true interval.
    """
    if samples < 1:
        raise InvalidSamples("samples must be a positive integer")
    cls = classify_family(space, family)
    if cls.m_plus.is_trivial and cls.m_minus.is_trivial:
        raise EmptySide("family has neither positive nor negative vectors")
    rng = rng_for(seed, 4)
    G = space.gram
    out: list[Optional[float]] = []
    for M, T, sign in ((cls.m_plus, cls.t_plus, 1.0), (cls.m_minus, cls.t_minus, -1.0)):
        if M.is_trivial:
            out += [None, None]
            continue
        B = M.orthonormal
        h = sign * (B.conj().T @ G @ B)
        L = np.linalg.cholesky((h + h.conj().T) / 2)
        C = _normal(rng, (B.shape[1], samples), space.field_kind)
        C /= np.linalg.norm(C, axis=0)
        F = B @ sla.solve_triangular(L.conj().T, C, lower=False)
        num = np.sum(np.abs(T.conj().T @ G @ F) ** 2, axis=0)
        den = np.real(np.einsum("ij,ij->j", F.conj(), G @ F))
        ratio = num / den
        if sign > 0:
            out += [float(ratio.min()), float(ratio.max())]
        else:
            out += [float(ratio.max()), float(ratio.min())]
    return FrameBounds(*out)


def j_unitary(space: KreinSpace, rng, strength: float = 1.0) -> np.ndarray:
    """``U = expm(G^{-1} S)`` with ``S`` skew-Hermitian, so that ``U^* G U = G``."""
    n = space.dim
    X = _normal(rng, (n, n), space.field_kind)
    S = (X - X.conj().T) / 2
    S *= strength / max(np.linalg.norm(S, 2), 1e-300)
    return sla.expm(np.linalg.solve(space.gram, S))


@dataclass(frozen=True, eq=False)
class CounterexampleInstance:
    space: KreinSpace
    family: VectorFamily
    subspace: Subspace


def projected_bounds(space: KreinSpace, M: Subspace, family) -> FrameBounds:
    rep = project_family(space, M, family)
    return optimal_bounds(rep.sub_space, coordinates(M, rep.projected.synthesis))


def _rel_gap(a: FrameBounds, b: FrameBounds) -> float:
    gaps = []
    for x, y in zip(a.as_tuple(), b.as_tuple()):
        if x is None or y is None:
            continue
        gaps.append(abs(x - y) / max(abs(x), abs(y)))
    return max(gaps) if gaps else 0.0


def bounds_gap(a: FrameBounds, b: FrameBounds) -> float:
    """Largest relative difference between matching entries."""
    return _rel_gap(a, b)


def projection_bounds_counterexample(
    seed: int = 1, budget: int = 200, min_gap: float = 0.10
) -> tuple[CounterexampleInstance, CounterexampleInstance]:
    """Two J-frames with identical optimal bounds whose projections differ.

    The second family is ``U F`` for a J-unitary ``U``; that preserves the
    indefinite form, so both families have the same optimal bounds.  Both are
    then projected onto one maximal uniformly positive subspace, where their
    optimal bounds differ by at least ``min_gap`` (relative).
    """
    for trial in range(budget):
        rng = rng_for(seed, 5, trial)
        cfg = GenConfig(dim=3, signature=(2, 1), family_size=4, seed=int(rng.integers(2**32)))
        space = random_krein(cfg)
        fam = random_jframe(space, cfg.family_size, int(rng.integers(2**32)))
        U = j_unitary(space, rng, strength=float(rng.uniform(0.3, 1.5)))
        fam2 = VectorFamily(U @ fam.synthesis)
        if not jframe_check(space, fam2).is_j_frame:
            continue
        if _rel_gap(optimal_bounds(space, fam), optimal_bounds(space, fam2)) > 1e-9:
            continue
        M = random_definite_subspace(space, int(rng.integers(2**32)), "+")
        try:
            gap = _rel_gap(projected_bounds(space, M, fam), projected_bounds(space, M, fam2))
        except Exception:
            continue
        if gap >= min_gap:
            return CounterexampleInstance(space, fam, M), CounterexampleInstance(space, fam2, M)
    raise SearchBudgetExhausted(f"no counterexample within {budget} trials for seed {seed}")


def random_frame_in(space: KreinSpace, M: Subspace, family_size: int, seed: int) -> VectorFamily:
    """A J-frame of the Krein space ``(M, [., .])``, in ambient coordinates."""
    sub = induced_space(space, M)
    fam = random_jframe(sub, family_size, seed)
    return VectorFamily(M.orthonormal @ fam.synthesis)


def random_split_family(space: KreinSpace, seed: int) -> tuple[VectorFamily, tuple[tuple[int, ...], tuple[int, ...]]]:
    """A J-frame with a partition whose first block is itself a J-frame.

    Both blocks draw their vectors from the same maximal definite spans, so
    the whole family is a J-frame; the second block gets a random number of
    vectors per side and may or may not span.
    """
    rng = rng_for(seed, 6)
    field = space.field_kind
    n_plus, n_minus = space.signature
    Bp, Bm = _side_bases(space, rng, 0.5, field)
    m_cols = [Bp @ _well_conditioned(rng, n_plus, field), Bm @ _well_conditioned(rng, n_minus, field)]
    for _ in range(int(rng.integers(0, 3))):
        side = Bp if (n_minus == 0 or (n_plus > 0 and rng.uniform() < 0.5)) else Bm
        m_cols.append(side @ _normal(rng, (side.shape[1], 1), field))
    a = int(rng.integers(0, n_plus + 2)) if n_plus else 0
    b = int(rng.integers(0, n_minus + 2)) if n_minus else 0
    n_cols = [Bp @ _normal(rng, (n_plus, a), field), Bm @ _normal(rng, (n_minus, b), field)]
    m_block = np.concatenate(m_cols, axis=1)
    n_block = np.concatenate(n_cols, axis=1)
    T = np.concatenate([m_block, n_block], axis=1)
    perm = rng.permutation(T.shape[1])
    T = T[:, perm]
    where = np.argsort(perm)  # original column -> new position
    m_idx = tuple(sorted(int(where[i]) for i in range(m_block.shape[1])))
    n_idx = tuple(sorted(int(where[i]) for i in range(m_block.shape[1], T.shape[1])))
    return VectorFamily(T), (m_idx, n_idx)
