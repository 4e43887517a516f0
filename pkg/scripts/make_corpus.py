"""Regenerate the example corpus in ``corpus/``.

Hand-written examples are encoded directly; the counterexample pair and the
random split/merge instances come from the seeded generators and are frozen
as written.
"""

import argparse
import pathlib

import numpy as np

from kreinframes import oracle
from kreinframes.io import canonical_json, problem_dict, to_plain
from kreinframes.kspace import make_krein_space
from kreinframes.subspace import j_complement

ROOT = pathlib.Path(__file__).resolve().parents[1] / "corpus"
S3 = np.sqrt(3.0)


def example33() -> dict:
    space = make_krein_space(np.diag([1.0, -1.0, 1.0]))
    vectors = np.array([[1, 1, -1001], [10, -1 / 200, -5], [0, 1, 0]], dtype=float).T
    return problem_dict(space, vectors, np.eye(3)[:, :2], "three-vector J-frame; subspace span{e1, e2}")


def example210(symmetry: np.ndarray, label: str) -> dict:
    space = make_krein_space(np.diag([1.0, -1.0, 1.0, -1.0]))
    out = problem_dict(space, np.eye(4), description=f"standard basis, dim-4 truncation, symmetry {label}")
    out["symmetry"] = to_plain(symmetry)
    return out


def counterexample_pair(seed: int) -> tuple[dict, dict]:
    a, b = oracle.projection_bounds_counterexample(seed)
    note = f"J-unitarily related pair, equal optimal bounds, different after projection (seed {seed})"
    return (
        problem_dict(a.space, a.family.synthesis, a.subspace.basis, note + ", member a"),
        problem_dict(b.space, b.family.synthesis, b.subspace.basis, note + ", member b"),
    )


def split_instance(seed: int) -> dict:
    space = oracle.random_krein(oracle.GenConfig(dim=5, signature=(3, 2), family_size=5, seed=seed))
    fam, (m_idx, n_idx) = oracle.random_split_family(space, seed)
    out = problem_dict(space, fam.synthesis, description=f"random split family (seed {seed})")
    out["split"] = [[i + 1 for i in m_idx], [i + 1 for i in n_idx]]
    return out


def merge_pair(seed: int) -> tuple[dict, dict]:
    space = oracle.random_krein(oracle.GenConfig(dim=4, signature=(2, 2), family_size=4, seed=seed))
    M = oracle.random_regular_subspace(space, seed, k=2)
    Mc = j_complement(space, M)
    f = oracle.random_frame_in(space, M, M.k + 1, seed + 1)
    g = oracle.random_frame_in(space, Mc, Mc.k + 1, seed + 2)
    note = f"frames of a regular subspace and its J-orthogonal complement (seed {seed})"
    return (
        problem_dict(space, f.synthesis, M.basis, note + ", subspace part"),
        problem_dict(space, g.synthesis, M.basis, note + ", complement part"),
    )


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=pathlib.Path, default=ROOT)
    args = parser.parse_args()
    J2 = np.array([[2, -S3, 0, 0], [S3, -2, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    docs = {
        "example33.json": example33(),
        "example210_dim4.json": example210(J2, "J2"),
        "example210_dim4_j1.json": example210(np.diag([1.0, -1.0, 1.0, -1.0]), "J1"),
        "split_dim5.json": split_instance(9),
    }
    docs["counterexample_a.json"], docs["counterexample_b.json"] = counterexample_pair(1)
    docs["merge_f.json"], docs["merge_g.json"] = merge_pair(3)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        (args.out / name).write_text(canonical_json(doc))
        print(name)


if __name__ == "__main__":
    main()
