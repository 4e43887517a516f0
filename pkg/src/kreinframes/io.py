"""JSON problem files in, canonical JSON reports out."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Any, Optional

import jsonschema
import numpy as np

from kreinframes.errors import InputError
from kreinframes.frames import Classification, FrameBounds, JFrameReport
from kreinframes.kspace import DEFAULT_TOL, KreinSpace, make_krein_space
from kreinframes.sequences import ExactnessReport, IntersectionReport, SequenceReport, SubsequenceReport
from kreinframes.subspace import Subspace
from kreinframes.transforms import ProjectedFamilyReport, UnionReport


class ProblemError(InputError):
    pass


def _schema() -> dict:
    text = resources.files("kreinframes").joinpath("schemas/problem.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True, eq=False)
class Problem:
    space: KreinSpace
    vectors: np.ndarray
    symmetry: Optional[np.ndarray]
    subspace: Optional[np.ndarray]
    split: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    tol: float
    digest: str
    field: str


def _scalar(v, field: str, where: str):
    if isinstance(v, list):
        if field != "complex":
            raise ProblemError(f"{where}: [re, im] pair given but field is 'real'")
        return complex(v[0], v[1])
    return v


def _vector(v, field: str, where: str, dim: int) -> np.ndarray:
    dtype = complex if field == "complex" else float
    out = np.array([_scalar(x, field, f"{where}[{j}]") for j, x in enumerate(v)], dtype=dtype)
    if out.shape != (dim,):
        raise ProblemError(f"{where}: expected length {dim}, got {out.shape[0]}")
    return out


def _matrix(rows, field: str, where: str, dim: Optional[int] = None) -> np.ndarray:
    n = len(rows)
    if dim is not None and n != dim:
        raise ProblemError(f"{where}: expected {dim} rows, got {n}")
    return np.stack([_vector(r, field, f"{where}[{i}]", n if dim is None else dim) for i, r in enumerate(rows)])


def parse_problem(text: str | bytes, source: str = "<input>") -> Problem:
    raw = text.encode() if isinstance(text, str) else text
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ProblemError(f"{source}: field '{path}': {exc.message}") from None

    field = data.get("field", "real")
    tol = float(data.get("tol", DEFAULT_TOL))
    gram = _matrix(data["gram"], field, "gram")
    dim = gram.shape[0]
    space = make_krein_space(gram, tol)
    vectors = np.column_stack([_vector(v, field, f"vectors[{i}]", dim) for i, v in enumerate(data["vectors"])])
    symmetry = _matrix(data["symmetry"], field, "symmetry", dim) if "symmetry" in data else None
    subspace = None
    if "subspace" in data:
        sub = [_vector(v, field, f"subspace[{i}]", dim) for i, v in enumerate(data["subspace"])]
        subspace = np.column_stack(sub) if sub else np.zeros((dim, 0))
    split = None
    if "split" in data:
        n = vectors.shape[1]
        blocks = []
        for b, block in enumerate(data["split"]):
            for i in block:
                if not 1 <= i <= n:
                    raise ProblemError(f"{source}: field 'split/{b}': index {i} outside 1..{n}")
            blocks.append(tuple(i - 1 for i in block))
        if set(blocks[0]) & set(blocks[1]):
            raise ProblemError(f"{source}: field 'split': blocks are not disjoint")
        split = (blocks[0], blocks[1])
    return Problem(space, vectors, symmetry, subspace, split, tol, digest, field)


def load_problem(path: str) -> Problem:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ProblemError(f"{path}: cannot read input ({exc.strerror})") from None
    return parse_problem(raw, path)


# ---------------------------------------------------------------- serialisation


def _num(x) -> Any:
    if isinstance(x, (complex, np.complexfloating)):
        return [_num(x.real), _num(x.imag)]
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return _Float(x)


class _Float(float):
    pass


def to_plain(obj) -> Any:
    """Convert numpy values and containers into JSON-ready Python values."""
    if obj is None or isinstance(obj, (bool, np.bool_, str)):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, complex, np.complexfloating)):
        return _num(obj)
    if isinstance(obj, np.ndarray):
        if obj.dtype.kind == "c" and not np.any(obj.imag):
            obj = obj.real
        return to_plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, _Float):
        return format(float(obj), ".17g")
    if obj is None or isinstance(obj, (bool, int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot emit {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Sorted keys, 17 significant digits, newline-terminated."""
    return _emit(to_plain(obj), 2, 0) + "\n"


def _one_based(idx) -> list[int]:
    return [int(i) + 1 for i in idx]


def bounds_dict(b: Optional[FrameBounds]) -> Optional[dict]:
    if b is None:
        return None
    return {"A1": b.A1, "B1": b.B1, "A2": b.A2, "B2": b.B2}


def subspace_dict(M: Subspace) -> dict:
    return {
        "dim": M.k,
        "definiteness": M.definiteness,
        "positive_margin": M.positive_margin,
        "negative_margin": M.negative_margin,
        "is_regular": M.is_regular,
        "is_maximal_definite": M.is_maximal_definite,
        "basis": [M.basis[:, j] for j in range(M.k)],
    }


def classification_dict(c: Classification) -> dict:
    return {
        "i_plus": _one_based(c.i_plus),
        "i_minus": _one_based(c.i_minus),
        "i_neutral": _one_based(c.i_neutral),
        "i_zero": _one_based(c.i_zero),
        "self_products": c.self_products,
        "m_plus": subspace_dict(c.m_plus),
        "m_minus": subspace_dict(c.m_minus),
    }


def jframe_dict(r: Optional[JFrameReport]) -> Optional[dict]:
    if r is None:
        return None
    return {
        "is_j_frame": r.is_j_frame,
        "failure_reasons": list(r.failure_reasons),
        "plus_margin": r.plus_margin,
        "minus_margin": r.minus_margin,
        "plus_maximal": r.plus_maximal,
        "minus_maximal": r.minus_maximal,
        "bounds": bounds_dict(r.bounds),
        "classification": classification_dict(r.classification),
    }


def projected_dict(r: ProjectedFamilyReport) -> dict:
    return {
        "subspace": subspace_dict(r.subspace),
        "projection": r.projection,
        "projected_vectors": r.projected.vectors,
        "hypothesis_definite": r.hypothesis_definite,
        "commuting_case": r.commuting_case,
        "is_j_frame": r.is_j_frame,
        "sub_report": jframe_dict(r.sub_report),
    }


def union_dict(r: UnionReport) -> dict:
    return {
        "union": jframe_dict(r.report),
        "f_part": jframe_dict(r.f_report),
        "g_part": jframe_dict(r.g_report),
        "f_bounds": bounds_dict(r.f_bounds),
        "g_bounds": bounds_dict(r.g_bounds),
        "common_bounds": bounds_dict(r.common_bounds),
        "bounds_enclosed": r.bounds_enclosed,
        "parts_are_j_frames": r.parts_are_j_frames,
        "holds": r.holds,
    }


def sequence_dict(r: SequenceReport) -> dict:
    return {
        "is_frame_sequence": r.is_frame_sequence,
        "plus_span": subspace_dict(r.plus_span),
        "minus_span": subspace_dict(r.minus_span),
        "margins": list(r.margins),
        "neutral_offenders": _one_based(r.neutral_offenders),
    }


def subsequence_dict(r: SubsequenceReport) -> dict:
    return {
        "plus_spans_equal": r.plus_spans_equal,
        "minus_spans_equal": r.minus_spans_equal,
        "spans_equal": r.spans_equal,
        "n_block_is_j_frame": r.n_report.is_j_frame,
        "agree": r.agree,
        "n_block": jframe_dict(r.n_report),
    }


def intersection_dict(r: IntersectionReport) -> dict:
    return {
        "intersection": subspace_dict(r.intersection),
        "intersection_regular": r.intersection_regular,
        "full_is_j_frame": r.full_is_j_frame,
        "hypothesis_holds": r.hypothesis_holds,
        "conclusion_holds": r.conclusion_holds,
        "consistent": r.consistent,
        "m_block": sequence_dict(r.m_report),
        "n_block": sequence_dict(r.n_report),
    }


def exactness_dict(r: ExactnessReport) -> dict:
    return {
        "is_exact": r.is_exact,
        "removable": _one_based(r.removable),
        "near_exact": r.near_exact,
        "proper": r.proper,
        "search_depth_hit": r.search_depth_hit,
        "exact_after_removing": None if r.exact_after_removing is None else _one_based(r.exact_after_removing),
    }


def problem_dict(space: KreinSpace, vectors: np.ndarray, subspace: Optional[np.ndarray] = None, description: str = "") -> dict:
    """A ProblemFile document for the given data (used for fixtures)."""

    enc = to_plain
    out: dict[str, Any] = {
        "field": space.field_kind,
        "gram": enc(space.gram),
        "vectors": [enc(vectors[:, j]) for j in range(vectors.shape[1])],
        "tol": space.tol,
    }
    if subspace is not None:
        out["subspace"] = [enc(subspace[:, j]) for j in range(subspace.shape[1])]
    if description:
        out["description"] = description
    return out
