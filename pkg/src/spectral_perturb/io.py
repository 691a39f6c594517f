"""File formats: matrices, vectors, graphs, pinning problems and JSON output."""

from __future__ import annotations

import csv
import json
import math
import warnings
from pathlib import Path

import numpy as np

from .errors import InputError
from .graph import Graph
from .linalg import as_symmetric
from .pinning import PinningProblem, scalars_from_matrices

__all__ = [
    "read_array",
    "load_matrix",
    "load_symmetric",
    "load_vector",
    "load_graph",
    "parse_graph",
    "load_pinning_problem",
    "dumps",
    "write_matrix_json",
    "write_graph",
]

ASYMMETRY_WARN = 1e-8


def _read_csv(text):
    rows = []
    for line in csv.reader(text.splitlines()):
        cells = [c.strip() for c in line if c.strip() != ""]
        if cells:
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise InputError(f"bad number in CSV: {exc}") from None
    return rows


def read_array(path) -> np.ndarray:
    """Read a CSV (one row per line) or JSON ``{"dim": d, "entries": [...]}`` array."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InputError(f"{path}: expected an object with 'entries'")
        rows = obj["entries"]
        dim = obj.get("dim")
    else:
        rows = _read_csv(text)
        dim = None
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{path}: ragged or non-numeric rows") from None
    if dim is not None and arr.ndim == 2 and arr.shape[0] != dim:
        raise InputError(f"{path}: 'dim' is {dim} but {arr.shape[0]} rows given")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{path}: non-finite entries")
    return arr


def load_matrix(path) -> np.ndarray:
    arr = read_array(path)
    if arr.ndim != 2:
        raise InputError(f"{path}: expected a 2-D array")
    return arr


def load_symmetric(path) -> np.ndarray:
    """Load and symmetrize; warns when the input's asymmetry exceeds 1e-8."""
    arr = load_matrix(path)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{path}: matrix is {arr.shape[0]}x{arr.shape[1]}, not square")
    asym = float(np.max(np.abs(arr - arr.T)))
    if asym > ASYMMETRY_WARN:
        warnings.warn(f"{path}: max asymmetry {asym:.3g}, symmetrizing", stacklevel=2)
    return as_symmetric(arr)


def load_vector(path) -> np.ndarray:
    arr = read_array(path)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise InputError(f"{path}: expected a vector")
    return arr


def parse_graph(obj) -> Graph:
    try:
        return Graph(int(obj["n"]), [tuple(int(x) for x in e) for e in obj["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph object: {exc}") from None


def load_graph(path) -> Graph:
    """Edge list (``n m`` header, then ``u v`` lines) or JSON ``{"n", "edges"}``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            return parse_graph(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        n, m = (int(x) for x in lines[0])
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except (IndexError, ValueError):
        raise InputError(f"{path}: malformed edge list") from None
    if len(edges) != m:
        raise InputError(f"{path}: header says {m} edges, found {len(edges)}")
    return Graph(n, edges)


def load_pinning_problem(path) -> PinningProblem:
    """JSON problem file; ``Q``/``B`` matrices may replace ``q_norm``/``qb_min``."""
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load {path}: {exc}") from None
    try:
        graph = parse_graph(obj["graph"])
        if "Q" in obj or "B" in obj:
            q_norm, qb_min = scalars_from_matrices(obj["Q"], obj["B"])
        else:
            q_norm, qb_min = float(obj["q_norm"]), float(obj["qb_min"])
        kappa = obj.get("kappa")
        return PinningProblem(
            graph=graph,
            pinned=obj.get("pinned", []),
            sigma=float(obj["sigma"]),
            kappa=None if kappa is None else float(kappa),
            f_bound=float(obj.get("f_bound", 0.0)),
            q_norm=q_norm,
            qb_min=qb_min,
        )
    except KeyError as exc:
        raise InputError(f"{path}: missing field {exc}") from None


def _encode(obj):
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        if not math.isfinite(val):
            return json.dumps(None)
        return format(val, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "to_dict"):
        return _encode(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj)


def write_matrix_json(path, m):
    m = np.asarray(m, dtype=float)
    Path(path).write_text(dumps({"dim": m.shape[0], "entries": m.tolist()}) + "\n")


def write_graph(path, g: Graph):
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    Path(path).write_text("\n".join(lines) + "\n")
