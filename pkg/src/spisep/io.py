"""Matrix and graph file formats for the command line tools.

Matrices travel either as canonical JSON ({"order": n, "entries": row-major
array of arrays}) or as Matrix Market symmetric coordinate files.  Graphs are
JSON objects with "order", 1-based "edges", and an optional "coupling".
JSON writes round-trip doubles exactly.
"""

from __future__ import annotations

import json
import os

import numpy as np
import scipy.io
import scipy.sparse

from .core import as_symmetric
from .graphs import Coupling, LabeledGraph


class ParseError(Exception):
    """Raised when an input file cannot be understood."""


def _is_matrix_market(path: str) -> bool:
    ext = os.path.splitext(path)[1].lower()
    if ext in (".mtx", ".mm"):
        return True
    if ext == ".json":
        return False
    try:
        with open(path, "rb") as fh:
            return fh.read(14) == b"%%MatrixMarket"
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def load_matrix(path: str) -> np.ndarray:
    """Read a symmetric matrix from JSON or Matrix Market."""
    if _is_matrix_market(path):
        try:
            M = scipy.io.mmread(path)
        except Exception as exc:
            raise ParseError(f"bad Matrix Market file {path}: {exc}") from exc
        M = np.asarray(M.todense() if scipy.sparse.issparse(M) else M, dtype=float)
        try:
            return as_symmetric(M)
        except ValueError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad matrix file {path}: {exc}") from exc
    try:
        order = int(data["order"])
        entries = np.asarray(data["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: expected fields 'order' and 'entries'") from exc
    if entries.shape != (order, order):
        raise ParseError(f"{path}: entries shape {entries.shape} does not match order {order}")
    try:
        return as_symmetric(entries)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_matrix(path: str, N, fmt: str | None = None) -> None:
    """Write a matrix as JSON (default) or Matrix Market ('mtx')."""
    N = as_symmetric(N)
    if fmt is None:
        fmt = "mtx" if os.path.splitext(path)[1].lower() in (".mtx", ".mm") else "json"
    if fmt == "mtx":
        scipy.io.mmwrite(path, scipy.sparse.coo_matrix(N), symmetry="symmetric")
        return
    if fmt != "json":
        raise ValueError(f"unknown matrix format {fmt!r}")
    payload = {"order": N.shape[0], "entries": [[float(x) for x in row] for row in N]}
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_graph(path: str) -> tuple[LabeledGraph, Coupling | None]:
    """Read a labeled graph (and optional coupling) from JSON."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad graph file {path}: {exc}") from exc
    try:
        order = int(data["order"])
        edges = [(int(i), int(j)) for i, j in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: expected fields 'order' and 'edges'") from exc
    try:
        G = LabeledGraph.from_edges(order, edges)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    coupling = None
    if data.get("coupling") is not None:
        try:
            coupling = Coupling.from_pairs(
                (int(a), int(b)) for a, b in data["coupling"]
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: bad coupling: {exc}") from exc
        if 2 * coupling.p != order:
            raise ParseError(f"{path}: coupling does not cover 1..{order}")
    return G, coupling


def save_graph(path: str, G: LabeledGraph, coupling: Coupling | None = None) -> None:
    payload: dict = {"order": G.order, "edges": sorted(list(e) for e in G.edges)}
    if coupling is not None:
        payload["coupling"] = [list(p) for p in coupling.pairs]
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")
