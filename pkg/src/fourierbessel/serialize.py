"""On-disk formats: CSV/JSON for sampled functions, JSON-headed binary for
operator matrices.

The matrix dump is a single file: one JSON header line (dims, order, radius,
node count) followed by the raw row-major float64 entries and the two grids'
nodes and weights.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .grid import RadialFunction, RadialGrid
from .transform import OperatorMatrix


def radial_function_to_csv(f: RadialFunction, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "value"])
        for x, v in zip(f.grid.nodes, f.values):
            writer.writerow([repr(float(x)), repr(float(v))])


def radial_function_to_json(f: RadialFunction) -> str:
    return json.dumps(
        {
            "alpha": f.grid.alpha,
            "radius": f.grid.radius,
            "nodes": f.grid.nodes.tolist(),
            "weights": f.grid.weights.tolist(),
            "values": f.values.tolist(),
        }
    )


def radial_function_from_json(text) -> RadialFunction:
    d = json.loads(text)
    grid = RadialGrid(
        d["alpha"], d["radius"], np.asarray(d["nodes"]), np.asarray(d["weights"])
    )
    return RadialFunction(grid, np.asarray(d["values"]))


def save_operator(M: OperatorMatrix, path):
    header = {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "alpha": M.in_grid.alpha,
        "radius_in": M.in_grid.radius,
        "radius_out": M.out_grid.radius,
        "n_in": M.in_grid.size,
        "n_out": M.out_grid.size,
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header).encode() + b"\n")
        fh.write(np.ascontiguousarray(M.entries, dtype=np.float64).tobytes())
        for arr in (
            M.in_grid.nodes,
            M.in_grid.weights,
            M.out_grid.nodes,
            M.out_grid.weights,
        ):
            fh.write(np.ascontiguousarray(arr, dtype=np.float64).tobytes())


def load_operator(path) -> OperatorMatrix:
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode())
        rows, cols = header["rows"], header["cols"]
        n_in, n_out = header["n_in"], header["n_out"]

        def read(n):
            return np.frombuffer(fh.read(8 * n), dtype=np.float64)

        entries = read(rows * cols).reshape(rows, cols)
        in_grid = RadialGrid(header["alpha"], header["radius_in"], read(n_in), read(n_in))
        out_grid = RadialGrid(
            header["alpha"], header["radius_out"], read(n_out), read(n_out)
        )
    return OperatorMatrix(entries, in_grid, out_grid)
