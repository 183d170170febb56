"""Text formats for operators, spectra, and curves.

Everything is CSV with a JSON header carried in leading '#' comment lines, so
files are greppable, diffable, and loadable without this package.  Floats are
written with repr(), which round-trips exactly in IEEE double, so a value that
goes through write/read is bit-identical to the in-process one.

Formats:
  operator/superoperator : header {"kind","dim","convention","role"}, columns row,col,re,im
  spectrum               : header {"kind":"spectrum","source",...},    columns re,im
  curve                  : header {"kind":"curve",...},                columns x,y
  complex curve          : header {"kind":"curve",...},                columns re_tau,im_tau,value
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .opcore import DimensionError, Operator, Superoperator


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path, header: dict, columns: list, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write("# " + json.dumps(header, sort_keys=True) + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_header(path) -> dict:
    with open(path) as fh:
        first = fh.readline()
    if not first.startswith("#"):
        return {}
    return json.loads(first.lstrip("#").strip())


def _read_csv(path):
    header = {}
    data = []
    columns = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if not header:
                    header = json.loads(line.lstrip("#").strip())
                continue
            if columns is None:
                columns = line.split(",")
                continue
            data.append([float(x) for x in line.split(",")])
    if columns is None:
        raise ValueError(f"{path}: no column header found")
    return header, columns, np.array(data) if data else np.empty((0, len(columns)))


# -- operators ---------------------------------------------------------------

def write_operator(path, op, role: str | None = None) -> None:
    if isinstance(op, Superoperator):
        mat, kind, conv = op.matrix, "superoperator", op.convention
        role = role or op.role
    elif isinstance(op, Operator):
        mat, kind, conv = op.matrix, "operator", "none"
        role = role or op.role
    else:
        mat = np.asarray(op, dtype=complex)
        kind = "superoperator" if role == "superoperator" else "operator"
        conv = "column" if kind == "superoperator" else "none"
        role = role or "generic"
    header = {"kind": kind, "dim": int(mat.shape[0]), "convention": conv, "role": role}
    rows = ((i, j, mat[i, j].real, mat[i, j].imag)
            for i in range(mat.shape[0]) for j in range(mat.shape[1]))
    _write_csv(path, header, ["row", "col", "re", "im"], rows)


def read_operator(path):
    header, columns, data = _read_csv(path)
    if columns != ["row", "col", "re", "im"]:
        raise ValueError(f"{path}: expected operator columns row,col,re,im, got {columns}")
    dim = int(header.get("dim", 0)) or (int(data[:, 0].max()) + 1 if len(data) else 0)
    mat = np.zeros((dim, dim), dtype=complex)
    if len(data):
        rows = data[:, 0].astype(int)
        cols = data[:, 1].astype(int)
        if rows.max() >= dim or cols.max() >= dim:
            raise DimensionError(f"{path}: entry index exceeds declared dim {dim}")
        mat[rows, cols] = data[:, 2] + 1j * data[:, 3]
    if header.get("kind") == "superoperator":
        return Superoperator(mat, convention=header.get("convention", "column"),
                             role=header.get("role", "superoperator"))
    return Operator(mat, role=header.get("role", "generic"))


# -- spectra -----------------------------------------------------------------

def write_spectrum(path, values, source: dict | None = None, seed=None, sector=None) -> None:
    values = np.asarray(values, dtype=complex).ravel()
    header = {"kind": "spectrum", "n": int(values.size)}
    if source is not None:
        header["source"] = source
    if seed is not None:
        header["seed"] = int(seed)
    if sector is not None:
        header["sector"] = sector
    _write_csv(path, header, ["re", "im"], ((v.real, v.imag) for v in values))


def read_spectrum(path):
    header, columns, data = _read_csv(path)
    if columns != ["re", "im"]:
        raise ValueError(f"{path}: expected spectrum columns re,im, got {columns}")
    values = data[:, 0] + 1j * data[:, 1] if len(data) else np.empty(0, dtype=complex)
    return values, header


# -- curves ------------------------------------------------------------------

def write_curve(path, x, y, meta: dict | None = None, columns=("x", "y")) -> None:
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise DimensionError("curve abscissa and values differ in length")
    header = {"kind": "curve"}
    header.update(meta or {})
    _write_csv(path, header, list(columns), zip(x, y))


def write_complex_curve(path, tau, value, meta: dict | None = None) -> None:
    tau = np.asarray(tau, dtype=complex).ravel()
    value = np.asarray(value, dtype=float).ravel()
    header = {"kind": "curve"}
    header.update(meta or {})
    _write_csv(path, header, ["re_tau", "im_tau", "value"],
               ((t.real, t.imag, v) for t, v in zip(tau, value)))


def write_table(path, columns: list, rows, meta: dict | None = None) -> None:
    """Generic numeric table with the same '#'-JSON-header convention."""
    header = {"kind": "table"}
    header.update(meta or {})
    _write_csv(path, header, columns, rows)


def read_table(path):
    header, columns, data = _read_csv(path)
    return header, columns, data
