"""Coordinate text export of truncated operators.

A file is one ``#``-prefixed JSON header line followed by ``row col re im``
lines (0-based, row-major order of the nonzero pattern).  Floats are written
with ``repr`` so that import reproduces every entry bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np
import scipy.sparse as sp

from .rep import RepInstance
from .truncop import Basis, TruncOp

FORMAT_VERSION = 1


def operator_header(op: TruncOp, algebra: str, generator: str, q: float) -> dict:
    header = {
        "format": FORMAT_VERSION,
        "algebra": algebra,
        "generator": generator,
        "q": float(q),
        "dims": list(op.dims),
        "bandwidth": [int(b) for b in op.bandwidth],
        "size": op.basis.size,
    }
    if not op.basis.is_product:
        header["levels"] = op.basis.levels.tolist()
    return header


def export_operator(op: TruncOp, algebra: str, generator: str, q: float) -> str:
    """Serialize ``op`` to the coordinate text format."""
    header = operator_header(op, algebra, generator, q)
    coo = sp.coo_matrix(op.mat)
    order = np.lexsort((coo.col, coo.row))
    lines = ["# " + json.dumps(header, sort_keys=True)]
    for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
        if v == 0:
            continue
        lines.append(f"{int(r)} {int(c)} {float(v.real)!r} {float(v.imag)!r}")
    return "\n".join(lines) + "\n"


def import_operator(text: str) -> tuple[dict, TruncOp]:
    """Inverse of :func:`export_operator`; returns ``(header, operator)``."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing JSON header line")
    header = json.loads(lines[0][2:])
    if header.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported format {header.get('format')!r}")
    dims = tuple(header["dims"])
    if "levels" in header:
        basis = Basis.graded(np.array(header["levels"], dtype=np.int64).reshape(-1, len(dims)), dims)
    else:
        basis = Basis.product(dims)
    n = basis.size
    rows, cols, vals = [], [], []
    for k, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {k}: expected 'row col re im'")
        r, c = int(parts[0]), int(parts[1])
        if not (0 <= r < n and 0 <= c < n):
            raise ValueError(f"line {k}: index out of range")
        rows.append(r)
        cols.append(c)
        vals.append(complex(float(parts[2]), float(parts[3])))
    mat = sp.csr_matrix((np.array(vals, dtype=np.complex128), (rows, cols)), shape=(n, n))
    return header, TruncOp(basis, mat, tuple(header["bandwidth"]))


def export_rep(rep: RepInstance) -> dict:
    """Generator name -> coordinate text for every unstarred generator."""
    return {g.name: export_operator(op, rep.algebra, g.name, rep.q) for g, op in sorted(rep.gens.items())}


def import_rep(texts: dict, provenance: str = "imported") -> RepInstance:
    """Rebuild a representation from :func:`export_rep` output."""
    from ..algebra.ncpoly import gen

    gens, algebra, q = {}, None, None
    for name, text in texts.items():
        header, op = import_operator(text)
        if algebra is None:
            algebra, q = header["algebra"], header["q"]
        elif (algebra, q) != (header["algebra"], header["q"]):
            raise ValueError("operators disagree on algebra or q")
        gens[gen(algebra, name)] = op
    return RepInstance(algebra, q, gens, {}, provenance)
