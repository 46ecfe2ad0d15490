"""Truncated operators on tensor powers of l2(Z+)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

# dense below this dimension, CSR at or above it
SPARSE_MIN_DIM = int(os.environ.get("QMATREPS_SPARSE_MIN_DIM", "512"))


@dataclass(frozen=True, eq=False)
class Basis:
    """Per-vector level labels on a truncated space.

    ``levels[i, f]`` is the index of basis vector ``i`` in tensor factor ``f``
    and is always ``< dims[f]``.  Product bases enumerate levels
    lexicographically (first factor slowest); graded bases (e.g. Fock degree)
    carry arbitrary level arrays.
    """

    dims: tuple
    levels: np.ndarray = field(repr=False)

    @classmethod
    def product(cls, dims) -> "Basis":
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise ValueError("factor dimensions must be positive")
        if not dims:
            return cls((), np.zeros((1, 0), dtype=np.int64))
        grids = np.indices(dims).reshape(len(dims), -1).T
        return cls(dims, np.ascontiguousarray(grids, dtype=np.int64))

    @classmethod
    def graded(cls, levels, dims) -> "Basis":
        levels = np.asarray(levels, dtype=np.int64)
        if levels.ndim == 1:
            levels = levels[:, None]
        dims = tuple(int(d) for d in dims)
        if levels.shape[1] != len(dims) or np.any(levels >= np.array(dims)) or np.any(levels < 0):
            raise ValueError("levels do not fit the declared dims")
        return cls(dims, levels)

    @property
    def size(self) -> int:
        return self.levels.shape[0]

    @property
    def is_product(self) -> bool:
        return self.size == int(np.prod(self.dims, dtype=np.int64))

    def kron(self, other: "Basis") -> "Basis":
        a = np.repeat(self.levels, other.size, axis=0)
        b = np.tile(other.levels, (self.size, 1))
        return Basis(self.dims + other.dims, np.hstack([a, b]))

    def interior(self, margin) -> np.ndarray:
        """Indices whose level in each factor is at most ``dims - 1 - margin``."""
        margin = np.broadcast_to(np.asarray(margin, dtype=np.int64), (len(self.dims),))
        cap = np.array(self.dims, dtype=np.int64) - 1 - margin
        return np.flatnonzero(np.all(self.levels <= cap, axis=1))

    def same_as(self, other: "Basis") -> bool:
        return self.dims == other.dims and np.array_equal(self.levels, other.levels)


def _as_storage(m, n: int):
    if sp.issparse(m):
        return m.tocsr() if n >= SPARSE_MIN_DIM else m.toarray()
    m = np.asarray(m, dtype=np.complex128)
    return sp.csr_matrix(m) if n >= SPARSE_MIN_DIM else m


class TruncOp:
    """A complex matrix on a :class:`Basis` with per-factor shift bandwidth.

    ``bandwidth[f]`` bounds ``|level_i[f] - level_j[f]|`` over nonzero
    entries ``(i, j)``.  Instances are treated as immutable.
    """

    __slots__ = ("basis", "mat", "bandwidth")

    def __init__(self, basis: Basis, mat, bandwidth):
        n = basis.size
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape} does not match basis size {n}")
        self.basis = basis
        self.mat = _as_storage(mat, n)
        bw = tuple(int(b) for b in np.broadcast_to(np.asarray(bandwidth), (len(basis.dims),)))
        # the zero operator shifts nothing, whatever it was built from
        nonzero = self.mat.count_nonzero() if sp.issparse(self.mat) else np.count_nonzero(self.mat)
        self.bandwidth = bw if nonzero else (0,) * len(bw)

    @classmethod
    def identity(cls, basis: Basis) -> "TruncOp":
        return cls(basis, sp.identity(basis.size, dtype=np.complex128, format="csr"), 0)

    @classmethod
    def zero(cls, basis: Basis) -> "TruncOp":
        return cls(basis, sp.csr_matrix((basis.size, basis.size), dtype=np.complex128), 0)

    @classmethod
    def scalar(cls, basis: Basis, c: complex) -> "TruncOp":
        return cls(basis, c * sp.identity(basis.size, dtype=np.complex128, format="csr"), 0)

    @property
    def dims(self) -> tuple:
        return self.basis.dims

    @property
    def shape(self):
        return self.mat.shape

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.mat)

    def dense(self) -> np.ndarray:
        return self.mat.toarray() if self.is_sparse else np.array(self.mat)

    def _same(self, other: "TruncOp") -> None:
        if not self.basis.same_as(other.basis):
            raise ValueError("operators live on different truncated spaces")

    def __add__(self, other: "TruncOp") -> "TruncOp":
        self._same(other)
        bw = tuple(max(a, b) for a, b in zip(self.bandwidth, other.bandwidth))
        return TruncOp(self.basis, self.mat + other.mat, bw)

    def __sub__(self, other: "TruncOp") -> "TruncOp":
        return self + other * -1

    def __mul__(self, c) -> "TruncOp":
        return TruncOp(self.basis, self.mat * complex(c), self.bandwidth)

    __rmul__ = __mul__

    def __neg__(self) -> "TruncOp":
        return self * -1

    def __matmul__(self, other: "TruncOp") -> "TruncOp":
        self._same(other)
        bw = tuple(a + b for a, b in zip(self.bandwidth, other.bandwidth))
        return TruncOp(self.basis, self.mat @ other.mat, bw)

    def adjoint(self) -> "TruncOp":
        return TruncOp(self.basis, self.mat.conj().T, self.bandwidth)

    @property
    def H(self) -> "TruncOp":
        return self.adjoint()

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        return self.mat @ vecs

    def kron(self, other: "TruncOp") -> "TruncOp":
        if self.basis.size == 1 and not self.dims:
            return other * self.dense()[0, 0]
        if other.basis.size == 1 and not other.dims:
            return self * other.dense()[0, 0]
        basis = self.basis.kron(other.basis)
        if basis.size >= SPARSE_MIN_DIM:
            m = sp.kron(sp.csr_matrix(self.mat), sp.csr_matrix(other.mat), format="csr")
        else:
            m = np.kron(self.dense(), other.dense())
        return TruncOp(basis, m, self.bandwidth + other.bandwidth)

    def actual_bandwidth(self) -> tuple:
        coo = sp.coo_matrix(self.mat)
        nz = np.abs(coo.data) > 0
        if not nz.any():
            return tuple(0 for _ in self.dims)
        lv = self.basis.levels
        d = np.abs(lv[coo.row[nz]] - lv[coo.col[nz]])
        return tuple(int(x) for x in d.max(axis=0))

    def allclose(self, other: "TruncOp", atol: float = 1e-12) -> bool:
        self._same(other)
        diff = self.mat - other.mat
        diff = diff.toarray() if sp.issparse(diff) else diff
        return bool(np.max(np.abs(diff), initial=0.0) <= atol)

    def __repr__(self) -> str:
        kind = "sparse" if self.is_sparse else "dense"
        return f"TruncOp(dims={self.dims}, n={self.basis.size}, bandwidth={self.bandwidth}, {kind})"


def kron_all(ops) -> TruncOp:
    return reduce(lambda a, b: a.kron(b), ops)


def shift_op(dim: int, coeffs, shift: int) -> TruncOp:
    """Single-factor operator ``e_k -> coeffs[k] e_{k+shift}`` truncated to ``dim``.

    Coefficients are evaluated for every ``k``; entries landing outside the
    truncation are dropped.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    k = np.arange(dim)
    tgt = k + shift
    keep = (tgt >= 0) & (tgt < dim)
    m = sp.csr_matrix((coeffs[keep], (tgt[keep], k[keep])), shape=(dim, dim))
    return TruncOp(Basis.product((dim,)), m, abs(shift))


def scalar_space() -> Basis:
    """The one-dimensional space with no tensor factors."""
    return Basis((), np.zeros((1, 0), dtype=np.int64))
