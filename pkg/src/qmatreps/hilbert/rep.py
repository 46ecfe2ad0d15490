"""Concrete truncated *-representations and relation residuals."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..algebra.ncpoly import Gen, NCPoly, generators
from ..algebra.presentations import relation_polys
from .truncop import Basis, TruncOp


@dataclass(frozen=True, eq=False)
class RepInstance:
    """Generator -> operator map of a truncated *-representation.

    Only unstarred generators are stored; starred letters evaluate to the
    conjugate transpose.
    """

    algebra: str
    q: float
    gens: dict
    params: dict = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        expected = set(generators(self.algebra))
        if set(self.gens) != expected:
            raise ValueError(f"representation must define exactly {sorted(g.name for g in expected)}")
        bases = [op.basis for op in self.gens.values()]
        if any(not bases[0].same_as(b) for b in bases[1:]):
            raise ValueError("all generators must share one truncated space")

    @property
    def basis(self) -> Basis:
        return next(iter(self.gens.values())).basis

    @property
    def dims(self) -> tuple:
        return self.basis.dims

    @property
    def size(self) -> int:
        return self.basis.size

    def op(self, g: Gen) -> TruncOp:
        if g.algebra != self.algebra:
            raise ValueError(f"generator {g} is not in algebra {self.algebra!r}")
        base = self.gens[g.base()]
        return base.adjoint() if g.starred else base

    def __getitem__(self, name: str) -> TruncOp:
        from ..algebra.ncpoly import gen

        return self.op(gen(self.algebra, name))

    def with_gens(self, gens: dict, **kw) -> "RepInstance":
        return replace(self, gens=gens, **kw)


def _coeff(c, q) -> float:
    return float(c.evaluate(q if not isinstance(q, Fraction) else q))


def word_margin(p: NCPoly, rep: RepInstance) -> np.ndarray:
    """Per-factor worst-case level drift of any word of ``p``."""
    nf = len(rep.dims)
    margin = np.zeros(nf, dtype=np.int64)
    for w, _ in p.items():
        drift = np.zeros(nf, dtype=np.int64)
        for g in w:
            drift += np.asarray(rep.op(g).bandwidth, dtype=np.int64)
        margin = np.maximum(margin, drift)
    return margin


def evaluate_word(p: NCPoly, rep: RepInstance) -> TruncOp:
    """``sum c(q) prod gens`` with starred letters realized as adjoints."""
    if p.algebra != rep.algebra:
        raise ValueError(f"polynomial over {p.algebra!r} cannot act in a {rep.algebra!r} representation")
    basis = rep.basis
    total = TruncOp.zero(basis)
    for w, c in p.items():
        term = TruncOp.scalar(basis, _coeff(c, rep.q))
        for g in w:
            term = term @ rep.op(g)
        total = total + term
    return total


def apply_poly(p: NCPoly, rep: RepInstance, vecs: np.ndarray) -> np.ndarray:
    """``p`` applied to the columns of ``vecs`` (right-to-left, no full products)."""
    if p.algebra != rep.algebra:
        raise ValueError(f"polynomial over {p.algebra!r} cannot act in a {rep.algebra!r} representation")
    out = np.zeros(vecs.shape, dtype=np.complex128)
    mats = {}
    for w, c in p.items():
        v = vecs.astype(np.complex128, copy=True)
        for g in reversed(w):
            m = mats.get(g)
            if m is None:
                m = mats[g] = rep.op(g).mat
            v = m @ v
        out += _coeff(c, rep.q) * v
    return out


def interior_columns(p: NCPoly, rep: RepInstance) -> np.ndarray:
    idx = rep.basis.interior(word_margin(p, rep))
    if idx.size == 0:
        raise ValueError("truncation too small: no interior vector for this relation")
    return idx


def interior_residual(p: NCPoly, rep: RepInstance) -> float:
    """Max column norm of ``p`` on interior basis vectors."""
    idx = interior_columns(p, rep)
    cols = sp.csr_matrix(
        (np.ones(idx.size), (idx, np.arange(idx.size))), shape=(rep.size, idx.size)
    ).toarray()
    res = apply_poly(p, rep, cols)
    return float(np.max(np.linalg.norm(res, axis=0)))


def relation_residual_suite(rep: RepInstance, relations=None) -> list[tuple[str, float]]:
    """Interior residual of every defining relation of the representation's algebra."""
    rels = relations if relations is not None else relation_polys(rep.algebra)
    return [(name, interior_residual(poly, rep)) for name, poly in rels]


def direct_sum(a: RepInstance, b: RepInstance) -> RepInstance:
    """Block-diagonal sum; the result carries a single graded factor."""
    if a.algebra != b.algebra or a.q != b.q:
        raise ValueError("direct sum needs the same algebra and q")
    la = a.basis.levels.max(axis=1) if a.dims else np.zeros(a.size, dtype=np.int64)
    lb = b.basis.levels.max(axis=1) if b.dims else np.zeros(b.size, dtype=np.int64)
    levels = np.concatenate([la, lb])
    dim = int(max(max(a.dims, default=1), max(b.dims, default=1)))
    basis = Basis.graded(levels, (dim,))
    gens = {}
    for g in a.gens:
        m = sp.block_diag([sp.csr_matrix(a.gens[g].mat), sp.csr_matrix(b.gens[g].mat)], format="csr")
        bw = max(max(a.gens[g].bandwidth, default=0), max(b.gens[g].bandwidth, default=0))
        gens[g] = TruncOp(basis, m, bw)
    return RepInstance(a.algebra, a.q, gens, {"summands": [a.provenance, b.provenance]},
                       f"({a.provenance})+({b.provenance})")
