"""Composite representations through the coactions and torus twists."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra.ncpoly import MAT2, SYM2, Gen, generators
from .catalog import build_simplest, build_su2_rep
from .hilbert.rep import RepInstance
from .hilbert.truncop import TruncOp

LEG_KINDS = ("su2_pi", "su2_eps")
_LEG_ALIASES = {"pi": "su2_pi", "eps": "su2_eps", "su2_pi": "su2_pi", "su2_eps": "su2_eps"}


def _leg_ops(leg, q: float, dim: int) -> dict:
    if isinstance(leg, dict):
        return leg
    return build_su2_rep(_LEG_ALIASES[leg], q, dim)


def _sum(terms) -> TruncOp:
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def coact_sym(base: RepInstance, leg, dim: int | None = None) -> RepInstance:
    """``(base x leg) Delta`` for the symmetric algebra.

    ``leg`` is ``'pi'``/``'eps'`` (built at truncation ``dim``) or a ready map
    ``(i, j) -> t_ij``.  One-dimensional legs collapse their tensor factor.
    """
    if base.algebra != SYM2:
        raise ValueError("coact_sym needs a representation of the symmetric algebra")
    t = _leg_ops(leg, base.q, dim or 8)
    dims = {op.basis.size for op in t.values()}
    if len(dims) != 1:
        raise ValueError("leg operators have mismatched dimensions")
    q = base.q
    z11, z21, z22 = (base.gens[g] for g in generators(SYM2))
    out = {}
    for j, k in ((1, 1), (2, 1), (2, 2)):
        terms = [
            z11.kron(t[1, j] @ t[1, k]),
            z21.kron(t[1, j] @ t[2, k]) * q,
            z21.kron(t[2, j] @ t[1, k]),
            z22.kron(t[2, j] @ t[2, k]),
        ]
        out[Gen(SYM2, j, k)] = _sum(terms)
    return RepInstance(SYM2, q, out, dict(base.params), f"({base.provenance} x {_leg_name(leg)})Delta")


def coact_mat2(base: RepInstance, leg_a, leg_b, dim: int | None = None) -> RepInstance:
    """``(base x leg_a x leg_b) D`` with ``D(z_j^i) = sum z_b^a x t_bj x t_ai``.

    Generator ``Gen('mat2', j, i)`` is ``z_j^i``: ``leg_a`` acts on lower
    (column) indices, ``leg_b`` on upper (row) indices.
    """
    if base.algebra != MAT2:
        raise ValueError("coact_mat2 needs a representation of mat2")
    ta = _leg_ops(leg_a, base.q, dim or 8)
    tb = _leg_ops(leg_b, base.q, dim or 8)
    out = {}
    for j in (1, 2):
        for i in (1, 2):
            terms = [
                base.gens[Gen(MAT2, b, a)].kron(ta[b, j]).kron(tb[a, i])
                for a in (1, 2)
                for b in (1, 2)
            ]
            out[Gen(MAT2, j, i)] = _sum(terms)
    name = f"({base.provenance} x {_leg_name(leg_a)} x {_leg_name(leg_b)})D"
    return RepInstance(MAT2, base.q, out, dict(base.params), name)


def _leg_name(leg) -> str:
    return leg if isinstance(leg, str) else "custom"


def torus_twist(rep: RepInstance, angles) -> RepInstance:
    """Rescale generators by the diagonal torus.

    ``sym``: two angles, ``z_jk -> e^{i(t_j + t_k)} z_jk``.
    ``mat2``: four angles ``(t1, t2, s1, s2)``, ``z_b^a -> e^{i(t_a - s_b)} z_b^a``.
    """
    angles = tuple(float(a) for a in angles)
    gens = {}
    if rep.algebra == SYM2:
        if len(angles) != 2:
            raise ValueError("the symmetric algebra twist takes two angles")
        for g, op in rep.gens.items():
            gens[g] = op * np.exp(1j * (angles[g.i - 1] + angles[g.j - 1]))
    else:
        if len(angles) != 4:
            raise ValueError("the mat2 twist takes four angles")
        rows, cols = angles[:2], angles[2:]
        for g, op in rep.gens.items():
            # g = z_b^a with lower b = g.i and upper a = g.j
            gens[g] = op * np.exp(1j * (rows[g.j - 1] - cols[g.i - 1]))
    params = dict(rep.params)
    params["twist"] = list(angles)
    return rep.with_gens(gens, params=params, provenance=f"twist{angles}({rep.provenance})")


def diagonal_gauge(rep: RepInstance, phases: np.ndarray) -> RepInstance:
    """Conjugate by the diagonal unitary ``U e_i = e^{i phases[i]} e_i``."""
    import scipy.sparse as sp

    u = sp.diags(np.exp(1j * np.asarray(phases)), format="csr")
    gens = {g: TruncOp(op.basis, u @ op.mat @ u.conj().T, op.bandwidth) for g, op in rep.gens.items()}
    return rep.with_gens(gens, provenance=f"gauge({rep.provenance})")


@dataclass
class CompositeSpec:
    """JSON-serializable description of a composite representation."""

    algebra: str
    base: str
    legs: list
    q: float
    dims: int = 8
    angles: list = field(default_factory=list)

    def __post_init__(self):
        self.legs = [_LEG_ALIASES.get(l, l) for l in self.legs]
        want = 1 if self.algebra == SYM2 else 2
        if len(self.legs) != want:
            raise ValueError(f"{self.algebra} composites take {want} leg(s)")
        if any(l not in LEG_KINDS for l in self.legs):
            raise ValueError(f"legs must be among {LEG_KINDS}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CompositeSpec":
        return cls(**json.loads(text))

    def build(self, base_size: int | None = None) -> RepInstance:
        if base_size is None:
            base_size = 4 if (self.algebra == MAT2 and self.base == "calF2") else self.dims
        base = build_simplest(self.algebra, self.base, self.q, base_size)
        if self.algebra == SYM2:
            rep = coact_sym(base, self.legs[0], self.dims)
        else:
            rep = coact_mat2(base, self.legs[0], self.legs[1], self.dims)
        if self.angles:
            rep = torus_twist(rep, self.angles)
        return rep
