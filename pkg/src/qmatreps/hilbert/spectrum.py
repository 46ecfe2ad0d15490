"""Joint spectra of commuting pairs and numerical commutants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from .rep import RepInstance
from .truncop import TruncOp

LAMBDA_SEED = 20240611


def _dense(x) -> np.ndarray:
    if isinstance(x, TruncOp):
        return x.dense()
    return x.toarray() if sp.issparse(x) else np.asarray(x)


def _clusters(values: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(values, kind="stable")
    groups, cur = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if values[b] - values[a] <= tol:
            cur.append(b)
        else:
            groups.append(np.array(cur))
            cur = [b]
    groups.append(np.array(cur))
    return groups


def joint_eigencells(ops, tol: float = 1e-9, interior=None, seed: int = LAMBDA_SEED, complete_only: bool = False):
    """Joint eigenspaces of commuting self-adjoint matrices.

    Diagonalizes ``sum lam_i ops_i`` for seeded ``lam_i`` in [1, 2] and refines
    every eigenspace by each operator in turn.  With ``interior`` (basis
    indices) each eigenspace is cut down to its part supported on those
    indices; ``complete_only`` drops eigenspaces that lose any dimension to
    this cut.  Returns ``(values, basis)`` pairs; ``basis`` has orthonormal
    columns.
    """
    mats = [_dense(m) for m in ops]
    n = mats[0].shape[0]
    idx = np.arange(n) if interior is None else np.asarray(interior)
    scale = max([1.0] + [np.abs(m).max(initial=0) for m in mats])
    for k, m in enumerate(mats):
        if np.abs(m - m.conj().T)[np.ix_(idx, idx)].max(initial=0) > tol * scale:
            raise ValueError(f"operator {k} is not self-adjoint to tolerance")
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            comm = (mats[a] @ mats[b] - mats[b] @ mats[a])[:, idx]
            if np.abs(comm).max(initial=0) > tol * scale * scale:
                raise ValueError(f"operators {a} and {b} do not commute to tolerance")

    lam = np.random.default_rng(seed).uniform(1.0, 2.0, size=len(mats))
    w, v = la.eigh(sum(l * m for l, m in zip(lam, mats)))
    spaces = [v[:, cl] for cl in _clusters(w, tol)]
    for m in mats:
        refined = []
        for V in spaces:
            mm = V.conj().T @ m @ V
            wm, vm = la.eigh((mm + mm.conj().T) / 2)
            V = V @ vm
            refined.extend(V[:, cl] for cl in _clusters(wm, tol))
        spaces = refined
    ext = np.setdiff1d(np.arange(n), idx)
    cells = []
    for S in spaces:
        if ext.size:
            _, sv, vh = la.svd(S[ext], full_matrices=True)
            rank = int(np.sum(sv > np.sqrt(tol)))
            if complete_only and rank:
                continue
            S = S @ vh[rank:].conj().T
            if S.shape[1]:
                S, _ = np.linalg.qr(S)
        if S.shape[1] == 0:
            continue
        vals = tuple(float(np.real(np.trace(S.conj().T @ m @ S))) / S.shape[1] for m in mats)
        cells.append((vals, S))
    # merge cells whose values agree to tol
    merged: list = []
    for vals, S in sorted(cells, key=lambda c: c[0]):
        for cell in merged:
            if all(abs(a - b) <= tol for a, b in zip(cell[0], vals)):
                cell[1] = np.hstack([cell[1], S])
                break
        else:
            merged.append([vals, S])
    return [(tuple(v), S) for v, S in merged]


def joint_spectrum(A, B, tol: float = 1e-9, interior=None, seed: int = LAMBDA_SEED) -> list[tuple[float, float]]:
    """Eigenvalue pairs of a commuting self-adjoint pair, with multiplicity.

    Pairs closer than ``tol`` are merged; see :func:`joint_eigencells`.
    """
    pairs = []
    for vals, S in joint_eigencells([A, B], tol, interior, seed):
        pairs.extend([vals] * S.shape[1])
    return sorted(pairs)


def merge_pairs(pairs, tol: float) -> list[tuple[float, float]]:
    """Snap pairs within ``tol`` (sup norm) to a common representative."""
    reps: list[list[float]] = []
    out = []
    for x, y in sorted(pairs):
        for r in reps:
            if abs(r[0] - x) <= tol and abs(r[1] - y) <= tol:
                out.append((r[0], r[1]))
                break
        else:
            reps.append([x, y])
            out.append((x, y))
    return sorted(out)


def spectrum_table(pairs) -> dict:
    table: dict = {}
    for p in pairs:
        table[p] = table.get(p, 0) + 1
    return table


@dataclass(frozen=True)
class CommutantResult:
    dimension: int
    largest_discarded: float
    smallest_kept: float
    method: str = "cells"

    @property
    def gap(self) -> float:
        return self.smallest_kept / max(self.largest_discarded, 1e-300)

    def __int__(self) -> int:
        return self.dimension


def diagonal_family(rep: RepInstance):
    """The commuting positive family ``z z*`` that labels spectral cells.

    ``sym``: ``(z21 z21*, z22 z22*)``; ``mat2``: ``(z1^2 z1^2*, z2^1 z2^1*, z2^2 z2^2*)``.
    """
    from ..algebra.ncpoly import SYM2

    names = ("z21", "z22") if rep.algebra == SYM2 else ("z1^2", "z2^1", "z2^2")
    ops = [rep[n] @ rep[n + "*"] for n in names]
    return names, ops


def family_interior(rep: RepInstance) -> np.ndarray:
    """Basis vectors on which every ``z z*`` of the family acts exactly."""
    if not rep.dims:
        return np.arange(rep.size)
    _, ops = diagonal_family(rep)
    margin = np.max([op.bandwidth for op in ops], axis=0)
    return rep.basis.interior(margin)


def spectral_cells(rep: RepInstance, tol: float = 1e-9, complete_only: bool = True):
    """Interior joint eigencells of :func:`diagonal_family`."""
    _, ops = diagonal_family(rep)
    return joint_eigencells(ops, tol, family_interior(rep), complete_only=complete_only)


def commutant_dimension(rep: RepInstance, tol: float = 1e-9, mode: str = "cells", max_unknowns: int = 6000) -> CommutantResult:
    """Numerical dimension of the commutant of a truncated representation.

    ``mode='cells'`` (default): an operator commuting with the representation
    preserves the joint eigenspaces of the diagonal family, so ``X`` is taken
    block diagonal on the interior cells and ``X_mu g_{mu,lam} = g_{mu,lam} X_lam``
    is imposed for every generator and its adjoint.  ``mode='full'`` solves
    ``[X, g] = [X, g*] = 0`` on the whole truncated matrices.  Both counts are
    finite-truncation heuristics; the singular value gap is reported.

    Cells that lose vectors to the truncation boundary are skipped; when no
    complete cell exists the cut-down cells are used (``method='cut-cells'``).
    """
    method = mode
    if mode == "cells":
        bases = [S for _, S in spectral_cells(rep, tol)]
        if not bases:
            bases = [S for _, S in spectral_cells(rep, tol, complete_only=False)]
            method = "cut-cells"
    if mode == "full":
        n = rep.size
        if n * n > max_unknowns:
            raise ValueError(f"too many unknowns ({n * n}) for a full commutant solve")
        bases = [np.eye(n)]
    elif mode != "cells":
        raise ValueError(f"unknown mode {mode!r}")
    sizes = [S.shape[1] for S in bases]
    offsets = np.concatenate([[0], np.cumsum([d * d for d in sizes])])
    if offsets[-1] > max_unknowns:
        raise ValueError(f"too many unknowns ({offsets[-1]}) for a commutant solve")
    ops = []
    for op in rep.gens.values():
        m = op.dense()
        ops.extend([m, m.conj().T])
    rows = []
    for G in ops:
        for lam, Sl in enumerate(bases):
            GS = G @ Sl
            for mu, Sm in enumerate(bases):
                blk = Sm.conj().T @ GS
                if np.abs(blk).max(initial=0) < 1e-14:
                    continue
                dm, dl = sizes[mu], sizes[lam]
                # row-major vec: vec(X_mu B) = (I kron B^T) vec X_mu, vec(B X_lam) = (B kron I) vec X_lam
                eq = np.zeros((dm * dl, offsets[-1]), dtype=np.complex128)
                eq[:, offsets[mu]:offsets[mu + 1]] += np.kron(np.eye(dm), blk.T)
                eq[:, offsets[lam]:offsets[lam + 1]] -= np.kron(blk, np.eye(dl))
                rows.append(eq)
    unknowns = int(offsets[-1])
    if not rows:
        return CommutantResult(unknowns, 0.0, float("inf"), method)
    M = np.vstack(rows)
    sv = la.svd(M, compute_uv=False)
    full = np.zeros(unknowns)
    full[: sv.size] = sv
    null = full < tol * max(1.0, full.max(initial=0))
    dim = int(null.sum())
    discarded = float(full[null].max()) if dim else 0.0
    kept = float(full[~null].min()) if (~null).any() else float("inf")
    return CommutantResult(dim, discarded, kept, method)
