"""Constructors for every named representation.

Series ``pi1 .. pi5`` follow the standard numbering of the irreducible classes of
the symmetric algebra.  Two printed formulas do not satisfy the defining
relations and are corrected here (``literal=True`` rebuilds the printed
form):

* ``pi1``: ``z11`` carries modulus ``q^-1``;
* ``pi3``: ``z11`` carries the phase ``e^{2i phi}``.
"""

from __future__ import annotations

import numpy as np

from .algebra.ncpoly import MAT2, SYM2, Gen, generators
from .hilbert.rep import RepInstance
from .hilbert.truncop import Basis, TruncOp, scalar_space, shift_op

SYM_SERIES = ("pi1", "pi2", "pi3", "pi4", "pi5")
PHASE_ARITY = {"pi1": 2, "pi2": 1, "pi3": 1, "pi4": 1, "pi5": 0}
TENSOR_RANK = {"pi1": 0, "pi2": 1, "pi3": 1, "pi4": 2, "pi5": 3}
PHASE_NAMES = {"pi1": ("phi", "psi"), "pi2": ("phi",), "pi3": ("phi",), "pi4": ("phi",), "pi5": ()}

Z11, Z21, Z22 = generators(SYM2)


def _check_q(q: float) -> None:
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")


def _sqrt1m(x):
    return np.sqrt(np.clip(1.0 - x, 0.0, None))


def _eye(dim: int) -> TruncOp:
    return TruncOp.identity(Basis.product((dim,)))


def _diag(dim: int, values) -> TruncOp:
    return shift_op(dim, values, 0)


def _scalar(c: complex) -> TruncOp:
    return TruncOp(scalar_space(), np.array([[c]], dtype=np.complex128), ())


def build_sym_series(series: str, phases=(), q: float = 0.5, dims=(), literal: bool = False) -> RepInstance:
    """One member of a series of irreducible representations of the symmetric algebra.

    Parameters
    ----------
    series : str
        ``'pi1'`` .. ``'pi5'``.
    phases : sequence of float
        ``(phi, psi)`` for ``pi1``, ``(phi,)`` for ``pi2``-``pi4``, empty for ``pi5``.
    q : float
        Deformation parameter in (0, 1).
    dims : int or sequence of int
        Truncation per tensor factor (0, 1, 1, 2, 3 factors).
    literal : bool
        Build the formulas exactly as printed, without the two corrections.
    """
    if series not in SYM_SERIES:
        raise ValueError(f"unknown series {series!r}")
    _check_q(q)
    phases = tuple(float(p) for p in np.atleast_1d(np.asarray(phases, dtype=float)))
    if len(phases) != PHASE_ARITY[series]:
        raise ValueError(f"{series} takes {PHASE_ARITY[series]} phase(s), got {len(phases)}")
    rank = TENSOR_RANK[series]
    if np.isscalar(dims):
        dims = (int(dims),) * rank
    dims = tuple(int(d) for d in dims)
    if len(dims) != rank:
        raise ValueError(f"{series} needs {rank} truncation dims, got {len(dims)}")
    if any(d < 2 for d in dims):
        raise ValueError("truncation dims must be at least 2")

    params = dict(zip(PHASE_NAMES[series], phases))
    if series == "pi1":
        phi, psi = phases
        mod = 1.0 if literal else 1.0 / q
        gens = {
            Z11: _scalar(mod * np.exp(1j * psi)),
            Z21: _scalar(0.0),
            Z22: _scalar(np.exp(1j * phi)),
        }
    elif series == "pi2":
        (phi,), (n,) = phases, dims
        k = np.arange(n)
        gens = {
            Z11: shift_op(n, _sqrt1m(q ** (4 * k + 4)) / q, 1),
            Z21: TruncOp.zero(Basis.product((n,))),
            Z22: _eye(n) * np.exp(1j * phi),
        }
    elif series == "pi3":
        (phi,), (n,) = phases, dims
        k = np.arange(n)
        ph2 = 1.0 if literal else np.exp(2j * phi)
        gens = {
            Z11: shift_op(n, -ph2 * _sqrt1m(q ** (4 * k)) / q, -1),
            Z21: _diag(n, q ** (2 * k) * np.exp(1j * phi)),
            Z22: shift_op(n, _sqrt1m(q ** (4 * k + 4)), 1),
        }
    elif series == "pi4":
        (phi,) = phases
        gens = _pi4(q, phi, dims)
    else:
        gens = _pi5(q, dims)
    return RepInstance(SYM2, q, gens, params, f"{series}{'-literal' if literal else ''}")


def _multi_shift(dims, coeff, shifts, bandwidth) -> TruncOp:
    """Operator ``e_idx -> coeff(idx) e_{idx+shifts}`` on a product basis."""
    basis = Basis.product(dims)
    lv = basis.levels
    vals = coeff(*[lv[:, f] for f in range(len(dims))])
    tgt = lv + np.asarray(shifts)
    keep = np.all((tgt >= 0) & (tgt < np.asarray(dims)), axis=1)
    rows = np.ravel_multi_index(tgt[keep].T, dims)
    cols = np.flatnonzero(keep)
    import scipy.sparse as sp

    m = sp.csr_matrix((np.asarray(vals, dtype=np.complex128)[keep], (rows, cols)), shape=(basis.size,) * 2)
    return TruncOp(basis, m, bandwidth)


def _pi4(q, phi, dims):
    diag = _multi_shift(dims, lambda k, l: q ** (2 * k) * np.exp(1j * phi), (0, 0), (2, 1))
    off = _multi_shift(
        dims,
        lambda k, l: -_sqrt1m(q ** (4 * l)) * _sqrt1m(q ** (2 * k + 2)) * _sqrt1m(q ** (2 * k + 4)) / q,
        (2, -1),
        (2, 1),
    )
    return {
        Z11: diag + off,
        Z21: _multi_shift(dims, lambda k, l: q ** (2 * l) * _sqrt1m(q ** (2 * k + 2)), (1, 0), (1, 0)),
        Z22: _multi_shift(dims, lambda k, l: _sqrt1m(q ** (4 * l + 4)), (0, 1), (0, 1)),
    }


def _pi5(q, dims):
    up = _multi_shift(dims, lambda k, l, m: q ** (2 * l) * _sqrt1m(q ** (4 * m + 4)), (0, 0, 1), (1, 2, 1))
    across = _multi_shift(
        dims,
        lambda k, l, m: -_sqrt1m(q ** (4 * k)) * _sqrt1m(q ** (2 * l + 2)) * _sqrt1m(q ** (2 * l + 4)) / q,
        (-1, 2, 0),
        (1, 2, 1),
    )
    return {
        Z11: up + across,
        Z21: _multi_shift(dims, lambda k, l, m: q ** (2 * k) * _sqrt1m(q ** (2 * l + 2)), (0, 1, 0), (0, 1, 0)),
        Z22: _multi_shift(dims, lambda k, l, m: _sqrt1m(q ** (4 * k + 4)), (1, 0, 0), (1, 0, 0)),
    }


# --- quantum SU(2) ---------------------------------------------------------

def build_su2_rep(kind: str, q: float, dim: int = 1) -> dict:
    """Operators ``t_ij`` of the shift representation ``'su2_pi'`` or the counit ``'su2_eps'``.

    Keys are index pairs ``(i, j)``.
    """
    _check_q(q)
    if kind == "su2_eps":
        return {(i, j): _scalar(1.0 if i == j else 0.0) for i in (1, 2) for j in (1, 2)}
    if kind != "su2_pi":
        raise ValueError(f"unknown SU(2) representation {kind!r}")
    if dim < 1:
        raise ValueError("dim must be positive")
    n = np.arange(dim)
    return {
        (1, 1): shift_op(dim, _sqrt1m(q ** (2 * n)), -1),
        (1, 2): _diag(dim, q ** (n + 1)),
        (2, 1): _diag(dim, -(q ** n)),
        (2, 2): shift_op(dim, _sqrt1m(q ** (2 * n + 2)), 1),
    }


def build_disc_fock(t: float, dim: int) -> TruncOp:
    """Fock shift ``z e_n = sqrt(1 - t^(2n+2)) e_{n+1}`` of the quantum disc."""
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    n = np.arange(dim)
    return shift_op(dim, _sqrt1m(t ** (2 * n + 2)), 1)


# --- simplest representations ---------------------------------------------

def build_simplest(algebra: str, kind: str, q: float, size: int | None = None) -> RepInstance:
    """``calF0`` (one-dimensional), ``calF1`` (disc Fock through the corner) or ``calF2`` (Fock).

    ``size`` is the truncation for ``calF1``; for ``calF2`` it is the
    truncation per factor (``sym``, an alias of ``pi5``) or the Fock degree
    bound (``mat2``, default 4).
    """
    _check_q(q)
    if kind not in ("calF0", "calF1", "calF2"):
        raise ValueError(f"unknown simplest representation {kind!r}")
    gs = generators(algebra)
    if kind == "calF0":
        vals = {g: 0.0 for g in gs}
        vals[gs[0]] = 1.0 / q
        vals[Gen(algebra, 2, 2)] = 1.0
        return RepInstance(algebra, q, {g: _scalar(v) for g, v in vals.items()}, {}, f"{algebra}:calF0")
    if kind == "calF1":
        n = 12 if size is None else int(size)
        if n < 2:
            raise ValueError("truncation must be at least 2")
        t = q * q if algebra == SYM2 else q
        basis = Basis.product((n,))
        gens = {g: TruncOp.zero(basis) for g in gs}
        gens[gs[0]] = build_disc_fock(t, n) * (1.0 / q)
        gens[Gen(algebra, 2, 2)] = TruncOp.identity(basis)
        return RepInstance(algebra, q, gens, {}, f"{algebra}:calF1")
    if algebra == SYM2:
        n = 12 if size is None else int(size)
        rep = build_sym_series("pi5", (), q, (n, n, n))
        return RepInstance(SYM2, q, rep.gens, {}, "sym:calF2")
    degree = 4 if size is None else int(size)
    if degree < 1:
        raise ValueError("degree bound must be at least 1 for calF2")
    from .fock_numeric import fock_rep

    rep = fock_rep(algebra, q, degree)
    return RepInstance(algebra, q, rep.gens, {"degree": degree}, f"{algebra}:calF2")


__all__ = [
    "SYM_SERIES",
    "PHASE_ARITY",
    "build_sym_series",
    "build_su2_rep",
    "build_disc_fock",
    "build_simplest",
    "MAT2",
]
