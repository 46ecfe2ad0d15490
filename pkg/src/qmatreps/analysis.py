"""Reducibility and equivalence at truncation scale.

Tools for finding Fock-type (null) vectors, compressing cyclic
subrepresentations, spectral fingerprints and numerical intertwiners, plus
the eigenspace-decomposition checks that accompany the classification of the
symmetric algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from .algebra.ncpoly import MAT2, SYM2, generators
from .hilbert.rep import RepInstance, relation_residual_suite
from .hilbert.spectrum import diagonal_family, family_interior, joint_eigencells
from .hilbert.truncop import Basis, TruncOp
from .orbits import OrbitClass, locate_seed, match_spectrum

#: clustering tolerance for spectral labels; far below the gaps of q^4n
SPECTRUM_TOL = 1e-12
INTERTWINER_SEED = 20240612


def _gen_margin(rep: RepInstance) -> np.ndarray:
    if not rep.dims:
        return np.zeros(0, dtype=np.int64)
    return np.max([op.bandwidth for op in rep.gens.values()], axis=0)


def _columns(rep: RepInstance, idx: np.ndarray) -> np.ndarray:
    e = np.zeros((rep.size, idx.size), dtype=np.complex128)
    e[idx, np.arange(idx.size)] = 1.0
    return e


def _canonical(vecs: np.ndarray, levels: np.ndarray, tol: float) -> np.ndarray:
    """Deterministic orthonormal basis of ``span(vecs)``, built up from low levels.

    Basis vectors ``e_i`` are projected onto the span in order of total level;
    every projection that adds a new direction is kept.  Each vector is then
    phased so that its largest entry is real positive.
    """
    if vecs.shape[1] == 0:
        return vecs
    q, _ = np.linalg.qr(vecs)
    order = np.lexsort((np.arange(levels.shape[0]), levels.sum(axis=1)))
    out: list[np.ndarray] = []
    for i in order:
        if len(out) == q.shape[1]:
            break
        v = q @ q[i].conj()
        for u in out:
            v = v - u * (u.conj() @ v)
        nv = np.linalg.norm(v)
        if nv > math.sqrt(tol):
            out.append(v / nv)
    basis = np.column_stack(out)
    for k in range(basis.shape[1]):
        j = np.argmax(np.abs(basis[:, k]) > np.abs(basis[:, k]).max() * (1 - 1e-9))
        basis[:, k] *= np.exp(-1j * np.angle(basis[j, k]))
    return basis


def joint_kernel(rep: RepInstance, names, tol: float = 1e-9, margin=None, max_level=None) -> np.ndarray:
    """Orthonormal basis of the joint kernel of the named operators on interior vectors.

    ``max_level`` further restricts candidates to basis vectors whose level is
    at most that value in every factor, which keeps the solve small on large
    tensor products.
    """
    margin = _gen_margin(rep) if margin is None else margin
    idx = rep.basis.interior(margin) if rep.dims else np.arange(rep.size)
    if max_level is not None and rep.dims:
        idx = idx[np.all(rep.basis.levels[idx] <= max_level, axis=1)]
    if idx.size == 0:
        return np.zeros((rep.size, 0), dtype=np.complex128)
    cols = []
    for n in names:
        m = rep[n].mat
        block = m[:, idx]
        cols.append(block.toarray() if sp.issparse(block) else np.asarray(block))
    stack = np.vstack(cols)
    stack = stack[np.any(stack != 0, axis=1)]
    if stack.shape[0] == 0:
        stack = np.zeros((1, idx.size))
    _, s, vh = la.svd(stack, full_matrices=True)
    scale = max(1.0, s.max(initial=0.0))
    rank = int(np.sum(s > tol * scale))
    ker = np.zeros((rep.size, idx.size - rank), dtype=np.complex128)
    ker[idx] = vh[rank:].conj().T
    return _canonical(ker, rep.basis.levels, tol)


def null_cyclic_vectors(rep: RepInstance, tol: float = 1e-9, max_level=None) -> list[np.ndarray]:
    """Interior vectors annihilated by every starred generator."""
    names = [g.name + "*" for g in generators(rep.algebra)]
    k = joint_kernel(rep, names, tol, max_level=max_level)
    return [k[:, j] for j in range(k.shape[1])]


@dataclass
class CyclicSpan:
    """Orthonormal cyclic span with its word-length layers."""

    vectors: np.ndarray
    layers: np.ndarray
    depth: int


def cyclic_span(rep: RepInstance, v: np.ndarray, depth: int, tol: float = 1e-9) -> CyclicSpan:
    """Span of all words of length ``<= depth`` in the generators and adjoints applied to ``v``.

    Layer ``k`` holds the new directions reached by words of length ``k``.
    Raises ``ValueError`` when a vector that still has to be acted on leaves
    the interior, where the truncated generators are exact.
    """
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if abs(np.linalg.norm(v) - 1) > 1e-8:
        raise ValueError("start vector must have unit norm")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    inside = np.zeros(rep.size, dtype=bool)
    inside[rep.basis.interior(_gen_margin(rep)) if rep.dims else np.arange(rep.size)] = True
    ops = []
    for g in generators(rep.algebra):
        m = rep.op(g).mat
        ops.extend([m, m.conj().T])
    span = [v]
    layers = [0]
    frontier = [v]
    for k in range(1, depth + 1):
        for u in frontier:
            if np.linalg.norm(u[~inside]) > math.sqrt(tol):
                raise ValueError(f"cyclic span leaves the interior at word length {k - 1}; lower depth or raise truncation")
        new = []
        basis = np.column_stack(span)
        for u in frontier:
            for m in ops:
                w = m @ u
                for _ in range(2):  # twice is enough for Gram-Schmidt
                    w = w - basis @ (basis.conj().T @ w)
                    if new:
                        nb = np.column_stack(new)
                        w = w - nb @ (nb.conj().T @ w)
                nw = np.linalg.norm(w)
                if nw > math.sqrt(tol):
                    new.append(w / nw)
        if not new:
            break
        span.extend(new)
        layers.extend([k] * len(new))
        frontier = new
    return CyclicSpan(np.column_stack(span), np.array(layers, dtype=np.int64), depth)


def cyclic_compress(rep: RepInstance, v: np.ndarray, depth: int, tol: float = 1e-9) -> RepInstance:
    """Compression of ``rep`` to the cyclic span of ``v`` (see :func:`cyclic_span`).

    The result lives on a graded basis whose level is the word length, so
    each generator has bandwidth 1.  ``params['leakage']`` is the largest
    norm any generator pushes out of the span from layers below ``depth``;
    ``params['boundary_leakage']`` is the same from the last layer.
    """
    cs = cyclic_span(rep, v, depth, tol)
    Q = cs.vectors
    top = int(cs.layers.max())
    basis = Basis.graded(cs.layers, (top + 1,))
    gens = {}
    leak_in, leak_top = 0.0, 0.0
    inner = cs.layers < top if top == depth else np.ones(Q.shape[1], dtype=bool)
    for g in generators(rep.algebra):
        m = rep.op(g).mat
        for mm in (m, m.conj().T):
            out = mm @ Q
            resid = np.linalg.norm(out - Q @ (Q.conj().T @ out), axis=0)
            leak_in = max(leak_in, float(resid[inner].max(initial=0.0)))
            leak_top = max(leak_top, float(resid[~inner].max(initial=0.0)))
        gens[g] = TruncOp(basis, Q.conj().T @ (m @ Q), (1,))
    params = {"depth": depth, "span": int(Q.shape[1]), "leakage": leak_in, "boundary_leakage": leak_top}
    return RepInstance(rep.algebra, rep.q, gens, params, f"cyclic[{depth}]({rep.provenance})")


def vacuum_gram(rep: RepInstance, v: np.ndarray, degree: int) -> np.ndarray:
    """Numeric Gram matrix of the Fock basis words of ``degree`` applied to ``v``.

    For a null vector this equals the exact Fock Gram matrix evaluated at ``q``.
    """
    from .algebra.fock import fock_basis
    from .algebra.presentations import presentation
    from .hilbert.rep import apply_poly
    from .algebra.ncpoly import NCPoly
    from .algebra.laurent import ONE

    words = fock_basis(degree, presentation(rep.algebra))
    cols = np.column_stack(
        [apply_poly(NCPoly(rep.algebra, {w: ONE}), rep, v.reshape(-1, 1))[:, 0] for w in words]
    )
    return cols.conj().T @ cols


# --- spectral labels -------------------------------------------------------

def labelled_cells(rep: RepInstance, tol: float = SPECTRUM_TOL, window: int = 20):
    """Complete interior cells of the diagonal family with their labels.

    For ``sym`` the label is the orbit lattice coordinate ``(m, n)`` of the
    cell's joint eigenvalue (``None`` entries on fixed points); for ``mat2``
    it is the rounded eigenvalue tuple.
    """
    _, ops = diagonal_family(rep)
    cells = joint_eigencells(ops, tol, family_interior(rep), complete_only=True)
    out = []
    for vals, S in cells:
        if rep.algebra == SYM2:
            v = locate_seed(vals, rep.q, window, 1e-9)
            label = (v.orbit.value, v.m, v.n)
        else:
            label = tuple(round(x, 9) for x in vals)
        out.append((label, vals, S))
    return out


def family_spectrum(rep: RepInstance, tol: float = SPECTRUM_TOL) -> list[tuple]:
    """Joint spectrum of the diagonal family on interior vectors, with multiplicity."""
    _, ops = diagonal_family(rep)
    pts = []
    for vals, S in joint_eigencells(ops, tol, family_interior(rep)):
        pts.extend([vals] * S.shape[1])
    return sorted(pts)


# --- fingerprints ----------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    """Spectral invariants used as a proxy for the unitary equivalence class.

    ``multiplicity`` maps low spectral labels to multiplicities (``-1`` marks a
    multiplicity that grows with truncation); ``phases`` lists generator names
    with the eigenvalue angles on the distinguished kernel.
    """

    algebra: str
    orbit: str | None
    orbit_residual: float
    multiplicity: tuple
    phases: tuple
    space: tuple = field(default=())

    def matches(self, other: "Fingerprint", tol: float = 1e-8) -> bool:
        if (self.algebra, self.orbit, self.multiplicity) != (other.algebra, other.orbit, other.multiplicity):
            return False
        if [n for n, _ in self.phases] != [n for n, _ in other.phases]:
            return False
        for (_, a), (_, b) in zip(self.phases, other.phases):
            if len(a) != len(b):
                return False
            if any(abs(np.exp(1j * x) - np.exp(1j * y)) > tol for x, y in zip(a, b)):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "orbit": self.orbit,
            "orbit_residual": self.orbit_residual,
            "multiplicity": [[list(k) if isinstance(k, tuple) else k, m] for k, m in self.multiplicity],
            "phases": [[n, list(a)] for n, a in self.phases],
            "space": list(self.space),
        }


_KERNEL_BY_CLASS = {
    OrbitClass.OMEGA01: ("z11*",),
    OrbitClass.OMEGA10: ("z22*",),
    OrbitClass.OMEGA00: ("z21*", "z22*"),
}


def distinguished_kernel(rep: RepInstance, orbit: OrbitClass | None, tol: float = 1e-9) -> np.ndarray:
    """Interior kernel that carries the phase invariants (whole interior if trivial)."""
    if rep.algebra == SYM2 and orbit in _KERNEL_BY_CLASS:
        chain = [_KERNEL_BY_CLASS[orbit]]
    else:
        gs = generators(rep.algebra)
        chain = [tuple(g.name + "*" for g in gs), ("z2^2*",) if rep.algebra == MAT2 else ("z22*",)]
    for names in chain:
        k = joint_kernel(rep, names, tol)
        if k.shape[1]:
            return k
    idx = rep.basis.interior(_gen_margin(rep)) if rep.dims else np.arange(rep.size)
    return _columns(rep, idx)


def phase_invariants(rep: RepInstance, K: np.ndarray, tol: float = 1e-9) -> tuple:
    """Eigenvalue angles of each generator that leaves ``K`` invariant and is invertible on it."""
    out = []
    for g in generators(rep.algebra):
        m = rep.op(g).mat
        gk = m @ K
        c = K.conj().T @ gk
        if np.linalg.norm(gk - K @ c) > math.sqrt(tol) * max(1.0, np.linalg.norm(c)):
            continue
        ev = la.eigvals(c) if c.size else np.zeros(0)
        if ev.size == 0 or np.min(np.abs(ev)) < math.sqrt(tol):
            continue
        angles = sorted(round(float(np.angle(e)), 9) + 0.0 for e in ev)
        out.append((g.name, tuple(angles)))
    return tuple(out)


def _multiplicity_table(cells, window: int, orbit: OrbitClass) -> dict:
    """Multiplicities of the labels of ``orbit`` up to ``window`` in each lattice direction.

    Deep labels of one family crowd the fixed point ``(0, 1)`` and are dropped
    together with everything outside ``orbit``.
    """
    table: dict = {}
    for label, _, S in cells:
        if label[0] != orbit.value:
            continue
        if label[0] == OrbitClass.OMEGA00.value and (label[1] > window or label[2] > window):
            continue
        if label[0] == OrbitClass.OMEGA10.value and label[2] > window:
            continue
        table[label] = table.get(label, 0) + S.shape[1]
    return table


def fingerprint(rep: RepInstance, tol: float = 1e-9, window: int = 2, growth_from: RepInstance | None = None,
                check: float | None = 1e-8) -> Fingerprint:
    """Orbit class, low-label multiplicities and phase invariants of ``rep``.

    ``growth_from`` is the same object at a smaller truncation: labels whose
    multiplicity differs between the two are recorded as growing (``-1``).
    ``check`` is the relation-residual bound a representation must meet.
    """
    if check is not None:
        bad = [(n, r) for n, r in relation_residual_suite(rep) if r > check]
        if bad:
            raise ValueError(f"not a representation: relation {bad[0][0]} has residual {bad[0][1]:.3g}")
    cells = labelled_cells(rep)
    if rep.algebra == SYM2:
        orbit, resid = match_spectrum(family_spectrum(rep), rep.q, 1e-9)
        table = _multiplicity_table(cells, window, orbit)
    else:
        orbit, resid = None, 0.0
        table = {}
        for label, _, S in sorted(cells, key=lambda c: c[1], reverse=True)[: 2 * window + 2]:
            table[label] = table.get(label, 0) + S.shape[1]
    if growth_from is not None:
        other = fingerprint(growth_from, tol, window, None, check)
        before = dict(other.multiplicity)
        table = {k: (-1 if before.get(k, 0) != m else m) for k, m in table.items()}
    K = distinguished_kernel(rep, orbit, tol)
    phases = phase_invariants(rep, K, tol)
    mult = tuple(sorted(table.items(), key=lambda kv: str(kv[0])))
    return Fingerprint(rep.algebra, None if orbit is None else orbit.value, float(resid), mult, phases, rep.dims)


# --- intertwiners ----------------------------------------------------------

@dataclass
class EquivalenceReport:
    equivalent: bool
    fingerprints_match: bool
    matched_cells: int
    solution_dimension: int
    residual: float
    unitarity_defect: float
    reason: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _window_cells(rep: RepInstance, window: int):
    """Labelled cells inside the fingerprint window (all cells for ``mat2``, capped)."""
    cells = labelled_cells(rep)
    if rep.algebra == MAT2:
        return sorted(cells, key=lambda c: c[1], reverse=True)[: 2 * window + 2]
    if any(label[0] != OrbitClass.OMEGA01.value for label, _, _ in cells):
        # deep labels crowding the common accumulation point are not matched
        cells = [c for c in cells if c[0][0] != OrbitClass.OMEGA01.value]
    kept = []
    for label, vals, S in cells:
        cls, m, n = label
        if cls == OrbitClass.OMEGA00.value and (m > window or n > window):
            continue
        if cls == OrbitClass.OMEGA10.value and n > window:
            continue
        kept.append((label, vals, S))
    return kept


def _match_cells(a: RepInstance, b: RepInstance, window: int):
    cb = _window_cells(b, window)
    pairs = []
    for _, va, Sa in _window_cells(a, window):
        for _, vb, Sb in cb:
            if all(abs(x - y) <= 1e-8 for x, y in zip(va, vb)):
                pairs.append((Sa, Sb))
                break
    return pairs


def intertwiner(a: RepInstance, b: RepInstance, tol: float = 1e-8, window: int = 2):
    """Least-squares block intertwiner ``U g_a = g_b U`` on matched interior cells.

    Only cells in the low-label window take part, which keeps the system
    small and away from the truncation boundary.

    Returns ``(blocks, residual, unitarity_defect, null_dimension)``; the
    blocks are the polar (unitary) factors of a seeded generic solution.
    """
    pairs = _match_cells(a, b, window)
    if not pairs:
        raise ValueError("no spectral cells could be matched between the two truncations")
    if any(Sa.shape[1] != Sb.shape[1] for Sa, Sb in pairs):
        return None, math.inf, math.inf, 0
    sizes = [Sa.shape[1] for Sa, _ in pairs]
    offs = np.concatenate([[0], np.cumsum([d * d for d in sizes])])
    rows = []
    blocks_a, blocks_b = [], []
    for g in generators(a.algebra):
        ma, mb = a.op(g).dense(), b.op(g).dense()
        for A, B in ((ma, mb), (ma.conj().T, mb.conj().T)):
            for lam, (Sal, Sbl) in enumerate(pairs):
                ASl, BSl = A @ Sal, B @ Sbl
                for mu, (Sam, Sbm) in enumerate(pairs):
                    Ab = Sam.conj().T @ ASl
                    Bb = Sbm.conj().T @ BSl
                    if max(np.abs(Ab).max(initial=0), np.abs(Bb).max(initial=0)) < 1e-14:
                        continue
                    blocks_a.append((mu, lam, Ab))
                    blocks_b.append(Bb)
                    dm, dl = sizes[mu], sizes[lam]
                    eq = np.zeros((dm * dl, offs[-1]), dtype=np.complex128)
                    # U_mu Ab - Bb U_lam = 0 in row-major vec form
                    eq[:, offs[mu]:offs[mu + 1]] += np.kron(np.eye(dm), Ab.T)
                    eq[:, offs[lam]:offs[lam + 1]] -= np.kron(Bb, np.eye(dl))
                    rows.append(eq)
    M = np.vstack(rows) if rows else np.zeros((0, offs[-1]))
    _, s, vh = la.svd(M, full_matrices=True)
    sv = np.zeros(offs[-1])
    sv[: s.size] = s
    null = sv < tol * max(1.0, sv.max(initial=0.0))
    k = int(null.sum())
    if k == 0:
        return None, float(sv.min()), math.inf, 0
    basis = vh[null].conj().T
    coef = np.random.default_rng(INTERTWINER_SEED).normal(size=k) + 0j
    x = basis @ coef
    blocks = [x[offs[i]:offs[i + 1]].reshape(d, d) for i, d in enumerate(sizes)]
    scale = np.sqrt(sum(np.linalg.norm(u) ** 2 for u in blocks) / sum(sizes))
    blocks = [u / scale for u in blocks]
    polar = [la.polar(u)[0] for u in blocks]
    defect = max(np.linalg.norm(u - w, 2) for u, w in zip(blocks, polar))
    resid = 0.0
    for (mu, lam, Ab), Bb in zip(blocks_a, blocks_b):
        resid = max(resid, float(np.abs(polar[mu] @ Ab - Bb @ polar[lam]).max()))
    return polar, resid, float(defect), k


def equivalence_report(a: RepInstance, b: RepInstance, tol: float = 1e-8, window: int = 2) -> EquivalenceReport:
    if a.algebra != b.algebra or a.q != b.q:
        raise ValueError("equivalence needs the same algebra and q")
    fa, fb = fingerprint(a, window=window), fingerprint(b, window=window)
    ok_fp = fa.matches(fb, tol)
    if not ok_fp:
        return EquivalenceReport(False, False, 0, 0, math.inf, math.inf, "fingerprints differ")
    blocks, resid, defect, k = intertwiner(a, b, tol, window)
    n = len(_match_cells(a, b, window))
    if blocks is None:
        return EquivalenceReport(False, True, n, k, resid, defect, "no intertwiner on matched cells")
    ok = resid < tol and defect < math.sqrt(tol)
    return EquivalenceReport(ok, True, n, k, resid, defect, "" if ok else "intertwiner not unitary")


def equivalent(a: RepInstance, b: RepInstance, tol: float = 1e-8) -> bool:
    """Fingerprints agree and a unitary intertwiner exists on matched interior cells."""
    return equivalence_report(a, b, tol).equivalent


# --- decomposition checks --------------------------------------------------

def kernel_eigen_split(rep: RepInstance, kernel_of: str, eigen_of: str, tol: float = 1e-9):
    """Eigenvectors of ``eigen_of`` inside the interior kernel of ``kernel_of*``.

    Returns ``(eigenvalue, vector, leakage)`` triples, where leakage measures
    how far ``eigen_of`` moves the kernel off itself.
    """
    K = joint_kernel(rep, (kernel_of + "*",), tol)
    if K.shape[1] == 0:
        return []
    G = rep[eigen_of].dense()
    C = K.conj().T @ G @ K
    leak = float(np.linalg.norm(G @ K - K @ C))
    w, V = la.eig(C)
    order = np.lexsort((w.imag, w.real))
    out = []
    for i in order:
        v = K @ V[:, i]
        v = v / np.linalg.norm(v)
        j = int(np.argmax(np.abs(v)))
        out.append((complex(w[i]), v * np.exp(-1j * np.angle(v[j])), leak))
    return out


def diagonal_part(rep: RepInstance, name: str, cells) -> list[tuple]:
    """Blocks ``P_mu g P_mu`` of a generator on labelled cells."""
    m = rep[name].dense()
    return [(label, S.conj().T @ m @ S) for label, _, S in cells]


def transport_residuals(rep: RepInstance, rules: dict, tol: float = SPECTRUM_TOL) -> dict:
    """Largest component a generator sends outside its allowed target cells.

    ``rules`` maps generator name to a function ``label -> allowed labels``
    (``None`` skips the source cell).
    Only source cells whose allowed targets are all complete interior cells
    and whose image stays inside the truncation are tested.
    """
    cells = labelled_cells(rep, tol)
    by_label = {}
    for label, _, S in cells:
        by_label.setdefault(label, []).append(S)
    by_label = {k: np.hstack(v) for k, v in by_label.items()}
    inside = rep.basis.interior(_gen_margin(rep))
    inside_mask = np.zeros(rep.size, dtype=bool)
    inside_mask[inside] = True
    out = {}
    for name, allowed in rules.items():
        m = rep[name].dense()
        worst, tested = 0.0, 0
        for label, S in by_label.items():
            if np.abs(S[~inside_mask]).max(initial=0.0) > 1e-12:
                continue
            targets = allowed(label)
            if targets is None:
                continue
            if any(t not in by_label for t in targets if t is not None):
                continue
            img = m @ S
            for t in targets:
                if t is not None:
                    T = by_label[t]
                    img = img - T @ (T.conj().T @ img)
            worst = max(worst, float(np.linalg.norm(img, axis=0).max()))
            tested += 1
        out[name] = (worst, tested)
    return out


def omega00_transport(rep: RepInstance) -> dict:
    """``z21: H_mn -> H_m+1,n``, ``z22: H_mn -> H_m,n+1``, ``z11: H_mn -> H_mn + H_m+2,n-1``."""
    c = OrbitClass.OMEGA00.value

    def lab(m, n):
        return (c, m, n) if m >= 0 and n >= 0 else None

    def rule(shifts):
        return lambda L: None if L[0] != c else [lab(L[1] + dm, L[2] + dn) for dm, dn in shifts]

    return transport_residuals(
        rep,
        {"z21": rule([(1, 0)]), "z22": rule([(0, 1)]), "z11": rule([(0, 0), (2, -1)])},
    )


def omega10_diagonal_check(rep: RepInstance) -> tuple[float, float]:
    """On ``H_n``: diagonal part of ``z11`` and the defect of ``z11 = -q^3 z21^2 z22* (1 - z22 z22*)^-1``.

    Both are maxima over interior vectors; both vanish for the corrected series.
    """
    q = rep.q
    cells = labelled_cells(rep)
    diag = max((float(np.abs(D).max(initial=0.0)) for _, D in diagonal_part(rep, "z11", cells)), default=0.0)
    z11, z21, z22 = (rep[n].dense() for n in ("z11", "z21", "z22"))
    n = rep.size
    inv = la.solve(np.eye(n) - z22 @ z22.conj().T, np.eye(n))
    rhs = -(q ** 3) * z21 @ z21 @ z22.conj().T @ inv
    idx = rep.basis.interior(np.array(_gen_margin(rep)) * 3)
    off = float(np.linalg.norm((z11 - rhs)[:, idx], axis=0).max())
    return diag, off


def omega00_oscillator_check(rep: RepInstance) -> float:
    """Blockwise ``D*D - q^4 D D* = (1 - q^4) q^4m`` for the diagonal part ``D`` of ``z11`` on ``H_mn``."""
    q = rep.q
    worst = 0.0
    for label, D in diagonal_part(rep, "z11", labelled_cells(rep)):
        if label[0] != OrbitClass.OMEGA00.value:
            continue
        m = label[1]
        lhs = D.conj().T @ D - q ** 4 * D @ D.conj().T
        worst = max(worst, float(np.abs(lhs - (1 - q ** 4) * q ** (4 * m) * np.eye(D.shape[0])).max()))
    return worst


def omega01_oscillator_check(rep: RepInstance) -> float:
    """Interior residual of ``z11* z11 = q^4 z11 z11* + q^-2 - q^2``."""
    from .algebra.parser import parse_expression
    from .hilbert.rep import interior_residual

    p = parse_expression("z11* z11 - q^4 z11 z11* - q^-2 + q^2", SYM2)
    return interior_residual(p, rep)


def approximate_eigen_residual(rep: RepInstance, kernel_of: str, eigen_of: str, phi: float,
                               tol: float = 1e-9) -> float:
    """``min ||(g - e^{i phi}) v||`` over unit ``v`` in the interior kernel of ``kernel_of*``.

    Tends to zero with truncation when ``e^{i phi}`` is an approximate
    eigenvalue of ``g`` on that kernel.
    """
    margin = np.array(_gen_margin(rep)) * 2
    K = joint_kernel(rep, (kernel_of + "*",), tol, margin=margin)
    if K.shape[1] == 0:
        return math.inf
    G = rep[eigen_of].dense()
    return float(la.svdvals(G @ K - np.exp(1j * phi) * K)[-1])


def kernel_invariance(rep: RepInstance, kernel_of: str, names, tol: float = 1e-9) -> float:
    """``max ||kernel_of* g v||`` for ``g`` in ``names`` and ``v`` in the deep kernel of ``kernel_of*``."""
    margin = np.array(_gen_margin(rep)) * 2
    K = joint_kernel(rep, (kernel_of + "*",), tol, margin=margin)
    if K.shape[1] == 0:
        return 0.0
    Z = rep[kernel_of + "*"].dense()
    return max(float(np.abs(Z @ rep[n].dense() @ K).max()) for n in names)


def interior_identity_defect(rep: RepInstance, left: str, right: str, sign: float = 1.0) -> float:
    """``max |left - sign * right|`` over interior columns."""
    idx = rep.basis.interior(_gen_margin(rep)) if rep.dims else np.arange(rep.size)
    d = (rep[left].dense() - sign * rep[right].dense())[:, idx]
    return float(np.abs(d).max(initial=0.0))


__all__ = [
    "SPECTRUM_TOL",
    "Fingerprint",
    "CyclicSpan",
    "EquivalenceReport",
    "joint_kernel",
    "null_cyclic_vectors",
    "cyclic_span",
    "cyclic_compress",
    "vacuum_gram",
    "labelled_cells",
    "family_spectrum",
    "fingerprint",
    "intertwiner",
    "equivalence_report",
    "equivalent",
    "kernel_eigen_split",
    "omega00_transport",
    "omega10_diagonal_check",
    "omega00_oscillator_check",
    "omega01_oscillator_check",
    "approximate_eigen_residual",
    "kernel_invariance",
    "interior_identity_defect",
]
