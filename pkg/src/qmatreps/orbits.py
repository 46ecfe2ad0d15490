"""The affine Z^2 action on joint spectra and the admissibility classification.

``F1(x1, x2) = (q^2 x1 - (1 - q^2) x2 + 1 - q^2, x2)`` and
``F2(x1, x2) = (q^4 x1, q^4 x2 + 1 - q^4)`` describe how the commuting pair
``(z21 z21*, z22 z22*)`` transports past ``z21`` and ``z22``.  A bounded
representation needs every backward chain to stop exactly at zero or to sit
at a fixed point, which leaves three orbit families:

* ``Omega01``: the fixed point ``(0, 1)``;
* ``Omega10``: ``(q^4n, 1 - q^4n)``, on the fixed line ``x1 = 1 - x2`` of ``F1``;
* ``Omega00``: ``(q^4n (1 - q^2m), 1 - q^4n)``, terminating in both directions.

Floats are compared to a tolerance; ``Fraction`` inputs (coordinates may also
be Laurent expressions in ``q``) are decided exactly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple

from .algebra.laurent import LaurentScalar


class OrbitClass(str, Enum):
    OMEGA00 = "Omega00"
    OMEGA10 = "Omega10"
    OMEGA01 = "Omega01"
    INADMISSIBLE = "Inadmissible"

    def __str__(self) -> str:
        return self.value


ADMISSIBLE = (OrbitClass.OMEGA01, OrbitClass.OMEGA10, OrbitClass.OMEGA00)


class OrbitPoint(NamedTuple):
    x1: object
    x2: object


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction, LaurentScalar))


def _coord(x, q):
    if isinstance(x, LaurentScalar):
        return x.evaluate(q)
    return x


def step(p, k: int, direction: str = "fwd", q=0.5) -> OrbitPoint:
    """Apply ``F1``/``F2`` (``direction='fwd'``) or the exact inverse (``'inv'``)."""
    x1, x2 = (_coord(c, q) for c in p)
    q2, q4 = q * q, q ** 4
    if (k, direction) == (1, "fwd"):
        return OrbitPoint(q2 * x1 - (1 - q2) * x2 + 1 - q2, x2)
    if (k, direction) == (1, "inv"):
        return OrbitPoint((x1 + (1 - q2) * x2 - (1 - q2)) / q2, x2)
    if (k, direction) == (2, "fwd"):
        return OrbitPoint(q4 * x1, q4 * x2 + 1 - q4)
    if (k, direction) == (2, "inv"):
        return OrbitPoint(x1 / q4, (x2 - 1 + q4) / q4)
    raise ValueError(f"bad step ({k}, {direction!r}); k in {{1, 2}}, direction in {{'fwd', 'inv'}}")


def orbit_point(seed, m: int, n: int, q=0.5) -> OrbitPoint:
    """``F2^n F1^m (seed)`` in closed form; negative exponents use the inverses."""
    x1, x2 = (_coord(c, q) for c in seed)
    a, b = q ** (2 * m), q ** (4 * n)
    return OrbitPoint(a * b * x1 - b * (1 - a) * (x2 - 1), b * x2 + 1 - b)


def iterate(seed, m: int, n: int, q=0.5) -> OrbitPoint:
    """``F2^n F1^m (seed)`` by repeated stepping (reference for :func:`orbit_point`)."""
    p = OrbitPoint(*(_coord(c, q) for c in seed))
    for _ in range(abs(m)):
        p = step(p, 1, "fwd" if m > 0 else "inv", q)
    for _ in range(abs(n)):
        p = step(p, 2, "fwd" if n > 0 else "inv", q)
    return p


@dataclass(frozen=True)
class SeedVerdict:
    """Classification of one point with its lattice coordinates (``m`` is ``None`` on the fixed line)."""

    orbit: OrbitClass
    m: int | None
    n: int | None
    distance: float


def _close(a, b, tol, exact) -> bool:
    return a == b if exact else abs(a - b) <= tol


def locate_seed(seed, q=0.5, window: int = 20, tol: float = 1e-9) -> SeedVerdict:
    """Backward-termination classification with the matching ``(m, n)``."""
    if window < 1:
        raise ValueError("window must be at least 1")
    x1, x2 = (_coord(c, q) for c in seed)
    exact = isinstance(q, Fraction) and all(isinstance(c, (int, Fraction)) for c in (x1, x2))
    if _close(x1, 0, tol, exact) and _close(x2, 1, tol, exact):
        return SeedVerdict(OrbitClass.OMEGA01, None, None, float(math.hypot(x1, x2 - 1)))
    for n in range(window + 1):
        h = q ** (4 * n)
        if not _close(x2, 1 - h, tol, exact):
            continue
        if _close(x1, h, tol, exact):
            return SeedVerdict(OrbitClass.OMEGA10, None, n, float(math.hypot(x1 - h, x2 - 1 + h)))
        for m in range(window + 1):
            t = h * (1 - q ** (2 * m))
            if _close(x1, t, tol, exact):
                return SeedVerdict(OrbitClass.OMEGA00, m, n, float(math.hypot(x1 - t, x2 - 1 + h)))
    return SeedVerdict(OrbitClass.INADMISSIBLE, None, None, math.inf)


def classify_seed(seed, q=0.5, window: int = 20, tol: float = 1e-9) -> OrbitClass:
    """Orbit family of a spectral point, or ``Inadmissible``."""
    return locate_seed(seed, q, window, tol).orbit


def class_distance(point, orbit: OrbitClass, q: float, window: int = 20) -> float:
    """Euclidean distance from ``point`` to the windowed lattice of ``orbit``."""
    x1, x2 = (float(c) for c in point)
    q = float(q)
    if orbit is OrbitClass.OMEGA01:
        pts = [(0.0, 1.0)]
    elif orbit is OrbitClass.OMEGA10:
        pts = [(q ** (4 * n), 1 - q ** (4 * n)) for n in range(window + 1)]
    elif orbit is OrbitClass.OMEGA00:
        pts = [
            (q ** (4 * n) * (1 - q ** (2 * m)), 1 - q ** (4 * n))
            for n in range(window + 1)
            for m in range(window + 1)
        ]
    else:
        return math.inf
    return min(math.hypot(x1 - a, x2 - b) for a, b in pts)


def match_spectrum(points: Iterable, q=0.5, tol: float = 1e-9, window: int = 20) -> tuple[OrbitClass, float]:
    """Majority orbit class of a joint spectrum and the worst distance to it.

    Every family accumulates at ``(0, 1)``, so points classified ``Omega01``
    only vote when nothing else is present.  Any inadmissible point makes the
    whole spectrum ``Inadmissible`` (the residual is then that point's
    distance to the nearest admissible lattice).
    """
    points = list(points)
    if not points:
        raise ValueError("empty spectrum")
    classes = [classify_seed(p, q, window, tol) for p in points]
    bad = [p for p, c in zip(points, classes) if c is OrbitClass.INADMISSIBLE]
    if bad:
        worst = max(min(class_distance(p, c, q, window) for c in ADMISSIBLE) for p in bad)
        return OrbitClass.INADMISSIBLE, worst
    counts = {c: classes.count(c) for c in ADMISSIBLE}
    if counts[OrbitClass.OMEGA10] or counts[OrbitClass.OMEGA00]:
        counts[OrbitClass.OMEGA01] = 0
    best = max(ADMISSIBLE, key=lambda c: counts[c])  # ties keep the earlier class
    return best, max(class_distance(p, best, q, window) for p in points)


def sweep_csv(seeds: Iterable, q=0.5, window: int = 20, tol: float = 1e-9) -> str:
    """CSV rows ``x1,x2,class,m,n`` for a batch of seeds."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x1", "x2", "class", "m", "n"])
    for seed in seeds:
        v = locate_seed(seed, q, window, tol)
        writer.writerow([repr(float(seed[0])), repr(float(seed[1])), v.orbit.value,
                         "" if v.m is None else v.m, "" if v.n is None else v.n])
    return buf.getvalue()
