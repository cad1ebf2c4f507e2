"""Exact arithmetic on finite metric windows.

A window is a finite point set with a total symmetric exact distance
oracle and a distinguished base point. On top of it sit the inner
product of two points seen from the base, horofunctions, the minimal
hyperbolicity defect over all triples, and the gap between the inner
product and its horofunction lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConstructionError, DomainError
from .halfexact import HalfExact


class MetricWindow:
    """Finite point set + exact distance oracle + base point.

    The oracle must be total on the window: with ``validate=True`` (the
    default) totality, symmetry, zero diagonal and positivity are checked
    at construction, so a partial oracle fails here and not at query time.
    The triangle inequality is quadratic-per-triple and is left to the
    oracle (the built-in word metrics satisfy it; property tests cover
    them). Windows are immutable once built.
    """

    def __init__(self, points, dist, base, *, validate: bool = True, bulk=None):
        self._points = tuple(points)
        self._index = {p: i for i, p in enumerate(self._points)}
        if len(self._index) != len(self._points):
            raise ConstructionError("window points must be distinct")
        if self._points and base not in self._index:
            raise ConstructionError("window base point must be one of the points")
        self._dist = dist
        self._base = base
        self._bulk = bulk
        self._matrix = None
        if validate and self._points:
            self._validate()

    def _validate(self):
        pts = self._points
        for i, p in enumerate(pts):
            if self._oracle(p, p) != 0:
                raise ConstructionError(f"dist({p}, {p}) must be 0")
            for q in pts[i + 1 :]:
                d1 = self._oracle(p, q)
                d2 = self._oracle(q, p)
                if d1 != d2:
                    raise ConstructionError(f"distance oracle is not symmetric at ({p}, {q})")
                if d1 <= 0:
                    raise ConstructionError(f"dist({p}, {q}) must be positive for distinct points")

    def _oracle(self, p, q):
        try:
            v = self._dist(p, q)
        except KeyError as e:
            raise ConstructionError(f"distance oracle is not total: missing ({p}, {q})") from e
        if v is None:
            raise ConstructionError(f"distance oracle is not total: missing ({p}, {q})")
        if not isinstance(v, (int, Fraction)):
            raise ConstructionError(
                f"distances must be exact ints or Fractions, got {type(v).__name__}"
            )
        return v

    @classmethod
    def from_table(cls, points, table: dict, base) -> "MetricWindow":
        """Window from an explicit pair table; either key order is accepted
        and d(p, p) = 0 is implied."""

        def dist(p, q):
            if p == q:
                return 0
            v = table.get((p, q))
            if v is None:
                v = table.get((q, p))
            if v is None:
                raise ConstructionError(f"distance table is missing the pair ({p}, {q})")
            return v

        return cls(points, dist, base, validate=True)

    @property
    def points(self) -> tuple:
        return self._points

    @property
    def base(self):
        return self._base

    def __len__(self) -> int:
        return len(self._points)

    def index(self, p) -> int:
        i = self._index.get(p)
        if i is None:
            raise DomainError(f"{p!r} is not a point of this window")
        return i

    def distance(self, x, y):
        self.index(x)
        self.index(y)
        return self._dist(x, y)

    def distance_matrix(self):
        """All pairwise distances: an int32 numpy matrix for integer
        metrics, or a nested list of exact values when any distance is a
        Fraction."""
        if self._matrix is None:
            self._matrix = self._build_matrix()
        return self._matrix

    def _build_matrix(self):
        if self._bulk is not None:
            m = self._bulk()
            if not isinstance(m, np.ndarray):
                raise ConstructionError("bulk distance builder must return a numpy array")
            return m
        n = len(self._points)
        rows = [[0] * n for _ in range(n)]
        integral = True
        for i in range(n):
            for j in range(i + 1, n):
                v = self._dist(self._points[i], self._points[j])
                if isinstance(v, Fraction):
                    if v.denominator == 1:
                        v = int(v)
                    else:
                        integral = False
                rows[i][j] = v
                rows[j][i] = v
        if integral:
            return np.array(rows, dtype=np.int32)
        return rows


@dataclass(frozen=True)
class DeltaReport:
    """Minimal hyperbolicity defect of a window and, when it is positive,
    the lexicographically first triple attaining it."""

    delta: HalfExact
    witness: tuple | None

    def as_json(self) -> dict:
        return {
            "delta": str(self.delta),
            "witness": None if self.witness is None else [str(p) for p in self.witness],
        }


def gromov_product(w: MetricWindow, x, y) -> HalfExact:
    """Half of d(x,0) + d(y,0) - d(x,y), seen from the window base 0.

    Always between 0 and min(d(x,0), d(y,0)).
    """
    b = w.base
    return HalfExact(w.distance(b, x) + w.distance(b, y) - w.distance(x, y))

def horofunction(w: MetricWindow, z, x):
    """d(x,0) - d(x,z): the height of x on the horofunction of z.

    Bounded by d(0,z) in absolute value and 1-Lipschitz in x.
    """
    return w.distance(w.base, x) - w.distance(x, z)


def product_horofunction_gap(w: MetricWindow, x, y, z) -> HalfExact:
    """(x.y) - (h_z(x) + h_z(y)) / 2, where h_z is the horofunction of z.

    Nonnegative by the triangle inequality; zero exactly when z lies on a
    geodesic between x and y.
    """
    prod = gromov_product(w, x, y)
    return HalfExact(prod.doubled - (horofunction(w, z, x) + horofunction(w, z, y)))


def _delta_scan_reference(matrix, base_index: int):
    """Plain cubic scan over ordered triples; exact on ints and Fractions.

    Returns the doubled defect and the lexicographically first witness
    index triple, or None when the defect is 0. Serves as the oracle for
    the jitted scan and as the execution path for non-integer windows.
    """
    n = len(matrix)
    norms = [matrix[base_index][j] for j in range(n)]
    best = 0
    witness = None
    for x in range(n):
        row_x = matrix[x]
        for y in range(n):
            pxy = norms[x] + norms[y] - row_x[y]
            row_y = matrix[y]
            for z in range(n):
                pxz = norms[x] + norms[z] - row_x[z]
                pyz = norms[y] + norms[z] - row_y[z]
                v = min(pxz, pyz) - pxy
                if v > best:
                    best = v
                    witness = (x, y, z)
    return best, witness


def min_delta(w: MetricWindow) -> DeltaReport:
    """Smallest delta making the triple inequality

        (x.y) >= min((x.z), (y.z)) - delta

    hold over every ordered triple of the window, with the base point
    fixed. Empty and singleton windows give 0 with no witness (vacuous
    quantification); the witness is reported only when delta > 0.
    """
    if len(w) <= 1:
        return DeltaReport(HalfExact(0), None)
    matrix = w.distance_matrix()
    base_index = w.index(w.base)
    if isinstance(matrix, np.ndarray):
        from . import kernels

        norms = np.ascontiguousarray(matrix[base_index]).astype(np.int64)
        dist = np.ascontiguousarray(matrix).astype(np.int64)
        best = int(kernels.delta_scan(dist, norms))
        if best == 0:
            return DeltaReport(HalfExact(0), None)
        ix, iy, iz = kernels.delta_witness(dist, norms, best)
        # the witness rescan must find what the bound scan found
        assert ix >= 0, "witness rescan failed to reproduce the defect bound"
        pts = w.points
        return DeltaReport(HalfExact(best), (pts[int(ix)], pts[int(iy)], pts[int(iz)]))
    best, witness = _delta_scan_reference(matrix, base_index)
    if not witness or best == 0:
        return DeltaReport(HalfExact(0), None)
    pts = w.points
    return DeltaReport(HalfExact(best), tuple(pts[i] for i in witness))
