"""Finite-scale boundary machinery: divergence certificates, horofunction
profiles, the two boundary equivalences, the sphere witness, the quotient
partition, extended products, and the continuity probe.

A limit statement is not computable, but a monotone certificate is: every
"grows without bound" claim is reified as the nondecreasing function
N -> (minimum of the tested quantity over the sample tail from N), with a
threshold M and the tail rule that a pass needs some N at or below half
the horizon. Growing the horizon only strengthens such a certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConstructionError, DomainError, InconclusiveError
from .groups import (
    FreeGroupSpec,
    GroupElement,
    GroupSpec,
    build_ball,
    element_norm,
    encode_free_words,
    word_distance,
    word_norm,
)
from .halfexact import HalfExact
from .rays import RayTruncation

DEFAULT_PROBE_RADIUS = 6


# ---------------------------------------------------------------------------
# samples


@dataclass(frozen=True)
class BoundarySample:
    """A strictly norm-increasing tail of points standing in for a boundary
    point, with a label for reports."""

    spec: GroupSpec
    points: tuple[GroupElement, ...]
    norms: tuple[int, ...]
    label: str

    def __post_init__(self):
        if not self.points:
            raise ConstructionError(f"sample {self.label!r} is empty")
        if len(self.norms) != len(self.points):
            raise ConstructionError(f"sample {self.label!r} norms do not match its points")
        for p in self.points:
            if p.spec != self.spec:
                raise ConstructionError(f"sample {self.label!r} mixes group specs")
        for i, n in enumerate(self.norms):
            if n < 1:
                raise ConstructionError(
                    f"sample {self.label!r} contains the identity; norms must grow from 1"
                )
            if i > 0 and n <= self.norms[i - 1]:
                raise ConstructionError(
                    f"sample {self.label!r} norms are not strictly increasing "
                    "(not unbounded along the generators)"
                )

    @property
    def horizon(self) -> int:
        return len(self.points)

    @classmethod
    def from_points(cls, spec: GroupSpec, points, label: str) -> "BoundarySample":
        pts = tuple(points)
        norms = tuple(element_norm(spec, p, max_radius=1 << 20) for p in pts)
        return cls(spec, pts, norms, label)

    @classmethod
    def from_ray(cls, ray: RayTruncation, label: str) -> "BoundarySample":
        """Sample from a ray truncation: the parameter-0 base point is
        dropped and consecutive duplicates are merged."""
        pts: list[GroupElement] = []
        for t, p in ray.samples:
            if t == 0 or p.is_identity():
                continue
            if pts and pts[-1] == p:
                continue
            pts.append(p)
        if not pts:
            raise ConstructionError(f"ray truncation for {label!r} has no nonzero samples")
        return cls.from_points(ray.spec, pts, label)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DivergenceCertificate:
    """values[N-1] = min of the tested quantity over tail indices >= N.
    Nondecreasing in N; the verdict passes when the threshold is reached
    at some N with 2N <= horizon."""

    quantity: str
    threshold: int | Fraction
    values: tuple[HalfExact, ...]
    passed: bool
    pass_index: int | None

    @property
    def horizon(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> HalfExact:
        if not 1 <= n <= len(self.values):
            raise DomainError(f"certificate index {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def as_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "threshold": str(self.threshold),
            "horizon": self.horizon,
            "values": [str(v) for v in self.values],
            "verdict": "pass" if self.passed else "fail",
            "pass_index": self.pass_index,
        }


def _certificate(quantity: str, doubled_tail_min: list[int], threshold) -> DivergenceCertificate:
    values = tuple(HalfExact(d) for d in doubled_tail_min)
    pass_index = None
    for i, v in enumerate(values):
        if v >= threshold:
            pass_index = i + 1
            break
    horizon = len(values)
    passed = pass_index is not None and 2 * pass_index <= horizon
    return DivergenceCertificate(quantity, threshold, values, passed, pass_index)


def _doubled_product(spec, norms_a, pa, norms_b, pb, radius) -> int:
    return norms_a + norms_b - word_distance(spec, pa, pb, radius)


def converges_to_infinity(s: BoundarySample, threshold, radius: int) -> DivergenceCertificate:
    """Certificate for the pair products (x_n . x_k) over all tail pairs
    n, k >= N."""
    h = s.horizon
    pts, norms = s.points, s.norms
    # row minima over k >= n, then a reverse scan gives the square tail minima
    row_min = [0] * h
    for i in range(h):
        m = None
        for j in range(i, h):
            p = _doubled_product(s.spec, norms[i], pts[i], norms[j], pts[j], radius)
            if m is None or p < m:
                m = p
        row_min[i] = m
    tail = [0] * h
    cur = None
    for i in range(h - 1, -1, -1):
        cur = row_min[i] if cur is None else min(cur, row_min[i])
        tail[i] = cur
    return _certificate(f"tail pair product of {s.label}", tail, threshold)


def _paired_tail_minima(a: BoundarySample, b: BoundarySample, radius: int) -> list[int]:
    h = min(a.horizon, b.horizon)
    vals = [
        _doubled_product(a.spec, a.norms[i], a.points[i], b.norms[i], b.points[i], radius)
        for i in range(h)
    ]
    tail = [0] * h
    cur = None
    for i in range(h - 1, -1, -1):
        cur = vals[i] if cur is None else min(cur, vals[i])
        tail[i] = cur
    return tail


def _double_index_tail_minima(a: BoundarySample, b: BoundarySample, radius: int) -> list[int]:
    ha, hb = a.horizon, b.horizon
    h = min(ha, hb)
    prod = [
        [
            _doubled_product(a.spec, a.norms[i], a.points[i], b.norms[j], b.points[j], radius)
            for j in range(hb)
        ]
        for i in range(ha)
    ]
    tail = [0] * h
    cur = None
    for n in range(h - 1, -1, -1):
        edge = min(min(prod[n][n:hb]), min(prod[i][n] for i in range(n, ha)))
        cur = edge if cur is None else min(cur, edge)
        tail[n] = cur
    return tail


def _require_convergent(s: BoundarySample, threshold, radius: int):
    cert = converges_to_infinity(s, threshold, radius)
    if not cert.passed:
        raise DomainError(
            f"sample {s.label!r} does not certify divergence at threshold {threshold}"
        )


def gromov_equiv(
    a: BoundarySample,
    b: BoundarySample,
    threshold,
    radius: int,
    double_index: bool = False,
) -> DivergenceCertificate:
    """Certificate for the paired products (a_n . b_n); a pass declares the
    two samples equivalent in the sequence sense at the given threshold.

    ``double_index=True`` instead certifies min over all pairs (a_n . b_k)
    with n, k >= N; no relation between the two finite-scale rules is
    asserted anywhere.
    """
    if a.spec != b.spec:
        raise DomainError(f"samples {a.label!r} and {b.label!r} use different group specs")
    _require_convergent(a, threshold, radius)
    _require_convergent(b, threshold, radius)
    if double_index:
        tail = _double_index_tail_minima(a, b, radius)
        name = f"tail pair product of {a.label} and {b.label}"
    else:
        tail = _paired_tail_minima(a, b, radius)
        name = f"paired product of {a.label} and {b.label}"
    return _certificate(name, tail, threshold)


# ---------------------------------------------------------------------------
# horofunction profiles


@dataclass(frozen=True)
class HorofunctionProfile:
    """Per-probe stabilized horofunction values of a sample.

    ``indices[i]`` is the first sample position from which the values stay
    within tol of the final one; a probe is flagged stable when that
    happens by half the horizon. For integer metrics any tol below 1 means
    exact stabilization.
    """

    label: str
    horizon: int
    tol: int | Fraction
    probes: tuple[GroupElement, ...]
    values: tuple[int | Fraction, ...]
    indices: tuple[int, ...]
    stable: tuple[bool, ...]

    def as_json(self) -> dict:
        return {
            "sample": self.label,
            "horizon": self.horizon,
            "tol": str(self.tol),
            "probes": [
                {
                    "probe": str(p),
                    "value": str(v),
                    "stabilization_index": i,
                    "stable": st,
                }
                for p, v, i, st in zip(self.probes, self.values, self.indices, self.stable)
            ],
        }


def _profile_rows(s: BoundarySample, probes, radius: int):
    """phi_z(x_n) for every probe z (rows) and sample index n (columns)."""
    spec = s.spec
    if (
        isinstance(spec, FreeGroupSpec)
        and not spec.extra_generators
        and len(probes) * s.horizon >= 4096
    ):
        from . import kernels

        enc_p, len_p = encode_free_words([z.data for z in probes])
        enc_x, len_x = encode_free_words([p.data for p in s.points])
        lcp = kernels.lcp_matrix(enc_p, len_p, enc_x, len_x)
        rows = 2 * lcp.astype(np.int64) - len_p.astype(np.int64)[:, None]
        return [list(map(int, r)) for r in rows]
    return [
        [s.norms[i] - word_distance(spec, s.points[i], z, radius) for i in range(s.horizon)]
        for z in probes
    ]


def horofunction_profile(
    s: BoundarySample, probes, tol: int | Fraction = 0, radius: int = 0
) -> HorofunctionProfile:
    """Stabilized horofunction values of the sample on the given probes."""
    probes = tuple(probes)
    if not probes:
        raise DomainError("probe set must be nonempty")
    for z in probes:
        if z.spec != s.spec:
            raise DomainError("probes must belong to the sample's group spec")
    rows = _profile_rows(s, probes, radius)
    h = s.horizon
    values = []
    indices = []
    stable = []
    for row in rows:
        final = row[-1]
        idx = h
        while idx > 1 and abs(row[idx - 2] - final) <= tol:
            idx -= 1
        values.append(final)
        indices.append(idx)
        stable.append(2 * idx <= h)
    return HorofunctionProfile(
        s.label, h, tol, probes, tuple(values), tuple(indices), tuple(stable)
    )


@dataclass(frozen=True)
class MetricEquivalenceReport:
    """Probe-by-probe comparison of two stabilized profiles. The verdict is
    'inconclusive' (not 'fail') when some probe fails to stabilize."""

    label_a: str
    label_b: str
    tol: int | Fraction
    verdict: str  # equivalent | not-equivalent | inconclusive
    rows: tuple[tuple[GroupElement, int | Fraction, int | Fraction, int | Fraction], ...]
    unstable_probes: tuple[GroupElement, ...]

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"

    def as_json(self) -> dict:
        return {
            "a": self.label_a,
            "b": self.label_b,
            "tol": str(self.tol),
            "verdict": self.verdict,
            "rows": [
                {"probe": str(p), "a": str(va), "b": str(vb), "difference": str(d)}
                for p, va, vb, d in self.rows
            ],
            "unstable_probes": [str(p) for p in self.unstable_probes],
        }


def _compare_profiles(
    pa: HorofunctionProfile, pb: HorofunctionProfile, tol
) -> MetricEquivalenceReport:
    rows = []
    unstable = []
    equivalent = True
    for i, z in enumerate(pa.probes):
        va, vb = pa.values[i], pb.values[i]
        rows.append((z, va, vb, va - vb))
        if not (pa.stable[i] and pb.stable[i]):
            unstable.append(z)
        elif abs(va - vb) > tol:
            equivalent = False
    if unstable:
        verdict = "inconclusive"
    elif equivalent:
        verdict = "equivalent"
    else:
        verdict = "not-equivalent"
    return MetricEquivalenceReport(
        pa.label, pb.label, tol, verdict, tuple(rows), tuple(unstable)
    )


def default_probes(spec: GroupSpec, radius: int) -> tuple[GroupElement, ...]:
    """Probe set used when none is given: the full ball of radius
    min(radius, 6) around the base."""
    return build_ball(spec, min(radius, DEFAULT_PROBE_RADIUS)).elements


def metric_equiv(
    a: BoundarySample,
    b: BoundarySample,
    probes=None,
    tol: int | Fraction = 0,
    radius: int = 0,
) -> MetricEquivalenceReport:
    """Whether two samples stabilize to the same horofunction values on
    every probe (exactly, or within tol)."""
    if a.spec != b.spec:
        raise DomainError(f"samples {a.label!r} and {b.label!r} use different group specs")
    if probes is None:
        probes = default_probes(a.spec, radius)
    pa = horofunction_profile(a, probes, tol, radius)
    pb = horofunction_profile(b, probes, tol, radius)
    return _compare_profiles(pa, pb, tol)


# ---------------------------------------------------------------------------
# the sphere witness


@dataclass(frozen=True)
class HorofunctionWitness:
    """A sphere point whose horofunction certifiably exceeds the requested
    bound along a recurring subsequence of the sample."""

    point: GroupElement
    bound: int
    indices: tuple[int, ...]
    recurrence_count: int
    eligible_count: int
    sphere_radius: int
    sphere_size: int
    sampled_sphere: bool

    def as_json(self) -> dict:
        return {
            "witness": str(self.point),
            "bound": self.bound,
            "indices": list(self.indices),
            "recurrence_count": self.recurrence_count,
            "eligible_count": self.eligible_count,
            "sphere_radius": self.sphere_radius,
            "sphere_size": self.sphere_size,
            "sampled_sphere": self.sampled_sphere,
        }


def witness_large_horofunction(
    s: BoundarySample,
    bound_target: int,
    epsilon: Fraction,
    radius: int,
    max_sphere: int | None = None,
    seed: int = 0,
) -> HorofunctionWitness:
    """Find z on the sphere of radius r (the smallest integer above
    bound_target + epsilon) that lies on geodesics from the base to
    recurringly many sample points; on that subsequence the horofunction
    of z equals r, certifiably above bound_target.

    Recurrence is the finite surrogate for "infinitely many": z must cover
    at least half of the eligible indices among the last half of the
    sample. With epsilon below 1 in an integer metric, the sphere-cluster
    step of the construction degenerates to exact membership, which is why
    the bound is attained exactly.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    r = math.floor(bound_target + epsilon) + 1
    if r > radius:
        raise DomainError(
            f"sphere radius {r} needed for bound {bound_target} exceeds the window radius {radius}"
        )
    _require_convergent(s, 1, radius)
    sphere_pts = build_ball(s.spec, r).sphere(r)
    sphere_size = len(sphere_pts)
    sampled = False
    if max_sphere is not None and sphere_size > max_sphere:
        import random

        rng = random.Random(seed)
        keep = sorted(rng.sample(range(sphere_size), max_sphere))
        sphere_pts = tuple(sphere_pts[i] for i in keep)
        sampled = True

    h = s.horizon
    relevant = [n for n in range(h) if s.norms[n] >= r]
    if not relevant:
        raise InconclusiveError(
            f"no sample point reaches norm {r}; increase the horizon or lower the bound"
        )
    last_half_start = h - h // 2
    eligible = [n for n in relevant if n >= last_half_start]
    if not eligible:
        raise InconclusiveError(
            "the last half of the sample never leaves the witness sphere; increase the horizon"
        )
    membership = _sphere_membership(s, sphere_pts, relevant, r, radius)
    required = (len(eligible) + 1) // 2
    best = None
    spec = s.spec
    for zi, z in enumerate(sphere_pts):
        hits = membership[zi]
        count_recurrent = sum(1 for n in eligible if hits[n])
        if count_recurrent >= required:
            total = sum(1 for n in relevant if hits[n])
            key = (-total, spec.sort_key(z))
            if best is None or key < best[0]:
                best = (key, z, [n for n in relevant if hits[n]], count_recurrent)
    if best is None:
        raise InconclusiveError(
            "no sphere point recurs on half of the sample tail; "
            "increase the horizon or the window radius"
        )
    _, z, indices, count_recurrent = best
    return HorofunctionWitness(
        point=z,
        bound=r,
        indices=tuple(n + 1 for n in indices),
        recurrence_count=count_recurrent,
        eligible_count=len(eligible),
        sphere_radius=r,
        sphere_size=sphere_size,
        sampled_sphere=sampled,
    )


def _sphere_membership(s, sphere_pts, relevant, r, radius):
    """membership[zi][n] is True when sphere point zi lies on a geodesic
    from the base to sample point n."""
    spec = s.spec
    h = s.horizon
    if isinstance(spec, FreeGroupSpec) and not spec.extra_generators:
        from . import kernels

        enc_z, len_z = encode_free_words([z.data for z in sphere_pts])
        enc_x, len_x = encode_free_words([p.data for p in s.points])
        lcp = kernels.lcp_matrix(enc_z, len_z, enc_x, len_x)
        return [[bool(lcp[zi, n] == r) for n in range(h)] for zi in range(len(sphere_pts))]
    out = []
    for z in sphere_pts:
        row = [False] * h
        for n in relevant:
            row[n] = r + word_distance(spec, z, s.points[n], radius) == s.norms[n]
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# quotient partition


@dataclass(frozen=True)
class QuotientPartition:
    """Pairwise equivalence certificates over a family of samples, the
    induced partition when the spec is hyperbolic, and the violation lists
    otherwise.

    The pass relation is closed under connected components only for
    hyperbolic specs; for non-hyperbolic specs the partition is refused
    and transitivity violations of the raw pass relation are reported
    instead, since the relation need not be transitive there.
    """

    labels: tuple[str, ...]
    hyperbolic: bool
    partition_refused: bool
    classes: tuple[tuple[str, ...], ...] | None
    pairs: tuple[tuple[str, str, DivergenceCertificate], ...]
    metric_verdicts: tuple[tuple[str, str, str], ...]
    refinement_violations: tuple[tuple[str, str], ...]
    transitivity_violations: tuple[tuple[str, str, str], ...]

    def as_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "hyperbolic": self.hyperbolic,
            "partition_refused": self.partition_refused,
            "classes": None if self.classes is None else [list(c) for c in self.classes],
            "pairs": [
                {"a": a, "b": b, "certificate": cert.as_json()} for a, b, cert in self.pairs
            ],
            "metric_verdicts": [
                {"a": a, "b": b, "verdict": v} for a, b, v in self.metric_verdicts
            ],
            "refinement_violations": [list(p) for p in self.refinement_violations],
            "transitivity_violations": [list(t) for t in self.transitivity_violations],
        }


def quotient_partition(
    samples: list[BoundarySample],
    threshold,
    probes=None,
    tol: int | Fraction = 0,
    radius: int = 0,
) -> QuotientPartition:
    """Pairwise certificates for the whole family, plus either the induced
    partition (hyperbolic specs) or the reported violations (otherwise).

    refinement_violations lists pairs that stabilize to the same
    horofunction profile yet fail the product certificate; it is expected
    empty, since agreeing profiles force the paired products to grow.
    """
    if not samples:
        raise DomainError("at least one sample is required")
    spec = samples[0].spec
    labels = []
    for s in samples:
        if s.spec != spec:
            raise DomainError("all samples must share one group spec")
        if s.label in labels:
            raise DomainError(f"duplicate sample label {s.label!r}")
        labels.append(s.label)
    for s in samples:
        _require_convergent(s, threshold, radius)
    if probes is None:
        probes = default_probes(spec, radius)

    k = len(samples)
    profiles = [horofunction_profile(s, probes, tol, radius) for s in samples]
    pairs = []
    metric_rows = []
    passed = [[False] * k for _ in range(k)]
    refinement = []
    for i in range(k):
        for j in range(i + 1, k):
            tail = _paired_tail_minima(samples[i], samples[j], radius)
            cert = _certificate(
                f"paired product of {labels[i]} and {labels[j]}", tail, threshold
            )
            pairs.append((labels[i], labels[j], cert))
            passed[i][j] = passed[j][i] = cert.passed
            mv = _compare_profiles(profiles[i], profiles[j], tol)
            metric_rows.append((labels[i], labels[j], mv.verdict))
            if mv.verdict == "equivalent" and not cert.passed:
                refinement.append((labels[i], labels[j]))

    if spec.is_hyperbolic:
        parent = list(range(k))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(k):
            for j in range(i + 1, k):
                if passed[i][j]:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[str]] = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(labels[i])
        classes = tuple(tuple(groups[r]) for r in sorted(groups))
        return QuotientPartition(
            tuple(labels), True, False, classes, tuple(pairs), tuple(metric_rows),
            tuple(refinement), (),
        )

    transitivity = []
    for i in range(k):
        for kk in range(i + 1, k):
            if passed[i][kk]:
                continue
            for j in range(k):
                if j in (i, kk):
                    continue
                if passed[i][j] and passed[j][kk]:
                    transitivity.append((labels[i], labels[j], labels[kk]))
                    break
    return QuotientPartition(
        tuple(labels), False, True, None, tuple(pairs), tuple(metric_rows),
        tuple(refinement), tuple(transitivity),
    )


# ---------------------------------------------------------------------------
# extended products and the continuity probe


@dataclass(frozen=True)
class ExtendedProductReport:
    """Tail estimate of the product of two boundary points (or a boundary
    point and an interior point).

    The estimate is the tail minimum of the paired products at the largest
    admissible tail start (half the common horizon). It evaluates the
    given representatives only: as an estimate of the representative-free
    product it is an upper bound, while as a certificate for a divergence
    claim it is a valid lower envelope.
    """

    left: str
    right: str
    kind: str
    value: HalfExact
    tail_start: int
    values: tuple[HalfExact, ...]

    def as_json(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "kind": self.kind,
            "value": str(self.value),
            "tail_start": self.tail_start,
            "values": [str(v) for v in self.values],
        }


def extended_product(a, b, radius: int) -> ExtendedProductReport:
    """Product estimate for sample/sample, sample/point or point/point
    operands. Sample operands must pass the basic divergence check."""
    a_sample = isinstance(a, BoundarySample)
    b_sample = isinstance(b, BoundarySample)
    spec = a.spec if a_sample or isinstance(a, GroupElement) else None
    if spec is None or b.spec != spec:
        raise DomainError("operands must share one group spec")
    if a_sample:
        _require_convergent(a, 1, radius)
    if b_sample:
        _require_convergent(b, 1, radius)

    if not a_sample and not b_sample:
        na = word_norm(spec, a, radius)
        nb = word_norm(spec, b, radius)
        value = HalfExact(na + nb - word_distance(spec, a, b, radius))
        return ExtendedProductReport(str(a), str(b), "point-point", value, 1, (value,))

    if a_sample and b_sample:
        tail = _paired_tail_minima(a, b, radius)
        kind = "sample-sample"
        left, right = a.label, b.label
    else:
        s, p = (a, b) if a_sample else (b, a)
        np_ = word_norm(spec, p, radius)
        vals = [
            _doubled_product(spec, s.norms[i], s.points[i], np_, p, radius)
            for i in range(s.horizon)
        ]
        tail = [0] * len(vals)
        cur = None
        for i in range(len(vals) - 1, -1, -1):
            cur = vals[i] if cur is None else min(cur, vals[i])
            tail[i] = cur
        kind = "sample-point" if a_sample else "point-sample"
        left = a.label if a_sample else str(a)
        right = str(b) if a_sample else b.label
    values = tuple(HalfExact(d) for d in tail)
    n_star = max(1, len(values) // 2)
    return ExtendedProductReport(left, right, kind, values[n_star - 1], n_star, values)


@dataclass(frozen=True)
class ContinuityRow:
    label: str
    agreement_radius: int
    product: HalfExact
    product_reaches_threshold: bool

    def as_json(self) -> dict:
        return {
            "sample": self.label,
            "agreement_radius": self.agreement_radius,
            "product": str(self.product),
            "reaches_threshold": self.product_reaches_threshold,
        }


@dataclass(frozen=True)
class ContinuityReport:
    """Per-sample agreement radii against a limit sample, paired with the
    extended-product estimates. Convergence of the family shows up as the
    agreement radius growing together with the product."""

    omega_label: str
    threshold: int | Fraction
    probe_radius: int
    rows: tuple[ContinuityRow, ...]

    def as_json(self) -> dict:
        return {
            "omega": self.omega_label,
            "threshold": str(self.threshold),
            "probe_radius": self.probe_radius,
            "rows": [r.as_json() for r in self.rows],
        }


def continuity_probe(
    omegas: list[BoundarySample],
    omega: BoundarySample,
    probes=None,
    threshold: int | Fraction = 1,
    radius: int = 0,
) -> ContinuityReport:
    """For each sample in the family: the largest probe-ball radius on
    which its stabilized profile agrees with the limit sample's, and the
    extended product against the limit sample."""
    spec = omega.spec
    for s in omegas:
        if s.spec != spec:
            raise DomainError("all samples must share one group spec")
    _require_convergent(omega, threshold, radius)
    for s in omegas:
        _require_convergent(s, threshold, radius)
    if probes is None:
        probes = default_probes(spec, radius)
    probes = tuple(probes)
    probe_norms = [word_norm(spec, z, radius) for z in probes]
    max_radius = max(probe_norms, default=0)
    limit_profile = horofunction_profile(omega, probes, 0, radius)
    rows = []
    for s in omegas:
        prof = horofunction_profile(s, probes, 0, radius)
        bad = [
            probe_norms[i]
            for i in range(len(probes))
            if not (
                prof.stable[i]
                and limit_profile.stable[i]
                and prof.values[i] == limit_profile.values[i]
            )
        ]
        agreement = max_radius if not bad else min(bad) - 1
        est = extended_product(s, omega, radius)
        rows.append(
            ContinuityRow(s.label, agreement, est.value, est.value >= threshold)
        )
    return ContinuityReport(omega.label, threshold, max_radius, tuple(rows))
