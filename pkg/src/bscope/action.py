"""The left action on boundary samples and the amenability defect probe.

The probe attaches to each eventually periodic ray the uniform measure on
the first n points of its canonical geodesic, pushes that measure forward
by a group element, and measures how far the result is from the measure
attached to the translated ray. For free groups the defect is exactly the
symmetric-difference mass of two prefix sets, which is what makes the
2|g|/n bound exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .boundary import BoundarySample, DivergenceCertificate, gromov_equiv
from .errors import ConstructionError, DomainError, OutOfWindowError, UnsupportedRayError
from .groups import FreeGroupSpec, GroupElement, GroupSpec, element_norm, _reduce_concat
from .rays import FreeTail, LatticePath, RaySpec, format_ray_spec


# ---------------------------------------------------------------------------
# finitely supported probability measures


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Finitely supported probability measure with exact rational weights."""

    spec: GroupSpec
    entries: tuple[tuple[GroupElement, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for g, w in self.entries:
            if g.spec != self.spec:
                raise ConstructionError("measure support mixes group specs")
            if g.data in seen:
                raise ConstructionError(f"duplicate support point {g}")
            seen.add(g.data)
            if not isinstance(w, Fraction) or w <= 0:
                raise ConstructionError("weights must be positive exact rationals")
            total += w
        if total != 1:
            raise ConstructionError(f"weights sum to {total}, not 1")
        ordered = tuple(sorted(self.entries, key=lambda e: self.spec.sort_key(e[0])))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def uniform(cls, spec: GroupSpec, support) -> "ProbabilityMeasure":
        support = list(support)
        if not support:
            raise ConstructionError("uniform measure needs a nonempty support")
        w = Fraction(1, len(support))
        return cls(spec, tuple((g, w) for g in support))

    def weight(self, g: GroupElement) -> Fraction:
        for h, w in self.entries:
            if h == g:
                return w
        return Fraction(0)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.entries)

    def as_json(self) -> dict:
        return {"support": [{"point": str(g), "weight": str(w)} for g, w in self.entries]}


def pushforward(g: GroupElement, mu: ProbabilityMeasure) -> ProbabilityMeasure:
    """Translate the support: the new weight of g*h is the old weight of h."""
    if g.spec != mu.spec:
        raise DomainError("cannot push a measure forward across group specs")
    return ProbabilityMeasure(mu.spec, tuple((g * h, w) for h, w in mu.entries))


def tv_distance(mu: ProbabilityMeasure, nu: ProbabilityMeasure) -> Fraction:
    """Total mass of |mu - nu| (the l1 norm on measures; twice the usual
    total-variation metric, bounded by 2)."""
    if mu.spec != nu.spec:
        raise DomainError("cannot compare measures across group specs")
    diff: dict = {}
    for g, w in mu.entries:
        diff[g.data] = diff.get(g.data, Fraction(0)) + w
    for g, w in nu.entries:
        diff[g.data] = diff.get(g.data, Fraction(0)) - w
    return sum((abs(v) for v in diff.values()), Fraction(0))


# ---------------------------------------------------------------------------
# translating samples


def act_on_sample(g: GroupElement, s: BoundarySample) -> BoundarySample:
    """Pointwise left translation of a sample.

    Translation can dent the norm growth near the start (by at most |g|),
    so the longest strictly increasing tail of the translated sequence is
    kept and identity points are dropped.
    """
    if g.spec != s.spec:
        raise DomainError("cannot act across different group specs")
    translated = [g * p for p in s.points]
    norms = [element_norm(s.spec, p) for p in translated]
    keep: list[int] = []
    bound = None
    for i in range(len(translated) - 1, -1, -1):
        if norms[i] < 1:
            continue
        if bound is None or norms[i] < bound:
            keep.append(i)
            bound = norms[i]
    keep.reverse()
    if not keep:
        raise ConstructionError("translated sample has no strictly increasing tail")
    label = f"{g}*{s.label}"
    return BoundarySample(
        s.spec,
        tuple(translated[i] for i in keep),
        tuple(norms[i] for i in keep),
        label,
    )


@dataclass(frozen=True)
class EquivarianceReport:
    """Certificates for a pair before and after translation. Base points
    move with the translation, so certificate values can shift by at most
    the norm of the acting element; the translated pair is therefore held
    to the threshold lowered by exactly that norm."""

    g: GroupElement
    threshold: int | Fraction
    translated_threshold: int | Fraction
    original: DivergenceCertificate
    translated: DivergenceCertificate
    passed: bool
    shift_bounded: bool | None

    def as_json(self) -> dict:
        return {
            "g": str(self.g),
            "threshold": str(self.threshold),
            "translated_threshold": str(self.translated_threshold),
            "original": self.original.as_json(),
            "translated": self.translated.as_json(),
            "passed": self.passed,
            "shift_bounded": self.shift_bounded,
        }


def equivariance_check(
    g: GroupElement, a: BoundarySample, b: BoundarySample, threshold, radius: int
) -> EquivarianceReport:
    """Check that an equivalent pair stays equivalent after translation,
    at the threshold lowered by |g|."""
    original = gromov_equiv(a, b, threshold, radius)
    if not original.passed:
        raise DomainError(
            f"samples {a.label!r} and {b.label!r} are not certified equivalent at {threshold}"
        )
    ng = element_norm(g.spec, g)
    ta = act_on_sample(g, a)
    tb = act_on_sample(g, b)
    translated = gromov_equiv(ta, tb, threshold - ng, radius)
    shift_bounded = None
    if ta.horizon == a.horizon and tb.horizon == b.horizon:
        h = min(original.horizon, translated.horizon)
        shift_bounded = all(
            abs(original.values[i].doubled - translated.values[i].doubled) <= 2 * ng
            for i in range(h)
        )
    return EquivarianceReport(
        g, threshold, threshold - ng, original, translated, translated.passed, shift_bounded
    )


# ---------------------------------------------------------------------------
# canonical means


@dataclass(frozen=True)
class MeanFamily:
    """The rule (ray, n) -> uniform measure on the first n points of the
    canonical geodesic from the identity toward the ray's boundary point.

    Free groups use the unique reduced-word geodesic of an eventually
    periodic tail. Lattice paths with zero offset use the period's steps
    sorted in a fixed generator order; rays without such a normal form
    (explicit tables, offset lattice paths, augmented free metrics) are
    refused as unsupported.

    Supports exclude the identity; ``include_identity`` adds it, changing
    any defect by at most 2/n.
    """

    spec: GroupSpec
    include_identity: bool = False

    def geodesic_prefixes(self, ray: RaySpec, n: int) -> list[GroupElement]:
        if n < 1:
            raise DomainError("mean support size must be at least 1")
        if isinstance(ray, FreeTail):
            if ray.spec != self.spec:
                raise DomainError("ray does not belong to this spec")
            if not isinstance(self.spec, FreeGroupSpec) or self.spec.extra_generators:
                raise UnsupportedRayError(
                    "canonical geodesics require the standard free generating set"
                )
            return [GroupElement(self.spec, ray.point_data(t)) for t in range(1, n + 1)]
        if isinstance(ray, LatticePath):
            if ray.spec != self.spec:
                raise DomainError("ray does not belong to this spec")
            if any(ray.offset):
                raise UnsupportedRayError(
                    "offset lattice rays have no canonical geodesic normal form"
                )
            steps = tuple(sorted(ray.steps))
            out = []
            coords = [0] * self.spec.rank
            for t in range(1, n + 1):
                step = steps[(t - 1) % len(steps)]
                coords = [c + d for c, d in zip(coords, step)]
                out.append(GroupElement(self.spec, tuple(coords)))
            return out
        raise UnsupportedRayError(f"no canonical geodesic normal form for {format_ray_spec(ray)}")

    def measure(self, ray: RaySpec, n: int) -> ProbabilityMeasure:
        support = self.geodesic_prefixes(ray, n)
        if self.include_identity:
            support = [self.spec.identity()] + support
        return ProbabilityMeasure.uniform(self.spec, support)


def _translated_tail_prefixes(spec: FreeGroupSpec, g: GroupElement, ray: FreeTail, n: int):
    """First n geodesic prefixes toward the translated boundary point: the
    reduced infinite word g * (prefix period period ...). Cancellation eats
    at most |g| letters, so materializing n + |g| letters suffices."""
    need = n + len(g.data)
    word = _reduce_concat(g.data, ray.point_data(need))
    return [GroupElement(spec, word[: t]) for t in range(1, n + 1)]


def mean_defect(g: GroupElement, ray: RaySpec, n: int, radius: int) -> Fraction:
    """l1 distance between the pushforward of the ray's mean and the mean
    of the translated ray, at support size n.

    Supported for standard free groups, where the translated ray's
    canonical geodesic is again a reduced infinite word. Defects are exact
    multiples of 1/n (or 1/(n+1) with the identity included)."""
    spec = g.spec
    if not isinstance(spec, FreeGroupSpec) or spec.extra_generators:
        raise UnsupportedRayError(
            "mean defects are supported for standard free generating sets only"
        )
    if not isinstance(ray, FreeTail) or ray.spec != spec:
        raise UnsupportedRayError("mean defects require an eventually periodic free-group ray")
    if n < 1:
        raise DomainError("support size must be at least 1")
    if n + len(g.data) > radius:
        raise OutOfWindowError(
            f"support size {n} plus |g| = {len(g.data)} exceeds the window radius {radius}"
        )
    family = MeanFamily(spec)
    mu = family.measure(ray, n)
    pushed = pushforward(g, mu)
    translated_support = _translated_tail_prefixes(spec, g, ray, n)
    translated = ProbabilityMeasure.uniform(spec, translated_support)
    return tv_distance(pushed, translated)


@dataclass(frozen=True)
class DefectScan:
    """Defect table over (g, ray, n) plus the smallest integer C with
    defect <= C/n across the whole scan."""

    rows: tuple[tuple[str, str, int, Fraction], ...]
    max_per_n: tuple[tuple[int, Fraction], ...]
    bound_constant: int

    def as_json(self) -> dict:
        return {
            "rows": [
                {"g": g, "omega": omega, "n": n, "defect": str(d), "defect_decimal": float(d)}
                for g, omega, n, d in self.rows
            ],
            "max_defect_per_n": [{"n": n, "defect": str(d)} for n, d in self.max_per_n],
            "bound_constant": self.bound_constant,
        }

    def to_csv(self) -> str:
        lines = ["g,omega,n,defect,defect_decimal"]
        for g, omega, n, d in self.rows:
            lines.append(f"{g},{omega},{n},{d},{float(d)!r}")
        return "\n".join(lines) + "\n"


def defect_decay_scan(
    gens, rays: list[RaySpec], n_values: list[int], radius: int
) -> DefectScan:
    """Mean defects over every (g, ray, n) combination, with the fitted
    decay bound. Coverage is exactly the scanned finite family; nothing
    uniform over the whole boundary is claimed."""
    gens = list(gens)
    rays = list(rays)
    n_values = sorted(set(int(n) for n in n_values))
    if not gens or not rays or not n_values:
        raise DomainError("the scan needs at least one generator, ray, and support size")
    rows = []
    max_per_n: dict[int, Fraction] = {}
    bound = 0
    for g in gens:
        for ray in rays:
            for n in n_values:
                d = mean_defect(g, ray, n, radius)
                rows.append((str(g), format_ray_spec(ray), n, d))
                if n not in max_per_n or d > max_per_n[n]:
                    max_per_n[n] = d
                bound = max(bound, math.ceil(d * n))
    return DefectScan(
        tuple(rows),
        tuple(sorted(max_per_n.items())),
        int(bound),
    )
