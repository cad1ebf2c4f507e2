"""Finite ray truncations and exact classification of the three ray clauses.

A ray is a map from an increasing parameter set starting at 0 into the
group; a truncation keeps the samples up to a horizon. The classifiers
test the geodesic clause (d(g(s), g(t)) = |s - t| for all pairs), the
almost-geodesic clause (|d(g(t), g(s)) + d(g(s), g(0)) - t| < eps beyond
some threshold N), and the weakly-geodesic clause (the norm defect plus
the probe defect |d(g(t), y) - d(g(s), y) - (t - s)| < eps beyond N).

Threshold semantics at a finite horizon: a clause passes when its minimal
integer threshold N (the first index past every violation) satisfies
N <= horizon / 2, and fails otherwise; the half-horizon split keeps tiny
tails from passing vacuously, and a growing horizon only strengthens the
verdict. Epsilons are exact rationals compared exactly; in integer word
metrics every defect is an integer, so any eps in (0, 1) makes the clause
an exact equality test.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ConstructionError, DomainError, ParseError
from .groups import (
    FreeGroupSpec,
    GroupElement,
    GroupSpec,
    LatticeSpec,
    Vector,
    Word,
    _reduce_word,
    build_ball,
    word_distance,
)

Param = int | Fraction


@dataclass(frozen=True)
class FreeTail:
    """Eventually periodic ray in a free group: the prefixes of the infinite
    reduced word prefix * period * period * ...

    Junction cancellation (prefix end against period start, or period end
    against period start) is rejected rather than silently reduced, so the
    ray point at parameter t always has reduced length exactly t.
    """

    spec: FreeGroupSpec
    prefix: Word
    period: Word

    def __post_init__(self):
        if not isinstance(self.spec, FreeGroupSpec):
            raise ConstructionError("FreeTail requires a free group spec")
        if not self.period:
            raise ConstructionError("FreeTail period must be nonempty")
        for name, w in (("prefix", self.prefix), ("period", self.period)):
            if _reduce_word(w) != w:
                raise ConstructionError(f"FreeTail {name} must be a reduced word")
            if any(not (1 <= abs(l) <= self.spec.rank) for l in w):
                raise ConstructionError(f"FreeTail {name} uses letters outside the spec rank")
        if self.prefix and self.prefix[-1] == -self.period[0]:
            raise ConstructionError("cancellation at the prefix-period junction")
        if self.period[-1] == -self.period[0]:
            raise ConstructionError("cancellation at the period-period junction")

    def point_data(self, t: int) -> Word:
        if t <= len(self.prefix):
            return self.prefix[:t]
        rem = t - len(self.prefix)
        q, r = divmod(rem, len(self.period))
        return self.prefix + self.period * q + self.period[:r]

    def point(self, t: int) -> GroupElement:
        return GroupElement(self.spec, self.point_data(t))


@dataclass(frozen=True)
class LatticePath:
    """Lattice ray from an offset along a cyclic sequence of generator
    steps; parameter t is the number of steps taken."""

    spec: LatticeSpec
    offset: Vector
    steps: tuple[Vector, ...]

    def __post_init__(self):
        if not isinstance(self.spec, LatticeSpec):
            raise ConstructionError("LatticePath requires a lattice spec")
        if len(self.offset) != self.spec.rank:
            raise ConstructionError("LatticePath offset has the wrong rank")
        if not self.steps:
            raise ConstructionError("LatticePath needs at least one step")
        for s in self.steps:
            if s not in self.spec.generators:
                raise ConstructionError(f"step {s} is not a generator of the lattice spec")

    def point_data(self, t: int) -> Vector:
        q, r = divmod(t, len(self.steps))
        coords = list(self.offset)
        for k in range(self.spec.rank):
            coords[k] += q * sum(s[k] for s in self.steps)
            coords[k] += sum(s[k] for s in self.steps[:r])
        return tuple(coords)

    def point(self, t: int) -> GroupElement:
        return GroupElement(self.spec, self.point_data(t))


@dataclass(frozen=True)
class ExplicitTable:
    """Ray given by an explicit table of (parameter, point) samples.
    Parameters are exact rationals, strictly increasing, starting at 0."""

    spec: GroupSpec
    entries: tuple[tuple[Param, GroupElement], ...]

    def __post_init__(self):
        if not self.entries:
            raise ConstructionError("explicit ray table must be nonempty")
        prev = None
        for t, p in self.entries:
            if not isinstance(t, (int, Fraction)) or t < 0:
                raise ConstructionError("ray parameters must be exact nonnegative rationals")
            if prev is not None and t <= prev:
                raise ConstructionError("ray parameters must be strictly increasing")
            if p.spec != self.spec:
                raise ConstructionError("ray points must belong to the ray's group spec")
            prev = t
        if self.entries[0][0] != 0:
            raise ConstructionError("ray parameter set must start at 0")


RaySpec = FreeTail | LatticePath | ExplicitTable


@dataclass(frozen=True)
class RayTruncation:
    """Samples of a ray up to a horizon; parameters strictly increase from
    0 and the last one equals the horizon."""

    origin: RaySpec
    spec: GroupSpec
    horizon: Param
    samples: tuple[tuple[Param, GroupElement], ...]


def materialize_ray(ray: RaySpec, horizon: Param) -> RayTruncation:
    """Deterministic truncation of a ray up to the horizon.

    Generated rays (FreeTail, LatticePath) sample every integer parameter
    0..horizon. Explicit tables keep their own parameters up to the
    horizon; the truncation horizon is then the last retained parameter.
    """
    if horizon <= 0:
        raise ConstructionError("horizon must be positive")
    if isinstance(ray, (FreeTail, LatticePath)):
        h = int(horizon)
        if h != horizon:
            raise ConstructionError("generated rays use integer horizons")
        samples = tuple((t, ray.point(t)) for t in range(h + 1))
        return RayTruncation(ray, ray.spec, h, samples)
    if isinstance(ray, ExplicitTable):
        kept = tuple((t, p) for t, p in ray.entries if t <= horizon)
        if len(kept) < 2:
            raise ConstructionError("explicit ray has no positive parameter within the horizon")
        return RayTruncation(ray, ray.spec, kept[-1][0], kept)
    raise DomainError(f"unknown ray spec {ray!r}")


@dataclass(frozen=True)
class ClassificationReport:
    """Verdict of one clause on one truncation, replayable from the samples:
    on a pass, every pair (and probe) at or beyond the threshold satisfies
    the clause; on a fail, the witness violates it."""

    clause: str
    epsilon: Fraction | None
    passed: bool
    threshold: int | None
    witness: tuple | None
    witness_defect: int | Fraction | None
    max_defect: int | Fraction | None = None

    def as_json(self) -> dict:
        return {
            "clause": self.clause,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "verdict": "pass" if self.passed else "fail",
            "threshold": self.threshold,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "witness_defect": None if self.witness_defect is None else str(self.witness_defect),
            "max_defect": None if self.max_defect is None else str(self.max_defect),
        }


def _truncation_distance(ray: RayTruncation, x: GroupElement, y: GroupElement, radius: int) -> int:
    return word_distance(ray.spec, x, y, radius)


def check_geodesic(ray: RayTruncation, radius: int) -> ClassificationReport:
    """Exact test of d(g(s), g(t)) = |s - t| over every sample pair."""
    samples = ray.samples
    max_defect: int | Fraction = 0
    witness = None
    for i in range(len(samples)):
        s, ps = samples[i]
        for j in range(i + 1, len(samples)):
            t, pt = samples[j]
            d = _truncation_distance(ray, ps, pt, radius)
            defect = abs(d - (t - s))
            if defect > max_defect:
                max_defect = defect
                witness = (t, s)
    if witness is None:
        return ClassificationReport("geodesic", None, True, 0, None, None, max_defect=0)
    return ClassificationReport(
        "geodesic", None, False, None, witness, max_defect, max_defect=max_defect
    )


def _threshold_verdict(horizon: Param, markers: list[Param]) -> tuple[int, bool]:
    """Minimal integer threshold past every violation marker, and whether
    it fits under half the horizon."""
    if not markers:
        return 0, True
    n = math.floor(max(markers)) + 1
    return n, 2 * n <= horizon


def check_almost_geodesic(ray: RayTruncation, epsilon: Fraction, radius: int) -> ClassificationReport:
    """|d(g(t), g(s)) + d(g(s), g(0)) - t| < eps for all sampled t >= s >= N."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    samples = ray.samples
    origin = samples[0][1]
    from_origin = {s: _truncation_distance(ray, p, origin, radius) for s, p in samples}
    violations: list[tuple[Param, Param, int | Fraction]] = []
    for i, (s, ps) in enumerate(samples):
        for t, pt in samples[i:]:
            defect = abs(
                _truncation_distance(ray, pt, ps, radius) + from_origin[s] - t
            )
            if defect >= epsilon:
                violations.append((s, t, defect))
    threshold, ok = _threshold_verdict(ray.horizon, [s for s, _, _ in violations])
    if ok:
        return ClassificationReport("almost-geodesic", epsilon, True, threshold, None, None)
    s_max = max(s for s, _, _ in violations)
    s, t, defect = min(v for v in violations if v[0] == s_max)
    return ClassificationReport("almost-geodesic", epsilon, False, None, (t, s), defect)


def check_weakly_geodesic(
    ray: RayTruncation,
    epsilon: Fraction,
    probes: tuple[GroupElement, ...] | None,
    radius: int,
) -> ClassificationReport:
    """Both weak-clause inequalities, over all sampled parameters at or
    beyond N and all probe points.

    The clause quantifies over every point of the space; that is not
    testable, so probes default to the sphere of radius 2 around the base
    and are overridable.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if probes is None:
        probes = build_ball(ray.spec, 2).sphere(2)
    probes = tuple(probes)
    if not probes:
        raise DomainError("probe set must be nonempty")
    for y in probes:
        if y.spec != ray.spec:
            raise DomainError("probes must belong to the ray's group spec")
    samples = ray.samples
    origin = samples[0][1]
    violations: list[tuple[Param, tuple, int | Fraction]] = []
    for t, pt in samples:
        defect = abs(_truncation_distance(ray, pt, origin, radius) - t)
        if defect >= epsilon:
            violations.append((t, (t,), defect))
    probe_dist = {
        (t, y): _truncation_distance(ray, pt, y, radius) for t, pt in samples for y in probes
    }
    for i, (s, _) in enumerate(samples):
        for t, _ in samples[i + 1 :]:
            for y in probes:
                defect = abs(probe_dist[(t, y)] - probe_dist[(s, y)] - (t - s))
                if defect >= epsilon:
                    violations.append((s, (t, s, y), defect))
    threshold, ok = _threshold_verdict(ray.horizon, [m for m, _, _ in violations])
    if ok:
        return ClassificationReport("weakly-geodesic", epsilon, True, threshold, None, None)
    m_max = max(m for m, _, _ in violations)
    best = next(v for v in violations if v[0] == m_max)
    return ClassificationReport("weakly-geodesic", epsilon, False, None, best[1], best[2])


# ---------------------------------------------------------------------------
# grammar


def parse_ray_spec(spec: GroupSpec, text: str) -> RaySpec:
    """Parse ``free:<prefix>|<period>`` (empty prefix allowed),
    ``lattice:offset=(..);dir=(..),(..)``, or ``@file.json`` holding an
    array of [t, point] pairs. A leading ``ray=`` is accepted and ignored.
    """
    if text.startswith("ray="):
        text = text[4:]
    if text.startswith("@"):
        return _load_ray_table(spec, text[1:])
    if text.startswith("free:"):
        if not isinstance(spec, FreeGroupSpec):
            raise ParseError("free ray spec given for a non-free group", position=0)
        body = text[5:]
        if "|" not in body:
            raise ParseError("free ray spec needs '<prefix>|<period>'", position=5)
        pre_text, per_text = body.split("|", 1)
        prefix = spec._parse_word(pre_text) if pre_text else ()
        period = spec._parse_word(per_text) if per_text else ()
        try:
            return FreeTail(spec, prefix, period)
        except ConstructionError as e:
            raise ParseError(str(e), position=5) from e
    if text.startswith("lattice:"):
        if not isinstance(spec, LatticeSpec):
            raise ParseError("lattice ray spec given for a non-lattice group", position=0)
        body = text[8:]
        offset = (0,) * spec.rank
        steps: list[Vector] = []
        pos = 8
        for part in body.split(";"):
            if part.startswith("offset="):
                offset = spec.parse_element(part[len("offset=") :]).data
            elif part.startswith("dir="):
                from .groups import _split_vectors, _parse_vector

                for tok in _split_vectors(part[len("dir=") :]):
                    steps.append(_parse_vector(tok, spec.rank, position=pos))
            else:
                raise ParseError(f"unexpected ray field {part!r}", position=pos)
            pos += len(part) + 1
        try:
            return LatticePath(spec, offset, tuple(steps))
        except ConstructionError as e:
            raise ParseError(str(e), position=8) from e
    raise ParseError(f"unrecognized ray spec {text!r}", position=0)


def _parse_param(value) -> Param:
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ParseError(f"ray parameter {value!r} is not an exact rational")


def _load_ray_table(spec: GroupSpec, path: str) -> ExplicitTable:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read ray table {path!r}: {e}") from e
    if not isinstance(raw, list):
        raise ParseError("ray table must be a JSON array of [t, point] pairs")
    entries = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError("ray table entries must be [t, point] pairs")
        t, pt = item
        entries.append((_parse_param(t), spec.parse_element(pt)))
    try:
        return ExplicitTable(spec, tuple(entries))
    except ConstructionError as e:
        raise ParseError(str(e)) from e


def format_ray_spec(ray: RaySpec) -> str:
    """Grammar string of a ray spec; explicit tables are summarized."""
    if isinstance(ray, FreeTail):
        pre = FreeGroupSpec._format_data(ray.prefix) if ray.prefix else ""
        return f"free:{pre}|{FreeGroupSpec._format_data(ray.period)}"
    if isinstance(ray, LatticePath):
        off = "(" + ",".join(str(c) for c in ray.offset) + ")"
        dirs = ",".join("(" + ",".join(str(c) for c in s) + ")" for s in ray.steps)
        return f"lattice:offset={off};dir={dirs}"
    if isinstance(ray, ExplicitTable):
        return f"table:{len(ray.entries)}-entries"
    raise DomainError(f"unknown ray spec {ray!r}")
