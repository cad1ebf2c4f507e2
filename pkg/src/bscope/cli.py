"""Command line front end. Every subcommand resolves its inputs into a
replayable config, computes one operation, and emits a deterministic JSON
(or CSV) report; ``bscope verify`` recomputes a report from its embedded
config and confirms equality.

Exit codes: 0 computed verdicts (pass or fail), 1 failed verification,
2 usage or domain errors, 3 resource caps, 4 inconclusive outcomes.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .action import defect_decay_scan
from .boundary import (
    BoundarySample,
    continuity_probe,
    converges_to_infinity,
    extended_product,
    gromov_equiv,
    horofunction_profile,
    metric_equiv,
    quotient_partition,
    witness_large_horofunction,
)
from .errors import (
    BscopeError,
    DomainError,
    InconclusiveError,
    ParseError,
    ResourceCapError,
)
from .groups import (
    DEFAULT_BALL_CAP,
    GroupSpec,
    build_ball,
    element_norm,
    parse_group_spec,
    word_distance,
)
from .metric import MetricWindow, gromov_product, horofunction, min_delta
from .rays import (
    ExplicitTable,
    check_almost_geodesic,
    check_geodesic,
    check_weakly_geodesic,
    format_ray_spec,
    materialize_ray,
    parse_ray_spec,
)
from .report import SCHEMA, atomic_write_text, canonical_json, report_envelope, strip_sidecar

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INCONCLUSIVE = 4


# ---------------------------------------------------------------------------
# input resolution


def _resolve_sample_source(spec: GroupSpec, source: str, horizon: int, fallback_label: str) -> dict:
    """Resolve a sample source (ray grammar or @file) into a replayable
    {"label", "points"} config entry."""
    if source.startswith("@"):
        path = source[1:]
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"cannot read sample file {path!r}: {e}") from e
        return _resolve_sample_json(spec, raw, horizon, fallback_label)
    ray = parse_ray_spec(spec, source)
    sample = BoundarySample.from_ray(materialize_ray(ray, horizon), fallback_label or source)
    return {"label": sample.label, "points": [str(p) for p in sample.points]}


def _resolve_sample_json(spec: GroupSpec, raw, horizon: int, fallback_label: str) -> dict:
    if isinstance(raw, list):
        raw = {"label": fallback_label, "points": raw}
    if not isinstance(raw, dict):
        raise ParseError("sample JSON must be an object or an array of points")
    label = raw.get("label") or fallback_label
    if "ray" in raw:
        ray = parse_ray_spec(spec, raw["ray"])
        sample = BoundarySample.from_ray(materialize_ray(ray, horizon), label)
        return {"label": label, "points": [str(p) for p in sample.points]}
    if "points" not in raw:
        raise ParseError("sample JSON needs either 'points' or 'ray'")
    pts = [str(spec.parse_element(p)) for p in raw["points"]]
    return {"label": label, "points": pts}


def _sample_from_config(spec: GroupSpec, entry: dict) -> BoundarySample:
    points = [spec.parse_element(p) for p in entry["points"]]
    return BoundarySample.from_points(spec, points, entry["label"])


def _ray_to_config(ray) -> str | dict:
    """Replayable config form of a ray: explicit tables are inlined, the
    generated families keep their canonical grammar string."""
    if isinstance(ray, ExplicitTable):
        return {
            "table": [[t if isinstance(t, int) else str(t), str(p)] for t, p in ray.entries]
        }
    return format_ray_spec(ray)


def _ray_from_config(spec: GroupSpec, entry):
    if isinstance(entry, dict):
        rows = [
            (t if isinstance(t, int) else Fraction(t), spec.parse_element(p))
            for t, p in entry["table"]
        ]
        return ExplicitTable(spec, tuple(rows))
    return parse_ray_spec(spec, entry)


def _auto_radius(spec: GroupSpec, sample_entries: list[dict], extra: int = 8) -> int:
    """Window radius covering all pairwise distances among the resolved
    sample points, plus probe room."""
    top = 0
    for entry in sample_entries:
        for p in entry["points"]:
            top = max(top, element_norm(spec, spec.parse_element(p)))
    return 2 * top + extra


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from e


def _n_values_arg(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad n-values list: {text!r}") from e
    if not values:
        raise argparse.ArgumentTypeError("empty n-values list")
    return values


# ---------------------------------------------------------------------------
# compute functions: config dict -> result dict (pure, replayable)


def _compute_ball(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    ball = build_ball(spec, cfg["radius"], cap=cfg["cap"])
    return ball.to_json()


def _compute_delta(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    ball = build_ball(spec, cfg["radius"], cap=cfg["cap"])
    report = min_delta(ball.window())
    return {"window_size": len(ball), **report.as_json()}


def _tiny_window(spec: GroupSpec, points, base, radius: int) -> MetricWindow:
    pts = []
    for p in points:
        if p not in pts:
            pts.append(p)
    return MetricWindow(pts, lambda a, b: word_distance(spec, a, b, radius), base)


def _compute_product(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    x = spec.parse_element(cfg["x"])
    y = spec.parse_element(cfg["y"])
    base = spec.parse_element(cfg["base"])
    w = _tiny_window(spec, [base, x, y], base, cfg["radius"])
    return {
        "x": str(x),
        "y": str(y),
        "base": str(base),
        "product": str(gromov_product(w, x, y)),
    }


def _compute_horofn(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    z = spec.parse_element(cfg["z"])
    x = spec.parse_element(cfg["x"])
    base = spec.parse_element(cfg["base"])
    w = _tiny_window(spec, [base, z, x], base, cfg["radius"])
    return {
        "z": str(z),
        "x": str(x),
        "base": str(base),
        "value": str(horofunction(w, z, x)),
    }


def _compute_classify(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    ray = _ray_from_config(spec, cfg["ray"])
    truncation = materialize_ray(ray, cfg["horizon"])
    clause = cfg["clause"]
    if clause == "geodesic":
        report = check_geodesic(truncation, cfg["radius"])
    elif clause == "almost-geodesic":
        report = check_almost_geodesic(truncation, Fraction(cfg["epsilon"]), cfg["radius"])
    elif clause == "weakly-geodesic":
        probes = build_ball(spec, cfg["probe_radius"]).sphere(cfg["probe_radius"])
        report = check_weakly_geodesic(
            truncation, Fraction(cfg["epsilon"]), probes, cfg["radius"]
        )
    else:
        raise DomainError(f"unknown clause {clause!r}")
    return {"ray": format_ray_spec(ray), "horizon_used": str(truncation.horizon), **report.as_json()}


def _compute_equiv(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    a = _sample_from_config(spec, cfg["a"])
    b = _sample_from_config(spec, cfg["b"])
    cert = gromov_equiv(
        a, b, cfg["threshold"], cfg["radius"], double_index=cfg["double_index"]
    )
    return {"certificate": cert.as_json()}


def _compute_convergence(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    s = _sample_from_config(spec, cfg["sample"])
    cert = converges_to_infinity(s, cfg["threshold"], cfg["radius"])
    return {"certificate": cert.as_json()}


def _compute_metric_equiv(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    a = _sample_from_config(spec, cfg["a"])
    b = _sample_from_config(spec, cfg["b"])
    probes = build_ball(spec, cfg["probe_radius"]).elements
    report = metric_equiv(a, b, probes, Fraction(cfg["tol"]), cfg["radius"])
    return report.as_json()


def _compute_profile(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    s = _sample_from_config(spec, cfg["sample"])
    probes = build_ball(spec, cfg["probe_radius"]).elements
    prof = horofunction_profile(s, probes, Fraction(cfg["tol"]), cfg["radius"])
    return prof.as_json()


def _compute_witness(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    s = _sample_from_config(spec, cfg["sample"])
    witness = witness_large_horofunction(
        s,
        cfg["bound"],
        Fraction(cfg["epsilon"]),
        cfg["radius"],
        max_sphere=cfg["max_sphere"],
        seed=cfg["seed"],
    )
    return witness.as_json()


def _compute_quotient(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    samples = [_sample_from_config(spec, entry) for entry in cfg["samples"]]
    probes = build_ball(spec, cfg["probe_radius"]).elements
    partition = quotient_partition(
        samples, cfg["threshold"], probes, Fraction(cfg["tol"]), cfg["radius"]
    )
    return partition.as_json()


def _compute_extended(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])

    def operand(entry):
        if isinstance(entry, dict):
            return _sample_from_config(spec, entry)
        return spec.parse_element(entry)

    report = extended_product(operand(cfg["a"]), operand(cfg["b"]), cfg["radius"])
    return report.as_json()


def _compute_continuity(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    omega = _sample_from_config(spec, cfg["omega"])
    family = [_sample_from_config(spec, entry) for entry in cfg["family"]]
    probes = build_ball(spec, cfg["probe_radius"]).elements
    report = continuity_probe(family, omega, probes, cfg["threshold"], cfg["radius"])
    return report.as_json()


def _compute_mean_scan(cfg: dict) -> dict:
    spec = parse_group_spec(cfg["group"])
    gens = [spec.parse_element(g) for g in cfg["gens"]]
    rays = [_ray_from_config(spec, r) for r in cfg["rays"]]
    scan = defect_decay_scan(gens, rays, cfg["n_values"], cfg["radius"])
    return scan.as_json()


_COMPUTE = {
    "ball": _compute_ball,
    "delta": _compute_delta,
    "product": _compute_product,
    "horofn": _compute_horofn,
    "classify": _compute_classify,
    "equiv": _compute_equiv,
    "convergence": _compute_convergence,
    "metric-equiv": _compute_metric_equiv,
    "profile": _compute_profile,
    "witness": _compute_witness,
    "quotient": _compute_quotient,
    "extended": _compute_extended,
    "continuity": _compute_continuity,
    "mean-scan": _compute_mean_scan,
}


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bscope",
        description="Exact boundary probes on Cayley-graph windows, with replayable certificates.",
    )
    parser.add_argument("--version", action="version", version=f"bscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, radius_required=False):
        p.add_argument("--group", required=True, help="group spec, e.g. free:2 or zd:2:gens=(1,0),(0,1)")
        p.add_argument(
            "--radius",
            type=int,
            default=None,
            required=radius_required,
            help="window radius (defaults to a radius covering the resolved inputs)",
        )
        p.add_argument("--seed", type=int, default=0, help="seed for sampling caps only")
        p.add_argument("--out", default=None, help="write the report to this path")

    p = sub.add_parser("ball", help="BFS ball with exact norms")
    common(p, radius_required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_BALL_CAP)

    p = sub.add_parser("delta", help="minimal hyperbolicity defect of a ball window")
    common(p, radius_required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_BALL_CAP)

    p = sub.add_parser("product", help="inner product of two elements at a base point")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--base", default="")

    p = sub.add_parser("horofn", help="horofunction value of a probe at a point")
    common(p)
    p.add_argument("--z", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--base", default="")

    p = sub.add_parser("classify", help="classify a ray truncation against one clause")
    common(p)
    p.add_argument("--ray", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument(
        "--clause",
        required=True,
        choices=["geodesic", "almost-geodesic", "weakly-geodesic"],
    )
    p.add_argument("--epsilon", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--probe-radius", type=int, default=2)

    p = sub.add_parser("equiv", help="paired-product certificate for two samples")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--M", dest="threshold", type=int, required=True)
    p.add_argument("--double-index", action="store_true")

    p = sub.add_parser("convergence", help="tail pair-product certificate for one sample")
    common(p)
    p.add_argument("--sample", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--M", dest="threshold", type=int, required=True)

    p = sub.add_parser("metric-equiv", help="compare stabilized horofunction profiles")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--probe-radius", type=int, default=None)
    p.add_argument("--tol", type=_fraction_arg, default=Fraction(0))

    p = sub.add_parser("profile", help="stabilized horofunction profile of one sample")
    common(p)
    p.add_argument("--sample", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--probe-radius", type=int, default=None)
    p.add_argument("--tol", type=_fraction_arg, default=Fraction(0))

    p = sub.add_parser("witness", help="sphere point with a certified large horofunction")
    common(p)
    p.add_argument("--sample", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--N", dest="bound", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--max-sphere", type=int, default=None)

    p = sub.add_parser("quotient", help="pairwise certificates and partition of a sample family")
    common(p)
    p.add_argument("--samples", required=True, help="@file with a JSON array of samples")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--M", dest="threshold", type=int, required=True)
    p.add_argument("--probe-radius", type=int, default=None)
    p.add_argument("--tol", type=_fraction_arg, default=Fraction(0))

    p = sub.add_parser("extended", help="tail product estimate of two boundary operands")
    common(p)
    p.add_argument("--a", required=True, help="sample source, or elem:<word> for a point")
    p.add_argument("--b", required=True)
    p.add_argument("--horizon", type=int, required=True)

    p = sub.add_parser("continuity", help="agreement radii and products against a limit sample")
    common(p)
    p.add_argument("--omega", required=True)
    p.add_argument("--member", action="append", required=True, dest="family")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--M", dest="threshold", type=int, required=True)
    p.add_argument("--probe-radius", type=int, default=None)

    p = sub.add_parser("mean-scan", help="mean invariance defects over generators and rays")
    common(p)
    p.add_argument("--gens", default=None, help="comma separated elements; defaults to the spec generators")
    p.add_argument("--ray", action="append", required=True, dest="rays")
    p.add_argument("--n-values", type=_n_values_arg, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("verify", help="recompute a report from its config echo")
    p.add_argument("report", help="path of a previously written report")
    p.add_argument("--out", default=None)

    return parser


# ---------------------------------------------------------------------------
# per-command config construction


def _make_config(args: argparse.Namespace) -> dict:
    spec = parse_group_spec(args.group)
    cmd = args.command
    cfg: dict = {"group": args.group, "seed": args.seed}

    def sample_entry(source, fallback):
        return _resolve_sample_source(spec, source, args.horizon, fallback)

    if cmd in ("ball", "delta"):
        if args.radius < 0:
            raise DomainError("radius must be nonnegative")
        cfg.update(radius=args.radius, cap=args.cap)
        return cfg

    if cmd in ("product", "horofn"):
        names = ("x", "y") if cmd == "product" else ("z", "x")
        base = spec.parse_element(args.base) if args.base else spec.identity()
        e1 = spec.parse_element(getattr(args, names[0]))
        e2 = spec.parse_element(getattr(args, names[1]))
        radius = args.radius
        if radius is None:
            radius = 2 * max(
                element_norm(spec, e1), element_norm(spec, e2), element_norm(spec, base)
            ) + 2
        cfg.update(
            {names[0]: str(e1), names[1]: str(e2)},
            base=str(base),
            radius=radius,
        )
        return cfg

    if cmd == "classify":
        ray = parse_ray_spec(spec, args.ray)
        truncation = materialize_ray(ray, args.horizon)
        radius = args.radius
        if radius is None:
            top = max(element_norm(spec, p) for _, p in truncation.samples)
            radius = 2 * top + args.probe_radius + 2
        cfg.update(
            ray=_ray_to_config(ray),
            horizon=args.horizon,
            clause=args.clause,
            epsilon=str(args.epsilon),
            probe_radius=args.probe_radius,
            radius=radius,
        )
        return cfg

    if cmd in ("equiv", "metric-equiv", "extended"):
        if cmd == "extended":
            def operand(source, fallback):
                if source.startswith("elem:"):
                    return str(spec.parse_element(source[5:]))
                return sample_entry(source, fallback)

            a, b = operand(args.a, "a"), operand(args.b, "b")
        else:
            a, b = sample_entry(args.a, "a"), sample_entry(args.b, "b")
        entries = [e for e in (a, b) if isinstance(e, dict)]
        points_only = [{"points": [e]} for e in (a, b) if isinstance(e, str)]
        radius = args.radius
        if radius is None:
            radius = _auto_radius(spec, entries + points_only)
        cfg.update(a=a, b=b, horizon=args.horizon, radius=radius)
        if cmd == "equiv":
            cfg.update(threshold=args.threshold, double_index=args.double_index)
        if cmd == "metric-equiv":
            pr = args.probe_radius if args.probe_radius is not None else min(radius, 6)
            cfg.update(probe_radius=pr, tol=str(args.tol))
        return cfg

    if cmd in ("convergence", "witness", "profile"):
        entry = sample_entry(args.sample, "sample")
        radius = args.radius
        if radius is None:
            radius = _auto_radius(spec, [entry])
            if cmd == "witness":
                radius = max(radius, args.bound + 2)
        cfg.update(sample=entry, horizon=args.horizon, radius=radius)
        if cmd == "convergence":
            cfg.update(threshold=args.threshold)
        if cmd == "profile":
            pr = args.probe_radius if args.probe_radius is not None else min(radius, 6)
            cfg.update(probe_radius=pr, tol=str(args.tol))
        if cmd == "witness":
            cfg.update(
                bound=args.bound,
                epsilon=str(args.epsilon),
                max_sphere=args.max_sphere,
            )
        return cfg

    if cmd == "quotient":
        if not args.samples.startswith("@"):
            raise ParseError("--samples must be @file with a JSON array")
        path = args.samples[1:]
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"cannot read samples file {path!r}: {e}") from e
        if not isinstance(raw, list) or not raw:
            raise ParseError("samples file must hold a nonempty JSON array")
        entries = [
            _resolve_sample_json(spec, item, args.horizon, f"sample-{i}")
            for i, item in enumerate(raw)
        ]
        radius = args.radius
        if radius is None:
            radius = _auto_radius(spec, entries)
        pr = args.probe_radius if args.probe_radius is not None else min(radius, 6)
        cfg.update(
            samples=entries,
            horizon=args.horizon,
            threshold=args.threshold,
            probe_radius=pr,
            tol=str(args.tol),
            radius=radius,
        )
        return cfg

    if cmd == "continuity":
        omega = sample_entry(args.omega, "omega")
        family = [sample_entry(src, f"member-{i}") for i, src in enumerate(args.family)]
        radius = args.radius
        if radius is None:
            radius = _auto_radius(spec, [omega] + family)
        pr = args.probe_radius if args.probe_radius is not None else min(radius, 6)
        cfg.update(
            omega=omega,
            family=family,
            horizon=args.horizon,
            threshold=args.threshold,
            probe_radius=pr,
            radius=radius,
        )
        return cfg

    if cmd == "mean-scan":
        if args.gens:
            gens = [str(spec.parse_element(tok)) for tok in args.gens.split(",") if tok]
        else:
            gens = [str(g) for g in spec.generator_elements()]
        rays = [parse_ray_spec(spec, r) for r in args.rays]
        n_values = sorted(set(args.n_values))
        radius = args.radius
        if radius is None:
            radius = max(n_values) + max(element_norm(spec, spec.parse_element(g)) for g in gens) + 2
        cfg.update(
            gens=gens,
            rays=[_ray_to_config(r) for r in rays],
            n_values=n_values,
            radius=radius,
            format=args.format,
        )
        return cfg

    raise DomainError(f"unknown command {cmd!r}")


# ---------------------------------------------------------------------------
# output and verification


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write_text(out, text)
    sys.stdout.write(text)


def _csv_report(cfg: dict, result: dict) -> str:
    lines = [f"# schema={SCHEMA}", f"# version={__version__}"]
    for key in sorted(cfg):
        value = cfg[key]
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"# {key}={value}")
    header = "\n".join(lines)
    rows = ["g,omega,n,defect,defect_decimal"]
    for row in result["rows"]:
        rows.append(
            f"{row['g']},{row['omega']},{row['n']},{row['defect']},{row['defect_decimal']!r}"
        )
    rows.append(f"# bound_constant={result['bound_constant']}")
    return header + "\n" + "\n".join(rows) + "\n"


def _run_verify(args: argparse.Namespace) -> int:
    path = args.report
    if path.startswith("@"):
        path = path[1:]
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"cannot read report {path!r}: {e}\n")
        return EXIT_USAGE
    if payload.get("schema") != SCHEMA:
        sys.stderr.write(f"unsupported report schema {payload.get('schema')!r}\n")
        return EXIT_USAGE
    command = payload.get("command")
    compute = _COMPUTE.get(command)
    if compute is None:
        sys.stderr.write(f"cannot verify reports for command {command!r}\n")
        return EXIT_USAGE
    try:
        recomputed = compute(payload["config"])
    except BscopeError as e:
        sys.stderr.write(f"replay failed: {e}\n")
        return EXIT_VERIFY_FAILED
    expected = strip_sidecar(payload)
    actual = dict(expected)
    actual["result"] = recomputed
    verified = canonical_json(expected) == canonical_json(actual)
    report = report_envelope(
        "verify",
        __version__,
        {"report": path},
        {"verified": verified, "command": command},
    )
    _emit(canonical_json(report), args.out)
    return EXIT_OK if verified else EXIT_VERIFY_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _run_verify(args)
    try:
        cfg = _make_config(args)
        compute = _COMPUTE[args.command]
        try:
            result = compute(cfg)
            code = EXIT_OK
        except InconclusiveError as e:
            result = {"verdict": "inconclusive", "reason": str(e)}
            code = EXIT_INCONCLUSIVE
        if args.command == "metric-equiv" and result.get("verdict") == "inconclusive":
            code = EXIT_INCONCLUSIVE
        if args.command == "mean-scan" and cfg.get("format") == "csv":
            text = _csv_report(cfg, result)
        else:
            text = canonical_json(report_envelope(args.command, __version__, cfg, result))
        _emit(text, args.out)
        return code
    except ResourceCapError as e:
        sys.stderr.write(f"resource cap: {e}\n")
        return EXIT_RESOURCE
    except InconclusiveError as e:
        sys.stderr.write(f"inconclusive: {e}\n")
        return EXIT_INCONCLUSIVE
    except BscopeError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())
