"""Ray truncations and the three classification clauses."""
from fractions import Fraction

import pytest

from bscope import (
    ConstructionError,
    ExplicitTable,
    FreeTail,
    LatticePath,
    check_almost_geodesic,
    check_geodesic,
    check_weakly_geodesic,
    format_ray_spec,
    materialize_ray,
    parse_group_spec,
    parse_ray_spec,
)

F2 = parse_group_spec("free:2")
Z2 = parse_group_spec("zd:2:gens=(1,0),(0,1)")


def a_ray(horizon):
    return materialize_ray(FreeTail(F2, (), (1,)), horizon)


def staircase(horizon):
    return materialize_ray(LatticePath(Z2, (0, 0), ((1, 0), (0, 1))), horizon)


def oscillator(horizon):
    # g(t) = (t, t mod 2); the (1, +-1) steps are not generators, so the
    # ray only exists as an explicit table
    entries = tuple(
        (t, Z2.element((t, t % 2))) for t in range(horizon + 1)
    )
    return materialize_ray(ExplicitTable(Z2, entries), horizon)


# ---------------------------------------------------------------------------
# construction


def test_free_tail_materializes_prefixes():
    ray = a_ray(5)
    assert ray.horizon == 5
    assert [str(p) for _, p in ray.samples] == ["e", "a", "a^2", "a^3", "a^4", "a^5"]


def test_staircase_materializes_21_samples():
    ray = staircase(20)
    assert len(ray.samples) == 21
    assert ray.samples[20][1] == Z2.element((10, 10))
    assert ray.samples[7][1] == Z2.element((4, 3))


def test_explicit_table_decreasing_parameters_rejected():
    with pytest.raises(ConstructionError):
        ExplicitTable(Z2, ((0, Z2.identity()), (2, Z2.element((2, 0))), (1, Z2.element((1, 0)))))


def test_explicit_table_must_start_at_zero():
    with pytest.raises(ConstructionError):
        ExplicitTable(Z2, ((1, Z2.element((1, 0))),))


def test_free_tail_junction_cancellation_rejected():
    with pytest.raises(ConstructionError):
        FreeTail(F2, (1,), (-1, 2))  # prefix 'a' against period 'Ab'
    with pytest.raises(ConstructionError):
        FreeTail(F2, (), (1, -1))  # period not reduced
    with pytest.raises(ConstructionError):
        FreeTail(F2, (), (1, 2, -1))  # period end cancels period start


def test_nonpositive_horizon_rejected():
    with pytest.raises(ConstructionError):
        materialize_ray(FreeTail(F2, (), (1,)), 0)


def test_materialize_is_deterministic():
    r1 = a_ray(9)
    r2 = a_ray(9)
    assert r1 == r2


def test_explicit_table_truncates_to_last_parameter():
    entries = tuple((t, Z2.element((t, 0))) for t in (0, 1, 3, 4))
    ray = materialize_ray(ExplicitTable(Z2, entries), 3)
    assert ray.horizon == 3
    assert len(ray.samples) == 3


def test_fractional_parameters_are_kept_exact():
    entries = (
        (0, F2.identity()),
        (Fraction(3, 2), F2.parse_element("a")),
        (3, F2.parse_element("a^3")),
    )
    ray = materialize_ray(ExplicitTable(F2, entries), 3)
    assert ray.samples[1][0] == Fraction(3, 2)


# ---------------------------------------------------------------------------
# geodesic clause


def test_a_ray_is_geodesic():
    report = check_geodesic(a_ray(8), 20)
    assert report.passed
    assert report.max_defect == 0
    assert report.threshold == 0


def test_staircase_is_geodesic():
    report = check_geodesic(staircase(12), 30)
    assert report.passed


def test_oscillator_fails_geodesic_with_witness():
    report = check_geodesic(oscillator(8), 30)
    assert not report.passed
    assert report.witness == (1, 0)  # first max-defect pair, reported (t, s)
    assert report.witness_defect == 1
    assert report.max_defect == 1


# ---------------------------------------------------------------------------
# almost-geodesic clause


def test_a_ray_almost_geodesic_any_epsilon():
    report = check_almost_geodesic(a_ray(8), Fraction(1, 2), 20)
    assert report.passed
    assert report.threshold == 0


def test_oscillator_fails_almost_geodesic_small_epsilon():
    # defect 1 recurs at every odd s (t = s), defeating every threshold
    report = check_almost_geodesic(oscillator(20), Fraction(1, 2), 60)
    assert not report.passed
    t, s = report.witness
    assert s >= 10
    assert report.witness_defect >= Fraction(1, 2)


def test_oscillator_almost_geodesic_epsilon_boundaries():
    # max clause defect is 2, attained whenever t is even and s odd
    # (e.g. t=2, s=1: |d((2,0),(1,1)) + d((1,1),0) - 2| = 2), so the ray
    # still fails at eps=3/2 and first passes at eps=5/2
    ray = oscillator(20)
    report = check_almost_geodesic(ray, Fraction(3, 2), 60)
    assert not report.passed
    report = check_almost_geodesic(ray, Fraction(5, 2), 60)
    assert report.passed
    assert report.threshold == 0


def test_almost_geodesic_requires_positive_epsilon():
    from bscope import DomainError

    with pytest.raises(DomainError):
        check_almost_geodesic(a_ray(4), Fraction(0), 20)


# ---------------------------------------------------------------------------
# weakly-geodesic clause


def test_a_ray_weakly_geodesic_with_probe_b():
    probes = (F2.parse_element("b"),)
    report = check_weakly_geodesic(a_ray(8), Fraction(1, 2), probes, 20)
    assert report.passed
    assert report.threshold == 0


def test_oscillator_fails_weakly_geodesic_on_norm_defect():
    report = check_weakly_geodesic(oscillator(16), Fraction(1, 2), None, 60)
    assert not report.passed
    assert len(report.witness) == 1  # the norm inequality, not a probe pair


def test_weakly_geodesic_default_probes_are_sphere_two():
    report = check_weakly_geodesic(a_ray(6), Fraction(1, 2), None, 30)
    assert report.passed


def test_weakly_geodesic_rejects_empty_probes():
    from bscope import DomainError

    with pytest.raises(DomainError):
        check_weakly_geodesic(a_ray(4), Fraction(1, 2), (), 20)


# ---------------------------------------------------------------------------
# the clause implication chain, at fixed truncation


@pytest.mark.parametrize(
    "make_ray,radius",
    [
        (lambda: a_ray(10), 30),
        (lambda: materialize_ray(FreeTail(F2, (1, 2), (1,)), 10), 30),
        (lambda: materialize_ray(FreeTail(F2, (), (1, 2)), 10), 30),
        (lambda: staircase(10), 40),
    ],
)
def test_geodesic_implies_weaker_clauses(make_ray, radius):
    ray = make_ray()
    geo = check_geodesic(ray, radius)
    assert geo.passed
    for eps in (Fraction(1, 2), Fraction(1, 3), Fraction(2)):
        almost = check_almost_geodesic(ray, eps, radius)
        assert almost.passed
        weak = check_weakly_geodesic(ray, eps, None, radius)
        assert weak.passed


def test_almost_geodesic_implies_weakly_geodesic_on_oscillator():
    # at eps = 5/2 the oscillator is almost-geodesic; the weak clause must
    # then hold at some epsilon reported by the scan (here 5/2 as well,
    # since the probe defect never exceeds the pair defect by more than 1)
    ray = oscillator(20)
    assert check_almost_geodesic(ray, Fraction(5, 2), 60).passed
    weak = check_weakly_geodesic(ray, Fraction(7, 2), None, 60)
    assert weak.passed


# ---------------------------------------------------------------------------
# report replay


def test_reports_replay_bit_exactly():
    ray = oscillator(10)
    r1 = check_almost_geodesic(ray, Fraction(1, 2), 40)
    r2 = check_almost_geodesic(ray, Fraction(1, 2), 40)
    assert r1 == r2
    assert r1.as_json() == r2.as_json()


def test_failed_report_witness_revalidates():
    ray = oscillator(12)
    report = check_almost_geodesic(ray, Fraction(1, 2), 40)
    t, s = report.witness
    lookup = dict(ray.samples)
    from bscope import word_distance

    defect = abs(
        word_distance(Z2, lookup[t], lookup[s], 40)
        + word_distance(Z2, lookup[s], lookup[0], 40)
        - t
    )
    assert defect == report.witness_defect
    assert defect >= Fraction(1, 2)


# ---------------------------------------------------------------------------
# grammar


def test_parse_free_ray():
    ray = parse_ray_spec(F2, "ray=free:|a")
    assert ray == FreeTail(F2, (), (1,))
    ray = parse_ray_spec(F2, "free:ab|ba")
    assert ray == FreeTail(F2, (1, 2), (2, 1))
    assert format_ray_spec(ray) == "free:ab|ba"


def test_parse_lattice_ray():
    ray = parse_ray_spec(Z2, "lattice:offset=(0,0);dir=(1,0),(0,1)")
    assert ray == LatticePath(Z2, (0, 0), ((1, 0), (0, 1)))
    assert format_ray_spec(ray) == "lattice:offset=(0,0);dir=(1,0),(0,1)"


def test_parse_ray_table_file(tmp_path):
    path = tmp_path / "ray.json"
    path.write_text('[[0, "e"], ["3/2", "a"], [3, "a^3"]]')
    ray = parse_ray_spec(F2, f"@{path}")
    assert isinstance(ray, ExplicitTable)
    assert ray.entries[1][0] == Fraction(3, 2)


def test_parse_ray_rejects_junk():
    from bscope import ParseError

    with pytest.raises(ParseError):
        parse_ray_spec(F2, "spiral:around")
    with pytest.raises(ParseError):
        parse_ray_spec(F2, "free:a")  # missing the | separator
    with pytest.raises(ParseError):
        parse_ray_spec(Z2, "free:|a")  # family mismatch


def test_pass_threshold_replays_clean_tail():
    # no violation survives at or beyond the reported threshold
    from bscope import word_distance

    entries = tuple((t, Z2.element((t, t % 2))) for t in range(17))
    ray = materialize_ray(ExplicitTable(Z2, entries), 16)
    eps = Fraction(5, 2)
    report = check_almost_geodesic(ray, eps, 60)
    assert report.passed
    lookup = dict(ray.samples)
    params = [t for t, _ in ray.samples]
    for s in params:
        if s < report.threshold:
            continue
        for t in params:
            if t < s:
                continue
            defect = abs(
                word_distance(Z2, lookup[t], lookup[s], 60)
                + word_distance(Z2, lookup[s], lookup[0], 60)
                - t
            )
            assert defect < eps
