"""Group specs, word metrics, balls, spheres, and the left action."""
import json

import pytest

from bscope import (
    DomainError,
    FreeGroupSpec,
    LatticeSpec,
    OutOfWindowError,
    ParseError,
    ResourceCapError,
    act,
    build_ball,
    on_geodesic,
    parse_group_spec,
    sphere,
    word_distance,
    word_norm,
)

F2 = parse_group_spec("free:2")
Z2 = parse_group_spec("zd:2:gens=(1,0),(0,1)")
Z2_DIAG = parse_group_spec("zd:2:gens=(1,0),(0,1),(1,1),(1,-1)")


# ---------------------------------------------------------------------------
# grammar


def test_parse_free():
    spec = parse_group_spec("free:2")
    assert isinstance(spec, FreeGroupSpec)
    assert spec.rank == 2
    assert spec.spec_string() == "free:2"


def test_parse_lattice():
    spec = parse_group_spec("zd:2:gens=(1,0),(0,1)")
    assert isinstance(spec, LatticeSpec)
    assert spec.rank == 2
    assert set(spec.generators) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_parse_lattice_spec_string_roundtrip():
    text = Z2_DIAG.spec_string()
    assert parse_group_spec(text) == Z2_DIAG


def test_parse_augmented_free():
    spec = parse_group_spec("free:2:gens=a,b,ab")
    assert isinstance(spec, FreeGroupSpec)
    assert spec.extra_generators == ((1, 2),)
    assert parse_group_spec(spec.spec_string()) == spec


@pytest.mark.parametrize(
    "text",
    [
        "free:0",
        "zd:0:gens=(1)",
        "nonsense",
        "free:2:gens=a",  # missing letter b
        "free:2:gens=a,b,aba",  # length-3 generator word
        "zd:2:gens=(1,0)",  # does not span
        "zd:2:gens=(2,0),(0,2)",  # even sublattice only
        "zd:2:gens=(1,1),(1,-1)",  # index-2 sublattice
        "zd:2:gens=(1,0,0),(0,1,0)",  # wrong rank
        "zd:2:gens=(0,0),(1,0)",  # zero generator
    ],
)
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_group_spec(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_group_spec("zd:2:gens=(2,0),(0,2)")
    assert err.value.position is not None


def test_element_parse_and_format():
    g = F2.parse_element("aB")
    assert g.data == (1, -2)
    assert str(g) == "aB"
    assert F2.parse_element("a^3").data == (1, 1, 1)
    assert str(F2.parse_element("aaab")) == "a^3b"
    assert F2.parse_element("aA").data == ()  # normalized
    assert str(F2.identity()) == "e"
    v = Z2.parse_element("(3,-2)")
    assert v.data == (3, -2)
    assert str(v) == "(3,-2)"


# ---------------------------------------------------------------------------
# group operations


def test_free_multiplication_cancels():
    a = F2.parse_element("a")
    ainv_b = F2.parse_element("Ab")
    assert act(a, ainv_b) == F2.parse_element("b")


def test_lattice_action_adds():
    g = Z2.parse_element("(1,0)")
    x = Z2.parse_element("(3,2)")
    assert act(g, x) == Z2.parse_element("(4,2)")


def test_identity_acts_trivially():
    x = F2.parse_element("abA")
    assert act(F2.identity(), x) == x


def test_act_rejects_spec_mismatch():
    with pytest.raises(DomainError):
        act(F2.parse_element("a"), Z2.parse_element("(1,0)"))


def test_inverse():
    g = F2.parse_element("abA")
    assert g * g.inverse() == F2.identity()
    v = Z2.parse_element("(2,-1)")
    assert v * v.inverse() == Z2.identity()


# ---------------------------------------------------------------------------
# norms


def test_free_word_norm_is_reduced_length():
    g = F2.parse_element("abA")
    assert word_norm(F2, g, 10) == 3
    assert word_norm(F2, F2.identity(), 10) == 0


def test_word_norm_out_of_window():
    g = F2.parse_element("a^5")
    with pytest.raises(OutOfWindowError):
        word_norm(F2, g, 4)


def test_lattice_norm_diag_gens():
    g = Z2_DIAG.parse_element("(3,2)")
    assert word_norm(Z2_DIAG, g, 10) == 3


def test_lattice_norm_out_of_window():
    g = Z2.parse_element("(5,5)")
    with pytest.raises(OutOfWindowError):
        word_norm(Z2, g, 9)
    assert word_norm(Z2, g, 10) == 10


# the BFS ball is the independent oracle for every norm formula
@pytest.mark.parametrize("spec", [F2, parse_group_spec("free:3")])
def test_free_norm_formula_agrees_with_bfs(spec):
    radius = 5 if spec.rank == 2 else 4
    ball = build_ball(spec, radius)
    for g in ball.elements:
        assert word_norm(spec, g, radius) == ball.norm(g)


def test_free_distance_formula_agrees_with_bfs_on_pairs():
    ball = build_ball(F2, 3)
    # d(x, y) must equal the BFS norm of x^-1 y
    big = build_ball(F2, 6)
    for x in ball.elements:
        for y in ball.elements:
            assert word_distance(F2, x, y, 6) == big.norm(x.inverse() * y)


def test_augmented_free_norms_agree_with_bfs():
    spec = parse_group_spec("free:2:gens=a,b,ab")
    ball = build_ball(spec, 4)
    for g in ball.elements:
        assert word_norm(spec, g, 4) == ball.norm(g)
    # spot values: the extra generator shortens exactly the ab-direction
    assert word_norm(spec, spec.parse_element("ab"), 4) == 1
    assert word_norm(spec, spec.parse_element("ba"), 4) == 2
    assert word_norm(spec, spec.parse_element("abab"), 4) == 2


# ---------------------------------------------------------------------------
# balls and spheres


def test_free_ball_sizes_match_closed_form():
    # 1 + sum 2k (2k-1)^(r-1)
    assert len(build_ball(F2, 0)) == 1
    assert len(build_ball(F2, 2)) == 17
    assert len(build_ball(F2, 4)) == 161
    f3 = parse_group_spec("free:3")
    assert len(build_ball(f3, 2)) == 1 + 6 + 30


def test_lattice_ball_sizes_match_closed_form():
    # 2r^2 + 2r + 1 for the standard generators
    for r in range(5):
        assert len(build_ball(Z2, r)) == 2 * r * r + 2 * r + 1


def test_ball_radius_zero_is_identity():
    ball = build_ball(Z2_DIAG, 0)
    assert ball.elements == (Z2_DIAG.identity(),)


def test_sphere_sizes():
    ball = build_ball(F2, 3)
    assert set(sphere(ball, 1)) == {
        F2.parse_element(w) for w in ("a", "A", "b", "B")
    }
    assert sphere(ball, 0) == (F2.identity(),)
    z2ball = build_ball(Z2, 3)
    assert len(sphere(z2ball, 2)) == 8


def test_sphere_out_of_window():
    ball = build_ball(F2, 3)
    with pytest.raises(OutOfWindowError):
        sphere(ball, 4)


def test_ball_cap_rejects_large_free_ball():
    with pytest.raises(ResourceCapError):
        build_ball(parse_group_spec("free:9"), 12)


def test_ball_cap_enforced_during_bfs():
    with pytest.raises(ResourceCapError):
        build_ball(Z2, 40, cap=100)


def test_ball_json_export_shape():
    ball = build_ball(F2, 1)
    payload = ball.to_json()
    assert payload["spec"] == "free:2"
    assert payload["radius"] == 1
    assert payload["elements"][0] == {"id": 0, "repr": "e", "norm": 0}
    assert len(payload["elements"]) == 5
    json.dumps(payload)  # must be serializable


def test_ball_deterministic_order():
    b1 = build_ball(Z2_DIAG, 3)
    b2 = build_ball(Z2_DIAG, 3)
    assert b1.elements == b2.elements


# ---------------------------------------------------------------------------
# geodesic membership


def test_on_geodesic_lattice_between():
    x = Z2.parse_element("(4,0)")
    y = Z2.parse_element("(0,4)")
    z = Z2.parse_element("(2,2)")
    assert on_geodesic(Z2, x, y, z, 16)


def test_on_geodesic_free_counterexample():
    x = F2.parse_element("a^2")
    y = F2.parse_element("b^2")
    z = F2.parse_element("ab")
    assert not on_geodesic(F2, x, y, z, 16)


def test_on_geodesic_endpoint():
    x = F2.parse_element("a^2")
    assert on_geodesic(F2, x, F2.parse_element("b"), x, 16)


# ---------------------------------------------------------------------------
# invariance properties


def test_translation_invariance_exhaustive_small():
    ball = build_ball(F2, 2)
    elems = ball.elements
    for g in sphere(ball, 1):
        for x in elems[:9]:
            for y in elems[:9]:
                assert word_distance(F2, g * x, g * y, 12) == word_distance(F2, x, y, 12)
    zball = build_ball(Z2, 2)
    for g in sphere(zball, 1):
        for x in zball.elements:
            for y in zball.elements:
                assert word_distance(Z2, g * x, g * y, 12) == word_distance(Z2, x, y, 12)


def test_base_change_product_identity():
    # (gx . gy) based at g equals (x . y) based at the identity
    from bscope import MetricWindow, gromov_product

    ball = build_ball(F2, 2)
    elems = ball.elements

    def window_with_base(points, base):
        return MetricWindow(
            points, lambda p, q: word_distance(F2, p, q, 20), base, validate=False
        )

    e = F2.identity()
    base_window = window_with_base(elems, e)
    for g in sphere(ball, 1):
        translated = tuple(g * x for x in elems)
        gw = window_with_base(translated, g * e)
        for x in elems[:7]:
            for y in elems[:7]:
                assert gromov_product(gw, g * x, g * y) == gromov_product(
                    base_window, x, y
                )


def test_ball_norms_step_by_at_most_one():
    for spec in (F2, Z2_DIAG):
        ball = build_ball(spec, 3)
        for g in ball.elements:
            for s in spec.generator_elements():
                h = g * s
                if h in ball:
                    assert abs(ball.norm(h) - ball.norm(g)) <= 1


def test_word_metric_satisfies_triangle_inequality():
    for spec, radius in ((F2, 2), (Z2_DIAG, 2)):
        window = build_ball(spec, radius).window()
        pts = window.points
        for x in pts:
            for y in pts:
                for z in pts:
                    assert window.distance(x, z) <= window.distance(
                        x, y
                    ) + window.distance(y, z)
