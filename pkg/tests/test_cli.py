"""Subcommands, exit codes, report determinism, and replay verification."""
import json

from bscope.cli import main
from bscope.report import strip_sidecar


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_delta_free_ball(capsys):
    code, payload = run_json(capsys, "delta", "--group", "free:2", "--radius", "4")
    assert code == 0
    assert payload["result"]["delta"] == "0"
    assert payload["result"]["witness"] is None
    assert payload["schema"] == "bscope/1"
    assert payload["config"]["group"] == "free:2"
    assert "version" in payload


def test_delta_z2_ball(capsys):
    code, payload = run_json(
        capsys, "delta", "--group", "zd:2:gens=(1,0),(0,1)", "--radius", "4"
    )
    assert code == 0
    assert payload["result"]["delta"] == "2"
    assert payload["result"]["witness"] is not None


def test_ball_cap_exit_code(capsys):
    code = main(["ball", "--group", "free:9", "--radius", "12"])
    assert code == 3


def test_usage_error_exit_code(capsys):
    code = main(["delta", "--group", "free:zero", "--radius", "2"])
    assert code == 2


def test_ball_report_lists_elements(capsys):
    code, payload = run_json(capsys, "ball", "--group", "free:2", "--radius", "1")
    assert code == 0
    assert len(payload["result"]["elements"]) == 5
    assert payload["result"]["elements"][0]["repr"] == "e"


def test_product_command(capsys):
    code, payload = run_json(
        capsys, "product", "--group", "free:2", "--x", "ab", "--y", "aba"
    )
    assert code == 0
    assert payload["result"]["product"] == "2"


def test_horofn_command(capsys):
    code, payload = run_json(
        capsys,
        "horofn", "--group", "zd:2:gens=(1,0),(0,1)", "--z", "(1,0)", "--x", "(5,0)",
    )
    assert code == 0
    assert payload["result"]["value"] == "1"


def test_classify_command(capsys):
    code, payload = run_json(
        capsys,
        "classify", "--group", "free:2", "--ray", "free:|a",
        "--horizon", "10", "--clause", "geodesic",
    )
    assert code == 0
    assert payload["result"]["verdict"] == "pass"


def test_classify_weakly_with_epsilon(capsys):
    code, payload = run_json(
        capsys,
        "classify", "--group", "free:2", "--ray", "free:|ab",
        "--horizon", "10", "--clause", "weakly-geodesic", "--epsilon", "1/2",
    )
    assert code == 0
    assert payload["result"]["verdict"] == "pass"


def test_equiv_command(capsys):
    code, payload = run_json(
        capsys,
        "equiv", "--group", "free:2", "--a", "free:|a", "--b", "free:a|a",
        "--horizon", "30", "--M", "10",
    )
    assert code == 0
    assert payload["result"]["certificate"]["verdict"] == "pass"


def test_equiv_failing_pair_still_exits_zero(capsys):
    code, payload = run_json(
        capsys,
        "equiv", "--group", "free:2", "--a", "free:|a", "--b", "free:|b",
        "--horizon", "30", "--M", "5",
    )
    assert code == 0
    assert payload["result"]["certificate"]["verdict"] == "fail"


def test_metric_equiv_inconclusive_exit_code(capsys, tmp_path):
    # a sample whose profile cannot stabilize within half the horizon on
    # far probes: use a short horizon with a large probe radius
    code, payload = run_json(
        capsys,
        "metric-equiv", "--group", "free:2", "--a", "free:|a", "--b", "free:a|a",
        "--horizon", "6", "--probe-radius", "5",
    )
    assert code == 4
    assert payload["result"]["verdict"] == "inconclusive"


def test_witness_command(capsys):
    code, payload = run_json(
        capsys,
        "witness", "--group", "free:2", "--sample", "free:|a",
        "--horizon", "30", "--N", "10", "--epsilon", "1/2",
    )
    assert code == 0
    assert payload["result"]["witness"] == "a^11"
    assert payload["result"]["bound"] == 11


def test_witness_inconclusive_exit_code(capsys):
    code, payload = run_json(
        capsys,
        "witness", "--group", "free:2", "--sample", "free:|a",
        "--horizon", "6", "--N", "10", "--epsilon", "1/2",
    )
    assert code == 4
    assert payload["result"]["verdict"] == "inconclusive"


def test_quotient_command_with_samples_file(capsys, tmp_path):
    samples = [
        {"label": "x", "points": [f"({n},0)" for n in range(1, 51)]},
        {"label": "y", "points": [f"(0,{n})" for n in range(1, 51)]},
        {"label": "z", "points": [f"({n},{n})" for n in range(1, 51)]},
    ]
    path = tmp_path / "xyz.json"
    path.write_text(json.dumps(samples))
    code, payload = run_json(
        capsys,
        "quotient", "--group", "zd:2:gens=(1,0),(0,1)",
        "--samples", f"@{path}", "--M", "20", "--horizon", "50",
    )
    assert code == 0
    result = payload["result"]
    assert result["partition_refused"] is True
    assert result["transitivity_violations"] == [["x", "z", "y"]]


def test_quotient_samples_can_mix_rays_and_points(capsys, tmp_path):
    samples = [
        {"label": "a-ray", "ray": "free:|a"},
        {"label": "b-ray", "ray": "free:|b"},
        {"label": "a-pts", "points": ["a" * n for n in range(2, 30)]},
    ]
    path = tmp_path / "mix.json"
    path.write_text(json.dumps(samples))
    code, payload = run_json(
        capsys,
        "quotient", "--group", "free:2",
        "--samples", f"@{path}", "--M", "8", "--horizon", "28",
    )
    assert code == 0
    assert payload["result"]["classes"] == [["a-ray", "a-pts"], ["b-ray"]]


def test_extended_command_with_element_operand(capsys):
    code, payload = run_json(
        capsys,
        "extended", "--group", "free:2", "--a", "free:|a", "--b", "elem:b",
        "--horizon", "20",
    )
    assert code == 0
    assert payload["result"]["value"] == "0"


def test_continuity_command(capsys):
    code, payload = run_json(
        capsys,
        "continuity", "--group", "free:2", "--omega", "free:|a",
        "--member", "free:a|b", "--member", "free:a^2|b",
        "--horizon", "30", "--M", "10", "--probe-radius", "5",
    )
    assert code == 0
    rows = payload["result"]["rows"]
    assert [r["agreement_radius"] for r in rows] == [1, 2]
    assert [r["product"] for r in rows] == ["1", "2"]


def test_mean_scan_json(capsys):
    code, payload = run_json(
        capsys,
        "mean-scan", "--group", "free:2", "--ray", "free:|a", "--ray", "free:|ab",
        "--n-values", "4,8",
    )
    assert code == 0
    assert payload["result"]["bound_constant"] == 2


def test_mean_scan_csv(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    code, text = run(
        capsys,
        "mean-scan", "--group", "free:2", "--ray", "free:|a",
        "--n-values", "4", "--format", "csv", "--out", str(out),
    )
    assert code == 0
    content = out.read_text()
    assert "g,omega,n,defect,defect_decimal" in content
    assert content.startswith("# schema=bscope/1")
    assert "a,free:|a,4,1/2,0.5" in content


def test_reports_are_byte_identical(capsys, tmp_path):
    f1, f2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = [
        "equiv", "--group", "free:2", "--a", "free:|a", "--b", "free:a|a",
        "--horizon", "24", "--M", "8",
    ]
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    capsys.readouterr()
    p1 = json.loads(f1.read_text())
    p2 = json.loads(f2.read_text())
    assert strip_sidecar(p1) == strip_sidecar(p2)
    assert json.dumps(strip_sidecar(p1), sort_keys=True) == json.dumps(
        strip_sidecar(p2), sort_keys=True
    )


def test_verify_roundtrip(capsys, tmp_path):
    report = tmp_path / "delta.json"
    assert main(["delta", "--group", "free:2", "--radius", "3", "--out", str(report)]) == 0
    capsys.readouterr()
    code, payload = run_json(capsys, "verify", str(report))
    assert code == 0
    assert payload["result"]["verified"] is True


def test_verify_detects_tampering(capsys, tmp_path):
    report = tmp_path / "delta.json"
    assert main(["delta", "--group", "free:2", "--radius", "3", "--out", str(report)]) == 0
    capsys.readouterr()
    payload = json.loads(report.read_text())
    payload["result"]["delta"] = "1"
    report.write_text(json.dumps(payload))
    code, out = run_json(capsys, "verify", str(report))
    assert code == 1
    assert out["result"]["verified"] is False


def test_verify_rejects_unknown_schema(capsys, tmp_path):
    report = tmp_path / "bad.json"
    report.write_text(json.dumps({"schema": "other/9"}))
    code = main(["verify", str(report)])
    assert code == 2


def test_seed_flag_does_not_change_witness_verdicts(capsys):
    outs = []
    for seed in ("0", "7"):
        code, payload = run_json(
            capsys,
            "witness", "--group", "free:2", "--sample", "free:|a",
            "--horizon", "24", "--N", "6", "--epsilon", "1/2", "--seed", seed,
        )
        assert code == 0
        outs.append(payload["result"])
    assert outs[0] == outs[1]


def test_classify_explicit_table_report_replays_without_file(capsys, tmp_path):
    ray_file = tmp_path / "ray.json"
    ray_file.write_text(json.dumps([[t, f"({t},{t % 2})"] for t in range(9)]))
    report = tmp_path / "report.json"
    code = main(
        [
            "classify", "--group", "zd:2:gens=(1,0),(0,1)",
            "--ray", f"@{ray_file}", "--horizon", "8",
            "--clause", "geodesic", "--out", str(report),
        ]
    )
    assert code == 0
    capsys.readouterr()
    payload = json.loads(report.read_text())
    assert payload["result"]["verdict"] == "fail"
    assert "table" in payload["config"]["ray"]
    ray_file.unlink()  # verification must not need the original file
    code, out = run_json(capsys, "verify", str(report))
    assert code == 0
    assert out["result"]["verified"] is True


def test_classify_config_echo_is_canonical(capsys, tmp_path):
    f1, f2 = tmp_path / "r1.json", tmp_path / "r2.json"
    base = ["classify", "--group", "free:2", "--horizon", "8", "--clause", "geodesic"]
    assert main(base + ["--ray", "ray=free:|a", "--out", str(f1)]) == 0
    assert main(base + ["--ray", "free:|a", "--out", str(f2)]) == 0
    capsys.readouterr()
    assert strip_sidecar(json.loads(f1.read_text())) == strip_sidecar(
        json.loads(f2.read_text())
    )
