"""CLI surface: output formats, config handling, exit codes."""

import json

from vertexkz.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_oracle_prints_rational(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--L", "3", "--point", "0,1,2")
    assert code == 0
    num, _, den = out.strip().partition("/")
    assert int(num) and int(den)


def test_oracle_frozen_value(capsys):
    code, out, _ = run_cli(
        capsys, "oracle", "--L", "2", "--eta", "1/3", "--mu", "5,7",
        "--point", "0,1",
    )
    assert code == 0
    assert out.strip() == "490/81"


def test_oracle_count_only(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--L", "4", "--count-only")
    assert code == 0
    assert out.strip() == "42"


def test_oracle_json_payload(capsys):
    code, out, _ = run_cli(
        capsys, "oracle", "--L", "2", "--eta", "1/3", "--mu", "5,7",
        "--point", "0,1", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "490/81"
    assert payload["orientation"] == "DW-standard"


def test_compute_routes_agree(capsys):
    code1, via_det, _ = run_cli(
        capsys, "compute", "--L", "2", "--eta", "1/3", "--mu", "5,7",
        "--point", "0,1", "--via", "det",
    )
    code2, via_oracle, _ = run_cli(
        capsys, "compute", "--L", "2", "--eta", "1/3", "--mu", "5,7",
        "--point", "0,1", "--via", "oracle",
    )
    assert code1 == code2 == 0
    assert via_det == via_oracle


def test_point_length_mismatch_is_a_clean_error(capsys):
    code, _, err = run_cli(capsys, "oracle", "--L", "3", "--point", "0,1")
    assert code == 2
    assert "error:" in err


def test_verify_functional_json_rows(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "functional", "--L", "2", "--points", "2", "--seed", "7"
    )
    assert code == 0
    rows = json.loads(out)
    assert rows and all(row["residual"] == "0" for row in rows if "lambda0" in row)


def test_verify_kz_json_rows(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "kz", "--L", "2", "--points", "2", "--seed", "7"
    )
    assert code == 0
    rows = json.loads(out)
    assert any(row["id"].startswith("kz/") for row in rows)


def test_verify_det_report(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "det", "--L", "2", "--points", "2", "--seed", "7"
    )
    assert code == 0
    report = json.loads(out)
    assert {s["suite"] for s in report["suites"]} == {"cramer", "fuchs", "zy", "degree"}
    assert report["all_pass"]


def test_report_to_file_and_determinism(tmp_path, capsys):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    for path in (out_a, out_b):
        code, _, _ = run_cli(
            capsys, "report", "--L", "1", "--L-max", "2", "--points", "2",
            "--out", str(path),
        )
        assert code == 0
    a = json.loads(out_a.read_text())
    b = json.loads(out_b.read_text())
    a.pop("timings")
    b.pop("timings")
    assert a == b
    assert a["all_pass"]


def test_report_corrupt_weights_nonzero_exit(tmp_path, capsys):
    out = tmp_path / "bad.json"
    code, _, _ = run_cli(
        capsys, "report", "--L", "2", "--points", "2", "--out", str(out),
        "--corrupt-weights",
    )
    assert code == 1
    partial = json.loads(out.read_text())  # partial report still written
    assert not partial["all_pass"]


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"L": 2, "eta": "1/3", "mu": ["5", "7"], "seed": 3}))
    code, out, _ = run_cli(
        capsys, "oracle", "--config", str(cfg), "--point", "0,1"
    )
    assert code == 0
    assert out.strip() == "490/81"
    # flag overrides the config eta; value must change
    code, out2, _ = run_cli(
        capsys, "oracle", "--config", str(cfg), "--point", "0,1", "--eta", "1/2"
    )
    assert code == 0
    assert out2.strip() != "490/81"


def test_reconstruct_round_trip(tmp_path, capsys):
    out = tmp_path / "z.json"
    code, _, _ = run_cli(
        capsys, "reconstruct", "--L", "2", "--eta", "1/3", "--mu", "5,7",
        "--via", "oracle", "--out", str(out),
    )
    assert code == 0
    doc = json.loads(out.read_text())
    from vertexkz import MultiPoly

    poly = MultiPoly.from_json_dict(doc["polynomial"])
    assert doc["via"] == "oracle"
    assert poly.to_json_dict() == doc["polynomial"]
    # frozen L=2 coefficients
    from fractions import Fraction as F

    assert poly.coefficient((1, 1)) == F(2, 9)


def test_reconstruct_via_det_matches_oracle(tmp_path, capsys):
    out_a = tmp_path / "za.json"
    out_b = tmp_path / "zb.json"
    run_cli(capsys, "reconstruct", "--L", "2", "--via", "oracle", "--out", str(out_a))
    run_cli(capsys, "reconstruct", "--L", "2", "--via", "det", "--out", str(out_b))
    a = json.loads(out_a.read_text())["polynomial"]
    b = json.loads(out_b.read_text())["polynomial"]
    assert a["terms"] == b["terms"]
