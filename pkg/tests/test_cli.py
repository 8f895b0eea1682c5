"""Command-line surface: exit codes, file round trips, reports."""

import json

import pytest

from laxkit.cli import main

TODA = {
    "n": 2,
    "mode": "rational",
    "points": [],
    "infinity": {"fundamental": [-1, 2]},
    "zero": None,
}
DST = {
    "n": 2,
    "mode": "rational",
    "points": [{"x": "x1", "coweight": {"fundamental": [0, 1]}}],
    "infinity": {"fundamental": [-1, 1]},
    "zero": None,
}
TRIG1 = {
    "n": 2,
    "mode": "trig",
    "points": [],
    "infinity": {"fundamental": [1, 0]},
    "zero": {"fundamental": [-2, 2]},
}
BAD = {
    "n": 2,
    "mode": "rational",
    "points": [],
    "infinity": {"fundamental": [0, 1]},
    "zero": None,
}


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_linear_prints_matrix(tmp_path, capsys):
    path = _write(tmp_path, "toda.json", TODA)
    assert main(["linear", "--divisor", path]) == 0
    out = capsys.readouterr().out
    assert "z - p[1,1]" in out
    assert "e^{-q[1,1]}" in out


def test_qdet_commands(tmp_path, capsys):
    path = _write(tmp_path, "trig1.json", TRIG1)
    assert main(["qdet", "--divisor", path]) == 0
    assert capsys.readouterr().out.strip() == "z^2*v^-2"
    path2 = _write(tmp_path, "dst.json", DST)
    assert main(["qdet", "--divisor", path2]) == 0
    assert capsys.readouterr().out.strip() == "z - x[x1] + 1"


def test_verify_rtt_roundtrip(tmp_path, capsys):
    dst = _write(tmp_path, "dst.json", DST)
    mat_path = str(tmp_path / "dst_mat.json")
    assert main(["build", "--divisor", dst, "--out", mat_path, "--quiet"]) == 0
    capsys.readouterr()
    assert main(["verify-rtt", "--matrix", mat_path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    # in-process verification agrees with the file route
    assert main(["verify-rtt", "--divisor", dst]) == 0
    report2 = json.loads(capsys.readouterr().out)
    assert report2 == report


def test_verify_rtt_flags_corruption(tmp_path, capsys):
    dst = _write(tmp_path, "dst.json", DST)
    mat_path = str(tmp_path / "mat.json")
    assert main(["build", "--divisor", dst, "--out", mat_path, "--quiet"]) == 0
    data = json.loads((tmp_path / "mat.json").read_text())
    data["entries"][1][0] = "(2) * e^{-q[1,1]}"  # hand-corrupted entry
    (tmp_path / "mat.json").write_text(json.dumps(data))
    capsys.readouterr()
    report_path = str(tmp_path / "report.json")
    code = main(["verify-rtt", "--matrix", mat_path, "--report", report_path])
    assert code == 1
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["ok"] is False and report["failures"]


def test_inadmissible_divisor_is_usage_error(tmp_path, capsys):
    path = _write(tmp_path, "bad.json", BAD)
    assert main(["build", "--divisor", path]) == 2


def test_yang_baxter_command(capsys):
    assert main(["yang-baxter", "--variant", "rational", "--n", "2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_gt_compare_command(capsys):
    assert main(["gt-compare", "--young", "2,0", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_limit_and_degenerate(tmp_path, capsys):
    dst = _write(tmp_path, "dst.json", DST)
    assert main(["limit", "--divisor", dst]) == 0
    out = capsys.readouterr().out
    assert "z - p[1,1]" in out
    trig = _write(tmp_path, "trig1.json", TRIG1)
    assert main(["degenerate", "--divisor", trig]) == 0
    out = capsys.readouterr().out
    assert "z - p[1,1]" in out


def test_coproduct_command(tmp_path, capsys):
    toda = _write(tmp_path, "toda.json", TODA)
    code = main(
        [
            "coproduct",
            "--divisor",
            toda,
            "--divisor",
            toda,
            "--verify-generators",
            "--quiet",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "exchange relation: PASS" in out
    assert "FAIL" not in out


def test_fuse_command(tmp_path, capsys):
    toda = _write(tmp_path, "toda.json", TODA)
    out_path = str(tmp_path / "fused.json")
    assert main(
        ["fuse", "--divisor", toda, "--divisor", toda, "--out", out_path, "--quiet"]
    ) == 0
    data = json.loads((tmp_path / "fused.json").read_text())
    assert len(data["signature"]["slot_counts"]) == 2
