import json
import subprocess
import sys

import pytest

from alab import cli
from alab.report import irrational, sqrt2_tag


def run(argv, capsys):
    code, rep = cli.run(argv)
    out = capsys.readouterr()
    return code, rep, out


def test_classify_d4(capsys):
    code, rep, _ = run(["cones", "classify", "--type", "D4"], capsys)
    assert code == 0 and rep["payload"]["is_linear"] is False
    assert [x["symbolic"] for x in rep["payload"]["vA"]] == ["2-sqrt2", "-3+2*sqrt2", "2-sqrt2", "2-sqrt2"]
    assert rep["schema_version"] == "alab-report/1"


def test_product_formula(capsys):
    code, rep, out = run(["places", "product-formula", "3/2"], capsys)
    assert code == 0 and rep["payload"]["value"] == "1"
    assert json.loads(out.out) == rep


def test_places_other_verbs(capsys):
    assert run(["places", "abs", "3/2", "--at", "2"], capsys)[1]["payload"]["value"] == "2"
    assert run(["places", "abs", "3/2", "--at", "inf"], capsys)[1]["payload"]["value"] == "3/2"
    assert run(["places", "valuation", "2000", "--p", "5"], capsys)[1]["payload"]["value"] == "3"
    assert run(["places", "window", "1/3", "--s", "5"], capsys)[1]["payload"]["value"] is False


def test_unknown_command(capsys):
    code, rep, out = run(["nosuchcmd"], capsys)
    assert code == 2 and rep is None and "usage" in out.err


def test_unknown_flag_named(capsys):
    code, _, out = run(["cones", "classify", "--type", "D4", "--bogus"], capsys)
    assert code == 2 and "--bogus" in out.err


def test_module_error_is_wrapped(capsys):
    code, _, out = run(["rootsys", "dump", "--type", "E9"], capsys)
    assert code == 2 and out.err.startswith("alab rootsys: error:")


def test_fail_verdict_exit_1(capsys):
    code, rep, _ = run(["cones", "nested", "--type", "D4", "--unit"], capsys)
    assert code == 1 and rep["verdict"] == "fail" and rep["witness"] is not None


def test_rescale_and_rootsys(capsys):
    code, rep, _ = run(["cones", "rescale", "--type", "D4"], capsys)
    assert code == 0 and rep["verdict"] == "pass"
    code, rep, _ = run(["rootsys", "dump", "--type", "A2"], capsys)
    assert rep["payload"]["cartan"] == [["2", "-1"], ["-1", "2"]]
    code, rep, _ = run(["rootsys", "check", "--all"], capsys)
    assert code == 0 and rep["verdict"] == "pass"


def test_classify_all_csv(capsys):
    code, rep, out = run(["cones", "classify", "--all"], capsys)
    lines = out.out.strip().splitlines()
    assert code == 0 and lines[0] == "type,is_linear,v,v.A"
    rows = {l.split(",")[0]: l.split(",")[1] for l in lines[1:]}
    assert rows["D4"] == "false" and rows["G2"] == "true"
    assert "-0.000000000000" not in out.out


def test_out_file_and_determinism(tmp_path, capsys):
    cfg = tmp_path / "z.json"
    cfg.write_text(json.dumps({"schema": "alab-config/1", "scheme": "zsqrt2", "window": 1, "height": 5}))
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        code, _, out = run(["cutproject", "certify", str(cfg), "--out", str(path)], capsys)
        assert code == 0 and out.out == ""
        rep = json.loads(path.read_text())
        rep.pop("timing")
        outs.append(rep)
    assert outs[0]["payload"] == outs[1]["payload"] and outs[0]["verdict"] == "pass"


def test_cutproject_verbs(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"scheme": "z-one-over-p", "p": 5, "window": 1, "height": 2}))
    code, rep, _ = run(["cutproject", "enumerate", str(cfg)], capsys)
    assert code == 0 and "1/5" in rep["payload"]["points"] and rep["payload"]["inverse_closed"]
    code, rep, _ = run(["cutproject", "star", str(cfg), "--element", "7/25"], capsys)
    assert rep["payload"]["star"] == "7/25"
    code, rep, _ = run(["cutproject", "descent", str(cfg), "--seed", "3"], capsys)
    assert code == 0 and rep["payload"]["violations"] == 0
    code, rep, _ = run(["cutproject", "commensurable", str(cfg), "--big-window", "2"], capsys)
    assert code == 0
    cfg.write_text(json.dumps({"schema": "other/9", "scheme": "zsqrt2"}))
    assert run(["cutproject", "enumerate", str(cfg)], capsys)[0] == 2


def test_coarse_verbs(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[0, 0], [1, 0], [1, 1], [0, 1], [6, 6]]))
    code, rep, _ = run(["coarse", "vr", "--input", str(pts), "--r", "1", "--max-dim", "2"], capsys)
    assert rep["payload"]["components"] == 2 and rep["payload"]["h1_rank"] == 1
    code, rep, _ = run(["coarse", "probe", "--input", str(pts), "--schedule", "1,2,4,8"], capsys)
    assert set(rep["payload"]) >= {"scale", "components", "h1_rank", "map_verdicts"}
    assert rep["verdict"] == "inconclusive"
    code, rep, _ = run(["coarse", "map", "--input", str(pts), "--r", "1", "--s", "8"], capsys)
    assert rep["payload"]["verdict"] == "trivial"
    code, rep, _ = run(["coarse", "product", "--input", str(pts), "--input-b", str(pts), "--r", "1"], capsys)
    assert code == 0 and rep["payload"]["components"]["AxB"] == 4
    code, rep, _ = run(["coarse", "cayley", "--stages", "1,-1;5,-5", "--target", "17"], capsys)
    assert rep["payload"]["distance"] == 8  # 5+5+5 at cost 2 each, then 1+1
    code, rep, _ = run(["coarse", "cayley", "--stages", "1,-1", "--target", "50", "--budget", "5"], capsys)
    assert rep["verdict"] == "inconclusive" and rep["payload"]["lower_bound"] == 5
    filt = tmp_path / "f.json"
    filt.write_text(json.dumps({"points": [[0, 0], [1, 0], [2, 0]], "filtration_a": [[0], [0, 1], [0, 1, 2]],
                                "filtration_b": [[0, 1], [0, 1, 2]]}))
    code, rep, _ = run(["coarse", "interleave", "--input", str(filt), "--r", "1"], capsys)
    assert code == 0 and rep["payload"]["interleaved"]


def test_bttree_verbs(capsys):
    code, rep, _ = run(["bttree", "busemann", "--p", "2", "--depth", "8", "--g", "p,0;0,1/p"], capsys)
    assert code == 0 and rep["payload"]["shifts"] == [-2] and rep["payload"]["samples"] >= 50
    assert rep["payload"]["constant"] == "1"
    assert run(["bttree", "beta", "--vertex", "1,0"], capsys)[1]["payload"]["beta"] == -1
    assert run(["bttree", "act", "--g", "p,0;0,1", "--p", "3"], capsys)[1]["payload"]["result"] == [1, "0"]
    assert run(["bttree", "distance", "--v", "0,0", "--w", "2,0"], capsys)[1]["payload"]["distance"] == 2
    assert len(run(["bttree", "neighbors", "--p", "5"], capsys)[1]["payload"]["neighbors"]) == 6
    assert run(["bttree", "ball", "--radius", "2"], capsys)[1]["payload"]["size"] == 10
    rep = run(["bttree", "horofunction", "--g", "p,0;0,1/p", "--g", "1,1;0,1"], capsys)[1]
    assert [v for _, v in rep["payload"]["values"]] == ["1/4", "1"]
    assert run(["bttree", "act", "--g", "512,0;0,1/512"], capsys)[0] == 2  # beyond depth 8


def test_suite_empty_and_negative_control(tmp_path, capsys):
    empty = tmp_path / "e.json"
    empty.write_text(json.dumps({"schema": "alab-config/1", "checks": []}))
    code, rep, _ = run(["suite", str(empty)], capsys)
    assert code == 0 and rep["payload"]["total"] == 0
    neg = tmp_path / "n.json"
    neg.write_text(json.dumps({"schema": "alab-config/1", "checks": [
        {"check": "classify", "params": {"type": "D4"}, "expect": {"vA_signs": [1, 1, 1, 1]}}]}))
    code, rep, _ = run(["suite", str(neg)], capsys)
    assert code == 1 and rep["verdict"] == "fail"
    assert rep["witness"][0]["expect_mismatch"]["vA_signs"]["got"] == [1, -1, 1, 1]


def test_suite_config_errors(tmp_path, capsys):
    bad = tmp_path / "b.json"
    bad.write_text("{not json")
    assert run(["suite", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"checks": []}))
    assert run(["suite", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"schema": "alab-config/1", "checks": [{"check": "nope"}]}))
    assert run(["suite", str(bad)], capsys)[0] == 2


def test_suite_runs_criteria_in_order(tmp_path, capsys):
    cfg = tmp_path / "s.json"
    cfg.write_text(json.dumps({"schema": "alab-config/1", "checks": [
        {"check": "criterion-1"}, {"check": "criterion-2"}, {"check": "product-formula", "params": {"q": "-9/8"}}]}))
    code, rep, _ = run(["suite", str(cfg)], capsys)
    assert code == 0 and [r["check"] for r in rep["payload"]["results"]] == ["criterion-1", "criterion-2",
                                                                             "product-formula"]
    assert len(cli.builtin_acceptance_config()["checks"]) == 11


def test_irrational_serialization():
    assert irrational(2 - 2 ** 0.5) == {"decimal": "0.585786437627", "symbolic": "2-sqrt2"}
    assert sqrt2_tag(2 ** 0.5 / 2) == "1/2*sqrt2"
    assert sqrt2_tag(3.14159) is None
    assert irrational(-1e-17)["decimal"] == "0.000000000000"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "alab", "places", "product-formula", "2250/77"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["payload"]["value"] == "1"
