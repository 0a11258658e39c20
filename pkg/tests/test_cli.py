import json

import numpy as np
import pytest

from k3mono.cli import main
from k3mono.permgroup import adjacent_transpositions, embed_f
from k3mono.weierstrass import constant_loop, swap_loop


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def files(tmp_path, con_i, base_i):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "pair": write("pair.json", base_i.to_json()),
        "constant": write("constant.json", constant_loop(base_i).to_json()),
        "swap": write("swap.json", swap_loop(con_i, 1, 2).to_json()),
        "perms": write("perms.json", {"perms": [embed_f(t).to_json() for t in adjacent_transpositions(12)]}),
        "bad": write("bad.json", {"A": [[1, 0]]}),
        "dir": tmp_path,
    }


def test_counts(capsys):
    code, rep = run(capsys, "counts")
    assert code == 0 and rep["schema_version"] == 1 and rep["yau_zaslow_g3"] == 3200
    assert rep["anchors"]["yau_zaslow_g3"]


def test_track_constant_and_swap(capsys, files):
    code, rep = run(capsys, "track", files["pair"], files["constant"])
    assert code == 0 and rep["perm"] == list(range(24)) and rep["schema_version"] == 1
    code, rep = run(capsys, "track", files["pair"], files["swap"])
    assert code == 0 and rep["cycle_type"] == [2, 2]


def test_track_input_errors(capsys, files):
    malformed = files["dir"] / "malformed.json"
    malformed.write_text("{not json")
    assert main(["track", files["pair"], str(malformed)]) == 1
    assert main(["track", files["pair"], str(files["dir"] / "missing.json")]) == 1
    assert main(["track", files["bad"], files["constant"]]) == 1
    capsys.readouterr()


def test_track_base_mismatch(capsys, files, con_ii):
    other = files["dir"] / "other.json"
    other.write_text(json.dumps(swap_loop(con_ii, 0, 1).to_json()))
    assert main(["track", files["pair"], str(other)]) == 1


def test_roots(capsys, files, con_i):
    code, rep = run(capsys, "roots", files["pair"])
    assert code == 0 and len(rep["roots"]) == 24 and rep["separation"] > 0
    roots = np.array([complex(*r) for r in rep["roots"]])
    assert all(np.min(np.abs(roots - a)) < 1e-12 for a in con_i.points)


def test_roots_invalid_pair(capsys, tmp_path):
    p = tmp_path / "deg.json"
    p.write_text(json.dumps({"A": [[0, 0]] * 9, "B": [[1, 0]] + [[0, 0]] * 12}))
    code, rep = run(capsys, "roots", str(p))
    assert code == 1 and not rep["validation"]["valid"]


def test_group(capsys, files):
    code, rep = run(capsys, "group", files["perms"])
    assert code == 0 and rep["order"] == "479001600" and rep["conclusion"] == "not S24"
    assert main(["group", files["bad"]]) == 1


def test_verify_budget_zero(capsys):
    code, rep = run(capsys, "verify-genus1", "--budget", "0")
    assert code == 2 and rep["generators"] == [] and rep["conclusion"] == "not S24"


def test_verify_only_construction_i(capsys):
    code, rep = run(capsys, "verify-genus1", "--only", "construction-i-swaps", "--threads", "1")
    assert code == 2
    assert rep["group"]["order"] == "479001600" and not rep["group"]["primitive"]
    assert {"num_blocks": 12, "block_size": 2} in rep["group"]["block_systems"]


def test_verify_default_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify-genus1", "--threads", "1", "--out", str(a)]) == 0
    assert main(["verify-genus1", "--threads", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["conclusion"] == "S24" and rep["group"]["order"] == "620448401733239439360000"
    assert rep["loops_used"] <= 400


def test_verify_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "loop_budget": 50, "tracker": {"initial_step": 0.005}, "only": "random-scalar"}))
    out = tmp_path / "r.json"
    assert main(["verify-genus1", "--config", str(cfg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["seed"] == 3 and rep["tracker"]["initial_step"] == 0.005
    assert all(r["family"] == "random-scalar" for r in rep["loops"])


def test_verify_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"loop_budget": -1}))
    assert main(["verify-genus1", "--config", str(cfg)]) == 1
    cfg.write_text(json.dumps({"unknown_field": 1}))
    assert main(["verify-genus1", "--config", str(cfg)]) == 1


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "k3mono", "counts"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["mu0"] == 36
