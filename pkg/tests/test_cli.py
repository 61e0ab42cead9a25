import io
import json
import subprocess
import sys


from profibered.harness import corpus_path
from profibered.harness.cli import main


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv), out)
    text = out.getvalue()
    return code, json.loads(text) if text else None, text


def C(name):
    return str(corpus_path(name))


def test_alexander_and_torsion():
    code, out, _ = run("alexander", "--presentation", C("presentation_cat.json"))
    assert code == 0
    assert out["deltas"] == ["-t + 1", "t^2 - 3*t + 1", "1"]
    assert out["homology"]["degrees"][1]["free_rank"] == 2
    code, out, _ = run("torsion", "--presentation", C("presentation_cat.json"))
    assert code == 0
    assert (out["torsion"]["numerator"], out["torsion"]["denominator"]) == ("t^2 - 3*t + 1", "-t + 1")


def test_nielsen():
    code, out, _ = run("nielsen", "--table", C("catmap.json"), "--mmax", "4")
    assert code == 0
    assert [r["N"] for r in out["nielsen"]] == ["1", "5", "16", "45"]
    assert len(out["stretch"]) == 4


def test_zeta():
    code, out, _ = run("zeta", "--model", C("catmap.json"), "--depth", "8")
    assert code == 0
    assert out["rational"] == {"numerator": "t^2 - 3*t + 1", "denominator": "t^2 - 2*t + 1"}
    code, out, _ = run("zeta", "--model", C("table_z5.json"), "--depth", "4", "--omega", "1")
    assert code in (0, 1) and "omega" in out
    code, out, _ = run("zeta", "--model", C("table_z5.json"), "--omega", "9")
    assert code == 2


def test_fried_cone_and_norm_ball():
    code, out, _ = run("fried-cone", "--graph", C("graph_two_loops.json"), "--max-len", "4")
    assert code == 0 and out["cone"]["rays"] == [["0", "1"], ["1", "0"]]
    code, out, _ = run("norm-ball", "--ball", C("ball_square.json"), "--phi", "1,1")
    assert code == 0 and out["norm"] == "1" and len(out["cones"]) == 4
    code, out, _ = run("norm-ball", "--ball", C("ball_square.json"), "--phi", "1,x")
    assert code == 2


def test_mc_rank():
    assert run("mc-rank", "--map", C("mc_unimodular.json"))[0] == 0
    code, out, _ = run("mc-rank", "--map", C("mc_rank2.json"))
    assert code == 1 and out["reason"] == "not rank one"
    code, out, _ = run("mc-rank", "--map", C("mc_nonunit.json"))
    assert code == 1 and out["reason"] == "generator not a unit"


def test_compare_reciprocal():
    code, out, _ = run("compare-reciprocal", "--a", "t^2-3t+1", "--b", "t^2-t+1", "--mmax", "10")
    assert code == 1 and out["verdict"] == "distinguished-at 1"
    code, out, _ = run("compare-reciprocal", "--a", "t^2-3t+1", "--b", "t^3-3t^2+t", "--mmax", "10")
    assert code == 0 and out["verdict"] == "equivalent"
    assert run("compare-reciprocal", "--a", "t-2", "--b", "t^2-t+1")[0] == 2


def test_battery_exit_codes():
    assert run("battery", "--pair", C("selfpair.json"))[0] == 0
    code, out, _ = run("battery", "--pair", C("perturbed_trace.json"))
    assert code == 1 and out["summary"] == "fail"
    assert [c["check"] for c in out["checks"] if c["verdict"] == "fail"] == ["torsion"]


def test_battery_witness_refeed():
    code, out, _ = run("battery", "--pair", C("perturbed_dilated.json"))
    w = next(c for c in out["checks"] if c["verdict"] == "fail")["witness"]
    code, again, _ = run("battery", "--pair", C("perturbed_dilated.json"), "--check", "norm_values", "--phi", ",".join(w["phi"]))
    assert code == 1 and again["checks"][0]["witness"] == w
    code, out, _ = run("battery", "--pair", C("perturbed_orbits.json"), "--check", "nielsen")
    w = out["checks"][0]["witness"]
    code, again, _ = run("battery", "--pair", C("perturbed_orbits.json"), "--check", "nielsen", "--mmax", str(w["m"]))
    assert code == 1 and again["checks"][0]["witness"] == w


def test_stdin_and_malformed_json(monkeypatch, tmp_path):
    text = corpus_path("ball_square.json").read_text()
    code, out, _ = run("norm-ball", stdin=text, monkeypatch=monkeypatch)
    assert code == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "dual_vertices": [[1, 0]')
    code, out, _ = run("norm-ball", "--ball", str(bad))
    assert code == 2 and "line 2" in out["error"] and "column" in out["error"]
    code, out, _ = run("norm-ball", "--ball", str(tmp_path / "missing.json"))
    assert code == 2
    code, out, _ = run("norm-ball", "--ball", C("catmap.json"))
    assert code == 2
    assert run("no-such-command")[0] == 2


def test_determinism_byte_identical():
    for argv in (
        ["--seed", "3", "battery", "--pair", C("perturbed_square_hexagon.json")],
        ["zeta", "--model", C("catmap.json")],
        ["fried-cone", "--graph", C("graph_markov.json")],
    ):
        a = run(*argv)[2]
        b = run(*argv)[2]
        assert a == b


def test_console_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "profibered.harness.cli", "battery", "--pair", C("selfpair.json")],
        capture_output=True,
        text=True,
    )
    proc2 = subprocess.run(
        [sys.executable, "-m", "profibered.harness.cli", "battery", "--pair", C("selfpair.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == proc2.stdout
