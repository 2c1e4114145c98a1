import json

import pytest

from artifact.cli import load_config, parse_chimney, run
from artifact.rootdata import build_root_datum


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_newton(capsys):
    assert run(["newton", "C", "2", "t^[0,3]"]) == 0
    rec = _json(capsys)
    assert rec["nu"] == ["0", "3"] and rec["integral"] is True


@pytest.mark.parametrize("argv", [
    ["newton", "C", "2", "t^[oops]"],
    ["newton", "E", "8", "t^[0]"],
    ["newton", "A", "9", "t^[0]"],
    ["enumerate", "--chimney", "nonsense"],
    ["enumerate", "--type-vec", "0,1," * 12 + "0", "--chimney", "B,t^[0,0]"],
    ["construct", "--lambda", "3", "--i", "1"],
    ["render", "--out", "/dev/null", "--type", "A", "--rank", "3"],
    ["bogus-command"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_construct_and_lower(capsys):
    assert run(["construct", "--lambda", "3,3", "--i", "1"]) == 0
    rec = _json(capsys)
    assert rec["y"] == "t^[-2,1]*s1s2" and rec["stats"] == {"p": 5, "f": 2, "dim": 7}
    assert run(["construct", "--lambda", "3,3", "--i", "1", "--nu-prime", "0,1/2"]) == 1
    assert "error" in _json(capsys)


def test_enumerate_and_nonempty(capsys):
    assert run(["enumerate", "--type-vec", "0,1,2", "--chimney", "B,t^[0,0]"]) == 0
    rec = _json(capsys)
    assert rec["count"] == len(rec["galleries"]) >= 1
    assert run(["nonempty", "--x", "t^[3,3]*s1s2s1", "--b", "t^[0,0]", "--window", "2"]) == 0
    assert _json(capsys)["status"] == "NONEMPTY"
    assert run(["nonempty", "--x", "t^[3,3]*s1s2s1", "--b", "t^[1,0]"]) == 1
    assert _json(capsys)["status"] == "EMPTY_ON_SHEET"


def test_stdrep_and_conjclass(capsys):
    assert run(["stdrep", "--nu", "0,3/2", "--kappa", "0,0"]) == 0
    rec = _json(capsys)
    assert run(["stdrep", "--nu", "0,3/2", "--candidate", rec["std_rep"]]) == 0
    assert _json(capsys)["candidate_ok"] is True
    assert run(["conjclass", "--nu", "0,3/2", "--window", "2"]) == 0
    assert _json(capsys)["members"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "artifact.cfg"
    cfg.write_text("# settings\ncap = 2\nwindow = 1\n")
    assert load_config(str(cfg)) == {"cap": "2", "window": "1"}
    argv = ["--config", str(cfg), "enumerate", "--type-vec", "0,1,2", "--chimney", "B,t^[0,0]"]
    assert run(argv) == 2
    assert run(["--config", str(tmp_path / "missing"), "verify", "--only", "10"]) == 2


def test_verify_subset(capsys):
    assert run(["verify", "--only", "10"]) == 0
    assert "[PASS] 10" in capsys.readouterr().out


def test_render(tmp_path):
    out = tmp_path / "x.svg"
    assert run(["render", "--out", str(out), "--lambda", "3,3", "--signs"]) == 0
    assert out.read_text().startswith("<svg")


def test_parse_chimney():
    R = build_root_datum("A", 2)
    assert parse_chimney(R, "G,t^[0,0]").parabolic == frozenset({1, 2})
    assert parse_chimney(R, "B,t^[0,0]").parabolic == frozenset()
    assert parse_chimney(R, "2,t^[1,0]").parabolic == frozenset({2})
