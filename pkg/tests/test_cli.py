from importlib import resources
from pathlib import Path

import pytest
from click.testing import CliRunner

from tiltree.cli import main

GOLDEN = Path(__file__).parent / "golden"
DATA = resources.files("tiltree").joinpath("data")


def run(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, res.output


@pytest.fixture
def a2_args(tmp_path):
    alg = tmp_path / "a2.alg"
    mod = tmp_path / "t.mod"
    alg.write_text(DATA.joinpath("a2.alg").read_text())
    mod.write_text(DATA.joinpath("a2_apr.mod").read_text())
    return ["--algebra", str(alg), "--tilting", str(mod)]


def test_algebra_check():
    code, out = run("algebra", "check")
    assert code == 0
    assert "dim: 11" in out and "gldim: 4" in out and "P(6): 6/5" in out


def test_tilting_verify_exit_codes():
    code, out = run("tilting", "verify")
    assert code == 0 and out.rstrip().endswith("3-tilting: yes")
    code, out = run("tilting", "verify", "--n", "2")
    assert code == 1 and out.rstrip().endswith("2-tilting: no")


def test_field_override():
    code, out = run("--field", "GF(101)", "tilting", "verify")
    assert code == 0 and "3-tilting: yes" in out


def test_non_tilting_module(tmp_path, a2_args):
    bad = tmp_path / "bad.mod"
    bad.write_text("1 + 2\n")
    args = a2_args[:2] + ["--tilting", str(bad)]
    assert run(*args, "tilting", "verify")[0] == 1
    assert run(*args, "hearts", "member", "1", "--level", "0")[0] == 1


def test_input_errors(tmp_path):
    assert run("--algebra", str(tmp_path / "missing.alg"), "algebra", "check")[0] == 2
    broken = tmp_path / "broken.alg"
    broken.write_text("[vertices]\n1 2\n[arrows]\na 1 -> 2\n")
    res = CliRunner().invoke(main, ["--algebra", str(broken), "algebra", "check"])
    assert res.exit_code == 2 and "line 4" in res.output
    assert run("ttree", "simple9")[0] == 2
    assert run("hearts", "member", "3", "--level", "7")[0] == 2
    assert run("--config", str(tmp_path / "none.ini"), "algebra", "check")[0] == 2


@pytest.mark.parametrize("v", ["4", "5"])
def test_ttree_matches_golden(tmp_path, v):
    code, out = run("--out", str(tmp_path), "ttree", f"simple{v}", "--dot", f"t{v}.dot")
    assert code == 0
    assert out.split("dot:")[0] == (GOLDEN / f"ttree_{v}.txt").read_text()
    assert (tmp_path / f"t{v}.dot").read_text() == (GOLDEN / f"ttree_{v}.dot").read_text()


def test_profile():
    code, out = run("profile", "simple5")
    assert code == 0
    assert out.splitlines() == ["object: 5", "rhom: {1:2, 3:1}", "static degree: -", "ext class: -"]
    code, out = run("profile", "6/5")
    assert "static degree: 3" in out and "ext class: 3" in out


def test_hearts_member():
    code, out = run("hearts", "member", "6/5[1]", "--level", "1")
    assert code == 0
    assert "heart: yes" in out and "torsion X: no" in out and "torsion-free Y: yes" in out


def test_compat_witness_r6():
    code, out = run("compat", "witness")
    assert code == 0
    assert "witness: cone(S2->S4[2]#0)[-1]" in out and "replayed: yes" in out


def test_compat_on_a2(a2_args):
    code, out = run(*a2_args, "compat", "witness")
    assert code == 0 and "exhausted: no violation found on corpus" in out
    code, out = run(*a2_args, "compat", "scan")
    assert code == 0 and out.count("no violation found on corpus") == 2


def test_corpus_run_on_a2(a2_args):
    code, out = run(*a2_args, "corpus", "run")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_config_file(tmp_path):
    (tmp_path / "a2.alg").write_text(DATA.joinpath("a2.alg").read_text())
    (tmp_path / "t.mod").write_text(DATA.joinpath("a2_apr.mod").read_text())
    cfg = tmp_path / "ws.ini"
    cfg.write_text("[workspace]\nalgebra = a2.alg\ntilting = t.mod\nwindow = -1, 1\n")
    code, out = run("--config", str(cfg), "compat", "scan", "--direction", "left",
                    "--indecomposables-only")
    assert code == 0
    assert "corpus size: 9" in out
    cfg.write_text("[workspace]\nwindow = 1\n")
    assert run("--config", str(cfg), "algebra", "check")[0] == 2
