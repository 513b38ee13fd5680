import json
import math

import pytest
from click.testing import CliRunner

from sp4rep import cli
from sp4rep import sp4


def run(*args):
    return CliRunner().invoke(cli.main, list(args))


def test_identity_element():
    r = run("element", "--in", "1,0,1", "--out", "1,0,1")
    assert r.exit_code == 0, r.output
    rec = json.loads(r.output)
    assert abs(rec["value_re"] - 1) < 1e-14 and rec["route"] == "b0"
    assert rec["config"]["varsigma"] == 4.0 and rec["config"]["l_max"] == 14


def test_boost_element():
    r = run("--element", "kak:0.1", "element", "--in", "0,0,0", "--out", "0,0,0")
    assert r.exit_code == 0
    assert abs(json.loads(r.output)["value_re"] - math.cosh(0.1) ** -8) < 1e-14


def test_spin_index_and_kak_with_compacts():
    r = run("--spin-x2", "1", "--varsigma", "4.5", "--element", "kak:0.3,1,0,0,1:0.2:0,0,1,0,1",
            "element", "--in", "1,0,1,1", "--out", "2,0,3,1")
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["route"] == "series"


def test_explicit_element_round_trip():
    g = sp4.random_element(4, 0.2)
    comps = list(g.a.components()) + list(g.b.components())
    spec = "explicit:" + ",".join(repr(complex(c)).strip("()") for c in comps)
    r1 = run("--element", spec, "element", "--in", "1,0,0", "--out", "2,1,0")
    assert r1.exit_code == 0, r1.output
    assert json.loads(r1.output)["value_re"] is not None


@pytest.mark.parametrize("args", [
    ("element", "--in", "2,2,0", "--out", "0,0,0"),
    ("--varsigma", "2", "element", "--in", "0,0,0", "--out", "0,0,0"),
    ("--element", "bogus", "element", "--in", "0,0,0", "--out", "0,0,0"),
    ("--format", "xml", "character"),
    ("--lmax", "2", "--element", "kak:0.1", "element", "--in", "0,0,0", "--out", "4,0,0"),
    ("verify", "nope"),
])
def test_usage_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_config_file_and_override(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# test\nvarsigma = 5\nlmax=6\nelement = kak:0.1\n")
    rec = json.loads(run("--config", str(p), "element", "--in", "0,0,0", "--out", "0,0,0").output)
    assert rec["config"]["varsigma"] == 5.0 and rec["config"]["l_max"] == 6
    assert abs(rec["value_re"] - math.cosh(0.1) ** -10) < 1e-14
    rec = json.loads(run("--config", str(p), "--varsigma", "4", "element", "--in", "0,0,0",
                         "--out", "0,0,0").output)
    assert rec["config"]["varsigma"] == 4.0
    p.write_text("colour = red\n")
    assert run("--config", str(p), "character").exit_code == 2


def test_deterministic_output():
    args = ("--element", "kak:0.2,0,1,0,1:0.3:0.1,1,1,0,1", "block", "--l-in", "1", "--l-out", "2")
    assert run(*args).output == run(*args).output


def test_csv_block():
    r = run("--format", "csv", "--element", "kak:0.1", "block", "--l-in", "1", "--l-out", "1")
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert lines[0] == "in,out,value_re,value_im,tail_estimate,l_max_used,route"
    assert len(lines) == 1 + 9  # level 1 holds m = -1, 0, 1


def test_character_exit_codes():
    r = run("--element", "diag:0.6967067093471654,0.7173560908995228,0.6967067093471654,"
            "-0.7173560908995228", "--abel-t", "0.5", "--lmax", "40", "character")
    assert r.exit_code == 0
    rec = json.loads(r.output)
    assert rec["verdict"] == "converged"
    assert abs(rec["partial_sums"][-1]["re"] - 1.5634777570911722) < 1e-12
    r = run("--element", "diag:0.6967067093471654,0.7173560908995228,0.6967067093471654,"
            "-0.7173560908995228", "--abel-t", "1", "--lmax", "10", "character")
    assert r.exit_code == 3


def test_verify_suite():
    r = run("verify", "cquat")
    assert r.exit_code == 0
    rec = json.loads(r.output.splitlines()[0])
    assert rec["suite"] == "cquat" and rec["passed"]
