from __future__ import annotations

import json
import logging
import subprocess
import sys

import pytest

from modrep import __version__
from modrep import cli
from modrep.cache import Cache
from modrep.decomp import decomposition_matrix
from modrep.errors import InternalInconsistency
from modrep.io import parse


def run(argv):
    outcome = cli.execute(cli.build_parser().parse_args(argv))
    return outcome


def doc(outcome):
    assert outcome.exit_code == 0, outcome.text
    return parse(outcome.text)


def test_chartable_c2(group_file, workspace):
    d = doc(run(["chartable", "--group", group_file("C2"), "--p", "2"]))
    assert d["tool"] == "modrep" and d["version"] == __version__ and d["command"] == "chartable"
    assert d["chartable"]["characters"] == [[1, 1], [1, -1]]
    assert d["chartable"]["group"]["order"] == 2
    assert {"input_hash", "seed", "p", "e", "parameters"} <= set(d)


def test_gendecomp_first_slice_is_decomposition_matrix(group_file, workspace, group):
    d = doc(run(["gendecomp", "--group", group_file("S4"), "--p", "2"]))
    slices = d["gendecomp"]["slices"]
    assert slices[0]["index"] == 0 and slices[0]["u"] == "()"
    assert slices[0]["entries"] == decomposition_matrix(group("S4"), 2).entries == [[1, 0], [1, 0], [0, 1], [1, 1], [1, 1]]
    assert d["gendecomp"]["reconstruction_holds"] and not d["gendecomp"]["vanishing_violations"]


def test_decomp_blocks_simples(group_file, workspace):
    path = group_file("S3")
    d = doc(run(["decomp", "--group", path, "--p", "3"]))
    assert d["decomp"]["matrix"] == [[1, 0], [0, 1], [1, 1]] and d["decomp"]["cartan"] == [[2, 1], [1, 2]]
    b = doc(run(["blocks", "--group", path, "--p", "2"]))["blocks"]
    assert b["idempotents_ok"] and len(b["blocks"]) == 2
    s = doc(run(["simples", "--group", group_file("A4"), "--p", "2"]))["simples"]
    assert s["field"] == {"p": 2, "e": 2}
    assert sorted(m["dim"] for m in s["modules"]) == [1, 1, 1]


def test_cohomology_and_deform(group_file, workspace, tmp_path):
    d = doc(run(["cohomology", "--group", group_file("C2"), "--p", "2"]))["cohomology"]
    assert (d["h0"], d["h1"], d["h2"]) == (1, 1, 1)
    rep = tmp_path / "reg.json"
    rep.write_text(json.dumps({"p": 2, "generators": [[[0, 1], [1, 0]]]}))
    d = doc(run(["cohomology", "--group", group_file("C2"), "--p", "2", "--rep", str(rep)]))["cohomology"]
    assert (d["h0"], d["h1"], d["h2"], d["stable_end"]) == (2, 0, 0, 0)
    v = doc(run(["deform", "--group", group_file("C2"), "--p", "2"]))["deform"]
    assert v["tangent_dimension"] == 1 and v["versal"]["relations"] == ["t^2 + 2*t"]
    assert v["versal"]["universal"]


def test_tame_report_sl27(group_file, workspace):
    d = doc(run(["tame-report", "--group", group_file("SL(2,7)"), "--p", "2", "--qn", "t^3+2*t^2+4*t+2"]))
    r = d["tame-report"]
    assert r["n"] == 4 and r["defect_shape"] == "quaternion" and r["case"] == "i"
    assert r["height_one_count"] == 3 and r["maximally_ordinary_count"] == 2
    assert r["mod2_ring"] == ["k[[t]]/(t^3)"] and r["complete_intersection"] is True
    assert r["qn_check"]["ok"]
    assert d["parameters"]["qn"] == "t^3+2*t^2+4*t+2"


def test_tame_report_dihedral_case(group_file, workspace):
    r = doc(run(["tame-report", "--group", group_file("D16"), "--p", "2"]))["tame-report"]
    assert r["case"] == "ii" and r["presentation"] == ["W[[t]]/(t*q_4(t), 2*q_4(t))"]
    assert r["complete_intersection"] is False and r["mod2_ring"] == ["k[[t]]/(t^4)"]


def test_tame_report_semidihedral_needs_flag(group_file, workspace):
    path = group_file("SD16")
    r = doc(run(["tame-report", "--group", path, "--p", "2"]))["tame-report"]
    assert r["case"] == "undetermined" and len(r["presentation"]) == 2
    r = doc(run(["tame-report", "--group", path, "--p", "2", "--three-tubes", "no"]))["tame-report"]
    assert r["case"] == "i"


# -- exit codes ------------------------------------------------------------------------


def error_of(outcome, code):
    assert outcome.exit_code == code, outcome.text
    err = json.loads(outcome.text)["error"]
    assert err["exit_code"] == code
    return err


def test_bad_group_file_exit_2(tmp_path, workspace):
    path = tmp_path / "bad.grp"
    path.write_text("domain 4\ngen (1 2)(3 9)\n")
    err = error_of(run(["chartable", "--group", str(path), "--p", "2"]), 2)
    assert err["type"] == "GroupParseError" and (err["line"], err["column"]) == (2, 13)


@pytest.mark.parametrize(
    "argv",
    [
        ["chartable", "--group", "{C2}", "--p", "4"],
        ["chartable", "--group", "/nonexistent/file.grp", "--p", "2"],
        ["tame-report", "--group", "{S4}", "--p", "2"],
        ["tame-report", "--group", "{SL(2,7)}", "--p", "3"],
        ["tame-report", "--group", "{SL(2,7)}", "--p", "2", "--block", "9"],
        ["tame-report", "--group", "{Q16}", "--p", "2", "--three-tubes", "yes"],
        ["tame-report", "--group", "{SL(2,7)}", "--p", "2", "--qn", "t^^3"],
    ],
)
def test_input_errors_exit_2(argv, group_file, workspace):
    argv = [group_file(a[1:-1]) if a.startswith("{") else a for a in argv]
    error_of(run(argv), 2)


def test_non_invertible_rep_exit_2(group_file, workspace, tmp_path):
    rep = tmp_path / "sing.json"
    rep.write_text(json.dumps({"p": 2, "generators": [[[1, 1], [1, 1]]]}))
    error_of(run(["cohomology", "--group", group_file("C2"), "--p", "2", "--rep", str(rep)]), 2)


def test_budget_exit_3(group_file, workspace):
    err = error_of(run(["cohomology", "--group", group_file("SL(2,7)"), "--p", "2"]), 3)
    assert err["type"] == "BarComplexBudgetExceeded"


def test_consistency_exit_4(group_file, workspace, monkeypatch):
    def broken(G, args, ctx):
        raise InternalInconsistency("injected failure")

    monkeypatch.setitem(cli.HANDLERS, "chartable", broken)
    err = error_of(run(["chartable", "--group", group_file("C2"), "--p", "2", "--no-cache"]), 4)
    assert err["message"] == "injected failure"


def test_unexpected_exception_exit_4(group_file, workspace, monkeypatch, caplog):
    def broken(G, args, ctx):
        raise ZeroDivisionError("boom")

    monkeypatch.setitem(cli.HANDLERS, "chartable", broken)
    with caplog.at_level(logging.ERROR, logger="modrep"):
        error_of(run(["chartable", "--group", group_file("C2"), "--p", "2", "--no-cache"]), 4)
    assert "boom" in caplog.text


def test_main_writes_out_file(group_file, workspace, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["chartable", "--group", group_file("C3"), "--p", "3", "--out", str(out)]) == 0
    assert parse(out.read_text())["chartable"]["degrees"] == [1, 1, 1]
    assert capsys.readouterr().out == ""
    assert cli.main(["chartable", "--group", group_file("C3"), "--p", "6"]) == 2
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "InputError"


def test_module_entry_point(group_file, tmp_path):
    env = {"MODREP_WORKSPACE": str(tmp_path / "ws"), "PATH": "/usr/bin:/bin"}
    proc = subprocess.run(
        [sys.executable, "-m", "modrep.cli", "chartable", "--group", group_file("C2"), "--p", "2"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert parse(proc.stdout)["chartable"]["degrees"] == [1, 1]


# -- cache -----------------------------------------------------------------------------


def test_cache_hit_identical_bytes(group_file, workspace):
    argv = ["chartable", "--group", group_file("S4"), "--p", "2"]
    first = run(argv)
    second = run(argv)
    assert not first.cache_hit and second.cache_hit
    assert first.text == second.text
    fresh = run(argv + ["--no-cache"])
    assert not fresh.cache_hit and fresh.text == first.text
    assert len(list(workspace.rglob("*.json"))) == 1


def test_changed_seed_changes_key(group_file, workspace):
    path = group_file("C2")
    run(["chartable", "--group", path, "--p", "2"])
    other = run(["chartable", "--group", path, "--p", "2", "--seed", "7"])
    assert not other.cache_hit
    assert len(list(workspace.rglob("*.json"))) == 2
    assert parse(other.text)["seed"] == 7


def test_comments_do_not_change_key(tmp_path, workspace):
    a, b = tmp_path / "a.grp", tmp_path / "b.grp"
    a.write_text("domain 2\ngen (1 2)\n")
    b.write_text("# the same group\ndomain 2\n\ngen (1,2)   # swap\n")
    run(["chartable", "--group", str(a), "--p", "2"])
    assert run(["chartable", "--group", str(b), "--p", "2"]).cache_hit


@pytest.mark.parametrize("damage", ["truncate", "garbage", "edit_body"])
def test_poisoned_cache_recomputed(group_file, workspace, caplog, damage):
    argv = ["chartable", "--group", group_file("S3"), "--p", "3"]
    good = run(argv).text
    (entry,) = workspace.rglob("*.json")
    raw = entry.read_text()
    if damage == "truncate":
        entry.write_text(raw[: len(raw) // 2])
    elif damage == "garbage":
        entry.write_bytes(b"\x00\xff not json")
    else:
        data = json.loads(raw)
        data["body"] = data["body"].replace('"order": 6', '"order": 7')
        entry.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING, logger="modrep.cache"):
        again = run(argv)
    assert not again.cache_hit and again.text == good
    assert "corrupt cache entry" in caplog.text or "unreadable" in caplog.text
    assert run(argv).cache_hit


def test_cache_put_is_atomic(tmp_path):
    c = Cache(tmp_path)
    c.put("ab" + "0" * 62, "body\n")
    assert c.get("ab" + "0" * 62) == "body\n"
    assert not list(tmp_path.rglob(".tmp-*"))
    assert c.get("cd" + "0" * 62) is None


def test_workspace_flag(group_file, tmp_path, monkeypatch):
    monkeypatch.delenv("MODREP_WORKSPACE", raising=False)
    ws = tmp_path / "explicit"
    run(["chartable", "--group", group_file("C2"), "--p", "2", "--workspace", str(ws)])
    assert len(list(ws.rglob("*.json"))) == 1
