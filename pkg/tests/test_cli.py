import json

import pytest

from distree.cli import main
from distree.graph import complete, cycle, disjoint_union, encode_graph, path


def _write(tmp_path, name, g, fmt="edge_list"):
    p = tmp_path / name
    p.write_bytes(encode_graph(g, fmt))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_rho_d(tmp_path, capsys):
    code, out, _ = _run(capsys, ["rho-d", _write(tmp_path, "k5.el", complete(5))])
    doc = json.loads(out)
    assert code == 0 and doc["rho_d"]["lo"] == 4.0
    assert doc["rayleigh_lower_bound"] == {"num": 4, "den": 1}


def test_nu_f_graph6(tmp_path, capsys):
    code, out, _ = _run(capsys, ["nu-f", _write(tmp_path, "c4.g6", cycle(4), "graph6")])
    assert code == 0 and json.loads(out)["nu_f"] == {"num": 4, "den": 3}


def test_tau_and_verify(tmp_path, capsys):
    f = _write(tmp_path, "k4.el", complete(4))
    code, out, _ = _run(capsys, ["tau", f, "--k", "2"])
    assert code == 0 and json.loads(out)["certificate"]["kind"] == "TreesFound"
    code, out, _ = _run(capsys, ["verify-p", f, "--k", "1", "--d", "2"])
    assert json.loads(out)["result"]["status"] == "Verified"
    code, out, _ = _run(capsys, ["verify-p", _write(tmp_path, "p3.el", path(3)), "--k", "1", "--d", "1"])
    assert code == 0 and json.loads(out)["result"]["status"] == "Refuted"


def test_extremal(capsys):
    code, out, _ = _run(capsys, ["extremal", "--family", "g2", "--k", "2", "--n", "6", "--emit", "graph", "--graph-format", "graph6"])
    assert code == 0 and out == "EBZ_\n"
    code, out, _ = _run(capsys, ["extremal", "--family", "g1", "--k", "2", "--n", "12", "--emit", "rho"])
    doc = json.loads(out)
    assert doc["rho_d"]["hi"] < 14 and doc["in_hypothesis"]


def test_campaign_and_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"campaign": "comb_lemmas", "a_max": 10, "s_max": 2, "value_max": 4}))
    out = tmp_path / "r.csv"
    code, _, err = _run(capsys, ["campaign", "--config", str(cfg), "--out", str(out)])
    assert code == 0 and out.read_text().startswith("lemma,s,bound")
    assert "comb_lemmas" in err


def test_usage_errors(tmp_path, capsys):
    assert _run(capsys, ["rho-d", str(tmp_path / "missing.el")])[0] == 2
    bad = tmp_path / "bad.el"
    bad.write_text("3 2\n0 1\n")
    assert _run(capsys, ["rho-d", str(bad)])[0] == 2
    assert _run(capsys, ["extremal", "--family", "g1", "--k", "1", "--n", "9"])[0] == 2
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    assert _run(capsys, ["campaign", "--config", str(cfg)])[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["tau"])
    assert exc.value.code == 2


def test_runtime_errors(tmp_path, capsys):
    f = _write(tmp_path, "two.el", disjoint_union(complete(2), complete(2)))
    code, _, err = _run(capsys, ["rho-d", f])
    assert code == 3 and "DisconnectedGraphError" in err
    code, _, _ = _run(capsys, ["nu-f", _write(tmp_path, "p13.el", path(13))])
    assert code == 3


def test_flagged_exit_code(tmp_path, capsys, monkeypatch):
    import distree.cli as cli
    from distree.campaign import Report

    monkeypatch.setattr(cli, "run_campaign", lambda cfg: Report("demo", ["flag"], [{"flag": "COUNTEREXAMPLE"}], {"counterexamples": 1}, {}))
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"campaign": "fang_yang"}))
    assert _run(capsys, ["campaign", "--config", str(cfg)])[0] == 1
