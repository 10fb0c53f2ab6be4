import json

import pytest

from bunkbed.cli import main, negative_window_rows
from bunkbed.exactnum import rat


def test_compute_rc_prob(capsys):
    code = main(["compute", "rc-prob", "--graph", "K2", "--p", "1/2", "--q", "2", "--u", "0", "--v", "1"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "1/3"


def test_compute_resistance(capsys):
    code = main(["compute", "resistance", "--graph", "C4", "--u", "0", "--v", "2"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "1"


def test_compute_root143(capsys):
    code = main(["compute", "root143"])
    assert code == 0
    out = capsys.readouterr().out
    assert "1.4" in str(out) or "/" in out  # exact rational endpoints


def test_compute_bracket(capsys):
    code = main(["compute", "bracket", "--graph", "K3", "--marked", "0,1", "--pattern", "0|1"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "2"


def test_decimal_inputs_rejected():
    assert main(["compute", "rc-prob", "--graph", "K2", "--p", "0.5", "--q", "2"]) == 2


def test_unknown_graph_is_usage_error():
    assert main(["compute", "resistance", "--graph", "nope"]) == 2


def test_verify_identity_suite_exit_zero(capsys):
    code = main(["verify", "--suite", "choe", "--catalog", "small4"])
    assert code == 0
    assert "[holds]" in capsys.readouterr().out


def test_verify_bunkbed_named_graph(capsys):
    code = main([
        "verify", "--suite", "bunkbed", "--graph", "K3",
        "--p", "1/4,1/2,3/4", "--q", "2",
    ])
    assert code == 0


def test_verify_unknown_suite():
    assert main(["verify", "--suite", "bogus"]) == 2


def test_table2_small_row(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["table2", "--n", "3", "--p", "1/100", "--out", str(out)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "[0.70, 1.08]" in printed
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    row = doc["payload"]["rows"][0]
    assert row["matches_known"] is True
    assert row["window_2dp"] == ["0.70", "1.08"]


def test_recheck_round_trip(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "hypergraph-factor", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["recheck", str(out)]) == 0
    assert "identical" in capsys.readouterr().out


def test_negative_window_rows_guard_skip():
    rows = negative_window_rows([0], rat(1, 100))
    assert rows[0]["status"] == "skipped"


def test_verify_bunkbed_with_posts_instance(capsys):
    code = main([
        "verify", "--suite", "bunkbed", "--graph", "fig4-left",
        "--p", "1/2", "--q", "1,2",
    ])
    assert code == 0


def test_graph_input_file(tmp_path, capsys):
    doc = {"n": 3, "edges": [[0, 1, "1/2"], [1, 2, "1/2"], [0, 2, "1/2"]]}
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(doc))
    code = main(["compute", "resistance", "--input", str(path), "--u", "0", "--v", "1"])
    assert code == 0
    # Triangle of half-weight resistors: parallel of 2 and 4.
    assert capsys.readouterr().out.strip() == "4/3"


def test_table2_recheck_round_trip(tmp_path, capsys):
    out = tmp_path / "t2.json"
    assert main(["table2", "--n", "3", "--p", "1/100", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["recheck", str(out)]) == 0
    assert "identical" in capsys.readouterr().out


def test_compute_pseudoinverse_json(capsys):
    code = main(["compute", "pseudoinverse", "--graph", "K2"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows == [["1/4", "-1/4"], ["-1/4", "1/4"]]


def test_hollom_graph_hint(capsys):
    assert main(["compute", "resistance", "--graph", "hollom"]) == 2
    assert "hypergraph-factor" in capsys.readouterr().err


def test_exit_code_mapping():
    from bunkbed.cli import _exit_code

    assert _exit_code({"reports": [{"verdict": "holds"}]}) == 0
    assert _exit_code({"reports": [{"verdict": "fails"}]}) == 1
    assert _exit_code({"failed": [3]}) == 1
    assert _exit_code({"identical": False}) == 1
