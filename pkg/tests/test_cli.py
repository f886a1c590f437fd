import json

import pytest

from superkac.catalog import data_path
from superkac.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_twisted(capsys):
    code, out = run_json(capsys, "classify", "osp_2_4_twisted")
    assert code == 0
    assert out["schema"] == "superkac/1"
    assert out["result"]["isotropy"] == "NonIsotropic"
    assert out["result"]["growth"] == "AFF"


def test_classify_path_falls_back_to_bundled(capsys):
    code, out = run_json(capsys, "classify", "examples/osp_2_4_twisted.json")
    assert code == 0 and out["result"]["growth"] == "AFF"


def test_base_of_from_weight_file(capsys):
    code, out = run_json(capsys, "base-of", "--lambda", str(data_path("osp9_2_lambda")))
    assert code == 0
    assert {r["label"] for r in out["result"]["roots"]} == {"e1-e3", "e2-e4", "e4", "2d1"}
    assert out["certified"] is True


def test_validate_reports_a00(capsys):
    code, out = run_json(capsys, "validate", "--A", "[[2,-1],[0,2]]", "--p", "[0,0]")
    assert code == 1
    assert out["error"]["type"] == "precondition"
    assert [v["axiom"] for v in out["result"]["violations"]] == ["A00"]


def test_validate_good_matrix(capsys):
    code, out = run_json(capsys, "validate", "--A", "[[2,-1],[-1,2]]", "--p", "[0,0]")
    assert code == 0 and out["result"]["valid"]


@pytest.mark.parametrize("argv", [
    ("roots", "A1_1", "--H", "6"),
    ("base-of", "osp9_2", "--pairings=1/3,0,0,0,0"),
    ("enumerate", "A1_1", "--level=-1/2"),
    ("char", "sl2", "--kind", "verma", "--pairings=0", "--D", "5"),
])
def test_output_is_deterministic(capsys, argv):
    outs = {run(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_text_format(capsys):
    code, out = run(capsys, "classify", "sl2", "--format", "text")
    assert code == 0
    assert out.startswith("schema")
    assert "growth" in out


def test_strict_exit_on_truncated_answer(capsys):
    assert run(capsys, "kk", "A1_1", "--pairings=-1/2,0")[0] == 0
    assert run(capsys, "kk", "A1_1", "--pairings=-1/2,0", "--strict")[0] == 2


def test_strict_passes_certified_answer(capsys):
    assert run(capsys, "kk", "sl2", "--pairings=3", "--strict")[0] == 0


def test_height_alias(capsys):
    _, out = run_json(capsys, "roots", "A1_1", "--height", "7")
    assert out["bounds"]["H"] == 7


def test_height_means_depth_for_char(capsys):
    _, out = run_json(capsys, "char", "sl2", "--kind", "denominator", "--height", "4")
    assert out["bounds"]["D"] == 4


def test_word_bound_alias(capsys):
    _, out = run_json(capsys, "classify", "sl2", "--word-bound", "5")
    assert out["bounds"]["L"] == 5


def test_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv("SUPERKAC_THREADS", "x")
    code, out = run_json(capsys, "classify", "sl2")
    assert code == 1
    assert "SUPERKAC_THREADS" in out["error"]["message"]


def test_thread_count_is_reported(capsys, monkeypatch):
    monkeypatch.setenv("SUPERKAC_THREADS", "3")
    _, out = run_json(capsys, "classify", "sl2")
    assert out["threads"] == 3


def test_missing_algebra_is_an_error(capsys):
    code, out = run_json(capsys, "classify", "no_such_algebra")
    assert code == 1 and "error" in out


def test_admissible_level(capsys):
    code, out = run_json(capsys, "admissible", "A1_1", "--level=-1/2")
    assert code == 0 and out["certified"]


def test_reproduce_single_criterion(capsys):
    code, out = run(capsys, "reproduce", "--only", "1", "--format", "text")
    assert code == 0
    assert "PASS" in out
