import json
import subprocess
import sys

import pytest

from intlattice.cli import EXIT_CODES, main, run


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def g15(tmp_path):
    return _write(tmp_path, "g15.json", {"gram": [[3, 2, 0], [2, 3, 0], [0, 0, 3]]})


@pytest.fixture
def g7(tmp_path):
    return _write(tmp_path, "seven.json", {"gram": [[7]]})


def test_invariants_places(g15):
    report, code = run(["invariants", g15])
    assert code == 0
    assert [r["claim"] for r in report["results"]] == [
        "local invariant at infinity",
        "local invariant at 2",
        "local invariant at 3",
        "local invariant at 5",
    ]


def test_embed_exit_codes(g7):
    report, code = run(["embed", "--rank", "3", g7])
    assert code == EXIT_CODES["fail"] == 1
    assert report["results"][0]["computed"]["failing_place"] == 2
    assert run(["embed", "--rank", "4", g7])[1] == 0
    assert run(["embed", "--rank", "0", g7])[1] == 2


def test_shortvec_output(tmp_path):
    path = _write(tmp_path, "z2.json", {"ambient_dim": 2, "generators": [["1", "0"], ["0", "1"]]})
    report, code = run(["shortvec", "--bound", "1", path])
    assert code == 0 and report["results"][0]["computed"]["count"] == 4
    assert run(["shortvec", "--bound", "-1", path])[1] == 2


def test_s_int_ilp_and_certificate(tmp_path):
    path = _write(tmp_path, "two.json", {"gram": [[2]]})
    report, code = run(["s-int", "--scale", "2", path])
    assert code == 0
    assert report["results"][0]["computed"]["certificate"]["verified"] is True


def test_s_int_budget_exhaustion_is_unknown():
    report, code = run(["s-int", "--scale", "2", "--budget", "1", "--named", "N"])
    assert code == EXIT_CODES["unknown"] == 3
    assert report["results"][0]["computed"]["status"] == "budget-exhausted"


def test_s_int_refute_named():
    report, code = run(["s-int", "--scale", "2", "--method", "refute", "--named", "N'''"])
    assert code == 1
    assert report["results"][0]["computed"]["mode"] == "all-pairs-violate"
    assert report["inputs"]["support"] == list(range(7, 17))


def test_s_int_refute_without_proof_is_unknown(tmp_path):
    gens = [[1, -1] + [0] * 14]
    path = _write(tmp_path, "root.json", {"ambient_dim": 16, "generators": gens})
    report, code = run(["s-int", "--scale", "2", "--method", "refute", "--support", "1,2,3", path])
    assert code == 3 and report["results"][0]["computed"]["mode"] == "precondition-failed"


def test_classify_gram():
    report, code = run(["classify", "--gram", "[[3,2,0],[2,3,0],[0,0,3]]"])
    assert code == 0 and report["results"][0]["computed"]["count"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["embed", "--rank", "3"],
        ["classify", "--gram", "[[3,2"],
        ["classify", "--gram", "[[1,0,0],[0,1,0],[0,0,1]]"],
        ["s-int", "--scale", "2"],
        ["s-int", "--scale", "0", "--named", "N"],
        ["s-int", "--scale", "3", "--method", "refute", "--named", "N"],
    ],
)
def test_bad_input_exits_2(argv):
    assert run(argv)[1] == 2


def test_bad_documents(tmp_path):
    cases = {
        "notjson.json": "{",
        "floats.json": json.dumps({"gram": [[1.5]]}),
        "asym.json": json.dumps({"gram": [[1, 2], [3, 1]]}),
        "indef.json": json.dumps({"gram": [[1, 2], [2, 1]]}),
        "empty.json": json.dumps({}),
    }
    for name, text in cases.items():
        path = tmp_path / name
        path.write_text(text)
        assert run(["invariants", str(path)])[1] == 2, name
    assert run(["invariants", str(tmp_path / "missing.json")])[1] == 2


def test_main_prints_json_and_text(g15, capsys):
    assert main(["--text", "invariants", g15]) == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["command"] == "invariants"
    assert err.startswith("invariants: ok")


def test_reports_are_byte_identical(g15):
    cmd = [sys.executable, "-m", "intlattice.cli", "invariants", g15]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_classify_is_deterministic():
    a = run(["classify", "--gram", "[[3,2,2],[2,3,2],[2,2,3]]"])[0]
    b = run(["classify", "--gram", "[[3,2,2],[2,3,2],[2,2,3]]"])[0]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_full_verification_all_pass():
    report, code = run(["verify-paper"])
    assert code == 0 and report["exit_status"] == "ok"
    assert len(report["results"]) >= 60
    assert all(r["status"] == "PASS" for r in report["results"])
