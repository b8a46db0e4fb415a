import json
import os

import pytest

from ribbonlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out) if out else None
    return code, doc


def test_limit_quadric_degenerate_example(capsys):
    code, doc = run_cli(capsys, "limit-quadric", "--g", "4", "--q", "[[1,0],[0,0]]")
    assert code == 0
    assert doc["status"] == "ok"
    p = doc["payload"]
    assert p["degenerate"] is True
    assert p["det"] == "0"
    assert p["witness_lambda"] == ["0", "1"]


def test_limit_quadric_nondegenerate_examples(capsys):
    code, doc = run_cli(capsys, "limit-quadric", "--g", "3", "--q", "[[1]]")
    assert code == 0 and doc["payload"]["degenerate"] is False

    code, doc = run_cli(capsys, "limit-quadric", "--g", "4", "--q", "[[1,0],[0,1]]")
    assert code == 0
    assert doc["payload"]["degenerate"] is False
    assert doc["payload"]["det"] == "1"
    assert doc["payload"]["witness_lambda"] is None


def test_limit_quadric_header_object_and_mismatch(capsys):
    q = json.dumps({"g": 4, "matrix": [["1", "1/2"], ["1/2", "1"]]})
    code, doc = run_cli(capsys, "limit-quadric", "--q", q)
    assert code == 0 and doc["payload"]["det"] == "3/4"

    code, doc = run_cli(capsys, "limit-quadric", "--g", "5", "--q", q)
    assert code == 1 and doc["status"] == "error"


def test_limit_quadric_malformed_matrix(capsys):
    code, doc = run_cli(capsys, "limit-quadric", "--g", "4", "--q", "[[1,2],[3,4]]")
    assert code == 1
    assert doc["status"] == "error"
    assert "symmetric" in doc["payload"]["message"]


def test_limit_quadric_from_file(tmp_path, capsys):
    path = tmp_path / "q.json"
    path.write_text(json.dumps([[1, 0], [0, 0]]))
    code, doc = run_cli(capsys, "limit-quadric", "--g", "4", "--q", str(path))
    assert code == 0 and doc["payload"]["degenerate"] is True


def test_limit_relation_ideal_square_element(capsys):
    # (u0 u2 - u1^2)^2 lies in the ideal square, so phi_4 kills it
    sq = [{"u": [2, 0, 2], "v": [0], "c": "1"},
          {"u": [1, 2, 1], "v": [0], "c": "-2"},
          {"u": [0, 4, 0], "v": [0], "c": "1"}]
    code, doc = run_cli(capsys, "limit-relation", "--g", "3", "--d", "4",
                        "--poly", json.dumps(sq))
    assert code == 0
    p = doc["payload"]
    assert p["limit"] is True and p["rank"] == 0
    assert p["witness_lambda"] is not None


def test_limit_relation_multiple_of_nondegenerate_quadric(capsys):
    # u_0 * (u0u2 - u1^2 + u1u3 - u2^2) at g=4: both quadric summands come
    # from the identity q, which is nondegenerate, so the cubic is no limit
    cubic = [{"u": [2, 0, 1, 0], "v": [0, 0], "c": "1"},
             {"u": [1, 2, 0, 0], "v": [0, 0], "c": "-1"},
             {"u": [1, 1, 0, 1], "v": [0, 0], "c": "1"},
             {"u": [1, 0, 2, 0], "v": [0, 0], "c": "-1"}]
    code, doc = run_cli(capsys, "limit-relation", "--g", "4", "--d", "3",
                        "--poly", json.dumps(cubic))
    assert code == 0
    assert doc["payload"]["limit"] is False
    assert doc["payload"]["rank"] == 2


def test_limit_relation_rejects_outside_ideal(capsys):
    code, doc = run_cli(capsys, "limit-relation", "--g", "4", "--d", "2",
                        "--poly", '[{"u":[2,0,0,0],"v":[0,0],"c":"1"}]')
    assert code == 1
    assert doc["payload"]["message"] == "not a canonical relation"

    # v-terms are outside the coordinate ring of the ambient space
    code, doc = run_cli(capsys, "limit-relation", "--g", "4", "--d", "2",
                        "--poly", '[{"u":[0,0,0,0],"v":[1,0],"c":"1"}]')
    assert code == 1
    assert doc["payload"]["message"] == "not a canonical relation"


def test_verify_small_suites_pass(capsys):
    for suite in ("rnc", "fitting"):
        code, doc = run_cli(capsys, "verify", "--suite", suite,
                            "--gmax", "4", "--dmax", "4", "--seed", "5")
        assert code == 0
        p = doc["payload"]
        assert p["all_pass"] is True
        assert p["seed"] == 5
        assert p["total"] == p["passed"] > 0
        for item in p["suites"][suite]:
            assert item["counterexample"] is None


def test_verify_families_suite_passes(capsys):
    code, doc = run_cli(capsys, "verify", "--suite", "families",
                        "--gmax", "4", "--dmax", "3", "--seed", "11")
    assert code == 0
    assert doc["payload"]["all_pass"] is True
    found = [i for i in doc["payload"]["suites"]["families"]
             if i["property"] == "order_doubling" and i["params"]["d"] == 3]
    assert found and all(i["detail"]["ribbon_order"] == 6 for i in found)


def test_verify_rerun_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "xg", "--gmax", "3", "--dmax", "3",
            "--seed", "7", "--quiet"]
    assert main(args + ["--json-out", str(a)]) == 0
    os.environ["RIBBONLAB_THREADS"] = "3"
    try:
        assert main(args + ["--json-out", str(b)]) == 0
    finally:
        del os.environ["RIBBONLAB_THREADS"]
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""  # --quiet keeps stdout empty


def test_verify_rejects_bad_ranges(capsys):
    code, doc = run_cli(capsys, "verify", "--suite", "rnc", "--gmax", "2")
    assert code == 1 and doc["status"] == "error"


def test_family_pipeline_round_trip(tmp_path, capsys):
    octic = json.dumps([1, 0, 0, 0, 0, 0, 0, 0, 1])
    code, doc = run_cli(capsys, "family", "build", "--g", "3", "--d", "1",
                        "--h", octic, "--seed", "3")
    assert code == 0
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps(doc["payload"]["family"]))

    code, doc = run_cli(capsys, "family", "rescale", "--family", str(fam),
                        "--k", "1")
    assert code == 0
    scaled = tmp_path / "scaled.json"
    scaled.write_text(json.dumps(doc["payload"]["family"]))

    code, doc = run_cli(capsys, "family", "order", "--family", str(scaled))
    assert code == 0
    assert doc["payload"]["ribbon_order"] == 2
    assert doc["payload"]["ribbon_order_display"] == "2"

    code, doc = run_cli(capsys, "family", "discriminant", "--family", str(scaled))
    assert code == 0
    assert doc["payload"]["section"]["s"]["coeffs"] == \
        ["1", "0", "0", "0", "0", "0", "0", "0", "1"]
    assert doc["payload"]["binary_discriminant"] != "0"


def test_family_constant_split_order_display(tmp_path, capsys):
    code, doc = run_cli(capsys, "family", "build", "--g", "3",
                        "--model", "split", "--order-bound", "6")
    assert code == 0
    fam = tmp_path / "split.json"
    fam.write_text(json.dumps(doc["payload"]["family"]))
    code, doc = run_cli(capsys, "family", "order", "--family", str(fam))
    assert code == 0
    assert doc["payload"]["ribbon_order_display"] == ">= 6"
    assert doc["payload"]["hyperelliptic_order_display"] == ">= 6"


def test_family_rescale_reports_inexact_division(tmp_path, capsys):
    octic = json.dumps([1, 0, 0, 0, 0, 0, 0, 0, 1])
    code, doc = run_cli(capsys, "family", "build", "--g", "3", "--d", "1",
                        "--h", octic)
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps(doc["payload"]["family"]))
    code, doc = run_cli(capsys, "family", "rescale", "--family", str(fam),
                        "--k", "2")
    assert code == 1
    assert "does not admit the rescaling" in doc["payload"]["message"]


def test_family_build_requires_h(capsys):
    code, doc = run_cli(capsys, "family", "build", "--g", "3")
    assert code == 1
    assert "--h" in doc["payload"]["message"]


def test_build_is_deterministic_per_seed(capsys):
    decic = json.dumps([1] + [0] * 9 + [1])  # degree 2g+2 = 10 at g=4
    _, doc1 = run_cli(capsys, "family", "build", "--g", "4", "--d", "1",
                      "--h", decic, "--seed", "9")
    _, doc2 = run_cli(capsys, "family", "build", "--g", "4", "--d", "1",
                      "--h", decic, "--seed", "9")
    assert doc1 == doc2
    _, doc3 = run_cli(capsys, "family", "build", "--g", "4", "--d", "1",
                      "--h", decic, "--seed", "10")
    assert doc1["payload"]["family"] != doc3["payload"]["family"]
