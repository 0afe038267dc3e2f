import json
import pathlib

import pytest

from twistdet.cli import main

GOLDENS = pathlib.Path(__file__).parent / "goldens"

QRING_DOC = {"coeff": {"kind": "rational"}, "order": 3}


@pytest.fixture
def ring_file(tmp_path):
    def write(doc, name="ring.json"):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return write


@pytest.fixture
def qring(ring_file):
    return ring_file(QRING_DOC)


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_inv_stdout(capsys, qring):
    code, out, err = run_cli(capsys, "inv", "--ring", qring, '1+w("x")')
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["op"] == "inv"
    assert doc["result"] == '1-w("x")+w("xx")-w("xxx")'


def test_order_flag_overrides_ring(capsys, qring):
    code, out, _ = run_cli(capsys, "inv", "--ring", qring, "--order", "1",
                           '1+w("x")')
    assert code == 0
    assert json.loads(out)["result"] == '1-w("x")'


def test_mul_variadic(capsys, qring):
    code, out, _ = run_cli(capsys, "mul", "--ring", qring,
                           '1+w("x")', '1-w("x")', "1")
    assert code == 0
    assert json.loads(out)["result"] == '1-w("xx")'


def test_ldu_and_det(capsys, qring):
    mat = json.dumps([['1+w("x")', 'w("x")'], ['w("x")', '1+w("x")']])
    code, out, _ = run_cli(capsys, "ldu", "--ring", qring, mat)
    assert code == 0
    doc = json.loads(out)
    assert doc["d1"] == '1+w("x")'
    assert doc["l"] == [['w("x")-w("xx")+w("xxx")']]
    code, out, _ = run_cli(capsys, "det", "--ring", qring, mat)
    assert code == 0
    assert json.loads(out)["det"] == '1+2*w("x")'


def test_matrix_operand_from_file(capsys, qring, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps([["1"]]))
    code, out, _ = run_cli(capsys, "det", "--ring", qring, f"@{p}")
    assert code == 0
    assert json.loads(out)["det"] == "1"


def test_cyclog_output(capsys, qring):
    code, out, _ = run_cli(capsys, "cyclog", "--ring", qring, '1+w("x")')
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == {"x": {"1": "1"}, "xx": {"1": "-1/2"},
                              "xxx": {"1": "1/3"}}


def test_coset_verdict(capsys, qring):
    code, out, _ = run_cli(capsys, "coset", "--ring", qring, '1+w("x")', "1")
    assert code == 0
    assert json.loads(out)["verdict"] == "distinct"


def test_endoclass_and_addcheck(capsys, ring_file):
    ring = ring_file({"coeff": {"kind": "rational"}, "order": 4})
    code, out, _ = run_cli(capsys, "endoclass", "--ring", ring,
                           json.dumps([["0", "1"], ["0", "0"]]))
    assert code == 0
    assert json.loads(out)["result"] == "1"
    code, out, _ = run_cli(capsys, "addcheck", "--ring", ring,
                           json.dumps([["1"]]), json.dumps([["1"]]),
                           json.dumps([["5"]]))
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_novikov_report(capsys, ring_file):
    ring = ring_file({
        "coeff": {"kind": "group_algebra",
                  "group": {"name": "C2", "table": [[0, 1], [1, 0]]}},
        "alphabet": ["z"], "order": 3})
    nov = json.dumps({"degrees": {"0": "1", "1": "-1*g1"}})
    code, out, _ = run_cli(capsys, "novikov", "--ring", ring, nov)
    assert code == 0
    doc = json.loads(out)
    assert doc["w1"]["entries"]["z"] == {"g1": "-1"}
    assert doc["orbits"]["entries"] == {"1": {"g1": "-1"}, "2": {"g0": "-1/2"},
                                        "3": {"g1": "-1/3"}}


def test_selftest_op(capsys):
    code, out, _ = run_cli(capsys, "selftest", "rings", "--seed", "3",
                           "--trials", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["suite"] == "rings"


def test_exit_code_1_on_bad_input(capsys, ring_file, tmp_path):
    # malformed ring JSON
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run_cli(capsys, "inv", "--ring", str(p), "1")
    assert code == 1
    assert json.loads(err)["error"]["type"]
    # schema violation: unknown ring kind
    ring = ring_file({"coeff": {"kind": "octonions"}, "order": 2})
    code, _, err = run_cli(capsys, "inv", "--ring", ring, "1")
    assert code == 1
    # bad series literal
    ring = ring_file(QRING_DOC)
    code, _, err = run_cli(capsys, "inv", "--ring", ring, 'w("q")')
    assert code == 1
    assert json.loads(err)["error"]["type"] == "LiteralSyntaxError"
    # missing ring file
    code, _, err = run_cli(capsys, "inv", "--ring", str(tmp_path / "nope.json"), "1")
    assert code == 1


def test_exit_code_2_on_domain_error(capsys, qring):
    # eps = 0: schema-valid input refused on mathematical grounds
    code, _, err = run_cli(capsys, "inv", "--ring", qring, 'w("x")')
    assert code == 2
    assert json.loads(err)["error"]["type"] == "AugmentationNotUnit"


def test_run_job_file(capsys, tmp_path):
    p = tmp_path / "job.json"
    p.write_text(json.dumps({"op": "inv",
                             "ring": {"coeff": {"kind": "rational"}, "order": 2},
                             "series": ['1-w("x")']}))
    code, out, _ = run_cli(capsys, "run", str(p))
    assert code == 0
    assert json.loads(out)["result"] == '1+w("x")+w("xx")'


def test_run_rejects_unknown_op(capsys, tmp_path):
    p = tmp_path / "job.json"
    p.write_text(json.dumps({"op": "frobnicate"}))
    code, _, err = run_cli(capsys, "run", str(p))
    assert code == 1


def test_out_flag_writes_canonical_file(capsys, qring, tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = run_cli(capsys, "inv", "--ring", qring, "--out", str(target),
                           "1")
    assert code == 0
    text = target.read_text()
    assert text.endswith("\n")
    assert json.loads(text)["result"] == "1"


def byte_golden(capsys, tmp_path, stem):
    job = GOLDENS / f"{stem}_job.json"
    want = (GOLDENS / f"{stem}_out.json").read_bytes()
    target = tmp_path / "out.json"
    code = main(["run", str(job), "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert target.read_bytes() == want
    # determinism: a second run produces identical bytes
    code = main(["run", str(job), "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert target.read_bytes() == want


def test_golden_cgen_coefficient_commutator(capsys, tmp_path):
    byte_golden(capsys, tmp_path, "cgen_commutes")


def test_golden_cgen_unit_conjugation(capsys, tmp_path):
    byte_golden(capsys, tmp_path, "cgen_conjugation")
