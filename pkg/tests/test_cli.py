import json

import numpy as np
import pytest

from dualcert import cli
from dualcert.serialize import matrix_from_json

from conftest import SWAP


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("token,kind", [
    ("pauli", "CoPositiveOrderIso"),
    ("weyl:5", "NotOrderIso"),
    ("standard:3", "CompleteOrderIso"),
    ("weyl:2", "CompleteOrderIso"),
])
def test_classify_tokens(capsys, token, kind):
    code, out, _ = run(capsys, "classify", token, "--json")
    assert code == 0
    assert json.loads(out)["kind"] == kind
    code, out, _ = run(capsys, "classify", token)
    assert f"kind: {kind}" in out


def test_classify_check_kind(capsys):
    assert run(capsys, "classify", "pauli", "--check-kind", "CoPositiveOrderIso")[0] == 0
    assert run(capsys, "classify", "pauli", "--check-kind", "CompleteOrderIso")[0] == 1


def test_classify_basis_file(capsys, tmp_path):
    f = tmp_path / "lam.json"
    lam = {"n": 2, "entries": [[[0, 1], [1, 0]], [[1, 0], [1, 0]]]}
    f.write_text(json.dumps({"n": 2, "kind": "scaled_unit", "lambda": lam}))
    code, out, _ = run(capsys, "classify", str(f), "--json")
    assert code == 0 and json.loads(out)["kind"] == "NotOrderIso"


@pytest.mark.parametrize("argv", [
    ("classify", "weyl:0"),
    ("classify", "nonsense"),
    ("choi", "transpose"),
    ("choi", "identity", "--form", "genl", "--n", "2"),
    ("choi", "identity", "--basis", "standard:3", "--n", "2", "--form", "genl"),
    ("witness", "pauli", "transpose"),
    ("witness", "weyl:3", "identity"),
])
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_witness_wrong_kind_includes_verdict(capsys):
    _, _, err = run(capsys, "witness", "pauli", "transpose")
    assert "CoPositiveOrderIso" in err


def test_choi_transpose(capsys):
    code, out, _ = run(capsys, "choi", "transpose", "--n", "2")
    body = json.loads(out)
    assert code == 0
    assert np.array_equal(matrix_from_json(body["matrix"]), SWAP)
    assert min(body["eigenvalues"]) == pytest.approx(-1)
    assert body["psd"] is False


def test_choi_genl_pauli_transposed(capsys):
    _, out, _ = run(capsys, "choi", "identity", "--form", "genl", "--basis", "pauli", "--transposed")
    body = json.loads(out)
    assert body["psd"] is True and body["rank"] == 1
    assert max(body["eigenvalues"]) == pytest.approx(4)


def test_choi_kraus_file(capsys, tmp_path):
    f = tmp_path / "m.json"
    op = {"n": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}
    f.write_text(json.dumps({"n": 2, "p": 2, "kind": "kraus", "ops": [op]}))
    body = json.loads(run(capsys, "choi", str(f))[1])
    assert body["psd"] is True and body["rank"] == 1
    for form in ("jam", "conj"):
        code, out, _ = run(capsys, "choi", str(f), "--form", form, "--basis", "weyl:2")
        assert code == 0 and json.loads(out)["form"] == form


def test_witness_examples(capsys):
    code, out, _ = run(capsys, "witness", "standard:2", "transpose", "--samples", "1000", "--seed", "42")
    body = json.loads(out)
    assert code == 0
    assert body["detected_pairing"] == pytest.approx(-1, abs=1e-9)
    assert body["min_product_pairing"] >= -1e-12
    assert body["prng"] == "numpy.PCG64" and body["seed"] == 42

    body = json.loads(run(capsys, "witness", "standard:2", "identity")[1])
    assert body["detected_state"] is None

    body = json.loads(run(capsys, "witness", "pauli", "transpose", "--require", "case3")[1])
    assert body["detected_state"] is None
    assert body["basis_kind_used"] == "CoPositiveOrderIso"
    assert np.linalg.eigvalsh(matrix_from_json(body["witness"]))[0] >= -1e-12


def test_output_is_byte_identical(capsys):
    argv = ("witness", "standard:3", "transpose", "--samples", "200", "--seed", "5")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    assert run(capsys, "classify", "weyl:4", "--json")[1] == run(capsys, "classify", "weyl:4", "--json")[1]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DUALCERT_SEED", "99")
    body = json.loads(run(capsys, "witness", "standard:2", "transpose", "--samples", "10")[1])
    assert body["seed"] == 99
    monkeypatch.setenv("DUALCERT_SEED", "abc")
    assert run(capsys, "witness", "standard:2", "transpose")[0] == 2
    monkeypatch.delenv("DUALCERT_SEED")
    body = json.loads(run(capsys, "witness", "standard:2", "transpose", "--samples", "10")[1])
    assert body["seed"] == cli.DEFAULT_SEED


@pytest.mark.parametrize("suite", ["pauli", "weyl", "rankone", "conjugate", "genlchoi", "duality", "witness", "permutation"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--max-n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1])
    assert "properties passed" in lines[-1]


def test_verify_named_examples(capsys):
    out = run(capsys, "verify", "--suite", "rankone")[1]
    assert "lambda_11 = i example: NotOrderIso" in out
