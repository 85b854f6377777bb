import json

import pytest

from modtorelli.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(text):
    return json.loads(text)


@pytest.fixture
def diag46(tmp_path):
    path = tmp_path / "diag46.json"
    path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": ["4", "0", "0", "6"]}))
    return str(path)


def test_snf(capsys, diag46):
    code, out, _ = run(capsys, "snf", "--in", diag46)
    assert code == 0
    assert as_json(out)["factors"] == ["2", "12"]


def test_snf_identity(capsys, monkeypatch):
    code, out, _ = run(capsys, "snf", "--in", "-", stdin='{"rows":2,"cols":2,"entries":[1,0,0,1]}', monkeypatch=monkeypatch)
    assert code == 0 and as_json(out)["factors"] == ["1", "1"]


def test_snf_malformed(capsys, monkeypatch):
    code, _, err = run(capsys, "snf", "--in", "-", stdin="{oops", monkeypatch=monkeypatch)
    assert code == 2 and "error" in err


def test_snf_deterministic(capsys, diag46):
    _, a, _ = run(capsys, "snf", "--in", diag46)
    _, b, _ = run(capsys, "snf", "--in", diag46)
    assert a == b


def test_homology_lens(capsys):
    code, out, _ = run(capsys, "homology", "--lens", "5", "2")
    data = as_json(out)
    assert code == 0
    assert data["order"] == "5"
    assert data["admissible_moduli"] == [2, 3, 4, 6]


def test_homology_trefoil(capsys):
    _, out, _ = run(capsys, "homology", "--preset", "trefoil")
    assert as_json(out)["order"] == "1"


def test_homology_infinite(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [0, 1, -1, 0]}))
    code, out, _ = run(capsys, "homology", "--in", str(path))
    assert code == 0 and as_json(out)["order"] == "infinite"


def test_homology_word_input(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"genus": 2, "word": [{"curve": "a2", "power": 1}, {"curve": "a1", "power": 1}, {"curve": "b1 - b2", "power": 1}]}))
    _, out, _ = run(capsys, "homology", "--in", str(path))
    assert as_json(out)["order"] == "1"


def test_homology_non_symplectic_is_domain_error(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [2, 0, 0, 1]}))
    code, _, _ = run(capsys, "homology", "--in", str(path))
    assert code == 1


def test_trivialize(capsys):
    code, out, _ = run(capsys, "trivialize", "--preset", "identity", "--genus", "2", "--modulus", "5")
    data = as_json(out)
    assert code == 0 and data["verified"] is True
    assert data["X"]["entries"] == [str(int(i == j)) for i in range(4) for j in range(4)]
    code, out, _ = run(capsys, "trivialize", "--random", "--modulus", "7", "--seed", "4")
    assert code == 0 and as_json(out)["verified"] is True


def test_trivialize_inadmissible(capsys):
    code, _, err = run(capsys, "trivialize", "--lens", "7", "1", "--modulus", "5")
    assert code == 1 and "CriterionFails" in err


def test_invariant(capsys):
    code, out, _ = run(capsys, "invariant", "--lens", "9", "1", "--modulus", "5")
    assert code == 0 and as_json(out)["value"] == 2
    _, out, _ = run(capsys, "invariant", "--preset", "identity", "--genus", "2", "--modulus", "5")
    assert as_json(out)["value"] == 0
    code, _, _ = run(capsys, "invariant", "--preset", "trefoil", "--modulus", "5")
    assert code == 1


def test_bcj(capsys, monkeypatch):
    code, out, _ = run(capsys, "bcj", "poincare")
    data = as_json(out)
    assert code == 0 and data["mu"] == 1 and len(data["sigma"]["monomials"]) == 10
    code, out, _ = run(capsys, "bcj", "eval", "--in", "-", stdin='{"genus":2,"pairs":[["a1","b1"]]}', monkeypatch=monkeypatch)
    assert as_json(out)["sigma"]["monomials"] == [["A1", "B1"]]
    code, _, _ = run(capsys, "bcj", "eval", "--in", "-", stdin='{"genus":2,"kind":"bp","pairs":[],"E":"a2"}', monkeypatch=monkeypatch)
    assert code == 1


def test_bcj_pretty(capsys):
    _, out, _ = run(capsys, "bcj", "poincare", "--format", "pretty")
    assert out.startswith("sigma = 1̄ + ")
    assert "mu = 1" in out


def test_forms_classify(capsys):
    code, out, _ = run(capsys, "forms", "classify", "--module", "Sym2Wedge2", "--genus", "3", "--prime", "3")
    assert code == 0 and as_json(out)["dim"] == 3


def test_forms_classify_unsupported(capsys):
    code, _, _ = run(capsys, "forms", "classify", "--module", "B3", "--genus", "4", "--prime", "3")
    assert code == 1


def test_forms_eval(capsys, monkeypatch):
    pair = {
        "xi": {"genus": 3, "p": 11, "terms": [{"mono": ["a1", "a2", "b2"], "coeff": 1}]},
        "eta": {"genus": 3, "p": 11, "terms": [{"mono": ["b1", "a2", "b2"], "coeff": 1}]},
    }
    code, out, _ = run(capsys, "forms", "eval", "--form", "Q", "--in", "-", stdin=json.dumps(pair), monkeypatch=monkeypatch)
    assert code == 0 and as_json(out)["signed"] == -4
    sym = {"s": {"genus": 3, "p": 5, "terms": [{"pair": [["a1", "b1"], ["a2", "b2"]], "coeff": 1}]}}
    _, out, _ = run(capsys, "forms", "eval", "--form", "d1", "--in", "-", stdin=json.dumps(sym), monkeypatch=monkeypatch)
    assert as_json(out)["value"] == 1


def test_magnus(capsys):
    code, out, _ = run(capsys, "magnus", "degree", "--word", "x1^3", "--prime", "3")
    assert code == 0 and as_json(out)["z_degree"] == 3
    _, out, _ = run(capsys, "magnus", "tau", "--preset", "k12", "--prime", "3")
    tau = as_json(out)["tau"]
    assert tau["x1"] == [{"coeff": 2, "word": ["X1", "X2"]}, {"coeff": 1, "word": ["X2", "X1"]}]
    _, out, _ = run(capsys, "magnus", "ia", "--preset", "identity", "--rank", "3", "--prime", "3")
    assert as_json(out)["ia_degree"] == {"at_least": 7}


def test_magnus_rank_mismatch(capsys):
    code, _, _ = run(capsys, "magnus", "degree", "--word", "x3", "--rank", "2", "--prime", "3")
    assert code == 2
    code, _, _ = run(capsys, "magnus", "ia", "--images", "x1", "x5", "--prime", "3")
    assert code == 2


def test_missing_flags(capsys):
    code, _, _ = run(capsys, "invariant", "--lens", "9", "1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_out_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "homology", "--lens", "7", "3", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["order"] == "7"
