import json
import subprocess
import sys

import pytest

from helpers import rank1_symbolic, tkk, zero_lam
from tkkrep.algebra import find_unit, make_jpe
from tkkrep.cli import main, run
from tkkrep.errors import ParityViolation, SchemaError
from tkkrep.fock import gram, sb_roundtrip
from tkkrep.io import algebra_from_document, algebra_to_document, dump_algebra, load_algebra
from tkkrep.realisation import BesselFamily

IDEMPOTENT = {"name": "K1", "even_basis": ["e"], "odd_basis": [],
              "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coeff": "1"}]}]}


def doc_of(A):
    return json.loads(dump_algebra(A))


# -------------------------------------------------------------------- io
def test_roundtrip_export_import():
    A = make_jpe(2)
    B = load_algebra(dump_algebra(A))
    assert dump_algebra(B) == dump_algebra(A)
    assert B.dim == A.dim


def test_load_from_path(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps(IDEMPOTENT))
    A = load_algebra(str(path))
    assert A.dim == (1, 0)
    assert find_unit(A) is not None


def test_even_times_odd_into_even_is_rejected():
    doc = {"name": "bad", "even_basis": ["a"], "odd_basis": ["x"],
           "products": [{"i": 0, "j": 1, "terms": [{"k": 0, "coeff": "1"}]}]}
    with pytest.raises(ParityViolation):
        algebra_from_document(doc)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("products"),
    lambda d: d.update(even_basis="e"),
    lambda d: d.update(even_basis=[], odd_basis=[]),
    lambda d: d.update(even_basis=["e", "e"]),
    lambda d: d["products"][0].update(i=5),
    lambda d: d["products"][0]["terms"][0].update(coeff="1/0"),
    lambda d: d["products"][0]["terms"][0].update(coeff="x +"),
    lambda d: d["products"].append(dict(d["products"][0])),
    lambda d: d.update(flavour="associative"),
])
def test_malformed_documents(mutate):
    doc = json.loads(json.dumps(IDEMPOTENT))
    mutate(doc)
    with pytest.raises(SchemaError):
        algebra_from_document(doc)


def test_invalid_json_text():
    with pytest.raises(SchemaError):
        load_algebra("{not json")
    with pytest.raises(SchemaError):
        load_algebra("/nonexistent/algebra.json")


def test_export_lists_even_labels_first():
    doc = algebra_to_document(make_jpe(2))
    assert len(doc["even_basis"]) == 4 and len(doc["odd_basis"]) == 4


# ------------------------------------------------------------------- cli
def test_characters_istr_periplectic_is_trivial():
    code, doc = run(["characters", "--algebra", "jpe", "--rank", "2", "--variant", "istr"])
    assert code == 0 and doc["dimension"] == 0


def test_radical_of_queer_degree_one_is_everything():
    code, doc = run(["radical", "--algebra", "jq", "--rank", "2", "--degree", "1"])
    assert code == 0 and doc["radical_dim"] == doc["dim"] == 8


def test_sb_roundtrip_rank1():
    code, doc = run(["sb", "roundtrip", "--algebra", "rank1", "--lambda", "l1",
                     "--N", "6", "--degree", "2"])
    assert code == 0 and doc["max_abs_defect"] == "0"


def test_commands_are_thin_wrappers():
    code, doc = run(["gram", "--algebra", "rank1", "--lambda", "l1", "--degree", "2"])
    g, lam = rank1_symbolic()
    expected = gram(g.jordan, lam, 2).as_dict()
    assert code == 0 and {k: doc[k] for k in expected} == expected
    code, doc = run(["sb", "roundtrip", "--algebra", "rank1", "--lambda", "l1",
                     "--N", "6", "--degree", "2"])
    assert {k: doc[k] for k in ("N", "degree", "checked", "max_abs_defect")} == \
        {k: v for k, v in sb_roundtrip(lam, 6, 2).items() if k != "failing"}


def test_output_is_deterministic(tmp_path):
    argv = ["gram", "--algebra", "jpe", "--rank", "2", "--degree", "2", "--report"]
    outs = []
    for n in range(2):
        path = tmp_path / f"out{n}.json"
        assert main(argv + ["--output", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]

    def no_floats(x):
        if isinstance(x, dict):
            return all(no_floats(v) for v in x.values())
        if isinstance(x, list):
            return all(no_floats(v) for v in x)
        return not isinstance(x, float)
    assert no_floats(json.loads(outs[0]))


def test_scalars_are_strings():
    _, doc = run(["gram", "--algebra", "rank1", "--lambda", "3/2", "--degree", "1"])
    assert doc["matrix"] == [["-3"]]


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["gram", "--algebra", "jq"],
    ["characters", "--algebra", "jpe", "--rank", "2", "--variant", "other"],
    ["sb", "roundtrip", "--lambda", "l1", "--N", "3", "--degree", "2"],
    ["gram", "--lambda", "1,2"],
    ["tkk", "verify-phi", "--algebra", "rank1"],
    ["algebra", "check", "--algebra", "/nonexistent.json"],
])
def test_usage_errors_exit_two(argv):
    code, doc = run(argv)
    assert code == 2 and "error" in doc


def test_mathematical_failures_exit_one():
    bad = {"name": "X", "even_basis": ["a", "b"], "odd_basis": [],
           "products": [{"i": 0, "j": 0, "terms": [{"k": 1, "coeff": "1"}]},
                        {"i": 1, "j": 1, "terms": [{"k": 0, "coeff": "1"}]}]}
    code, doc = run(["algebra", "check", "--algebra", json.dumps(bad)])
    assert code == 1 and doc["counterexample"]["kind"] == "jordan_identity"
    nil = {"name": "N", "even_basis": ["a"], "odd_basis": [], "products": []}
    assert run(["tkk", "build", "--algebra", json.dumps(nil)])[0] == 1
    code, doc = run(["kernel", "--algebra", "jpe", "--rank", "2"])
    assert code == 1 and doc["error"] == "SingularGram"


@pytest.mark.parametrize("argv", [
    ["algebra", "check", "--algebra", "jpe", "--rank", "2"],
    ["tkk", "build", "--algebra", "jq", "--rank", "2"],
    ["tkk", "verify-phi", "--algebra", "jpe", "--rank", "2"],
    ["bessel", "commute", "--algebra", "jq", "--rank", "2", "--degree", "2"],
    ["realisation", "verify", "--lambda", "l1", "--flavour", "fock"],
    ["vlambda", "--algebra", "jpe", "--rank", "2", "--degree", "1"],
    ["quotient-dims", "--algebra", "jpe", "--rank", "2"],
    ["kernel", "--lambda", "l1", "--degree", "2"],
    ["intertwine-check", "--lambda", "l1", "--N", "6"],
])
def test_commands_succeed(argv):
    code, doc = run(argv)
    assert code == 0, doc


def test_quotient_dims_command():
    _, doc = run(["quotient-dims", "--algebra", "jq", "--rank", "2"])
    assert doc["dims"] == [1, 0, 0, 0, 0] and doc["v_dim"] == 8


def test_truncation_from_environment(monkeypatch):
    monkeypatch.setenv("TKKREP_TRUNCATION", "5")
    code, doc = run(["sb", "roundtrip", "--lambda", "l1", "--degree", "2"])
    assert code == 0 and doc["N"] == 5
    monkeypatch.setenv("TKKREP_TRUNCATION", "3")
    assert run(["sb", "roundtrip", "--lambda", "l1", "--degree", "2"])[0] == 2
    monkeypatch.setenv("TKKREP_TRUNCATION", "many")
    assert run(["sb", "roundtrip", "--lambda", "l1"])[0] == 2


def test_bless_then_compare(tmp_path):
    golden = tmp_path / "jq2.txt"
    base = ["bessel", "show", "--algebra", "jq", "--rank", "2", "--golden", str(golden)]
    assert run(base)[0] == 2
    code, doc = run(base + ["--bless"])
    assert code == 0 and doc["golden"] == "blessed"
    code, doc = run(base)
    assert code == 0 and doc["golden"] == "match"
    lines = golden.read_text().splitlines()
    lines[0] = lines[0] + " + 1"
    golden.write_text("\n".join(lines) + "\n")
    code, doc = run(base)
    assert code == 1 and doc["golden"] == "mismatch" and len(doc["differences"]) == 1


def test_bessel_show_matches_library():
    _, doc = run(["bessel", "show", "--algebra", "jq", "--rank", "2"])
    fam = BesselFamily(tkk("JQ(2)").jordan, zero_lam("JQ(2)"))
    assert doc["operators"] == {lab: str(fam(lab)) for lab in tkk("JQ(2)").jordan.labels}


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "tkkrep.cli", "characters", "--algebra", "jq",
                          "--rank", "2"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["dimension"] == 0
    out = subprocess.run([sys.executable, "-m", "tkkrep.cli", "gram", "--algebra", "jq"],
                         capture_output=True, text=True)
    assert out.returncode == 2
