"""End-to-end command-line behavior through subprocesses."""

from __future__ import annotations

import json
import subprocess
import sys

from qmzv.relations import relation_basis, relation_basis_from_doc, relation_basis_to_doc


def _run(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "qmzv", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == expect, (args, proc.returncode, proc.stderr)
    return proc


def test_product_harmonic_example():
    proc = _run("product", "harmonic", "xi", "xi")
    assert proc.stdout.strip() == "-h*xi + 2*xi xi + z2"


def test_product_units():
    assert _run("product", "shuffle", "1", "z3").stdout.strip() == "z3"
    assert _run("product", "star", "z2", "1").stdout.strip() == "z2"


def test_product_parse_error_exits_2():
    proc = _run("product", "harmonic", "z0", "xi", expect=2)
    assert "error" in proc.stderr


def test_eval_unit():
    assert _run("eval", "1").stdout.strip() == "1 ± 0"


def test_eval_divergent_exits_2():
    proc = _run("eval", "z1", expect=2)
    assert "error" in proc.stderr


def test_eval_json_carries_certification():
    proc = _run("eval", "z2", "--q", "1/3", "--json")
    doc = json.loads(proc.stdout)
    assert doc["certified"] is True
    assert doc["tail_bound"] < 1e-20
    # partial sums of sum q^n/[n]^2 at q=1/3: 1/3 + 1/16 + 3/169 + ...
    assert abs(float(doc["value"]) - 0.421970328951157) < 1e-11


def test_eval_rejects_bad_q():
    _run("eval", "z2", "--q", "3/2", expect=2)
    _run("eval", "z2", "--q", "abc", expect=2)
    _run("eval", "z2", "--N", "5", expect=2)


def test_polylog_matches_library():
    from fractions import Fraction

    from qmzv.evaluate import QContext, l_value
    from qmzv.expr import parse_element

    proc = _run("polylog", "z2", "--t", "3/10", "--q", "1/2")
    shown = float(proc.stdout.split("±")[0])
    lib = l_value(parse_element("z2"), Fraction(3, 10), QContext(q=Fraction(1, 2))).value
    assert abs(shown - lib) < 1e-14


def test_hoffman_examples():
    assert _run("hoffman", "2").stdout.strip() == "-z2 z1 + z3"
    assert _run("hoffman", "2,1").stdout.strip() == "-z2 z1 z1 + z2 z2 + z3 z1"
    _run("hoffman", "1,2", expect=2)
    _run("hoffman", "2,x", expect=2)


def test_relations_weight_three_text():
    proc = _run("relations", "--weight", "3")
    assert "dimension 1" in proc.stdout
    assert "zbar(2,1) - zbar(3)" in proc.stdout


def test_relations_json_round_trip(tmp_path):
    out = tmp_path / "basis.json"
    proc = _run("relations", "--weight", "4", "--json", "--out", str(out))
    assert "dimension 3" in proc.stdout
    doc = json.loads(out.read_text())
    basis = relation_basis_from_doc(doc)
    assert basis == relation_basis(4)
    assert json.loads(json.dumps(relation_basis_to_doc(basis))) == doc


def test_relations_no_lift_mode_flag():
    proc = _run("relations", "--weight", "3", "--no-hbar-lifts", "--json")
    doc = json.loads(proc.stdout)
    assert doc["mode"]["hbar_lifts"] is False


def test_dims_table_output():
    proc = _run("dims", "--max-weight", "4")
    assert "1 3 7" in proc.stdout
    assert "0 1 3" in proc.stdout
    assert "weight 2: 1 / 0 / 1" in proc.stdout


def test_verify_passes(tmp_path):
    proc = _run("verify", "--weight", "3", "--q", "1/2")
    assert "all checks passed" in proc.stdout
    out = tmp_path / "b.json"
    _run("relations", "--weight", "3", "--json", "--out", str(out))
    proc = _run("verify", str(out))
    assert "all checks passed" in proc.stdout


def test_verify_flags_corrupted_file(tmp_path):
    out = tmp_path / "b.json"
    _run("relations", "--weight", "3", "--json", "--out", str(out))
    doc = json.loads(out.read_text())
    doc["relations"][0][1] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    proc = _run("verify", str(bad), expect=1)
    assert "FAIL row 0" in proc.stdout
    assert "zbar(2)" in proc.stdout


def test_verify_rejects_malformed_file(tmp_path):
    bad = tmp_path / "nope.json"
    bad.write_text("{broken")
    _run("verify", str(bad), expect=2)


def test_usage_error_exits_2():
    _run("relations", expect=2)
    _run("nonsense", expect=2)
    _run("relations", "--weight", "9", expect=2)
