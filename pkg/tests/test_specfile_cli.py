import json
import subprocess
import sys

import pytest

from sl2hodge import cli
from sl2hodge.cohomology import build_complex, cohomology_dims
from sl2hodge.results import VerificationResult
from sl2hodge.scalars import I, INV_SQRT2, fe
from sl2hodge.specfile import SpecFileError, parse_spec

AN_CHAR = """\
# the character C_{1/sqrt2} of an
algebra an
module C dim 1
action H = matrix[[1/2*r2]]
"""

CUSTOM = """\
algebra g
basis X Y
bracket X Y = 1/2*r2*Y
module V dim 2
action X = matrix[[1/2*r2, 0], [0, 0]]
"""

SL2_PAIR = """\
algebra sl2
module C dim 1
subalgebra b = H, E
"""


def test_builtin_algebra_with_a_character():
    spec = parse_spec(AN_CHAR)
    assert spec.algebra.name == "an"
    (v,) = spec.modules
    assert cohomology_dims(build_complex(spec.algebra, v)) == [0, 1, 1]


def test_custom_algebra_from_brackets():
    spec = parse_spec(CUSTOM)
    g = spec.algebra
    assert g.basis == ("X", "Y")
    assert g.bracket(0, 1) == {1: INV_SQRT2}
    # C_{1/sqrt2} plus a trivial line
    assert cohomology_dims(build_complex(g, spec.modules[0])) == [1, 2, 1]


def test_subalgebra_line():
    spec = parse_spec(SL2_PAIR)
    assert spec.subalgebra.dim == 2
    assert spec.subalgebra.parent.name == "sl2"


def test_compound_coefficients():
    spec = parse_spec("algebra g\nbasis X Y\nbracket X Y = (1 + i) Y - 1/3*X\n")
    assert spec.algebra.bracket(0, 1) == {0: fe("-1/3"), 1: 1 + I}


def test_reversed_bracket_is_antisymmetrized():
    spec = parse_spec("algebra g\nbasis X Y\nbracket Y X = Y\n")
    assert spec.algebra.bracket(0, 1) == {1: fe(-1)}


@pytest.mark.parametrize("text, line, col, fragment", [
    ("module V dim 1\n", 1, 1, "before 'algebra'"),
    ("algebra an\nfrobnicate\n", 2, 1, "unknown keyword"),
    ("algebra an\nmodule V dim 1\naction H = matrix[[1, 2]]\n", 3, 12, "1x2"),
    ("algebra an\nmodule V dim 1\naction Q = matrix[[1]]\n", 3, 8, "unknown generator"),
    ("algebra g\nbasis X Y\nbracket X Y = 2*Z\n", 3, 17, "unknown generator"),
    ("algebra an\nmodule V dim 1\naction H = matrix[[1/0]]\n", 3, 0, ""),
    ("algebra an\nmodule V dim 1\naction H = [[1]]\n", 3, 12, "matrix"),
    ("algebra an\nmodule V dim 2\naction H = matrix[[0, 0], [0, 0]]\naction E = matrix[[0, 1], [0, 0]]\n",
     2, 1, "not a representation"),
    ("algebra sl2\nsubalgebra b = H, 2*H\n", 2, 0, "dependent"),
    ("algebra sl2\nsubalgebra b = E, F\n", 2, 0, ""),
    ("algebra an\nalgebra sl2\n", 2, 1, "twice"),
    ("# empty\n", 1, 1, "missing 'algebra'"),
])
def test_errors_carry_line_and_column(text, line, col, fragment):
    with pytest.raises(SpecFileError) as info:
        parse_spec(text, source="f.spec")
    err = info.value
    assert err.line == line
    if col:
        assert err.col == col
    assert fragment in err.message
    assert str(err).startswith(f"f.spec:{line}:")


def test_jacobi_failure_is_reported():
    text = "algebra g\nbasis X Y Z\nbracket X Y = Z\nbracket Y Z = X\nbracket X Z = X\n"
    with pytest.raises(SpecFileError):
        parse_spec(text)


# --- command line ----------------------------------------------------------------------

def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def spec_files(tmp_path):
    paths = {}
    for name, text in (("char", AN_CHAR), ("pair", SL2_PAIR)):
        p = tmp_path / f"{name}.spec"
        p.write_text(text)
        paths[name] = str(p)
    bad = tmp_path / "bad.spec"
    bad.write_text("algebra an\nmodule V dim 2\naction E = matrix[[0, 1], [0, 0]]\n"
                   "action H = matrix[[0, 0], [0, 0]]\n")
    paths["bad"] = str(bad)
    return paths


def test_cohomology_command(capsys, spec_files):
    code, out, _ = run(capsys, "cohomology", spec_files["char"], "--matrices", "--no-timing")
    assert code == 0
    assert "= [0, 1, 1]" in out
    assert "d_0:" in out


def test_spectral_command(capsys, spec_files):
    code, out, _ = run(capsys, "spectral", spec_files["pair"], "--no-timing")
    assert code == 0
    assert "E_1:" in out and "E_4:" in out
    assert "E_inf totals by degree: [1, 0, 0, 1]" in out


def test_spectral_needs_a_subalgebra(capsys, spec_files):
    code, _, err = run(capsys, "spectral", spec_files["char"])
    assert code == 2
    assert "subalgebra" in err


def test_bad_module_exits_with_usage_status(capsys, spec_files):
    code, _, err = run(capsys, "cohomology", spec_files["bad"])
    assert code == 2
    assert f"{spec_files['bad']}:2:1: not a representation" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "cohomology", str(tmp_path / "nope.spec"))
    assert code == 2
    assert "nope.spec" in err


def test_argument_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "table", "--genus", "2")[0] == 2
    assert run(capsys, "table", "--genus", "1", "--coeff", "c:0")[0] == 2
    assert run(capsys, "table", "--genus", "2", "--coeff", "bogus")[0] == 2
    assert run(capsys, "model", "--rep", "X", "--top-weight", "20")[0] == 2


def test_failing_check_exits_with_one(capsys, monkeypatch):
    bad = VerificationResult("fake.failure", False, 3, 0.0)
    monkeypatch.setitem(cli._SUITE_RUNNERS, "tables", lambda: [bad])
    code, out, _ = run(capsys, "verify", "--suite", "tables", "--no-timing")
    assert code == 1
    assert "FAIL  fake.failure  residual_terms=3" in out


def test_table_of_the_trivial_character(capsys):
    code, out, _ = run(capsys, "table", "--genus", "2", "--coeff", "c:0", "--no-timing")
    assert code == 0
    assert "= [1, 5, 4]" in out


def test_table_with_spectrum_file(capsys, tmp_path):
    p = tmp_path / "spec.txt"
    p.write_text("2/9 4\n")
    code, out, _ = run(capsys, "table", "--genus", "3", "--coeff", "c:1/3*r2",
                       "--spectrum", str(p), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["table"]["dims"] == [0, 4, 4]
    assert doc["result"]["table"]["synthetic_spectrum"] is False


def test_synthetic_spectrum_is_labelled(capsys):
    _, out, _ = run(capsys, "table", "--genus", "2", "--coeff", "c:1/3*r2")
    assert "SYNTHETIC" in out


def test_json_report_shape(capsys):
    code, out, _ = run(capsys, "model", "--rep", "D1+", "--top-weight", "12", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert doc["tool"] == "sl2hodge"
    assert doc["command"] == ["model", "--rep", "D1+", "--top-weight", "12", "--json"]
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert set(doc["checks"][0]) >= {"name", "pass", "residual_terms", "millis"}


def test_no_timing_output_is_reproducible(capsys):
    args = ("verify", "--suite", "tables", "--json", "--no-timing")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
    assert all(c["millis"] == 0 for c in json.loads(first)["checks"])


def test_rewrite_suite_with_trace(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "d1-rewrite", "--trace", "--json", "--no-timing")
    doc = json.loads(out)
    assert code == 0
    replay = {c["name"]: c for c in doc["checks"] if c["name"].startswith("rewrite.trace_replay")}
    assert set(replay) == {"rewrite.trace_replay[plus]", "rewrite.trace_replay[minus]"}
    assert all(c["pass"] and c["details"]["steps"] > 0 for c in replay.values())
    assert doc["result"]["transcripts"]["plus"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sl2hodge", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("sl2hodge ")
