import io
import subprocess
import sys
from pathlib import Path

import pytest

from semifix.cli import EXIT_DIVERGENCE, EXIT_LAW_FAILURE, EXIT_OK, EXIT_USAGE, main
from semifix import laws

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
EQN_FILES = sorted(CORPUS.glob("*.eqn"))
CFG_FILES = sorted(CORPUS.glob("*.cfg"))


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def table(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_btree_newton_table_and_trace():
    code, text = run("solve", "--method", "newton", "--trace", "-", str(CORPUS / "btree.eqn"))
    assert code == EXIT_OK
    assert "# quadratic rate check: pass" in text
    rows = table(text)
    assert rows[0].split() == ["unknown", "degree", "monomial", "coefficient"]
    coeffs = [r.split()[3] for r in rows[1:6]]
    assert coeffs == ["1", "1", "2", "5", "14"]
    assert rows[6:] == [
        "step,distance_exponent,rate_ok",
        "0,1,na",
        "1,3,true",
        "2,7,true",
        "3,identical,true",
    ]


def test_identity_solves_to_zero_in_one_iteration():
    code, text = run("solve", str(CORPUS / "identity.eqn"))
    assert code == EXIT_OK
    assert "# kleene: 1 iterations" in text
    assert table(text) == ["unknown  degree  monomial  coefficient"]


def test_divergence_exit_code_and_partial_iterate(capsys):
    code = main(["solve", str(CORPUS / "bad" / "diverge.eqn")])
    captured = capsys.readouterr()
    assert code == EXIT_DIVERGENCE
    assert "# diverged after 36 iterations; partial iterate follows" in captured.out
    assert table(captured.out)[1].split() == ["X", "0", "1", "36"]
    assert "semifix: divergence:" in captured.err


@pytest.mark.parametrize("path", EQN_FILES + CFG_FILES, ids=lambda p: p.name)
def test_kleene_and_newton_tables_agree(path):
    cmd = "grammar" if path.suffix == ".cfg" else "solve"
    k_code, k = run(cmd, "--method", "kleene", str(path))
    n_code, n = run(cmd, "--method", "newton", str(path))
    assert k_code == n_code == EXIT_OK
    assert table(k) == table(n)


@pytest.mark.parametrize("path", EQN_FILES + CFG_FILES, ids=lambda p: p.name)
def test_output_is_deterministic(path):
    cmd = "grammar" if path.suffix == ".cfg" else "solve"
    assert run(cmd, "--method", "newton", "--trace", "-", str(path)) == run(
        cmd, "--method", "newton", "--trace", "-", str(path)
    )


def test_trace_file(tmp_path):
    dest = tmp_path / "trace.csv"
    code, text = run("solve", "--trace", str(dest), str(CORPUS / "btree.eqn"))
    assert code == EXIT_OK
    lines = dest.read_text().splitlines()
    assert lines[0] == "step,distance_exponent,rate_ok"
    assert lines[-1] == "5,identical,na"
    assert "step," not in text


def test_overrides_and_grammar_start(tmp_path):
    code, text = run("grammar", "--semiring", "bool", "--degree", "6", str(CORPUS / "anbn.cfg"))
    assert code == EXIT_OK
    assert "# semiring bool, truncate 6" in text and "# start S" in text
    degrees = [r.split()[1] for r in table(text)[1:]]
    assert degrees == ["0", "2", "4", "6"]


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((CORPUS / "geometric.eqn").read_text()))
    code, text = run("solve", "-")
    assert code == EXIT_OK
    assert len(table(text)) == 1 + 7


def test_laws_pass_and_summary():
    code, text = run("laws", "--suite", "monus", "--semiring", "tropical", "--cases", "50")
    assert code == EXIT_OK
    assert "residuation" in text
    assert text.rstrip().endswith("7 laws checked, 0 failed")


def test_laws_failure_exit_code(monkeypatch):
    def failing(seed, cases, semiring, degree):
        r = laws.LawReport("always fails")
        r.record(False, (), 0, 1)
        return [r]

    monkeypatch.setitem(laws.SUITES, "cd", failing)
    code, text = run("laws", "--suite", "cd")
    assert code == EXIT_LAW_FAILURE
    assert text.startswith("FAIL always fails")


@pytest.mark.parametrize(
    "argv",
    [
        ["laws", "--suite", "cd", "--cases", "0"],
        ["laws", "--suite", "nope"],
        ["laws", "--cases", "many"],
        ["solve", "--method", "euler", "x.eqn"],
        ["solve", "--degree", "-2", "x.eqn"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_parse_and_io_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.eqn"
    bad.write_text("param z\nvar B\nB = z + w\n")
    assert main(["solve", str(bad)]) == EXIT_USAGE
    assert "undeclared identifier 'w' (line 3, column 9)" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.eqn")]) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "semifix", "solve", str(CORPUS / "btree.eqn")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "B        9       z^9       14" in proc.stdout
