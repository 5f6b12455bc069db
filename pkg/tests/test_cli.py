import io
import shutil
import subprocess

import pytest

from comtrace import cli
from comtrace.alphabet import parse_alphabet
from comtrace.projection import format_projection_set, projection_representation
from comtrace.reconstruct import foata, minlex

from conftest import IND_EXAMPLE, NETS, WORKED_ALPHABET

A = str(WORKED_ALPHABET)

CYCLIC = """\
proj b b : b
proj c c : c
proj d d : d
proj a c : c
proj a d : d
proj b d : d b
proj c d : c d
proj b c : b c
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equiv_exit_codes(capsys):
    assert run(capsys, "equiv", "-a", A, "(d)(ab)", "(ad)(b)")[0] == 0
    assert run(capsys, "equiv", "-a", A, "(d)(ab)", "(ab)(d)")[0] == 1
    assert run(capsys, "equiv", "-a", A, "--oracle", "(d)(ab)", "(d)(b)(a)")[0] == 0
    code, out, _ = run(capsys, "equiv", "-a", A, "--output", "structured", "--seq", "(d)(ab)", "--seq", "(ab)(d)")
    assert code == 1 and out == "equivalent: false\n"


def test_canon_matches_library(capsys, theta, seq):
    code, out, _ = run(capsys, "canon", "--form", "foata", "-a", A, "(d)(a)(b)")
    assert code == 0 and out == "(a d)(b)\n"
    assert out.strip() == str(foata(theta, seq("(d)(a)(b)")))
    code, out, _ = run(capsys, "canon", "--form", "lex", "-a", A, "--output", "structured", "(ad)(b)", "")
    assert out == "lex: (d)(a)(b)\nlex: λ\n"
    assert out.splitlines()[0] == f"lex: {minlex(theta, seq('(ad)(b)'))}"


def test_canon_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("(d)(ab)\n(abc)\n"))
    code, out, _ = run(capsys, "canon", "--form", "lex", "-a", A)
    assert out == "(d)(a)(b)\n(b)(a c)\n"


def test_project_matches_library(capsys, theta, seq):
    code, out, _ = run(capsys, "project", "-a", A, "(d)(ab)")
    assert code == 0
    assert out == format_projection_set(projection_representation(theta, seq("(d)(ab)")))
    assert "proj b d : d b\n" in out


def test_reconstruct(capsys, tmp_path, theta, seq):
    proj = tmp_path / "worked.proj"
    proj.write_text(format_projection_set(projection_representation(theta, seq("(d)(ab)"))))
    assert run(capsys, "reconstruct", "-a", A, "--proj", str(proj))[1] == "(a d)(b)\n"
    code, out, err = run(capsys, "reconstruct", "-a", A, "--proj", str(proj), "--strategy", "lex", "--trace-stages")
    assert out == "(d)(a)(b)\n"
    assert "stage 0: cpa={a d} cnd={ad} imp={b c} M={a d} step=(d)" in err
    bad = tmp_path / "cyclic.proj"
    bad.write_text(CYCLIC)
    code, out, err = run(capsys, "reconstruct", "-a", A, "--proj", str(bad), "--output", "structured")
    assert code == 3 and out == "realizable: false\n" and "stage 0" in err


def test_steps_and_classes(capsys):
    out = run(capsys, "indiv-steps", "-a", A)[1].split()
    assert out == ["(a)", "(b)", "(c)", "(d)", "(a", "c)", "(a", "c", "d)"]
    assert len(run(capsys, "indiv-steps", "-a", A, "--all")[1].splitlines()) == 11
    assert run(capsys, "classes", "-a", A, "abc")[1] == "{b}\n{a c}\n"
    assert run(capsys, "classes", "-a", A, "(a b c)")[1] == "{b}\n{a c}\n"
    assert run(capsys, "split", "-a", A, "(d)(ab)")[1] == "(d)(a)(b)\n"


def test_enumerate(capsys):
    out = run(capsys, "enumerate", "-a", A, "(d)(ab)")[1].splitlines()
    assert out == ["(d)(a)(b)", "(d)(b)(a)", "(d)(a b)", "(a d)(b)"]
    assert run(capsys, "enumerate", "-a", A, "--cap", "2", "(d)(ab)")[0] == 2


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "-a", A, "--output", "structured")
    assert code == 0
    assert "wdp: ad cb dc\n" in out and "radical: false\n" in out


def test_trace(capsys):
    F = str(IND_EXAMPLE)
    assert run(capsys, "trace", "equiv", "-a", F, "abbaacd", "abbcaad")[0] == 0
    assert run(capsys, "trace", "equiv", "-a", F, "ab", "ba")[0] == 1
    assert run(capsys, "trace", "canon", "--form", "lex", "-a", F, "abbcaad")[1] == "abbaacd\n"
    assert run(capsys, "trace", "canon", "-a", F, "abbcaad")[1] == "abbacad\n"
    assert "proj a b : abbaa\n" in run(capsys, "trace", "project", "-a", F, "abbaacd")[1]
    assert run(capsys, "trace", "canon", "--mode", "step", "-a", F, "(a)(c)(bd)")[1] == "(a c)(b d)\n"
    assert run(capsys, "trace", "equiv", "--mode", "step", "-a", F, "(ac)", "(c)(a)")[0] == 0


def test_eni(capsys, theta):
    four, chain = str(NETS / "four_actions.net"), str(NETS / "chain_two_sinks.net")
    code, out, _ = run(capsys, "eni", "derive", "--net", four)
    assert code == 0 and parse_alphabet(out) == theta
    code, out, _ = run(capsys, "eni", "reach", "--net", chain, "--transitions", "b", "c", "d", "f",
                       "--final", "f", "--max-steps", "4")
    assert out.splitlines() == ["(d)(c)(b)(f)", "(d)(b c)(f)", "(c d)(b)(f)", "(b c d)(f)"]
    assert run(capsys, "eni", "run", "--net", four, "(ad)(b)")[1] == "p3 p4 p6 p8\n"
    assert run(capsys, "eni", "run", "--net", four, "(a)(d)")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["canon", "-a", "/nonexistent.alph", "(a)"],
        ["canon", "-a", A, "(b d)"],
        ["canon", "-a", A, "(a"],
        ["equiv", "-a", A, "(a)"],
        ["canon", "--form", "weird", "-a", A, "(a)"],
    ],
)
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_installed_entry_point():
    exe = shutil.which("ctk")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "canon", "--form", "foata", "-a", A, "(d)(a)(b)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "(a d)(b)\n"
