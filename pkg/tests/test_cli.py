import io
import random

import pytest

from minlogic.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_OK, main
from minlogic.corpus import get_entry
from minlogic.cutelim import insert_detour_cut
from minlogic.formula import parse_formula
from minlogic.generate import random_cut_proof
from minlogic.kernel import identity_proof
from minlogic.proofio import format_proof, format_proof_file, parse_proof_file


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def corpus_file(tmp_path):
    def write(entry_id):
        e = get_entry(entry_id)
        path = tmp_path / f"{entry_id}.proof"
        path.write_text(format_proof_file(e.proof, e.hypotheses, e.description))
        return str(path)
    return write


def test_check_valid_and_invalid(corpus_file):
    path = corpus_file("L1-fwd")
    code, out, _ = run("check", path, "--profile", "LJ")
    assert code == EXIT_OK and out.startswith("Valid in LJ")
    code, out, _ = run("check", path, "--profile", "ML")
    assert code == EXIT_FAIL
    assert "Invalid at 0.0.0 [WeakeningRight]" in out


def test_check_uses_declared_hypotheses(corpus_file):
    code, out, _ = run("check", corpus_file("L1-conv"), "--profile", "ML_EFQ")
    assert code == EXIT_OK, out


def test_check_assume(tmp_path):
    path = tmp_path / "open.proof"
    path.write_text('(rule NegRight [~p] (seq "|- ~p") (rule Hypothesis [] (seq "p |-")))')
    assert run("check", str(path))[0] == EXIT_FAIL
    assert run("check", str(path), "--assume", "p |-")[0] == EXIT_OK


def test_check_latex(corpus_file):
    code, out, _ = run("check", corpus_file("L1-fwd"), "--profile", "LJ", "--latex")
    assert code == EXIT_OK and "\\begin{prooftree}" in out


def test_elim_removes_cuts(tmp_path):
    src = tmp_path / "detour.proof"
    dst = tmp_path / "clean.proof"
    src.write_text(format_proof(insert_detour_cut(identity_proof(parse_formula("p -> q")), expand=True)))
    code, _, err = run("elim", str(src), "--profile", "ML", "--trace", "--output", str(dst))
    assert code == EXIT_OK
    assert err.startswith("call\tparent\tkind")
    pf = parse_proof_file(dst.read_text())
    assert pf.proof.degree == 0
    code, out, _ = run("stats", str(dst))
    assert "degree: 0" in out and "cuts: 0" in out


def test_elim_random_proof_to_stdout(tmp_path):
    t = random_cut_proof(random.Random(7), "MLplus")
    src = tmp_path / "r.proof"
    src.write_text(format_proof(t))
    code, out, _ = run("elim", str(src), "--profile", "MLplus")
    assert code == EXIT_OK
    result = parse_proof_file(out).proof
    assert result.conclusion == t.conclusion and result.degree == 0


def test_elim_rejects_other_profiles(corpus_file):
    code, _, _ = run("elim", corpus_file("L1-fwd"), "--profile", "LJ")
    assert code == EXIT_FAIL


def test_elim_rejects_assumptions(corpus_file):
    code, _, err = run("elim", corpus_file("L1-conv"), "--profile", "ML")
    assert code == EXIT_FAIL and err.startswith("error:")


def test_analyze():
    code, out, _ = run("analyze", "~p, p |- q")
    assert code == EXIT_OK and out.startswith("kind: UnprovableByLemma4")
    code, out, _ = run("analyze", "p & ~q |- p")
    assert code == EXIT_OK and "no verdict" in out and "PositivityWitness: p & ~q at 0" in out


@pytest.mark.parametrize("seq, profile, kind, code", [
    ("|- p | ~p", "ML_EFQ", "UnprovableByExhaustion", EXIT_OK),
    ("|- p | ~p", "MLplus", "ProvableBySearch", EXIT_OK),
    ("~p, p |- q", "LJ", "ProvableBySearch", EXIT_OK),
    ("|- ((p -> q) -> p) -> p", "MLplus_WR", "LimitReached", EXIT_LIMIT),
])
def test_search(seq, profile, kind, code):
    extra = ["--max-depth", "3"] if kind == "LimitReached" else []
    got, out, _ = run("search", seq, "--profile", profile, *extra)
    assert got == code and out.startswith(f"kind: {kind}")


def test_search_show_proof():
    code, out, _ = run("search", "|- p | ~p", "--profile", "MLplus", "--show-proof")
    assert code == EXIT_OK and "(rule Tnd" in out


def test_corpus_table_and_export(tmp_path):
    code, out, _ = run("corpus", "--export", str(tmp_path))
    assert code == EXIT_OK
    assert out.rstrip().endswith("21/21 expectations hold")
    assert len(list(tmp_path.glob("*.proof"))) == 7


@pytest.mark.parametrize("argv", [
    ("analyze", "p |-- q"),
    ("search", "|- forall x. P(x)"),
    ("check", "/nonexistent/file.proof"),
])
def test_errors(argv):
    code, out, err = run(*argv)
    assert code == EXIT_FAIL and err.startswith("error:")


def test_parse_error_in_file(tmp_path):
    path = tmp_path / "bad.proof"
    path.write_text("(rule Axiom [p] (seq \"p |- p\"")
    code, _, err = run("check", str(path))
    assert code == EXIT_FAIL and "error:" in err
