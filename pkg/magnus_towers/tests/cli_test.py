import logging

import pytest

from ..cli import main
from ..schemas import PresentationDocument
from ..utils import InternalData

FIVE_PRIMES = "31,19,13,337,7"


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    InternalData.reload()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand(capsys):
    """Tests the expansion of a single generator."""
    assert run(capsys, "expand", "x1", "--p", "3", "--d", "1") == (0, "1 + 1*X1 + O(>=12)\n", "")


def test_expand_hat(capsys):
    """Tests the highest term of [x1, [x2^9, x3]] at truncation 13."""
    code, out, _ = run(capsys, "expand", "[x1,[x2^9,x3]]", "--p", "3", "--d", "3", "--trunc", "13", "--hat")
    assert code == 0 and "hat: X3.X2.X2.X2.X2.X2.X2.X2.X2.X2.X1\ndegree: 11\n" in out


def test_expand_identity_is_inconclusive(capsys):
    """Tests that the identity word exits with code 3."""
    code, out, err = run(capsys, "expand", "x1*x1^-1", "--p", "3", "--d", "1", "--hat")
    assert code == 3 and out == "" and err.startswith("inconclusive: ")


def test_expand_parse_error(capsys):
    """Tests that a malformed word exits with code 2."""
    code, _, err = run(capsys, "expand", "[x1,x2", "--p", "3", "--d", "2")
    assert code == 2 and err.startswith("error: expected ']'")


def test_expand_needs_p(capsys):
    """Tests that --p is required by expand."""
    code, _, err = run(capsys, "expand", "x1", "--d", "1")
    assert code == 2 and err == "error: --p is required\n"


def test_bad_configuration_is_a_usage_error(capsys, monkeypatch):
    """Tests that a malformed environment setting exits with code 2 instead of a traceback."""
    monkeypatch.setenv("MAGNUS_TRUNCATION", "abc")
    code, out, err = run(capsys, "expand", "x1", "--p", "3", "--d", "1")
    assert (code, out) == (2, "") and err == "error: MAGNUS_TRUNCATION must be an integer, got 'abc'\n"

    monkeypatch.setenv("MAGNUS_TRUNCATION", "12")
    monkeypatch.setenv("MAGNUS_LOG_LEVEL", "loud")
    code, _, err = run(capsys, "poincare", "--d", "2")
    assert code == 2 and "MAGNUS_LOG_LEVEL must be a logging level name" in err


def test_missing_subcommand():
    """Tests that argparse rejects a missing subcommand with code 2."""
    with pytest.raises(SystemExit) as error:
        main([])
    assert error.value.code == 2


def test_linking_five_primes(capsys):
    """Tests the hat pairs of the five-prime example in both numberings."""
    code, out, _ = run(capsys, "linking", "--p", "3", "--primes", FIVE_PRIMES)
    assert code == 0
    assert "hats: X5.X1, X5.X2, X4.X3, X4.X2, X5.X3\n" in out
    assert "hat pairs: {1,5}, {2,5}, {3,4}, {2,4}, {3,5}\n" in out
    assert "hat pairs, generators numbered i -> d+1-i: {1,5}, {1,4}, {2,3}, {2,4}, {1,3}\n" in out


def test_linking_not_tame(capsys):
    """Tests that a prime which isn't 1 mod p exits with code 2."""
    code, _, err = run(capsys, "linking", "--p", "3", "--primes", "7,11")
    assert code == 2 and "11 is not tame for p=3" in err


def test_linking_write_document_then_mildcheck(capsys, tmp_path):
    """Tests writing the presentation document and certifying it."""
    path = tmp_path / "gs.txt"
    code, _, _ = run(capsys, "linking", "--p", "3", "--primes", FIVE_PRIMES, "--write-document", str(path))
    assert code == 0
    document = PresentationDocument.parse(path.read_text(encoding="utf-8"))
    assert document.primes == [31, 19, 13, 337, 7] and len(document.relations) == 5

    code, out, _ = run(capsys, "mildcheck", str(path), "--series-to", "4")
    assert code == 0 and out.endswith("Poincare series: 1, 5, 20, 75, 275 (mod t^5)\n")


def test_mildcheck_zero_row_is_inconclusive(capsys):
    """Tests that a relation without degree-2 initial form exits with code 3."""
    code, _, err = run(capsys, "mildcheck", "--p", "3", "--primes", "7,13")
    assert code == 3 and err.splitlines()[-1].startswith("inconclusive: relations 2")


def test_mildcheck_not_free(capsys, tmp_path):
    """Tests that overlapping hats exit with code 1 and a witness."""
    path = tmp_path / "overlap.txt"
    path.write_text("p=3\nd=2\nrel=form:X1.X2\nrel=form:X2.X1\n", encoding="utf-8")
    code, out, _ = run(capsys, "mildcheck", str(path))
    assert code == 1 and "verdict: not free: prefix X1 of X1.X2 is a suffix of X2.X1 (overlap)" in out


def test_mildcheck_missing_document(capsys, tmp_path):
    """Tests that an unreadable document exits with code 2."""
    code, _, err = run(capsys, "mildcheck", str(tmp_path / "absent.txt"))
    assert code == 2 and err.startswith("error: can't read the presentation document")


def test_mildcheck_needs_a_presentation(capsys):
    """Tests that mildcheck without a document or primes exits with code 2."""
    code, _, _ = run(capsys, "mildcheck", "--p", "3")
    assert code == 2


def test_cut_five_primes(capsys):
    """Tests the cut of the five-prime example."""
    code, out, _ = run(capsys, "cut", "--p", "3", "--primes", FIVE_PRIMES, "--series-to", "12")
    assert code == 0
    assert "cut pair: i0 = 4, j0 = 5 (extended)\n" in out
    assert "1, 5, 20, 74, 264, 924, 3200, 11016, 37792, 129392, 442496, 1512224, 5165952 (mod t^13)\n" in out


def test_cut_strict(capsys):
    """Tests that the guaranteed grid alone has no admissible pair for the five-prime example."""
    code, out, err = run(capsys, "cut", "--p", "3", "--primes", FIVE_PRIMES, "--strict")
    assert code == 1 and out == ""
    assert err == "false: no admissible (i0, j0): r = 5 >= (d - c)(c - 1) = 4\n"


def test_cut_manual_pair_taken(capsys):
    """Tests that a manual pair already among the hats exits with code 1."""
    code, out, _ = run(capsys, "cut", "--p", "3", "--primes", FIVE_PRIMES, "--i0", "2", "--j0", "5")
    assert code == 1 and "combined verdict: not free: X5.X2 is a submonomial of X5.X2.X1" in out


def test_poincare(capsys):
    """Tests the free algebra on two letters."""
    code, out, _ = run(capsys, "poincare", "--d", "2", "--upto", "5")
    assert (code, out) == (0, "1, 2, 4, 8, 16, 32 (mod t^6)\nall coefficients nonnegative\n")


def test_poincare_bad_degrees(capsys):
    """Tests that a malformed degree list exits with code 2."""
    code, _, err = run(capsys, "poincare", "--d", "2", "--rel-degrees", "2,x")
    assert code == 2 and "'x' is not an integer" in err


def test_primesearch(capsys):
    """Tests the prime search results and the malformed constraint error."""
    assert run(capsys, "primesearch", "--p", "3", "--bound", "10") == (0, "7\n", "")
    constraint = "residue:7:no:old-mod-new"
    assert run(capsys, "primesearch", "--p", "3", "--constraints", constraint) == (0, "13\n", "")
    code, out, _ = run(
        capsys, "primesearch", "--p", "3", "--constraints", "residue:7:yes:new-mod-old,residue:7:no:new-mod-old",
        "--bound", "100"
    )
    assert (code, out) == (0, "none\n")
    code, _, err = run(capsys, "primesearch", "--p", "3", "--constraints", "residue:7:maybe:old-mod-new")
    assert code == 2 and err.startswith("error: malformed constraint")


def test_verbose_logs_to_stderr(capsys):
    """Tests that --verbose sends debug messages to standard error."""
    code, out, err = run(capsys, "poincare", "--d", "2", "--upto", "2", "--verbose")
    assert code == 0 and out.startswith("1, 2, 4") and "[DEBUG]" in err
