import pytest

from ..arithmetic_linking import koch_word, linking_matrix
from ..monomial_combinatorics import *
from ..pipeline import *
from ..schemas import *
from ..utils import *

FIVE_PRIMES = "31,19,13,337,7"
OVERLAPPING_DOCUMENT = """\
# relations whose hats overlap
p=3
d=2
rel=form:X1.X2
rel=form:X2.X1
"""


def test_cmd_expand():
    """Tests the printed expansion of a single generator."""
    assert Pipeline().cmd_expand("x1", p=3, d=1).text == "1 + 1*X1 + O(>=12)\n"


def test_cmd_expand_hat():
    """Tests the highest term and degree of [x1, [x2^9, x3]]."""
    output = Pipeline().cmd_expand("[x1,[x2^9,x3]]", p=3, d=3, trunc=13, hat=True)
    assert output.text.endswith("hat: X3.X2.X2.X2.X2.X2.X2.X2.X2.X2.X1\ndegree: 11\n")
    assert output.exit_code is ExitCode.SUCCESS


def test_document_from_primes_round_trip():
    """Tests that the written presentation document reads back to the same presentation."""
    document = Pipeline().document_from_primes(3, [31, 19, 13, 337, 7])
    assert document.d == 5 and document.primes == [31, 19, 13, 337, 7]
    assert all(relation.kind is RelationKind.FORM for relation in document.relations)
    assert PresentationDocument.parse(document.render()) == document


def test_document_from_primes_zero_row():
    """Tests that a zero row makes the degree-2 presentation inconclusive."""
    with pytest.raises(InconclusiveError, match="relations 2"):
        Pipeline().document_from_primes(3, [7, 13])


def test_presentation_document_parse():
    """Tests the document format with labels, comments and both relation kinds."""
    document = PresentationDocument.parse(
        "p=3  # the prime\nd=3\nlabels=a,b,c\n\nrel=word:[x1,x2]\nrel=form:X1.X3 + -1*X3.X1\n"
    )
    assert (document.p, document.d, document.labels) == (3, 3, ["a", "b", "c"])
    assert [str(relation) for relation in document.relations] == ["word:[x1,x2]", "form:X1.X3 + -1*X3.X1"]
    assert document["labels"] == ["a", "b", "c"]


@pytest.mark.parametrize(
    "text, message",
    [
        ("p=3\n", "no d= line"),
        ("p=3\np=5\nd=2\n", "line 2: p= is given twice"),
        ("p=3\nd=2\nq=1\n", "line 3: unknown key 'q'"),
        ("p=3\nd=2\nrel=group:x1\n", "line 3: relations start with word: or form:"),
        ("p=3\nd=2\nrel=word:[x1,x3]\n", "line 3: word '\\[x1,x3\\]' uses x3"),
        ("p=3\nd=2\nrel=form:X1 + 2*X1\n", "line 3: the initial form"),
        ("p=3\nd=2\njust text\n", "line 3: expected key=value"),
        ("p=3\nd=2\nprimes=7\n", "1 primes were given"),
    ],
)
def test_presentation_document_errors(text, message):
    """Tests that malformed documents are rejected with the offending line."""
    with pytest.raises(DocumentError, match=message):
        PresentationDocument.parse(text)


def test_presentation_document_needs_odd_prime():
    """Tests that p must be an odd prime."""
    with pytest.raises(UsageError):
        PresentationDocument.parse("p=4\nd=2\n")


def test_mildcheck_five_primes():
    """Tests the mildness report of the five-prime presentation."""
    output = Pipeline().cmd_mildcheck(p=3, primes=FIVE_PRIMES, series_to=6)
    assert output.exit_code is ExitCode.SUCCESS
    assert output.text == (
        "p = 3, d = 5, relations = 5\n"
        "hats: X5.X1, X5.X2, X4.X3, X4.X2, X5.X3\n"
        "verdict: free\n"
        "cd(G) <= 2\n"
        "dim H^2(G) = 5\n"
        "Poincare series: 1, 5, 20, 75, 275, 1000, 3625 (mod t^7)\n"
    )


def test_mildcheck_overlap():
    """Tests that overlapping hats fail with a witness."""
    output = Pipeline().cmd_mildcheck(OVERLAPPING_DOCUMENT)
    assert output.exit_code is ExitCode.PROPERTY_FALSE
    assert "verdict: not free: prefix X1 of X1.X2 is a suffix of X2.X1 (overlap)\n" in output.text
    assert "Poincare series" not in output.text


def test_mildcheck_without_relations():
    """Tests that the free pro-p group has series (1 - dt)^-1."""
    output = Pipeline().cmd_mildcheck("p=5\nd=3\n", series_to=4)
    assert output.text.endswith("dim H^2(G) = 0\nPoincare series: 1, 3, 9, 27, 81 (mod t^5)\n")
    assert "hats: none\n" in output.text


def test_mildcheck_literal_policy():
    """Tests that the literal policy rejects the five-prime presentation."""
    output = Pipeline().cmd_mildcheck(p=3, primes=FIVE_PRIMES, policy="literal")
    assert output.exit_code is ExitCode.PROPERTY_FALSE
    assert "verdict: not free: X5.X1 and X5.X2 share the prefix X5\n" in output.text


def test_mildcheck_needs_a_presentation():
    """Tests that either a document or the primes must be given."""
    with pytest.raises(UsageError):
        Pipeline().cmd_mildcheck(p=3)


def test_mildcheck_words_and_forms_agree():
    """Tests that word relations and their initial forms give the same report."""
    words = Pipeline().cmd_mildcheck("p=3\nd=3\nrel=word:[x1,x2]\nrel=word:[x1,x3]\n", series_to=8)
    forms = Pipeline().cmd_mildcheck(
        "p=3\nd=3\nrel=form:X1.X2 + -1*X2.X1\nrel=form:X1.X3 + -1*X3.X1\n", series_to=8
    )
    assert words == forms and words.exit_code is ExitCode.SUCCESS


def test_mildcheck_cubic_form_matches_word():
    """Tests that a written-out cubic form keeps its degree-three terms and finds the hat of its word."""
    word = Pipeline().cmd_mildcheck("p=3\nd=3\nrel=word:[x1,[x2,x3]]\n", series_to=6)
    full = Pipeline().cmd_mildcheck("p=3\nd=3\nrel=form:X1.X2.X3 - X1.X3.X2 - X2.X3.X1 + X3.X2.X1\n", series_to=6)
    short = Pipeline().cmd_mildcheck("p=3\nd=3\nrel=form:1*X3.X2.X1 + 2*X1.X3.X2\n", series_to=6)
    assert word == full == short
    assert word.exit_code is ExitCode.SUCCESS and "hats: X3.X2.X1\n" in word.text


def test_mildcheck_koch_words_agree_with_initial_forms():
    """Tests that the relation words of the five primes give the report of their initial forms."""
    matrix = linking_matrix(3, [31, 19, 13, 337, 7])
    text = "p=3\nd=5\n" + "".join(f"rel=word:{koch_word(i, matrix)}\n" for i in range(1, 6))
    words = Pipeline().cmd_mildcheck(text, trunc=3)
    assert words == Pipeline().cmd_mildcheck(p=3, primes=FIVE_PRIMES)


def test_cut_five_primes():
    """Tests the cut of the five-prime presentation: the direct scan finds the family X5 X4^n X1."""
    output = Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES, series_to=6)
    assert output.exit_code is ExitCode.SUCCESS
    lines = output.text.splitlines()
    assert lines[:4] == [
        "p = 3, d = 5, c = 3, r = 5, (d - c)(c - 1) = 4",
        "hats: X5.X1, X5.X2, X4.X3, X4.X2, X5.X3",
        "cut pair: i0 = 4, j0 = 5 (extended)",
        "imposed family: X5.X4^n.X1, n >= 1",
    ]
    assert lines[4:7] == [
        "  x1 = [x1,[x4,x5]]   hat X5.X4.X1",
        "  x2 = [x1,[x4,[x4,x5]]]   hat X5.X4.X4.X1",
        "  x3 = [x1,[x4,[x4,[x4,x5]]]]   hat X5.X4.X4.X4.X1",
    ]
    assert lines[7:11] == [
        "combined verdict: free",
        "cd(Gamma) = 2",
        "dim H^2(Gamma) = infinite",
        "Poincare series (1 - 5t + 5t^2 + t^3/(1 - t))^-1: 1, 5, 20, 74, 264, 924, 3200 (mod t^7)",
    ]
    assert "not verified, out of scope" in lines[11]


def test_cut_strict():
    """Tests that the strict search only looks at the guaranteed grid."""
    with pytest.raises(DomainError, match=r"r = 5 >= \(d - c\)\(c - 1\) = 4"):
        Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES, strict=True)


def test_cut_manual_pair_already_a_hat():
    """Tests that a manual pair whose X_j0 X_i0 is a hat fails with a witness."""
    output = Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES, i0=3, j0=5)
    assert output.exit_code is ExitCode.PROPERTY_FALSE
    assert "cut pair: i0 = 3, j0 = 5 (corollary)" in output.text
    assert "combined verdict: not free: X5.X3 is a submonomial of X5.X3.X1" in output.text
    assert "Poincare series" not in output.text


@pytest.mark.parametrize("i0, j0", [(2, None), (1, 3), (4, 3), (2, 6)])
def test_cut_manual_pair_errors(i0, j0):
    """Tests that incomplete or out-of-range manual pairs are rejected."""
    with pytest.raises(UsageError):
        Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES, i0=i0, j0=j0)


def test_cut_needs_mild_presentation():
    """Tests that a presentation whose hats aren't free is reported before cutting."""
    output = Pipeline().cmd_cut(OVERLAPPING_DOCUMENT)
    assert output.exit_code is ExitCode.PROPERTY_FALSE and output.text.startswith("p = 3, d = 2, relations = 2\n")


def test_cut_needs_quadratic_hats():
    """Tests that hats of higher degree can't be cut."""
    with pytest.raises(UsageError, match="quadratic"):
        Pipeline().cmd_cut("p=3\nd=3\nrel=word:[x1,[x2,x3]]\n", trunc=5)


def test_cut_series_matches_poincare():
    """Tests that the series of the cut is the one of r quadratic relations plus one in every degree >= 3."""
    cut = Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES, series_to=12).text
    series = Pipeline().cmd_poincare(5, "2,2,2,2,2", tail_from=3, upto=12).text.splitlines()[0]
    assert f"(1 - 5t + 5t^2 + t^3/(1 - t))^-1: {series}\n" in cut


def test_cmd_poincare():
    """Tests the free algebra on two letters and an over-related presentation."""
    assert Pipeline().cmd_poincare(2, "", upto=5).text == "1, 2, 4, 8, 16, 32 (mod t^6)\nall coefficients nonnegative\n"
    negative = Pipeline().cmd_poincare(1, "2,2,2", upto=4).text
    assert negative.endswith("first negative coefficient in degree 2\n")
    with pytest.raises(UsageError):
        Pipeline().cmd_poincare(0)


def test_cmd_poincare_matches_normal_words():
    """Tests relation degrees 3..10 against the normal words of X5 X4^n X1, n <= 8."""
    output = Pipeline().cmd_poincare(5, "3,4,5,6,7,8,9,10", upto=10).text
    family = MonomialFamily((), (ParamMonomial((5,), 4, (1,), 5, stop=8),), 5)
    counts = count_normal_words(family, upto=10)
    assert output.splitlines()[0] == f"{', '.join(str(count) for count in counts)} (mod t^11)"


def test_cmd_primesearch():
    """Tests the smallest primes found and the `none` answer."""
    pipeline = Pipeline()
    assert pipeline.cmd_primesearch(3, bound=10).text == "7\n"
    assert pipeline.cmd_primesearch(3, "residue:7:no:old-mod-new").text == "13\n"
    impossible = "residue:7:yes:new-mod-old,residue:7:no:new-mod-old"
    assert pipeline.cmd_primesearch(3, impossible, bound=100) == CommandOutput("none\n")
    with pytest.raises(UsageError):
        pipeline.cmd_primesearch(3, "residue:7")


def test_commands_are_deterministic():
    """Tests that repeating a command gives the same text."""
    assert Pipeline().cmd_linking(3, FIVE_PRIMES) == Pipeline().cmd_linking(3, FIVE_PRIMES)
    assert Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES) == Pipeline().cmd_cut(p=3, primes=FIVE_PRIMES)


def test_cmd_linking_two_primes():
    """Tests the linking report with a zero row."""
    text = Pipeline().cmd_linking(3, "7,13").text
    assert "primitive roots = 3, 2\n" in text and "\n- 2\n0 -\nrelation initial forms:\n" in text
    assert "  Z1 = 1*X2.X1 + 2*X1.X2 + O(>=3)   hat X2.X1\n" in text
    assert "  Z2 = 0 + O(>=3)   hat zero row, relation of degree > 2\n" in text
    assert text.endswith("zero rows: 2\n")


def test_cmd_linking_reverse():
    """Tests that reversing the prime order reverses the generator numbering."""
    text = Pipeline().cmd_linking(3, "13,7", reverse=True).text
    assert text == Pipeline().cmd_linking(3, "7,13").text
