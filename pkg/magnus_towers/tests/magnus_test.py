import pytest
from hypothesis import given, settings, strategies as st

from ..magnus import *
from ..series_core import *
from ..utils import *

generators = st.integers(1, 3).map(Generator)
words = st.recursive(
    generators,
    lambda children: st.one_of(
        st.tuples(children, st.integers(-3, 3)).map(lambda pair: Power(*pair)),
        st.tuples(children, children).map(lambda pair: Commutator(*pair)),
        st.tuples(children, children).map(lambda pair: Product(pair)),
        children.map(Inverse),
    ),
    max_leaves=5,
)


def test_parse_word_grammar():
    """Tests parsing the nested commutator and product forms of the word grammar."""
    word = parse_word("[x1,[x2^9,x3]]")
    assert word == Commutator(Generator(1), Commutator(Power(Generator(2), 9), Generator(3)))
    assert parse_word(" x1 * x2^-1 ") == Product((Generator(1), Power(Generator(2), -1)))
    assert str(parse_word("(x1*x2)^3*[x1,x2]^2")) == "(x1*x2)^3*[x1,x2]^2"


@pytest.mark.parametrize("text", ["", "x", "[x1,x2", "x1**x2", "y1", "x0", "x1^"])
def test_parse_word_errors(text):
    """Tests that malformed words raise a parse error."""
    with pytest.raises(WordParseError):
        parse_word(text)


def test_parse_word_index_beyond_d():
    """Tests that a word using x_4 is rejected for d = 3."""
    with pytest.raises(UsageError, match="x4"):
        parse_word("[x1,x4]", 3)


def test_expand_generator_product():
    """Tests that x1 x2 expands to (1 + X1)(1 + X2)."""
    assert str(expand(parse_word("x1*x2"), 3, 2, 4)) == "1 + 1*X2 + 1*X1 + 1*X1.X2 + O(>=4)"


def test_expand_commutator():
    """Tests the expansion of [x2, x3] at p = 3 to degree 3."""
    assert str(expand(parse_word("[x2,x3]"), 3, 3, 3)) == "1 + 2*X3.X2 + 1*X2.X3 + O(>=3)"


def test_expand_p_power():
    """Tests that every intermediate binomial of (1 + X2)^9 vanishes mod 3."""
    series = expand(parse_word("x2^9"), 3, 2, 12)
    assert series.terms == {(): 1, (2,) * 9: 1}


def test_expand_rejects_small_truncation():
    """Tests that the truncation degree must be at least 2."""
    with pytest.raises(UsageError):
        expand(parse_word("x1"), 3, 1, 1)


def test_generator_power_series():
    """Tests the binomial coefficients of a few exponents."""
    assert generator_power_series(-1, 3, 6) == [1, 2, 1, 2, 1, 2]
    assert generator_power_series(0, 5, 4) == [1, 0, 0, 0]
    assert generator_power_series(9, 3, 12) == [1] + [0] * 8 + [1, 0, 0]


@pytest.mark.parametrize("p", [3, 5])
def test_generator_power_series_matches_repeated_products(p):
    """Tests the binomials against repeated multiplication of (1 + X) for small and p-power exponents."""
    base = TruncatedSeries(1, p, 30, {(): 1, (1,): 1})
    for e in list(range(-64, 65)) + [p, p**2, p**3]:
        factor = base if e >= 0 else base.inverse()
        power = TruncatedSeries.one(1, p, 30)
        for _ in range(abs(e)):
            power = power * factor
        assert generator_power_series(e, p, 30) == [power.coefficient((1,) * k).value for k in range(30)]


def test_zassenhaus_degree():
    """Tests the degrees of a generator, a commutator and a commutator with a p-th power inside."""
    assert zassenhaus_degree(parse_word("x1"), 3, 1).value == 1
    assert zassenhaus_degree(parse_word("[x2,x3]"), 3, 3).value == 2
    assert zassenhaus_degree(parse_word("[x1,[x2^3,x3]]"), 3, 3).value == 5


def test_zassenhaus_degree_of_identity():
    """Tests that the identity word is reported as truncation-limited."""
    degree = zassenhaus_degree(parse_word("x1*x1^-1"), 3, 1, 6)
    assert degree.truncation_limited and str(degree) == ">= 6 (truncation-limited)"


def test_word_hat_p_power_commutator():
    """Tests that the highest term of [x1, [x2^9, x3]] is X3 X2^9 X1."""
    hat = word_hat(parse_word("[x1,[x2^9,x3]]"), 3, 3, 13)
    assert hat == Monomial((3,) + (2,) * 9 + (1,), 3) and hat.degree == 11


def test_word_hat_of_identity_is_inconclusive():
    """Tests that x1 x1^-1 has no highest term below the truncation degree."""
    with pytest.raises(InconclusiveError):
        word_hat(parse_word("x1*x1^-1"), 3, 1)


def test_word_hat_generator():
    """Tests the highest term of a single generator."""
    assert word_hat(Generator(5), 3, 5, 4) == Monomial((5,), 5)


def test_iterated_commutator_shape():
    """Tests the nesting of the iterated commutators."""
    assert iterated_commutator(1, 2, 3, 1) == parse_word("[x1,[x2,x3]]")
    assert iterated_commutator(1, 2, 3, 0) == parse_word("[x1,x3]")
    assert iterated_commutator(1, 4, 5, 2) == parse_word("[x1,[x4,[x4,x5]]]")
    with pytest.raises(UsageError):
        iterated_commutator(1, 1, 3, 2)


@pytest.mark.parametrize("n", range(0, 9))
def test_iterated_commutator_hats(n):
    """Tests that the highest term of f_x1 o f_x4^n (x5) is X5 X4^n X1."""
    word = iterated_commutator(1, 4, 5, n)
    assert word_hat(word, 3, 5, n + 3) == Monomial((5,) + (4,) * n + (1,), 5)


def test_frobenius_word():
    """Tests that the word standing in for a Frobenius has highest term X_j0 X_i0^n X_1."""
    word = frobenius_word(2, 3, 4)
    assert word == iterated_commutator(1, 2, 3, 4)
    assert word_hat(word, 5, 3, 8) == Monomial((3, 2, 2, 2, 2, 1), 3)


def test_invert_word():
    """Tests the pushed-down inverses."""
    assert invert_word(parse_word("x1*x2")) == Product((Power(Generator(2), -1), Power(Generator(1), -1)))
    assert invert_word(parse_word("[x1,x2]")) == parse_word("[x2,x1]")
    assert invert_word(parse_word("x3^4")) == parse_word("x3^-4")


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_expand_is_homomorphism(u, v):
    """Tests expand(uv) = expand(u) expand(v) and expand(u^-1) expand(u) = 1."""
    assert expand(Product((u, v)), 3, 3, 5) == expand(u, 3, 3, 5) * expand(v, 3, 3, 5)
    assert expand(Inverse(u), 3, 3, 5) * expand(u, 3, 3, 5) == TruncatedSeries.one(3, 3, 5)


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_commutator_degree_is_additive(u, v):
    """Tests deg([u, v]) >= deg(u) + deg(v) whenever all three are known below the truncation degree."""
    du, dv = zassenhaus_degree(u, 3, 3, 6), zassenhaus_degree(v, 3, 3, 6)
    dc = zassenhaus_degree(Commutator(u, v), 3, 3, 6)
    if not (du.truncation_limited or dv.truncation_limited or dc.truncation_limited):
        assert dc.value >= du.value + dv.value


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_degree_is_conjugation_invariant(g, w):
    """Tests that conjugating a word doesn't change its degree."""
    assert zassenhaus_degree(conjugate(g, w), 3, 3, 5) == zassenhaus_degree(w, 3, 3, 5)
