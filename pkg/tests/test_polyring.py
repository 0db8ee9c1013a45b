from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.errors import (
    NonHomogeneousError,
    PolynomialSyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from artifact.polyring import (
    Polynomial,
    WeightedRing,
    monomials_of_degree,
    parse_polynomial,
    parse_polynomial_file,
    partial_derivative,
    weighted_degree,
)

R = WeightedRing(("x0", "x1", "y", "z"), (1, 1, 2, 5))
P3 = WeightedRing(("x", "y", "z", "w"), (1, 1, 1, 1))


def P(src, ring=R):
    return parse_polynomial(src, ring)


def series_count(weights, k):
    # coefficient of t^k in prod 1/(1 - t^a), by repeated convolution
    coeffs = [1] + [0] * k
    for a in weights:
        for j in range(a, k + 1):
            coeffs[j] += coeffs[j - a]
    return coeffs[k]


class TestRing:
    def test_parse_declaration(self):
        assert WeightedRing.parse("x0,x1,y,z;1,1,2,5") == R
        assert R.declaration() == "x0,x1,y,z;1,1,2,5"

    @pytest.mark.parametrize(
        "vars_, weights",
        [((), ()), (("x", "x"), (1, 1)), (("x",), (0,)), (("x", "y"), (1,)), (("1x",), (1,))],
    )
    def test_invalid(self, vars_, weights):
        with pytest.raises(ValueError):
            WeightedRing(vars_, weights)

    def test_unknown_index(self):
        with pytest.raises(UnknownVariableError):
            R.index("q")


class TestParse:
    def test_horikawa_fermat(self):
        G = P("z^2 - x0^10 - x1^10 - y^5")
        assert len(G.terms) == 4
        assert G.coefficient((0, 0, 0, 2)) == 1
        assert G.coefficient((10, 0, 0, 0)) == -1

    def test_zero(self):
        assert P("0").terms == {}

    def test_cancellation(self):
        assert P("x0*x1 - x1*x0").terms == {}

    def test_rationals_and_whitespace(self):
        G = P(" 3/4 * x0 ^ 2 -  2 * x0*x1 ")
        assert G.coefficient((2, 0, 0, 0)) == Fraction(3, 4)
        assert G.coefficient((1, 1, 0, 0)) == -2

    def test_like_terms_combine(self):
        assert P("x0 + 2*x0 - 3*x0 + y") == P("y")

    def test_syntax_error_position(self):
        with pytest.raises(PolynomialSyntaxError) as info:
            P("x0 + * y")
        assert info.value.position == 5

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as info:
            P("x0 + q")
        assert info.value.position == 5

    @pytest.mark.parametrize("src", ["x0^1.5", "x0^-1", "x0^y", "x0^"])
    def test_non_integer_exponent(self, src):
        with pytest.raises(PolynomialSyntaxError):
            P(src)

    @pytest.mark.parametrize("src", ["", "   ", "x0 +", "(x0)", "1/0*x0", "x0 y0"])
    def test_malformed(self, src):
        with pytest.raises(ValueError):
            P(src)


class TestDegree:
    def test_examples(self):
        assert weighted_degree(P("z^2 - x0^10 - x1^10 - y^5")) == 10
        assert weighted_degree(P("x0")) == 1

    def test_non_homogeneous_lists_degrees(self):
        with pytest.raises(NonHomogeneousError) as info:
            weighted_degree(P("x0 + y"))
        assert info.value.degrees == (1, 2)

    def test_zero(self):
        with pytest.raises(ZeroPolynomialError):
            weighted_degree(P("0"))


class TestDerivative:
    def test_examples(self):
        assert partial_derivative(P("y^5"), "y") == P("5*y^4")
        assert partial_derivative(P("z^2 - x0^10 - x1^10 - y^5"), "z") == P("2*z")
        assert partial_derivative(P("x0^3*x1"), "x0") == P("3*x0^2*x1")

    def test_unknown(self):
        with pytest.raises(UnknownVariableError):
            partial_derivative(P("x0"), "w")


class TestMonomials:
    def test_examples(self):
        assert monomials_of_degree(R, 1) == [(1, 0, 0, 0), (0, 1, 0, 0)]
        assert monomials_of_degree(R, 0) == [(0, 0, 0, 0)]
        assert len(monomials_of_degree(P3, 2)) == 10
        assert monomials_of_degree(R, -1) == []

    @pytest.mark.parametrize("weights", [(1, 1, 2, 5), (1, 1, 1, 1), (2, 3), (3, 4, 5), (1,)])
    def test_count_matches_series(self, weights):
        ring = WeightedRing(tuple(f"v{i}" for i in range(len(weights))), weights)
        for k in range(30):
            monos = monomials_of_degree(ring, k)
            assert len(monos) == series_count(weights, k)
            assert all(ring.degree(m) == k for m in monos)
            assert monos == sorted(set(monos), reverse=True)


def polynomials(ring=R, max_exp=3, max_terms=5):
    mono = st.tuples(*(st.integers(0, max_exp) for _ in ring.weights))
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def homogeneous(ring=R, degree=6):
    monos = monomials_of_degree(ring, degree)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(st.sampled_from(monos), coeff, max_size=6).map(lambda d: Polynomial(ring, d))


@settings(max_examples=200, deadline=None)
@given(polynomials())
def test_print_parse_roundtrip(p):
    assert parse_polynomial(str(p), R) == p


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials(), st.sampled_from(R.variables))
def test_product_rule(p, q, var):
    assert (p * q).diff(var) == p.diff(var) * q + p * q.diff(var)


@settings(max_examples=100, deadline=None)
@given(homogeneous(), st.sampled_from(range(4)))
def test_derivative_degree(p, i):
    dp = p.diff(i)
    if dp:
        assert weighted_degree(dp) == 6 - R.weights[i]


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == Polynomial.zero(R)
    assert (a * b) * c == a * (b * c)


class TestFile:
    def test_header(self):
        ring, G = parse_polynomial_file("# comment\nvars: x0,x1,y,z; weights: 1,1,2,5\nz^2 - x0^10\n - x1^10 - y^5\n")
        assert ring == R
        assert G == P("z^2 - x0^10 - x1^10 - y^5")

    def test_no_header_needs_ring(self):
        with pytest.raises(ValueError):
            parse_polynomial_file("x0^2")
        assert parse_polynomial_file("x0^2", R)[1] == P("x0^2")

    def test_conflicting_header(self):
        with pytest.raises(ValueError):
            parse_polynomial_file("vars: a,b; weights: 1,1\na*b", R)
