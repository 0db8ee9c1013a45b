import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.errors import NonHomogeneousError, ZeroPolynomialError
from artifact.jacobian import (
    graded_quotient_dim,
    hilbert_series_closed_form,
    ideal_membership,
    jacobian_context,
    jacobian_generator_degrees,
    quasi_smooth,
    quotient_dims,
    socle_degree,
)
from artifact.linalg import rank
from artifact.polyring import Polynomial, WeightedRing, monomials_of_degree, parse_polynomial
from artifact.sampling import random_quasi_smooth

R = WeightedRing(("x0", "x1", "y", "z"), (1, 1, 2, 5))
FERMAT = parse_polynomial("z^2 - x0^10 - x1^10 - y^5", R)


def brute_fermat_dim(k):
    # R/J for the Fermat example is the monomial quotient by (x0^9, x1^9, y^4, z)
    return sum(1 for m in monomials_of_degree(R, k) if m[0] <= 8 and m[1] <= 8 and m[2] <= 3 and m[3] == 0)


class TestContext:
    def test_fields(self):
        ctx = jacobian_context(FERMAT)
        assert ctx.d == 10
        assert ctx.sigma == 22 == socle_degree(R, 10)
        assert [str(p) for p in ctx.partials] == ["-10*x0^9", "-10*x1^9", "-5*y^4", "2*z"]

    def test_non_homogeneous(self):
        with pytest.raises(NonHomogeneousError):
            jacobian_context(parse_polynomial("x0 + y", R))


class TestQuotientDim:
    @pytest.mark.parametrize("k, expected", [(1, 2), (11, 28), (21, 2)])
    def test_examples(self, k, expected):
        assert graded_quotient_dim(jacobian_context(FERMAT), k) == expected

    def test_brute_force_every_degree(self):
        ctx = jacobian_context(FERMAT)
        for k in range(30):
            assert graded_quotient_dim(ctx, k) == brute_fermat_dim(k)

    def test_negative_degree(self):
        assert graded_quotient_dim(jacobian_context(FERMAT), -3) == 0


class TestMembership:
    def test_examples(self):
        ctx = jacobian_context(FERMAT)
        assert ideal_membership(ctx, parse_polynomial("x0^9", R))
        assert not ideal_membership(ctx, parse_polynomial("x0", R))
        assert ideal_membership(ctx, Polynomial.zero(R))

    def test_non_homogeneous(self):
        with pytest.raises(NonHomogeneousError):
            ideal_membership(jacobian_context(FERMAT), parse_polynomial("x0 + y", R))

    def test_generic_member(self):
        G = parse_polynomial("z^2 - x0^10 - x1^10 - y^5 + 3*x0^2*x1^2*y^3", R)
        ctx = jacobian_context(G)
        A = parse_polynomial("x0^3", R) * ctx.partials[0] - 7 * parse_polynomial("x1^2*y", R) * ctx.partials[2]
        assert ideal_membership(ctx, A)
        assert not ideal_membership(ctx, A + parse_polynomial("x0^6*x1^6", R))

    def test_rank_criterion(self):
        # membership iff adjoining A leaves the rank of the generator multiples unchanged
        rng = random.Random(5)
        G = parse_polynomial("z^2 - x0^10 - x1^10 - y^5 + x0*x1^5*y^2", R)
        ctx = jacobian_context(G)
        k = 12
        monos = monomials_of_degree(R, k)
        index = {m: j for j, m in enumerate(monos)}
        rows = [{index[t]: c for t, c in prod.items()} for _, _, prod in ctx.multiples(k)]
        base = rank(rows)
        for _ in range(20):
            A = Polynomial(R, {m: rng.randint(-2, 2) for m in rng.sample(monos, 3)})
            if not A:
                continue
            extended = rank(rows + [{index[t]: c for t, c in A.terms.items()}])
            assert ideal_membership(ctx, A) == (extended == base)


class TestQuasiSmooth:
    def test_examples(self):
        assert quasi_smooth(FERMAT)
        assert not quasi_smooth(parse_polynomial("z^2 - x0^10 - x1^10", R))
        conic = WeightedRing(("a", "b"), (1, 1))
        assert quasi_smooth(parse_polynomial("a^2 + b^2", conic))

    def test_singular_cubic(self):
        P2 = WeightedRing(("x", "y", "z"), (1, 1, 1))
        assert quasi_smooth(parse_polynomial("x^3 + y^3 + z^3", P2))
        assert not quasi_smooth(parse_polynomial("y^2*z - x^3 - x^2*z", P2))  # nodal cubic

    def test_zero_partial_allowed(self):
        P2 = WeightedRing(("x", "y", "z"), (1, 1, 1))
        assert not quasi_smooth(parse_polynomial("x^2 + y^2", P2))

    def test_errors(self):
        with pytest.raises(ZeroPolynomialError):
            quasi_smooth(Polynomial.zero(R))
        with pytest.raises(NonHomogeneousError):
            quasi_smooth(parse_polynomial("x0 + y", R))

    def test_permutation_invariance(self):
        rng = random.Random(11)
        P3 = WeightedRing(("a", "b", "c", "d"), (1, 1, 1, 1))
        for src in ("a^3+b^3+c^3+d^3+a*b*c", "a^3+b^3+c^3", "a^2*b+b^2*c+c^2*d+d^2*a"):
            G = parse_polynomial(src, P3)
            expected = quasi_smooth(G)
            for perm in rng.sample(list(permutations(range(4))), 5):
                H = Polynomial(P3, {tuple(m[perm[i]] for i in range(4)): c for m, c in G.terms.items()})
                assert quasi_smooth(H) == expected


class TestHilbert:
    def test_examples(self):
        series = hilbert_series_closed_form(R, (9, 9, 8, 5), 30)
        assert series[1] == 2 and series[11] == 28
        assert all(c == 0 for c in series[23:])

    def test_generator_degrees(self):
        assert sorted(jacobian_generator_degrees(FERMAT)) == [5, 8, 9, 9]

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            hilbert_series_closed_form(R, (0, 1), 5)

    def test_polynomial_ring(self):
        P2 = WeightedRing(("x", "y", "z"), (1, 1, 1))
        assert hilbert_series_closed_form(P2, (), 4) == [1, 3, 6, 10, 15]

    def test_oracle_equivalence_fermat(self):
        ctx = jacobian_context(FERMAT)
        top = ctx.sigma + 5
        assert quotient_dims(ctx, top) == hilbert_series_closed_form(R, (9, 9, 8, 5), top)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_random_oracle_and_gorenstein(seed):
    G = random_quasi_smooth(random.Random(seed), max_rank=4, max_weight=5)
    ctx = jacobian_context(G)
    top = ctx.sigma + max(G.ring.weights)
    dims = quotient_dims(ctx, top)
    assert dims == hilbert_series_closed_form(G.ring, jacobian_generator_degrees(G), top)
    body = dims[: ctx.sigma + 1]
    assert body == body[::-1]
    assert all(d == 0 for d in dims[ctx.sigma + 1 :])
