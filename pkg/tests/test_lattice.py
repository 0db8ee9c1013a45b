import random
from fractions import Fraction
from math import prod

import numpy
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from artifact.errors import GenusUndecidedError, LatticeError
from artifact.lattice import (
    Lattice,
    SublatticeEmbedding,
    direct_sum,
    discriminant_form,
    discriminant_group,
    e8,
    find_form_isomorphism,
    hyperbolic_plane,
    invariant_factors,
    is_primitive,
    k3_lattice,
    orthogonal_complement,
    rescale,
    root_lattice,
    same_genus,
    signature,
    smith_normal_form,
    standard_lattice,
)
from artifact.sampling import random_even_lattice, random_sublattice_basis, random_unimodular

U = hyperbolic_plane()
U2 = hyperbolic_plane(2)
D4 = root_lattice("D", 4)


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def change_basis(L, P):
    return Lattice(matmul(matmul(P, L.gram), transpose(P)))


class TestConstructors:
    def test_hyperbolic(self):
        assert U.gram == ((0, 1), (1, 0))
        assert U.det == -1 and signature(U) == (1, 1, 0)
        assert U2.gram == ((0, 2), (2, 0))

    def test_u2_d4(self):
        L = standard_lattice("U2+D4")
        assert (L.rank, L.det, signature(L)) == (6, -16, (1, 5, 0))

    def test_k3(self):
        K = k3_lattice()
        assert (K.rank, K.det, signature(K), K.is_even) == (22, -1, (3, 19, 0), True)
        assert discriminant_group(K) == []
        assert standard_lattice("K3") == K

    @pytest.mark.parametrize(
        "kind, n, det",
        [("A", 1, -2), ("A", 2, 3), ("A", 5, -6), ("D", 4, 4), ("D", 5, -4), ("E", 6, 3), ("E", 7, -2), ("E", 8, 1)],
    )
    def test_root_lattices(self, kind, n, det):
        # negative definite: det = (-1)^n |det|, |det| = index of connection
        L = root_lattice(kind, n)
        assert L.det == det
        assert signature(L) == (0, n, 0)
        assert all(L.gram[i][i] == -2 for i in range(n))

    def test_e8_unimodular(self):
        assert e8().det == 1 and signature(e8()) == (0, 8, 0)

    def test_rescale(self):
        assert rescale(U, 2) == Lattice(U2.gram, rescale(U, 2).label)
        assert signature(rescale(e8(), -1)) == (8, 0, 0)
        with pytest.raises(LatticeError):
            rescale(U, 0)

    def test_spec_tokens(self):
        assert standard_lattice("U(2)").gram == U2.gram
        assert standard_lattice("U + E8").rank == 10
        with pytest.raises(LatticeError):
            standard_lattice("Q7")
        with pytest.raises(LatticeError):
            standard_lattice("U++U")
        with pytest.raises(LatticeError):
            standard_lattice("A0")

    def test_validation(self):
        with pytest.raises(LatticeError):
            Lattice([[0, 1], [2, 0]])
        with pytest.raises(LatticeError):
            Lattice([[0, 1]])

    def test_direct_sum(self):
        L = direct_sum(U, D4)
        assert L.rank == 6 and L.gram[0][2] == 0 and L.gram[2][2] == -2


class TestSignature:
    def test_examples(self):
        assert signature(e8()) == (0, 8, 0)
        assert signature(U2) == (1, 1, 0)

    def test_degenerate(self):
        assert signature(Lattice([[0, 0], [0, 2]])) == (1, 0, 1)
        assert signature(Lattice([[0]])) == (0, 0, 1)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32))
    def test_matches_eigenvalues(self, seed):
        L = random_even_lattice(random.Random(seed), max_rank=6)
        eig = numpy.linalg.eigvalsh(numpy.array(L.gram, dtype=float))
        assert signature(L) == (int((eig > 0).sum()), int((eig < 0).sum()), 0)


class TestSmith:
    def test_examples(self):
        D, _, _ = smith_normal_form([[1, 0], [0, 1]])
        assert D == ((1, 0), (0, 1))
        D, _, _ = smith_normal_form([[2, 0], [0, 4]])
        assert D == ((2, 0), (0, 4))
        D, Um, V = smith_normal_form(U2.gram)
        assert D == ((2, 0), (0, 2))
        assert matmul(matmul(Um, U2.gram), V) == [list(r) for r in D]

    @settings(max_examples=120, deadline=None)
    @given(
        st.integers(1, 5).flatmap(
            lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=5)
        )
    )
    def test_against_sympy(self, M):
        D, Um, V = smith_normal_form(M)
        assert matmul(matmul(Um, M), V) == [list(r) for r in D]
        assert abs(sympy.Matrix(Um).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
        nonzero = [d for d in diag if d]
        assert all(d > 0 for d in nonzero)
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        expected = [abs(int(x)) for x in sympy_invariant_factors(sympy.Matrix(M)) if x != 0]
        assert invariant_factors(M) == expected


class TestDiscriminant:
    def test_groups(self):
        assert discriminant_group(U) == []
        assert discriminant_group(standard_lattice("U2+D4")) == [2, 2, 2, 2]
        assert discriminant_group(root_lattice("A", 1)) == [2]

    def test_degenerate(self):
        with pytest.raises(LatticeError):
            discriminant_group(Lattice([[0, 0], [0, 2]]))

    def test_u2_form(self):
        f = discriminant_form(U2)
        assert f.invariant_factors == (2, 2)
        assert f.q_generators() == [0, 0]
        assert f.b((1, 0), (0, 1)) == Fraction(1, 2)
        assert f.q((1, 1)) == 1

    def test_d4_form(self):
        f = discriminant_form(D4)
        assert f.invariant_factors == (2, 2)
        assert sorted(f.q(c) for c in f.elements() if any(c)) == [1, 1, 1]

    def test_e8_trivial(self):
        f = discriminant_form(e8())
        assert f.invariant_factors == () and f.order == 1

    def test_odd_rejected(self):
        with pytest.raises(LatticeError):
            discriminant_form(Lattice([[1]]))

    def test_a2_form(self):
        # A2 negative definite: q on a generator of Z/3 is -2/3 = 4/3 mod 2
        f = discriminant_form(root_lattice("A", 2))
        assert f.invariant_factors == (3,)
        assert f.q_generators() == [Fraction(4, 3)]

    def test_generators_in_dual(self):
        L = standard_lattice("U2+D4+A3")
        f = discriminant_form(L)
        for g, d in zip(f.generators, f.invariant_factors):
            pairings = [sum(g[i] * L.gram[i][j] for i in range(L.rank)) for j in range(L.rank)]
            assert all(p.denominator == 1 for p in pairings)
            assert not all((x * k).denominator == 1 for k in range(1, d) for x in g) or d == 1

    def test_to_dict(self):
        assert discriminant_form(U2).to_dict() == {
            "invariant_factors": [2, 2],
            "q": ["0", "0"],
            "b": [["0", "1/2"], ["1/2", "0"]],
        }


class TestComplement:
    def test_u2_in_u_plus_u(self):
        amb = direct_sum(U, U)
        emb = SublatticeEmbedding(amb, [[1, 0, 1, 0], [0, 1, 0, 1]])
        assert is_primitive(emb)
        comp = orthogonal_complement(emb)
        C = comp.lattice()
        assert C.rank == 2 and same_genus(C, U2)

    def test_full_rank_definite(self):
        amb = e8()
        emb = SublatticeEmbedding(amb, [[int(i == j) for j in range(8)] for i in range(8)])
        assert orthogonal_complement(emb).rank == 0

    def test_isotropic_line_in_u(self):
        comp = orthogonal_complement(SublatticeEmbedding(U, [[1, 0]]))
        assert comp.rank == 1
        assert comp.lattice().gram == ((0,),)
        assert [abs(x) for x in comp.basis[0]] == [1, 0]

    def test_primitive_examples(self):
        A1 = root_lattice("A", 1)
        assert not is_primitive(SublatticeEmbedding(A1, [[2]]))
        assert is_primitive(SublatticeEmbedding(A1, [[1]]))

    def test_dependent_rows_rejected(self):
        with pytest.raises(LatticeError):
            SublatticeEmbedding(U, [[1, 0], [2, 0]])

    def test_d4_in_e8(self):
        # D4 as the subdiagram on E8 nodes 2, 3, 4, 1; its complement is again in the genus of D4
        rows = [[int(j == s) for j in range(8)] for s in (2, 3, 4, 1)]
        emb = SublatticeEmbedding(e8(), rows)
        assert emb.lattice().gram == D4.gram
        assert is_primitive(emb)
        comp = orthogonal_complement(emb)
        assert comp.rank == 4
        assert same_genus(comp.lattice(), D4)


class TestGenus:
    def test_examples(self):
        assert same_genus(U, U)
        assert not same_genus(U2, U)

    def test_signature_differs(self):
        assert not same_genus(e8(), rescale(e8(), -1))

    def test_same_group_different_q(self):
        # signature (2, 2) and group (Z/2)^2 on both sides; q values {0, 0, 1} against {3/2, 1/2, 0}
        A1 = root_lattice("A", 1)
        L1 = direct_sum(U, U2)
        L2 = direct_sum(U, A1, rescale(A1, -1))
        assert signature(L1) == signature(L2)
        assert discriminant_group(L1) == discriminant_group(L2) == [2, 2]
        assert not same_genus(L1, L2)

    def test_group_differs(self):
        A1 = root_lattice("A", 1)
        assert not same_genus(D4, direct_sum(A1, A1, A1, A1))

    def test_bound(self):
        L = direct_sum(U2, U2, U2)
        with pytest.raises(GenusUndecidedError):
            same_genus(L, L, bound=32)
        assert same_genus(L, L, bound=64)

    def test_odd_rejected(self):
        with pytest.raises(LatticeError):
            same_genus(Lattice([[1]]), Lattice([[1]]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_unimodular_invariance_and_symmetry(self, seed):
        rng = random.Random(seed)
        L = random_even_lattice(rng, max_rank=6)
        if abs(L.det) > 2**10:
            return
        M = change_basis(L, random_unimodular(rng, L.rank))
        assert same_genus(L, M)
        assert same_genus(M, L)
        assert same_genus(L, L)

    def test_form_isomorphism_maps_q(self):
        f1 = discriminant_form(direct_sum(U2, D4))
        f2 = discriminant_form(change_basis(direct_sum(U2, D4), random_unimodular(random.Random(3), 6)))
        iso = find_form_isomorphism(f1, f2)
        assert iso is not None


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_lattice_invariants(seed):
    rng = random.Random(seed)
    L = random_even_lattice(rng, max_rank=8)
    assert abs(L.det) == prod(discriminant_group(L))
    pos, neg, zero = signature(L)
    assert pos + neg + zero == L.rank and zero == 0
    assert (L.det > 0) == (neg % 2 == 0)
    if L.rank > 1:
        k = rng.randint(1, L.rank - 1)
        sub = SublatticeEmbedding(L, random_sublattice_basis(rng, L.rank, k))
        comp = orthogonal_complement(sub)
        assert all(L.inner(b, c) == 0 for b in sub.basis for c in comp.basis)
        assert is_primitive(comp)
        assert comp.rank + sub.rank == L.rank
    f = discriminant_form(L)
    r = len(f.invariant_factors)
    for i in range(r):
        for j in range(r):
            x, y = f.basis_coeffs(i), f.basis_coeffs(j)
            s = tuple(a + b for a, b in zip(x, y))
            assert (f.q(s) - f.q(x) - f.q(y) - 2 * f.b(x, y)) % 2 == 0
