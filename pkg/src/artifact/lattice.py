"""Integral lattices given by symmetric Gram matrices.

Root lattices A_n, D_n, E_6, E_7, E_8 are built NEGATIVE definite (diagonal
-2, +1 on Dynkin edges), the convention under which the K3 lattice
U^3 + E8^2 has signature (3, 19).  Use ``rescale(L, -1)`` for the positive
convention.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, prod

from .errors import GenusUndecidedError, LatticeError
from .linalg import dense_rank, determinant

DEFAULT_GENUS_BOUND = 2**16


def _as_matrix(rows) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _matmul(a, b):
    bt = list(zip(*b)) if b and b[0] else []
    if not bt:
        return tuple(() for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _transpose(a):
    return tuple(zip(*a))


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    label: str | None = None

    def __post_init__(self):
        gram = _as_matrix(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def det(self) -> int:
        return determinant(self.gram)

    @property
    def is_nondegenerate(self) -> bool:
        return self.det != 0

    def inner(self, x, y):
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def norm(self, x):
        return self.inner(x, x)

    def __add__(self, other: "Lattice") -> "Lattice":
        return direct_sum(self, other)

    def to_json(self) -> list:
        return [list(row) for row in self.gram]

    def __str__(self):
        return self.label or f"Lattice(rank={self.rank})"


@dataclass(frozen=True)
class SublatticeEmbedding:
    """Sublattice of ``ambient`` spanned by the integer rows of ``basis``."""

    ambient: Lattice
    basis: tuple

    def __post_init__(self):
        basis = _as_matrix(self.basis)
        if any(len(row) != self.ambient.rank for row in basis):
            raise LatticeError("basis rows must have ambient rank length")
        if basis and dense_rank(basis) != len(basis):
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lattice(self, label=None) -> Lattice:
        if not self.basis:
            return Lattice((), label)
        b = self.basis
        return Lattice(_matmul(_matmul(b, self.ambient.gram), _transpose(b)), label)


# constructors


def hyperbolic_plane(m: int = 1) -> Lattice:
    if m == 0:
        raise LatticeError("U(0) is degenerate; m must be nonzero")
    return Lattice(((0, m), (m, 0)), "U" if m == 1 else f"U({m})")


def _dynkin(n: int, edges, label) -> Lattice:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return Lattice(g, label)


def root_lattice(kind: str, n: int) -> Lattice:
    """Negative-definite root lattice from its Dynkin diagram."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return _dynkin(n, [(i, i + 1) for i in range(n - 1)], f"A{n}")
    if kind == "D" and n >= 2:
        if n == 2:
            return _dynkin(2, [], "D2")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _dynkin(n, edges, f"D{n}")
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki labels 1..8: 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        return _dynkin(n, edges, f"E{n}")
    raise LatticeError(f"no root lattice {kind}{n}")


def e8() -> Lattice:
    return root_lattice("E", 8)


def direct_sum(*lattices: Lattice, label=None) -> Lattice:
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = L.gram[i][j]
        off += L.rank
    if label is None:
        label = "+".join(str(L) for L in lattices)
    return Lattice(g, label)


def rescale(L: Lattice, m: int) -> Lattice:
    if m == 0:
        raise LatticeError("rescaling by 0 is not allowed")
    return Lattice([[m * x for x in row] for row in L.gram], f"{L}({m})")


def k3_lattice() -> Lattice:
    U = hyperbolic_plane()
    return direct_sum(U, U, U, e8(), e8(), label="K3")


_TOKEN = re.compile(r"^(?:U(?:\((?P<m1>-?\d+)\)|(?P<m2>-?\d+))?|(?P<k>[ADE])(?P<n>\d+)|K3)$")


def standard_lattice(expr: str, extra: dict | None = None) -> Lattice:
    """Build a lattice from names like ``"U+U2+D4+E8"``.

    Tokens: ``U``, ``U2`` or ``U(2)``, ``A<n>``, ``D<n>``, ``E6/E7/E8``,
    ``K3``, plus any names supplied in ``extra`` (callables or lattices).
    """
    extra = extra or {}
    parts = []
    for raw in expr.replace(" ", "").split("+"):
        if not raw:
            raise LatticeError(f"empty summand in {expr!r}")
        if raw in extra:
            item = extra[raw]
            parts.append(item() if callable(item) else item)
            continue
        m = _TOKEN.match(raw)
        if m is None:
            raise LatticeError(f"unknown lattice name {raw!r}")
        if raw == "K3":
            parts.append(k3_lattice())
        elif raw.startswith("U"):
            parts.append(hyperbolic_plane(int(m["m1"] or m["m2"] or 1)))
        else:
            parts.append(root_lattice(m["k"], int(m["n"])))
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts, label=expr.replace(" ", ""))


# invariants


def signature(L: Lattice) -> tuple:
    """(positive, negative, degenerate) by exact congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in L.gram]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2*a[i][j] != 0
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
                for t in range(k, n):
                    a[t][i] = a[i][t]
        if p > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg


def smith_normal_form(M) -> tuple:
    """Return ``(D, U, V)`` with ``D = U*M*V`` diagonal, d_i | d_{i+1}, U, V unimodular."""
    a = [list(map(int, row)) for row in M]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return _as_matrix(a), _as_matrix(U), _as_matrix(V)


def invariant_factors(M) -> list:
    """Nonzero diagonal of the Smith normal form."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def discriminant_group(L: Lattice) -> list:
    """Invariant factors (> 1) of the finite group L*/L."""
    if not L.is_nondegenerate:
        raise LatticeError("discriminant group of a degenerate lattice is not finite")
    return [d for d in invariant_factors(L.gram) if d > 1]


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * floor(x / m)


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form (A_L, q) with q in Q/2Z and b in Q/Z.

    ``generators[i]`` is a dual-lattice vector (coordinates in the lattice
    basis) of order ``invariant_factors[i]`` in L*/L.
    """

    invariant_factors: tuple
    generators: tuple
    gram: tuple

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def vector(self, coeffs) -> tuple:
        n = len(self.gram)
        return tuple(
            sum((c * g[t] for c, g in zip(coeffs, self.generators)), Fraction(0)) for t in range(n)
        )

    def _pair(self, x, y) -> Fraction:
        n = len(self.gram)
        return sum((x[i] * self.gram[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    def q(self, coeffs) -> Fraction:
        x = self.vector(coeffs)
        return _mod(self._pair(x, x), 2)

    def b(self, c1, c2) -> Fraction:
        return _mod(self._pair(self.vector(c1), self.vector(c2)), 1)

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def basis_coeffs(self, i) -> tuple:
        return tuple(int(i == j) for j in range(len(self.invariant_factors)))

    def q_generators(self) -> list:
        return [self.q(self.basis_coeffs(i)) for i in range(len(self.invariant_factors))]

    def b_matrix(self) -> list:
        r = len(self.invariant_factors)
        return [[self.b(self.basis_coeffs(i), self.basis_coeffs(j)) for j in range(r)] for i in range(r)]

    def q_table(self) -> dict:
        return {c: self.q(c) for c in self.elements()}

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "q": [_frac_str(v) for v in self.q_generators()],
            "b": [[_frac_str(v) for v in row] for row in self.b_matrix()],
        }


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def discriminant_form(L: Lattice) -> DiscriminantForm:
    """Discriminant quadratic form of an even nondegenerate lattice.

    With D = U*G*V, the dual lattice is G^{-1} Z^n and column i of V divided
    by d_i generates the cyclic factor Z/d_i of L*/L.
    """
    if not L.is_even:
        raise LatticeError("discriminant quadratic form needs an even lattice")
    if not L.is_nondegenerate:
        raise LatticeError("discriminant form of a degenerate lattice is undefined")
    D, _, V = smith_normal_form(L.gram)
    gens, factors = [], []
    for i in range(L.rank):
        d = D[i][i]
        if d > 1:
            factors.append(d)
            gens.append(tuple(Fraction(V[t][i], d) for t in range(L.rank)))
    return DiscriminantForm(tuple(factors), tuple(gens), L.gram)


def orthogonal_complement(e: SublatticeEmbedding) -> SublatticeEmbedding:
    """Saturated basis of {x in ambient : x . b = 0 for every basis row b}."""
    n = e.ambient.rank
    if not e.basis:
        return SublatticeEmbedding(e.ambient, [[int(i == j) for j in range(n)] for i in range(n)])
    M = _matmul(e.basis, e.ambient.gram)
    D, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    kernel = [[V[t][j] for t in range(n)] for j in range(r, n)]
    return SublatticeEmbedding(e.ambient, kernel)


def is_primitive(e: SublatticeEmbedding) -> bool:
    """True iff the sublattice is saturated (ambient/sub is torsion free)."""
    if not e.basis:
        return True
    factors = invariant_factors(e.basis)
    return len(factors) == e.rank and all(d == 1 for d in factors)


def same_genus(L1: Lattice, L2: Lattice, bound: int = DEFAULT_GENUS_BOUND) -> bool:
    """Compare signature and discriminant quadratic form.

    For the indefinite lattices of interest this decides isometry; for
    definite lattices it is only a genus check.  The isomorphism search is
    exhaustive, so groups larger than ``bound`` raise GenusUndecidedError.
    """
    for L in (L1, L2):
        if not L.is_even or not L.is_nondegenerate:
            raise LatticeError(f"{L} must be even and nondegenerate for the genus check")
    if signature(L1) != signature(L2):
        return False
    f1, f2 = discriminant_form(L1), discriminant_form(L2)
    if f1.invariant_factors != f2.invariant_factors:
        return False
    if f1.order > bound:
        raise GenusUndecidedError(
            f"discriminant group of order {f1.order} exceeds the search bound {bound}"
        )
    return find_form_isomorphism(f1, f2) is not None


def _element_order(c, factors) -> int:
    o = 1
    for x, d in zip(c, factors):
        if x:
            k = d // gcd(x, d)
            o = o * k // gcd(o, k)
    return o


def find_form_isomorphism(f1: DiscriminantForm, f2: DiscriminantForm):
    """Images of f1's generators in f2 giving a q-preserving isomorphism, or None."""
    factors = f1.invariant_factors
    if factors != f2.invariant_factors:
        return None
    r = len(factors)
    if r == 0:
        return []
    q1 = f1.q_generators()
    b1 = f1.b_matrix()
    elements = list(f2.elements())
    by_order: dict = {}
    qtab = {}
    for c in elements:
        qtab[c] = f2.q(c)
        by_order.setdefault(_element_order(c, factors), []).append(c)
    vec = {c: f2.vector(c) for c in elements}

    def add(c1, c2):
        return tuple((x + y) % d for x, y, d in zip(c1, c2, factors))

    def search(i, images, subgroup):
        if i == r:
            return list(images)
        for h in by_order.get(factors[i], []):
            if qtab[h] != q1[i]:
                continue
            if any(_mod(f2._pair(vec[h], vec[images[j]]), 1) != b1[i][j] for j in range(i)):
                continue
            grown = set(subgroup)
            step = h
            for _ in range(factors[i] - 1):
                grown.update(add(s, step) for s in subgroup)
                step = add(step, h)
            if len(grown) != len(subgroup) * factors[i]:
                continue
            found = search(i + 1, images + [h], grown)
            if found is not None:
                return found
        return None

    return search(0, [], {(0,) * r})
