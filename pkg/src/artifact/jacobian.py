"""Graded pieces of the Jacobian ring R/J_G, computed by exact linear algebra.

The degree-k piece of J_G is spanned by the products m * dG/dz_i with m a
monomial of degree k - deg(dG/dz_i).  Its dimension is an integer rank; the
quotient dimension is the number of degree-k monomials minus that rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ZeroPolynomialError
from .linalg import RowEchelon, rank, rank_mod_p
from .polyring import Polynomial, WeightedRing, monomials_of_degree, weighted_degree


@dataclass(frozen=True)
class JacobianContext:
    G: Polynomial
    partials: tuple
    d: int
    sigma: int
    _echelons: dict = field(default_factory=dict, repr=False, compare=False)
    _dims: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def ring(self) -> WeightedRing:
        return self.G.ring

    def multiples(self, k: int):
        """Yield ``(i, m, product_terms)`` for every generator multiple in degree k.

        ``product_terms`` maps degree-k monomials to coefficients.  Identical
        products (possible when partials coincide) are emitted once.
        """
        seen = set()
        weights = self.ring.weights
        for i, part in enumerate(self.partials):
            if not part:
                continue
            shift = k - (self.d - weights[i])
            if shift < 0:
                continue
            terms = list(part.terms.items())
            for m in monomials_of_degree(self.ring, shift):
                prod = {tuple(a + b for a, b in zip(m, t)): c for t, c in terms}
                key = frozenset(prod.items())
                if key in seen:
                    continue
                seen.add(key)
                yield i, m, prod

    def echelon(self, k: int) -> tuple:
        """``(monomials, index, RowEchelon of J_k)``; cached per degree."""
        cached = self._echelons.get(k)
        if cached is None:
            monos = monomials_of_degree(self.ring, k)
            index = {m: j for j, m in enumerate(monos)}
            ech = RowEchelon()
            for row in _sorted_rows(self.multiples(k), index):
                ech.add(row)
                if ech.rank == len(monos):
                    break
            cached = (monos, index, ech)
            self._echelons[k] = cached
        return cached


@lru_cache(maxsize=64)
def jacobian_context(G: Polynomial) -> JacobianContext:
    """Context for G; shared per polynomial so graded dimensions are computed once."""
    d = weighted_degree(G)
    ring = G.ring
    partials = tuple(G.diff(i) for i in range(ring.arity))
    sigma = sum(d - a for a in ring.weights) - sum(ring.weights)
    return JacobianContext(G, partials, d, sigma)


def socle_degree(ring: WeightedRing, d: int) -> int:
    return sum(d - a for a in ring.weights) - sum(ring.weights)


def graded_quotient_dim(ctx: JacobianContext, k: int) -> int:
    """dim (R/J_G)_k."""
    if k < 0:
        return 0
    monos = monomials_of_degree(ctx.ring, k)
    if not monos:
        return 0
    dim = ctx._dims.get(k)
    if dim is None:
        if k in ctx._echelons:
            dim = len(monos) - ctx._echelons[k][2].rank
        else:
            index = {m: j for j, m in enumerate(monos)}
            dim = corank(_sorted_rows(ctx.multiples(k), index), len(monos))
        ctx._dims[k] = dim
    return dim


def corank(rows: list, ncols: int) -> int:
    """ncols minus the rank of ``rows``; exact.

    Single-term rows put their column in the span outright, so those columns
    are deleted from every row first (repeatedly, as deletions create new
    single-term rows).  On what remains, a full-rank reduction mod a large
    prime certifies full rank over Q and skips the integer elimination.
    """
    killed: set = set()
    while True:
        fresh = {next(iter(r)) for r in rows if len(r) == 1}
        if not fresh:
            break
        killed |= fresh
        rows = [r for r in ({c: x for c, x in r.items() if c not in killed} for r in rows) if r]
    if killed:
        keep = {c: j for j, c in enumerate(c for c in range(ncols) if c not in killed)}
        rows = [{keep[c]: x for c, x in r.items()} for r in rows]
        ncols = len(keep)
    rows.sort(key=len)
    if len(rows) >= ncols and rank_mod_p(rows, ncols) == ncols:
        return 0
    return ncols - rank(rows, limit=ncols)


def _sorted_rows(multiples, index) -> list:
    # sparse rows first: monomial multiples then act as cheap column deletions
    rows = [{index[t]: c for t, c in prod.items()} for _, _, prod in multiples]
    rows.sort(key=len)
    return rows


def ideal_membership(ctx: JacobianContext, A: Polynomial) -> bool:
    """True iff the homogeneous polynomial ``A`` lies in J_G."""
    if A.ring != ctx.ring:
        raise ValueError("A and G live in different rings")
    if not A:
        return True
    k = weighted_degree(A)
    _, index, ech = ctx.echelon(k)
    return ech.contains({index[m]: c for m, c in A.terms.items()})


def quasi_smooth(G: Polynomial) -> bool:
    """Decide whether the partials of G vanish together only at the origin.

    R/J_G is finite dimensional exactly when the quotient vanishes on the
    window [sigma+1, sigma+max weight]: every monomial above the window is a
    variable times a monomial one window lower, so zeros propagate upward.
    """
    if not G:
        raise ZeroPolynomialError("quasi-smoothness of the zero polynomial is undefined")
    return window_is_zero(jacobian_context(G))


def window_is_zero(ctx: JacobianContext) -> bool:
    top = ctx.sigma + max(ctx.ring.weights)
    return all(graded_quotient_dim(ctx, k) == 0 for k in range(ctx.sigma + 1, top + 1))


def hilbert_series_closed_form(ring: WeightedRing, generator_degrees, up_to: int) -> list:
    """Coefficients of prod_j (1 - t^{d_j}) / prod_i (1 - t^{a_i}) for degrees 0..up_to."""
    if any(dj < 1 for dj in generator_degrees):
        raise ValueError("generator degrees must be >= 1")
    if up_to < 0:
        return []
    series = [0] * (up_to + 1)
    series[0] = 1
    for dj in generator_degrees:
        for k in range(up_to, dj - 1, -1):
            series[k] -= series[k - dj]
    for a in ring.weights:
        for k in range(a, up_to + 1):
            series[k] += series[k - a]
    return series


def jacobian_generator_degrees(G: Polynomial) -> list:
    d = weighted_degree(G)
    return [d - a for a in G.ring.weights]


def quotient_dims(ctx: JacobianContext, up_to: int) -> list:
    return [graded_quotient_dim(ctx, k) for k in range(up_to + 1)]
