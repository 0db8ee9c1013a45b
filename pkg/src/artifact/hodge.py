"""Primitive Hodge numbers of quasi-smooth weighted hypersurfaces via residues.

For G of degree d in P(a_0..a_n), the pole-order-q residues A*Omega/G^q with
deg A = q*d - sum(a) fill F^{n-q}, and those with A in J_G drop one step in
the filtration.  So h^{n-q, q-1}_prim = dim (R/J_G)_{q*d - sum(a)}.

Diagonal group actions split every graded piece by character.  The
character of a residue class is the character of the monomial A plus the
character of Omega; Omega = i(E) dz_0...dz_n picks up the product of all
coordinate eigenvalues, i.e. the sum of the exponent vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ActionError, NotQuasiSmoothError
from .jacobian import (
    JacobianContext,
    corank,
    graded_quotient_dim,
    jacobian_context,
    window_is_zero,
)
from .polyring import Polynomial, monomials_of_degree


@dataclass(frozen=True)
class DiagonalAction:
    """Finite abelian group Z/m_1 x ... x Z/m_r acting diagonally.

    Generator j multiplies variable i by exp(2*pi*i * exponents[j][i] / m_j).
    """

    orders: tuple
    exponents: tuple

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        if any(m < 1 for m in orders):
            raise ActionError(f"group orders must be positive, got {list(orders)}")
        if len(self.exponents) != len(orders):
            raise ActionError(f"{len(orders)} generators but {len(self.exponents)} exponent lists")
        exps = tuple(
            tuple(int(e) % m for e in row) for row, m in zip(self.exponents, orders)
        )
        if len({len(row) for row in exps}) > 1:
            raise ActionError("exponent lists have different lengths")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def trivial(cls, arity: int) -> "DiagonalAction":
        return cls((1,), ((0,) * arity,))

    @classmethod
    def parse(cls, text: str) -> "DiagonalAction":
        """Read ``"2:1,0,0,0;2:0,1,0,0"`` (order:exponents per generator)."""
        orders, exps = [], []
        try:
            for chunk in text.split(";"):
                m, row = chunk.split(":")
                orders.append(int(m))
                exps.append(tuple(int(e) for e in row.split(",")))
        except ValueError as exc:
            raise ActionError(f"action must look like '2:1,0;3:0,1', got {text!r}") from exc
        return cls(tuple(orders), tuple(exps))

    @property
    def arity(self) -> int:
        return len(self.exponents[0]) if self.exponents else 0

    def character(self, mono) -> tuple:
        return tuple(
            sum(e * x for e, x in zip(row, mono)) % m
            for row, m in zip(self.exponents, self.orders)
        )

    def omega_character(self) -> tuple:
        return tuple(sum(row) % m for row, m in zip(self.exponents, self.orders))

    def characters(self) -> list:
        return list(itertools.product(*(range(m) for m in self.orders)))

    def add(self, c1, c2) -> tuple:
        return tuple((a + b) % m for a, b, m in zip(c1, c2, self.orders))

    def sub(self, c1, c2) -> tuple:
        return tuple((a - b) % m for a, b, m in zip(c1, c2, self.orders))

    def fixes(self, G: Polynomial) -> bool:
        zero = (0,) * len(self.orders)
        return all(self.character(m) == zero for m in G.terms)

    def check(self, G: Polynomial) -> None:
        if self.arity != G.ring.arity:
            raise ActionError(f"action has arity {self.arity}, ring has {G.ring.arity}")
        bad = [m for m in G.terms if any(self.character(m))]
        if bad:
            raise ActionError(f"action does not fix G: monomial {bad[0]} has character {self.character(bad[0])}")


@dataclass
class EigenReport:
    orders: tuple
    characters: dict  # character tuple -> Hodge vector (list)
    total: list

    def nonzero(self) -> dict:
        return {c: v for c, v in self.characters.items() if any(v)}

    def to_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "characters": [
                {"character": list(c), "hodge": list(v)} for c, v in sorted(self.characters.items())
            ],
            "total": list(self.total),
        }


def _residue_degrees(G: Polynomial, ctx: JacobianContext) -> list:
    n = G.ring.arity - 1
    s = sum(G.ring.weights)
    return [q * ctx.d - s for q in range(1, n + 1)]


def _checked_context(G: Polynomial) -> JacobianContext:
    if G.ring.arity < 3:
        raise ValueError("need at least three variables (a hypersurface of dimension >= 1)")
    ctx = jacobian_context(G)
    if not window_is_zero(ctx):
        raise NotQuasiSmoothError("G is not quasi-smooth: its partials share a zero off the origin")
    return ctx


def hodge_numbers_primitive(G: Polynomial) -> list:
    """[h^{n-1,0}, ..., h^{0,n-1}] of primitive middle cohomology."""
    ctx = _checked_context(G)
    return [graded_quotient_dim(ctx, k) for k in _residue_degrees(G, ctx)]


def residue_basis(G: Polynomial, q: int) -> list:
    """Monomials whose residues span F^{n-q}/F^{n-q+1}, chosen greedily in monomial order."""
    n = G.ring.arity - 1
    if not 1 <= q <= n:
        raise ValueError(f"pole order q must lie in 1..{n}, got {q}")
    ctx = _checked_context(G)
    k = q * ctx.d - sum(G.ring.weights)
    if k < 0:
        return []
    monos, _, ech = ctx.echelon(k)
    ech = ech.copy()
    return [m for j, m in enumerate(monos) if ech.add({j: 1})]


def eigen_hodge_numbers(G: Polynomial, action: DiagonalAction) -> EigenReport:
    """Split the primitive Hodge numbers of G by character of ``action``."""
    action.check(G)
    ctx = _checked_context(G)
    omega = action.omega_character()
    degrees = _residue_degrees(G, ctx)
    table = {c: [0] * len(degrees) for c in action.characters()}
    for slot, k in enumerate(degrees):
        for mono_char, dim in _block_dims(ctx, action, k).items():
            table[action.add(mono_char, omega)][slot] += dim
    total = [sum(v[slot] for v in table.values()) for slot in range(len(degrees))]
    return EigenReport(action.orders, table, total)


def _block_dims(ctx: JacobianContext, action: DiagonalAction, k: int) -> dict:
    """dim (R/J)_k restricted to each monomial character.

    G is invariant, so dG/dz_i has character -e_i and each generator
    multiple is character-homogeneous: the matrix is block diagonal.
    """
    if k < 0:
        return {}
    blocks: dict = {}
    for m in monomials_of_degree(ctx.ring, k):
        blocks.setdefault(action.character(m), []).append(m)
    index = {c: {m: j for j, m in enumerate(ms)} for c, ms in blocks.items()}
    rows: dict = {c: [] for c in blocks}
    for _, _, prod in ctx.multiples(k):
        c = action.character(next(iter(prod)))
        rows[c].append({index[c][t]: x for t, x in prod.items()})
    out = {}
    for c, ms in blocks.items():
        block_rows = sorted(rows[c], key=len)
        out[c] = corank(block_rows, len(ms))
    return out


def twisted_character(action: DiagonalAction, mono) -> tuple:
    """Character of the residue of mono * Omega / G^q."""
    return action.add(action.character(mono), action.omega_character())


__all__ = [
    "DiagonalAction",
    "EigenReport",
    "eigen_hodge_numbers",
    "hodge_numbers_primitive",
    "residue_basis",
    "twisted_character",
]
