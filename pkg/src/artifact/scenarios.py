"""End-to-end pipelines for special Horikawa surfaces and their K3 lattices.

A special Horikawa surface is the degree-10 hypersurface
z^2 = F(x0^2, x1^2, y) in P(1,1,2,5), F a plane quintic.  The two sign
changes of x0 and x1 generate a (Z/2)^2 Galois group; its characters split
H^2_prim.  On the lattice side, the degree-5 pair lattice M spanned by
l', e1..e5 embeds in the K3 lattice with complement T of signature (2, 14).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hodge import DiagonalAction, EigenReport, eigen_hodge_numbers, hodge_numbers_primitive
from .jacobian import quasi_smooth
from .lattice import (
    Lattice,
    SublatticeEmbedding,
    direct_sum,
    discriminant_group,
    e8,
    hyperbolic_plane,
    is_primitive,
    k3_lattice,
    orthogonal_complement,
    root_lattice,
    same_genus,
    signature,
)
from .polyring import Polynomial, WeightedRing, monomials_of_degree

HORIKAWA_RING = WeightedRing(("x0", "x1", "y", "z"), (1, 1, 2, 5))
QUINTIC_RING = WeightedRing(("u", "v", "w"), (2, 2, 2))

# generator 0 is sigma_x0 (x0 -> -x0), generator 1 is sigma_x1 (x1 -> -x1)
GALOIS_ACTION = DiagonalAction((2, 2), ((1, 0, 0, 0), (0, 1, 0, 0)))
# additive characters (value on sigma_x0, value on sigma_x1); 1 stands for -1
CHI0 = (0, 1)
CHI1 = (1, 0)
CHARACTER_NAMES = {(0, 0): "trivial", CHI0: "chi0", CHI1: "chi1", (1, 1): "chi0*chi1"}


@dataclass
class HorikawaReport:
    quasi_smooth: bool
    y5_present: bool
    G: Polynomial
    total: list | None = None
    eigen: EigenReport | None = None

    def to_dict(self) -> dict:
        out = {
            "quasi_smooth": self.quasi_smooth,
            "y5_present": self.y5_present,
            "G": str(self.G),
            "total": self.total,
            "eigen": None,
        }
        if self.eigen is not None:
            out["eigen"] = {
                CHARACTER_NAMES[c]: v for c, v in sorted(self.eigen.characters.items())
            }
        return out


def horikawa_polynomial(F: Polynomial) -> Polynomial:
    """G = z^2 - F(x0^2, x1^2, y) in P(1,1,2,5)."""
    ring = F.ring
    if ring.arity != 3 or len(set(ring.weights)) != 1:
        raise ValueError("F must be a form in three variables of equal weight")
    if not F or any(sum(m) != 5 for m in F.terms):
        raise ValueError("F must be a nonzero quintic (every term of total degree 5)")
    x0, x1, y, z = (Polynomial.variable(HORIKAWA_RING, v) for v in HORIKAWA_RING.variables)
    return z**2 - F.substitute([x0**2, x1**2, y], HORIKAWA_RING)


def horikawa_surface(F: Polynomial) -> HorikawaReport:
    G = horikawa_polynomial(F)
    report = HorikawaReport(
        quasi_smooth=quasi_smooth(G),
        y5_present=F.coefficient((0, 0, 5)) != 0,
        G=G,
    )
    if report.quasi_smooth:
        report.total = hodge_numbers_primitive(G)
        report.eigen = eigen_hodge_numbers(G, GALOIS_ACTION)
    return report


# lattices

# rows: l', e1..e5 in the basis (u, u', d1..d4) of U(2) + D4, found by a
# bounded search; unimodular and Gram-preserving (checked in the tests)
PAIR_TO_U2_D4 = (
    (-1, -1, -1, -1, -1, 1),
    (-1, 0, 0, -1, 0, 0),
    (-1, 0, 0, 1, 1, 1),
    (0, 0, -1, -1, 0, -1),
    (1, 0, 1, 1, 1, 0),
    (1, 1, 1, 1, 0, -1),
)

# K3 coordinates: U1 (0,1), U2 (2,3), U3 (4,5), first E8 (6..13), second E8 (14..21).
# U(2) -> {e1+e2, f1+f2}; D4 nodes (leg, centre, leg, leg) -> E8 simple roots
# a3, a4, a5, a2 (Bourbaki), i.e. E8 slots 2, 3, 4, 1.
_D4_IN_E8 = (2, 3, 4, 1)


def u2_d4_lattice() -> Lattice:
    return direct_sum(hyperbolic_plane(2), root_lattice("D", 4), label="U(2)+D4")


def degree5_pair_lattice() -> Lattice:
    """Gram of <l', e1, ..., e5>: squares -2, l'.e_i = 1, e_i.e_j = 0."""
    g = [[0] * 6 for _ in range(6)]
    for i in range(6):
        g[i][i] = -2
    for i in range(1, 6):
        g[0][i] = g[i][0] = 1
    return Lattice(g, "M")


def hyperplane_class() -> tuple:
    """2l' + e1 + ... + e5 in the basis of ``degree5_pair_lattice``."""
    return (2, 1, 1, 1, 1, 1)


def u2_d4_in_k3() -> tuple:
    """Rows embedding the basis of U(2)+D4 into the K3 lattice."""
    rows = []
    for pair in ((0, 2), (1, 3)):
        v = [0] * 22
        for i in pair:
            v[i] = 1
        rows.append(v)
    for slot in _D4_IN_E8:
        v = [0] * 22
        v[6 + slot] = 1
        rows.append(v)
    return tuple(tuple(r) for r in rows)


def pair_lattice_embedding() -> SublatticeEmbedding:
    """M inside the K3 lattice, rows l', e1..e5."""
    base = u2_d4_in_k3()
    rows = [
        tuple(sum(c * base[k][t] for k, c in enumerate(coeffs)) for t in range(22))
        for coeffs in PAIR_TO_U2_D4
    ]
    return SublatticeEmbedding(k3_lattice(), rows)


def transcendental_reference() -> Lattice:
    return direct_sum(
        hyperbolic_plane(), hyperbolic_plane(2), root_lattice("D", 4), e8(), label="U+U(2)+D4+E8"
    )


@dataclass
class LatticeSplitReport:
    M_gram: Lattice
    T_gram: Lattice
    M_primitive: bool
    T_primitive: bool
    T_signature: tuple
    T_discriminant_group: list
    genus_M_ok: bool
    genus_T_ok: bool
    h_square_is_2: bool
    h_dot_l_is_1: bool
    T_basis: tuple = field(repr=False, default=())

    @property
    def all_ok(self) -> bool:
        return all(
            (
                self.M_primitive,
                self.T_primitive,
                self.T_signature == (2, 14, 0),
                self.genus_M_ok,
                self.genus_T_ok,
                self.h_square_is_2,
                self.h_dot_l_is_1,
            )
        )

    def to_dict(self) -> dict:
        return {
            "M_gram": self.M_gram.to_json(),
            "T_gram": self.T_gram.to_json(),
            "T_rank": self.T_gram.rank,
            "M_primitive": self.M_primitive,
            "T_primitive": self.T_primitive,
            "T_signature": list(self.T_signature),
            "T_discriminant_group": list(self.T_discriminant_group),
            "genus_M_ok": self.genus_M_ok,
            "genus_T_ok": self.genus_T_ok,
            "h_square_is_2": self.h_square_is_2,
            "h_dot_l_is_1": self.h_dot_l_is_1,
        }


def k3_orthogonal_split() -> LatticeSplitReport:
    emb = pair_lattice_embedding()
    M = emb.lattice("M")
    comp = orthogonal_complement(emb)
    T = comp.lattice("T")
    k3 = emb.ambient
    h = [sum(c * emb.basis[k][t] for k, c in enumerate(hyperplane_class())) for t in range(22)]
    l_prime = emb.basis[0]
    return LatticeSplitReport(
        M_gram=M,
        T_gram=T,
        M_primitive=is_primitive(emb),
        T_primitive=is_primitive(comp),
        T_signature=signature(T),
        T_discriminant_group=discriminant_group(T),
        genus_M_ok=M.gram == degree5_pair_lattice().gram and same_genus(M, u2_d4_lattice()),
        genus_T_ok=same_genus(T, transcendental_reference()),
        h_square_is_2=k3.norm(h) == 2,
        h_dot_l_is_1=k3.inner(h, l_prime) == 1,
        T_basis=comp.basis,
    )


def transcendental_lattice() -> Lattice:
    return orthogonal_complement(pair_lattice_embedding()).lattice("T")


# moduli counts


def moduli_dimensions() -> dict:
    """Two independent counts of the moduli dimension of special Horikawa surfaces.

    branch data: quintics plus two lines in P^2, modulo PGL(3).
    hypersurface: coefficients of F modulo the automorphisms of P(1,1,2,5)
    preserving the shape z^2 = F(x0^2, x1^2, y).
    """
    plane = WeightedRing(("u", "v", "w"), (1, 1, 1))
    quintics = len(monomials_of_degree(plane, 5))
    lines = len(monomials_of_degree(plane, 1))
    pgl3 = 3**2 - 1
    branch_data = (quintics - 1) + 2 * (lines - 1) - pgl3

    coeffs_of_F = len(monomials_of_degree(QUINTIC_RING, 10))
    # [x0, x1, y, z] -> [a x0, b x1, c y + d x0^2 + e x1^2, z]: two scalings plus
    # the Galois-invariant weight-2 monomials available to y
    scalings = 2
    weight2_invariant = [
        m
        for m in monomials_of_degree(WeightedRing(("x0", "x1", "y"), (1, 1, 2)), 2)
        if m[0] % 2 == 0 and m[1] % 2 == 0
    ]
    hypersurface = coeffs_of_F - (scalings + len(weight2_invariant))
    return {"branch_data": branch_data, "hypersurface": hypersurface}

