"""Seeded random inputs for the property suites and ``selftest``."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm

from .hodge import DiagonalAction
from .jacobian import quasi_smooth, socle_degree
from .lattice import Lattice
from .linalg import dense_rank
from .polyring import Polynomial, WeightedRing, monomials_of_degree
from .scenarios import QUINTIC_RING

DEFAULT_SEED = 20240531
_NAMES = ("x", "y", "z", "w")


def random_rational(rng: random.Random, nonzero=False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if c or not nonzero:
            return c


def random_quintic(rng: random.Random, density: float = 1.0) -> Polynomial:
    """Random quintic F(u, v, w) with a nonzero w^5 coefficient."""
    terms = {
        m: random_rational(rng) for m in monomials_of_degree(QUINTIC_RING, 10) if rng.random() < density
    }
    terms[(0, 0, 5)] = random_rational(rng, nonzero=True)
    return Polynomial(QUINTIC_RING, terms)


def random_ring_and_degree(
    rng: random.Random, max_rank=4, max_weight=5, min_rank=2, max_degree=12, max_monomials=120
):
    """A weighted ring with a degree d that every weight divides, d > max weight.

    Rings whose top scanned degree (socle + max weight) carries more than
    ``max_monomials`` monomials are rejected to keep the matrices small.
    """
    while True:
        n = rng.randint(min_rank, max_rank)
        weights = tuple(sorted(rng.randint(1, max_weight) for _ in range(n)))
        base = lcm(*weights)
        options = [c * base for c in (1, 2, 3) if max(weights) < c * base <= max_degree]
        if not options:
            continue
        ring = WeightedRing(_NAMES[:n], weights)
        d = rng.choice(options)
        top = socle_degree(ring, d) + max(weights)
        if len(monomials_of_degree(ring, top)) <= max_monomials:
            return ring, d


def _fermat_plus_noise(rng, ring, d, monomials, density):
    terms = {}
    for m in monomials:
        if rng.random() < density:
            terms[m] = random_rational(rng)
    for i, a in enumerate(ring.weights):
        m = tuple(d // a if j == i else 0 for j in range(ring.arity))
        terms[m] = random_rational(rng, nonzero=True)
    return Polynomial(ring, terms)


def random_quasi_smooth(rng: random.Random, max_rank=4, max_weight=5, min_rank=2, density=0.5):
    """A random quasi-smooth polynomial (Fermat terms plus random noise)."""
    while True:
        ring, d = random_ring_and_degree(rng, max_rank, max_weight, min_rank)
        G = _fermat_plus_noise(rng, ring, d, monomials_of_degree(ring, d), density)
        if quasi_smooth(G):
            return G


def random_invariant_pair(rng: random.Random, max_rank=4, max_weight=3, density=0.6):
    """``(G, action)``: a quasi-smooth G fixed by a random diagonal abelian action."""
    while True:
        ring, d = random_ring_and_degree(rng, max_rank, max_weight, min_rank=3, max_degree=8)
        fermat_exps = [d // a for a in ring.weights]
        orders, rows = [], []
        for _ in range(rng.randint(1, 2)):
            m = rng.choice([2, 3, 4])
            # x_i^(d/a_i) must stay invariant: e_i * d/a_i = 0 mod m
            row = []
            for f in fermat_exps:
                step = m // gcd(m, f)
                row.append(step * rng.randrange(m // step))
            orders.append(m)
            rows.append(tuple(row))
        action = DiagonalAction(tuple(orders), tuple(rows))
        zero = (0,) * len(orders)
        invariant = [m for m in monomials_of_degree(ring, d) if action.character(m) == zero]
        G = _fermat_plus_noise(rng, ring, d, invariant, density)
        if action.fixes(G) and quasi_smooth(G):
            return G, action


def random_even_lattice(rng: random.Random, max_rank=8) -> Lattice:
    while True:
        n = rng.randint(1, max_rank)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randint(-3, 3)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-2, 2)
        L = Lattice(g)
        if L.is_nondegenerate:
            return L


def random_unimodular(rng: random.Random, n: int, steps: int = 12) -> list:
    """Product of random elementary integer matrices and sign flips."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            U[0][0] *= -1
            continue
        i, j = rng.sample(range(n), 2)
        f = rng.randint(-2, 2)
        U[i] = [x + f * y for x, y in zip(U[i], U[j])]
        if rng.random() < 0.2:
            U[i] = [-x for x in U[i]]
    return U


def random_sublattice_basis(rng: random.Random, n: int, k: int) -> list:
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
        if dense_rank(rows) == k:
            return rows
