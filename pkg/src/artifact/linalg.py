"""Exact integer linear algebra: fraction-free elimination, rank, determinant.

Rows are sparse ``{column: int}`` dicts.  Rational input is cleared of
denominators first; every intermediate row is kept primitive (content 1),
which bounds coefficient growth without ever leaving the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np


def integer_row(values: Mapping) -> dict:
    """Scale a ``{col: rational}`` row to a primitive integer row."""
    items = [(k, v) for k, v in values.items() if v != 0]
    if not items:
        return {}
    den = 1
    for _, v in items:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    row = {k: int(v * den) for k, v in items}
    return _primitive(row)


def _primitive(row: dict) -> dict:
    g = gcd(*row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class RowEchelon:
    """Incrementally maintained echelon basis of a row space over Q.

    Each stored row has a distinct pivot (its smallest column) and is
    primitive with positive pivot entry.  ``add`` reduces a candidate
    against the basis and keeps the remainder when it is nonzero.
    """

    def __init__(self):
        self._rows: dict = {}

    def copy(self) -> "RowEchelon":
        other = RowEchelon()
        other._rows = dict(self._rows)
        return other

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def reduce(self, row: Mapping) -> dict:
        v = integer_row(row)
        rows = self._rows
        while v:
            p = min(v)
            r = rows.get(p)
            if r is None:
                return v
            a, b = r[p], v[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {k: a * x for k, x in v.items()}
            for k, x in r.items():
                y = out.get(k, 0) - b * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            v = _primitive(out) if out else out
        return v

    def add(self, row: Mapping) -> bool:
        """Insert ``row``; True iff it was independent of the current span."""
        v = self.reduce(row)
        if not v:
            return False
        self._rows[min(v)] = v
        return True

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping], limit: int | None = None) -> int:
    """Rank over Q of sparse rows; stops early once ``limit`` is reached."""
    ech = RowEchelon()
    for row in rows:
        ech.add(row)
        if limit is not None and ech.rank >= limit:
            break
    return ech.rank


# Mersenne prime below 2^31, so products of residues fit in int64.
# A row space that is full rank mod p is full rank over Q.
CERTIFICATE_PRIME = 2**31 - 1


def rank_mod_p(rows: Iterable[Mapping], ncols: int, p: int = CERTIFICATE_PRIME):
    """Rank of rational sparse rows reduced mod ``p``, or None if a denominator vanishes mod p.

    This is a lower bound for the rank over Q, so it is only used to
    certify full rank; anything less falls back to exact elimination.
    Dense elimination in numpy; ``p`` must stay below 2^31.
    """
    rows = list(rows)
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for k, x in row.items():
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    return None
                x = x.numerator * pow(x.denominator, -1, p)
            a[i, k] = x % p
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = a[r + 1 :, c]
        hit = np.flatnonzero(below) + r + 1
        if hit.size:
            a[hit] = (a[hit] - a[hit, c : c + 1] * a[r]) % p
        r += 1
    return r


def dense_rank(matrix: Sequence[Sequence]) -> int:
    return rank({j: x for j, x in enumerate(row) if x} for row in matrix)


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]
