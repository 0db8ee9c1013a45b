"""Sparse polynomials with exact rational coefficients over a weighted ring.

A :class:`WeightedRing` fixes variable names and positive integer weights.
A :class:`Polynomial` maps exponent tuples (monomials) to nonzero
:class:`fractions.Fraction` coefficients.  Every enumeration in the package
uses the same monomial order: descending lexicographic on exponent tuples,
so ``x0`` comes before ``x1`` and ``x0^2`` before ``x0*x1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    NonHomogeneousError,
    PolynomialSyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)

Monomial = tuple  # tuple[int, ...], one exponent per ring variable

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


@dataclass(frozen=True)
class WeightedRing:
    variables: tuple
    weights: tuple

    def __post_init__(self):
        variables = tuple(self.variables)
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "weights", weights)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(variables) != len(weights):
            raise ValueError(f"{len(variables)} variables but {len(weights)} weights")
        if any(w < 1 for w in weights):
            raise ValueError(f"weights must be positive integers, got {list(weights)}")
        if len(set(variables)) != len(variables):
            raise ValueError(f"variable names must be distinct, got {list(variables)}")
        for name in variables:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")

    @classmethod
    def parse(cls, decl: str) -> "WeightedRing":
        """Read ``"x0,x1,y,z;1,1,2,5"``."""
        try:
            names, weights = decl.split(";")
            variables = [v.strip() for v in names.split(",")]
            weights = [int(w) for w in weights.split(",")]
        except ValueError as exc:
            raise ValueError(f"ring declaration must look like 'x,y;1,2', got {decl!r}") from exc
        return cls(tuple(variables), tuple(weights))

    @property
    def arity(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def degree(self, exponents: Sequence[int]) -> int:
        return sum(a * e for a, e in zip(self.weights, exponents))

    def declaration(self) -> str:
        return ",".join(self.variables) + ";" + ",".join(map(str, self.weights))

    def __str__(self):
        return f"P({','.join(map(str, self.weights))})[{','.join(self.variables)}]"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial; arithmetic returns new objects."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: WeightedRing, terms: Mapping | Iterable = ()):
        self.ring = ring
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        n = ring.arity
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"monomial {mono} does not fit ring of arity {n}")
            acc[mono] = acc.get(mono, 0) + _as_fraction(coeff)
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(0,) * ring.arity: c})

    @classmethod
    def variable(cls, ring, name):
        i = ring.index(name)
        exps = [0] * ring.arity
        exps[i] = 1
        return cls(ring, {tuple(exps): 1})

    @classmethod
    def monomial(cls, ring, exponents, coeff=1):
        return cls(ring, {tuple(exponents): coeff})

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # container protocol

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def monomials(self) -> list:
        return sorted(self._terms, reverse=True)

    def items(self):
        """Terms in the package monomial order."""
        return [(m, self._terms[m]) for m in self.monomials()]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ring, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.ring)
            return Polynomial._raw(self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and grading

    def diff(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.ring, out)

    def degrees(self) -> set:
        return {self.ring.degree(m) for m in self._terms}

    def weighted_degree(self) -> int:
        return weighted_degree(self)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def substitute(self, images: Sequence["Polynomial"], target: WeightedRing | None = None):
        """Replace variable i by ``images[i]`` (all in ``target``)."""
        if len(images) != self.ring.arity:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        result = Polynomial.zero(target)
        powers: dict = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def to_ring(self, ring: WeightedRing) -> "Polynomial":
        """Same terms, reinterpreted in a ring of equal arity (e.g. new weights)."""
        if ring.arity != self.ring.arity:
            raise ValueError("arity mismatch")
        return Polynomial._raw(ring, dict(self._terms))

    # printing

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.ring.declaration()!r}, {str(self)!r})"


def weighted_degree(p: Polynomial) -> int:
    """Weighted degree of a homogeneous polynomial.

    Raises :class:`ZeroPolynomialError` for 0 and :class:`NonHomogeneousError`
    (carrying the distinct degrees) for mixed input.
    """
    if not p:
        raise ZeroPolynomialError("the zero polynomial has no degree")
    degs = p.degrees()
    if len(degs) > 1:
        raise NonHomogeneousError(degs)
    return degs.pop()


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


def monomials_of_degree(ring: WeightedRing, k: int) -> list:
    """All exponent tuples of weighted degree ``k``, descending lex order."""
    if k < 0:
        return []
    return list(_monomials(ring.weights, k))


@lru_cache(maxsize=4096)
def _monomials(weights: tuple, k: int) -> tuple:
    if len(weights) == 1:
        a = weights[0]
        return ((k // a,),) if k % a == 0 else ()
    a, rest = weights[0], weights[1:]
    out = []
    for e in range(k // a, -1, -1):
        for tail in _monomials(rest, k - a * e):
            out.append((e,) + tail)
    return tuple(out)


# text form


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(ring: WeightedRing, mono) -> str:
    factors = []
    for name, e in zip(ring.variables, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form; ``parse_polynomial`` inverts it exactly."""
    if not p:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_monomial(p.ring, m) if any(m) else ""
        if not body:
            text = _format_coeff(a)
        elif a == 1:
            text = body
        else:
            text = f"{_format_coeff(a)}*{body}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + text)
        else:
            parts.append(f" {sign} {text}")
    return "".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^])|(?P<bad>\S))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise PolynomialSyntaxError(f"unexpected character {m.group(kind)!r}", start, src)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: WeightedRing):
        self.src = src
        self.ring = ring
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise PolynomialSyntaxError(f"{msg}, found {found}", tok[2], self.src)

    def parse(self) -> Polynomial:
        terms: dict = {}
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            mono, coeff = self.term()
            terms[mono] = terms.get(mono, 0) + sign * coeff
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[:2] in (("op", "+"), ("op", "-")):
                sign = -1 if self.take()[1] == "-" else 1
                continue
            self.error("expected '+', '-' or end of input")
        return Polynomial(self.ring, terms)

    def term(self):
        exps = [0] * self.ring.arity
        coeff = Fraction(1)
        while True:
            tok = self.take()
            if tok[0] == "int":
                num = int(tok[1])
                if self.peek()[:2] == ("op", "/"):
                    self.take()
                    den_tok = self.take()
                    if den_tok[0] != "int":
                        self.error("expected integer denominator", den_tok)
                    if int(den_tok[1]) == 0:
                        raise PolynomialSyntaxError("zero denominator", den_tok[2], self.src)
                    coeff *= Fraction(num, int(den_tok[1]))
                else:
                    coeff *= num
            elif tok[0] == "name":
                if tok[1] not in self.ring.variables:
                    raise UnknownVariableError(tok[1], tok[2])
                i = self.ring.variables.index(tok[1])
                e = 1
                if self.peek()[:2] == ("op", "^"):
                    self.take()
                    exp_tok = self.take()
                    if exp_tok[0] != "int":
                        raise PolynomialSyntaxError(
                            f"exponent must be a non-negative integer, found "
                            f"{exp_tok[1] or 'end of input'!r}",
                            exp_tok[2],
                            self.src,
                        )
                    e = int(exp_tok[1])
                exps[i] += e
            else:
                self.error("expected a number or a variable", tok)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                continue
            return tuple(exps), coeff


def parse_polynomial(src: str, ring: WeightedRing) -> Polynomial:
    """Parse ``src`` (terms joined by +/-, factors joined by *) in ``ring``."""
    if not src.strip():
        raise PolynomialSyntaxError("empty input", 0, src)
    return _Parser(src, ring).parse()


_HEADER_RE = re.compile(
    r"^\s*vars\s*:\s*(?P<vars>[^;]*);\s*weights\s*:\s*(?P<weights>[^;\n]*?)\s*;?\s*$"
)


def parse_polynomial_file(text: str, ring: WeightedRing | None = None):
    """Read a polynomial file; an optional first line declares the ring.

    Returns ``(ring, polynomial)``.  A header wins over ``ring`` only when
    ``ring`` is None; if both are given they must agree.
    """
    lines = text.splitlines()
    body_start = 0
    header_ring = None
    for idx, line in enumerate(lines):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _HEADER_RE.match(line)
        if m:
            header_ring = WeightedRing(
                tuple(v.strip() for v in m["vars"].split(",")),
                tuple(int(w) for w in m["weights"].split(",")),
            )
            body_start = idx + 1
        break
    if header_ring is not None and ring is not None and header_ring != ring:
        raise ValueError(f"file declares {header_ring.declaration()} but {ring.declaration()} was given")
    ring = ring or header_ring
    if ring is None:
        raise ValueError("no ring declaration: pass one or add a 'vars: ...; weights: ...' header")
    body = " ".join(
        line for line in lines[body_start:] if line.strip() and not line.lstrip().startswith("#")
    )
    return ring, parse_polynomial(body, ring)
