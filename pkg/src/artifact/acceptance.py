"""Exit criteria for the toolkit, runnable without pytest (``artifact selftest``)."""

from __future__ import annotations

import random
import time
from math import prod
from dataclasses import dataclass

from .hodge import eigen_hodge_numbers, hodge_numbers_primitive
from .jacobian import (
    graded_quotient_dim,
    hilbert_series_closed_form,
    jacobian_context,
    jacobian_generator_degrees,
    quasi_smooth,
)
from .lattice import (
    SublatticeEmbedding,
    discriminant_form,
    discriminant_group,
    is_primitive,
    orthogonal_complement,
    same_genus,
    signature,
)
from .polyring import WeightedRing, parse_polynomial
from .sampling import (
    DEFAULT_SEED,
    random_even_lattice,
    random_invariant_pair,
    random_quasi_smooth,
    random_quintic,
    random_sublattice_basis,
)
from .scenarios import (
    CHI0,
    CHI1,
    GALOIS_ACTION,
    HORIKAWA_RING,
    degree5_pair_lattice,
    horikawa_surface,
    hyperplane_class,
    k3_orthogonal_split,
    moduli_dimensions,
    u2_d4_lattice,
)

FERMAT_HORIKAWA = "z^2 - x0^10 - x1^10 - y^5"
EXPECTED_TOTAL = [2, 28, 2]
EXPECTED_EIGEN = [1, 14, 1]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.title} ({self.seconds:.2f}s): {self.detail}"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
        }


def _expected_split(eigen) -> bool:
    zero = [0, 0, 0]
    return all(
        v == (EXPECTED_EIGEN if c in (CHI0, CHI1) else zero) for c, v in eigen.characters.items()
    )


def criterion_1(seed=DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    G = parse_polynomial(FERMAT_HORIKAWA, HORIKAWA_RING)
    qs = quasi_smooth(G)
    total = hodge_numbers_primitive(G)
    eigen = eigen_hodge_numbers(G, GALOIS_ACTION)
    elapsed = time.perf_counter() - start
    ok = qs and total == EXPECTED_TOTAL and _expected_split(eigen) and elapsed < 5.0
    detail = (
        f"quasi_smooth={qs} total={total} chi0={eigen.characters[CHI0]} "
        f"chi1={eigen.characters[CHI1]} nonzero={sorted(eigen.nonzero())}"
    )
    return CriterionResult(1, "Horikawa Fermat pipeline", ok, detail, elapsed)


def criterion_2(seed=DEFAULT_SEED, members=10) -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    passed, rejected, bad = 0, 0, []
    while passed < members:
        F = random_quintic(rng)
        report = horikawa_surface(F)
        if not report.quasi_smooth:
            rejected += 1
            if report.total is not None or report.eigen is not None:
                bad.append(f"non-quasi-smooth F was computed: {F}")
            continue
        passed += 1
        if not (report.y5_present and report.total == EXPECTED_TOTAL and _expected_split(report.eigen)):
            bad.append(f"F={F}: total={report.total} eigen={report.eigen.characters}")
    ok = not bad
    detail = f"{passed} quasi-smooth members reproduced [2,28,2] = chi0 [1,14,1] + chi1 [1,14,1]; {rejected} rejected"
    if bad:
        detail += "; mismatches: " + "; ".join(bad[:3])
    return CriterionResult(2, "Randomized Horikawa members", ok, detail, time.perf_counter() - start)


def criterion_3(seed=DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    P3 = WeightedRing(("x", "y", "z", "w"), (1, 1, 1, 1))
    quartic = hodge_numbers_primitive(parse_polynomial("x^4 + y^4 + z^4 + w^4", P3))
    cubic = hodge_numbers_primitive(parse_polynomial("x^3 + y^3 + z^3 + w^3", P3))
    ok = quartic == [1, 19, 1] and cubic == [0, 6, 0]
    return CriterionResult(
        3, "Classical cross-checks", ok, f"quartic={quartic} cubic={cubic}", time.perf_counter() - start
    )


def _oracle_agrees(G) -> tuple:
    ctx = jacobian_context(G)
    top = ctx.sigma + max(G.ring.weights)
    computed = [graded_quotient_dim(ctx, k) for k in range(top + 1)]
    closed = hilbert_series_closed_form(G.ring, jacobian_generator_degrees(G), top)
    body = computed[: ctx.sigma + 1]
    return computed == closed, body == body[::-1]


def criterion_4(seed=DEFAULT_SEED, samples=20) -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    cases = [parse_polynomial(FERMAT_HORIKAWA, HORIKAWA_RING)]
    cases += [random_quasi_smooth(rng, max_rank=4, max_weight=5) for _ in range(samples)]
    failures = []
    for G in cases:
        agree, palindrome = _oracle_agrees(G)
        if not (agree and palindrome):
            failures.append(f"{G.ring}: {G} (series={agree}, palindrome={palindrome})")
    ok = not failures
    detail = f"{len(cases)} polynomials, {len(failures)} failures"
    if failures:
        detail += ": " + "; ".join(failures[:3])
    return CriterionResult(4, "Oracle equivalence", ok, detail, time.perf_counter() - start)


def criterion_5(seed=DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    M = degree5_pair_lattice()
    h = hyperplane_class()
    l_prime = (1, 0, 0, 0, 0, 0)
    checks = {
        "det": M.det == -16,
        "signature": signature(M) == (1, 5, 0),
        "discriminant": discriminant_group(M) == [2, 2, 2, 2],
        "h^2=2": M.norm(h) == 2,
        "h.l'=1": M.inner(h, l_prime) == 1,
        "genus U(2)+D4": same_genus(M, u2_d4_lattice()),
    }
    detail = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items())
    return CriterionResult(5, "Pair lattice M", all(checks.values()), detail, time.perf_counter() - start)


def criterion_6(seed=DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    r = k3_orthogonal_split()
    checks = {
        "M primitive": r.M_primitive,
        "rank T=16": r.T_gram.rank == 16,
        "signature (2,14)": r.T_signature == (2, 14, 0),
        "A_T=(Z/2)^4": r.T_discriminant_group == [2, 2, 2, 2],
        "genus U+U(2)+D4+E8": r.genus_T_ok,
    }
    detail = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items())
    return CriterionResult(6, "K3 split", all(checks.values()), detail, time.perf_counter() - start)


def criterion_7(seed=DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    dims = moduli_dimensions()
    ok = dims["branch_data"] == 16 and dims["hypersurface"] == 16
    return CriterionResult(7, "Moduli dimensions", ok, str(dims), time.perf_counter() - start)


def lattice_property_failures(L, rng) -> list:
    failures = []
    det = L.det
    if abs(det) != prod(discriminant_group(L)):
        failures.append("|A_L| != |det|")
    pos, neg, zero = signature(L)
    if pos + neg + zero != L.rank or zero != 0 or (det > 0) != (neg % 2 == 0):
        failures.append(f"signature {pos, neg, zero} vs det {det}")
    if L.rank > 1:
        k = rng.randint(1, L.rank - 1)
        sub = SublatticeEmbedding(L, random_sublattice_basis(rng, L.rank, k))
        comp = orthogonal_complement(sub)
        for b in sub.basis:
            for c in comp.basis:
                if L.inner(b, c) != 0:
                    failures.append("complement not orthogonal")
        if not is_primitive(comp):
            failures.append("complement not primitive")
        if comp.rank + sub.rank != L.rank:
            failures.append("complement rank")
    form = discriminant_form(L)
    r = len(form.invariant_factors)
    for i in range(r):
        for j in range(r):
            x, y = form.basis_coeffs(i), form.basis_coeffs(j)
            s = tuple(a + b for a, b in zip(x, y))
            lhs = form.q(s) - form.q(x) - form.q(y)
            if (lhs - 2 * form.b(x, y)) % 2 != 0:
                failures.append("polarization identity")
    return failures


def criterion_8(seed=DEFAULT_SEED, lattices=50, actions=10) -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    lattice_failures = []
    for _ in range(lattices):
        L = random_even_lattice(rng, max_rank=8)
        for f in lattice_property_failures(L, rng):
            lattice_failures.append(f"{L.gram}: {f}")
    eigen_failures = []
    for _ in range(actions):
        G, action = random_invariant_pair(rng)
        report = eigen_hodge_numbers(G, action)
        summed = [sum(v[i] for v in report.characters.values()) for i in range(len(report.total))]
        if summed != report.total or report.total != hodge_numbers_primitive(G):
            eigen_failures.append(f"{G} under {action}")
    ok = not lattice_failures and not eigen_failures
    detail = (
        f"{lattices} random even lattices ({len(lattice_failures)} failures), "
        f"{actions} random diagonal actions ({len(eigen_failures)} failures)"
    )
    if not ok:
        detail += ": " + "; ".join((lattice_failures + eigen_failures)[:3])
    return CriterionResult(8, "Property suites", ok, detail, time.perf_counter() - start)


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


def run_all(seed=DEFAULT_SEED, echo=None) -> list:
    results = []
    for criterion in CRITERIA:
        result = criterion(seed=seed)
        if echo is not None:
            echo(result.line())
        results.append(result)
    return results
