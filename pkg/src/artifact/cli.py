"""Command-line front end.

Every subcommand prints a text report, or with ``--json`` a single JSON
object carrying ``"schema": 1``.  Exit status: 0 on success, 1 on domain
errors (message on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import acceptance
from .errors import ArtifactError, NotQuasiSmoothError
from .hodge import DiagonalAction, eigen_hodge_numbers, hodge_numbers_primitive
from .jacobian import (
    hilbert_series_closed_form,
    jacobian_context,
    jacobian_generator_degrees,
    quasi_smooth,
    quotient_dims,
)
from .lattice import (
    DEFAULT_GENUS_BOUND,
    Lattice,
    SublatticeEmbedding,
    discriminant_form,
    discriminant_group,
    is_primitive,
    orthogonal_complement,
    same_genus,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .polyring import WeightedRing, parse_polynomial, parse_polynomial_file, weighted_degree
from .sampling import DEFAULT_SEED, random_quintic
from .scenarios import (
    QUINTIC_RING,
    degree5_pair_lattice,
    horikawa_surface,
    hyperplane_class,
    k3_orthogonal_split,
    moduli_dimensions,
    transcendental_lattice,
    u2_d4_lattice,
)

SCHEMA_VERSION = 1
NAMED_LATTICES = {"M": degree5_pair_lattice, "T": transcendental_lattice}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# input helpers


def _load_polynomial(args):
    ring = WeightedRing.parse(args.ring) if args.ring else None
    if args.poly is not None:
        if ring is None:
            raise UsageError("--poly needs --ring")
        return parse_polynomial(args.poly, ring)
    with open(args.poly_file, encoding="utf-8") as fh:
        text = fh.read()
    _, G = parse_polynomial_file(text, ring)
    return G


def _int_matrix(text: str, what: str) -> list:
    data = json.loads(text)
    ok = isinstance(data, list) and all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
        for row in data
    )
    if not ok or not data or len({len(row) for row in data}) != 1:
        raise ValueError(f"{what} must be a non-empty JSON list of equal-length integer rows")
    return data


def _lattice(text: str) -> Lattice:
    """A lattice name (``U+U2+D4``, ``K3``, ``M``...) or a JSON Gram matrix."""
    if text.lstrip().startswith("["):
        return Lattice(_int_matrix(text, "Gram matrix"), "custom")
    return standard_lattice(text, NAMED_LATTICES)


# output helpers


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        body = {"schema": SCHEMA_VERSION, **_jsonable(payload)}
        print(json.dumps(body, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _b(x: bool) -> str:
    return "true" if x else "false"


def _rows(matrix) -> list:
    return ["  " + " ".join(f"{x:>3}" for x in row) for row in matrix]


# polynomial commands


def cmd_hodge(args) -> int:
    G = _load_polynomial(args)
    hodge = hodge_numbers_primitive(G)
    payload = {"ring": G.ring.declaration(), "G": str(G), "degree": weighted_degree(G), "hodge": hodge}
    _emit(
        args,
        payload,
        [
            f"ring: {G.ring}",
            f"G = {G}",
            f"degree: {payload['degree']}",
            f"primitive hodge numbers: {hodge}",
        ],
    )
    return 0


def cmd_eigen(args) -> int:
    G = _load_polynomial(args)
    action = DiagonalAction.parse(args.action)
    report = eigen_hodge_numbers(G, action)
    payload = {"ring": G.ring.declaration(), "G": str(G), **report.to_dict()}
    lines = [f"ring: {G.ring}", f"G = {G}", f"group orders: {list(report.orders)}"]
    for c, v in sorted(report.characters.items()):
        lines.append(f"character {list(c)}: {v}")
    lines.append(f"total: {report.total}")
    _emit(args, payload, lines)
    return 0


def cmd_quasismooth(args) -> int:
    G = _load_polynomial(args)
    qs = quasi_smooth(G)
    payload = {"ring": G.ring.declaration(), "G": str(G), "quasi_smooth": qs}
    _emit(args, payload, [f"ring: {G.ring}", f"G = {G}", f"quasi-smooth: {_b(qs)}"])
    return 0


def cmd_hilbert(args) -> int:
    if args.poly is not None or args.poly_file is not None:
        G = _load_polynomial(args)
        ring, degrees = G.ring, jacobian_generator_degrees(G)
        ctx = jacobian_context(G)
        up_to = args.up_to if args.up_to is not None else ctx.sigma + max(ring.weights)
    else:
        if not args.ring or not args.degrees:
            raise UsageError("hilbert needs --poly/--poly-file or both --ring and --degrees")
        ring = WeightedRing.parse(args.ring)
        degrees = [int(x) for x in args.degrees.split(",")]
        if args.up_to is None:
            raise UsageError("--up-to is required with --degrees")
        G, up_to = None, args.up_to
    if up_to < 0:
        raise ValueError("--up-to must be non-negative")
    closed = hilbert_series_closed_form(ring, degrees, up_to)
    payload = {"ring": ring.declaration(), "generator_degrees": list(degrees), "up_to": up_to, "closed_form": closed}
    lines = [f"ring: {ring}", f"generator degrees: {list(degrees)}", f"closed form: {closed}"]
    if G is not None:
        computed = quotient_dims(ctx, up_to)
        payload["computed"] = computed
        payload["agree"] = computed == closed
        lines += [f"computed:    {computed}", f"agree: {_b(computed == closed)}"]
    _emit(args, payload, lines)
    return 0


# lattice commands


def _lattice_summary(L: Lattice) -> dict:
    out = {
        "label": str(L),
        "rank": L.rank,
        "det": L.det,
        "even": L.is_even,
        "signature": list(signature(L)),
        "gram": L.to_json(),
    }
    if L.is_nondegenerate:
        out["discriminant_group"] = discriminant_group(L)
    return out


def cmd_lattice_info(args) -> int:
    L = _lattice(args.a)
    s = _lattice_summary(L)
    lines = [
        f"lattice: {s['label']}",
        f"rank: {s['rank']}",
        f"det: {s['det']}",
        f"even: {_b(s['even'])}",
        f"signature: {tuple(s['signature'])}",
    ]
    if "discriminant_group" in s:
        lines.append(f"discriminant group: {s['discriminant_group']}")
    _emit(args, s, lines)
    return 0


def cmd_lattice_snf(args) -> int:
    if args.matrix is not None:
        M = _int_matrix(args.matrix, "--matrix")
    elif args.a is not None:
        M = _lattice(args.a).to_json()
    else:
        raise UsageError("lattice snf needs --matrix or --a")
    D, U, V = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    payload = {"diagonal": diag, "D": D, "U": U, "V": V}
    _emit(
        args,
        payload,
        [f"diagonal: {diag}", "U:", *_rows(U), "V:", *_rows(V)],
    )
    return 0


def cmd_lattice_disc(args) -> int:
    L = _lattice(args.a)
    form = discriminant_form(L)
    payload = {"label": str(L), **form.to_dict()}
    lines = [f"lattice: {L}", f"discriminant group: {list(form.invariant_factors)}"]
    for i, (d, qv) in enumerate(zip(form.invariant_factors, payload["q"])):
        lines.append(f"  g{i}: order {d}, q = {qv} mod 2")
    if payload["b"]:
        lines.append("b (mod 1):")
        lines += ["  " + " ".join(f"{x:>4}" for x in row) for row in payload["b"]]
    _emit(args, payload, lines)
    return 0


def cmd_lattice_complement(args) -> int:
    ambient = _lattice(args.ambient)
    emb = SublatticeEmbedding(ambient, _int_matrix(args.basis, "--basis"))
    comp = orthogonal_complement(emb)
    C = comp.lattice()
    payload = {
        "ambient": str(ambient),
        "sublattice_primitive": is_primitive(emb),
        "basis": [list(r) for r in comp.basis],
        "gram": C.to_json(),
        "rank": C.rank,
        "det": C.det,
        "signature": list(signature(C)),
    }
    lines = [
        f"ambient: {ambient}",
        f"sublattice primitive: {_b(payload['sublattice_primitive'])}",
        f"complement rank: {C.rank}",
        "complement basis:",
        *_rows(comp.basis),
        "complement gram:",
        *_rows(C.gram),
        f"det: {C.det}",
        f"signature: {signature(C)}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_lattice_genus(args) -> int:
    A, B = _lattice(args.a), _lattice(args.b)
    same = same_genus(A, B, bound=args.bound)
    payload = {"a": str(A), "b": str(B), "same_genus": same}
    _emit(args, payload, [f"a: {A}", f"b: {B}", f"same genus: {_b(same)}"])
    return 0


# scenarios


def cmd_scenario_horikawa(args) -> int:
    if args.random:
        F = random_quintic(random.Random(args.seed))
    else:
        F = parse_polynomial(args.quintic, QUINTIC_RING)
    report = horikawa_surface(F)
    payload = {"F": str(F), **report.to_dict()}
    lines = [
        f"F = {F}",
        f"G = {report.G}",
        f"w^5 present: {_b(report.y5_present)}",
        f"quasi-smooth: {_b(report.quasi_smooth)}",
    ]
    if report.quasi_smooth:
        lines.append(f"primitive hodge numbers: {report.total}")
        for name, v in report.to_dict()["eigen"].items():
            lines.append(f"  {name}: {v}")
    _emit(args, payload, lines)
    if not report.quasi_smooth:
        raise NotQuasiSmoothError("G is not quasi-smooth; Hodge numbers were not computed")
    return 0


def cmd_scenario_pair_lattice(args) -> int:
    M = degree5_pair_lattice()
    h = hyperplane_class()
    l_prime = (1, 0, 0, 0, 0, 0)
    payload = {
        **_lattice_summary(M),
        "h": list(h),
        "h_square": M.norm(h),
        "h_dot_l": M.inner(h, l_prime),
        "same_genus_U2_D4": same_genus(M, u2_d4_lattice()),
    }
    lines = [
        "M = <l', e1, ..., e5>",
        *_rows(M.gram),
        f"det: {payload['det']}",
        f"signature: {tuple(payload['signature'])}",
        f"discriminant group: {payload['discriminant_group']}",
        f"h = 2l' + e1 + ... + e5: h^2 = {payload['h_square']}, h.l' = {payload['h_dot_l']}",
        f"same genus as U(2)+D4: {_b(payload['same_genus_U2_D4'])}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_scenario_k3_split(args) -> int:
    r = k3_orthogonal_split()
    payload = {**r.to_dict(), "all_ok": r.all_ok}
    lines = [
        f"M primitive in K3: {_b(r.M_primitive)}",
        f"T rank: {r.T_gram.rank}",
        f"T signature: {r.T_signature}",
        f"T discriminant group: {r.T_discriminant_group}",
        f"T same genus as U+U(2)+D4+E8: {_b(r.genus_T_ok)}",
        f"M same genus as U(2)+D4: {_b(r.genus_M_ok)}",
        f"h^2 = 2: {_b(r.h_square_is_2)}",
        f"h.l' = 1: {_b(r.h_dot_l_is_1)}",
        f"all checks: {_b(r.all_ok)}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_scenario_moduli(args) -> int:
    dims = moduli_dimensions()
    _emit(args, dims, [f"{k}: {v}" for k, v in dims.items()])
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all(seed=args.seed)
    ok = all(r.passed for r in results)
    payload = {"seed": args.seed, "passed": ok, "criteria": [r.to_dict() for r in results]}
    _emit(args, payload, [r.line() for r in results] + [f"all passed: {_b(ok)}"])
    return 0 if ok else 1


# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    poly = _Parser(add_help=False)
    poly.add_argument("--ring", help='ring declaration "x0,x1,y,z;1,1,2,5"')
    src = poly.add_mutually_exclusive_group()
    src.add_argument("--poly", help="polynomial text")
    src.add_argument("--poly-file", help="file with an optional 'vars: ...; weights: ...' header")

    parser = _Parser(prog="artifact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hodge", parents=[common, poly], help="primitive Hodge numbers")
    p.set_defaults(func=cmd_hodge, need_poly=True)
    p = sub.add_parser("eigen", parents=[common, poly], help="Hodge numbers split by character")
    p.add_argument("--action", required=True, help='diagonal action "2:1,0,0,0;2:0,1,0,0"')
    p.set_defaults(func=cmd_eigen, need_poly=True)
    p = sub.add_parser("quasismooth", parents=[common, poly], help="quasi-smoothness test")
    p.set_defaults(func=cmd_quasismooth, need_poly=True)
    p = sub.add_parser("hilbert", parents=[common, poly], help="Hilbert function of R/J")
    p.add_argument("--degrees", help="generator degrees, comma separated")
    p.add_argument("--up-to", type=int)
    p.set_defaults(func=cmd_hilbert, need_poly=False)

    lat = sub.add_parser("lattice", help="integral lattice tools")
    lsub = lat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = lsub.add_parser("info", parents=[common])
    p.add_argument("--a", required=True, help="lattice name (U+U2+D4, K3, M, T) or JSON Gram")
    p.set_defaults(func=cmd_lattice_info)
    p = lsub.add_parser("snf", parents=[common])
    p.add_argument("--matrix", help="JSON integer matrix")
    p.add_argument("--a", help="lattice whose Gram matrix to reduce")
    p.set_defaults(func=cmd_lattice_snf)
    p = lsub.add_parser("disc", parents=[common])
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_lattice_disc)
    p = lsub.add_parser("complement", parents=[common])
    p.add_argument("--ambient", required=True)
    p.add_argument("--basis", required=True, help="JSON list of sublattice basis rows")
    p.set_defaults(func=cmd_lattice_complement)
    p = lsub.add_parser("genus", parents=[common])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_GENUS_BOUND)
    p.set_defaults(func=cmd_lattice_genus)

    sc = sub.add_parser("scenario", help="special Horikawa surface pipelines")
    ssub = sc.add_subparsers(dest="scenario", required=True, parser_class=_Parser)
    p = ssub.add_parser("horikawa", parents=[common])
    p.add_argument("--quintic", default="u^5+v^5+w^5", help="F(u, v, w), a plane quintic")
    p.add_argument("--random", action="store_true", help="use a random quintic instead")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_scenario_horikawa)
    for name, func in (
        ("pair-lattice", cmd_scenario_pair_lattice),
        ("k3-split", cmd_scenario_k3_split),
        ("moduli", cmd_scenario_moduli),
    ):
        ssub.add_parser(name, parents=[common]).set_defaults(func=func)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "need_poly", False) and args.poly is None and args.poly_file is None:
            raise UsageError(f"artifact {args.command}: one of --poly or --poly-file is required")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    except (ArtifactError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
