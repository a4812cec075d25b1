"""Command-line front end.

Exit codes: 0 all checks hold, 1 a law violation was found (the witness is
printed), 2 usage or parse error, 3 construction error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .calculus import FtcPair, law_suite
from .carriers import (
    BasisOverflowError,
    Carrier,
    DescriptorMismatchError,
    FiniteAlgebra,
    HurwitzAlgebra,
    ParseError,
    ScalarAlgebra,
    UnitTermError,
    mixable_shuffle_product,
    parse_tensor,
    shuffle_product,
)
from .carriers.tensor import format_tensor
from .constructions import ConstructionError
from .equivalence import (
    InvalidFtcPairError,
    check_roundtrip_ftc,
    check_roundtrip_zin,
    functor_F,
    functor_G,
)
from .laws import DEFAULT_SAMPLES, LawReport
from .rings import NotInvertibleError, RingMismatchError, ring_from_tag
from .suite import SCHEMA_VERSION, run_suite, suite_passed, to_json, to_text
from .zinbiel import InvalidIntegrationError, InvalidZinbielError, ZinbielInstance, zinbiel_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CONSTRUCTION = 0, 1, 2, 3

# how many basis elements `convert` tabulates
TABLE_SIZE = 4


class UsageError(Exception):
    pass


def parse_element(text: str, descriptor: Carrier):
    """Parse canonical element text for ``descriptor``; raises ParseError with a position."""
    return descriptor.parse(text)


# instances ------------------------------------------------------------------


def load_instance(ref: str, degree_bound: int = 12):
    """A built-in instance name, an inline JSON spec, or a path to one."""
    if corpus.instance_kind(ref) == "ftc":
        return corpus.build_ftc(ref)
    if corpus.instance_kind(ref) == "zin":
        return corpus.build_zin(ref)
    if not ref.strip().startswith("{") and not os.path.isfile(ref):
        raise UsageError(f"unknown instance {ref!r}")
    try:
        spec = corpus.load_spec(ref)
    except OSError as exc:
        raise UsageError(f"cannot read instance spec: {exc}") from None
    try:
        return corpus.build_from_spec(spec, degree_bound)
    except corpus.UnknownInstanceError as exc:
        raise UsageError(f"unknown instance {exc.args[0]!r}") from None
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed instance spec: {exc}") from None


def _require_instance(args):
    if not args.instance:
        raise UsageError(f"{args.command} needs --instance")
    return load_instance(args.instance, args.degree_bound)


# output ---------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"schemaVersion": SCHEMA_VERSION, **payload}, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _emit_reports(args, instance: str, reports: list[LawReport]) -> int:
    ok = all(r.holds for r in reports)
    payload = {"command": args.command, "instance": instance, "reports": [r.to_dict() for r in reports], "ok": ok}
    _emit(args, payload, "\n".join(str(r) for r in reports))
    return EXIT_OK if ok else EXIT_VIOLATION


def _emit_result(args, operands: list[str], result: str) -> int:
    _emit(args, {"command": args.command, "operands": operands, "result": result}, result)
    return EXIT_OK


# verbs ------------------------------------------------------------------------


def cmd_shuffle(args, kw) -> int:
    ring = ring_from_tag(args.ring)
    u, v = (parse_tensor(t, args.basis, ring) for t in args.operands)
    return _emit_result(args, args.operands, format_tensor(shuffle_product(u, v)))


def cmd_mixshuffle(args, kw) -> int:
    ring = ring_from_tag(args.ring)
    letters = FiniteAlgebra.truncated_polynomial(args.truncation, ring)
    s, t = (parse_tensor(x, letters.dim, ring) for x in args.operands)
    return _emit_result(args, args.operands, format_tensor(mixable_shuffle_product(s, t, letters)))


def cmd_hurwitz_mul(args, kw) -> int:
    H = HurwitzAlgebra(ScalarAlgebra(ring_from_tag(args.ring)))
    f, g = (parse_element(x, H) for x in args.operands)
    return _emit_result(args, args.operands, H.format(H.mul(f, g)))


def _as_zinbiel(obj) -> ZinbielInstance:
    return obj if isinstance(obj, ZinbielInstance) else functor_F(obj, verify=False)


def cmd_zinbiel(args, kw) -> int:
    z = _as_zinbiel(_require_instance(args))
    x, y = (parse_element(t, z.carrier) for t in args.operands)
    return _emit_result(args, args.operands, z.carrier.format(z.zin(x, y)))


def cmd_check_laws(args, kw) -> int:
    obj = _require_instance(args)
    reports = law_suite(obj, **kw) if isinstance(obj, FtcPair) else zinbiel_suite(obj, **kw)
    return _emit_reports(args, obj.name, reports)


def _table(carrier: Carrier, items) -> list[str]:
    return [carrier.format(x) for x in items[:TABLE_SIZE]]


def cmd_convert(args, kw) -> int:
    obj = _require_instance(args)
    if args.direction == "ftc-to-zin":
        if not isinstance(obj, FtcPair):
            raise UsageError("ftc-to-zin needs an FTC-pair instance")
        z = functor_F(obj, **kw)
        Z = z.carrier
        basis = Z.basis()[:TABLE_SIZE]
        rows = [{"x": Z.format(x), "y": Z.format(y), "x◁y": Z.format(z.zin(x, y))} for x in basis for y in basis]
        payload = {"kernelBasis": _table(z.base, z.base.basis()), "carrier": Z.name, "products": rows}
    else:
        if isinstance(obj, FtcPair):
            raise UsageError("zin-to-ftc needs a Zinbiel instance")
        pair = functor_G(obj, **kw)
        A, M = pair.algebra, pair.module
        payload = {
            "algebra": A.name,
            "module": M.name,
            "derivation": [{"a": A.format(a), "D(a)": M.format(pair.D(a))} for a in A.basis()[:TABLE_SIZE]],
            "integration": [{"m": M.format(m), "P(m)": A.format(pair.P(m))} for m in M.basis()[:TABLE_SIZE]],
        }
        z = pair
    lines = [f"{args.direction}: {obj.name} -> {z.name}"]
    for key, value in payload.items():
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend("  " + ("; ".join(f"{k} = {v}" for k, v in row.items()) if isinstance(row, dict) else row) for row in value)
        else:
            lines.append(f"{key}: {value}")
    _emit(args, {"command": "convert", "direction": args.direction, "instance": obj.name, "image": z.name, **payload}, "\n".join(lines))
    return EXIT_OK


def cmd_roundtrip(args, kw) -> int:
    obj = _require_instance(args)
    report = check_roundtrip_ftc(obj, **kw) if isinstance(obj, FtcPair) else check_roundtrip_zin(obj, **kw)
    return _emit_reports(args, obj.name, [report])


def cmd_suite(args, kw) -> int:
    report = run_suite(kw["seed"], kw["samples"], kw["workers"])
    print(to_json(report) if args.format == "json" else to_text(report))
    return EXIT_OK if suite_passed(report) else EXIT_VIOLATION


COMMANDS = {
    "shuffle": cmd_shuffle,
    "mixshuffle": cmd_mixshuffle,
    "hurwitz-mul": cmd_hurwitz_mul,
    "zinbiel": cmd_zinbiel,
    "check-laws": cmd_check_laws,
    "convert": cmd_convert,
    "roundtrip": cmd_roundtrip,
    "suite": cmd_suite,
}


# argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="sampling seed (FTC_SEED overrides)")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--degree-bound", type=int, default=12)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--instance", help="built-in name, inline JSON spec, or spec file")
    common.add_argument("--ring", default="rationals", help="rationals, integers or 'mod m'")
    common.add_argument("--basis", type=int, default=3, help="letters in the shuffle basis")
    common.add_argument("--truncation", type=int, default=4, help="n in k[y]/(y^n) for mixshuffle")

    parser = argparse.ArgumentParser(prog="ftczin", description="FTC-pairs and Zinbiel algebras")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for verb in ("shuffle", "mixshuffle", "hurwitz-mul", "zinbiel"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("operands", nargs=2, metavar="ELEMENT")
    for verb in ("check-laws", "roundtrip", "suite"):
        sub.add_parser(verb, parents=[common])
    p = sub.add_parser("convert", parents=[common])
    p.add_argument("direction", choices=("ftc-to-zin", "zin-to-ftc"))
    return parser


def _seed(args) -> int:
    env = os.environ.get("FTC_SEED")
    if env is None or env == "":
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"FTC_SEED must be an integer, got {env!r}") from None


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.samples < 0 or args.degree_bound < 0 or args.basis < 1 or args.truncation < 1:
            raise UsageError("counts must be non-negative and sizes positive")
        kw = {"seed": _seed(args), "samples": args.samples, "workers": args.workers}
        return COMMANDS[args.command](args, kw)
    except (InvalidFtcPairError, InvalidZinbielError) as exc:
        for r in exc.reports:
            print(r)
        return EXIT_VIOLATION
    except (ConstructionError, NotInvertibleError, BasisOverflowError, InvalidIntegrationError) as exc:
        print(f"construction error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (
        UsageError,
        ParseError,
        DescriptorMismatchError,
        UnitTermError,
        RingMismatchError,
        corpus.InstanceSpecError,
        corpus.UnknownInstanceError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # remaining ValueErrors come from malformed options such as an unknown ring tag
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())
