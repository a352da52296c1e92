"""Command-line entry point.

Exit codes: 0 on success, 1 when a computation or check fails with a kernel
error, 2 on usage errors (bad options, unreadable expressions, invalid data).
"""
import argparse
import json
import logging
import sys

from ..config import CARTAN, DEFAULTS, SUITES
from ..duality.forms import FORMS
from ..duality.special import DIRECTIONS
from ..kernel.errors import ExprSyntaxError, InvalidCartan, InvalidLattice, InvalidPhi, KernelError
from ..kernel.relations import KINDS
from .commands import build_session, run

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2
USAGE_ERRORS = (ExprSyntaxError, InvalidCartan, InvalidLattice, InvalidPhi)


def _session_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", choices=sorted(CARTAN), default=DEFAULTS["type"])
    common.add_argument("--lattice", default=DEFAULTS["lattice"], help="P, Q or a JSON file with lattice columns")
    common.add_argument("--phi", help="JSON file with the rows of phi in fundamental-weight coordinates")
    common.add_argument("--preset", help="named lattice and twist for the chosen type")
    common.add_argument("--config", help="JSON datum file with type, lattice, phi and reduced_word")
    common.add_argument("--trunc", type=int, default=DEFAULTS["trunc"], help="truncation degree of dual series")
    common.add_argument("--window", type=int, default=DEFAULTS["window"], help="toral character window")
    common.add_argument("--l", type=int, default=DEFAULTS["ell"], help="order of the root of unity")
    common.add_argument("--json", action="store_true", help="emit JSON on stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _session_options()
    parser = argparse.ArgumentParser(prog="qgroups", description="exact computations in multiparameter quantum groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, presentation: bool = False):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if presentation:
            p.add_argument("--presentation", choices=KINDS, default="full")
        return p

    command("normal-form", "normal form of an expression", True).add_argument("expr")
    p = command("mul", "product of two expressions", True)
    p.add_argument("left")
    p.add_argument("right")
    command("delta", "coproduct", True).add_argument("expr")
    command("antipode", "antipode", True).add_argument("expr")
    command("counit", "counit", True).add_argument("expr")
    p = command("pair", "pairing of two expressions")
    p.add_argument("--kind", choices=("drt", "poisson", "scaled"), default="drt")
    p.add_argument("--scale", choices=("UU", "FF"), default="UU")
    p.add_argument("left")
    p.add_argument("right")
    p = command("membership", "membership in an integral form", True)
    p.add_argument("--form", choices=FORMS, default="restricted")
    p.add_argument("expr")
    p = command("specialize", "specialize at q = 1 or at a root of unity", True)
    p.add_argument("--at", default="1", help="1 or root:N")
    p.add_argument("--form", choices=FORMS, default="restricted")
    p.add_argument("expr")
    p = command("frobenius", "apply a Frobenius map")
    p.add_argument("--dir", choices=DIRECTIONS, default="fr_g")
    p.add_argument("expr")
    command("dual-delta", "dual coproduct of an H element as a truncated series").add_argument("--generator",
                                                                                             required=True)
    command("dual-antipode", "dual antipode of an H element as a truncated series").add_argument("--generator",
                                                                                               required=True)
    command("check", "run a check suite").add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def _emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _report(err: KernelError, as_json: bool) -> None:
    if as_json:
        print(json.dumps(err.as_dict(), sort_keys=True), file=sys.stderr)
    else:
        print(f"{err.code} {type(err).__name__}: {err.message}", file=sys.stderr)
        if err.witness is not None:
            print(f"  witness: {err.witness}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        session = build_session(args)
        payload, text = run(args.command, session, args)
    except USAGE_ERRORS as err:
        _report(err, args.json)
        return EXIT_USAGE
    except KernelError as err:
        _report(err, args.json)
        return EXIT_FAILURE
    except (ValueError, OSError) as err:
        log.error("%s", err)
        return EXIT_USAGE
    _emit(payload, text, args.json)
    return EXIT_OK


__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_FAILURE", "EXIT_USAGE"]
