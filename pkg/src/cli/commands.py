"""Session setup, subcommands and check suites of the command line."""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from ..config import DEFAULTS, LIMITS, PRESETS, SUITES
from ..duality.double import projection_checks, triangular_check, verify_cross_relation
from ..duality.dualform import (compute_structure_constants, dual_antipode, dual_coproduct, nu_embed,
                                nu_morphism_check, reconstruct_series, reconstruct_tensor, umbral_congruence_check,
                                UMBRAL_GENERATORS, UMBRAL_OPS)
from ..duality.forms import FORMS, closure_check, coproduct_closure_check, membership
from ..duality.pair import (closed_form_check, drt_pair, duality_gram_check, perfection_check, quantum_poisson_pair,
                            resolve_pairing_convention, scaled_poisson_pair)
from ..duality.sl2 import SERIES, sl2_hopf_check, sl2_relation_check, sl2_series_check, xi_hopf_check, xi_relation_check
from ..duality.special import (FrobeniusContext, classical_limit_check, frobenius_apply,
                               frobenius_property_checks, function_frobenius_check, poisson_cobracket,
                               specialize_element)
from ..kernel.algebra import get_algebra
from ..kernel.cartan import build_cartan, load_datum
from ..kernel.hopf import antipode, check_hopf_axioms, coproduct, counit
from ..kernel.oracle import oracle_check
from ..kernel.qcoeff import render_scalar, scalar_to_json
from .expr import evaluate

log = logging.getLogger(__name__)


def _bounded(name: str, value: int) -> int:
    lo, hi = LIMITS[name]
    if not lo <= value <= hi:
        raise ValueError(f"--{name} must lie in [{lo}, {hi}], got {value}")
    return value


@dataclass
class Session:
    datum: object
    trunc: int = DEFAULTS["trunc"]
    window: int = DEFAULTS["window"]
    ell: int = DEFAULTS["ell"]
    as_json: bool = False

    def algebra(self, kind: str = "full"):
        return get_algebra(self.datum, kind)

    def parse(self, text: str, kind: str = "full"):
        return evaluate(text, self.algebra(kind))


def _read_phi(path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)
    return [[str(c) for c in row] for row in rows]


def build_session(args) -> Session:
    """Datum from --config, or from --type with --lattice/--phi or a named --preset."""
    if args.config:
        datum = load_datum(args.config)
    else:
        lattice, phi = args.lattice, None
        if args.preset:
            presets = PRESETS.get(args.type, {})
            if args.preset not in presets:
                raise ValueError(f"unknown preset {args.preset!r} for {args.type}; expected one of {sorted(presets)}")
            lattice = presets[args.preset]["lattice"]
            phi = presets[args.preset]["phi"]
        if args.phi:
            phi = _read_phi(args.phi)
        if lattice not in ("P", "Q") and Path(lattice).is_file():
            lattice = json.loads(Path(lattice).read_text(encoding="utf-8"))
        datum = build_cartan(args.type, lattice, phi)
    session = Session(datum, _bounded("trunc", args.trunc), _bounded("window", args.window),
                      _bounded("ell", args.l), args.json)
    log.debug("session on %s", datum.describe())
    return session


def parse_point(text: str) -> int:
    """'1' for q = 1, 'root:N' (or N) for a primitive N-th root of unity."""
    body = text.split(":", 1)[1] if text.startswith("root:") else text
    try:
        at = int(body)
    except ValueError:
        raise ValueError(f"cannot read specialization point {text!r}; use 1 or root:N") from None
    if at != 1:
        _bounded("ell", at)
    return at


# subcommands

def cmd_normal_form(s: Session, args) -> tuple:
    x = s.parse(args.expr, args.presentation)
    return {"input": args.expr, "presentation": args.presentation, "result": x.to_json()}, x.render()


def cmd_mul(s: Session, args) -> tuple:
    x = s.parse(args.left, args.presentation) * s.parse(args.right, args.presentation)
    return {"presentation": args.presentation, "result": x.to_json()}, x.render()


def cmd_delta(s: Session, args) -> tuple:
    t = coproduct(s.parse(args.expr, args.presentation))
    return {"presentation": args.presentation, "result": t.to_json()}, t.render()


def cmd_antipode(s: Session, args) -> tuple:
    x = antipode(s.parse(args.expr, args.presentation))
    return {"presentation": args.presentation, "result": x.to_json()}, x.render()


def cmd_counit(s: Session, args) -> tuple:
    c = counit(s.parse(args.expr, args.presentation))
    return {"result": scalar_to_json(c)}, render_scalar(c)


def cmd_pair(s: Session, args) -> tuple:
    if args.kind == "drt":
        x = s.parse(args.left, "borel_minus")
        y = s.parse(args.right, "borel_plus")
        value = drt_pair("drt_pi", x, y)
    else:
        x = s.parse(args.left, "H")
        y = evaluate(args.right, get_algebra(s.datum.dual(), "full"))
        if args.kind == "poisson":
            value = quantum_poisson_pair(x, y)
        else:
            value = scaled_poisson_pair(args.scale, x, y)
    return {"kind": args.kind, "result": scalar_to_json(value)}, render_scalar(value)


def cmd_membership(s: Session, args) -> tuple:
    report = membership(s.parse(args.expr, args.presentation), args.form)
    text = f"{'in' if report.member else 'not in'} the {args.form} form"
    return report.to_json(), text


def cmd_specialize(s: Session, args) -> tuple:
    at = parse_point(args.at)
    x = specialize_element(s.parse(args.expr, args.presentation), args.form, at)
    return x.to_json(), x.render()


def cmd_frobenius(s: Session, args) -> tuple:
    ctx = FrobeniusContext(s.ell, args.dir)
    x = frobenius_apply(ctx, s.parse(args.expr, ctx.kind))
    return dict(x.to_json(), direction=ctx.direction, ell=ctx.ell), x.render()


def cmd_dual_delta(s: Session, args) -> tuple:
    f = nu_embed(s.parse(args.generator, "H"))
    t = reconstruct_tensor(dual_coproduct(f), s.trunc, s.window)
    return {"trunc": s.trunc, "window": s.window, "result": t.to_json()}, t.render()


def cmd_dual_antipode(s: Session, args) -> tuple:
    f = nu_embed(s.parse(args.generator, "H"))
    x = reconstruct_series(dual_antipode(f), s.trunc, s.window)
    return {"trunc": s.trunc, "window": s.window, "result": x.to_json()}, x.render()


# check suites

def suite_hopf(s: Session) -> dict:
    return {kind: check_hopf_axioms(s.datum, kind, 2, DEFAULTS["sample_size"]).to_json()
            for kind in ("full", "double", "borel_plus", "borel_minus")}


def suite_pairing(s: Session) -> dict:
    return {
        "convention": resolve_pairing_convention(s.datum).to_json(),
        "closed_form_pairs": closed_form_check(s.datum, 3),
        "perfection": {str(list(k)): render_scalar(v) for k, v in perfection_check(s.datum, 3).items()},
        "cross_relation": verify_cross_relation(s.datum, 1).to_json(),
        "triangular": triangular_check(s.datum, 2),
        "projection": projection_checks(s.datum).to_json(),
    }


def suite_duality(s: Session) -> dict:
    full = s.algebra("full")
    return {
        "gram": duality_gram_check(s.datum, 2).to_json(),
        "closure": {form: closure_check(full, form) for form in FORMS},
        "coproduct_closure": {form: coproduct_closure_check(full, form) for form in FORMS},
        "nu_morphism": nu_morphism_check(s.datum, min(s.trunc, 2), min(s.window, 3)),
    }


def suite_umbral(s: Session) -> dict:
    out = {"structure_constants": compute_structure_constants(s.datum).to_json(), "congruences": []}
    for generator in UMBRAL_GENERATORS:
        for op in UMBRAL_OPS:
            for i in range(s.datum.n):
                out["congruences"].append(umbral_congruence_check(s.datum, generator, op, i).to_json())
    return out


def suite_appendix(s: Session) -> dict:
    degree = min(s.trunc, 3)
    return {
        "relations": sl2_relation_check(),
        "hopf": sl2_hopf_check(2),
        "xi_relations": xi_relation_check(),
        "xi_hopf": xi_hopf_check(min(s.trunc, 2), min(s.window, 2)),
        "series": [sl2_series_check(name, degree).to_json() for name in SERIES],
    }


def suite_frobenius(s: Session) -> dict:
    return {
        "properties": frobenius_property_checks(s.datum, s.ell, 3).to_json(),
        "functions": function_frobenius_check(s.ell).to_json(),
    }


def suite_classical(s: Session) -> dict:
    U = s.algebra("full")
    return {
        "limits": classical_limit_check(s.datum, min(s.window, 3)).to_json(),
        "cobracket": [poisson_cobracket(U.F(i)).to_json() for i in range(U.n)],
    }


def suite_oracle(s: Session) -> dict:
    return {"words": oracle_check(s.datum, 4)}


SUITE_RUNNERS = {
    "hopf": suite_hopf,
    "pairing": suite_pairing,
    "duality": suite_duality,
    "umbral": suite_umbral,
    "appendix": suite_appendix,
    "frobenius": suite_frobenius,
    "classical": suite_classical,
    "oracle": suite_oracle,
}


def cmd_check(s: Session, args) -> tuple:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = {}
    for name in names:
        log.info("running suite %s", name)
        results[name] = SUITE_RUNNERS[name](s)
    text = "\n".join(f"{name}: passed" for name in names)
    return {"type": s.datum.cartan_type, "lattice": s.datum.lattice_name, "suites": results, "passed": True}, text


COMMANDS = {
    "normal-form": cmd_normal_form,
    "mul": cmd_mul,
    "delta": cmd_delta,
    "antipode": cmd_antipode,
    "counit": cmd_counit,
    "pair": cmd_pair,
    "membership": cmd_membership,
    "specialize": cmd_specialize,
    "frobenius": cmd_frobenius,
    "dual-delta": cmd_dual_delta,
    "dual-antipode": cmd_dual_antipode,
    "check": cmd_check,
}


def run(command: str, session: Session, args) -> tuple:
    """(payload, text) of a subcommand."""
    return COMMANDS[command](session, args)
