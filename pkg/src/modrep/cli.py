"""Command-line front end.

    modrep <command> --group FILE --p PRIME [options]

Every command writes one JSON result document (stdout or --out).  Errors are
reported as a JSON object with an "error" section and a nonzero exit code:
2 for bad input, 3 for exceeded budgets, 4 for failed consistency checks.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cache import Cache, cache_key, default_workspace
from .errors import GroupParseError, InputError, ModRepError
from .groups import Group, cycle_string
from .io import (
    check_prime,
    emit,
    input_hash,
    matrix_to_json,
    parse_group_text,
    parse_polynomial,
    parse_rep_text,
)

log = logging.getLogger("modrep")

COMMANDS = ("chartable", "simples", "decomp", "gendecomp", "blocks", "cohomology", "deform", "tame-report")


# -- payloads -------------------------------------------------------------------------


def _group_section(G: Group) -> dict:
    return {
        "name": G.name,
        "order": G.order,
        "classes": [
            {
                "representative": cycle_string(G.perms[c.rep]),
                "size": c.size,
                "element_order": c.element_order,
                "centralizer_order": c.centralizer_order,
            }
            for c in G.classes.classes
        ],
    }


def _brauer_section(chars) -> list[dict]:
    return [{"classes": list(phi.classes), "values": list(phi.values)} for phi in chars]


def _chartable(G: Group, args, ctx) -> dict:
    from .chartable import character_table, check_orthogonality

    chars = character_table(G)
    return {
        "group": _group_section(G),
        "characters": [list(ch.values) for ch in chars],
        "degrees": [ch.degree for ch in chars],
        "orthogonality": check_orthogonality(G, chars),
    }


def _simples(G: Group, args, ctx) -> dict:
    from .reps.brauer import simples

    S = simples(G, args.p, args.seed, field=ctx.field)
    return {
        "field": {"p": S.field.p, "e": S.field.e},
        "modules": [
            {"label": V.label, "dim": V.dim, "generators": [matrix_to_json(S.field, A) for A in V.gens]} for V in S.modules
        ],
        "brauer_characters": _brauer_section(S.characters),
    }


def _decomp(G: Group, args, ctx) -> dict:
    from .decomp import decomposition_matrix

    D = decomposition_matrix(G, args.p, args.seed)
    return {"matrix": D.entries, "cartan": D.cartan(), "brauer_characters": _brauer_section(D.brauer)}


def _gendecomp(G: Group, args, ctx) -> dict:
    from .decomp import generalized_decomposition, reconstruction_holds, verify_block_vanishing

    T = generalized_decomposition(G, args.p, args.seed)
    van = verify_block_vanishing(T, args.seed, raise_on_violation=False)
    return {
        "slices": [
            {
                "index": i,
                "u": cycle_string(G.perms[sl.u]),
                "alpha": sl.alpha,
                "centralizer_order": sl.centralizer.order,
                "g_classes": sl.g_classes,
                "entries": sl.entries,
            }
            for i, sl in enumerate(T.slices)
        ],
        "reconstruction_holds": reconstruction_holds(T),
        "vanishing_checked": len(van.checked),
        "vanishing_violations": [list(t) for t in van.violations],
    }


def _blocks(G: Group, args, ctx) -> dict:
    from .blocks import blocks, check_idempotents

    system = blocks(G, args.p, args.seed)
    return {
        "blocks": [B.summary() for B in system],
        "character_block": system.char_block,
        "brauer_block": system.brauer_block,
        "idempotents_ok": check_idempotents(system),
    }


def _residual(G: Group, args, ctx):
    from .reps.matrep import MatRep, trivial_module

    if ctx.rep_mats is None:
        return trivial_module(G, ctx.field)
    return MatRep.from_generators(G, ctx.field, ctx.rep_mats, label="rho")


def _cohomology(G: Group, args, ctx) -> dict:
    from .deform.cohomology import cohomology_dims
    from .reps.homs import stable_end

    rho = _residual(G, args, ctx)
    rep = cohomology_dims(rho)
    return {"dim": rho.dim, **rep.as_dict(), "stable_end": stable_end(rho)}


def _deform(G: Group, args, ctx) -> dict:
    from .deform.cohomology import cohomology_dims
    from .deform.versal import versal_presentation_truncated
    from .reps.homs import stable_end

    rho = _residual(G, args, ctx)
    rep = cohomology_dims(rho)
    out = {"dim": rho.dim, "cohomology": rep.as_dict(), "stable_end": stable_end(rho), "tangent_dimension": rep.h1}
    pres = versal_presentation_truncated(rho, degree_cap=args.degree_cap, precision=args.precision, report=rep)
    out["versal"] = pres.as_dict()
    return out


def _tame_report(G: Group, args, ctx) -> dict:
    from .blocks import blocks
    from .tame import deformation_ring_report

    if args.p != 2:
        raise InputError("tame-report needs --p 2")
    system = blocks(G, 2, args.seed)
    if args.block is None:
        B = system.principal
    elif 0 <= args.block < len(system):
        B = system[args.block]
    else:
        raise InputError(f"block index {args.block} out of range (0..{len(system) - 1})")
    tubes = None if args.three_tubes is None else args.three_tubes == "yes"
    qn = parse_polynomial(args.qn) if args.qn is not None else None
    return deformation_ring_report(G, B, three_tubes=tubes, qn=qn, seed=args.seed).as_dict()


HANDLERS = {
    "chartable": _chartable,
    "simples": _simples,
    "decomp": _decomp,
    "gendecomp": _gendecomp,
    "blocks": _blocks,
    "cohomology": _cohomology,
    "deform": _deform,
    "tame-report": _tame_report,
}


# -- driver ---------------------------------------------------------------------------


@dataclass
class Context:
    group_text: str
    rep_text: str
    field: object
    rep_mats: list | None


@dataclass
class Outcome:
    text: str
    exit_code: int
    cache_hit: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modrep", description="Exact modular representation theory of finite groups.")
    parser.add_argument("--version", action="version", version=f"modrep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--group", required=True, help="group file (domain/gen/name lines)")
        sp.add_argument("--p", required=True, type=int, help="the characteristic")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the result document here instead of stdout")
        sp.add_argument("--no-cache", action="store_true", help="bypass the on-disk cache")
        sp.add_argument("--workspace", help="cache directory (default: $MODREP_WORKSPACE)")
        if name in ("cohomology", "deform"):
            sp.add_argument("--rep", help="residual representation: JSON generator matrices over GF(p^e)")
        if name == "deform":
            sp.add_argument("--precision", type=int, default=4, help="work modulo p^precision")
            sp.add_argument("--degree-cap", type=int, default=4, help="work modulo m^degree_cap")
        if name == "tame-report":
            sp.add_argument("--three-tubes", choices=("yes", "no"))
            sp.add_argument("--qn", help="external q_n as an integer polynomial in t")
            sp.add_argument("--block", type=int, help="block index (default: principal block)")
    return parser


def _parameters(args) -> dict:
    skip = {"command", "group", "p", "seed", "out", "no_cache", "workspace", "rep"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _error_document(exc: BaseException, code: int) -> str:
    err = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, GroupParseError):
        err["line"], err["column"] = exc.line, exc.column
    return json.dumps({"error": err, "version": __version__}, sort_keys=True, indent=2) + "\n"


def execute(args) -> Outcome:
    """Run one parsed command; never raises for library errors."""
    try:
        return _execute(args)
    except ModRepError as exc:
        return Outcome(_error_document(exc, exc.exit_code), exc.exit_code)
    except RecursionError as exc:
        return Outcome(_error_document(exc, 3), 3)
    except Exception as exc:  # an unanticipated failure is an internal inconsistency
        log.error("unexpected %s: %s", type(exc).__name__, exc)
        return Outcome(_error_document(exc, 4), 4)


def _execute(args) -> Outcome:
    from .exact.finite_field import get_field
    from .reps.brauer import splitting_degree

    check_prime(args.p)
    try:
        group_text = Path(args.group).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read group file {args.group}: {exc.strerror}") from None
    spec = parse_group_text(group_text)
    G = spec.build()
    rep_text, rep_mats = "", None
    if getattr(args, "rep", None):
        try:
            rep_text = Path(args.rep).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read representation file {args.rep}: {exc.strerror}") from None
        F, rep_mats = parse_rep_text(rep_text, args.p)
        rep_text = json.dumps([m.tolist() for m in rep_mats])
    elif args.command in ("cohomology", "deform"):
        F = get_field(args.p, 1)
    else:
        F = get_field(args.p, splitting_degree(G, args.p))
    digest = input_hash(spec.canonical_text(), rep_text)
    params = _parameters(args)
    key = cache_key(
        input=digest, p=args.p, e=F.e, seed=args.seed, version=__version__, command=args.command, parameters=params
    )
    cache = None if args.no_cache else Cache(Path(args.workspace) if args.workspace else default_workspace())
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return Outcome(hit, 0, cache_hit=True)
    ctx = Context(group_text, rep_text, F, rep_mats)
    payload = HANDLERS[args.command](G, args, ctx)
    doc = {
        "tool": "modrep",
        "version": __version__,
        "command": args.command,
        "input_hash": digest,
        "seed": args.seed,
        "p": args.p,
        "e": F.e,
        "parameters": params,
        args.command: payload,
    }
    text = emit(doc)
    if cache is not None:
        try:
            cache.put(key, text)
        except OSError as exc:
            log.warning("could not write cache entry: %s", exc)
    return Outcome(text, 0)


def run(argv: list[str] | None = None) -> Outcome:
    args = build_parser().parse_args(argv)
    outcome = execute(args)
    if args.out and outcome.exit_code == 0:
        Path(args.out).write_text(outcome.text, encoding="utf-8")
    else:
        sys.stdout.write(outcome.text)
    return outcome


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="modrep: %(levelname)s: %(message)s", stream=sys.stderr)
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
