"""Command-line front end.

Exit codes: 0 = every asserted property held, 1 = a falsification or
counterexample was found (the witness is in the report), 2 = invalid input.
A machine-readable report can be written with ``--json``; identical inputs
and seeds produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .conjectures import (
    chain_probe,
    check_instance,
    counterexample_suite,
    decide_poly_automorphism,
    decide_weyl_automorphism,
    gabber_degree_bound,
    inverse_search_poly,
    kraus_check,
)
from .parsing import ParseError, parse_endo_file
from .poisson import PoissonContext, check_symplectic
from .reduction import check_degree_preservation, induced_center_endo, check_center_symplectic
from .report import build_report, dump_report, input_digest
from .rings import NonUnitError, ring_from_text
from .weyl import (
    RelationError,
    WeylAlgebra,
    WeylEndo,
    center_slice_check,
    inverse_degree_bound,
    inverse_search,
    verify_endo_relations,
)

_MONOMIAL_CAP = 4000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canonalg",
        description="Exact checks on Poisson and Weyl algebra endomorphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, needs_input: bool, **extra):
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("--input", required=True, help="endomorphism definition file")
        p.add_argument("--seed", type=int, default=0, help="echoed into the report")
        p.add_argument("--json", help="write the JSON report to this path")
        for flag, kwargs in extra.items():
            p.add_argument(flag, **kwargs)
        return p

    add("check-symplectic", True)
    add("check-weyl-endo", True)
    add("reduce", True)
    add("invert", True, **{"--degree-cap": dict(type=int, default=None)})
    add("invert-weyl", True, **{"--degree-cap": dict(type=int, default=None)})
    add(
        "check-instance",
        True,
        **{"--tag": dict(required=True, choices=["CJC", "NJC", "CPC", "NPC", "CDC", "NDC"])},
    )
    add(
        "center-slice",
        False,
        **{
            "--ring": dict(required=True, help="prime field literal, e.g. F2"),
            "--n": dict(type=int, required=True),
            "--degree-cap": dict(type=int, required=True),
        },
    )
    add("kraus", False, **{"--p-max": dict(type=int, default=1000)})
    add("suite", False, **{"--p-max": dict(type=int, default=1000)})
    add("probe-chain", True)
    return parser


def _load_file(args) -> tuple[str, bytes]:
    data = Path(args.input).read_bytes()
    return data.decode("utf-8"), data


def _weyl_endo_from_file(ef) -> WeylEndo:
    if ef.kind != "weyl":
        raise ParseError("this command needs kind=weyl input")
    return WeylEndo(ef.weyl_algebra(), list(ef.images))


def _poly_texts(images, names) -> list[str]:
    return [im.to_text(names) for im in images]


def _run_check_symplectic(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    if ef.kind != "poisson":
        raise ParseError("check-symplectic needs kind=poisson input")
    ctx = PoissonContext(ef.ring, ef.n)
    rec = check_symplectic(ctx, ef.poly_endo())
    payload = {
        "ring": str(ef.ring),
        "n": ef.n,
        "symplectic": rec.symplectic,
        "n_factorial_unit": rec.n_factorial_unit,
        "det": rec.det.to_text(ef.names()),
        "det_is_one": rec.det_is_one,
        "assertion_violated": rec.assertion_violated,
    }
    code = 1 if rec.assertion_violated else 0
    return code, payload, input_digest(raw)


def _run_check_weyl_endo(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    if ef.kind != "weyl":
        raise ParseError("check-weyl-endo needs kind=weyl input")
    algebra = ef.weyl_algebra()
    ok, witness = verify_endo_relations(algebra, list(ef.images))
    names = ef.names()
    payload = {
        "ring": str(ef.ring),
        "n": ef.n,
        "relations_hold": ok,
        "witness": None
        if ok
        else {"i": witness[0], "j": witness[1], "commutator": witness[2].to_text(names)},
        "degree": max(
            (im.degree() for im in ef.images if not im.is_zero()), default=None
        ),
    }
    return 0, payload, input_digest(raw)


def _run_reduce(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    endo = _weyl_endo_from_file(ef)
    degrees = check_degree_preservation(endo)
    sym = check_center_symplectic(endo)
    names = [f"X{i}" for i in range(1, ef.nvars + 1)]
    payload = {
        "ring": str(ef.ring),
        "n": ef.n,
        "center_images": _poly_texts(sym.center.endo.images, names),
        "degree": {
            "endomorphism": degrees.deg_endo,
            "center": degrees.deg_center,
            "equal": degrees.equal,
        },
        "center_symplectic": sym.symplectic,
        "falsification": (not degrees.equal) or (not sym.symplectic),
    }
    return (1 if payload["falsification"] else 0), payload, input_digest(raw)


def _run_invert(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    if ef.kind == "weyl":
        raise ParseError("invert needs kind=poly or kind=poisson input (see invert-weyl)")
    endo = ef.poly_endo()
    bound = gabber_degree_bound(endo)
    if args.degree_cap is not None:
        inverse, found = inverse_search_poly(endo, args.degree_cap)
        searched = args.degree_cap
    else:
        decision = decide_poly_automorphism(endo, _MONOMIAL_CAP)
        inverse, found, searched = decision.inverse, decision.found_degree, decision.searched_degree
    payload = {
        "ring": str(ef.ring),
        "status": "found" if inverse is not None else "none",
        "degree_bound": bound,
        "searched_degree": searched,
        "found_degree": found,
        "certified_non_automorphism": inverse is None and searched >= bound,
        "inverse_images": None if inverse is None else _poly_texts(inverse.images, ef.names()),
    }
    return 0, payload, input_digest(raw)


def _run_invert_weyl(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    endo = _weyl_endo_from_file(ef)
    bound = inverse_degree_bound(endo)
    if args.degree_cap is not None:
        inverse, found = inverse_search(endo, args.degree_cap)
        searched = args.degree_cap
    else:
        decision = decide_weyl_automorphism(endo, _MONOMIAL_CAP)
        inverse, found, searched = decision.inverse, decision.found_degree, decision.searched_degree
    payload = {
        "ring": str(ef.ring),
        "status": "found" if inverse is not None else "none",
        "degree_bound": bound,
        "searched_degree": searched,
        "found_degree": found,
        "certified_non_automorphism": inverse is None and searched >= bound,
        "inverse_images": None
        if inverse is None
        else [im.to_text(ef.names()) for im in inverse.images],
    }
    return 0, payload, input_digest(raw)


def _run_check_instance(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    tag = args.tag
    needs = {"JC": "poly", "PC": "poisson", "DC": "weyl"}[tag[1:]]
    if ef.kind != needs:
        raise ParseError(f"tag {tag} needs kind={needs} input, got kind={ef.kind}")
    endo = _weyl_endo_from_file(ef) if needs == "weyl" else ef.poly_endo()
    verdict = check_instance(tag, endo)
    payload = verdict.to_payload()
    code = 1 if verdict.biconditional_holds is False else 0
    return code, payload, input_digest(raw)


def _run_center_slice(args):
    ring = ring_from_text(args.ring)
    algebra = WeylAlgebra(ring, args.n)
    rec = center_slice_check(algebra, args.degree_cap)
    payload = {
        "ring": str(ring),
        "n": args.n,
        "degree_cap": rec.degree_cap,
        "dimension_found": rec.dimension_found,
        "dimension_expected": rec.dimension_expected,
        "match": rec.match,
    }
    digest = input_digest(f"center-slice ring={ring} n={args.n} D={args.degree_cap}")
    return (0 if rec.match else 1), payload, digest


def _run_kraus(args):
    rec = kraus_check(args.p_max)
    ok = rec.z_irreducible and rec.all_reducible
    return (0 if ok else 1), rec.to_payload(), input_digest(f"kraus p_max={args.p_max}")


def _run_suite(args):
    rec = counterexample_suite(args.p_max)
    return (0 if rec.all_expected else 1), rec.to_payload(), input_digest(
        f"suite p_max={args.p_max}"
    )


def _run_probe_chain(args):
    text, raw = _load_file(args)
    ef = parse_endo_file(text)
    endo = _weyl_endo_from_file(ef)
    rec = chain_probe(endo)
    return (0 if rec.consistent else 1), rec.to_payload(), input_digest(raw)


_HANDLERS = {
    "check-symplectic": _run_check_symplectic,
    "check-weyl-endo": _run_check_weyl_endo,
    "reduce": _run_reduce,
    "invert": _run_invert,
    "invert-weyl": _run_invert_weyl,
    "check-instance": _run_check_instance,
    "center-slice": _run_center_slice,
    "kraus": _run_kraus,
    "suite": _run_suite,
    "probe-chain": _run_probe_chain,
}


def _summary_lines(command: str, payload: dict) -> list[str]:
    keep = {
        "symplectic", "n_factorial_unit", "det", "det_is_one", "assertion_violated",
        "relations_hold", "witness", "degree", "center_images", "center_symplectic",
        "falsification", "status", "degree_bound", "searched_degree", "found_degree",
        "certified_non_automorphism", "automorphism", "hypothesis_holds",
        "biconditional_holds", "match", "dimension_found", "dimension_expected",
        "z_irreducible", "all_reducible", "all_expected", "consistent", "events",
    }
    lines = [f"{command}:"]
    for key, value in payload.items():
        if key in keep:
            lines.append(f"  {key} = {value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, digest = _HANDLERS[args.command](args)
    except (ParseError, RelationError, NonUnitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = build_report(args.command, digest, payload, args.seed)
    text = dump_report(report)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    for line in _summary_lines(args.command, payload):
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
