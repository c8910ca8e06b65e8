"""Command line front end.

Exit codes: 0 success, 1 parse or usage error, 2 completion limit
exceeded, 3 words not equal, 4 invalid certificate.  Data goes to
stdout, diagnostics to stderr; ``--json`` switches the rendering, the
JSON being the source of truth either way.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys as _sys

from .core import ParseError, parse_presentation, word_from_str, word_to_str
from . import twocell
from .engine import (
    Verdict, expand_log, normal_form, prove, reduce_logged,
    system_from_presentation,
)
from .completion import (
    CompletionLimits, CompletionResult, interreduce, logged_knuth_bendix,
    system_to_json,
)
from .endorewrites import (
    GeneratorSet, UnmatchedDiamond, decomposition_to_json, express, generate,
    generator_set_to_json,
)

OK, USAGE, LIMIT, NOT_EQUAL, BAD_CERT = 0, 1, 2, 3, 4


def _limits(text: str) -> CompletionLimits:
    try:
        max_rules, max_passes, max_word_length = (int(p) for p in text.split(","))
        return CompletionLimits(max_rules, max_passes, max_word_length)
    except ValueError as err:
        raise argparse.ArgumentTypeError(
            "expected --limits MAX_RULES,MAX_PASSES,MAX_WORD_LENGTH"
        ) from err


def _emit(data: dict, as_json: bool, render) -> None:
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        render(data)


def _load_presentation(path: str):
    with open(path, encoding="utf-8") as handle:
        return parse_presentation(handle.read())


def _complete(path: str, limits: CompletionLimits, do_interreduce: bool):
    presentation = _load_presentation(path)
    init = system_from_presentation(presentation)
    result = logged_knuth_bendix(init, limits)
    if do_interreduce and result.status == "complete":
        reduced = interreduce(result.system)
        result = CompletionResult(result.status, reduced, result.pending)
    return presentation, init, result


def cmd_complete(args) -> int:
    _, _, result = _complete(args.file, args.limits, args.interreduce)
    data = system_to_json(result)

    def render(data):
        print(f"status: {data['status']}")
        for rule in data["rules"]:
            origin = "" if rule["provenance"] == "initial" else "  (derived)"
            print(f"  {rule['id']}: {rule['lhs']} -> {rule['rhs']}{origin}")
        if result.pending:
            print(f"pending critical pairs: {len(result.pending)}")

    _emit(data, args.json, render)
    return OK if result.status == "complete" else LIMIT


def cmd_nf(args) -> int:
    presentation, _, result = _complete(args.file, args.limits, args.interreduce)
    word = word_from_str(args.word, presentation.alphabet)
    print(word_to_str(normal_form(word, result.system)))
    return OK if result.status == "complete" else LIMIT


def cmd_reduce(args) -> int:
    presentation, init, result = _complete(args.file, args.limits, args.interreduce)
    word = word_from_str(args.word, presentation.alphabet)
    cell = reduce_logged(word, result.system)
    if args.expand:
        cell = expand_log(cell, result.system)
    data = twocell.cell_to_json(cell)
    data["target"] = word_to_str(twocell.target(cell, result.system.rule_map))

    def render(data):
        print(f"{data['source']} -> {data['target']}")
        for step in data["steps"]:
            sign = "" if step["exp"] == 1 else "^-1"
            print(f"  [{step['prefix']}] {step['rule']}{sign} [{step['suffix']}]")

    _emit(data, args.json, render)
    return OK if result.status == "complete" else LIMIT


def cmd_prove(args) -> int:
    presentation, init, result = _complete(args.file, args.limits, args.interreduce)
    w1 = word_from_str(args.word1, presentation.alphabet)
    w2 = word_from_str(args.word2, presentation.alphabet)
    outcome = prove(w1, w2, result.system)
    if outcome is Verdict.NOT_EQUAL:
        print("not equal", file=_sys.stderr)
        return NOT_EQUAL
    if outcome is Verdict.UNKNOWN:
        print("unknown: system is not complete within limits", file=_sys.stderr)
        return LIMIT
    cell = outcome
    if args.expand:
        cell = expand_log(cell, result.system)
    data = twocell.cell_to_json(cell)
    data["target"] = word_to_str(twocell.target(cell, result.system.rule_map))

    def render(data):
        print(f"{data['source']} = {data['target']}")
        for step in data["steps"]:
            sign = "" if step["exp"] == 1 else "^-1"
            print(f"  [{step['prefix']}] {step['rule']}{sign} [{step['suffix']}]")

    _emit(data, args.json, render)
    return OK


def cmd_verify(args) -> int:
    presentation = _load_presentation(args.file)
    init = system_from_presentation(presentation)
    with open(args.certificate, encoding="utf-8") as handle:
        data = json.load(handle)
    try:
        cell = twocell.cell_from_json(data)
    except (KeyError, TypeError, ValueError) as err:
        print(f"malformed certificate: {err}", file=_sys.stderr)
        return BAD_CERT
    bad = twocell.validate(cell, init.rule_map)
    if bad is not None:
        print(f"invalid certificate at step {bad}", file=_sys.stderr)
        return BAD_CERT
    reached = twocell.target(cell, init.rule_map)
    if "target" in data and word_from_str(data["target"]) != reached:
        print(
            f"certificate ends at {word_to_str(reached)}, declared {data['target']}",
            file=_sys.stderr,
        )
        return BAD_CERT
    print(f"ok: {word_to_str(cell.source)} -> {word_to_str(reached)}")
    return OK


def cmd_endos(args) -> int:
    presentation, init, result = _complete(args.file, args.limits, args.interreduce)
    if result.status != "complete":
        print("completion exceeded limits; no generator set", file=_sys.stderr)
        return LIMIT
    gens = generate(result, init)
    if args.minimize:
        gens = _minimize(gens)
    data = generator_set_to_json(gens)

    def render(data):
        groups: dict[str, list] = {}
        for gen in data["generators"]:
            groups.setdefault(gen["base_element"], []).append(gen)
        for element, members in groups.items():
            print(f"Endorewrites of {element}:")
            for gen in members:
                print(f"  {gen['id']} on {gen['base_word']} "
                      f"({_render_cell(gen['cell'])})")

    _emit(data, args.json, render)
    return OK


def _render_cell(data: dict) -> str:
    parts = []
    for step in data["steps"]:
        sign = "" if step["exp"] == 1 else "^-1"
        prefix = "" if step["prefix"] == "1" else step["prefix"] + " "
        suffix = "" if step["suffix"] == "1" else " " + step["suffix"]
        parts.append(f"{prefix}{step['rule']}{sign}{suffix}")
    return " . ".join(parts) if parts else "1"


def _minimize(gens: GeneratorSet) -> GeneratorSet:
    """Heuristic shrink: drop generators whose abelianization is spanned
    by the kept ones.  Generators with zero abelianization are never
    dropped (the filter cannot see them)."""
    from fractions import Fraction

    kept = []
    basis: list[dict] = []

    def reduces_to_zero(vector: dict) -> bool:
        vec = {k: Fraction(v) for k, v in vector.items()}
        for row in basis:
            pivot = next(iter(row))
            if pivot in vec:
                coef = vec[pivot] / row[pivot]
                for k, v in row.items():
                    vec[k] = vec.get(k, Fraction(0)) - coef * v
                vec = {k: v for k, v in vec.items() if v}
        return not vec

    for gen in gens.generators:
        vector = twocell.abelianize(gen.cell)
        if vector and reduces_to_zero(vector):
            continue
        kept.append(gen)
        if vector:
            basis.append({k: Fraction(v) for k, v in vector.items()})
    return GeneratorSet(tuple(kept), gens.origin_index, gens.system)


def cmd_express(args) -> int:
    presentation, init, result = _complete(args.file, args.limits, args.interreduce)
    if result.status != "complete":
        print("completion exceeded limits; cannot express", file=_sys.stderr)
        return LIMIT
    gens = generate(result, init)
    with open(args.cell, encoding="utf-8") as handle:
        data = json.load(handle)
    try:
        cell = twocell.cell_from_json(data)
    except (KeyError, TypeError, ValueError) as err:
        print(f"malformed cell: {err}", file=_sys.stderr)
        return BAD_CERT
    bad = twocell.validate(cell, gens.system.rule_map)
    if bad is not None:
        print(f"cell does not replay at step {bad}", file=_sys.stderr)
        return BAD_CERT
    try:
        decomposition = express(cell, gens)
    except UnmatchedDiamond as err:
        print(f"unmatched diamond: {err}", file=_sys.stderr)
        return USAGE
    data = decomposition_to_json(decomposition)

    def render(data):
        print(f"base: {data['base']}")
        for factor in data["factors"]:
            print(f"  {factor['gen']}^{factor['exp']} whiskered "
                  f"[{factor['x']}] _ [{factor['z']}]")
        print(f"residual: {_render_cell(data['residual'])}")

    _emit(data, args.json, render)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logrew",
        description="Logged string rewriting over monoid presentations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_limits=True):
        p.add_argument("file", help="presentation file")
        p.add_argument("--json", action="store_true", help="emit JSON")
        if needs_limits:
            p.add_argument("--limits", type=_limits, default=CompletionLimits(),
                           help="completion limits MAX_RULES,MAX_PASSES,MAX_WORD_LENGTH")
            p.add_argument("--interreduce", action="store_true",
                           help="canonicalize the completed system (heuristic)")

    p = sub.add_parser("complete", help="run logged Knuth-Bendix completion")
    common(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("nf", help="normal form of a word")
    common(p)
    p.add_argument("word", help="word, space separated letters or 1")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("reduce", help="reduce a word, emitting the log")
    common(p)
    p.add_argument("word")
    p.add_argument("--expand", action="store_true",
                   help="expand derived-rule steps to initial rules")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("prove", help="prove two words equal with a witness")
    common(p)
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--expand", action="store_true",
                   help="expand derived-rule steps to initial rules")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="replay a certificate against the initial rules")
    p.add_argument("file")
    p.add_argument("certificate", help="two-cell JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("endos", help="generating endorewrites of the completed system")
    common(p)
    p.add_argument("--minimize", action="store_true",
                   help="heuristic: filter by abelianization rank")
    p.set_defaults(func=cmd_endos)

    p = sub.add_parser("express", help="express an endorewrite in the generators")
    common(p)
    p.add_argument("cell", help="two-cell JSON file")
    p.set_defaults(func=cmd_express)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=_sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return USAGE if err.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=_sys.stderr)
        return USAGE
    except FileNotFoundError as err:
        print(f"cannot read {err.filename}", file=_sys.stderr)
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
