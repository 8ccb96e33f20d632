"""Command-line driver.

Exit status: 0 on success, 1 when the mathematics says no (not an
automorphism, not liftable, unsupported grading), 2 on usage or parse
errors.  Results go to stdout, diagnostics to stderr.

Space maps are read and written in the caller's variable order; plane maps
use the normalized order (u is the restriction of the variable of largest
positive degree, v of the other positive one).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import examples
from .endo import PolyMap, compose_all, is_graded, permute_variables, unpermute_variables
from .errors import DomainError, GrautError, UsageError
from .expr import ParseError, format, parse_map
from .gens import decompose_graded, describe_generator, recompose, word_from_json, word_to_json
from .grading import (
    GradingClass,
    NormalizedGrading,
    RawGrading,
    admits_wild,
    classify,
    induced_cyclic,
    normalize,
)
from .lift import EMember, lift, restrict, split_torus
from .poly import WeightVector


def _use_color(stream) -> bool:
    return os.environ.get("GRAUTKIT_COLOR", "1") != "0" and stream.isatty()


def _style(text: str, code: str, stream=sys.stdout) -> str:
    return f"\033[{code}m{text}\033[0m" if _use_color(stream) else text


def _read_source(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    path = Path(value)
    if "\n" not in value and ";" not in value and path.is_file():
        return path.read_text(encoding="ascii", errors="strict")
    return value


def _load_map(value: str) -> PolyMap:
    try:
        return parse_map(_read_source(value))
    except UnicodeDecodeError:
        raise UsageError(f"map file {value} is not ASCII") from None


def _raw_grading(args) -> RawGrading:
    if not args.grading:
        raise UsageError("--grading is required")
    return RawGrading.parse(args.grading)


def _grading(args) -> NormalizedGrading:
    return normalize(_raw_grading(args))


def _to_normalized(phi: PolyMap, g: NormalizedGrading) -> PolyMap:
    if phi.arity != 3:
        raise UsageError("expected a space map in x, y, z")
    return permute_variables(phi, g.permutation)


def _from_normalized(phi: PolyMap, g: NormalizedGrading) -> PolyMap:
    return unpermute_variables(phi, g.permutation)


def _grading_json(g: NormalizedGrading) -> dict:
    return {"a": g.a, "b": g.b, "c": g.c, "sign": g.sign,
            "permutation": list(g.permutation), "scale": g.scale}


def _grading_text(g: NormalizedGrading) -> str:
    names = "xyz"
    perm = ",".join(names[i] for i in g.permutation)
    return f"a={g.a} b={g.b} c={g.c} sign={g.sign:+d} permutation={perm} scale={g.scale}"


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _map_json(phi: PolyMap) -> dict:
    return {"components": [format(p) for p in phi.images]}


# -- subcommands ----------------------------------------------------------

def cmd_classify(args) -> int:
    raw = _raw_grading(args)
    kind = classify(raw)
    payload = {"classification": kind.value}
    lines = [f"classification: {kind.value}"]
    if kind is GradingClass.MIXED:
        g = normalize(raw)
        payload["normalized"] = _grading_json(g)
        lines.append(f"normalized: {_grading_text(g)}")
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_admits_wild(args) -> int:
    raw = _raw_grading(args)
    kind = classify(raw)
    payload = {"classification": kind.value, "wild": False}
    if kind is not GradingClass.MIXED:
        _emit(args, f"not wild-admitting: classification {kind.value}", payload)
        return 0
    g = normalize(raw)
    cert = admits_wild(g)
    payload["normalized"] = _grading_json(g)
    if cert is None:
        _emit(args, "not wild-admitting", payload)
    else:
        payload.update(wild=True, P=cert.P, Q=cert.Q)
        _emit(args, f"{_style('wild-admitting', '1;31')}: P={cert.P} Q={cert.Q}", payload)
    return 0


def cmd_check_graded(args) -> int:
    raw = _raw_grading(args)
    phi = _load_map(args.map[0])
    if phi.arity == 3:
        ok = is_graded(phi, WeightVector(raw.degrees))
    else:
        ok = is_graded(phi, induced_cyclic(normalize(raw)))
    _emit(args, "graded" if ok else "not graded", {"graded": ok})
    return 0


def cmd_restrict(args) -> int:
    g = _grading(args)
    phi = _to_normalized(_load_map(args.map[0]), g)
    plane = restrict(EMember(phi, g))
    _emit(args, format(plane), _map_json(plane))
    return 0


def cmd_lift(args) -> int:
    g = _grading(args)
    plane = _load_map(args.map[0])
    if plane.arity != 2:
        raise UsageError("lift expects a plane map in u, v")
    space = _from_normalized(lift(plane, g).map, g)
    _emit(args, format(space), _map_json(space))
    return 0


def cmd_split_torus(args) -> int:
    g = _grading(args)
    phi = _to_normalized(_load_map(args.map[0]), g)
    member, torus = split_torus(phi, g)
    e_part = _from_normalized(member.map, g)
    _emit(args, f"lambda: {torus.lam}\nE part: {format(e_part)}",
          {"lambda": str(torus.lam), "e_part": _map_json(e_part)})
    return 0


def cmd_compose(args) -> int:
    maps = [_load_map(m) for m in args.map]
    arities = {m.arity for m in maps}
    if len(arities) != 1:
        raise UsageError("all maps must have the same arity")
    out = compose_all(maps, arities.pop())
    _emit(args, format(out), _map_json(out))
    return 0


def cmd_decompose(args) -> int:
    g = _grading(args)
    phi = _to_normalized(_load_map(args.map[0]), g)
    word = decompose_graded(phi, g)
    if args.json:
        print(json.dumps(word_to_json(word), sort_keys=True))
    else:
        print(_render_word(word))
    return 0


def _render_word(word) -> str:
    if not word.factors:
        return "(identity)"
    return "\n".join(f"{i}. {describe_generator(gen)}" for i, gen in enumerate(word.factors, 1))


def cmd_recompose(args) -> int:
    g = _grading(args)
    text = _read_source(args.word)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"generator word is not valid JSON: {exc}") from None
    phi = _from_normalized(recompose(word_from_json(data, g)), g)
    _emit(args, format(phi), _map_json(phi))
    return 0


def cmd_nagata(args) -> int:
    g = examples.NAGATA_GRADING
    sigma = examples.nagata_sigma()
    plane = restrict(EMember(sigma, g))
    word = decompose_graded(sigma, g)
    if args.json:
        print(json.dumps({"sigma": _map_json(sigma), "restriction": _map_json(plane),
                          "word": word_to_json(word)}, sort_keys=True))
        return 0
    head = lambda s: _style(s, "1")  # noqa: E731
    print(f"{head('grading')}: {g.raw()}")
    print(f"{head('sigma')}: {format(sigma)}")
    print(f"{head('restriction')}: {format(plane)}")
    print(f"{head('word')}:")
    print(_render_word(word))
    return 0


COMMANDS = {
    "classify": (cmd_classify, "classify a Z-grading and show its normalization"),
    "admits-wild": (cmd_admits_wild, "decide whether a grading admits graded wild automorphisms"),
    "check-graded": (cmd_check_graded, "check that a map preserves a grading"),
    "restrict": (cmd_restrict, "restrict a graded map fixing z to the plane z = 1"),
    "lift": (cmd_lift, "lift a graded plane map to a space automorphism fixing z"),
    "split-torus": (cmd_split_torus, "split off the torus factor (x, y, lambda*z)"),
    "compose": (cmd_compose, "compose maps, first --map outermost"),
    "decompose": (cmd_decompose, "write a graded automorphism as a generator word"),
    "recompose": (cmd_recompose, "rebuild a map from a JSON generator word"),
    "nagata": (cmd_nagata, "run the full pipeline on the Nagata automorphism"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grautkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name != "nagata" and name != "compose":
            p.add_argument("--grading", help="three integers, e.g. '3 1 -1'")
        if name in ("check-graded", "restrict", "lift", "split-torus", "decompose", "compose"):
            p.add_argument("--map", action="append", required=True,
                           help="map file, '-' for stdin, or inline text 'f; g; h'")
        if name == "recompose":
            p.add_argument("--word", default="-", help="GenWord JSON file (default: stdin)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc.message}", file=sys.stderr)
        if exc.text and "\n" not in exc.text:
            print(f"  {exc.text}", file=sys.stderr)
            print("  " + " " * exc.span.start + "^" * max(1, exc.span.end - exc.span.start), file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        msg = str(exc)
        print(msg if msg.startswith("not ") else f"{type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    except GrautError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
