# -*- coding: utf-8 -*-

import argparse
import configparser
import json
import logging
import sys
from typing import Dict, List, Optional

import colorama
import pandas as pd
from pyfiglet import Figlet
from pygments import highlight
from pygments.formatters import TerminalFormatter
from pygments.lexers import JsonLexer

from schottky import __version__
from schottky.description import (
    SchottkyDescription,
    build_f_family,
    build_gamma_ms,
    build_gamma_s,
)
from schottky.errors import ParseError
from schottky.group import enumerate_words, reduce_to_domain, sample_points
from schottky.moebius import QPoint
from schottky.topology import signature, pattern_of, topology_record, topology_table
from schottky.utils import format_rational, parse_rational
from schottky.validation import validate
from schottky.vis.svg import RenderSpec, render_svg


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2

_BOOLEAN_KEYS = {"genus0", "json", "allow_long"}


def load_config(path: str) -> Dict[str, object]:
    """
    Read a flat ``key=value`` file into argparse defaults

    Keys are the long flag names, dashes and underscores are interchangeable.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    with open(path, encoding="utf-8") as fobj:
        try:
            parser.read_string("[schottky]\n" + fobj.read(), source=path)
        except configparser.Error as exc:
            raise ParseError(f"malformed config file {path}: {exc}") from exc
    section = parser["schottky"]
    config = {}
    for key in section:
        name = key.replace("-", "_")
        if name in _BOOLEAN_KEYS:
            try:
                config[name] = section.getboolean(key)
            except ValueError as exc:
                raise ParseError(f"config key {key} expects a boolean") from exc
        else:
            config[name] = section[key]
    return config


def parse_point(text: str) -> QPoint:
    "Parse ``re,im`` with rational coordinates"
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"point must be re,im, got '{text}'")
    re_, im = (parse_rational(p) for p in parts)
    if im <= 0:
        raise ParseError(f"point must lie in the upper half-plane, got '{text}'")
    return QPoint(re_, im)


def _read_input(path: str) -> SchottkyDescription:
    if path == "-":
        return SchottkyDescription.from_text(sys.stdin.read())
    with open(path, encoding="utf-8") as fobj:
        return SchottkyDescription.from_text(fobj.read())


def _emit(text: str, output: Optional[str] = None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fobj:
            fobj.write(text)


def _is_tty() -> bool:
    return sys.stdout.isatty()


def _emit_json(document, output: Optional[str] = None) -> None:
    text = json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    if output is None and _is_tty():
        text = highlight(text, JsonLexer(), TerminalFormatter())
    _emit(text, output)


def _verdict(passed: bool) -> str:
    word = "PASS" if passed else "FAIL"
    if not _is_tty():
        return word
    return (colorama.Fore.GREEN if passed else colorama.Fore.RED) + word + colorama.Style.RESET_ALL


def cmd_build(args) -> int:
    if args.ffamily is not None:
        desc = build_f_family(int(args.ffamily))
    elif args.genus0:
        if args.s is None:
            parser_error("build --genus0 needs --s")
        desc = build_gamma_s(args.s)
    else:
        if None in (args.m, args.s, args.N):
            parser_error("build needs --m, --s and --N (or --genus0 --s)")
        desc = build_gamma_ms(args.m, args.s, args.N)
    _emit(desc.to_text(), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    desc = _read_input(args.input)
    report = validate(desc, parse_rational(args.epsilon))
    if args.json:
        _emit_json(report.to_dict(), args.output)
        return EXIT_OK if report.passed else EXIT_DOMAIN

    lines = []
    for number, condition in enumerate(report.conditions, start=1):
        lines.append(f"condition {number}: {_verdict(condition.passed)}")
        lines.extend(f"  {witness}" for witness in condition.witnesses)
    smallest = report.min_inversive_distance
    lines.append(
        "min inversive distance: " + ("-" if smallest is None else format_rational(smallest))
    )
    lines.append(f"certified epsilon: {report.certified_epsilon:.12g}")
    lines.append(f"epsilon: {format_rational(report.epsilon)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_DOMAIN


def cmd_reduce(args) -> int:
    desc = _read_input(args.input)
    if args.point is not None:
        points = [parse_point(args.point)]
    elif args.sample is not None:
        bound = 5 * (desc.params.s or 1)
        points = sample_points(args.sample, args.seed, bound, "1/100", 10)
    else:
        parser_error("reduce needs --point or --sample")

    lines = []
    for z in points:
        w, word = reduce_to_domain(desc, z, args.max_iters)
        prefix = f"{z} -> " if args.sample is not None else ""
        lines.append(f"{prefix}{format_rational(w.re)}, {format_rational(w.im)} ; word: {word}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_words(args) -> int:
    desc = _read_input(args.input)
    words = enumerate_words(desc, args.max_len, allow_long=args.allow_long)
    _emit("".join(f"{w}\n" for w in words), args.output)
    return EXIT_OK


def cmd_topology(args) -> int:
    desc = _read_input(args.input)
    sig = signature(pattern_of(desc))
    if args.sweep is not None:
        if desc.params.variant != "gamma_ms":
            parser_error("--sweep needs a Γ_{m,s} description")
        table = topology_table(desc.params.m, desc.params.s, args.sweep, args.level)
    else:
        table = pd.DataFrame([topology_record(desc, args.level)])

    if args.json:
        _emit_json(
            {
                "signature": {
                    "r": sig.rank,
                    "b": sig.boundary_components,
                    "g": sig.genus,
                    "chi": sig.euler_characteristic,
                },
                "level": args.level,
                "table": json.loads(table.to_json(orient="records")),
            },
            args.output,
        )
        return EXIT_OK

    header = str(sig)
    text = ""
    if args.output is None and _is_tty():
        params = desc.params
        title = f"S({params.m},{params.s})" if params.variant == "gamma_ms" else f"S({params.s})"
        if params.variant != "custom":
            text += colorama.Fore.RED + Figlet("small").renderText(title) + colorama.Style.RESET_ALL
        header = colorama.Fore.GREEN + header + colorama.Style.RESET_ALL
    text += header + "\n" + table.to_string(index=False) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    desc = _read_input(args.input)
    spec = RenderSpec(
        viewport=RenderSpec.parse_viewport(args.viewport) if args.viewport else None,
        layers=RenderSpec.parse_layers(args.layers),
        palette=args.palette,
        stroke_width=float(args.stroke_width),
        width=int(args.width),
    )
    _emit(render_svg(desc, spec), args.output)
    return EXIT_OK


class _UsageError(Exception):
    pass


def parser_error(message: str):
    raise _UsageError(message)


def build_parser(defaults: Optional[Dict[str, object]] = None) -> argparse.ArgumentParser:
    """
    Command line parser, ``defaults`` (from a config file) override the
    built-in defaults of every subcommand
    """
    parser = argparse.ArgumentParser(
        prog="schottky",
        description="Exact geometric Schottky groups of the hyperbolic plane",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="flat key=value file with default flag values")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log INFO, repeat for DEBUG"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    subs = []

    def command(name: str, func, help: str, with_input: bool = True):
        sub = subparsers.add_parser(name, help=help)
        if with_input:
            sub.add_argument("input", help="description document, '-' for standard input")
        sub.add_argument("-o", "--output", help="output file, standard output by default")
        sub.set_defaults(func=func)
        subs.append(sub)
        return sub

    build = command("build", cmd_build, "build a truncated description", with_input=False)
    build.add_argument("--m", type=int, help="number of ends with infinite genus")
    build.add_argument("--s", type=int, help="number of ends")
    build.add_argument("--N", type=int, help="truncation level of the g and h families")
    build.add_argument("--genus0", action="store_true", help="build Γ_s from f_1..f_{s-1}")
    build.add_argument("--ffamily", type=int, metavar="T", help="build f_1..f_T")

    check = command("validate", cmd_validate, "check the five Schottky conditions")
    check.add_argument("--epsilon", default="1/4", help="neighborhood radius p/q")
    check.add_argument("--json", action="store_true")

    reduce_ = command("reduce", cmd_reduce, "reduce points into the fundamental domain")
    reduce_.add_argument("--point", help="point re,im with rational coordinates")
    reduce_.add_argument("--sample", type=int, metavar="COUNT", help="reduce random points")
    reduce_.add_argument("--seed", type=int, default=0)
    reduce_.add_argument("--max-iters", type=int, default=10_000)

    words = command("words", cmd_words, "list reduced words")
    words.add_argument("--max-len", type=int, default=2)
    words.add_argument("--allow-long", action="store_true")

    topo = command("topology", cmd_topology, "signature and ends of the quotient")
    topo.add_argument("--level", type=int, default=0, help="exhaustion level, 0 for none")
    topo.add_argument("--sweep", type=int, metavar="N_MAX", help="tabulate N = 1..N_MAX")
    topo.add_argument("--json", action="store_true")

    render = command("render", cmd_render, "draw the description as SVG")
    render.add_argument("--layers", default="circles", help="e.g. circles,intervals,tiles:2,box:1")
    render.add_argument("--viewport", help="x_min,x_max,y_max")
    render.add_argument("--palette", default="viridis", help="matplotlib colormap name")
    render.add_argument("--stroke-width", default="1.0")
    render.add_argument("--width", type=int, default=1200)

    for sub in subs:
        sub.set_defaults(**(defaults or {}))
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the ``schottky`` command

    Returns 0 on success, 1 for domain errors (invalid parameters, failed
    validation, exhausted reduction budget) and 2 for unreadable input.
    """
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    config = {}
    if known.config:
        try:
            config = load_config(known.config)
        except (OSError, ParseError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    args = build_parser(config).parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    if _is_tty():
        colorama.init()

    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
