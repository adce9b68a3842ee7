"""``ogkit`` command-line front end.

Exit codes: 0 success (or the checked property holds), 1 the checked
property is false, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import structured
from .congruence import (
    DISCRETE_TEXT,
    congruence_lattice,
    max_congruence,
    parse_congruence,
)
from .enumeration import count_simple
from .errors import OgError
from .graph import Optiongraph, read_optiongraph, serialize, terminals, to_dot
from .morphism import find_isomorphism, image, is_option_preserving, kernel, parse_map
from .quotient import first_iso_witness, minimize, quotient
from .sums import DEFAULT_SEP, game_sum
from .theorems import THEOREMS, verify_theorems
from .valuation import (
    fim_partition,
    format_remoteness,
    is_rulegraph,
    valuate,
)

log = logging.getLogger("ogkit")

DEFAULT_SEED = 0


class Failed(Exception):
    """The checked property is false (exit code 1)."""


def _text_partition(p) -> str:
    return str(p) or DISCRETE_TEXT


def _classes(p) -> list[list[str]]:
    return [sorted(c) for c in p.label_classes()]


def _graph_fields(g: Optiongraph) -> dict:
    return {
        "positions": list(g.labels),
        "options": {lab: [g.labels[q] for q in row] for lab, row in zip(g.labels, g.options)},
    }


def _emit(args, command: str, text: str, fields: dict):
    if args.format == "structured":
        out = structured.dump(command, fields)
    else:
        out = text
    target = getattr(args, "output", None)
    if target:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _emit_graph(args, command: str, g: Optiongraph, extra: dict | None = None):
    if args.format == "dot":
        text = to_dot(g)
    else:
        text = serialize(g)
    _emit(args, command, text, {**_graph_fields(g), **(extra or {})})


def cmd_check(args):
    g = read_optiongraph(args.file)
    term = [g.labels[p] for p in terminals(g)]
    rule = is_rulegraph(g)
    simple = max_congruence(g).is_discrete
    text = (
        f"positions: {g.n}\narrows: {g.arrow_count}\nterminals: {' '.join(term)}\n"
        f"rulegraph: {'yes' if rule else 'no'}\nsimple: {'yes' if simple else 'no'}\n"
    )
    _emit(args, "check", text, {
        "positions": list(g.labels), "arrows": g.arrow_count, "terminals": term,
        "rulegraph": rule, "simple": simple,
    })


def cmd_fim(args):
    g = read_optiongraph(args.file)
    fim = fim_partition(g)
    parts = {k: g.names(getattr(fim, k)) for k in ("F", "I", "M")}
    text = "".join(f"{k}: {' '.join(v)}".rstrip() + "\n" for k, v in parts.items())
    _emit(args, "fim", text, parts)


def cmd_max_congruence(args):
    g = read_optiongraph(args.file)
    top = max_congruence(g)
    _emit(args, "max-congruence", _text_partition(top) + "\n",
          {"congruence": str(top), "classes": _classes(top)})


def cmd_minimize(args):
    g = read_optiongraph(args.file)
    q = minimize(g)
    _emit_graph(args, "minimize", q.quotient, {"congruence": str(q.congruence)})


def cmd_quotient(args):
    g = read_optiongraph(args.file)
    theta = parse_congruence(g, args.theta)
    q = quotient(g, theta)
    _emit_graph(args, "quotient", q.quotient, {"congruence": str(theta)})


def cmd_congruences(args):
    g = read_optiongraph(args.file)
    lat = congruence_lattice(g, args.max_positions)
    names = [_text_partition(c) for c in lat.elements]
    lines = [f"{i}: {name}" for i, name in enumerate(names)]
    fields = {"count": len(names), "congruences": [str(c) for c in lat.elements],
              "top": lat.top, "bottom": lat.bottom}
    if args.lattice:
        lines += [f"cover: {names[a]} < {names[b]}" for a, b in lat.covers]
        fields["covers"] = [list(e) for e in lat.covers]
    if args.figure:
        from .plotting import plot_lattice

        plot_lattice(lat, args.figure, title=f"Con({os.path.basename(args.file)})")
    _emit(args, "congruences", "\n".join(lines) + "\n", fields)


def cmd_values(args):
    g = read_optiongraph(args.file)
    v = valuate(g)
    rows = [
        [g.labels[p], str(v.outcome[p]), format_remoteness(v.remoteness[p]), str(v.nim[p])]
        for p in g.positions()
    ]
    if args.figure:
        from .plotting import plot_optiongraph

        deco = {p: f"{rows[p][3]} / R={rows[p][2]}" for p in g.positions()}
        plot_optiongraph(g, args.figure, deco, title="nim-value / remoteness")
    data = [[lab, out, int(r) if r != "inf" else r, nim] for lab, out, r, nim in rows]
    _emit(args, "values", "".join(" ".join(r) + "\n" for r in rows),
          {"columns": ["label", "outcome", "remoteness", "nim"], "values": data})


def cmd_map(args):
    c = read_optiongraph(args.cfile)
    d = read_optiongraph(args.dfile)
    with open(args.mapfile, encoding="utf-8") as fh:
        f = parse_map(fh.read(), c, d, path=args.mapfile)
    verdict = is_option_preserving(f)
    if not verdict:
        _emit(args, "map", f"option-preserving: no\nwitness: {verdict.reason}\n",
              {"option_preserving": False, "witness": verdict.reason})
        raise Failed()
    ker = kernel(f)
    img = image(f)
    iso = first_iso_witness(f)
    pairs = iso.label_pairs()
    text = (
        "option-preserving: yes\n"
        f"kernel: {_text_partition(ker)}\n"
        f"image: {' '.join(img.names())}\n"
        + "".join(f"first-iso: {a} -> {b}\n" for a, b in pairs)
    )
    _emit(args, "map", text, {
        "option_preserving": True, "kernel": str(ker), "kernel_classes": _classes(ker),
        "image": img.names(), "first_iso": [list(p) for p in pairs],
    })


def cmd_sum(args):
    a = read_optiongraph(args.file1)
    b = read_optiongraph(args.file2)
    _emit_graph(args, "sum", game_sum(a, b, args.sep))


def cmd_iso(args):
    a = read_optiongraph(args.file1)
    b = read_optiongraph(args.file2)
    f = find_isomorphism(a, b)
    if f is None:
        _emit(args, "iso", "isomorphic: no\n", {"isomorphic": False})
        raise Failed()
    pairs = f.label_pairs()
    _emit(args, "iso", "isomorphic: yes\n" + "".join(f"{x} -> {y}\n" for x, y in pairs),
          {"isomorphic": True, "map": [list(p) for p in pairs]})


def cmd_enumerate_simple(args):
    def progress(done, total):
        log.info("chunk %d/%d", done, total)

    report = count_simple(args.n, jobs=args.jobs, long_running=args.long_running,
                          checkpoint=args.checkpoint, progress=progress)
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    if args.dump:
        os.makedirs(args.dump, exist_ok=True)
        for k, g in enumerate(report.representatives()):
            with open(os.path.join(args.dump, f"simple_n{args.n}_{k:05d}.og"), "w",
                      encoding="utf-8", newline="\n") as fh:
                fh.write(serialize(g))
    fields = {
        "n": report.n, "labeled_total": report.labeled_total,
        "simple_labeled": report.simple_labeled, "simple_up_to_iso": report.simple_up_to_iso,
    }
    _emit(args, "enumerate-simple", "".join(f"{k}: {v}\n" for k, v in fields.items()), fields)


def cmd_verify_theorems(args):
    g = read_optiongraph(args.file)
    report = verify_theorems(g, trials=args.trials, seed=args.seed, bound=args.max_positions)
    lines = [f"seed: {args.seed}", f"trials: {args.trials}"]
    results = {}
    for name in THEOREMS:
        bad = report.failed(name)
        lines.append(f"{name}: {'pass' if not bad else 'FAIL'} "
                     f"({report.passed[name]}/{report.passed[name] + bad})")
        results[name] = {"passed": report.passed[name], "failed": bad}
    lines += [f"failure: {name} trial {t}: {why}" for name, t, why in report.failures]
    _emit(args, "verify-theorems", "\n".join(lines) + "\n",
          {"seed": args.seed, "trials": args.trials, "results": results,
           "failures": [list(f) for f in report.failures]})
    if not report.ok:
        raise Failed()


def cmd_dot(args):
    g = read_optiongraph(args.file)
    deco = None
    if args.decorate:
        v = valuate(g)
        if args.decorate == "nim":
            deco = {p: str(v.nim[p]) for p in g.positions()}
        elif args.decorate == "remoteness":
            deco = {p: format_remoteness(v.remoteness[p]) for p in g.positions()}
        elif args.decorate == "outcome":
            deco = {p: str(v.outcome[p]) for p in g.positions()}
        else:
            fim = fim_partition(g)
            deco = {p: fim.class_of(p) for p in g.positions()}
    sys.stdout.write(to_dot(g, deco))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ogkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default="text")
    graph_fmt = argparse.ArgumentParser(add_help=False)
    graph_fmt.add_argument("--format", choices=("text", "structured", "dot"), default="text",
                           help="text emits .og")
    graph_fmt.add_argument("-o", "--output", help="write to this file instead of stdout")
    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument("--max-positions", type=int, default=None,
                       help="congruence-enumeration bound (default: $OGKIT_MAX_POSITIONS or 10)")

    def add(name, func, help, parents=(fmt,)):
        p = sub.add_parser(name, help=help, parents=list(parents))
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a .og file and summarise it").add_argument("file")
    add("fim", cmd_fim, "finite / infinite / mixed position classes").add_argument("file")
    add("max-congruence", cmd_max_congruence, "the maximum congruence").add_argument("file")
    add("minimize", cmd_minimize, "minimum quotient as .og", (graph_fmt,)).add_argument("file")
    p = add("congruences", cmd_congruences, "all congruences", (fmt, bound))
    p.add_argument("file")
    p.add_argument("--lattice", action="store_true", help="also print Hasse-diagram cover edges")
    p.add_argument("--figure", help="render the Hasse diagram to this image file")
    p = add("quotient", cmd_quotient, "quotient by a congruence", (graph_fmt,))
    p.add_argument("file")
    p.add_argument("--theta", required=True, help='congruence, e.g. "a b | s t" or "ab|st"')
    p = add("values", cmd_values, "outcome, remoteness and extended nim-value per position")
    p.add_argument("file")
    p.add_argument("--figure", help="render the graph with its values to this image file")
    p = add("map", cmd_map, "verify a map, print kernel, image and first-isomorphism witness")
    p.add_argument("cfile")
    p.add_argument("dfile")
    p.add_argument("mapfile")
    p = add("sum", cmd_sum, "game sum of two optiongraphs as .og", (graph_fmt,))
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--sep", default=DEFAULT_SEP, help="pair label separator (default ',')")
    p = add("iso", cmd_iso, "test two optiongraphs for isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p = add("enumerate-simple", cmd_enumerate_simple, "count simple optiongraphs on N positions")
    p.add_argument("n", type=int, metavar="N")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--long-running", action="store_true", help="allow N = 6 (2**36 masks)")
    p.add_argument("--checkpoint", help="progress file for --long-running sweeps")
    p.add_argument("--dump", metavar="DIR", help="write one .og per isomorphism class")
    p = add("verify-theorems", cmd_verify_theorems, "randomised isomorphism-theorem checks",
            (fmt, bound))
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p = sub.add_parser("dot", help="DOT export")
    p.set_defaults(func=cmd_dot)
    p.add_argument("file")
    p.add_argument("--decorate", choices=("nim", "remoteness", "outcome", "fim"))
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        args.func(args)
    except Failed:
        return 1
    except OgError as exc:
        print(f"ogkit: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ogkit: error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
