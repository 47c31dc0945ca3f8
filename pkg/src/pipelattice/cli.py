"""Command-line surface tying all modules together.

Every subcommand validates its permutation argument before touching any
file, emits deterministic output for fixed inputs and flags, and maps
failures to stable exit codes:

* ``0`` — success,
* ``1`` — domain error (bad permutation, malformed file, budget hit),
* ``2`` — verification failure (a checked guarantee did not hold),
* ``64`` — usage error (unknown subcommand, malformed flags).

Pipe dreams are passed by file to keep shell quoting trivial; ``-``
reads the standard input stream.  ``--json`` mirrors every textual
output as structured data on stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from .errors import (
    DomainError,
    InternalInvariantError,
    ResourceError,
    VerificationError,
)
from .lattice import build_oracle, join, leq, meet
from .markov import WalkConfig, run_walk, save_trace_figure
from .moveop import m_explicit, m_prime, m_recursive, path_of
from .moves import enumerate_rpd
from .perm import Permutation
from .pipedream import (
    PipeDream,
    d_bot,
    d_top,
    format_dream,
    from_json,
    is_reduced,
    parse,
    render_unicode,
)
from .tableau import (
    format_tableau,
    from_tableau,
    tableau_from_json,
    tableau_leq,
    tableau_of,
)
from .verify import (
    all_ok,
    format_report,
    verify_permutation,
    verify_symmetric_group,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 64."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _pivot(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected i,j — got {text!r}")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers i,j — got {text!r}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_dream(w: Permutation, path: str) -> PipeDream:
    """Read a pipe dream file (staircase text or JSON) and validate it."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        D = from_json(text)
    else:
        D = parse(text)
    if D.n != w.n:
        raise DomainError(
            f"staircase size {D.n} does not match the permutation window "
            f"size {w.n}"
        )
    if not is_reduced(D):
        raise DomainError(f"pipe dream in {path!r} is not reduced")
    if D.permutation != w:
        raise DomainError(
            f"pipe dream in {path!r} reduces to "
            f"{D.permutation.to_text()}, not {w.to_text()}"
        )
    return D


def _dream_payload(D: PipeDream) -> dict:
    return {"n": D.n, "crosses": [list(t) for t in D.sorted_crosses]}


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _canonical_order(w: Permutation) -> list[PipeDream]:
    return sorted(enumerate_rpd(w), key=lambda D: (D.potential, format_dream(D)))


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_enumerate(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    dreams = _canonical_order(w)
    if args.json:
        payload = {
            "permutation": w.to_text(),
            "count": len(dreams),
            "dreams": [_dream_payload(D) for D in dreams],
        }
        if args.count:
            del payload["dreams"]
        _emit_json(payload)
        return EXIT_OK
    print(len(dreams))
    if not args.count:
        for D in dreams:
            print()
            print(format_dream(D))
    return EXIT_OK


def _cmd_render(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    D = _load_dream(w, args.dream)
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "dream": _dream_payload(D),
                "unicode": render_unicode(D),
            }
        )
        return EXIT_OK
    print(render_unicode(D))
    return EXIT_OK


def _node_id(D: PipeDream) -> str:
    return "d" + hashlib.sha1(format_dream(D).encode()).hexdigest()[:10]


def _cmd_hasse(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    oracle = build_oracle(w)
    elts = oracle.elements
    bot_idx = oracle.idx(d_bot(w))
    top_idx = oracle.idx(d_top(w))
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "nodes": [
                    {
                        "id": _node_id(D),
                        "dream": _dream_payload(D),
                        "role": (
                            "bottom" if i == bot_idx
                            else "top" if i == top_idx
                            else "inner"
                        ),
                    }
                    for i, D in enumerate(elts)
                ],
                "edges": [
                    [_node_id(elts[i]), _node_id(elts[child])]
                    for i in range(len(elts))
                    for child in sorted(oracle.covers[i])
                ],
            }
        )
        return EXIT_OK
    lines = [
        "digraph pipedreams {",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for i, D in enumerate(elts):
        label = format_dream(D).replace("\n", "\\n")
        style = ""
        if i == bot_idx:
            style = ', style=filled, fillcolor="#cfe8ff"'
        elif i == top_idx:
            style = ', style=filled, fillcolor="#ffe9b8"'
        lines.append(f'  {_node_id(D)} [label="{label}"{style}];')
    for i in range(len(elts)):
        for child in sorted(oracle.covers[i]):
            lines.append(f"  {_node_id(elts[i])} -> {_node_id(elts[child])};")
    lines.append("}")
    print("\n".join(lines))
    return EXIT_OK


def _binary_op(args: argparse.Namespace, op) -> int:
    w = Permutation.from_text(args.w)
    a = _load_dream(w, args.first)
    b = _load_dream(w, args.second)
    result = op(a, b)
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "result": _dream_payload(result),
                "text": format_dream(result),
            }
        )
        return EXIT_OK
    print(format_dream(result))
    return EXIT_OK


def _cmd_join(args: argparse.Namespace) -> int:
    return _binary_op(args, join)


def _cmd_meet(args: argparse.Namespace) -> int:
    return _binary_op(args, meet)


def _verdict(low: bool, high: bool) -> str:
    if low and high:
        return "="
    if low:
        return "<="
    if high:
        return ">="
    return "incomparable"


def _cmd_compare(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    a = _load_dream(w, args.first)
    b = _load_dream(w, args.second)
    join_verdict = _verdict(leq(a, b), leq(b, a))
    ta, tb = tableau_of(a), tableau_of(b)
    tab_verdict = _verdict(tableau_leq(ta, tb), tableau_leq(tb, ta))
    agree = join_verdict == tab_verdict
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "join_verdict": join_verdict,
                "tableau_verdict": tab_verdict,
                "agree": agree,
            }
        )
    else:
        print(f"join-based: {join_verdict}")
        print(f"tableau-based: {tab_verdict}")
        if not agree:
            print("DISAGREEMENT", file=sys.stderr)
    return EXIT_OK if agree else EXIT_VERIFY


_VARIANTS = {
    "recursive": m_recursive,
    "explicit": m_explicit,
    "prime": m_prime,
}


def _cmd_move(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    D = _load_dream(w, args.dream)
    result = _VARIANTS[args.variant](D, *args.pivot)
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "pivot": list(args.pivot),
                "variant": args.variant,
                "result": _dream_payload(result),
                "text": format_dream(result),
            }
        )
        return EXIT_OK
    print(format_dream(result))
    return EXIT_OK


def _cmd_path(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    D = _load_dream(w, args.dream)
    ps = path_of(D, *args.pivot)
    pathset = set(ps.path)
    rows = []
    for i in range(1, D.n + 1):
        row = []
        for j in range(1, D.n + 2 - i):
            t = (i, j)
            if t in pathset:
                row.append("*")
            elif t in ps.shape:
                row.append("o")
            elif D.is_cross(i, j):
                row.append("+")
            else:
                row.append(".")
        rows.append("".join(row))
    marked = "\n".join(rows)
    ctx = ps.context
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "pivot": list(args.pivot),
                "context": {
                    "h": ctx.h,
                    "k": ctx.k,
                    "max_bump_row": ctx.max_bump_row,
                    "min_bump_col": ctx.min_bump_col,
                },
                "path": [list(t) for t in ps.path],
                "corners": sorted(list(t) for t in ps.corners),
                "shape": sorted(list(t) for t in ps.shape),
                "marked": marked,
            }
        )
        return EXIT_OK
    print(marked)
    return EXIT_OK


def _cmd_tableau(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    D = _load_dream(w, args.dream)
    T = tableau_of(D)
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "entries": {f"{x},{y}": t for (x, y), t in T.entries},
            }
        )
        return EXIT_OK
    print(format_tableau(T))
    return EXIT_OK


def _cmd_from_tableau(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    T = tableau_from_json(w, _read_text(args.tableau))
    D = from_tableau(T)
    if args.json:
        _emit_json(
            {
                "permutation": w.to_text(),
                "result": _dream_payload(D),
                "text": format_dream(D),
            }
        )
        return EXIT_OK
    print(format_dream(D))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    if args.all_sn is not None:
        records = verify_symmetric_group(args.all_sn)
    else:
        records = verify_permutation(w)
    ok = all_ok(records)
    if args.json:
        _emit_json(
            {
                "scope": (
                    f"S{args.all_sn}" if args.all_sn is not None else w.to_text()
                ),
                "ok": ok,
                "records": [
                    {
                        "suite": rec.suite,
                        "check": rec.name,
                        "instances": rec.checked,
                        "failures": rec.failures,
                        "informational": rec.informational,
                        "note": rec.note,
                    }
                    for rec in records
                ],
            }
        )
    else:
        print(format_report(records))
        print()
        print("RESULT:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_sample(args: argparse.Namespace) -> int:
    w = Permutation.from_text(args.w)
    cfg = WalkConfig(
        w=w,
        p=args.p,
        steps=args.steps,
        seed=args.seed,
        walks=args.walks,
        burn_in=args.burn_in,
    )
    result = run_walk(cfg)
    csv_text = result.to_csv()
    fig_path: Optional[str] = args.fig
    if args.out is not None:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        if fig_path is None and not args.no_fig:
            fig_path = str(Path(args.out).with_suffix(".png"))
    if fig_path is not None and not args.no_fig:
        save_trace_figure(result, fig_path)
    else:
        fig_path = None
    summary = {
        "permutation": w.to_text(),
        "p": cfg.p,
        "walks": cfg.walks,
        "steps": cfg.steps,
        "seed": cfg.seed,
        "states": len(result.states),
        "visited": len(result.visited),
        "final_tv": result.final_tv,
        "csv": args.out,
        "figure": fig_path,
    }
    if args.json:
        if args.out is None:
            summary["rows"] = [list(row) for row in result.rows]
        _emit_json(summary)
        return EXIT_OK
    if args.out is None:
        sys.stdout.write(csv_text)
    else:
        print(f"states: {summary['states']}")
        print(f"visited: {summary['visited']}")
        print(f"final_tv: {summary['final_tv']!r}")
        print(f"csv: {args.out}")
        if fig_path is not None:
            print(f"figure: {fig_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="pipelattice",
        description=(
            "Lattice operations on the reduced pipe dreams of a permutation: "
            "enumeration, joins and meets, move operators, tableau "
            "coordinates, exhaustive verification, and a Markov-chain "
            "sampler."
        ),
        epilog=(
            "The PIPELATTICE_ORACLE_BUDGET environment variable caps the "
            "number of dreams any exhaustive sweep may enumerate."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_: str, func) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("w", help="permutation in one-line notation, e.g. 1432")
        p.add_argument(
            "--json", action="store_true", help="emit structured JSON instead of text"
        )
        p.set_defaults(func=func)
        return p

    p = add("enumerate", "count (and list) all reduced pipe dreams", _cmd_enumerate)
    p.add_argument("--count", action="store_true", help="print the count only")

    p = add("render", "draw one pipe dream with box-drawing pipes", _cmd_render)
    p.add_argument("--dream", required=True, help="pipe dream file ('-' for stdin)")

    add("hasse", "emit the cover graph as a DOT digraph", _cmd_hasse)

    p = add("join", "least upper bound of two pipe dreams", _cmd_join)
    p.add_argument("first", help="pipe dream file ('-' for stdin)")
    p.add_argument("second", help="pipe dream file")

    p = add("meet", "greatest lower bound of two pipe dreams", _cmd_meet)
    p.add_argument("first", help="pipe dream file ('-' for stdin)")
    p.add_argument("second", help="pipe dream file")

    p = add(
        "compare",
        "order verdict by two independent routes (join-based and tableau-based)",
        _cmd_compare,
    )
    p.add_argument("first", help="pipe dream file ('-' for stdin)")
    p.add_argument("second", help="pipe dream file")

    p = add("move", "apply the move operator at a pivot", _cmd_move)
    p.add_argument("--dream", required=True, help="pipe dream file ('-' for stdin)")
    p.add_argument("--pivot", required=True, type=_pivot, metavar="i,j")
    p.add_argument(
        "--variant",
        choices=sorted(_VARIANTS),
        default="explicit",
        help="which of the three equivalent computations to run",
    )

    p = add("path", "show the move path and swept shape at a pivot", _cmd_path)
    p.add_argument("--dream", required=True, help="pipe dream file ('-' for stdin)")
    p.add_argument("--pivot", required=True, type=_pivot, metavar="i,j")

    p = add("tableau", "print the tableau of a pipe dream", _cmd_tableau)
    p.add_argument("--dream", required=True, help="pipe dream file ('-' for stdin)")

    p = add("from-tableau", "rebuild the pipe dream from a tableau", _cmd_from_tableau)
    p.add_argument(
        "--tableau", required=True, help="tableau JSON file ('-' for stdin)"
    )

    p = add("verify", "run the exhaustive property sweeps", _cmd_verify)
    p.add_argument(
        "--all-sn",
        type=int,
        metavar="N",
        help="sweep every permutation of {1..N} instead of just w",
    )

    p = add("sample", "run the lazy Markov chain and report convergence", _cmd_sample)
    p.add_argument("--p", type=float, default=0.5, help="up-move probability")
    p.add_argument("--walks", type=int, default=1000, help="independent walks")
    p.add_argument("--steps", type=int, default=200, help="steps per walk")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed")
    p.add_argument("--burn-in", type=int, default=0, help="rows to suppress")
    p.add_argument("--out", help="write the CSV trace here instead of stdout")
    p.add_argument(
        "--fig", help="write the convergence figure to this path (PNG)"
    )
    p.add_argument(
        "--no-fig", action="store_true", help="skip the figure even with --out"
    )

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ResourceError, OSError) as exc:
        print(f"pipelattice: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (VerificationError, InternalInvariantError) as exc:
        print(f"pipelattice: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
