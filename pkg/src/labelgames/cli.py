"""Command-line front end.

Exit statuses: 0 success/confirmed, 1 refuted, 2 unsolved or limit hit,
3 usage error. Errors print one line ``error[<kind>]: <message>`` to stderr.

Limits default from the environment variables ``LABELGAMES_MAX_NODES`` and
``LABELGAMES_MAX_SECONDS``; the flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, TextIO

from . import games
from .analysis import format_table, ldone_trend, minimal_span, verify_propositions
from .games import Convention, GameSpec, Move, Player, Scope, SpecError, Variant
from .graphcore import FAMILIES, Graph, Graph6Error, generate, graph_from_graph6, graph_to_graph6
from .solver import DEFAULT_MAX_NODES, DEFAULT_MAX_SECONDS, Limits, Solver, Unsolved

EXIT_OK, EXIT_REFUTED, EXIT_UNSOLVED, EXIT_USAGE = 0, 1, 2, 3

ENV_MAX_NODES = "LABELGAMES_MAX_NODES"
ENV_MAX_SECONDS = "LABELGAMES_MAX_SECONDS"

VARIANTS = {
    "vm-edge": Variant.VM_EDGE,
    "vm-total": Variant.VM_TOTAL,
    "dist": Variant.DIST,
    "edge-diff": Variant.EDGE_DIFF,
    "edge-sum": Variant.EDGE_SUM,
    "adj-weight": Variant.ADJ_WEIGHT,
}
CONVENTIONS = {
    "achievement": Convention.ACHIEVEMENT,
    "avoidance": Convention.AVOIDANCE,
    "maker-breaker": Convention.MAKER_BREAKER,
    "goal": Convention.GOAL,
}
SCOPES = {"both": Scope.BOTH, "alice": Scope.ALICE_ONLY, "bob": Scope.BOB_ONLY}
REPEATS = {"no-repeats": "NoRepeats", "repeats-allowed": "RepeatsAllowed"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_graph_args(p):
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--graph6-file", help="file with one graph6 line (the first is used)")
    p.add_argument("--gen", nargs="+", metavar="FAMILY_OR_SIZE",
                   help=f"generator: one of {', '.join(FAMILIES)} followed by sizes")
    p.add_argument("--isolated", type=int, default=0, help="extra isolated vertices for --gen")


def _add_spec_args(p):
    p.add_argument("--variant", choices=sorted(VARIANTS))
    p.add_argument("--s", type=int, help="largest label (span)")
    p.add_argument("--lo", type=int, help="smallest label (default 0 for dist, else 1)")
    p.add_argument("--d", type=int, help="L(d,1) shorthand: constraints (d, 1)")
    p.add_argument("--j", help="distance constraints j1,j2,... (non-increasing)")
    p.add_argument("--radio", action="store_true", help="radio constraints from the diameter")
    p.add_argument("--weight-fn", choices=sorted(games.WEIGHT_FNS))
    p.add_argument("--min-repeat-distance", type=int, default=0, choices=(0, 3))
    p.add_argument("--convention", choices=sorted(CONVENTIONS), default="maker-breaker")
    p.add_argument("--goal", default=None, help="goal predicate id for --convention goal")
    p.add_argument("--bias", default="1:1", help="a:b move schedule")
    p.add_argument("--first", choices=("alice", "bob"), default=None)
    p.add_argument("--scope", choices=sorted(SCOPES), default="both")
    p.add_argument("--repeat", choices=sorted(REPEATS), help="repeat policy (must match the variant)")


def _add_limit_args(p):
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None, help="echoed in JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="labelgames", description="Solve two-player labeling games played on graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance under perfect play")
    _add_graph_args(p)
    _add_spec_args(p)
    _add_limit_args(p)

    p = sub.add_parser("span", help="winner for each span and the least Alice-winning span")
    _add_graph_args(p)
    p.add_argument("--family", required=True, help="e.g. edge-diff, edge-sum, ld1:2, dist:3,1, radio")
    p.add_argument("--s-min", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    _add_limit_args(p)

    p = sub.add_parser("verify", help="check the stated propositions")
    p.add_argument("--jobs", type=int, default=1)
    _add_limit_args(p)

    p = sub.add_parser("trend", help="exact L(d,1) game spans on complete (bipartite) graphs")
    p.add_argument("--d", type=int, nargs="+", default=[1, 2])
    p.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 4])
    p.add_argument("--no-bipartite", action="store_true")
    _add_limit_args(p)

    p = sub.add_parser("gen", help="print a generated graph as graph6")
    _add_graph_args(p)

    p = sub.add_parser("play", help="play against the perfect-play engine")
    _add_graph_args(p)
    _add_spec_args(p)
    p.add_argument("--human", choices=("alice", "bob"), default="alice")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    return parser


# ---------------------------------------------------------------------------
# config -> objects
# ---------------------------------------------------------------------------

def load_graph(args) -> Graph:
    sources = [x for x in (args.graph6, args.graph6_file, args.gen) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --graph6, --graph6-file, --gen")
    if args.graph6 is not None:
        return graph_from_graph6(args.graph6)
    if args.graph6_file is not None:
        with open(args.graph6_file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if not lines:
            raise UsageError(f"{args.graph6_file} contains no graph")
        return graph_from_graph6(lines[0])
    family, *sizes = args.gen
    try:
        params = [int(x) for x in sizes]
    except ValueError:
        raise UsageError(f"generator sizes must be integers: {sizes}") from None
    try:
        return generate(family, params, args.isolated)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _default_hi(variant: Variant, g: Graph) -> Optional[int]:
    return {
        Variant.EDGE_DIFF: g.m + 1,
        Variant.EDGE_SUM: g.n,
        Variant.VM_EDGE: g.m,
        Variant.VM_TOTAL: g.n + g.m,
        Variant.ADJ_WEIGHT: g.n,
    }.get(variant)


def build_spec(args, g: Graph) -> GameSpec:
    if args.variant is None:
        raise UsageError("--variant is required")
    variant = VARIANTS[args.variant]
    convention = CONVENTIONS[args.convention]
    lo = args.lo if args.lo is not None else (0 if variant is Variant.DIST else 1)
    hi = args.s if args.s is not None else _default_hi(variant, g)
    if hi is None:
        raise UsageError(f"--s is required for {args.variant}")
    constraints: tuple = ()
    if variant is Variant.DIST:
        given = [x for x in (args.d is not None, args.j is not None, args.radio) if x]
        if len(given) != 1:
            raise UsageError("dist needs exactly one of --d, --j, --radio")
        if args.d is not None:
            constraints = (args.d, 1)
        elif args.j is not None:
            try:
                constraints = tuple(int(x) for x in args.j.split(","))
            except ValueError:
                raise UsageError(f"bad --j {args.j!r}") from None
        else:
            constraints = games.radio(g, hi).constraints
    elif args.d is not None or args.j is not None or args.radio:
        raise UsageError("--d/--j/--radio only apply to --variant dist")
    try:
        a, b = (int(x) for x in args.bias.split(":"))
    except ValueError:
        raise UsageError(f"--bias must look like a:b, got {args.bias!r}") from None
    goal = args.goal
    if convention is Convention.GOAL and goal is None:
        goal = "noForbiddenSum"
    first = args.first
    if first is None:
        first = "bob" if convention is Convention.GOAL else "alice"
    try:
        return GameSpec(
            variant, lo, hi,
            convention=convention,
            repeat_policy=REPEATS[args.repeat] if args.repeat else None,
            constraints=constraints,
            weight_fn=args.weight_fn if variant is Variant.ADJ_WEIGHT else None,
            min_repeat_distance=args.min_repeat_distance if variant is Variant.ADJ_WEIGHT else 0,
            goal_id=goal,
            bias=(a, b),
            first_player=Player.ALICE if first == "alice" else Player.BOB,
            legality_scope=SCOPES[args.scope],
        )
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def build_limits(args) -> Limits:
    def pick(flag, env, cast, default):
        if flag is not None:
            return flag
        raw = os.environ.get(env)
        if raw:
            try:
                return cast(raw)
            except ValueError:
                raise UsageError(f"{env} must be a number, got {raw!r}") from None
        return default

    return Limits(
        pick(args.max_nodes, ENV_MAX_NODES, int, DEFAULT_MAX_NODES),
        pick(args.max_seconds, ENV_MAX_SECONDS, float, DEFAULT_MAX_SECONDS),
    )


def _dump(obj, out: TextIO):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _move_str(spec, g, m) -> str:
    return f"{games.element_name(spec, g, m.element)}={m.label}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_solve(args, out) -> int:
    g = load_graph(args)
    spec = build_spec(args, g)
    limits = build_limits(args)
    res = Solver(spec, g, limits, symmetry=not args.no_symmetry).solve()
    if args.format == "json":
        d = res.to_dict(spec, limits, graph_to_graph6(g))
        d["seed"] = args.seed
        _dump(d, out)
    else:
        out.write(f"graph: {g} ({graph_to_graph6(g)})\n")
        out.write(f"winner: {res.winner.value}\n")
        if res.best_root_move is not None:
            out.write(f"best root move: {_move_str(spec, g, res.best_root_move)}\n")
        out.write("principal variation: "
                  + " ".join(_move_str(spec, g, m) for m in res.principal_variation) + "\n")
        out.write(f"nodes: {res.nodes_expanded}  table hits: {res.table_hits}  "
                  f"symmetry: {res.used_symmetry}\n")
    return EXIT_OK


def cmd_span(args, out) -> int:
    g = load_graph(args)
    limits = build_limits(args)
    try:
        res = minimal_span(args.family, g, args.s_min, args.s_max, limits)
    except (ValueError, SpecError) as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        d = res.to_dict()
        d["seed"] = args.seed
        _dump(d, out)
    else:
        rows = [{"s": s, "winner": w} for s, w in res.per_span]
        out.write(format_table(rows, ["s", "winner"]) + "\n")
        out.write(f"least Alice span: {res.minimal_alice_span}  "
                  f"monotone after first win: {res.monotone_after_first_win}  "
                  f"reliable: {res.reliable}\n")
    return EXIT_OK if res.reliable else EXIT_UNSOLVED


def cmd_verify(args, out) -> int:
    reports = verify_propositions(build_limits(args), jobs=args.jobs)
    if args.format == "json":
        _dump([r.to_dict() for r in reports], out)
    else:
        rows = [r.to_dict() for r in reports]
        out.write(format_table(rows, ["caseId", "expectedWinner", "solvedWinner", "status", "nodes"]) + "\n")
    statuses = {r.status for r in reports}
    if "refuted" in statuses:
        return EXIT_REFUTED
    if "unsolved" in statuses:
        return EXIT_UNSOLVED
    return EXIT_OK


def cmd_trend(args, out) -> int:
    rows = ldone_trend(args.d, args.n, build_limits(args), bipartite=not args.no_bipartite)
    if args.format == "json":
        _dump(rows, out)
    else:
        out.write(format_table(rows, ["graph", "d", "s", "reference", "referenceValue"]) + "\n")
        out.write("reference values omit an unspecified O(d) term; shown for comparison only\n")
    return EXIT_UNSOLVED if any(r["s"] == "unsolved" for r in rows) else EXIT_OK


def cmd_gen(args, out) -> int:
    out.write(graph_to_graph6(load_graph(args)) + "\n")
    return EXIT_OK


def render_board(spec: GameSpec, g: Graph, pos: games.Position) -> str:
    lines = []
    for e, lab in enumerate(pos.labels):
        lines.append(f"  {games.element_name(spec, g, e):>12}: {'.' if lab is None else lab}")
    if spec.variant in (Variant.VM_EDGE, Variant.VM_TOTAL):
        ws = [(v, games.vertex_weight(spec, g, pos, v)) for v in range(g.n)]
        full = ", ".join(f"v{v}:{w}" for v, w in ws if w is not None)
        lines.append(f"  full vertex weights: {full or '-'}")
    elif spec.variant is not Variant.DIST:
        ws = [(e, games.edge_weight(spec, g, pos, e)) for e in range(g.m)]
        full = ", ".join(f"{g.edges[e][0]}-{g.edges[e][1]}:{w}" for e, w in ws if w is not None)
        lines.append(f"  full edge weights: {full or '-'}")
    return "\n".join(lines)


def cmd_play(args, out, inp) -> int:
    g = load_graph(args)
    spec = build_spec(args, g)
    human = Player.ALICE if args.human == "alice" else Player.BOB
    solver = Solver(spec, g, build_limits(args))
    pos = games.initial_position(spec, g)
    transcript: list[Move] = []
    out.write(f"graph {g} ({graph_to_graph6(g)}), you play {human.value}\n")
    out.write(f"labels {spec.label_lo}..{spec.label_hi}; enter moves as '<element> <label>', 'quit' to stop\n")
    while True:
        outcome = games.terminal_outcome(spec, g, pos)
        out.write(render_board(spec, g, pos) + "\n")
        if outcome is not None:
            break
        mover = games.player_to_move(spec, pos)
        if mover is human:
            out.write(f"{mover.value} to move> ")
            out.flush()
            line = inp.readline()
            if not line or line.strip() == "quit":
                out.write("\nstopped\n")
                break
            parts = line.split()
            try:
                if len(parts) != 2:
                    raise ValueError
                move = Move(int(parts[0]), int(parts[1]))
            except ValueError:
                out.write("rejected: expected two integers '<element> <label>'\n")
                continue
            why = games.explain_illegal(spec, g, pos, move)
            if why is not None:
                out.write(f"rejected: {why}\n")
                continue
        else:
            move = solver.best_move(pos)
            out.write(f"{mover.value} plays {move.element} {move.label} "
                      f"({_move_str(spec, g, move)})\n")
        pos = games.apply_move(spec, pos, move)
        transcript.append(move)
    if outcome is not None:
        out.write(f"outcome: {outcome.winner.value} wins ({outcome.reason})\n")
    out.write("transcript: " + " ".join(f"{m.element}:{m.label}" for m in transcript) + "\n")
    return EXIT_OK


def main(argv=None, out: TextIO = None, inp: TextIO = None) -> int:
    out = out or sys.stdout
    inp = inp or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: solve, span, verify, trend, gen, play")
        if args.command == "play":
            return cmd_play(args, out, inp)
        handler = {"solve": cmd_solve, "span": cmd_span, "verify": cmd_verify,
                   "trend": cmd_trend, "gen": cmd_gen}[args.command]
        return handler(args, out)
    except UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"error[graph6]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Unsolved as exc:
        print(f"error[unsolved]: {exc}", file=sys.stderr)
        return EXIT_UNSOLVED


if __name__ == "__main__":
    sys.exit(main())
