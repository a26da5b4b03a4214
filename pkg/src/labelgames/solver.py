"""Exact perfect-play solving by memoized depth-first search.

Game values are booleans from Alice's point of view: ``True`` means Alice
wins with best play from the position. Every game ends after at most one
move per element, so there are no draws and no cycles.
"""

from __future__ import annotations

import struct
import time
from dataclasses import dataclass, field
from typing import Optional

from .games import (
    GameSpec,
    Move,
    Player,
    Position,
    Variant,
    Convention,
    apply_move,
    element_count,
    initial_position,
    legal_moves,
    outcome_when_stuck,
    player_to_move,
    rules_for,
    mover_is_bound,
    terminal_outcome,
)
from .graphcore import Graph, automorphisms

# label reflection x -> lo + hi - x keeps these rules invariant
REFLECTION_WHITELIST = (Variant.EDGE_DIFF, Variant.EDGE_SUM)

DEFAULT_MAX_NODES = 20_000_000
DEFAULT_MAX_SECONDS = 600.0


class Unsolved(RuntimeError):
    """Raised when a search hits its node or time limit."""


@dataclass(frozen=True)
class Limits:
    max_nodes: Optional[int] = DEFAULT_MAX_NODES
    max_seconds: Optional[float] = DEFAULT_MAX_SECONDS

    def to_dict(self):
        return {"maxNodes": self.max_nodes, "maxSeconds": self.max_seconds}


@dataclass
class SolveResult:
    winner: Player
    best_root_move: Optional[Move]
    nodes_expanded: int
    table_hits: int
    used_symmetry: bool
    principal_variation: list[Move] = field(default_factory=list)

    def to_dict(self, spec: GameSpec | None = None, limits: Limits | None = None, graph6: str | None = None) -> dict:
        d = {
            "winner": self.winner.value,
            "bestRootMove": None if self.best_root_move is None else list(self.best_root_move),
            "nodesExpanded": self.nodes_expanded,
            "tableHits": self.table_hits,
            "usedSymmetry": self.used_symmetry,
            "principalVariation": [list(m) for m in self.principal_variation],
        }
        if limits is not None:
            d["limits"] = limits.to_dict()
        if spec is not None:
            d["spec"] = spec.to_dict()
        if graph6 is not None:
            d["graph6"] = graph6
        return d


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

def element_permutations(spec: GameSpec, g: Graph, vertex_perms) -> list[tuple[int, ...]]:
    """Lift vertex automorphisms to the labeled elements.

    Each result ``src`` is a gather map: the permuted labeling is
    ``tuple(labels[src[i]] for i in range(k))``.
    """
    out = []
    for p in vertex_perms:
        emap = [g.edge_id(p[u], p[v]) for u, v in g.edges]
        if spec.variant is Variant.VM_EDGE:
            fwd = emap
        elif spec.variant is Variant.VM_TOTAL:
            fwd = list(p) + [g.n + e for e in emap]
        else:
            fwd = list(p)
        src = [0] * len(fwd)
        for i, j in enumerate(fwd):
            src[j] = i
        out.append(tuple(src))
    return out


class Canonicalizer:
    def __init__(self, spec: GameSpec, g: Graph, group=None, reflect: Optional[bool] = None):
        self.size = element_count(spec, g)
        perms = group.perms if group is not None else [tuple(range(g.n))]
        self.gathers = element_permutations(spec, g, perms)
        identity = tuple(range(self.size))
        if identity not in self.gathers:
            self.gathers.insert(0, identity)
        if reflect is None:
            reflect = (spec.variant in REFLECTION_WHITELIST
                       and spec.convention is not Convention.GOAL)
        self.reflect_sum = spec.label_lo + spec.label_hi if reflect else None
        self.trivial = len(self.gathers) == 1 and not reflect

    def key(self, pos: Position) -> tuple:
        raw = tuple(-1 if x is None else x for x in pos.labels)
        if self.trivial:
            return (pos.move_count,) + raw
        images = [raw]
        if self.reflect_sum is not None:
            t = self.reflect_sum
            images.append(tuple(-1 if x < 0 else t - x for x in raw))
        best = None
        for img in images:
            for src in self.gathers:
                cand = tuple([img[i] for i in src])
                if best is None or cand < best:
                    best = cand
        return (pos.move_count,) + best


def encode_key(key: tuple) -> bytes:
    return struct.pack(f">{len(key)}i", *key)


def canonical_key(spec: GameSpec, g: Graph, pos: Position, group=None) -> bytes:
    """Minimum encoding of ``pos`` over its orbit under ``group`` (and label
    reflection for whitelisted variants), prefixed by the move count."""
    return encode_key(Canonicalizer(spec, g, group).key(pos))


# ---------------------------------------------------------------------------
# memoized solver
# ---------------------------------------------------------------------------

class Solver:
    """Memoized search for one (spec, graph) instance; reusable across positions."""

    def __init__(self, spec: GameSpec, g: Graph, limits: Limits = Limits(), symmetry: bool = True):
        self.spec = spec
        self.g = g
        self.limits = limits
        self.symmetry = symmetry
        group = automorphisms(g) if symmetry else None
        self.canon = Canonicalizer(spec, g, group, reflect=None if symmetry else False)
        self.used_symmetry = symmetry and not self.canon.trivial
        self.rules = rules_for(spec, g)
        self.table: dict[tuple, bool] = {}
        self.nodes = 0
        self.hits = 0
        self._deadline = None

    def _moves(self, pos: Position) -> list[Move]:
        if pos.complete:
            return []
        bound = mover_is_bound(self.spec, player_to_move(self.spec, pos))
        return self.rules.legal_moves(pos, bound)

    def alice_wins(self, pos: Position) -> bool:
        self._deadline = (None if self.limits.max_seconds is None
                          else time.monotonic() + self.limits.max_seconds)
        return self._search(pos)

    def _search(self, pos: Position) -> bool:
        key = self.canon.key(pos)
        hit = self.table.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.nodes += 1
        if self.limits.max_nodes is not None and self.nodes > self.limits.max_nodes:
            raise Unsolved(f"node limit {self.limits.max_nodes} exceeded")
        if self._deadline is not None and (self.nodes & 1023) == 0 and time.monotonic() > self._deadline:
            raise Unsolved(f"time limit {self.limits.max_seconds}s exceeded")
        moves = self._moves(pos)
        if not moves:
            value = outcome_when_stuck(self.spec, self.g, pos).winner is Player.ALICE
        else:
            alice = player_to_move(self.spec, pos) is Player.ALICE
            spec = self.spec
            if alice:
                value = any(self._search(apply_move(spec, pos, m)) for m in moves)
            else:
                value = all(self._search(apply_move(spec, pos, m)) for m in moves)
        self.table[key] = value
        return value

    def best_move(self, pos: Position) -> Move:
        """Lowest winning move for the player to move; lowest legal move if none wins."""
        moves = self._moves(pos)
        if not moves:
            raise ValueError("no move at a terminal position")
        me = player_to_move(self.spec, pos)
        for m in moves:
            if (self.alice_wins(apply_move(self.spec, pos, m))) == (me is Player.ALICE):
                return m
        return moves[0]

    def principal_variation(self, pos: Position) -> list[Move]:
        line = []
        while self._moves(pos):
            m = self.best_move(pos)
            line.append(m)
            pos = apply_move(self.spec, pos, m)
        return line

    def solve(self, pos: Optional[Position] = None) -> SolveResult:
        if pos is None:
            pos = initial_position(self.spec, self.g)
        alice = self.alice_wins(pos)
        winner = Player.ALICE if alice else Player.BOB
        best = None
        pv: list[Move] = []
        if self._moves(pos):
            best = self.best_move(pos)
            pv = self.principal_variation(pos)
        return SolveResult(winner, best, self.nodes, self.hits, self.used_symmetry, pv)


def solve(spec: GameSpec, g: Graph, limits: Limits = Limits(), symmetry: bool = True) -> SolveResult:
    return Solver(spec, g, limits, symmetry).solve()


def best_move(spec: GameSpec, g: Graph, pos: Position, limits: Limits = Limits()) -> Move:
    return Solver(spec, g, limits).best_move(pos)


# ---------------------------------------------------------------------------
# plain recursion oracle
# ---------------------------------------------------------------------------

def solve_plain(spec: GameSpec, g: Graph, limits: Limits = Limits()) -> SolveResult:
    """Unmemoized minimax over the public games API; an independent check on :func:`solve`."""
    counter = [0]
    deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds

    def winner_from(pos: Position) -> Player:
        counter[0] += 1
        if limits.max_nodes is not None and counter[0] > limits.max_nodes:
            raise Unsolved(f"node limit {limits.max_nodes} exceeded")
        if deadline is not None and counter[0] % 1024 == 0 and time.monotonic() > deadline:
            raise Unsolved(f"time limit {limits.max_seconds}s exceeded")
        out = terminal_outcome(spec, g, pos)
        if out is not None:
            return out.winner
        mover = player_to_move(spec, pos)
        for m in legal_moves(spec, g, pos):
            if winner_from(apply_move(spec, pos, m)) is mover:
                return mover
        return mover.other

    root = initial_position(spec, g)
    out = terminal_outcome(spec, g, root)
    if out is not None:
        return SolveResult(out.winner, None, 1, 0, False, [])
    mover = player_to_move(spec, root)
    moves = legal_moves(spec, g, root)
    best = None
    for m in moves:
        if winner_from(apply_move(spec, root, m)) is mover:
            best = m
            break
    winner = mover if best is not None else mover.other
    return SolveResult(winner, best if best is not None else moves[0], counter[0], 0, False, [])
