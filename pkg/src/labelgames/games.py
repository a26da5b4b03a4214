"""Rule engines for two-player labeling games played on graphs.

Elements are addressed uniformly by integer id. Vertex games label vertices
0..n-1, VM-EDGE labels edges 0..m-1, and VM-TOTAL labels vertices 0..n-1
followed by edges as elements n..n+m-1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

from .graphcore import Graph, distance_matrix


class Player(str, Enum):
    ALICE = "Alice"
    BOB = "Bob"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class Variant(str, Enum):
    VM_EDGE = "VM-EDGE"
    VM_TOTAL = "VM-TOTAL"
    DIST = "DIST"
    EDGE_DIFF = "EDGE-DIFF"
    EDGE_SUM = "EDGE-SUM"
    ADJ_WEIGHT = "ADJ-WEIGHT"


class Convention(str, Enum):
    ACHIEVEMENT = "Achievement"
    AVOIDANCE = "Avoidance"
    MAKER_BREAKER = "MakerBreaker"
    GOAL = "GoalGame"


class RepeatPolicy(str, Enum):
    NO_REPEATS = "NoRepeats"
    REPEATS_ALLOWED = "RepeatsAllowed"


class Scope(str, Enum):
    BOTH = "Both"
    ALICE_ONLY = "AliceOnly"
    BOB_ONLY = "BobOnly"


class IllegalMoveError(ValueError):
    pass


class SpecError(ValueError):
    pass


_REPEATS_BY_VARIANT = {
    Variant.VM_EDGE: RepeatPolicy.NO_REPEATS,
    Variant.VM_TOTAL: RepeatPolicy.NO_REPEATS,
    Variant.EDGE_DIFF: RepeatPolicy.NO_REPEATS,
    Variant.EDGE_SUM: RepeatPolicy.NO_REPEATS,
    Variant.DIST: RepeatPolicy.REPEATS_ALLOWED,
    Variant.ADJ_WEIGHT: RepeatPolicy.REPEATS_ALLOWED,
}

WEIGHT_FNS: dict[str, Callable[[int, int], int]] = {
    "sum": lambda x, y: x + y,
    "absdiff": lambda x, y: abs(x - y),
}

# Variants whose full-edge weight is defined (needed by goal predicates).
_EDGE_WEIGHTED = (Variant.EDGE_DIFF, Variant.EDGE_SUM, Variant.ADJ_WEIGHT)


@dataclass(frozen=True)
class GameSpec:
    variant: Variant
    label_lo: int
    label_hi: int
    convention: Convention = Convention.MAKER_BREAKER
    repeat_policy: Optional[RepeatPolicy] = None
    constraints: tuple[int, ...] = ()
    weight_fn: Optional[str] = None
    min_repeat_distance: int = 0
    goal_id: Optional[str] = None
    bias: tuple[int, int] = (1, 1)
    first_player: Player = Player.ALICE
    legality_scope: Scope = Scope.BOTH

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("variant", Variant(self.variant))
        set_("convention", Convention(self.convention))
        set_("first_player", Player(self.first_player))
        set_("legality_scope", Scope(self.legality_scope))
        set_("constraints", tuple(int(j) for j in self.constraints))
        set_("bias", tuple(int(x) for x in self.bias))
        expected = _REPEATS_BY_VARIANT[self.variant]
        if self.repeat_policy is None:
            set_("repeat_policy", expected)
        else:
            set_("repeat_policy", RepeatPolicy(self.repeat_policy))
        self._validate(expected)

    def _validate(self, expected_repeats):
        if self.label_lo > self.label_hi:
            raise SpecError(f"empty label domain [{self.label_lo}, {self.label_hi}]")
        if len(self.bias) != 2 or min(self.bias) < 1:
            raise SpecError(f"bias must be two positive integers, got {self.bias}")
        if self.repeat_policy is not expected_repeats:
            raise SpecError(f"{self.variant.value} requires {expected_repeats.value}")
        if self.variant is Variant.DIST:
            j = self.constraints
            if any(x < 0 for x in j):
                raise SpecError("distance constraints must be non-negative")
            if any(a < b for a, b in zip(j, j[1:])):
                raise SpecError(f"distance constraints must be non-increasing, got {j}")
        elif self.constraints:
            raise SpecError("constraints apply to DIST only")
        if self.variant is Variant.ADJ_WEIGHT:
            if self.weight_fn not in WEIGHT_FNS:
                raise SpecError(f"ADJ-WEIGHT needs weightFn in {sorted(WEIGHT_FNS)}")
            if self.min_repeat_distance not in (0, 3):
                raise SpecError("minRepeatDistance must be 0 or 3")
        elif self.weight_fn is not None or self.min_repeat_distance:
            raise SpecError("weightFn/minRepeatDistance apply to ADJ-WEIGHT only")
        if self.convention is Convention.GOAL:
            if self.goal_id not in GOALS:
                raise SpecError(f"unknown goal {self.goal_id!r}; known: {sorted(GOALS)}")
            if self.variant not in _EDGE_WEIGHTED:
                raise SpecError("goal games need a variant with edge weights")
        elif self.goal_id is not None:
            raise SpecError("goalId given without the GoalGame convention")

    @property
    def labels(self) -> range:
        return range(self.label_lo, self.label_hi + 1)

    @property
    def no_repeats(self) -> bool:
        return self.repeat_policy is RepeatPolicy.NO_REPEATS

    def to_dict(self) -> dict:
        variant: dict = {"kind": self.variant.value}
        if self.variant is Variant.DIST:
            variant["constraints"] = list(self.constraints)
        if self.variant is Variant.ADJ_WEIGHT:
            variant["weightFn"] = self.weight_fn
            variant["minRepeatDistance"] = self.min_repeat_distance
        convention: dict = {"kind": self.convention.value}
        if self.convention is Convention.GOAL:
            convention["goalId"] = self.goal_id
        return {
            "variant": variant,
            "labelLo": self.label_lo,
            "labelHi": self.label_hi,
            "repeatPolicy": self.repeat_policy.value,
            "convention": convention,
            "bias": list(self.bias),
            "firstPlayer": self.first_player.value,
            "legalityScope": self.legality_scope.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GameSpec":
        variant = d["variant"]
        convention = d["convention"]
        return cls(
            variant=variant["kind"],
            label_lo=d["labelLo"],
            label_hi=d["labelHi"],
            convention=convention["kind"],
            repeat_policy=d.get("repeatPolicy"),
            constraints=tuple(variant.get("constraints", ())),
            weight_fn=variant.get("weightFn"),
            min_repeat_distance=variant.get("minRepeatDistance", 0),
            goal_id=convention.get("goalId"),
            bias=tuple(d.get("bias", (1, 1))),
            first_player=d.get("firstPlayer", "Alice"),
            legality_scope=d.get("legalityScope", "Both"),
        )


class Move(NamedTuple):
    element: int
    label: int


@dataclass(frozen=True)
class Position:
    """Partial labeling; ``labels[i] is None`` while element i is unlabeled.

    ``used`` is tracked under NoRepeats only and is empty otherwise.
    """

    labels: tuple[Optional[int], ...]
    used: frozenset[int] = frozenset()
    move_count: int = 0

    @property
    def complete(self) -> bool:
        return self.move_count == len(self.labels)


@dataclass(frozen=True)
class Outcome:
    winner: Player
    reason: str  # lastMoveAchieved, lastMoveAvoided, boardComplete, stuckIncomplete, goalHolds, goalFails


# ---------------------------------------------------------------------------
# schedule and positions
# ---------------------------------------------------------------------------

def bias_player(spec: GameSpec, move_count: int) -> Player:
    a, b = spec.bias
    first = spec.first_player
    first_block = a if first is Player.ALICE else b
    return first if move_count % (a + b) < first_block else first.other


def element_count(spec: GameSpec, g: Graph) -> int:
    if spec.variant is Variant.VM_EDGE:
        return g.m
    if spec.variant is Variant.VM_TOTAL:
        return g.n + g.m
    return g.n


def element_name(spec: GameSpec, g: Graph, element: int) -> str:
    if spec.variant is Variant.VM_EDGE:
        u, v = g.edges[element]
        return f"e{element}({u}-{v})"
    if spec.variant is Variant.VM_TOTAL and element >= g.n:
        u, v = g.edges[element - g.n]
        return f"e{element - g.n}({u}-{v})"
    return f"v{element}"


def initial_position(spec: GameSpec, g: Graph) -> Position:
    return Position((None,) * element_count(spec, g))


def player_to_move(spec: GameSpec, pos: Position) -> Player:
    return bias_player(spec, pos.move_count)


def apply_move(spec: GameSpec, pos: Position, move: Move) -> Position:
    """Return a new position with ``move`` written; structural checks only."""
    element, label = move
    if not 0 <= element < len(pos.labels):
        raise IllegalMoveError(f"element {element} does not exist")
    if pos.labels[element] is not None:
        raise IllegalMoveError(f"element {element} is already labeled")
    if not spec.label_lo <= label <= spec.label_hi:
        raise IllegalMoveError(f"label {label} outside [{spec.label_lo}, {spec.label_hi}]")
    used = pos.used
    if spec.no_repeats:
        if label in used:
            raise IllegalMoveError(f"label {label} has already been used")
        used = used | {label}
    labels = pos.labels[:element] + (label,) + pos.labels[element + 1:]
    return Position(labels, used, pos.move_count + 1)


def structural_moves(spec: GameSpec, pos: Position) -> list[Move]:
    labels = [x for x in spec.labels if x not in pos.used]
    return [Move(e, x) for e, cur in enumerate(pos.labels) if cur is None for x in labels]


def mover_is_bound(spec: GameSpec, mover: Player) -> bool:
    if spec.convention is Convention.GOAL:
        return False
    scope = spec.legality_scope
    return scope is Scope.BOTH or (scope is Scope.ALICE_ONLY) == (mover is Player.ALICE)


# ---------------------------------------------------------------------------
# rule engine
# ---------------------------------------------------------------------------

class Rules:
    """Incremental legality for one (spec, graph) pair.

    A move by a bound player is legal when it creates no new conflicting pair
    (two full vertices with different weights, two full edges with the same
    weight, a too-close pair of labels, ...) involving the element it labels.
    From a position satisfying :func:`constraint_ok` this is the same as
    requiring ``constraint_ok`` after the move.
    """

    def __init__(self, spec: GameSpec, g: Graph):
        self.spec = spec
        self.g = g
        self.size = element_count(spec, g)
        v = spec.variant
        if v in (Variant.VM_EDGE, Variant.VM_TOTAL):
            total = v is Variant.VM_TOTAL
            off = g.n if total else 0
            self.incident = []
            for x in range(g.n):
                inc = [off + e for e in g.incident_edges(x)]
                if total:
                    inc.insert(0, x)
                self.incident.append(tuple(inc))
            # element -> vertices whose weight it contributes to
            self.touches = [[] for _ in range(self.size)]
            for x, inc in enumerate(self.incident):
                for el in inc:
                    self.touches[el].append(x)
        elif v is Variant.DIST:
            dm = distance_matrix(g)
            j = spec.constraints
            self.close = tuple(
                tuple(
                    (w, j[d - 1])
                    for w in range(g.n)
                    if w != x and (d := dm.dist[x][w]) is not None and d <= len(j) and j[d - 1] > 0
                )
                for x in range(g.n)
            )
        elif v is Variant.ADJ_WEIGHT:
            self.wf = WEIGHT_FNS[spec.weight_fn]
            if spec.min_repeat_distance:
                dm = distance_matrix(g)
                self.near = tuple(
                    tuple(w for w in range(g.n) if w != x and dm.dist[x][w] is not None
                          and dm.dist[x][w] < spec.min_repeat_distance)
                    for x in range(g.n)
                )
        else:
            self.wf = WEIGHT_FNS["absdiff" if v is Variant.EDGE_DIFF else "sum"]

    # per-position context shared by all candidate moves
    def context(self, labels):
        v = self.spec.variant
        if v in (Variant.VM_EDGE, Variant.VM_TOTAL):
            ws = set()
            for inc in self.incident:
                if inc and all(labels[i] is not None for i in inc):
                    ws.add(sum(labels[i] for i in inc))
            return ws
        if v in (Variant.EDGE_DIFF, Variant.EDGE_SUM):
            wf = self.wf
            return {wf(labels[a], labels[b]) for a, b in self.g.edges
                    if labels[a] is not None and labels[b] is not None}
        return None

    def conflict(self, labels, element, label, ctx) -> Optional[tuple]:
        """Describe the first conflict created by labeling ``element`` with ``label``, or None."""
        v = self.spec.variant
        if v in (Variant.VM_EDGE, Variant.VM_TOTAL):
            new = []
            for x in self.touches[element]:
                if all(labels[i] is not None for i in self.incident[x] if i != element):
                    new.append((x, label + sum(labels[i] for i in self.incident[x] if i != element)))
            for x, w in new:
                for other in ctx:
                    if other != w:
                        return ("vm-existing", x, w, other)
                if w != new[0][1]:
                    return ("vm-new", new[0][0], new[0][1], x, w)
            return None
        adj = self.g.adjacency
        if v is Variant.DIST:
            for w, j in self.close[element]:
                y = labels[w]
                if y is not None and abs(label - y) < j:
                    return ("dist", w, y, j)
            return None
        wf = self.wf
        if v in (Variant.EDGE_DIFF, Variant.EDGE_SUM):
            seen = {}
            for w in adj[element]:
                y = labels[w]
                if y is None:
                    continue
                wt = wf(label, y)
                if wt in ctx:
                    return ("edge-existing", w, wt)
                if wt in seen:
                    return ("edge-new", w, seen[wt], wt)
                seen[wt] = w
            return None
        # ADJ-WEIGHT
        if self.spec.min_repeat_distance:
            for w in self.near[element]:
                if labels[w] == label:
                    return ("repeat-near", w, label)
        seen = {}
        for w in adj[element]:
            y = labels[w]
            if y is None:
                continue
            wt = wf(label, y)
            if wt in seen:
                return ("adj-at-new", w, seen[wt], wt)
            seen[wt] = w
            for u in adj[w]:
                if u != element and labels[u] is not None and wf(y, labels[u]) == wt:
                    return ("adj-at-old", w, u, wt)
        return None

    def legal_moves(self, pos: Position, bound: bool) -> list[Move]:
        labels = pos.labels
        domain = [x for x in self.spec.labels if x not in pos.used]
        if not bound:
            return [Move(e, x) for e in range(self.size) if labels[e] is None for x in domain]
        ctx = self.context(labels)
        conflict = self.conflict
        return [
            Move(e, x)
            for e in range(self.size)
            if labels[e] is None
            for x in domain
            if conflict(labels, e, x, ctx) is None
        ]


@lru_cache(maxsize=64)
def rules_for(spec: GameSpec, g: Graph) -> Rules:
    return Rules(spec, g)


def legal_moves(spec: GameSpec, g: Graph, pos: Position) -> list[Move]:
    """Legal moves for the player to move, ordered by (element, label)."""
    if pos.complete:
        return []
    bound = mover_is_bound(spec, player_to_move(spec, pos))
    return rules_for(spec, g).legal_moves(pos, bound)


def explain_illegal(spec: GameSpec, g: Graph, pos: Position, move: Move) -> Optional[str]:
    """Human-readable reason ``move`` is not legal now, or None if it is legal."""
    try:
        apply_move(spec, pos, move)
    except IllegalMoveError as exc:
        return str(exc)
    if not mover_is_bound(spec, player_to_move(spec, pos)):
        return None
    r = rules_for(spec, g)
    c = r.conflict(pos.labels, move.element, move.label, r.context(pos.labels))
    if c is None:
        return None
    kind = c[0]
    if kind == "vm-existing":
        return f"vertex {c[1]} would become full with weight {c[2]}, but full vertices have weight {c[3]}"
    if kind == "vm-new":
        return f"vertices {c[1]} and {c[3]} would become full with different weights {c[2]} and {c[4]}"
    if kind == "dist":
        return f"vertex {c[1]} has label {c[2]}; labels at that distance must differ by at least {c[3]}"
    if kind == "edge-existing":
        return f"the edge to vertex {c[1]} would get weight {c[2]}, which already occurs"
    if kind == "edge-new":
        return f"edges to vertices {c[1]} and {c[2]} would both get weight {c[3]}"
    if kind == "repeat-near":
        return f"vertex {c[1]} already has label {c[2]} and is closer than distance 3"
    if kind == "adj-at-new":
        return f"adjacent edges to vertices {c[1]} and {c[2]} would both get weight {c[3]}"
    return f"the new edge to vertex {c[1]} would match adjacent edge {c[1]}-{c[2]} (weight {c[3]})"


# ---------------------------------------------------------------------------
# weights and the global predicate
# ---------------------------------------------------------------------------

def edge_weight(spec: GameSpec, g: Graph, pos: Position, e: int) -> Optional[int]:
    """Weight of a full edge in a vertex-labeled game, else None."""
    if spec.variant not in _EDGE_WEIGHTED:
        return None
    u, v = g.edges[e]
    x, y = pos.labels[u], pos.labels[v]
    if x is None or y is None:
        return None
    if spec.variant is Variant.ADJ_WEIGHT:
        return WEIGHT_FNS[spec.weight_fn](x, y)
    return abs(x - y) if spec.variant is Variant.EDGE_DIFF else x + y


def vertex_weight(spec: GameSpec, g: Graph, pos: Position, v: int) -> Optional[int]:
    """Weight of a full vertex in a vertex-magic game, else None.

    In VM-EDGE a vertex without incident edges is never full.
    """
    if spec.variant is Variant.VM_EDGE:
        parts = [pos.labels[e] for e in g.incident_edges(v)]
        if not parts:
            return None
    elif spec.variant is Variant.VM_TOTAL:
        parts = [pos.labels[v]] + [pos.labels[g.n + e] for e in g.incident_edges(v)]
    else:
        return None
    if any(p is None for p in parts):
        return None
    return sum(parts)


def constraint_ok(spec: GameSpec, g: Graph, pos: Position) -> bool:
    """Whether the partial labeling satisfies the variant's global rule.

    Written directly from the definitions, pair by pair; the rule engine's
    incremental checks are tested against it.
    """
    if spec.convention is Convention.GOAL:
        return True
    v = spec.variant
    if v in (Variant.VM_EDGE, Variant.VM_TOTAL):
        ws = [vertex_weight(spec, g, pos, x) for x in range(g.n)]
        full = [w for w in ws if w is not None]
        return all(w == full[0] for w in full)
    if v is Variant.DIST:
        dm = distance_matrix(g)
        j = spec.constraints
        lab = pos.labels
        for a in range(g.n):
            for b in range(a + 1, g.n):
                d = dm.dist[a][b]
                if lab[a] is None or lab[b] is None or d is None or d > len(j):
                    continue
                if abs(lab[a] - lab[b]) < j[d - 1]:
                    return False
        return True
    weights = [edge_weight(spec, g, pos, e) for e in range(g.m)]
    if v in (Variant.EDGE_DIFF, Variant.EDGE_SUM):
        full = [w for w in weights if w is not None]
        return len(full) == len(set(full))
    # ADJ-WEIGHT
    for e in range(g.m):
        for f in range(e + 1, g.m):
            if weights[e] is None or weights[f] is None:
                continue
            if set(g.edges[e]) & set(g.edges[f]) and weights[e] == weights[f]:
                return False
    if spec.min_repeat_distance:
        dm = distance_matrix(g)
        lab = pos.labels
        for a in range(g.n):
            for b in range(a + 1, g.n):
                d = dm.dist[a][b]
                if lab[a] is not None and lab[a] == lab[b] and d is not None and d < spec.min_repeat_distance:
                    return False
    return True


# ---------------------------------------------------------------------------
# terminal positions
# ---------------------------------------------------------------------------

def _no_forbidden_sum(spec: GameSpec, g: Graph, pos: Position) -> bool:
    forbidden = spec.label_hi + 1
    return all(edge_weight(spec, g, pos, e) != forbidden for e in range(g.m))


GOALS: dict[str, Callable[[GameSpec, Graph, Position], bool]] = {
    "noForbiddenSum": _no_forbidden_sum,
}


def outcome_when_stuck(spec: GameSpec, g: Graph, pos: Position) -> Outcome:
    """Outcome of a position in which the player to move has no legal move."""
    conv = spec.convention
    if conv is Convention.MAKER_BREAKER:
        if pos.complete:
            return Outcome(Player.ALICE, "boardComplete")
        return Outcome(Player.BOB, "stuckIncomplete")
    if conv is Convention.GOAL:
        if not pos.complete:
            return Outcome(Player.BOB, "stuckIncomplete")
        if GOALS[spec.goal_id](spec, g, pos):
            return Outcome(Player.ALICE, "goalHolds")
        return Outcome(Player.BOB, "goalFails")
    if pos.move_count == 0:
        # nobody has moved: the player to move cannot make the last move
        last = player_to_move(spec, pos).other
    else:
        last = bias_player(spec, pos.move_count - 1)
    if conv is Convention.ACHIEVEMENT:
        return Outcome(last, "lastMoveAchieved")
    return Outcome(last.other, "lastMoveAvoided")


def terminal_outcome(spec: GameSpec, g: Graph, pos: Position) -> Optional[Outcome]:
    if not pos.complete and legal_moves(spec, g, pos):
        return None
    return outcome_when_stuck(spec, g, pos)


# ---------------------------------------------------------------------------
# canned specs
# ---------------------------------------------------------------------------

def graceful(g: Graph, **kw) -> GameSpec:
    return GameSpec(Variant.EDGE_DIFF, 1, g.m + 1, **kw)


def cycle_sum(g: Graph, **kw) -> GameSpec:
    return GameSpec(Variant.EDGE_SUM, 1, g.n, **kw)


def ld1(d: int, s: int, **kw) -> GameSpec:
    return GameSpec(Variant.DIST, 0, s, constraints=(d, 1), **kw)


def radio(g: Graph, s: int, **kw) -> GameSpec:
    diam = distance_matrix(g).diameter
    return GameSpec(Variant.DIST, 0, s, constraints=tuple(range(diam, 0, -1)), **kw)


def vm_edge(g: Graph, **kw) -> GameSpec:
    kw.setdefault("convention", Convention.ACHIEVEMENT)
    return GameSpec(Variant.VM_EDGE, 1, max(g.m, 1), **kw)


def vm_total(g: Graph, **kw) -> GameSpec:
    kw.setdefault("convention", Convention.ACHIEVEMENT)
    return GameSpec(Variant.VM_TOTAL, 1, g.n + g.m, **kw)


def adj_example(g: Graph, f: str, repaired: bool = False, s: Optional[int] = None, **kw) -> GameSpec:
    return GameSpec(
        Variant.ADJ_WEIGHT, 1, g.n if s is None else s,
        weight_fn=f, min_repeat_distance=3 if repaired else 0, **kw,
    )


def antipodal_goal(g: Graph, **kw) -> GameSpec:
    kw.setdefault("first_player", Player.BOB)
    return GameSpec(Variant.EDGE_SUM, 1, g.n, convention=Convention.GOAL,
                    goal_id="noForbiddenSum", **kw)


CANNED = {
    "graceful": graceful,
    "cycleSum": cycle_sum,
    "Ld1": ld1,
    "radio": radio,
    "vmEdge": vm_edge,
    "vmTotal": vm_total,
    "adjExample": adj_example,
    "antipodalGoal": antipodal_goal,
}


def canned_spec(name: str, *args, **kw) -> GameSpec:
    """Named rule set with its standard label domain, e.g. ``canned_spec("graceful", g)``."""
    try:
        factory = CANNED[name]
    except KeyError:
        raise SpecError(f"unknown canned spec {name!r}; known: {sorted(CANNED)}") from None
    return factory(*args, **kw)


def with_span(spec: GameSpec, s: int) -> GameSpec:
    return replace(spec, label_hi=s)
