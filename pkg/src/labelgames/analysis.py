"""Batch experiments: span searches, monotonicity scans, proposition checks."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from . import games
from .games import Convention, GameSpec, Player, Variant
from .graphcore import Graph, generate, graph_to_graph6
from .solver import Limits, Unsolved, solve

UNSOLVED = "unsolved"


def family_spec(family: str, g: Graph, s: int, **kw) -> GameSpec:
    """Maker-Breaker spec with span ``s`` for a variant family name.

    Families: ``edge-diff``, ``edge-sum``, ``ld1:<d>``, ``dist:<j1>,<j2>,...``,
    ``radio``, ``adj-sum``, ``adj-absdiff`` (suffix ``:repaired`` for the
    distance-3 rule), ``vm-edge``, ``vm-total``.
    """
    kw.setdefault("convention", Convention.MAKER_BREAKER)
    name, _, arg = family.partition(":")
    if name == "edge-diff":
        return GameSpec(Variant.EDGE_DIFF, 1, s, **kw)
    if name == "edge-sum":
        return GameSpec(Variant.EDGE_SUM, 1, s, **kw)
    if name == "ld1":
        return games.ld1(int(arg), s, **kw)
    if name == "dist":
        return GameSpec(Variant.DIST, 0, s, constraints=tuple(int(x) for x in arg.split(",") if x), **kw)
    if name == "radio":
        return games.radio(g, s, **kw)
    if name in ("adj-sum", "adj-absdiff"):
        return games.adj_example(g, name[4:], repaired=arg == "repaired", s=s, **kw)
    if name == "vm-edge":
        return GameSpec(Variant.VM_EDGE, 1, s, **kw)
    if name == "vm-total":
        return GameSpec(Variant.VM_TOTAL, 1, s, **kw)
    raise ValueError(f"unknown variant family {family!r}")


def _winner_or_unsolved(spec: GameSpec, g: Graph, limits: Limits) -> str:
    try:
        return solve(spec, g, limits).winner.value
    except Unsolved:
        return UNSOLVED


@dataclass
class SpanResult:
    graph_name: str
    variant: str
    per_span: list[tuple[int, str]]
    minimal_alice_span: Optional[int]
    monotone_after_first_win: bool
    reliable: bool = True

    def to_dict(self):
        return {
            "graphName": self.graph_name,
            "variant": self.variant,
            "perSpan": [[s, w] for s, w in self.per_span],
            "minimalAliceSpan": self.minimal_alice_span,
            "monotoneAfterFirstWin": self.monotone_after_first_win,
            "reliable": self.reliable,
        }


def minimal_span(family: str, g: Graph, s_min: int, s_max: int, limits: Limits = Limits()) -> SpanResult:
    """Solve the Maker-Breaker game for every span in [s_min, s_max]."""
    if s_min > s_max:
        raise ValueError("s_min must not exceed s_max")
    per_span = []
    for s in range(s_min, s_max + 1):
        per_span.append((s, _winner_or_unsolved(family_spec(family, g, s), g, limits)))
    winners = [w for _, w in per_span]
    # an unsolved cell below the first Alice win could hide a smaller span
    first = next((i for i, w in enumerate(winners) if w != Player.BOB.value), None)
    reliable = first is None or winners[first] != UNSOLVED
    minimal = None
    if first is not None and winners[first] == Player.ALICE.value:
        minimal = per_span[first][0]
    alice_at = [i for i, w in enumerate(winners) if w == Player.ALICE.value]
    monotone = not alice_at or all(w == Player.ALICE.value for w in winners[alice_at[0]:])
    return SpanResult(g.name or graph_to_graph6(g), family, per_span, minimal, monotone,
                      reliable and UNSOLVED not in winners)


def monotonicity_scan(family: str, graphs: Iterable[Graph], s_range: Sequence[int],
                      limits: Limits = Limits()) -> list[dict]:
    """Flag spans s where Alice wins at s but loses at s+1.

    Evidence only: an empty list says nothing beyond the scanned cells.
    """
    s_values = sorted(s_range)
    report = []
    for g in graphs:
        cells = [(s, _winner_or_unsolved(family_spec(family, g, s), g, limits)) for s in s_values]
        violations = [
            s for (s, w), (s2, w2) in zip(cells, cells[1:])
            if s2 == s + 1 and w == Player.ALICE.value and w2 == Player.BOB.value
        ]
        report.append({
            "graphName": g.name or graph_to_graph6(g),
            "graph6": graph_to_graph6(g),
            "perSpan": [[s, w] for s, w in cells],
            "violations": violations,
            "unsolved": [s for s, w in cells if w == UNSOLVED],
        })
    return report


# ---------------------------------------------------------------------------
# proposition suite
# ---------------------------------------------------------------------------

@dataclass
class PropositionReport:
    case_id: str
    description: str
    expected_winner: str
    solved_winner: str
    status: str  # confirmed, refuted, unsolved
    nodes: int
    seconds: float

    def to_dict(self):
        return {
            "caseId": self.case_id,
            "description": self.description,
            "expectedWinner": self.expected_winner,
            "solvedWinner": self.solved_winner,
            "status": self.status,
            "nodes": self.nodes,
            "seconds": self.seconds,
        }


@dataclass(frozen=True)
class Case:
    case_id: str
    description: str
    spec: GameSpec
    graph: Graph
    expected: Player


_PREFIX = " (finite-prefix confirmation)"


def proposition_cases() -> list[Case]:
    cases = []
    for k in range(1, 6):
        g = generate("star", k + 1)
        cases.append(Case(f"V1-{g.name}", "Graceful Game on a star, Alice first" + _PREFIX,
                          games.graceful(g), g, Player.ALICE))
    for n in range(4, 8):
        g = generate("path", n)
        cases.append(Case(f"V2-{g.name}", "Graceful Game on a path of order >= 4" + _PREFIX,
                          games.graceful(g), g, Player.BOB))
    for n in range(1, 6):
        g = generate("complete", n)
        expected = Player.ALICE if n <= 3 else Player.BOB
        group = "V3" if n <= 3 else "V4"
        what = "at most three vertices" if n <= 3 else "more than three vertices" + _PREFIX
        for first in Player:
            cases.append(Case(f"{group}-{g.name}-{first.value}",
                              f"Graceful Game on a complete graph with {what}, {first.value} first",
                              games.graceful(g, first_player=first), g, expected))
    for n in range(3, 7):
        g = generate("cycle", n)
        cases.append(Case(f"V5-{g.name}", "edge-sum game on a cycle with s=n",
                          games.cycle_sum(g), g, Player.ALICE if n == 3 else Player.BOB))
    for n in (4, 6):
        g = generate("cycle", n)
        cases.append(Case(f"V6-{g.name}",
                          "unconstrained sum game, Bob first, Alice avoids sum n+1" + _PREFIX,
                          games.antipodal_goal(g), g, Player.ALICE))
    for g in (generate("path", 4), generate("path", 5), generate("cycle", 5)):
        for f in ("sum", "absdiff"):
            cases.append(Case(f"V7-{g.name}-{f}",
                              f"adjacent-weight game, f={f}, repeats allowed, s=n" + _PREFIX,
                              games.adj_example(g, f), g, Player.BOB))
    return cases


def run_case(case: Case, limits: Limits = Limits()) -> PropositionReport:
    t0 = time.perf_counter()
    try:
        res = solve(case.spec, case.graph, limits)
        solved, nodes = res.winner.value, res.nodes_expanded
        status = "confirmed" if res.winner is case.expected else "refuted"
    except Unsolved:
        solved, nodes, status = UNSOLVED, 0, UNSOLVED
    return PropositionReport(case.case_id, case.description, case.expected.value,
                             solved, status, nodes, round(time.perf_counter() - t0, 4))


def verify_propositions(limits: Limits = Limits(), jobs: int = 1) -> list[PropositionReport]:
    cases = proposition_cases()
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(run_case, cases, [limits] * len(cases)))
    else:
        reports = [run_case(c, limits) for c in cases]
    return sorted(reports, key=lambda r: r.case_id)


# ---------------------------------------------------------------------------
# odd-|V| implication
# ---------------------------------------------------------------------------

def default_implication_battery() -> list[tuple[GameSpec, Graph]]:
    """EDGE-DIFF Maker-Breaker instances on odd-order graphs, several spans each."""
    graphs = [generate("path", n) for n in (1, 3, 5, 7)]
    graphs += [generate("star", n) for n in (3, 5, 7)]
    graphs += [generate("cycle", n) for n in (3, 5, 7)]
    graphs += [generate("complete", n) for n in (3, 5)]
    graphs += [generate("complete_bipartite", (1, 2), 2), generate("complete_bipartite", (2, 3))]
    battery = []
    for g in graphs:
        for s in range(g.n, g.m + 3):
            battery.append((GameSpec(Variant.EDGE_DIFF, 1, s), g))
    return battery


def implication_check(battery: Optional[Sequence[tuple[GameSpec, Graph]]] = None,
                      limits: Limits = Limits()) -> dict:
    """Odd |V|: a Maker-Breaker win for Alice must also be an Achievement win.

    The parity argument needs Alice to make the odd-numbered moves, so only
    Alice-first games with 1:1 alternation are checked; the rest are excluded.
    """
    if battery is None:
        battery = default_implication_battery()
    checked, excluded, violations, unsolved = [], [], [], []
    for spec, g in battery:
        label = f"{g.name or graph_to_graph6(g)} s={spec.label_hi} first={spec.first_player.value}"
        if (spec.variant is not Variant.EDGE_DIFF or g.n % 2 == 0
                or spec.first_player is not Player.ALICE or spec.bias != (1, 1)):
            excluded.append(label)
            continue
        mb = replace(spec, convention=Convention.MAKER_BREAKER)
        ach = replace(spec, convention=Convention.ACHIEVEMENT)
        try:
            w_mb = solve(mb, g, limits).winner
            w_ach = solve(ach, g, limits).winner
        except Unsolved:
            unsolved.append(label)
            continue
        checked.append({"instance": label, "makerBreaker": w_mb.value, "achievement": w_ach.value})
        if w_mb is Player.ALICE and w_ach is Player.BOB:
            violations.append(label)
    return {"checked": checked, "excluded": excluded, "unsolved": unsolved, "violations": violations}


# ---------------------------------------------------------------------------
# L(d,1) spans next to the known asymptotics
# ---------------------------------------------------------------------------

def least_alice_span(family: str, g: Graph, limits: Limits = Limits(), s_cap: Optional[int] = None):
    """Smallest s (scanning up from 0) where Alice wins; None if not found by ``s_cap``."""
    if s_cap is None:
        s_cap = 4 * g.n + 4 * max(1, g.n)
    for s in range(0, s_cap + 1):
        w = _winner_or_unsolved(family_spec(family, g, s), g, limits)
        if w == UNSOLVED:
            return UNSOLVED
        if w == Player.ALICE.value:
            return s
    return None


def ldone_trend(d_values: Sequence[int], n_range: Sequence[int], limits: Limits = Limits(),
                bipartite: bool = True, isolated: Sequence[int] = (0,)) -> list[dict]:
    """Exact L(d,1) game spans on K_n and K_{p,q} (+ isolated vertices).

    Each row carries the asymptotic reference value for comparison only;
    the references hide an O(d) term, so nothing is asserted against them.
    """
    rows = []
    for d in d_values:
        for n in n_range:
            g = generate("complete", n)
            rows.append({
                "graph": g.name, "d": d, "s": least_alice_span(f"ld1:{d}", g, limits),
                "reference": "(4d-1)*n/3", "referenceValue": round((4 * d - 1) * n / 3, 4),
            })
        if not bipartite:
            continue
        for n in n_range:
            for p in range(1, n // 2 + 1):
                for iso in isolated:
                    g = generate("complete_bipartite", (p, n - p), iso)
                    rows.append({
                        "graph": g.name, "d": d, "s": least_alice_span(f"ld1:{d}", g, limits),
                        "reference": "p+q+2d", "referenceValue": n + 2 * d,
                    })
    return rows


def format_table(rows: list[dict], columns: Sequence[str]) -> str:
    widths = [max(len(c), *(len(str(r.get(c))) for r in rows)) if rows else len(c) for c in columns]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(str(r.get(c)).ljust(w) for c, w in zip(columns, widths)))
    return "\n".join(lines)
