"""Regenerate the frozen regression fixtures (run by hand, then commit the JSON).

    python tests/make_fixtures.py
"""

import json
from pathlib import Path

from labelgames.analysis import family_spec, ldone_trend, minimal_span
from labelgames.graphcore import generate, graph_to_graph6

FIXTURES = Path(__file__).parent / "fixtures"
VERSION = 1

SPAN_CASES = [
    ("edge-diff", generate("path", 4), 4, 6),
    ("edge-diff", generate("cycle", 5), 5, 11),
    ("edge-diff", generate("star", 5), 4, 6),
    ("edge-sum", generate("cycle", 4), 4, 7),
    ("edge-sum", generate("path", 5), 5, 8),
    ("ld1:2", generate("complete", 2), 0, 4),
    ("ld1:1", generate("path", 4), 0, 4),
    ("ld1:2", generate("cycle", 4), 2, 7),
    ("radio", generate("path", 4), 0, 12),
    ("adj-sum:repaired", generate("path", 4), 2, 5),
    ("adj-absdiff:repaired", generate("cycle", 6), 2, 6),
]
TREND_D = (1, 2)
TREND_N = (1, 2, 3, 4)


def span_entries():
    out = []
    for family, g, lo, hi in SPAN_CASES:
        res = minimal_span(family, g, lo, hi)
        out.append({
            "family": family,
            "graphName": g.name,
            "graph6": graph_to_graph6(g),
            "sMin": lo,
            "sMax": hi,
            "cells": [
                {"s": s, "spec": family_spec(family, g, s).to_dict(), "winner": w}
                for s, w in res.per_span
            ],
            "minimalAliceSpan": res.minimal_alice_span,
        })
    return out


def main():
    FIXTURES.mkdir(exist_ok=True)
    spans = {"version": VERSION, "tables": span_entries()}
    trend = {"version": VERSION, "d": list(TREND_D), "n": list(TREND_N),
             "rows": ldone_trend(TREND_D, TREND_N)}
    for name, payload in (("span_tables.json", spans), ("ldone_trend.json", trend)):
        (FIXTURES / name).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
