"""Graphs for labeling games: representation, generators, graph6, distances, automorphisms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``edges`` keeps the caller's order; edge ``i`` is ``edges[i]`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)
    adjacency: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    edge_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise ValueError(f"duplicate edge {pair}")
            seen.add(pair)
            norm.append(pair)
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "edge_index", {p: i for i, p in enumerate(norm)})

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def incident_edges(self, v: int) -> list[int]:
        return [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __str__(self):
        return self.name or f"G(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite")


def generate(family: str, params: Sequence[int] | int, isolated: int = 0) -> Graph:
    """Build a standard graph.

    Vertex numbering: path 0..n-1 along the path, cycle 0..n-1 cyclically
    (edge i joins i and i+1 mod n), star has center 0, complete_bipartite
    puts side A on 0..p-1. Isolated vertices are appended last.
    ``star`` takes the total vertex count, so ``("star", 4)`` is K_{1,3}.
    """
    if isinstance(params, int):
        params = (params,)
    params = tuple(int(p) for p in params)
    if isolated < 0:
        raise ValueError("isolated count must be non-negative")
    if family == "complete_bipartite":
        if len(params) != 2:
            raise ValueError("complete_bipartite takes two sizes (p, q)")
    elif len(params) != 1:
        raise ValueError(f"{family} takes exactly one size parameter")
    if any(p <= 0 for p in params):
        raise ValueError(f"sizes must be positive, got {params}")

    if family == "path":
        (n,) = params
        edges = [(i, i + 1) for i in range(n - 1)]
        name = f"P{n}"
    elif family == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)]
        name = f"C{n}"
    elif family == "star":
        (n,) = params
        edges = [(0, i) for i in range(1, n)]
        name = f"K1,{n - 1}"
    elif family == "complete":
        (n,) = params
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
        name = f"K{n}"
    elif family == "complete_bipartite":
        p, q = params
        n = p + q
        edges = [(i, p + j) for i in range(p) for j in range(q)]
        name = f"K{p},{q}"
    else:
        raise ValueError(f"unknown graph family {family!r}; expected one of {FAMILIES}")
    if isolated:
        name += f"+{isolated}K1"
    return Graph(n + isolated, tuple(edges), name=name)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def graph_to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if j in g.adjacency[i] else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def graph_from_graph6(text: str, name: str = "") -> Graph:
    """Decode one headerless graph6 line (a leading ``>>graph6<<`` is tolerated)."""
    data = text.rstrip("\r\n")
    base = 0
    if data.startswith(_HEADER):
        base = len(_HEADER)
        data = data[base:]
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + k)
    vals = [ord(ch) - 63 for ch in data]

    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated length field", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
        if n < 63:
            raise Graph6Error("non-canonical length field", base)
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated length field", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
        if n <= 258047:
            raise Graph6Error("non-canonical length field", base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < nbytes:
        raise Graph6Error(
            f"expected {nbytes} adjacency bytes for n={n}, got {len(body)}", base + len(vals)
        )
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage after adjacency data", base + pos + nbytes)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, bit = divmod(k, 6)
            if (body[byte] >> (5 - bit)) & 1:
                edges.append((i, j))
            k += 1
    pad = nbytes * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + nbytes - 1)
    edges.sort()
    return Graph(n, tuple(edges), name=name or data)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    """Hop distances; ``None`` marks an unreachable pair."""

    dist: tuple[tuple[Optional[int], ...], ...]
    diameter: int

    def __call__(self, u: int, v: int) -> Optional[int]:
        return self.dist[u][v]


def distance_matrix(g: Graph) -> DistanceMatrix:
    rows = []
    diameter = 0
    for s in range(g.n):
        d: list[Optional[int]] = [None] * g.n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if d[w] is None:
                    d[w] = d[u] + 1
                    queue.append(w)
        diameter = max([diameter] + [x for x in d if x is not None])
        rows.append(tuple(d))
    return DistanceMatrix(tuple(rows), diameter)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

DEFAULT_MAX_N = 9


@dataclass(frozen=True)
class AutomorphismGroup:
    perms: tuple[tuple[int, ...], ...]
    generated_by: str  # "exhaustive" or "trivial-fallback"
    max_n: int

    def __len__(self):
        return len(self.perms)


def automorphisms(g: Graph, max_n: int = DEFAULT_MAX_N) -> AutomorphismGroup:
    """All adjacency-preserving vertex permutations when ``g.n <= max_n``.

    Permutations are enumerated by extending partial maps vertex by vertex and
    dropping any extension that breaks adjacency with the already-mapped
    vertices; the surviving leaves are exactly the automorphisms. Above the
    threshold only the identity is returned.
    """
    n = g.n
    identity = tuple(range(n))
    if n > max_n:
        return AutomorphismGroup((identity,), "trivial-fallback", max_n)

    adj = g.adjacency
    deg = [len(a) for a in adj]
    found = []
    image = [-1] * n
    taken = [False] * n

    def extend(v):
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if taken[w] or deg[w] != deg[v]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in range(v)):
                continue
            image[v] = w
            taken[w] = True
            extend(v + 1)
            taken[w] = False
        image[v] = -1

    extend(0)
    found.sort()
    return AutomorphismGroup(tuple(found), "exhaustive", max_n)


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges}
    return mapped == g.edge_set()
