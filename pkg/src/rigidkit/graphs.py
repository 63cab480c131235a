"""Regular graphs: canonical representation, generators, switches, covers.

Representation is fixed so that every downstream artifact (text files,
sketch bits, hashes, JSON records) is byte-reproducible:

* vertices are 0-based integers;
* an edge is a pair (u, v) with u < v;
* the edge tuple of a graph is sorted lexicographically;
* no loops, no duplicates, every vertex has degree exactly d.

Bipartite graphs additionally put the left class at {0, ..., n/2-1} and
the right class at {n/2, ..., n-1}; every edge crosses the classes.

Text file format, round-tripped exactly by read_graph/write_graph: the
first line is ``n d`` (plain) or ``n d bipartite``, each following line
is one edge ``u v`` in canonical order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GenerationError, ParameterError
from .rng import generator

__all__ = [
    "RegularGraph",
    "BipartiteRegularGraph",
    "EdgeOverlapReport",
    "random_regular",
    "random_bipartite_regular",
    "perturb_edges",
    "bipartite_double_cover",
    "edge_overlap",
    "is_connected",
    "graph_to_text",
    "text_to_graph",
    "write_graph",
    "read_graph",
    "canonical_hash",
]

Edge = tuple[int, int]


@dataclass(frozen=True)
class RegularGraph:
    """Simple d-regular graph on n vertices in canonical edge order."""

    n: int
    d: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        n, d = self.n, self.d
        if n < 2:
            raise ParameterError(f"need n >= 2, got n={n}")
        if not 0 <= d < n:
            raise ParameterError(f"need 0 <= d < n, got d={d}, n={n}")
        if (n * d) % 2:
            raise ParameterError(f"n*d must be even, got n={n}, d={d}")
        if len(self.edges) != n * d // 2:
            raise ParameterError(
                f"expected {n * d // 2} edges for n={n}, d={d}, got {len(self.edges)}"
            )
        degree = [0] * n
        prev: Edge | None = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < n):
                raise ParameterError(f"edge {e} is not canonical for n={n}")
            if prev is not None and e <= prev:
                raise ParameterError(f"edges out of order or duplicated at {e}")
            prev = e
            degree[u] += 1
            degree[v] += 1
        bad = next((i for i in range(n) if degree[i] != d), None)
        if bad is not None:
            raise ParameterError(f"vertex {bad} has degree {degree[bad]}, expected {d}")

    @classmethod
    def from_edges(cls, n: int, d: int, edges) -> "RegularGraph":
        """Build from any iterable of (u, v) pairs, canonicalizing order."""
        canon = sorted((u, v) if u < v else (v, u) for u, v in edges)
        return cls(n, d, tuple((int(u), int(v)) for u, v in canon))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    def edge_array(self) -> np.ndarray:
        """Edges as an int64 array of shape (dn/2, 2)."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)


@dataclass(frozen=True)
class BipartiteRegularGraph(RegularGraph):
    """d-regular bipartite graph with classes {0..n/2-1} and {n/2..n-1}."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.n % 2:
            raise ParameterError(f"bipartite graph needs even n, got {self.n}")
        half = self.n // 2
        for u, v in self.edges:
            if not (u < half <= v):
                raise ParameterError(f"edge {(u, v)} does not cross the bipartition")

    @property
    def left_size(self) -> int:
        return self.n // 2

    @classmethod
    def from_edges(cls, n: int, d: int, edges) -> "BipartiteRegularGraph":
        canon = sorted((u, v) if u < v else (v, u) for u, v in edges)
        return cls(n, d, tuple((int(u), int(v)) for u, v in canon))


@dataclass(frozen=True)
class EdgeOverlapReport:
    """Edge-set comparison of two graphs with equal (n, d)."""

    shared: int
    only_g: int
    only_h: int
    sym_diff: int
    delta: float  # only_g / (dn/2), the fraction of g's edges missing from h


def _check_same_shape(g: RegularGraph, h: RegularGraph) -> None:
    if g.n != h.n or g.d != h.d:
        raise ParameterError(
            f"graphs must share (n, d); got ({g.n}, {g.d}) and ({h.n}, {h.d})"
        )


def edge_overlap(g: RegularGraph, h: RegularGraph) -> EdgeOverlapReport:
    """Count shared and one-sided edges; delta is only_g over dn/2."""
    _check_same_shape(g, h)
    shared = len(g.edge_set & h.edge_set)
    only_g = len(g.edges) - shared
    only_h = len(h.edges) - shared
    m = g.n * g.d // 2
    return EdgeOverlapReport(
        shared=shared,
        only_g=only_g,
        only_h=only_h,
        sym_diff=only_g + only_h,
        delta=only_g / m if m else 0.0,
    )


def is_connected(g: RegularGraph) -> bool:
    """Breadth-first reachability of every vertex from vertex 0."""
    if g.n == 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    frontier = [0]
    count = 1
    adj = g.neighbors
    while frontier:
        nxt: list[int] = []
        for u in frontier:
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    nxt.append(v)
        frontier = nxt
    return count == g.n


# ─── Generators ───────────────────────────────────────────────────────────

def _check_gen_params(n: int, d: int) -> None:
    if n < 2 or d < 1 or d >= n:
        raise ParameterError(f"need n >= 2 and 1 <= d < n, got n={n}, d={d}")
    if (n * d) % 2:
        raise ParameterError(f"n*d must be even, got n={n}, d={d}")


def random_regular(n: int, d: int, seed: int, restart_budget: int = 10**6) -> RegularGraph:
    """Random simple d-regular graph from repaired stub pairing.

    Each round shuffles the unmatched stubs and pairs them sequentially,
    keeping pairs that form new simple edges and carrying clashing stubs
    into the next round. A round that can make no further progress forces
    a full restart. Deterministic given seed. Rounds and restarts both
    count against restart_budget.
    """
    _check_gen_params(n, d)
    rng = generator(seed)
    spent = 0
    while spent < restart_budget:
        edges: set[Edge] = set()
        stubs = np.repeat(np.arange(n, dtype=np.int64), d)
        while len(stubs):
            spent += 1
            if spent >= restart_budget:
                break
            rng.shuffle(stubs)
            leftover: list[int] = []
            progress = 0
            it = iter(stubs.tolist())
            for u in it:
                v = next(it)
                if u > v:
                    u, v = v, u
                if u == v or (u, v) in edges:
                    leftover.append(u)
                    leftover.append(v)
                else:
                    edges.add((u, v))
                    progress += 1
            if not progress:
                uniq = sorted(set(leftover))
                suitable = any(
                    u != v and ((u, v) if u < v else (v, u)) not in edges
                    for i, u in enumerate(uniq)
                    for v in uniq[i:]
                )
                if not suitable:
                    break  # dead end, restart from scratch
            stubs = np.array(leftover, dtype=np.int64)
        else:
            return RegularGraph.from_edges(n, d, edges)
    raise GenerationError(
        f"random_regular(n={n}, d={d}) exhausted its budget of {restart_budget} rounds"
    )


def _matching_avoiding(
    rng: np.random.Generator, m: int, forbidden: np.ndarray, budget: list[int]
) -> np.ndarray:
    """One uniform perfect matching on m+m vertices avoiding forbidden pairs.

    Rejection sampling: batches of Fisher-Yates permutations, with rows
    discarded as soon as a finalized position lands on a forbidden pair
    (positions 0..i are final after step i). budget is a single-element
    list holding the remaining attempt allowance, decremented in place.
    """
    batch = 64
    while budget[0] > 0:
        b = min(batch, budget[0])
        budget[0] -= b
        arr = np.tile(np.arange(m, dtype=np.int64), (b, 1))
        checked = 0
        for i in range(m - 1):
            alive = arr.shape[0]
            if not alive:
                break
            rows = np.arange(alive)
            j = rng.integers(i, m, size=alive)
            vj = arr[rows, j]
            arr[rows, j] = arr[:, i]
            arr[:, i] = vj
            if i - checked >= 15:
                window = np.arange(checked, i + 1)
                bad = forbidden[window[None, :], arr[:, checked : i + 1]].any(axis=1)
                arr = arr[~bad]
                checked = i + 1
        if arr.shape[0]:
            window = np.arange(checked, m)
            bad = forbidden[window[None, :], arr[:, checked:]].any(axis=1)
            arr = arr[~bad]
        if arr.shape[0]:
            return arr[0]
        batch = min(batch * 2, 16384)
    raise GenerationError(
        f"bipartite matching rejection exhausted its attempt budget at class size {m}"
    )


def random_bipartite_regular(
    n: int, d: int, seed: int, attempt_budget: int = 10**8
) -> BipartiteRegularGraph:
    """Union of d uniform random perfect matchings between the classes.

    Matchings are added one at a time; a matching that duplicates an
    existing edge is redrawn, so each is uniform over matchings that are
    edge-disjoint from the earlier ones. Expected redraws for matching k
    scale like e^k, which keeps d up to about 18 practical; the attempt
    budget turns anything beyond that into a generation failure instead
    of a hang. Deterministic given seed.
    """
    if n < 2 or n % 2:
        raise ParameterError(f"bipartite generator needs even n >= 2, got {n}")
    m = n // 2
    if not 1 <= d <= m:
        raise ParameterError(f"need 1 <= d <= n/2, got d={d}, n={n}")
    rng = generator(seed)
    forbidden = np.zeros((m, m), dtype=bool)
    budget = [attempt_budget]
    edges: list[Edge] = []
    for _ in range(d):
        match = _matching_avoiding(rng, m, forbidden, budget)
        forbidden[np.arange(m), match] = True
        edges.extend((u, m + int(match[u])) for u in range(m))
    return BipartiteRegularGraph.from_edges(n, d, edges)


# ─── Degree-preserving switches ───────────────────────────────────────────

def perturb_edges(
    g: RegularGraph, swaps: int, seed: int, attempt_cap: int = 10**4
) -> RegularGraph:
    """Apply `swaps` accepted 2-edge switches; returns the same graph type.

    A switch replaces edges (a, b), (c, e) with (a, e), (c, b). Proposals
    that would create a loop or duplicate edge, or break the bipartition
    for bipartite inputs, are resampled; only accepted switches count.
    More than attempt_cap consecutive rejections for a single switch
    raises a generation failure (e.g. on switch-saturated inputs such as
    complete graphs). The symmetric difference from g grows by at most 4
    per accepted switch.
    """
    if swaps < 0:
        raise ParameterError(f"swaps must be non-negative, got {swaps}")
    if swaps == 0:
        return g
    bip = isinstance(g, BipartiteRegularGraph)
    rng = generator(seed)
    edges = list(g.edges)
    present = set(edges)
    m = len(edges)
    if m < 2:
        raise GenerationError("graph has fewer than two edges, no switch exists")
    for _ in range(swaps):
        for attempt in range(attempt_cap):
            i = int(rng.integers(m))
            j = int(rng.integers(m))
            if i == j:
                continue
            a, b = edges[i]
            c, e = edges[j]
            if bip:
                # keep left endpoints, exchange right endpoints
                p, q = (a, e), (c, b)
            elif int(rng.integers(2)):
                p, q = (a, e), (c, b)
            else:
                p, q = (a, c), (b, e)
            p = p if p[0] < p[1] else (p[1], p[0])
            q = q if q[0] < q[1] else (q[1], q[0])
            if p[0] == p[1] or q[0] == q[1] or p == q:
                continue
            if p in present or q in present:
                continue
            present.discard((a, b))
            present.discard((c, e))
            present.add(p)
            present.add(q)
            edges[i] = p
            edges[j] = q
            break
        else:
            raise GenerationError(
                f"no acceptable switch found in {attempt_cap} proposals; "
                "the graph may admit no 2-edge switch"
            )
    return type(g).from_edges(g.n, g.d, edges)


def bipartite_double_cover(g: RegularGraph) -> BipartiteRegularGraph:
    """Tensor with K2: vertex u splits into u and n+u, edges cross sides.

    Each edge (u, v) of g becomes (u, n+v) and (v, n+u). The cover of a
    connected non-bipartite graph is connected, and distinct graphs have
    distinct covers, which is what makes the construction injective.
    """
    n = g.n
    doubled: list[Edge] = []
    for u, v in g.edges:
        doubled.append((u, n + v))
        doubled.append((v, n + u))
    return BipartiteRegularGraph.from_edges(2 * n, g.d, doubled)


# ─── Text format ──────────────────────────────────────────────────────────

def graph_to_text(g: RegularGraph) -> str:
    """Canonical text serialization; identical graphs give identical bytes."""
    marker = " bipartite" if isinstance(g, BipartiteRegularGraph) else ""
    lines = [f"{g.n} {g.d}{marker}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def text_to_graph(text: str) -> RegularGraph:
    """Parse the text format; returns the bipartite type when marked."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParameterError("empty graph text")
    head = lines[0].split()
    bip = False
    if len(head) == 3 and head[2] == "bipartite":
        bip = True
    elif len(head) != 2:
        raise ParameterError(f"malformed header {lines[0]!r}")
    try:
        n, d = int(head[0]), int(head[1])
        edges = [(int(a), int(b)) for a, b in (ln.split() for ln in lines[1:])]
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"malformed graph text: {exc}") from exc
    cls = BipartiteRegularGraph if bip else RegularGraph
    return cls.from_edges(n, d, edges)


def write_graph(g: RegularGraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(graph_to_text(g))


def read_graph(path: str) -> RegularGraph:
    with open(path, "r", encoding="ascii") as fh:
        return text_to_graph(fh.read())


def canonical_hash(g: RegularGraph) -> str:
    """SHA-256 of the canonical text bytes."""
    return hashlib.sha256(graph_to_text(g).encode("ascii")).hexdigest()
