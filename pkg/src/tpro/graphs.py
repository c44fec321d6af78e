"""Labeled simple graphs: families, bridge sums, corona products, chains.

Vertices are always 0..n-1.  Edges are unordered pairs with u != v.  The
adjacency structure is stored both as a frozenset of sorted pairs and as a
per-vertex bitmask, which keeps adjacency tests O(1) and lets the orbit
enumeration kernels consume the graph without conversion overhead.
"""
from __future__ import annotations

import hashlib
import heapq
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Edge = tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: frozenset[Edge]
    adjacency: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        masks = [0] * self.vertex_count
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {e} has a vertex out of range")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            if u > v:
                raise ValueError(f"edge {e} must be stored sorted")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "adjacency", tuple(masks))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Iterable[int]]) -> "SimpleGraph":
        """Build from an edge list, rejecting loops and duplicate edges."""
        seen: set[Edge] = set()
        for raw in edges:
            u, v = raw
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            e = _normalize_edge(int(u), int(v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls(vertex_count, frozenset(seen))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        mask = self.adjacency[v]
        return tuple(u for u in range(self.vertex_count) if mask >> u & 1)

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))


# ---------------------------------------------------------------------------
# families

def path(m: int) -> SimpleGraph:
    """Path on m vertices: 0-1-2-...-(m-1)."""
    if m < 1:
        raise ValueError("path needs at least one vertex")
    return SimpleGraph.from_edges(m, [(v, v + 1) for v in range(m - 1)])


def star(m: int) -> SimpleGraph:
    """Star on m vertices with center 0."""
    if m < 1:
        raise ValueError("star needs at least one vertex")
    return SimpleGraph.from_edges(m, [(0, v) for v in range(1, m)])


def complete(n: int) -> SimpleGraph:
    """Complete graph on n vertices."""
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return SimpleGraph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> SimpleGraph:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return SimpleGraph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def tree_from_pruefer(seq: Iterable[int], m: int | None = None) -> SimpleGraph:
    """Decode a Pruefer sequence into the tree on m = len(seq)+2 vertices."""
    seq = list(seq)
    if m is None:
        m = len(seq) + 2
    if m < 2:
        raise ValueError("Pruefer decoding needs at least two vertices")
    if len(seq) != m - 2:
        raise ValueError(f"Pruefer sequence for {m} vertices must have length {m - 2}")
    for x in seq:
        if not 0 <= x < m:
            raise ValueError(f"Pruefer entry {x} out of range for {m} vertices")
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(m) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        v = heapq.heappop(leaves)
        edges.append((v, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return SimpleGraph.from_edges(m, edges)


def pruefer_encode(g: SimpleGraph) -> tuple[int, ...]:
    """Inverse of tree_from_pruefer; requires a tree on >= 2 vertices."""
    m = g.vertex_count
    if m < 2:
        raise ValueError("Pruefer encoding needs at least two vertices")
    if not classify(g).is_tree:
        raise ValueError("Pruefer encoding requires a tree")
    degree = [g.degree(v) for v in range(m)]
    neigh = {v: set(g.neighbors(v)) for v in range(m)}
    leaves = [v for v in range(m) if degree[v] == 1]
    heapq.heapify(leaves)
    out = []
    for _ in range(m - 2):
        v = heapq.heappop(leaves)
        x = next(iter(neigh[v]))
        out.append(x)
        neigh[x].discard(v)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    return tuple(out)


def all_pruefer_sequences(m: int) -> Iterator[tuple[int, ...]]:
    """All Pruefer sequences for trees on m vertices, lexicographic."""
    if m < 2:
        raise ValueError("no Pruefer sequences below two vertices")
    return itertools.product(range(m), repeat=m - 2)


def all_trees(m: int) -> Iterator[SimpleGraph]:
    """Every labeled tree on m vertices (the single-vertex tree for m=1)."""
    if m == 1:
        yield SimpleGraph.from_edges(1, [])
        return
    for seq in all_pruefer_sequences(m):
        yield tree_from_pruefer(seq, m)


@dataclass(frozen=True)
class GraphFamilySpec:
    """Declarative recipe for one graph: a named family or explicit edges."""

    kind: str
    size: int = 0
    pruefer: tuple[int, ...] | None = None
    vertex_count: int = 0
    edges: tuple[Edge, ...] = ()

    def build(self) -> SimpleGraph:
        if self.kind == "path":
            return path(self.size)
        if self.kind == "star":
            return star(self.size)
        if self.kind == "complete":
            return complete(self.size)
        if self.kind == "cycle":
            return cycle(self.size)
        if self.kind == "tree_from_pruefer":
            if self.pruefer is None:
                raise ValueError("tree_from_pruefer needs a pruefer sequence")
            return tree_from_pruefer(self.pruefer, self.size or None)
        if self.kind == "explicit":
            return SimpleGraph.from_edges(self.vertex_count, self.edges)
        raise ValueError(f"unknown family kind {self.kind!r}")


def build(spec: GraphFamilySpec | SimpleGraph) -> SimpleGraph:
    """Materialize a family spec (graphs pass through unchanged)."""
    if isinstance(spec, SimpleGraph):
        return spec
    return spec.build()


# ---------------------------------------------------------------------------
# composition

def bridge_sum(g1: SimpleGraph, a: int, g2: SimpleGraph, b: int) -> SimpleGraph:
    """Disjoint union of g1 and g2 plus the single edge {a, b'}.

    Vertices of g2 are shifted up by g1.vertex_count; the new edge joins
    vertex a of g1 to vertex b of g2 (post-shift index g1.vertex_count + b).
    """
    n1 = g1.vertex_count
    if not 0 <= a < n1:
        raise ValueError(f"junction {a} out of range for the left graph")
    if not 0 <= b < g2.vertex_count:
        raise ValueError(f"junction {b} out of range for the right graph")
    edges = list(g1.sorted_edges())
    edges += [(u + n1, v + n1) for u, v in g2.sorted_edges()]
    edges.append(_normalize_edge(a, n1 + b))
    return SimpleGraph.from_edges(n1 + g2.vertex_count, edges)


def corona_product(g1: SimpleGraph, g2: SimpleGraph, attach: int) -> SimpleGraph:
    """One copy of g2 per vertex of g1, each hung off that vertex by a bridge.

    The copy for vertex i of g1 occupies indices n1 + i*n2 .. n1 + (i+1)*n2 - 1
    and is joined to i through its vertex `attach`.
    """
    n1, n2 = g1.vertex_count, g2.vertex_count
    if not 0 <= attach < n2:
        raise ValueError(f"attach vertex {attach} out of range for the copied graph")
    edges = list(g1.sorted_edges())
    for i in range(n1):
        off = n1 + i * n2
        edges += [(u + off, v + off) for u, v in g2.sorted_edges()]
        edges.append(_normalize_edge(i, off + attach))
    return SimpleGraph.from_edges(n1 + n1 * n2, edges)


@dataclass(frozen=True)
class BridgeChainSpec:
    """Blocks joined left to right by bridges.

    junctions[k] = (a, b) bridges vertex a of block k (block-local index) to
    vertex b of block k+1.  Missing junctions default to (0, 0).
    """

    blocks: tuple[GraphFamilySpec, ...]
    junctions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("chain needs at least one block")
        if self.junctions and len(self.junctions) != len(self.blocks) - 1:
            raise ValueError("need one junction pair per consecutive block pair")


def build_chain(spec: BridgeChainSpec) -> SimpleGraph:
    """Left fold of bridge sums over the chain's blocks."""
    graphs = [build(b) for b in spec.blocks]
    junctions = spec.junctions or tuple((0, 0) for _ in range(len(graphs) - 1))
    acc = graphs[0]
    offset = 0
    for k, g in enumerate(graphs[1:]):
        a, b = junctions[k]
        if not 0 <= a < graphs[k].vertex_count:
            raise ValueError(f"junction {a} out of range for block {k}")
        acc = bridge_sum(acc, offset + a, g, b)
        offset += graphs[k].vertex_count
    return acc


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Classification:
    is_connected: bool
    is_tree: bool
    is_complete: bool
    bridges: tuple[Edge, ...]


def connected_components(g: SimpleGraph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, each sorted, in discovery order."""
    seen = [False] * g.vertex_count
    comps = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        comp = []
        stack = [root]
        seen[root] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g: SimpleGraph) -> bool:
    return len(connected_components(g)) == 1


def find_bridges(g: SimpleGraph) -> list[Edge]:
    """All cut edges, sorted.  Iterative lowlink so deep paths don't recurse."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    bridges: list[Edge] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, v, iter(g.neighbors(u))))
                    advanced = True
                    break
                if u != parent:
                    low[v] = min(low[v], disc[u])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.append(_normalize_edge(p, v))
    return sorted(bridges)


def classify(g: SimpleGraph) -> Classification:
    """Connectivity, tree and completeness flags, and the sorted bridge list."""
    n = g.vertex_count
    connected = is_connected(g)
    tree = connected and g.edge_count == n - 1
    full = g.edge_count == n * (n - 1) // 2
    return Classification(connected, tree, full, tuple(find_bridges(g)))


def split_at_bridge(g: SimpleGraph, edge: Edge) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex sets of the two components after deleting a bridge.

    Returned as (side containing edge[0], side containing edge[1]).
    """
    u, v = edge
    if not g.adjacent(u, v):
        raise ValueError(f"{edge} is not an edge")
    remaining = frozenset(g.edges) - {_normalize_edge(u, v)}
    h = SimpleGraph(g.vertex_count, remaining)
    comps = connected_components(h)
    side_u = next((c for c in comps if u in c), None)
    if side_u is None or v in side_u:
        raise ValueError(f"{edge} is not a bridge")
    side_v = next(c for c in comps if v in c)
    return side_u, side_v


def induced_subgraph(g: SimpleGraph, vertices: Iterable[int]) -> tuple[SimpleGraph, list[int]]:
    """Subgraph induced on `vertices`, reindexed 0..k-1 ascending.

    Returns (subgraph, old_index_of_new) so callers can map back.
    """
    order = sorted(set(vertices))
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return SimpleGraph.from_edges(len(order), edges), order


def relabel(g: SimpleGraph, perm: Iterable[int]) -> SimpleGraph:
    """Image of g under the vertex permutation perm (perm[v] = new index)."""
    perm = list(perm)
    if sorted(perm) != list(range(g.vertex_count)):
        raise ValueError("perm must be a permutation of the vertices")
    return SimpleGraph.from_edges(
        g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges]
    )


# ---------------------------------------------------------------------------
# label-distance count

def eta(g: SimpleGraph, l: int, l_prime: int) -> int:
    """Number of vertices strictly closer to l_prime than to l.

    Requires l and l_prime adjacent.  When {l, l_prime} is a bridge this is
    the size of the component on the l_prime side.
    """
    if not g.adjacent(l, l_prime):
        raise ValueError(f"vertices {l} and {l_prime} must be adjacent")

    def bfs(src: int) -> list[int]:
        dist = [-1] * g.vertex_count
        dist[src] = 0
        q = deque([src])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist

    d_l = bfs(l)
    d_lp = bfs(l_prime)
    return sum(
        1
        for x in range(g.vertex_count)
        if d_lp[x] != -1 and (d_l[x] == -1 or d_lp[x] < d_l[x])
    )


# ---------------------------------------------------------------------------
# serialization

def to_json_dict(g: SimpleGraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.sorted_edges()]}


def to_json(g: SimpleGraph) -> str:
    return json.dumps(to_json_dict(g))


def from_json_dict(data: dict) -> SimpleGraph:
    try:
        n = int(data["vertices"])
        edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError("graph JSON needs 'vertices' and 'edges'") from exc
    return SimpleGraph.from_edges(n, edges)


def from_json(text: str) -> SimpleGraph:
    return from_json_dict(json.loads(text))


def to_dot(g: SimpleGraph) -> str:
    """Graphviz source for the graph (undirected)."""
    lines = ["graph G {"]
    lines += [f"  {v};" for v in range(g.vertex_count)]
    lines += [f"  {u} -- {v};" for u, v in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_id(g: SimpleGraph) -> str:
    """Short stable identifier: hash of the canonical JSON form."""
    return hashlib.sha256(to_json(g).encode()).hexdigest()[:12]
