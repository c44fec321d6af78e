"""Shared fixtures: a reference graph with a hand-checked orbit, random
connected graphs, and a tiny independent step used to cross-check the fast
paths."""
from __future__ import annotations

import random

from tpro.dynamics import Labeling, State
from tpro.graphs import SimpleGraph

# Triangle on {0,1,2} with the pendant vertex 3 hanging off vertex 2.  The
# orbit through (4123, 2) exercises both step cases and is short enough to
# keep as a literal fixture.
PAW = SimpleGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])

PAW_TRACE = [
    ("4123", 2),
    ("4123", 3),
    ("3124", 4),
    ("3421", 1),
    ("3421", 2),
    ("3421", 3),
    ("3421", 4),
    ("3124", 1),
    ("3124", 2),
    ("3124", 3),
    ("4123", 4),
    ("4123", 1),
]


def state_of(one_line: str, active: int) -> State:
    return State(Labeling.from_one_line(one_line), active)


def rand_connected(rng: random.Random, nu: int) -> SimpleGraph:
    """Random connected graph: a random spanning tree plus random extras."""
    edges = set()
    order = list(range(nu))
    rng.shuffle(order)
    for k in range(1, nu):
        other = order[rng.randrange(k)]
        edges.add((min(order[k], other), max(order[k], other)))
    for u in range(nu):
        for v in range(u + 1, nu):
            if rng.random() < 0.3:
                edges.add((u, v))
    return SimpleGraph.from_edges(nu, sorted(edges))


def reference_step(g: SimpleGraph, s: State) -> State:
    """Dict-based restatement of the step rule, kept separate on purpose."""
    nu = s.nu
    vert = {l: v for v, l in enumerate(s.labeling.label_of)}
    i = s.active
    u, w = vert[i], vert[i % nu + 1]
    if g.adjacent(u, w):
        return State(s.labeling, i % nu + 1)
    labels = list(s.labeling.label_of)
    labels[u], labels[w] = labels[w], labels[u]
    return State(Labeling(tuple(labels)), i % nu + 1)
