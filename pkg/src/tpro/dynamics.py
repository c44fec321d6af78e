"""The toric promotion step and orbit walks.

A state is a bijective labeling of the vertices by 1..nu together with an
active label i.  One step looks at the vertices carrying labels i and i+1
(labels wrap around, nu+1 means 1): if they are adjacent the labeling is kept,
otherwise the two labels swap places; either way the active label advances to
i+1.  The step is invertible, so the orbit of a state is the number of steps
until the state first recurs.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterator

from .graphs import SimpleGraph


@dataclass(frozen=True)
class Labeling:
    """Bijection from vertices 0..nu-1 onto labels 1..nu."""

    label_of: tuple[int, ...]
    vertex_of: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        nu = len(self.label_of)
        if sorted(self.label_of) != list(range(1, nu + 1)):
            raise ValueError("labeling must be a bijection onto 1..nu")
        inv = [0] * nu
        for v, l in enumerate(self.label_of):
            inv[l - 1] = v
        object.__setattr__(self, "vertex_of", tuple(inv))

    @property
    def nu(self) -> int:
        return len(self.label_of)

    def label(self, v: int) -> int:
        """Label carried by vertex v."""
        return self.label_of[v]

    def vertex(self, l: int) -> int:
        """Vertex carrying label l (1-based)."""
        return self.vertex_of[l - 1]

    def one_line(self) -> str:
        """Digits label_of[0]..label_of[nu-1]; comma separated past nu=9."""
        if self.nu <= 9:
            return "".join(str(l) for l in self.label_of)
        return ",".join(str(l) for l in self.label_of)

    @classmethod
    def from_one_line(cls, text: str) -> "Labeling":
        text = text.strip()
        if "," in text:
            parts = [int(p) for p in text.split(",")]
        else:
            parts = [int(ch) for ch in text]
        return cls(tuple(parts))

    @classmethod
    def identity(cls, nu: int) -> "Labeling":
        return cls(tuple(range(1, nu + 1)))


@dataclass(frozen=True)
class State:
    """A labeling plus the active label."""

    labeling: Labeling
    active: int

    def __post_init__(self) -> None:
        if not 1 <= self.active <= self.labeling.nu:
            raise ValueError(f"active label {self.active} out of range")

    @property
    def nu(self) -> int:
        return self.labeling.nu

    def one_line(self) -> str:
        return self.labeling.one_line()


def make_state(labels, active: int) -> State:
    """Convenience: build a State from any label sequence."""
    return State(Labeling(tuple(labels)), active)


def state_to_json_dict(s: State) -> dict:
    return {"labeling": list(s.labeling.label_of), "active": s.active}


def state_to_json(s: State) -> str:
    return json.dumps(state_to_json_dict(s))


def state_from_json_dict(data: dict) -> State:
    try:
        labels = data["labeling"]
        active = int(data["active"])
    except (KeyError, TypeError) as exc:
        raise ValueError("state JSON needs 'labeling' and 'active'") from exc
    return make_state(labels, active)


def state_from_json(text: str) -> State:
    return state_from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# the step

def _check(g: SimpleGraph, s: State) -> None:
    if s.nu != g.vertex_count:
        raise ValueError(
            f"state on {s.nu} labels does not fit graph on {g.vertex_count} vertices"
        )


def tpro_step(g: SimpleGraph, s: State) -> State:
    """One toric promotion step."""
    _check(g, s)
    nu = s.nu
    i = s.active
    nxt = i % nu + 1
    u = s.labeling.vertex(i)
    w = s.labeling.vertex(nxt)
    if g.adjacent(u, w):
        return State(s.labeling, nxt)
    labels = list(s.labeling.label_of)
    labels[u], labels[w] = labels[w], labels[u]
    return State(Labeling(tuple(labels)), nxt)


def tpro_inverse_step(g: SimpleGraph, s: State) -> State:
    """Inverse of tpro_step: tpro_inverse_step(g, tpro_step(g, s)) == s.

    The step into active i came from active j = i-1 and either kept the
    labeling (labels j, j+1 adjacent) or swapped labels j and j+1.  A swap
    leaves the vertex pair carrying {j, j+1} unchanged as a set, so the same
    adjacency test decides which case applied.
    """
    _check(g, s)
    nu = s.nu
    j = (s.active - 2) % nu + 1
    u = s.labeling.vertex(j)
    w = s.labeling.vertex(j % nu + 1)
    if g.adjacent(u, w):
        return State(s.labeling, j)
    labels = list(s.labeling.label_of)
    labels[u], labels[w] = labels[w], labels[u]
    return State(Labeling(tuple(labels)), j)


def cyc(s: State) -> State:
    """Add one to every label and to the active label, wrapping at nu."""
    nu = s.nu
    labels = tuple(l % nu + 1 for l in s.labeling.label_of)
    return State(Labeling(labels), s.active % nu + 1)


# ---------------------------------------------------------------------------
# orbits

@dataclass(frozen=True)
class OrbitReport:
    """Result of walking one orbit to first recurrence."""

    start: State
    length: int


def default_cap(nu: int) -> int:
    """One more than the state count; recurrence must happen by then."""
    return math.factorial(nu) * nu + 1


def orbit_length(g: SimpleGraph, s: State, cap: int | None = None) -> OrbitReport:
    """Steps until the start state first recurs.

    The step is a bijection on a finite set, so the walk must close; a walk
    that exceeds `cap` (default nu!*nu + 1) indicates a broken step function
    and raises RuntimeError.  Past nu = 10 the factorial default is no longer
    a meaningful guardrail, so the cap must be given explicitly.
    """
    _check(g, s)
    nu = s.nu
    if cap is None:
        if nu > 10:
            raise ValueError("pass an explicit cap for graphs with more than 10 vertices")
        cap = default_cap(nu)
    adj = g.adjacency
    start_labels = list(s.labeling.label_of)
    start_i = s.active
    labels = list(start_labels)
    vert = list(s.labeling.vertex_of)
    i = start_i
    steps = 0
    while True:
        u = vert[i - 1]
        w = vert[i % nu]
        if not adj[u] >> w & 1:
            labels[u], labels[w] = labels[w], labels[u]
            vert[i - 1], vert[i % nu] = w, u
        i = i % nu + 1
        steps += 1
        if i == start_i and labels == start_labels:
            return OrbitReport(s, steps)
        if steps >= cap:
            raise RuntimeError(f"orbit exceeded cap {cap}; the step is broken")


def orbit_length_bounded(g: SimpleGraph, s: State, max_steps: int) -> tuple[int | None, int]:
    """Like orbit_length but gives up quietly after max_steps.

    Returns (length, steps_taken); length is None when the walk did not close
    within the bound.
    """
    _check(g, s)
    nu = s.nu
    adj = g.adjacency
    start_labels = list(s.labeling.label_of)
    start_i = s.active
    labels = list(start_labels)
    vert = list(s.labeling.vertex_of)
    i = start_i
    steps = 0
    while steps < max_steps:
        u = vert[i - 1]
        w = vert[i % nu]
        if not adj[u] >> w & 1:
            labels[u], labels[w] = labels[w], labels[u]
            vert[i - 1], vert[i % nu] = w, u
        i = i % nu + 1
        steps += 1
        if i == start_i and labels == start_labels:
            return steps, steps
    return None, steps


def iterate_orbit(g: SimpleGraph, s: State, limit: int | None = None) -> Iterator[State]:
    """Yield the orbit from s inclusive, ending with the recurrence of s.

    Yields length+1 states (the start appears first and last).  `limit`
    bounds the number of steps taken and defaults to the state-count cap.
    """
    _check(g, s)
    if limit is None:
        if s.nu > 10:
            raise ValueError("pass an explicit limit for graphs with more than 10 vertices")
        limit = default_cap(s.nu)
    yield s
    cur = s
    for _ in range(limit):
        cur = tpro_step(g, cur)
        yield cur
        if cur == s:
            return
    raise RuntimeError(f"orbit exceeded cap {limit}; the step is broken")
