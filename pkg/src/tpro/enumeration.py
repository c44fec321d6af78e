"""Exhaustive and sampled orbit enumeration over the full state space.

A graph on nu vertices has nu! * nu states.  States are indexed by the Lehmer
rank of the labeling (read as a 0-based permutation vertex by vertex) times nu
plus the active label, which gives a dense table addressable without hashing.
Exhaustive censuses fill a per-state orbit-length table by walking each orbit
once; the table is sharded by contiguous rank ranges so shards can run
independently and merge by concatenation.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernel
from .dynamics import Labeling, State, default_cap
from .graphs import SimpleGraph, graph_id

MAX_EXHAUSTIVE_NU = 9  # 9! * 9 states is the largest table worth materializing


# ---------------------------------------------------------------------------
# permutation ranking

def lehmer_rank(perm: Sequence[int]) -> int:
    """Rank of a 0-based permutation in lexicographic order."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    r = 0
    for k in range(n - 1):
        smaller = sum(1 for j in range(k + 1, n) if perm[j] < perm[k])
        r += smaller * math.factorial(n - 1 - k)
    return r


def lehmer_unrank(rank: int, n: int) -> tuple[int, ...]:
    """Inverse of lehmer_rank."""
    if not 0 <= rank < math.factorial(n):
        raise ValueError(f"rank {rank} out of range for n={n}")
    avail = list(range(n))
    out = []
    for k in range(n):
        f = math.factorial(n - 1 - k)
        d, rank = divmod(rank, f)
        out.append(avail.pop(d))
    return tuple(out)


def state_index(s: State) -> int:
    """Dense index: labeling rank times nu plus the active label."""
    rank = lehmer_rank([l - 1 for l in s.labeling.label_of])
    return rank * s.nu + (s.active - 1)


def state_from_index(idx: int, nu: int) -> State:
    """Inverse of state_index."""
    if not 0 <= idx < math.factorial(nu) * nu:
        raise ValueError(f"state index {idx} out of range")
    rank, rem = divmod(idx, nu)
    labels = tuple(x + 1 for x in lehmer_unrank(rank, nu))
    return State(Labeling(labels), rem + 1)


def random_state(nu: int, rng: random.Random) -> State:
    labels = list(range(1, nu + 1))
    rng.shuffle(labels)
    return State(Labeling(tuple(labels)), rng.randrange(1, nu + 1))


# ---------------------------------------------------------------------------
# plans

@dataclass(frozen=True)
class EnumerationPlan:
    """How to cover the state space.

    mode 'exhaustive' visits every state; 'sampled' draws `count` states from
    the seeded generator.  `budget` bounds the total number of promotion
    steps across the whole run; `partition` splits exhaustive work into that
    many contiguous rank ranges.
    """

    mode: str = "exhaustive"
    count: int | None = None
    seed: int | None = None
    budget: int | None = None
    partition: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown enumeration mode {self.mode!r}")
        if self.mode == "sampled" and (self.count is None or self.count < 1):
            raise ValueError("sampled mode needs a positive count")
        if self.partition < 1:
            raise ValueError("partition must be at least 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")


def enumerate_states(nu: int, plan: EnumerationPlan) -> Iterator[State]:
    """States under the plan: all of them in rank order, or seeded samples."""
    space = math.factorial(nu) * nu
    if plan.mode == "exhaustive":
        if plan.budget is not None and space > plan.budget:
            raise ValueError(
                f"budget {plan.budget} cannot cover {space} states exhaustively"
            )
        import itertools

        for perm in itertools.permutations(range(1, nu + 1)):
            lab = Labeling(perm)
            for i in range(1, nu + 1):
                yield State(lab, i)
        return
    rng = random.Random(plan.seed)
    for _ in range(plan.count or 0):
        yield random_state(nu, rng)


# ---------------------------------------------------------------------------
# orbit-length tables

def adjacency_masks(g: SimpleGraph) -> np.ndarray:
    if g.vertex_count > 63:
        raise ValueError("bitmask adjacency supports at most 63 vertices")
    return np.array(g.adjacency, dtype=np.int64)


def _walk_range_py(
    adj: Sequence[int],
    nu: int,
    rank_lo: int,
    rank_hi: int,
    lengths: np.ndarray,
    budget: int,
) -> tuple[int, int]:
    """Plain-Python twin of the compiled range walker (same contract)."""
    steps = 0
    cap = math.factorial(nu) * nu
    buf = [0] * ((rank_hi - rank_lo) * nu)
    for r0 in range(rank_lo, rank_hi):
        start = list(lehmer_unrank(r0, nu))
        for i0 in range(nu):
            idx0 = (r0 - rank_lo) * nu + i0
            if lengths[idx0] != 0:
                continue
            label0 = list(start)
            vert = [0] * nu
            for v in range(nu):
                vert[start[v]] = v
            i = i0
            nbuf = 1
            buf[0] = idx0
            length = 0
            while True:
                u = vert[i]
                w = vert[(i + 1) % nu]
                if not adj[u] >> w & 1:
                    li, lw = label0[u], label0[w]
                    label0[u], label0[w] = lw, li
                    vert[li], vert[lw] = w, u
                i = (i + 1) % nu
                length += 1
                steps += 1
                if steps > budget:
                    return steps, 1
                if i == i0 and label0 == start:
                    break
                if length > cap:
                    return steps, 3
                rr = lehmer_rank(label0)
                if rank_lo <= rr < rank_hi:
                    jdx = (rr - rank_lo) * nu + i
                    if lengths[jdx] != 0:
                        return steps, 2
                    buf[nbuf] = jdx
                    nbuf += 1
            for b in range(nbuf):
                lengths[buf[b]] = length
    return steps, 0


def _shard_bounds(total: int, partition: int) -> list[tuple[int, int]]:
    cuts = [total * j // partition for j in range(partition + 1)]
    return [(cuts[j], cuts[j + 1]) for j in range(partition) if cuts[j] < cuts[j + 1]]


def orbit_lengths_table(
    g: SimpleGraph,
    budget: int | None = None,
    partition: int = 1,
    jobs: int = 1,
    use_kernel: bool | None = None,
) -> tuple[np.ndarray, int, bool]:
    """Orbit length of every state, as a dense uint32 table.

    Entry rank*nu + (active-1) holds that state's orbit length; zero marks
    states not reached before the budget ran out.  Returns
    (table, steps_used, complete).
    """
    nu = g.vertex_count
    if nu > MAX_EXHAUSTIVE_NU:
        raise ValueError(
            f"exhaustive tables are limited to {MAX_EXHAUSTIVE_NU} vertices"
        )
    fact = math.factorial(nu)
    lengths = np.zeros(fact * nu, dtype=np.uint32)
    if use_kernel is None:
        use_kernel = _kernel.AVAILABLE
    if use_kernel and not _kernel.AVAILABLE:
        raise ValueError("compiled kernel requested but numba is unavailable")
    adj_np = adjacency_masks(g)
    adj_py = g.adjacency
    total_budget = budget if budget is not None else (1 << 62)
    shards = _shard_bounds(fact, partition)

    def run(lo: int, hi: int, shard_budget: int) -> tuple[int, int]:
        view = lengths[lo * nu : hi * nu]
        if use_kernel:
            return _kernel.orbit_lengths_range(adj_np, nu, lo, hi, view, shard_budget)
        return _walk_range_py(adj_py, nu, lo, hi, view, shard_budget)

    steps = 0
    complete = True
    if jobs > 1 and len(shards) > 1:
        share = total_budget // len(shards)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda b: run(b[0], b[1], share), shards)
            )
        for used, status in results:
            steps += used
            if status == 1:
                complete = False
            elif status != 0:
                _raise_status(status)
    else:
        remaining = total_budget
        for lo, hi in shards:
            used, status = run(lo, hi, remaining)
            steps += used
            remaining -= used
            if status == 1:
                complete = False
                break
            if status != 0:
                _raise_status(status)
            if remaining <= 0:
                complete = steps <= total_budget
                break
    return lengths, steps, complete


def _raise_status(status: int) -> None:
    if status == 2:
        raise RuntimeError(
            "two different orbits reached the same state: the step is not a bijection"
        )
    if status == 3:
        raise RuntimeError("an orbit walk exceeded the state count: the step is broken")
    raise RuntimeError(f"unexpected walker status {status}")


# ---------------------------------------------------------------------------
# censuses

@dataclass
class OrbitCensus:
    """Multiset of orbit lengths over the covered states.

    entries[L] is the number of covered states lying on orbits of length L.
    For a complete exhaustive census the entries sum to nu! * nu and each
    count is divisible by its length (an orbit of length L contributes L
    states).
    """

    graph_id: str
    nu: int
    mode: str
    entries: dict[int, int]
    total_states: int
    state_space: int
    complete: bool
    steps: int
    seed: int | None = None
    budget: int | None = None
    partition: int = 1

    def conserved(self) -> bool:
        if sum(self.entries.values()) != self.total_states:
            return False
        if self.mode == "exhaustive" and self.complete:
            if self.total_states != self.state_space:
                return False
            if any(count % length for length, count in self.entries.items()):
                return False
        return True


def census(g: SimpleGraph, plan: EnumerationPlan, jobs: int = 1) -> OrbitCensus:
    """Orbit-length census of the state space under the given plan."""
    nu = g.vertex_count
    space = math.factorial(nu) * nu
    if plan.mode == "exhaustive":
        if nu > MAX_EXHAUSTIVE_NU:
            raise ValueError(
                f"exhaustive censuses are limited to {MAX_EXHAUSTIVE_NU} vertices; "
                "use sampled mode"
            )
        if plan.budget is not None and space > plan.budget:
            raise ValueError(
                f"budget {plan.budget} cannot cover {space} states exhaustively"
            )
        table, steps, complete = orbit_lengths_table(
            g, budget=plan.budget, partition=plan.partition, jobs=jobs
        )
        values, counts = np.unique(table, return_counts=True)
        entries = {
            int(v): int(c) for v, c in zip(values, counts) if v != 0
        }
        total = int(sum(entries.values()))
        return OrbitCensus(
            graph_id=graph_id(g),
            nu=nu,
            mode=plan.mode,
            entries=entries,
            total_states=total,
            state_space=space,
            complete=complete,
            steps=steps,
            seed=plan.seed,
            budget=plan.budget,
            partition=plan.partition,
        )
    # sampled
    from .dynamics import orbit_length_bounded

    entries: dict[int, int] = {}
    steps = 0
    complete = True
    total = 0
    budget = plan.budget if plan.budget is not None else (1 << 62)
    cap = default_cap(nu)
    for s in enumerate_states(nu, plan):
        remaining = budget - steps
        if remaining <= 0:
            complete = False
            break
        length, used = orbit_length_bounded(g, s, min(cap, remaining))
        steps += used
        if length is None:
            if remaining >= cap:
                raise RuntimeError(
                    "an orbit walk exceeded the state count: the step is broken"
                )
            complete = False
            break
        entries[length] = entries.get(length, 0) + 1
        total += 1
    return OrbitCensus(
        graph_id=graph_id(g),
        nu=nu,
        mode=plan.mode,
        entries=entries,
        total_states=total,
        state_space=space,
        complete=complete,
        steps=steps,
        seed=plan.seed,
        budget=plan.budget,
        partition=plan.partition,
    )


def census_to_json_dict(c: OrbitCensus) -> dict:
    return {
        "kind": "census",
        "graph_id": c.graph_id,
        "nu": c.nu,
        "mode": c.mode,
        "seed": c.seed,
        "budget": c.budget,
        "partition": c.partition,
        "complete": c.complete,
        "steps": c.steps,
        "total_states": c.total_states,
        "state_space": c.state_space,
        "entries": [[length, c.entries[length]] for length in sorted(c.entries)],
    }


def census_csv_rows(c: OrbitCensus) -> list[tuple[int, int]]:
    """Rows (orbit_length, state_count) in ascending length order."""
    return [(length, c.entries[length]) for length in sorted(c.entries)]
