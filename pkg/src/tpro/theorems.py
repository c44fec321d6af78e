"""Orbit-length laws, structural verifiers, and conjecture exploration.

The closed-form orbit lengths (complete graphs, trees, bridge sums of them,
coronas) are encoded as predictions keyed by formula id.  Verifiers sweep
prediction against measurement, exhaustively or on seeded samples, and report
every disagreeing state.  Separate instrumented replays check the finer
structural claims: independence of the orbit length from how labels are
arranged inside an attached block, the fixed spacing of coin crossings over a
bridge, the cyclic-rotation relation between stone diagrams one excursion
apart, and one-way replica traffic while the coin sits in a complete block.
Conjectured laws (chains, cycle attachments and their winding numbers) get
evidence tables only; nothing about them is asserted.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernel
from .dynamics import (
    Labeling,
    State,
    default_cap,
    orbit_length,
    orbit_length_bounded,
)
from .enumeration import (
    EnumerationPlan,
    OrbitCensus,
    census,
    enumerate_states,
    lehmer_unrank,
    orbit_lengths_table,
    random_state,
    state_from_index,
)
from .graphs import (
    Edge,
    SimpleGraph,
    classify,
    graph_id,
    induced_subgraph,
    split_at_bridge,
)

FORMULA_IDS = (
    "tree",
    "complete",
    "complete_bridge_complete",
    "tree_bridge_complete",
    "corona_complete_tree",
    "conjecture_chain",
    "conjecture_tree_cycle",
    "conjecture_complete_cycle",
)

CONJECTURE_IDS = (
    "conjecture_chain",
    "conjecture_tree_cycle",
    "conjecture_complete_cycle",
)


@dataclass(frozen=True)
class Structure:
    """Declared shape of a graph, as input to predict().

    sizes means: (m,) for a tree, (n,) for a complete graph, (n1, n2) for a
    bridge of two complete graphs, (m, n) for tree-bridge-complete, (n, m)
    for the corona of complete(n) with a tree on m vertices, (N,) for a
    chain, and (block_size, cycle_size) for the two cycle conjectures.
    """

    formula_id: str
    sizes: tuple[int, ...]
    bridge: Edge | None = None
    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.formula_id not in FORMULA_IDS:
            raise ValueError(f"unknown formula id {self.formula_id!r}")


@dataclass(frozen=True)
class Prediction:
    """Predicted orbit length, or the per-winding unit for cycle conjectures."""

    formula_id: str
    predicted_length: int | None
    w_unit: int | None = None
    assumptions: tuple[str, ...] = ()

    @property
    def is_conjecture(self) -> bool:
        return self.formula_id in CONJECTURE_IDS


_ARITY = {
    "tree": 1,
    "complete": 1,
    "complete_bridge_complete": 2,
    "tree_bridge_complete": 2,
    "corona_complete_tree": 2,
    "conjecture_chain": 1,
    "conjecture_tree_cycle": 2,
    "conjecture_complete_cycle": 2,
}


def predict(g: SimpleGraph, structure: Structure) -> Prediction:
    """Orbit-length prediction for a declared structure.

    The structure is trusted as declared; only size arithmetic is checked
    against the graph.  Conjectured formulas come back flagged by their id,
    with cycle attachments carrying w_unit instead of a definite length.
    """
    fid = structure.formula_id
    sizes = structure.sizes
    if len(sizes) != _ARITY[fid]:
        raise ValueError(f"{fid} takes {_ARITY[fid]} size(s), got {sizes}")
    n = g.vertex_count
    if fid == "tree":
        (m,) = sizes
        if m != n:
            raise ValueError("tree size must match the vertex count")
        if m < 2:
            raise ValueError("tree formula needs at least two vertices")
        return Prediction(fid, m * (m - 1), assumptions=("graph is a tree",))
    if fid == "complete":
        (k,) = sizes
        if k != n:
            raise ValueError("complete size must match the vertex count")
        return Prediction(
            fid, k, assumptions=("graph is complete", "labeling is constant on the orbit")
        )
    if fid == "complete_bridge_complete":
        n1, n2 = sizes
        if n1 + n2 != n:
            raise ValueError("block sizes must sum to the vertex count")
        total = n1 + n2
        return Prediction(
            fid,
            total * (total - 1),
            assumptions=("two complete blocks joined by one bridge",),
        )
    if fid == "tree_bridge_complete":
        m, k = sizes
        if m + k != n:
            raise ValueError("block sizes must sum to the vertex count")
        total = m + k
        return Prediction(
            fid,
            total * (total - 1),
            assumptions=("a tree and a complete block joined by one bridge",),
        )
    if fid == "corona_complete_tree":
        k, m = sizes
        if k * (m + 1) != n:
            raise ValueError("corona sizes must satisfy n*(m+1) = vertex count")
        total = k * m + k
        return Prediction(
            fid,
            total * (total - 1),
            assumptions=("corona of a complete graph with one tree per vertex",),
        )
    if fid == "conjecture_chain":
        (total,) = sizes
        if total != n:
            raise ValueError("chain size must match the vertex count")
        return Prediction(
            fid,
            total * (total - 1),
            assumptions=("blocks are trees or complete graphs joined by bridges",),
        )
    # the two cycle conjectures: length is w * w_unit for a state-dependent w
    b, c = sizes
    if b + c != n:
        raise ValueError("block and cycle sizes must sum to the vertex count")
    unit = (c + b - 1) * (c + b)
    kind = "tree" if fid == "conjecture_tree_cycle" else "complete"
    return Prediction(
        fid,
        None,
        w_unit=unit,
        assumptions=(f"a {kind} block joined to a cycle by one bridge",),
    )


def _side_kind(g: SimpleGraph, side: tuple[int, ...]) -> set[str]:
    sub, _ = induced_subgraph(g, side)
    cls = classify(sub)
    kinds = set()
    if cls.is_tree:
        kinds.add("tree")
    if cls.is_complete:
        kinds.add("complete")
    if (
        cls.is_connected
        and sub.vertex_count >= 3
        and all(sub.degree(v) == 2 for v in range(sub.vertex_count))
    ):
        kinds.add("cycle")
    return kinds


def detect_structure(g: SimpleGraph) -> Structure | None:
    """Recognize the single-formula shapes.

    Whole-graph complete and tree shapes first, then each bridge is tried as
    the join of two recognizable blocks.  Chains of three or more blocks are
    not detected here; declare those explicitly.
    """
    cls = classify(g)
    n = g.vertex_count
    if cls.is_complete:
        return Structure("complete", (n,))
    if cls.is_tree:
        return Structure("tree", (n,))
    if not cls.is_connected:
        return None
    candidates: list[tuple[int, Structure]] = []
    for bridge in cls.bridges:
        side_u, side_v = split_at_bridge(g, bridge)
        kinds_u = _side_kind(g, side_u)
        kinds_v = _side_kind(g, side_v)
        if "complete" in kinds_u and "complete" in kinds_v:
            candidates.append(
                (
                    0,
                    Structure(
                        "complete_bridge_complete",
                        (len(side_u), len(side_v)),
                        bridge=bridge,
                        blocks=(side_u, side_v),
                    ),
                )
            )
        if "tree" in kinds_u and "complete" in kinds_v:
            candidates.append(
                (
                    1,
                    Structure(
                        "tree_bridge_complete",
                        (len(side_u), len(side_v)),
                        bridge=bridge,
                        blocks=(side_u, side_v),
                    ),
                )
            )
        if "complete" in kinds_u and "tree" in kinds_v:
            candidates.append(
                (
                    1,
                    Structure(
                        "tree_bridge_complete",
                        (len(side_v), len(side_u)),
                        bridge=bridge,
                        blocks=(side_v, side_u),
                    ),
                )
            )
        for fid, block_kind in (
            ("conjecture_tree_cycle", "tree"),
            ("conjecture_complete_cycle", "complete"),
        ):
            if block_kind in kinds_u and "cycle" in kinds_v:
                candidates.append(
                    (
                        2,
                        Structure(
                            fid, (len(side_u), len(side_v)), bridge=bridge,
                            blocks=(side_u, side_v),
                        ),
                    )
                )
            if "cycle" in kinds_u and block_kind in kinds_v:
                candidates.append(
                    (
                        2,
                        Structure(
                            fid, (len(side_v), len(side_u)), bridge=bridge,
                            blocks=(side_v, side_u),
                        ),
                    )
                )
    if not candidates:
        return None
    candidates.sort(key=lambda c: c[0])
    return candidates[0][1]


# ---------------------------------------------------------------------------
# family verification

@dataclass
class FamilyReport:
    """Measured orbit lengths against one prediction."""

    graph_id: str
    graph: SimpleGraph
    prediction: Prediction
    mode: str
    seed: int | None
    samples: int | None
    states_checked: int
    length_counts: dict[int, int]
    mismatch_count: int
    mismatches: list[tuple[State, int]]
    representatives: dict[int, State]
    steps: int
    complete: bool

    @property
    def passed(self) -> bool:
        return self.complete and self.mismatch_count == 0


MAX_LISTED_MISMATCHES = 100


def verify_family(
    g: SimpleGraph,
    prediction: Prediction,
    mode: str = "exhaustive",
    samples: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
    partition: int = 1,
    jobs: int = 1,
) -> FamilyReport:
    """Compare every (or each sampled) state's orbit length to the prediction."""
    if prediction.predicted_length is None:
        raise ValueError(f"{prediction.formula_id} does not predict a single length")
    predicted = prediction.predicted_length
    nu = g.vertex_count
    if mode == "exhaustive":
        table, steps, complete = orbit_lengths_table(
            g, budget=budget, partition=partition, jobs=jobs
        )
        values, counts = np.unique(table, return_counts=True)
        length_counts = {int(v): int(c) for v, c in zip(values, counts) if v != 0}
        checked = sum(length_counts.values())
        bad_idx = np.flatnonzero((table != 0) & (table != predicted))
        mismatch_count = int(bad_idx.size)
        mismatches = [
            (state_from_index(int(idx), nu), int(table[idx]))
            for idx in bad_idx[:MAX_LISTED_MISMATCHES]
        ]
        representatives = {
            length: state_from_index(int(np.flatnonzero(table == length)[0]), nu)
            for length in length_counts
        }
        return FamilyReport(
            graph_id=graph_id(g),
            graph=g,
            prediction=prediction,
            mode=mode,
            seed=seed,
            samples=None,
            states_checked=checked,
            length_counts=length_counts,
            mismatch_count=mismatch_count,
            mismatches=mismatches,
            representatives=representatives,
            steps=steps,
            complete=complete,
        )
    if mode != "sampled":
        raise ValueError(f"unknown verification mode {mode!r}")
    if samples is None or samples < 1:
        raise ValueError("sampled mode needs a positive sample count")
    rng = random.Random(seed)
    cap = default_cap(nu)
    limit = budget if budget is not None else (1 << 62)
    steps = 0
    complete = True
    length_counts: dict[int, int] = {}
    mismatches = []
    representatives: dict[int, State] = {}
    checked = 0
    for _ in range(samples):
        s = random_state(nu, rng)
        remaining = limit - steps
        if remaining <= 0:
            complete = False
            break
        length, used = orbit_length_bounded(g, s, min(cap, remaining))
        steps += used
        if length is None:
            if remaining >= cap:
                raise RuntimeError("orbit exceeded the state count: the step is broken")
            complete = False
            break
        checked += 1
        length_counts[length] = length_counts.get(length, 0) + 1
        representatives.setdefault(length, s)
        if length != predicted and len(mismatches) < MAX_LISTED_MISMATCHES:
            mismatches.append((s, length))
    mismatch_count = sum(
        c for length, c in length_counts.items() if length != predicted
    )
    return FamilyReport(
        graph_id=graph_id(g),
        graph=g,
        prediction=prediction,
        mode=mode,
        seed=seed,
        samples=samples,
        states_checked=checked,
        length_counts=length_counts,
        mismatch_count=mismatch_count,
        mismatches=mismatches,
        representatives=representatives,
        steps=steps,
        complete=complete,
    )


def family_report_rows(report: FamilyReport) -> list[dict]:
    """Flat rows for CSV/JSON: one per measured length plus every mismatch."""
    predicted = report.prediction.predicted_length
    rows = []
    listed = set()
    for length in sorted(report.representatives):
        s = report.representatives[length]
        key = (s.one_line(), s.active)
        listed.add(key)
        rows.append(_row(report, s, length, predicted))
    for s, length in report.mismatches:
        key = (s.one_line(), s.active)
        if key in listed:
            continue
        listed.add(key)
        rows.append(_row(report, s, length, predicted))
    return rows


def _row(report: FamilyReport, s: State, measured: int, predicted: int | None) -> dict:
    return {
        "graph_id": report.graph_id,
        "state_one_line": s.one_line(),
        "active": s.active,
        "measured_length": measured,
        "predicted_length": predicted,
        "match": measured == predicted,
        "seed": report.seed,
    }


# ---------------------------------------------------------------------------
# restriction independence

@dataclass
class RestrictionReport:
    """Orbit lengths grouped by the labels outside one attached block.

    Two states in the same group agree on the active label and on every label
    outside the block; independence holds when each group is constant.
    """

    graph_id: str
    fixed_vertices: tuple[int, ...]
    block_vertices: tuple[int, ...]
    mode: str
    group_count: int
    states_checked: int
    violation_count: int
    violations: list[tuple[State, State, int, int]]
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


def _validate_restriction(g: SimpleGraph, fixed: tuple[int, ...]) -> tuple[int, ...]:
    n = g.vertex_count
    fixed_set = set(fixed)
    if not fixed_set or fixed_set == set(range(n)):
        raise ValueError("the fixed part must be a proper nonempty vertex subset")
    if any(not 0 <= v < n for v in fixed_set):
        raise ValueError("fixed vertex out of range")
    block = tuple(v for v in range(n) if v not in fixed_set)
    cross = [e for e in g.edges if (e[0] in fixed_set) != (e[1] in fixed_set)]
    if len(cross) != 1:
        raise ValueError("the block must attach through exactly one bridge")
    kinds = _side_kind(g, block)
    if not ("tree" in kinds or "complete" in kinds):
        raise ValueError("the attached block must be a tree or a complete graph")
    fixed_sub, _ = induced_subgraph(g, tuple(sorted(fixed_set)))
    if not classify(fixed_sub).is_connected:
        raise ValueError("the fixed part must be connected")
    return block


def _restriction_scan_py(
    nu: int, lengths: np.ndarray, block: tuple[int, ...], out: list
) -> int:
    fact = math.factorial(nu)
    viol = 0
    for r in range(fact):
        perm = list(lehmer_unrank(r, nu))
        labs = sorted(perm[v] for v in block)
        canon = list(perm)
        for t, v in enumerate(block):
            canon[v] = labs[t]
        rc = 0
        for k in range(nu - 1):
            smaller = sum(1 for j in range(k + 1, nu) if canon[j] < canon[k])
            rc += smaller * math.factorial(nu - 1 - k)
        if rc == r:
            continue
        for i in range(nu):
            if lengths[r * nu + i] != lengths[rc * nu + i]:
                if len(out) < MAX_LISTED_MISMATCHES:
                    out.append((r * nu + i, rc * nu + i))
                viol += 1
    return viol


def verify_restriction_independence(
    g: SimpleGraph,
    fixed_vertices,
    mode: str = "exhaustive",
    trials: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
    partition: int = 1,
    jobs: int = 1,
) -> RestrictionReport:
    """Check that orbit length only depends on the labels outside the block.

    The varied block (the complement of fixed_vertices) must be a tree or a
    complete graph hanging off a single bridge.  Exhaustive mode compares
    every state against its group representative via the orbit-length table;
    sampled mode draws `trials` random groups and walks all their extensions.
    """
    nu = g.vertex_count
    fixed = tuple(sorted(set(fixed_vertices)))
    block = _validate_restriction(g, fixed)
    nb = len(block)
    group_count = math.factorial(nu) * nu // math.factorial(nb)
    if mode == "exhaustive":
        lengths, _, complete = orbit_lengths_table(
            g, budget=budget, partition=partition, jobs=jobs
        )
        if not complete:
            raise ValueError("budget too small for an exhaustive restriction check")
        pairs: list[tuple[int, int]] = []
        if _kernel.AVAILABLE:
            out = np.empty((MAX_LISTED_MISMATCHES, 2), dtype=np.int64)
            viol = int(
                _kernel.restriction_scan(
                    nu, lengths, np.array(block, dtype=np.int8), out
                )
            )
            pairs = [
                (int(out[j, 0]), int(out[j, 1]))
                for j in range(min(viol, MAX_LISTED_MISMATCHES))
            ]
        else:
            raw: list = []
            viol = _restriction_scan_py(nu, lengths, block, raw)
            pairs = raw
        violations = [
            (
                state_from_index(a, nu),
                state_from_index(b, nu),
                int(lengths[a]),
                int(lengths[b]),
            )
            for a, b in pairs
        ]
        return RestrictionReport(
            graph_id=graph_id(g),
            fixed_vertices=fixed,
            block_vertices=block,
            mode=mode,
            group_count=group_count,
            states_checked=math.factorial(nu) * nu,
            violation_count=viol,
            violations=violations,
            seed=seed,
        )
    if mode != "sampled":
        raise ValueError(f"unknown restriction mode {mode!r}")
    if trials is None or trials < 1:
        raise ValueError("sampled mode needs a positive trial count")
    rng = random.Random(seed)
    violations = []
    viol = 0
    checked = 0
    for _ in range(trials):
        base = random_state(nu, rng)
        block_labels = sorted(base.labeling.label_of[v] for v in block)
        ref_state: State | None = None
        ref_len: int | None = None
        for assignment in itertools.permutations(block_labels):
            labels = list(base.labeling.label_of)
            for t, v in enumerate(block):
                labels[v] = assignment[t]
            s = State(Labeling(tuple(labels)), base.active)
            length = orbit_length(g, s).length
            checked += 1
            if ref_len is None:
                ref_state, ref_len = s, length
            elif length != ref_len:
                viol += 1
                if len(violations) < MAX_LISTED_MISMATCHES:
                    violations.append((ref_state, s, ref_len, length))
    return RestrictionReport(
        graph_id=graph_id(g),
        fixed_vertices=fixed,
        block_vertices=block,
        mode=mode,
        group_count=trials,
        states_checked=checked,
        violation_count=viol,
        violations=violations,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# bridge crossings

@dataclass(frozen=True)
class CrossingEvent:
    """The coin moved over `edge` from source to target during step `time`."""

    time: int
    edge: Edge
    source: int
    target: int


class _Replay:
    """Mutable fast-array walk used by the instrumented verifiers."""

    def __init__(self, g: SimpleGraph, s: State):
        if s.nu != g.vertex_count:
            raise ValueError("state does not fit the graph")
        self.adj = g.adjacency
        self.nu = s.nu
        self.labels = list(s.labeling.label_of)
        self.vert = list(s.labeling.vertex_of)
        self.i = s.active

    @property
    def coin(self) -> int:
        return self.vert[self.i - 1]

    def state(self) -> State:
        return State(Labeling(tuple(self.labels)), self.i)

    def step(self) -> None:
        nu = self.nu
        i = self.i
        u = self.vert[i - 1]
        w = self.vert[i % nu]
        if not self.adj[u] >> w & 1:
            self.labels[u], self.labels[w] = self.labels[w], self.labels[u]
            self.vert[i - 1], self.vert[i % nu] = w, u
        self.i = i % nu + 1


def crossing_log(g: SimpleGraph, s: State, edge: Edge, horizon: int) -> list[CrossingEvent]:
    """All coin moves across `edge` during the first `horizon` steps from s."""
    u, v = edge
    if not g.adjacent(u, v):
        raise ValueError(f"{edge} is not an edge")
    replay = _Replay(g, s)
    events = []
    for t in range(horizon):
        before = replay.coin
        replay.step()
        after = replay.coin
        if before != after and {before, after} == {u, v}:
            events.append(CrossingEvent(t, (min(u, v), max(u, v)), before, after))
    return events


@dataclass
class CrossingCheck:
    """One inbound excursion measured against the bridge-crossing law."""

    t_in: int
    t_out: int | None
    gap_ok: bool
    rotation: int | None
    rotation_ok: bool
    dwell_ok: bool | None


@dataclass
class LemmaRotationReport:
    """Crossing spacing, diagram rotation, and dwell checks for one bridge side."""

    graph_id: str
    edge: Edge
    side: tuple[int, ...]
    side_kind: str
    expected_gap: int
    expected_rotation: int
    checks: list[CrossingCheck]
    skipped_tail: int
    horizon: int

    @property
    def checked(self) -> int:
        return len(self.checks)

    @property
    def failures(self) -> list[CrossingCheck]:
        return [
            c
            for c in self.checks
            if not (c.gap_ok and c.rotation_ok and c.dwell_ok in (True, None))
        ]

    @property
    def passed(self) -> bool:
        return not self.failures


def _pick_side(
    g: SimpleGraph, edge: Edge, side_kind: str
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The declared-kind side of the bridge, preferring the edge[1] side on ties."""
    side_a, side_b = split_at_bridge(g, edge)
    want = side_kind
    a_ok = want in _side_kind(g, side_a)
    b_ok = want in _side_kind(g, side_b)
    if not a_ok and not b_ok:
        raise ValueError(f"neither side of {edge} is a {side_kind}")
    if a_ok and b_ok:
        chosen = side_b if edge[1] in side_b else side_a
    else:
        chosen = side_a if a_ok else side_b
    other = side_b if chosen is side_a else side_a
    return chosen, other


def verify_lemma_sd_rotation(
    g: SimpleGraph,
    s: State,
    edge: Edge,
    side_kind: str = "tree",
    horizon: int | None = None,
) -> LemmaRotationReport:
    """Instrument one orbit (or horizon) for the excursion laws on a bridge.

    For each step where the coin enters the declared side: the coin must come
    back across exactly size*(nu-1) steps later; the stone diagram one step
    after the return must be the diagram obtained from the entry state by
    swapping the bridge endpoints' labels and advancing the active position,
    rotated clockwise by the other side's size; and on a tree side the coin
    must sit on each side vertex for exactly nu-1 of the excursion's steps.
    Entries too close to the horizon to finish are counted as skipped.
    """
    from .stones import from_state, is_cyclic_rotation, sd_step

    if side_kind not in ("tree", "complete"):
        raise ValueError("side_kind must be 'tree' or 'complete'")
    side, _other = _pick_side(g, edge, side_kind)
    nu = g.vertex_count
    m = len(side)
    gap = m * (nu - 1)
    rot_expected = (nu - m) % nu
    if horizon is None:
        horizon = orbit_length(g, s).length
    side_set = set(side)
    e_in = edge[0] if edge[0] in side_set else edge[1]
    e_out = edge[1] if e_in == edge[0] else edge[0]

    replay = _Replay(g, s)
    coin_seq = [replay.coin]
    snapshots: dict[int, State] = {}
    # first pass: which steps need a state snapshot
    events_in: list[int] = []
    probe = _Replay(g, s)
    for t in range(horizon):
        before = probe.coin
        probe.step()
        after = probe.coin
        if before == e_out and after == e_in:
            events_in.append(t)
    need = set()
    for t in events_in:
        need.add(t)
        if t + gap + 1 <= horizon:
            need.add(t + gap + 1)
    # second pass: record coins and the needed snapshots
    if 0 in need:
        snapshots[0] = replay.state()
    for t in range(horizon):
        replay.step()
        coin_seq.append(replay.coin)
        if t + 1 in need:
            snapshots[t + 1] = replay.state()

    checks: list[CrossingCheck] = []
    skipped = 0
    for t in events_in:
        if t + gap + 1 > horizon:
            skipped += 1
            continue
        # next outbound crossing after t
        t_out = None
        for t2 in range(t + 1, horizon):
            if coin_seq[t2] in side_set and coin_seq[t2 + 1] == e_out:
                t_out = t2
                break
        gap_ok = t_out == t + gap
        entry = snapshots[t]
        labels = list(entry.labeling.label_of)
        labels[e_in], labels[e_out] = labels[e_out], labels[e_in]
        expected_state = State(
            Labeling(tuple(labels)), entry.active % nu + 1
        )
        expected_sd = from_state(g, expected_state)
        actual_sd = from_state(g, snapshots[t + gap + 1])
        rotation = is_cyclic_rotation(expected_sd, actual_sd)
        rotation_ok = rotation == rot_expected
        dwell_ok: bool | None = None
        if side_kind == "tree":
            counts = {v: 0 for v in side}
            inside = True
            for t2 in range(t + 1, t + gap + 1):
                if coin_seq[t2] in side_set:
                    counts[coin_seq[t2]] += 1
                else:
                    inside = False
            dwell_ok = inside and all(c == nu - 1 for c in counts.values())
        checks.append(
            CrossingCheck(t, t_out, gap_ok, rotation, rotation_ok, dwell_ok)
        )
    return LemmaRotationReport(
        graph_id=graph_id(g),
        edge=(min(edge), max(edge)),
        side=side,
        side_kind=side_kind,
        expected_gap=gap,
        expected_rotation=rot_expected,
        checks=checks,
        skipped_tail=skipped,
        horizon=horizon,
    )


def entering_state(
    g: SimpleGraph, edge: Edge, into: int, rng: random.Random
) -> State:
    """A random state one step before the coin crosses `edge` into `into`.

    Puts the active label on the outside endpoint and the next label on
    `into`, so the next step slides the coin across the bridge.
    """
    u, v = edge
    if into not in (u, v):
        raise ValueError("into must be an endpoint of the edge")
    src = v if into == u else u
    nu = g.vertex_count
    i = rng.randrange(1, nu + 1)
    nxt = i % nu + 1
    rest = [l for l in range(1, nu + 1) if l not in (i, nxt)]
    rng.shuffle(rest)
    labels = [0] * nu
    labels[src] = i
    labels[into] = nxt
    it = iter(rest)
    for x in range(nu):
        if labels[x] == 0:
            labels[x] = next(it)
    return State(Labeling(tuple(labels)), i)


# ---------------------------------------------------------------------------
# one-way replica traffic in a complete block

@dataclass
class DirectionalReport:
    """Replica movement directions while the coin sits in a complete block."""

    graph_id: str
    block: tuple[int, ...]
    steps_checked: int
    horizon: int
    violations: list[tuple[int, int, int]]  # (time, vertex, position delta)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_directional(
    g: SimpleGraph,
    s: State,
    block,
    horizon: int | None = None,
) -> DirectionalReport:
    """While the coin is inside a complete block, block replicas may only hold
    or move one position clockwise, and all other replicas may only hold or
    move one position counterclockwise.
    """
    block = tuple(sorted(set(block)))
    sub, _ = induced_subgraph(g, block)
    if not classify(sub).is_complete:
        raise ValueError("block must induce a complete subgraph")
    block_set = set(block)
    if horizon is None:
        horizon = orbit_length(g, s).length
    replay = _Replay(g, s)
    nu = g.vertex_count
    violations: list[tuple[int, int, int]] = []
    checked = 0
    for t in range(horizon):
        coin = replay.coin
        before = list(replay.labels)
        replay.step()
        if coin not in block_set:
            continue
        checked += 1
        for v in range(nu):
            delta = (replay.labels[v] - before[v]) % nu
            if v in block_set:
                ok = delta in (0, 1)
            else:
                ok = delta in (0, nu - 1)
            if not ok and len(violations) < MAX_LISTED_MISMATCHES:
                violations.append((t, v, delta))
    return DirectionalReport(
        graph_id=graph_id(g),
        block=block,
        steps_checked=checked,
        horizon=horizon,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# winding numbers

WINDING_INTERPRETATION = (
    "At the first step where the coin crosses the bridge from the cycle block "
    "into the attached block, list the cycle-side replicas in clockwise order "
    "starting from the cycle-side bridge endpoint's replica.  For each of the "
    "cycle_size-1 consecutive pairs in that list, count 1 plus the number of "
    "non-cycle replicas passed walking clockwise from one to the next.  The "
    "literal winding number is the sum of those counts divided by "
    "(vertex_count - 1).  The inferred winding number is the measured orbit "
    "length divided by (vertex_count - 1) * vertex_count."
)


@dataclass(frozen=True)
class WindingInput:
    """A cycle-with-attached-block graph, its bridge, and a start state."""

    graph: SimpleGraph
    state: State
    cycle_vertices: tuple[int, ...]
    bridge: Edge

    def __post_init__(self) -> None:
        cyc_set = set(self.cycle_vertices)
        kinds = _side_kind(self.graph, tuple(sorted(cyc_set)))
        if "cycle" not in kinds:
            raise ValueError("cycle_vertices must induce a cycle")
        u, v = self.bridge
        if not self.graph.adjacent(u, v):
            raise ValueError(f"{self.bridge} is not an edge")
        if (u in cyc_set) == (v in cyc_set):
            raise ValueError("the bridge must join the cycle to its complement")


@dataclass
class WindingReport:
    literal: Fraction | None
    inferred: Fraction
    measured_length: int
    w_unit: int
    crossing_time: int | None
    interpretation: str = WINDING_INTERPRETATION


def winding_report(inp: WindingInput, budget: int | None = None) -> WindingReport:
    """Both winding readings for one state; literal is None without a crossing."""
    g = inp.graph
    nu = g.vertex_count
    w_unit = nu * (nu - 1)
    length, used = orbit_length_bounded(
        g, inp.state, budget if budget is not None else default_cap(nu)
    )
    if length is None:
        raise ValueError("budget too small to measure the orbit length")
    inferred = Fraction(length, w_unit)
    cyc_set = set(inp.cycle_vertices)
    u, v = inp.bridge
    e_cyc = u if u in cyc_set else v
    e_blk = v if e_cyc == u else u
    replay = _Replay(g, inp.state)
    crossing_time = None
    for t in range(length):
        before = replay.coin
        labels_before = list(replay.labels)
        replay.step()
        if before == e_cyc and replay.coin == e_blk:
            crossing_time = t
            break
    if crossing_time is None:
        return WindingReport(None, inferred, length, w_unit, None)
    # clockwise order of cycle replicas starting at the bridge endpoint's replica
    base = labels_before[e_cyc]
    omega = sorted(cyc_set, key=lambda x: (labels_before[x] - base) % nu)
    total = 0
    for k in range(len(omega) - 1):
        total += (labels_before[omega[k + 1]] - labels_before[omega[k]]) % nu
    literal = Fraction(total, nu - 1)
    return WindingReport(literal, inferred, length, w_unit, crossing_time)


def winding_number(inp: WindingInput, interpretation: str = "literal") -> Fraction | None:
    """One winding number under the chosen reading; see WINDING_INTERPRETATION."""
    report = winding_report(inp)
    if interpretation == "literal":
        return report.literal
    if interpretation == "inferred":
        return report.inferred
    raise ValueError(f"unknown interpretation {interpretation!r}")


# ---------------------------------------------------------------------------
# conjecture exploration

@dataclass
class ChainExploreReport:
    """Evidence for the chain law: census plus any states off N(N-1)."""

    graph_id: str
    graph: SimpleGraph
    prediction: Prediction
    census: OrbitCensus
    counterexamples: list[tuple[State, int]]
    completed: bool


def explore_chain(
    g: SimpleGraph,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
    partition: int = 1,
    jobs: int = 1,
) -> ChainExploreReport:
    """Census a chain graph and list states that break the conjectured length."""
    n = g.vertex_count
    prediction = predict(g, Structure("conjecture_chain", (n,)))
    plan = EnumerationPlan(
        mode=mode, count=count, seed=seed, budget=budget, partition=partition
    )
    result = census(g, plan, jobs=jobs)
    counterexamples: list[tuple[State, int]] = []
    off_prediction = any(
        length != prediction.predicted_length for length in result.entries
    )
    if mode == "exhaustive":
        if off_prediction:
            table, _, _ = orbit_lengths_table(
                g, budget=budget, partition=partition, jobs=jobs
            )
            bad = np.flatnonzero(
                (table != 0) & (table != prediction.predicted_length)
            )
            counterexamples = [
                (state_from_index(int(i), n), int(table[i]))
                for i in bad[:MAX_LISTED_MISMATCHES]
            ]
    else:
        rng = random.Random(seed)
        for _ in range(count or 0):
            s = random_state(n, rng)
            length = orbit_length(g, s).length
            if length != prediction.predicted_length:
                counterexamples.append((s, length))
                if len(counterexamples) >= MAX_LISTED_MISMATCHES:
                    break
    return ChainExploreReport(
        graph_id=graph_id(g),
        graph=g,
        prediction=prediction,
        census=result,
        counterexamples=counterexamples,
        completed=result.complete,
    )


@dataclass
class WTableRow:
    state: State
    measured: int
    inferred: Fraction
    literal: Fraction | None
    match: bool


@dataclass
class WTableReport:
    """Per-state winding evidence for a cycle-with-attached-block graph."""

    graph_id: str
    graph: SimpleGraph
    conjecture_id: str
    w_unit: int
    cycle_vertices: tuple[int, ...]
    bridge: Edge
    rows: list[WTableRow]
    mode: str
    seed: int | None
    completed: bool
    interpretation: str = WINDING_INTERPRETATION

    @property
    def integral_count(self) -> int:
        return sum(1 for r in self.rows if r.inferred.denominator == 1)

    @property
    def literal_match_count(self) -> int:
        return sum(1 for r in self.rows if r.match)


def explore_cycle_attachment(
    g: SimpleGraph,
    cycle_vertices,
    bridge: Edge,
    block_kind: str = "tree",
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
) -> WTableReport:
    """Tabulate measured lengths and both winding readings over the states.

    Every row reports measured orbit length, inferred w = length / w_unit,
    the literal diagram reading, and whether the two agree.  Nothing is
    asserted; disagreements and non-integral values are the evidence.
    """
    cycle_vertices = tuple(sorted(set(cycle_vertices)))
    n = g.vertex_count
    c = len(cycle_vertices)
    fid = (
        "conjecture_tree_cycle" if block_kind == "tree" else "conjecture_complete_cycle"
    )
    prediction = predict(g, Structure(fid, (n - c, c)))
    w_unit = prediction.w_unit or n * (n - 1)
    rows: list[WTableRow] = []
    completed = True
    if mode == "exhaustive":
        plan = EnumerationPlan(mode="exhaustive", budget=budget)
        states = enumerate_states(n, plan)
    else:
        if count is None or count < 1:
            raise ValueError("sampled mode needs a positive count")
        rng = random.Random(seed)
        states = (random_state(n, rng) for _ in range(count))
    for s in states:
        inp = WindingInput(g, s, cycle_vertices, bridge)
        rep = winding_report(inp, budget=budget)
        rows.append(
            WTableRow(
                state=s,
                measured=rep.measured_length,
                inferred=rep.inferred,
                literal=rep.literal,
                match=rep.literal is not None and rep.literal == rep.inferred,
            )
        )
    return WTableReport(
        graph_id=graph_id(g),
        graph=g,
        conjecture_id=fid,
        w_unit=w_unit,
        cycle_vertices=cycle_vertices,
        bridge=(min(bridge), max(bridge)),
        rows=rows,
        mode=mode,
        seed=seed,
        completed=completed,
    )


def wtable_rows(report: WTableReport) -> list[dict]:
    """Flat rows for CSV/JSON."""
    return [
        {
            "graph_id": report.graph_id,
            "state_one_line": r.state.one_line(),
            "active": r.state.active,
            "measured_length": r.measured,
            "inferred_w": str(r.inferred),
            "literal_w": "" if r.literal is None else str(r.literal),
            "match": r.match,
            "seed": report.seed,
        }
        for r in report.rows
    ]
