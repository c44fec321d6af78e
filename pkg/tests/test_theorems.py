import itertools
import random
from fractions import Fraction

import pytest

from tpro.dynamics import Labeling, State, make_state, orbit_length, tpro_step
from tpro.graphs import (
    BridgeChainSpec,
    GraphFamilySpec,
    SimpleGraph,
    bridge_sum,
    build_chain,
    complete,
    corona_product,
    cycle,
    path,
    star,
)
from tpro.theorems import (
    CONJECTURE_IDS,
    FORMULA_IDS,
    Prediction,
    Structure,
    WindingInput,
    crossing_log,
    detect_structure,
    entering_state,
    explore_chain,
    explore_cycle_attachment,
    family_report_rows,
    predict,
    verify_directional,
    verify_family,
    verify_lemma_sd_rotation,
    verify_restriction_independence,
    winding_number,
    winding_report,
    wtable_rows,
)


def tbc(m, n, a=0, b=0):
    return bridge_sum(path(m), a, complete(n), b)


# --- predictions -----------------------------------------------------------

def test_predict_known_lengths():
    assert predict(path(5), Structure("tree", (5,))).predicted_length == 20
    assert predict(complete(4), Structure("complete", (4,))).predicted_length == 4
    cbc = bridge_sum(complete(3), 0, complete(3), 0)
    p = predict(cbc, Structure("complete_bridge_complete", (3, 3)))
    assert p.predicted_length == 30
    assert predict(tbc(5, 4), Structure("tree_bridge_complete", (5, 4))).predicted_length == 72
    corona = corona_product(complete(2), path(1), 0)
    assert predict(corona, Structure("corona_complete_tree", (2, 1))).predicted_length == 12
    chain = build_chain(BridgeChainSpec(blocks=(
        GraphFamilySpec("complete", 2),
        GraphFamilySpec("complete", 2),
        GraphFamilySpec("complete", 2),
    )))
    cp = predict(chain, Structure("conjecture_chain", (6,)))
    assert cp.predicted_length == 30
    assert cp.is_conjecture


def test_predict_cycle_conjectures_carry_unit_only():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    p = predict(g, Structure("conjecture_tree_cycle", (2, 3)))
    assert p.predicted_length is None
    assert p.w_unit == 20
    assert p.is_conjecture
    g2 = bridge_sum(complete(3), 0, cycle(4), 0)
    p2 = predict(g2, Structure("conjecture_complete_cycle", (3, 4)))
    assert p2.w_unit == 6 * 7
    assert p2.predicted_length is None


def test_predict_validation():
    with pytest.raises(ValueError):
        Structure("not_a_formula", (3,))
    with pytest.raises(ValueError):
        predict(path(5), Structure("tree", (4,)))
    with pytest.raises(ValueError):
        predict(path(5), Structure("tree", (2, 3)))
    with pytest.raises(ValueError):
        predict(path(1), Structure("tree", (1,)))
    with pytest.raises(ValueError):
        predict(corona_product(complete(2), path(1), 0), Structure("corona_complete_tree", (2, 2)))
    assert set(CONJECTURE_IDS) <= set(FORMULA_IDS)


# --- structure detection ---------------------------------------------------

def test_detect_whole_graph_shapes():
    assert detect_structure(complete(4)) == Structure("complete", (4,))
    assert detect_structure(star(5)) == Structure("tree", (5,))
    assert detect_structure(cycle(5)) is None
    assert detect_structure(SimpleGraph.from_edges(4, [(0, 1), (2, 3)])) is None


def test_detect_bridged_shapes():
    g = tbc(5, 4)
    st = detect_structure(g)
    assert st.formula_id == "tree_bridge_complete"
    assert st.sizes == (5, 4)
    assert st.bridge == (0, 5)
    assert set(st.blocks[0]) == {0, 1, 2, 3, 4}
    assert set(st.blocks[1]) == {5, 6, 7, 8}

    cbc = bridge_sum(complete(3), 1, complete(4), 2)
    st2 = detect_structure(cbc)
    assert st2.formula_id == "complete_bridge_complete"
    assert sorted(st2.sizes) == [3, 4]

    # K2 against C3 is really two complete blocks, highest-priority match wins
    st3 = detect_structure(bridge_sum(complete(2), 0, cycle(3), 0))
    assert st3.formula_id == "complete_bridge_complete"


def test_detect_cycle_attachments():
    st = detect_structure(bridge_sum(path(2), 0, cycle(4), 0))
    assert st.formula_id == "conjecture_tree_cycle"
    assert st.sizes == (2, 4)
    st2 = detect_structure(bridge_sum(complete(3), 0, cycle(4), 0))
    assert st2.formula_id == "conjecture_complete_cycle"
    assert st2.sizes == (3, 4)
    st3 = detect_structure(bridge_sum(path(3), 1, cycle(5), 2))
    assert st3.formula_id == "conjecture_tree_cycle"
    assert st3.sizes == (3, 5)


def test_detect_round_trips_into_predict():
    for g, expected in [
        (path(6), 30),
        (complete(5), 5),
        (tbc(3, 3), 30),
        (bridge_sum(complete(2), 0, complete(3), 0), 20),
    ]:
        st = detect_structure(g)
        assert predict(g, st).predicted_length == expected


# --- family verification ---------------------------------------------------

def test_verify_family_exhaustive_pass():
    g = tbc(3, 3)
    p = predict(g, detect_structure(g))
    report = verify_family(g, p)
    assert report.passed
    assert report.states_checked == 4320
    assert report.length_counts == {30: 4320}
    assert report.mismatch_count == 0
    assert list(report.representatives) == [30]
    assert report.complete


def test_verify_family_detects_wrong_prediction():
    report = verify_family(cycle(4), Prediction("tree", 12))
    assert not report.passed
    assert report.mismatch_count == 96
    assert report.length_counts == {4: 32, 8: 64}
    assert set(report.representatives) == {4, 8}
    rows = family_report_rows(report)
    assert len(rows) == 96
    assert all(not r["match"] for r in rows)
    assert {r["measured_length"] for r in rows} == {4, 8}
    assert all(r["predicted_length"] == 12 for r in rows)
    for row in rows:
        assert set(row) == {
            "graph_id",
            "state_one_line",
            "active",
            "measured_length",
            "predicted_length",
            "match",
            "seed",
        }


def test_verify_family_sampled():
    g = tbc(3, 3)
    p = predict(g, detect_structure(g))
    a = verify_family(g, p, mode="sampled", samples=40, seed=9)
    assert a.passed
    assert a.states_checked == 40
    assert a.length_counts == {30: 40}
    b = verify_family(g, p, mode="sampled", samples=40, seed=9)
    assert b.length_counts == a.length_counts
    assert [s.one_line() for s, _ in b.mismatches] == [
        s.one_line() for s, _ in a.mismatches
    ]


def test_verify_family_argument_errors():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    p = predict(g, Structure("conjecture_tree_cycle", (2, 3)))
    with pytest.raises(ValueError):
        verify_family(g, p)  # no single predicted length
    with pytest.raises(ValueError):
        verify_family(path(3), Prediction("tree", 6), mode="sampled")
    with pytest.raises(ValueError):
        verify_family(path(3), Prediction("tree", 6), mode="bogus")


def test_verify_family_budget_marks_incomplete():
    report = verify_family(
        path(3), Prediction("tree", 6), mode="sampled", samples=100, seed=0, budget=20
    )
    assert not report.complete
    assert not report.passed
    assert report.states_checked < 100


# --- restriction independence ----------------------------------------------

def test_restriction_exhaustive_cycle4_tree3():
    g = bridge_sum(cycle(4), 0, path(3), 0)
    report = verify_restriction_independence(g, (0, 1, 2, 3))
    assert report.passed
    assert report.group_count == 5880
    assert report.states_checked == 35280
    assert report.block_vertices == (4, 5, 6)
    assert report.violation_count == 0


def test_restriction_group_value_frozen():
    # fixed labels (1,2,3,4) on the cycle, active 1: every extension runs 42
    g = bridge_sum(cycle(4), 0, path(3), 0)
    for extension in itertools.permutations((5, 6, 7)):
        s = State(Labeling((1, 2, 3, 4) + extension), 1)
        assert orbit_length(g, s).length == 42


def test_restriction_sampled():
    g = bridge_sum(cycle(4), 0, path(3), 0)
    report = verify_restriction_independence(
        g, (0, 1, 2, 3), mode="sampled", trials=5, seed=1
    )
    assert report.passed
    assert report.mode == "sampled"
    assert report.states_checked == 5 * 6


def test_restriction_single_vertex_block():
    g = bridge_sum(cycle(4), 0, path(1), 0)
    report = verify_restriction_independence(g, (0, 1, 2, 3))
    assert report.passed
    assert report.group_count == 600


def test_restriction_validation():
    g = bridge_sum(cycle(4), 0, path(3), 0)
    with pytest.raises(ValueError):
        verify_restriction_independence(g, tuple(range(7)))
    with pytest.raises(ValueError):
        verify_restriction_independence(g, ())
    with pytest.raises(ValueError):
        verify_restriction_independence(g, (4, 5, 6))  # block would be the cycle
    with pytest.raises(ValueError):
        verify_restriction_independence(complete(4), (0, 1, 2))  # three cross edges
    disconnected = SimpleGraph.from_edges(5, [(0, 1), (2, 3), (3, 4)])
    with pytest.raises(ValueError):
        verify_restriction_independence(disconnected, (0, 2, 3, 4))
    with pytest.raises(ValueError):
        verify_restriction_independence(g, (0, 1, 2, 3), mode="sampled")
    with pytest.raises(ValueError):
        verify_restriction_independence(g, (0, 1, 2, 3), budget=100)


# --- bridge crossings ------------------------------------------------------

def test_crossing_log_alternates():
    g = tbc(3, 3)
    s = make_state([1, 2, 3, 4, 5, 6], 1)
    length = orbit_length(g, s).length
    events = crossing_log(g, s, (0, 3), horizon=length)
    assert events
    times = [e.time for e in events]
    assert times == sorted(times) and len(set(times)) == len(times)
    for a, b in zip(events, events[1:]):
        assert a.target == b.source  # directions alternate over a bridge
    for e in events:
        assert {e.source, e.target} == {0, 3}
        assert e.edge == (0, 3)


def test_crossing_log_needs_an_edge():
    with pytest.raises(ValueError):
        crossing_log(tbc(3, 3), make_state([1, 2, 3, 4, 5, 6], 1), (0, 4), 10)


def test_lemma_rotation_tree_side():
    # cycle(3) with a 3-vertex path hung off vertex 0: each tree excursion
    # lasts 3*(6-1)=15 steps and rotates the diagram by the cycle size
    g = bridge_sum(cycle(3), 0, path(3), 0)
    rng = random.Random(4)
    s = entering_state(g, (0, 3), 3, rng)
    base = orbit_length(g, s).length
    report = verify_lemma_sd_rotation(g, s, (0, 3), "tree", horizon=base + 16)
    assert report.expected_gap == 15
    assert report.expected_rotation == 3
    assert report.checked >= 1
    assert report.passed
    for check in report.checks:
        assert check.gap_ok and check.rotation_ok and check.dwell_ok


def test_lemma_rotation_complete_side():
    g = bridge_sum(cycle(3), 0, path(3), 0)  # the cycle side is K3
    rng = random.Random(5)
    s = entering_state(g, (0, 3), 0, rng)
    base = orbit_length(g, s).length
    report = verify_lemma_sd_rotation(g, s, (0, 3), "complete", horizon=base + 16)
    assert report.expected_gap == 15
    assert report.expected_rotation == 3
    assert report.checked >= 1
    assert report.passed
    assert all(c.dwell_ok is None for c in report.checks)


def test_lemma_rotation_single_vertex_side():
    g = bridge_sum(complete(3), 0, path(1), 0)
    rng = random.Random(6)
    s = entering_state(g, (0, 3), 3, rng)
    base = orbit_length(g, s).length
    report = verify_lemma_sd_rotation(g, s, (0, 3), "tree", horizon=base + 5)
    assert report.expected_gap == 3
    assert report.expected_rotation == 3
    assert report.checked >= 1
    assert report.passed


def test_lemma_rotation_side_kind_errors():
    g = bridge_sum(complete(3), 0, complete(3), 0)
    s = make_state([1, 2, 3, 4, 5, 6], 1)
    with pytest.raises(ValueError):
        verify_lemma_sd_rotation(g, s, (0, 3), "tree")
    with pytest.raises(ValueError):
        verify_lemma_sd_rotation(g, s, (0, 3), "ring")


def test_entering_state_property():
    rng = random.Random(11)
    g = tbc(3, 3)
    for _ in range(20):
        s = entering_state(g, (0, 3), 3, rng)
        assert s.labeling.label_of[0] == s.active
        nxt = tpro_step(g, s)
        assert nxt.labeling == s.labeling  # adjacent labels slide
        events = crossing_log(g, s, (0, 3), 1)
        assert events and events[0].source == 0 and events[0].target == 3
    with pytest.raises(ValueError):
        entering_state(g, (0, 3), 5, rng)


def test_directional_property():
    rng = random.Random(21)
    g = bridge_sum(path(2), 0, complete(3), 0)
    s = make_state([5, 1, 2, 3, 4], 2)
    report = verify_directional(g, s, (2, 3, 4))
    assert report.passed
    assert report.steps_checked > 0

    bare = verify_directional(complete(4), make_state([2, 4, 1, 3], 1), (0, 1, 2, 3))
    assert bare.passed
    assert bare.steps_checked == bare.horizon  # the coin never leaves the block

    with pytest.raises(ValueError):
        verify_directional(path(3), make_state([1, 2, 3], 1), (0, 2))


# --- winding numbers -------------------------------------------------------

def test_winding_report_frozen_example():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    inp = WindingInput(g, make_state([1, 2, 3, 4, 5], 1), (2, 3, 4), (0, 2))
    report = winding_report(inp)
    assert report.measured_length == 20
    assert report.w_unit == 20
    assert report.inferred == Fraction(1)
    assert report.literal == Fraction(3, 4)
    assert report.crossing_time == 17
    assert "clockwise" in report.interpretation


def test_winding_number_interpretations():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    inp = WindingInput(g, make_state([1, 2, 3, 4, 5], 1), (2, 3, 4), (0, 2))
    assert winding_number(inp, "literal") == Fraction(3, 4)
    assert winding_number(inp, "inferred") == Fraction(1)
    with pytest.raises(ValueError):
        winding_number(inp, "folk")


def test_winding_input_validation():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    s = make_state([1, 2, 3, 4, 5], 1)
    with pytest.raises(ValueError):
        WindingInput(g, s, (0, 1, 2), (0, 2))  # not a cycle
    with pytest.raises(ValueError):
        WindingInput(g, s, (2, 3, 4), (0, 1))  # bridge misses the cycle
    with pytest.raises(ValueError):
        WindingInput(g, s, (2, 3, 4), (1, 3))  # not an edge


def test_winding_budget_guard():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    inp = WindingInput(g, make_state([1, 2, 3, 4, 5], 1), (2, 3, 4), (0, 2))
    with pytest.raises(ValueError):
        winding_report(inp, budget=5)


# --- conjecture exploration ------------------------------------------------

def test_explore_chain_exhaustive():
    chain = build_chain(BridgeChainSpec(blocks=(
        GraphFamilySpec("complete", 2),
        GraphFamilySpec("complete", 2),
        GraphFamilySpec("complete", 2),
    )))
    report = explore_chain(chain)
    assert report.completed
    assert report.census.entries == {30: 4320}
    assert report.counterexamples == []
    assert report.prediction.predicted_length == 30


def test_explore_chain_sampled():
    chain = build_chain(BridgeChainSpec(blocks=(
        GraphFamilySpec("tree_from_pruefer", 2, pruefer=()),
        GraphFamilySpec("complete", 2),
        GraphFamilySpec("tree_from_pruefer", 2, pruefer=()),
    )))
    report = explore_chain(chain, mode="sampled", count=25, seed=2)
    assert report.census.total_states == 25
    assert report.census.entries == {30: 25}
    assert report.counterexamples == []


def test_explore_cycle_attachment_table():
    g = bridge_sum(path(2), 0, cycle(3), 0)
    report = explore_cycle_attachment(g, (2, 3, 4), (0, 2), block_kind="tree")
    assert report.completed
    assert report.w_unit == 20
    assert len(report.rows) == 600
    assert report.integral_count == 600
    assert report.literal_match_count == 400
    again = explore_cycle_attachment(g, (2, 3, 4), (0, 2), block_kind="tree")
    assert [
        (r.state, r.measured, r.inferred, r.literal, r.match) for r in again.rows
    ] == [(r.state, r.measured, r.inferred, r.literal, r.match) for r in report.rows]


def test_explore_cycle_attachment_sampled_and_rows():
    g = bridge_sum(complete(2), 0, cycle(3), 0)
    report = explore_cycle_attachment(
        g, (2, 3, 4), (0, 2), block_kind="complete", mode="sampled", count=30, seed=7
    )
    assert len(report.rows) == 30
    assert report.conjecture_id == "conjecture_complete_cycle"
    rows = wtable_rows(report)
    assert len(rows) == 30
    for row in rows:
        assert set(row) == {
            "graph_id",
            "state_one_line",
            "active",
            "measured_length",
            "inferred_w",
            "literal_w",
            "match",
            "seed",
        }
        assert row["measured_length"] == 20
        assert row["inferred_w"] == "1"
    with pytest.raises(ValueError):
        explore_cycle_attachment(g, (2, 3, 4), (0, 2), mode="sampled")
