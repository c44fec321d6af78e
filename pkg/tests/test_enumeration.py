import itertools
import math
import random

import numpy as np
import pytest

from tpro import _kernel
from tpro.dynamics import make_state, orbit_length
from tpro.enumeration import (
    MAX_EXHAUSTIVE_NU,
    EnumerationPlan,
    OrbitCensus,
    census,
    census_csv_rows,
    census_to_json_dict,
    enumerate_states,
    lehmer_rank,
    lehmer_unrank,
    orbit_lengths_table,
    random_state,
    state_from_index,
    state_index,
)
from tpro.graphs import bridge_sum, complete, corona_product, cycle, path

from helpers import PAW, rand_connected

# expected censuses, frozen from an independent dict-based implementation
CYCLE4_CENSUS = {4: 32, 8: 64}
CYCLE5_CENSUS = {5: 50, 15: 150, 40: 400}
CYCLE3_CENSUS = {3: 18}
CORONA_K2T1_CENSUS = {12: 96}


def test_lehmer_round_trip():
    for n in range(1, 7):
        for rank, perm in enumerate(itertools.permutations(range(n))):
            assert lehmer_rank(perm) == rank
            assert lehmer_unrank(rank, n) == perm
    with pytest.raises(ValueError):
        lehmer_rank((0, 0, 1))
    with pytest.raises(ValueError):
        lehmer_unrank(math.factorial(4), 4)


def test_state_index_round_trip():
    nu = 4
    seen = set()
    for perm in itertools.permutations(range(1, nu + 1)):
        for i in range(1, nu + 1):
            s = make_state(perm, i)
            idx = state_index(s)
            assert state_from_index(idx, nu) == s
            seen.add(idx)
    assert seen == set(range(math.factorial(nu) * nu))
    with pytest.raises(ValueError):
        state_from_index(math.factorial(nu) * nu, nu)


def test_enumerate_states_counts_and_order():
    plan = EnumerationPlan()
    states = list(enumerate_states(3, plan))
    assert len(states) == 18
    assert states[0] == make_state([1, 2, 3], 1)
    assert states[-1] == make_state([3, 2, 1], 3)
    assert [state_index(s) for s in states] == list(range(18))
    assert len(list(enumerate_states(4, plan))) == 96


def test_enumerate_states_sampled_deterministic():
    plan = EnumerationPlan(mode="sampled", count=5, seed=1)
    a = list(enumerate_states(4, plan))
    b = list(enumerate_states(4, plan))
    assert a == b
    assert len(a) == 5


def test_plan_validation():
    with pytest.raises(ValueError):
        EnumerationPlan(mode="everything")
    with pytest.raises(ValueError):
        EnumerationPlan(mode="sampled")
    with pytest.raises(ValueError):
        EnumerationPlan(partition=0)
    with pytest.raises(ValueError):
        EnumerationPlan(budget=0)
    with pytest.raises(ValueError):
        list(enumerate_states(4, EnumerationPlan(budget=10)))


def test_census_known_values():
    assert census(cycle(3), EnumerationPlan()).entries == CYCLE3_CENSUS
    assert census(cycle(4), EnumerationPlan()).entries == CYCLE4_CENSUS
    assert census(cycle(5), EnumerationPlan()).entries == CYCLE5_CENSUS
    assert census(path(3), EnumerationPlan()).entries == {6: 18}
    assert census(complete(4), EnumerationPlan()).entries == {4: 96}
    tbc = bridge_sum(path(3), 0, complete(3), 0)
    assert census(tbc, EnumerationPlan()).entries == {30: 4320}
    corona = corona_product(complete(2), path(1), 0)
    assert census(corona, EnumerationPlan()).entries == CORONA_K2T1_CENSUS


def test_census_conservation_and_divisibility():
    rng = random.Random(77)
    for _ in range(8):
        g = rand_connected(rng, rng.randrange(2, 7))
        c = census(g, EnumerationPlan())
        assert c.complete
        assert c.conserved()
        assert sum(c.entries.values()) == math.factorial(g.vertex_count) * g.vertex_count
        for length, count in c.entries.items():
            assert count % length == 0


def test_census_shard_independence():
    for g in [cycle(4), complete(4), PAW]:
        base = census(g, EnumerationPlan(partition=1))
        for partition in (2, 8):
            other = census(g, EnumerationPlan(partition=partition))
            assert other.entries == base.entries
            assert other.complete


def test_census_shards_beyond_rank_count():
    g = complete(2)
    c = census(g, EnumerationPlan(partition=8))
    assert c.entries == {2: 4}
    assert c.conserved()


def test_table_matches_python_fallback():
    for g in [cycle(4), PAW, bridge_sum(path(2), 0, complete(3), 0)]:
        fast, _, ok_fast = orbit_lengths_table(g, use_kernel=True)
        slow, _, ok_slow = orbit_lengths_table(g, use_kernel=False)
        assert ok_fast and ok_slow
        assert np.array_equal(fast, slow)


def test_table_agrees_with_single_orbit_walks():
    g = PAW
    table, _, complete_ = orbit_lengths_table(g)
    assert complete_
    rng = random.Random(13)
    for _ in range(30):
        s = random_state(4, rng)
        assert table[state_index(s)] == orbit_length(g, s).length


def test_sampled_census():
    g = cycle(4)
    plan = EnumerationPlan(mode="sampled", count=64, seed=5)
    c = census(g, plan)
    assert c.mode == "sampled"
    assert c.total_states == 64
    assert set(c.entries) <= set(CYCLE4_CENSUS)
    assert c.conserved()
    again = census(g, plan)
    assert again.entries == c.entries


def test_budget_marks_partial():
    g = cycle(4)
    c = census(g, EnumerationPlan(mode="sampled", count=1000, budget=50, seed=0))
    assert not c.complete
    assert c.total_states < 1000
    with pytest.raises(ValueError):
        census(g, EnumerationPlan(budget=50))  # exhaustive cannot fit
    table, steps, complete_ = orbit_lengths_table(g, budget=50)
    assert not complete_
    assert steps <= 50 + 96  # one orbit may finish in flight
    assert (table == 0).any()


def test_exhaustive_size_limit():
    big = path(MAX_EXHAUSTIVE_NU + 1)
    with pytest.raises(ValueError):
        census(big, EnumerationPlan())
    with pytest.raises(ValueError):
        orbit_lengths_table(big)


def test_kernel_available_and_used():
    assert _kernel.AVAILABLE
    table, _, _ = orbit_lengths_table(cycle(4), use_kernel=True)
    values, counts = np.unique(table, return_counts=True)
    assert dict(zip(values.tolist(), counts.tolist())) == CYCLE4_CENSUS


def test_census_json_and_csv_shapes():
    c = census(cycle(4), EnumerationPlan(seed=3))
    rows = census_csv_rows(c)
    assert rows == [(4, 32), (8, 64)]
    data = census_to_json_dict(c)
    assert data["kind"] == "census"
    assert data["graph_id"] == c.graph_id
    assert data["mode"] == "exhaustive"
    assert data["seed"] == 3
    assert data["entries"] == [[4, 32], [8, 64]]
    assert data["total_states"] == 96 and data["state_space"] == 96


def test_orbit_census_conserved_flags_bad_totals():
    c = OrbitCensus(
        graph_id="x",
        nu=3,
        mode="exhaustive",
        entries={3: 17},
        total_states=17,
        state_space=18,
        complete=True,
        steps=0,
    )
    assert not c.conserved()
