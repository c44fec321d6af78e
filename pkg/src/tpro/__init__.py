"""Toric promotion on labeled simple graphs.

Build graphs from families and bridge compositions, run the promotion
dynamics and its stone-diagram form, census orbit lengths exhaustively, check
the closed-form orbit-length laws, and tabulate evidence for the conjectured
ones.
"""
from .dynamics import (
    Labeling,
    OrbitReport,
    State,
    cyc,
    iterate_orbit,
    make_state,
    orbit_length,
    tpro_inverse_step,
    tpro_step,
)
from .enumeration import (
    EnumerationPlan,
    OrbitCensus,
    census,
    enumerate_states,
    lehmer_rank,
    lehmer_unrank,
    orbit_lengths_table,
    state_from_index,
    state_index,
)
from .graphs import (
    BridgeChainSpec,
    GraphFamilySpec,
    SimpleGraph,
    bridge_sum,
    build,
    build_chain,
    classify,
    complete,
    corona_product,
    cycle,
    eta,
    graph_id,
    path,
    star,
    tree_from_pruefer,
)
from .stones import StoneDiagram, from_state, is_cyclic_rotation, render, sd_step, to_state
from .theorems import (
    Prediction,
    Structure,
    WindingInput,
    crossing_log,
    detect_structure,
    explore_chain,
    explore_cycle_attachment,
    predict,
    verify_directional,
    verify_family,
    verify_lemma_sd_rotation,
    verify_restriction_independence,
    winding_number,
)

__version__ = "0.1.0"
