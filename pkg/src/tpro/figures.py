"""Report figures rendered to image files next to the delimited output.

All figures use the Agg backend and strip volatile metadata so the same
report produces byte-identical images across runs.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .enumeration import OrbitCensus  # noqa: E402
from .theorems import FamilyReport, WTableReport  # noqa: E402

DPI = 150


def save_figure(fig, path: str) -> None:
    """Write the figure as PNG with creation metadata removed."""
    fig.savefig(path, dpi=DPI, format="png", metadata={"Software": None})
    plt.close(fig)


def census_figure(c: OrbitCensus):
    """Bar chart of state counts by orbit length."""
    lengths = sorted(c.entries)
    counts = [c.entries[l] for l in lengths]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(l) for l in lengths], counts, color="#4878d0")
    ax.set_xlabel("orbit length")
    ax.set_ylabel("states")
    suffix = "" if c.complete else " (partial)"
    ax.set_title(f"orbit census {c.graph_id} [{c.mode}]{suffix}")
    fig.tight_layout()
    return fig


def family_figure(report: FamilyReport):
    """Measured length distribution with the predicted length marked."""
    lengths = sorted(report.length_counts)
    counts = [report.length_counts[l] for l in lengths]
    colors = [
        "#4878d0" if l == report.prediction.predicted_length else "#d65f5f"
        for l in lengths
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(l) for l in lengths], counts, color=colors)
    ax.set_xlabel("measured orbit length")
    ax.set_ylabel("states")
    ax.set_title(
        f"{report.prediction.formula_id} {report.graph_id}: "
        f"predicted {report.prediction.predicted_length}, "
        f"{report.mismatch_count} mismatches"
    )
    fig.tight_layout()
    return fig


def wtable_figure(report: WTableReport):
    """Histogram of inferred winding numbers over the tabulated states."""
    values = [str(r.inferred) for r in report.rows]
    order = sorted(set(values), key=lambda s: eval_fraction(s))
    counts = [values.count(v) for v in order]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(order, counts, color="#4878d0")
    ax.set_xlabel("inferred w (orbit length / w_unit)")
    ax.set_ylabel("states")
    ax.set_title(
        f"{report.conjecture_id} {report.graph_id}: w_unit {report.w_unit}, "
        f"{report.literal_match_count}/{len(report.rows)} literal matches"
    )
    fig.tight_layout()
    return fig


def eval_fraction(text: str) -> float:
    if "/" in text:
        a, b = text.split("/")
        return int(a) / int(b)
    return float(int(text))
