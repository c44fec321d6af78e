from tpro.enumeration import EnumerationPlan, census
from tpro.figures import census_figure, eval_fraction, family_figure, save_figure, wtable_figure
from tpro.graphs import bridge_sum, complete, cycle, path
from tpro.theorems import (
    Structure,
    detect_structure,
    explore_cycle_attachment,
    predict,
    verify_family,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_census_figure_png(tmp_path):
    c = census(cycle(4), EnumerationPlan())
    out = tmp_path / "census.png"
    save_figure(census_figure(c), str(out))
    data = out.read_bytes()
    assert data[:8] == PNG_MAGIC
    assert len(data) > 1000


def test_family_figure_png(tmp_path):
    g = bridge_sum(path(2), 0, complete(3), 0)
    report = verify_family(g, predict(g, detect_structure(g)))
    out = tmp_path / "family.png"
    save_figure(family_figure(report), str(out))
    assert out.read_bytes()[:8] == PNG_MAGIC


def test_wtable_figure_png(tmp_path):
    g = bridge_sum(path(2), 0, cycle(3), 0)
    report = explore_cycle_attachment(
        g, (2, 3, 4), (0, 2), mode="sampled", count=20, seed=3
    )
    out = tmp_path / "wtable.png"
    save_figure(wtable_figure(report), str(out))
    assert out.read_bytes()[:8] == PNG_MAGIC


def test_figures_are_reproducible(tmp_path):
    c = census(complete(3), EnumerationPlan())
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    save_figure(census_figure(c), str(a))
    save_figure(census_figure(c), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_eval_fraction():
    assert eval_fraction("3/4") == 0.75
    assert eval_fraction("2") == 2.0
