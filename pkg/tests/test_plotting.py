import pytest

from toric_poisson.moment import figure_data

pytest.importorskip("matplotlib")

from toric_poisson.plotting import render_figure  # noqa: E402


@pytest.mark.parametrize("n", [1, 2])
def test_render_writes_png(tmp_path, n):
    path = render_figure(figure_data(n), tmp_path / f"cp{n}.png")
    assert path.read_bytes()[:4] == b"\x89PNG"
    assert path.stat().st_size > 1000
