import json
import math

import numpy as np
import pytest

from tfloc.fields import analyze, random_bandlimited
from tfloc.grids import LineGrid, SampledFunction, ScaleGrid, subgrid_indices
from tfloc.io import export_field, export_matrix, sidecar_path
from tfloc.operators import build_direct, default_operator_grid
from tfloc.symbols import Symbol1D, SymbolSpec


def test_line_grid_validation():
    with pytest.raises(ValueError):
        LineGrid(0.0, -1.0, 8)
    with pytest.raises(ValueError):
        LineGrid(0.0, 1.0, 1)
    g = LineGrid(-1.0, 0.5, 5)
    assert np.allclose(g.samples, [-1.0, -0.5, 0.0, 0.5, 1.0])


def test_scale_grid_weight_sum_invariant():
    for (lo, hi, n) in [(2.0 ** -8, 2.0 ** 8, 512), (0.1, 7.3, 33)]:
        g = ScaleGrid(lo, hi, n)
        total = float(np.sum(g.weights))
        assert abs(total - math.log(hi / lo)) <= 1e-12 * math.log(hi / lo)
        assert np.all(np.diff(g.nodes) > 0)
        assert g.nodes[0] >= lo and g.nodes[-1] <= hi


def test_scale_grid_validation():
    with pytest.raises(ValueError):
        ScaleGrid(-1.0, 2.0, 16)
    with pytest.raises(ValueError):
        ScaleGrid(2.0, 1.0, 16)


def test_subgrid_indices():
    full = LineGrid(-8.0, 1.0 / 64, 1024)
    sub = LineGrid(-8.0, 1.0 / 16, 256)
    assert subgrid_indices(sub, full) == (0, 4)
    with pytest.raises(ValueError):
        subgrid_indices(LineGrid(-8.0, 0.3, 10), full)


def test_sampled_function_norm_matches_direct_sum():
    grid = LineGrid(0.0, 0.25, 16)
    f = SampledFunction(grid, np.ones(16))
    assert abs(f.norm() - 2.0) <= 1e-14  # sqrt(16 * 0.25)


def test_export_field_roundtrips_columns(tmp_path, gaussian):
    f = random_bandlimited(LineGrid.centered(8.0, 1024), seed=3)
    W = analyze(gaussian, f, g2=LineGrid.centered(8.0, 64))
    path = str(tmp_path / "field.csv")
    export_field(path, W, metadata={"what": "spectrogram"})
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert rows.shape == (W.g1.count * 64, 4)
    k, i = 37, 11
    idx = k * 64 + i
    assert rows[idx, 0] == W.g1.samples[k]
    assert abs(rows[idx, 2] + 1j * rows[idx, 3] - W.values[k, i]) == 0.0
    meta = json.loads(open(sidecar_path(path)).read())
    assert meta["shape"] == [512, 64] and meta["what"] == "spectrogram"


def test_export_matrix_roundtrips_entries(tmp_path, gaussian):
    grid = default_operator_grid("gabor", 32)
    M = build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.indicator(-1.0, 1.0)),
                     grid)
    path = str(tmp_path / "op.csv")
    export_matrix(path, M)
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert rows.shape == (1024, 4)
    got = rows[:, 2].reshape(32, 32) + 1j * rows[:, 3].reshape(32, 32)
    assert np.max(np.abs(got - M.values)) == 0.0
    meta = json.loads(open(sidecar_path(path)).read())
    assert meta["builder"] == "direct" and meta["hermitian"] is True
