import math

import numpy as np
import pytest

from tfloc.fields import random_bandlimited
from tfloc.fourier import fourier
from tfloc.grids import LineGrid
from tfloc.kernels import gamma, spectrum_from_gamma
from tfloc.operators import (EquivalenceSpec, build_direct, build_integral,
                             build_multiplication, build_pseudodiff,
                             default_operator_grid, filter_signal,
                             hausdorff_distance, operator_norm, spectrum,
                             verify_equivalence)
from tfloc.symbols import Symbol1D, SymbolSpec

G128 = default_operator_grid("gabor", 128)
W128 = default_operator_grid("wavelet", 128)


def _grid_for(atom, n=128):
    return default_operator_grid(atom.case, n)


# -- direct builder ------------------------------------------------------------

def test_direct_constant_symbol_is_identity(gaussian, shannon):
    for atom in (gaussian, shannon):
        M = build_direct(atom, SymbolSpec.first_variable(Symbol1D.constant(1.0)),
                         _grid_for(atom))
        assert np.max(np.abs(M.values - np.eye(128))) <= 1e-6


def test_direct_first_variable_hermitian_and_near_diagonal(gaussian):
    M = build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.indicator(-1.0, 1.0)),
                     G128)
    assert M.is_hermitian
    off = M.values - np.diag(np.diag(M.values))
    frac = np.linalg.norm(off) / np.linalg.norm(M.values)
    assert frac <= 1e-3


def test_direct_linear_in_symbol(gaussian):
    s1 = SymbolSpec.first_variable(Symbol1D.indicator(-2.0, 0.0))
    s2 = SymbolSpec.second_variable(Symbol1D.gaussian_bump(1.0))
    both = SymbolSpec.general(
        lambda r, s: ((r >= -2.0) & (r <= 0.0)).astype(float)
        + np.exp(-np.pi * s ** 2) * np.ones_like(r),
        descriptor="sum")
    M1 = build_direct(gaussian, s1, G128)
    M2 = build_direct(gaussian, s2, G128)
    M = build_direct(gaussian, both, G128)
    assert np.max(np.abs(M.values - (M1.values + M2.values))) <= 1e-10


def test_direct_hermitian_iff_real_symbol(gaussian):
    real = build_direct(gaussian,
                        SymbolSpec.first_variable(Symbol1D.indicator(-1.0, 1.0)),
                        G128)
    assert real.is_hermitian
    cplx = build_direct(
        gaussian,
        SymbolSpec.first_variable(Symbol1D.piecewise([[(-1.0, 1.0)]], [1j])),
        G128)
    assert not cplx.is_hermitian


def test_direct_rejects_nonfinite_symbol(gaussian):
    spec = SymbolSpec.general(
        lambda r, s: np.full((r.size, s.size), np.inf), descriptor="inf")
    with pytest.raises(ValueError, match="finite"):
        build_direct(gaussian, spec, G128)


def test_size_cap_enforced(gaussian):
    big = LineGrid.centered(8.0, 1024)
    with pytest.raises(ValueError, match="cap"):
        build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.constant(1.0)), big)


# -- multiplication route -----------------------------------------------------------

def test_multiplication_identity_and_spectrum(gaussian):
    gf = gamma(gaussian, Symbol1D.constant(1.0), G128, rule="grid")
    M = build_multiplication(gf)
    assert np.max(np.abs(M.values - np.eye(128))) <= 1e-6
    rep = spectrum(M)
    assert np.max(np.abs(np.sort(rep.values.real)
                         - np.sort(gf.values.real))) <= 1e-12


def test_multiplication_matches_direct(gaussian, shannon):
    for atom in (gaussian, shannon):
        sym = (Symbol1D.indicator(-1.0, 1.0) if atom.case == "gabor"
               else Symbol1D.indicator(1.0, 2.0))
        grid = _grid_for(atom, 256)
        M1 = build_direct(atom, SymbolSpec.first_variable(sym), grid)
        M2 = build_multiplication(gamma(atom, sym, grid, rule="grid"))
        assert operator_norm(M1.values - M2.values) <= 1e-3 * operator_norm(M1)


# -- integral route -------------------------------------------------------------------

def test_integral_constant_beta_is_identity(gaussian, shannon):
    for atom in (gaussian, shannon):
        M = build_integral(atom, Symbol1D.constant(1.0), _grid_for(atom))
        assert operator_norm(M.values - np.eye(128)) <= 2e-3


def test_integral_real_beta_hermitian(gaussian, shannon):
    for atom in (gaussian, shannon):
        M = build_integral(atom, Symbol1D.gaussian_bump(1.0), _grid_for(atom))
        assert np.max(np.abs(M.values - M.values.conj().T)) <= 1e-8


def test_integral_matches_direct_random_smooth_beta(gaussian, shannon):
    rng = np.random.default_rng(8)
    for atom in (gaussian, shannon):
        grid = _grid_for(atom)
        coeff = rng.standard_normal(3)
        beta = Symbol1D(
            lambda s, c=coeff: (c[0] * np.exp(-np.pi * s ** 2)
                                + c[1] * np.exp(-np.pi * (s - 0.5) ** 2)
                                + c[2] * np.exp(-2 * np.pi * s ** 2)),
            "mix-of-bumps")
        M1 = build_direct(atom, SymbolSpec.second_variable(beta), grid)
        M2 = build_integral(atom, beta, grid)
        rel = operator_norm(M1.values - M2.values) / operator_norm(M1)
        assert rel <= 5e-3, f"{atom.name}: {rel:.2e}"


# -- pseudodifferential route -----------------------------------------------------------

def test_pseudodiff_alpha_one_reduces_to_integral(gaussian):
    beta = Symbol1D.gaussian_bump(1.0)
    M1 = build_pseudodiff(gaussian, Symbol1D.constant(1.0), beta, G128)
    M2 = build_integral(gaussian, beta, G128)
    assert np.max(np.abs(M1.values - M2.values)) <= 1e-6


def test_pseudodiff_beta_one_reduces_to_multiplication(gaussian, shannon):
    for atom in (gaussian, shannon):
        sym = (Symbol1D.indicator(-1.0, 1.0) if atom.case == "gabor"
               else Symbol1D.indicator(1.0, 2.0))
        grid = _grid_for(atom)
        M1 = build_pseudodiff(atom, sym, Symbol1D.constant(1.0), grid)
        M2 = build_multiplication(gamma(atom, sym, grid, rule="grid"))
        assert operator_norm(M1.values - M2.values) <= 2e-3


def test_pseudodiff_matches_direct_separable(gaussian, shannon):
    for atom in (gaussian, shannon):
        grid = _grid_for(atom)
        alpha = (Symbol1D.indicator(0.0, math.inf) if atom.case == "gabor"
                 else Symbol1D.indicator(0.5, 8.0))
        beta = Symbol1D.cosine_window(2.0)
        M1 = build_direct(atom, SymbolSpec.separable(alpha, beta), grid)
        M2 = build_pseudodiff(atom, alpha, beta, grid)
        rel = operator_norm(M1.values - M2.values) / operator_norm(M1)
        assert rel <= 5e-3, f"{atom.name}: {rel:.2e}"


# -- equivalence harness ------------------------------------------------------------------

def test_verify_equivalence_cto1(gaussian):
    rep = verify_equivalence(EquivalenceSpec(
        "cto1", gaussian, alpha=Symbol1D.indicator(-1.0, 1.0),
        xi_grid=default_operator_grid("gabor", 256), seed=7))
    assert rep.passed and rep.norm_discrepancy <= 1e-3


def test_verify_equivalence_cto2(shannon):
    rep = verify_equivalence(EquivalenceSpec(
        "cto2", shannon, beta=Symbol1D.gaussian_bump(1.0), seed=11))
    assert rep.passed and rep.norm_discrepancy <= 5e-3
    assert rep.N == 128


def test_verify_equivalence_cto3(gaussian):
    rep = verify_equivalence(EquivalenceSpec(
        "cto3", gaussian, alpha=Symbol1D.indicator(0.0, math.inf),
        beta=Symbol1D.cosine_window(2.0), seed=3))
    assert rep.passed and rep.norm_discrepancy <= 5e-3


def test_verify_reports_failure_without_raising(gaussian):
    # mismatched routes: compare the direct operator for one symbol against
    # the multiplication operator of another
    espec = EquivalenceSpec("cto1", gaussian,
                            alpha=Symbol1D.indicator(-1.0, 1.0),
                            xi_grid=G128, seed=0, tolerance=1e-16)
    rep = verify_equivalence(espec)
    assert not rep.passed  # rounding exceeds an absurd tolerance
    assert rep.to_dict()["pass"] is False


# -- spectra -------------------------------------------------------------------------------

def test_spectrum_identity(gaussian):
    M = build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.constant(1.0)), G128)
    rep = spectrum(M)
    assert np.max(np.abs(rep.values - 1.0)) <= 1e-6


def test_spectrum_diag_interval_for_real_symbol(gaussian):
    gf = gamma(gaussian, Symbol1D.indicator(-1.0, 1.0), G128, rule="grid")
    rep = spectrum(build_multiplication(gf))
    lo, hi = float(gf.values.real.min()), float(gf.values.real.max())
    assert np.all(rep.values.real >= lo - 1e-9)
    assert np.all(rep.values.real <= hi + 1e-9)


def test_spectrum_direct_indicator_is_positive_contraction(gaussian):
    M = build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.indicator(-1.0, 1.0)),
                     G128)
    eigs = spectrum(M).values.real
    assert eigs.min() >= -1e-3 and eigs.max() <= 1.0 + 1e-3


def test_norm_theorem_four_catalog_symbols(gaussian, shannon):
    pools = {
        "gabor": [Symbol1D.indicator(-1.0, 1.0),
                  Symbol1D.indicator(-math.inf, 0.0),
                  Symbol1D.smooth_step(4.0),
                  Symbol1D.gaussian_bump(8.0)],
        "wavelet": [Symbol1D.indicator(1.0, 2.0),
                    Symbol1D.indicator(0.5, 8.0),
                    Symbol1D.smooth_step(8.0, log2_axis=True),
                    Symbol1D.constant(0.5)],
    }
    for atom in (gaussian, shannon):
        grid = _grid_for(atom, 256)
        for sym in pools[atom.case]:
            M = build_direct(atom, SymbolSpec.first_variable(sym), grid)
            sup = spectrum_from_gamma(
                gamma(atom, sym, grid, rule="adaptive")).norm_estimate
            rel = abs(operator_norm(M) - sup) / sup
            assert rel <= 1e-3, f"{atom.name}/{sym.descriptor}: {rel:.2e}"


def test_noncompactness_proxy(gaussian):
    # multiplication operators are never compact: eigenvalues do not pile
    # up at zero when gamma is large on a chunk of the window
    M = build_direct(gaussian,
                     SymbolSpec.first_variable(Symbol1D.indicator(-2.0, 2.0)),
                     default_operator_grid("gabor", 256))
    eigs = np.abs(spectrum(M).values)
    norm = operator_norm(M)
    gf = gamma(gaussian, Symbol1D.indicator(-2.0, 2.0),
               default_operator_grid("gabor", 256), rule="grid")
    heavy_fraction = float(np.mean(np.abs(gf.values) > norm / 2))
    assert heavy_fraction >= 0.10
    assert float(np.mean(eigs > norm / 2)) >= 0.10


def test_hausdorff_distance_basics():
    assert hausdorff_distance([0.0, 1.0], [0.0, 1.0]) == 0.0
    assert abs(hausdorff_distance([0.0], [0.5, 3.0]) - 3.0) <= 1e-15
    assert abs(hausdorff_distance([0.0, 1.0], [0.25]) - 0.75) <= 1e-15


# -- signal filtering --------------------------------------------------------------------

SIGNAL_GRID = LineGrid.centered(8.0, 1024)


def test_filter_constant_symbol_reproduces_signal(gaussian, shannon):
    for atom in (gaussian, shannon):
        f = random_bandlimited(SIGNAL_GRID, seed=19)
        out = filter_signal(atom, SymbolSpec.first_variable(Symbol1D.constant(1.0)),
                            f, method="slow")
        err = np.linalg.norm(out.values - f.values) / np.linalg.norm(f.values)
        assert err <= 2e-3, f"{atom.name}: {err:.2e}"


def test_filter_halfline_contracts_energy(gaussian):
    spec = SymbolSpec.first_variable(Symbol1D.indicator(-math.inf, 0.0))
    for k in range(5):
        f = random_bandlimited(SIGNAL_GRID, seed=200 + k)
        out = filter_signal(gaussian, spec, f, method="slow")
        assert out.norm() <= f.norm() * (1 + 1e-12)


def test_filter_fast_slow_agree(gaussian, shannon):
    for atom, sym in [(gaussian, Symbol1D.indicator(-1.0, 1.0)),
                      (shannon, Symbol1D.indicator(1.0, 2.0))]:
        f = random_bandlimited(SIGNAL_GRID, seed=33)
        fast, slow, dev = filter_signal(
            atom, SymbolSpec.first_variable(sym), f, method="compare")
        assert dev <= 5e-3, f"{atom.name}: {dev:.2e}"


def test_filter_scale_band_attenuates_as_fast_path_predicts(shannon):
    # scale band [1, 2]: the diagonal symbol is the log-overlap tent peaking
    # at |xi| = 1 and vanishing outside [1/2, 2]; the slow output spectrum
    # must match gamma * f_hat, the fast-path prediction
    sym = Symbol1D.indicator(1.0, 2.0)
    spec = SymbolSpec.first_variable(sym)
    f = random_bandlimited(SIGNAL_GRID, seed=44)
    out = filter_signal(shannon, spec, f, method="slow")
    fh, oh = fourier(f), fourier(out)
    gf = gamma(shannon, sym, fh.grid, rule="grid")
    assert np.max(np.abs(oh.values - gf.values * fh.values)) <= 5e-3
    xs = np.abs(fh.grid.samples)
    kill = (xs < 0.5 - 1e-9) | (xs > 2.0 + 1e-9)
    assert np.max(np.abs(oh.values[kill])) <= 5e-3


def test_filter_fast_rejects_non_first_variable(gaussian):
    f = random_bandlimited(SIGNAL_GRID, seed=1)
    spec = SymbolSpec.second_variable(Symbol1D.gaussian_bump(1.0))
    with pytest.raises(ValueError, match="first-variable"):
        filter_signal(gaussian, spec, f, method="fast")
