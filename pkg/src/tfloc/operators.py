"""Discretized localization operators on the second phase-plane coordinate.

Every operator here is the compression of a phase-plane localization
operator to a finite frequency window, acting on coefficient vectors over
that window with the Riemann-sum inner product.  Four builders produce the
same operator along different routes:

* ``build_direct`` -- the conjugated pipeline: embed, backward axis-2
  transform, pointwise multiply by the symbol, forward transform, project.
  This is the reference route; it makes no use of any structure the symbol
  may have.
* ``build_multiplication`` -- diagonal matrix of the scalar symbol gamma
  (first-variable symbols diagonalize).
* ``build_integral`` -- overlap kernel times the transformed second-variable
  factor evaluated on the frequency difference lattice.
* ``build_pseudodiff`` -- compound-symbol form for separable symbols: the
  weighted overlap kernel times the same difference-lattice factor.  (The
  phase sums of the iterated integral collapse to a function of x - y, so
  one transform of the second-variable factor assembles every row.)

``verify_equivalence`` builds the direct and the specialized matrix and
reports their discrepancy in operator norm, eigenvalue Hausdorff distance
and action on random vectors.

Sign conventions: with the axis-2 transform pairing (wavelet forward, gabor
inverse), the difference-lattice factor is beta_hat(+(xi - omega)) for the
wavelet case and beta_hat(-(xi - omega)) for the gabor case; the compound
phase is exp(-2*pi*i*(x-y)*xi) and exp(+2*pi*i*(x-y)*xi) respectively.
A dedicated test asserts this resolution numerically.

Default frequency windows: [-8, 8) for the gabor case; [2^-4, 2^-4 + 4) for
the wavelet case.  The wavelet window sits on the positive healthy band:
at xi = 0 the fibers vanish, and a window containing +/-xi pairs couples
mirrored bands across the lattice period of the discrete transform
(wrap-around), which is an artifact the continuum operator does not have.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .atoms import Atom
from .fields import (_fourier_rows, analyze, apply_axis2_fourier,
                     bargmann, embed, project)
from .fourier import fourier
from .grids import LineGrid, SampledFunction, induced_grid
from .kernels import (GammaFunction, SpectrumReport, gamma, overlap_kernel,
                      weighted_overlap_kernel)
from .symbols import Symbol1D, SymbolSpec

__all__ = [
    "OperatorMatrix",
    "EquivalenceSpec",
    "VerificationReport",
    "default_operator_grid",
    "build_direct",
    "build_multiplication",
    "build_integral",
    "build_pseudodiff",
    "apply_direct",
    "operator_norm",
    "spectrum",
    "hausdorff_distance",
    "verify_equivalence",
    "filter_signal",
    "MAX_DENSE_N",
]

MAX_DENSE_N = 512


def _check_size(n: int, allow_large: bool):
    if n > MAX_DENSE_N and not allow_large:
        raise ValueError(
            f"dense operator size {n} exceeds the cap {MAX_DENSE_N}; "
            "pass allow_large=True to override")


def default_operator_grid(case: str, n: int = 256) -> LineGrid:
    """Documented frequency window for operator work."""
    if case == "gabor":
        return LineGrid.centered(8.0, n)
    return LineGrid(2.0 ** -4, 4.0 / n, n)


def case_sign(case: str) -> float:
    """Sign of the difference-lattice argument in the integral form."""
    return 1.0 if case == "wavelet" else -1.0


class OperatorMatrix:
    """Dense operator over a frequency window, with builder provenance."""

    def __init__(self, grid: LineGrid, values, builder: str, atom_name: str,
                 symbol_descriptor: str, symbol_is_real: bool | None = None):
        values = np.asarray(values, dtype=complex)
        n = grid.count
        if values.shape != (n, n):
            raise ValueError(f"operator must be {n}x{n}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("operator contains non-finite entries")
        scale = float(np.max(np.abs(values))) or 1.0
        dev = float(np.max(np.abs(values - values.conj().T)))
        self.is_hermitian = dev <= 1e-8 * max(1.0, scale)
        if symbol_is_real and not self.is_hermitian:
            raise ValueError(
                f"real symbol produced a non-Hermitian matrix (dev {dev:.2e})")
        self.grid = grid
        self.values = values
        self.builder = builder
        self.atom_name = atom_name
        self.symbol_descriptor = symbol_descriptor

    def __repr__(self):
        return (f"OperatorMatrix({self.builder}, {self.atom_name}, "
                f"{self.symbol_descriptor}, n={self.grid.count})")


# -- direct (pipeline) route -----------------------------------------------------

def apply_direct(atom: Atom, spec: SymbolSpec, f: SampledFunction,
                 a_field: np.ndarray | None = None) -> SampledFunction:
    """One pass of the conjugated pipeline applied to a coefficient vector."""
    s_grid = induced_grid(f.grid)
    if a_field is None:
        a_field = _symbol_field(atom, spec, s_grid)
    F = embed(atom, f)
    G = apply_axis2_fourier(F, "backward", out_grid=s_grid)
    H = G.copy_with(G.values * a_field)
    Y = apply_axis2_fourier(H, "forward", out_grid=f.grid)
    return project(atom, Y)


def _symbol_field(atom: Atom, spec: SymbolSpec, s_grid: LineGrid) -> np.ndarray:
    g1 = atom.g1
    nodes = g1.nodes if hasattr(g1, "nodes") else g1.samples
    return spec.evaluate_field(nodes, s_grid.samples)


def build_direct(atom: Atom, spec: SymbolSpec, xi_grid: LineGrid | None = None,
                 allow_large: bool = False) -> OperatorMatrix:
    """Assemble the pipeline operator column by column on basis vectors.

    Same arithmetic as ``apply_direct`` per column; the fiber matrix and the
    backward transform of the basis vectors are hoisted out of the loop
    (embedding a basis vector gives a rank-one field, so its backward
    transform is an outer product with a precomputed column).
    """
    xi_grid = default_operator_grid(atom.case) if xi_grid is None else xi_grid
    n = xi_grid.count
    _check_size(n, allow_large)
    s_grid = induced_grid(xi_grid)
    a_field = _symbol_field(atom, spec, s_grid)
    L = atom.ell_matrix(xi_grid.samples)
    Lc = np.conj(L)
    w = atom.g1_weights()
    back_sign = "inverse" if atom.case == "wavelet" else "forward"
    fwd_sign = "forward" if atom.case == "wavelet" else "inverse"
    # row j: backward transform of the j-th basis vector, sampled on s_grid
    T_back = _fourier_rows(np.eye(n, dtype=complex), xi_grid, back_sign, s_grid)
    M = np.empty((n, n), dtype=complex)
    for j in range(n):
        H = a_field * np.outer(L[:, j], T_back[j])
        Y = _fourier_rows(H, s_grid, fwd_sign, xi_grid)
        M[:, j] = np.einsum("k,ki,ki->i", w, Lc, Y)
    return OperatorMatrix(xi_grid, M, "direct", atom.name, spec.descriptor,
                          symbol_is_real=spec.is_real)


# -- specialized routes -----------------------------------------------------------

def build_multiplication(gf: GammaFunction) -> OperatorMatrix:
    """Diagonal operator of a sampled scalar symbol."""
    return OperatorMatrix(gf.grid, np.diag(gf.values), "multiplication",
                          gf.atom_name, gf.symbol_descriptor,
                          symbol_is_real=gf.is_real)


def _default_beta_grid(s_grid: LineGrid, refine: int = 4) -> LineGrid:
    """Sampling grid for the second-variable factor.

    Same span as the dual axis but ``refine`` times denser: the transformed
    samples then live on the frequency difference lattice with ``refine``
    times the reach, so every lattice difference is an exact node.
    """
    count = s_grid.count * refine
    step = s_grid.step / refine
    return LineGrid(-(count // 2) * step, step, count)


def _beta_hat_on_lattice(atom: Atom, beta: Symbol1D, xi_grid: LineGrid,
                         beta_grid: LineGrid | None) -> np.ndarray:
    """Transformed second-variable factor at sigma*(xi_i - xi_j).

    Returns the full difference table, shape (n, n).  Values off the
    transform grid are zero (the factor is assumed decaying; tests use
    smooth bumps).
    """
    s_grid = induced_grid(xi_grid)
    bg = _default_beta_grid(s_grid) if beta_grid is None else beta_grid
    b_samples = np.asarray(beta(bg.samples), dtype=complex)
    if not np.all(np.isfinite(b_samples)):
        raise ValueError(f"symbol {beta.descriptor} not finite on its grid")
    bhat = fourier(SampledFunction(bg, b_samples), "forward")
    sigma = case_sign(atom.case)
    n = xi_grid.count
    # difference lattice: sigma*(xi_i - xi_j) = sigma*step*(i - j)
    idx = np.arange(n)
    delta = sigma * xi_grid.step * (idx[:, None] - idx[None, :])
    fg = bhat.grid
    re = np.interp(delta, fg.samples, bhat.values.real, left=0.0, right=0.0)
    im = np.interp(delta, fg.samples, bhat.values.imag, left=0.0, right=0.0)
    return re + 1j * im


def build_integral(atom: Atom, beta: Symbol1D, xi_grid: LineGrid | None = None,
                   beta_grid: LineGrid | None = None,
                   allow_large: bool = False) -> OperatorMatrix:
    """Integral-operator form for second-variable symbols.

    Entry [i, j] = overlap_kernel(xi_i, xi_j) * beta_hat(sigma*(xi_i - xi_j))
    * step, with the case-dependent sigma.
    """
    xi_grid = default_operator_grid(atom.case) if xi_grid is None else xi_grid
    _check_size(xi_grid.count, allow_large)
    K = overlap_kernel(atom, xi_grid)
    bh = _beta_hat_on_lattice(atom, beta, xi_grid, beta_grid)
    vals = K.values * bh * xi_grid.step
    return OperatorMatrix(xi_grid, vals, "integral", atom.name,
                          f"a(s)={beta.descriptor}",
                          symbol_is_real=beta.is_real)


def build_pseudodiff(atom: Atom, alpha: Symbol1D, beta: Symbol1D,
                     xi_grid: LineGrid | None = None,
                     beta_grid: LineGrid | None = None,
                     allow_large: bool = False) -> OperatorMatrix:
    """Compound-symbol form for separable symbols.

    The iterated integral over (y, xi) with compound symbol
    Gamma(x, y) * beta(xi) and the case-dependent oscillatory phase reduces,
    row by row, to the weighted overlap kernel times the transformed
    second-variable factor on the difference lattice.
    """
    xi_grid = default_operator_grid(atom.case) if xi_grid is None else xi_grid
    _check_size(xi_grid.count, allow_large)
    G = weighted_overlap_kernel(atom, alpha, xi_grid)
    bh = _beta_hat_on_lattice(atom, beta, xi_grid, beta_grid)
    vals = G.values * bh * xi_grid.step
    return OperatorMatrix(
        xi_grid, vals, "pseudodiff", atom.name,
        f"a(r,s)=[{alpha.descriptor}]x[{beta.descriptor}]",
        symbol_is_real=alpha.is_real and beta.is_real)


# -- spectra and comparisons -------------------------------------------------------

def operator_norm(M: OperatorMatrix | np.ndarray) -> float:
    """Largest singular value."""
    vals = M.values if isinstance(M, OperatorMatrix) else np.asarray(M)
    return float(np.linalg.svd(vals, compute_uv=False)[0])


def spectrum(M: OperatorMatrix, reference=None,
             allow_large: bool = False) -> SpectrumReport:
    """Dense eigenvalue multiset; symmetric solver for Hermitian matrices."""
    _check_size(M.grid.count, allow_large)
    try:
        if M.is_hermitian:
            sym = 0.5 * (M.values + M.values.conj().T)
            eigs = np.linalg.eigvalsh(sym).astype(complex)
        else:
            eigs = np.linalg.eigvals(M.values)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"eigenvalue computation failed: {exc}") from exc
    if not np.all(np.isfinite(eigs)):
        raise ArithmeticError("eigenvalue computation did not converge")
    interval = ((float(eigs.real.min()), float(eigs.real.max()))
                if M.is_hermitian else None)
    hd = None
    if reference is not None:
        hd = hausdorff_distance(eigs, np.asarray(reference))
    return SpectrumReport(values=eigs, source=f"operator:{M.builder}",
                          is_real=M.is_hermitian,
                          norm_estimate=operator_norm(M), interval=interval,
                          hausdorff=hd)


def hausdorff_distance(a, b) -> float:
    """Hausdorff distance between two finite complex multisets."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass
class EquivalenceSpec:
    """Configuration of one dual-route operator comparison."""

    tag: str                      # cto1 | cto2 | cto3
    atom: Atom
    alpha: Symbol1D | None = None
    beta: Symbol1D | None = None
    xi_grid: LineGrid | None = None
    seed: int = 0
    tolerance: float | None = None

    DEFAULT_TOL = {"cto1": 1e-3, "cto2": 5e-3, "cto3": 5e-3}

    def __post_init__(self):
        if self.tag not in self.DEFAULT_TOL:
            raise ValueError(f"unknown equivalence tag {self.tag!r}")
        if self.xi_grid is None:
            n = 256 if self.tag == "cto1" else 128
            self.xi_grid = default_operator_grid(self.atom.case, n)
        if self.tolerance is None:
            self.tolerance = self.DEFAULT_TOL[self.tag]


@dataclass
class VerificationReport:
    case: str
    atom: str
    symbol: str
    N: int
    norm_discrepancy: float
    hausdorff: float
    action_error_max: float
    tolerance: float
    passed: bool
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "case": self.case, "atom": self.atom, "symbol": self.symbol,
            "N": self.N, "norm_discrepancy": self.norm_discrepancy,
            "hausdorff": self.hausdorff,
            "action_error_max": self.action_error_max,
            "tolerance": self.tolerance, "pass": self.passed,
            **self.extras,
        }


def verify_equivalence(espec: EquivalenceSpec,
                       allow_large: bool = False) -> VerificationReport:
    """Build the direct and the specialized operator; report discrepancies.

    Never raises on failure: the report carries ``passed=False`` instead.
    """
    atom, grid = espec.atom, espec.xi_grid
    if espec.tag == "cto1":
        spec = SymbolSpec.first_variable(espec.alpha)
        other = build_multiplication(gamma(atom, espec.alpha, grid, rule="grid"))
    elif espec.tag == "cto2":
        spec = SymbolSpec.second_variable(espec.beta)
        other = build_integral(atom, espec.beta, grid, allow_large=allow_large)
    else:
        spec = SymbolSpec.separable(espec.alpha, espec.beta)
        other = build_pseudodiff(atom, espec.alpha, espec.beta, grid,
                                 allow_large=allow_large)
    direct = build_direct(atom, spec, grid, allow_large=allow_large)

    dn = operator_norm(direct)
    norm_disc = operator_norm(direct.values - other.values) / dn if dn else 0.0
    hd = hausdorff_distance(spectrum(direct, allow_large=allow_large).values,
                            spectrum(other, allow_large=allow_large).values)
    rng = np.random.default_rng(espec.seed)
    worst = 0.0
    for _ in range(10):
        v = rng.standard_normal(grid.count) + 1j * rng.standard_normal(grid.count)
        dv = direct.values @ v
        ref = np.linalg.norm(dv)
        err = np.linalg.norm(dv - other.values @ v) / (ref if ref else 1.0)
        worst = max(worst, err)
    tol = espec.tolerance
    passed = norm_disc <= tol and hd <= tol * max(1.0, dn) and worst <= tol
    return VerificationReport(
        case=atom.case, atom=atom.name, symbol=spec.descriptor,
        N=grid.count, norm_discrepancy=norm_disc, hausdorff=hd,
        action_error_max=worst, tolerance=tol, passed=passed,
        extras={"builder": other.builder, "seed": espec.seed})


# -- signal filtering ---------------------------------------------------------------

def filter_signal(atom: Atom, spec: SymbolSpec, f: SampledFunction,
                  method: str = "fast"):
    """Apply the localization operator with symbol ``spec`` to a signal.

    slow: analysis transform, pointwise mask by the symbol, diagonalizing
    transform back to the signal domain (via an inverse Fourier transform in
    the wavelet case).

    fast: first-variable symbols only; one scalar multiplication by gamma on
    the transformed side (wavelet) or directly in the signal domain (gabor).

    method="compare" returns (fast, slow, relative_deviation).
    """
    if method not in ("fast", "slow", "compare"):
        raise ValueError(f"unknown method {method!r}")

    def slow_path():
        W = analyze(atom, f)
        mask = _symbol_field(atom, spec, W.g2)
        masked = W.copy_with(W.values * mask)
        g = bargmann(atom, masked)
        if atom.case == "wavelet":
            return fourier(g, "inverse", out_grid=f.grid)
        return SampledFunction(f.grid, g.values)

    def fast_path():
        if spec.kind != "first":
            raise ValueError(
                "the fast path requires a first-variable symbol; got "
                f"{spec.descriptor}")
        if atom.case == "wavelet":
            fgrid = induced_grid(f.grid)
            gf = gamma(atom, spec.alpha, fgrid, rule="grid")
            fh = fourier(f, "forward")
            return fourier(SampledFunction(fgrid, fh.values * gf.values),
                           "inverse", out_grid=f.grid)
        gf = gamma(atom, spec.alpha, f.grid, rule="grid")
        return SampledFunction(f.grid, f.values * gf.values)

    if method == "slow":
        return slow_path()
    if method == "fast":
        return fast_path()
    fast, slow = fast_path(), slow_path()
    ref = slow.norm()
    dev = math.sqrt(np.sum(np.abs(fast.values - slow.values) ** 2)
                    * f.grid.step) / (ref if ref else 1.0)
    return fast, slow, dev
