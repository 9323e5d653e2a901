"""Command-line interface.

Subcommands: gamma, spectrum, kernel, verify, filter, algebra.  Outputs are
CSV files with JSON sidecars (or single JSON files with --format json),
written atomically; identical configurations produce byte-identical files.
Exit codes: 0 success (and, for verify, all checks passed), 1 verification
failure, 2 usage or runtime error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io as tio
from .algebra import (Partition, default_partition_domain, evaluate_on_cloud,
                      commutator_diagnostics, partition_gammas)
from .atoms import make_atom
from .fields import analyze, bargmann, bargmann_adjoint, random_bandlimited
from .fourier import fourier
from .grids import LineGrid, SampledFunction
from .kernels import (boundedness_verdict, gamma, overlap_kernel,
                      spectrum_from_gamma, weighted_overlap_kernel)
from .operators import (EquivalenceSpec, build_direct, default_operator_grid,
                        filter_signal, operator_norm, spectrum,
                        verify_equivalence)
from .symbols import Symbol1D, SymbolParseError, SymbolSpec, parse_symbol

DEFAULT_ATOM = {"gabor": "gaussian", "wavelet": "shannon"}


def _add_common(p: argparse.ArgumentParser, need_symbol: bool = False):
    p.add_argument("--case", choices=("wavelet", "gabor"), default="gabor")
    p.add_argument("--atom", default=None,
                   help="catalog atom name (default per case)")
    if need_symbol:
        p.add_argument("--symbol", required=True,
                       help="const:c | indicator:a,b | power:p | sampled:file")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--xi-min", type=float, default=None)
    p.add_argument("--xi-max", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--allow-large", action="store_true",
                   help="lift the N<=512 dense-solve cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tfloc",
        description="Localization-operator computations: scalar symbols, "
                    "kernels, spectra, dual-route verification, filtering")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="scalar diagonal symbol of a "
                                     "first-variable operator")
    _add_common(p, need_symbol=True)
    p.add_argument("--rule", choices=("grid", "adaptive", "fft"),
                   default="adaptive")

    p = sub.add_parser("spectrum", help="sampled spectrum, norm and "
                                        "boundedness readout")
    _add_common(p, need_symbol=True)
    p.add_argument("--rule", choices=("grid", "adaptive", "fft"),
                   default="adaptive")
    p.add_argument("--with-eigs", action="store_true",
                   help="overlay eigenvalues of the direct operator and "
                        "report the Hausdorff distance")

    p = sub.add_parser("kernel", help="two-point overlap kernel "
                                      "(symbol-weighted with --symbol)")
    _add_common(p)
    p.add_argument("--symbol", default=None)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("cto1", "cto2", "cto3", "transforms",
                                     "algebra"))
    _add_common(p)

    p = sub.add_parser("filter", help="apply a localization operator to a "
                                      "signal")
    p.add_argument("--case", choices=("wavelet", "gabor"), default="gabor")
    p.add_argument("--atom", default=None)
    p.add_argument("--symbol", required=True)
    p.add_argument("--input", required=True, help="signal CSV (x,re,im)")
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=("fast", "slow"), default="fast")
    p.add_argument("--compare", action="store_true",
                   help="run both paths, write the slow result alongside and "
                        "record their relative deviation")

    p = sub.add_parser("algebra", help="partition gamma-vector cloud")
    _add_common(p)
    p.add_argument("--cuts", default="0",
                   help="comma-separated interior cut points of the "
                        "first-coordinate domain")
    return ap


def _xi_grid(args) -> LineGrid:
    if args.xi_min is None and args.xi_max is None:
        return default_operator_grid(args.case, args.n)
    default = default_operator_grid(args.case, args.n)
    lo = default.start if args.xi_min is None else args.xi_min
    hi = default.stop if args.xi_max is None else args.xi_max
    if not lo < hi:
        raise ValueError(f"need xi-min < xi-max, got [{lo}, {hi}]")
    return LineGrid(lo, (hi - lo) / args.n, args.n)


def _atom(args):
    name = args.atom or DEFAULT_ATOM[args.case]
    return make_atom(args.case, name)


def _config_meta(args, **extra) -> dict:
    md = {"case": args.case, "atom": args.atom or DEFAULT_ATOM[args.case],
          "n": args.n, "seed": args.seed}
    md.update(extra)
    return md


def _check_n(args):
    if args.n > 512 and not args.allow_large:
        raise ValueError(f"n={args.n} exceeds the cap 512; "
                         "pass --allow-large to override")


def cmd_gamma(args) -> int:
    symbol = parse_symbol(args.symbol)
    atom = _atom(args)
    _check_n(args)
    gf = gamma(atom, symbol, _xi_grid(args), rule=args.rule)
    meta = _config_meta(args, symbol=symbol.descriptor, rule=args.rule,
                        unbounded=gf.unbounded, tolerances={
                            "adaptive_quadrature": 1e-10,
                            "grid_rule_indicator_edges": "O(step)"})
    if args.format == "json":
        tio.write_json(args.out, {
            **meta, "xi": [float(x) for x in gf.grid.samples],
            "re": [float(v) for v in gf.values.real],
            "im": [float(v) for v in gf.values.imag]})
    else:
        tio.export_gamma(args.out, gf, metadata=meta)
    return 0


def cmd_spectrum(args) -> int:
    symbol = parse_symbol(args.symbol)
    atom = _atom(args)
    _check_n(args)
    grid = _xi_grid(args)
    gf = gamma(atom, symbol, grid, rule=args.rule)
    rep = spectrum_from_gamma(gf)
    wide = gamma(atom, symbol,
                 LineGrid(grid.start, 2 * grid.step, grid.count), rule=args.rule)
    verdict = boundedness_verdict([rep, spectrum_from_gamma(wide)])
    rows = [("gamma", v) for v in rep.values]
    meta = _config_meta(args, symbol=symbol.descriptor,
                        norm_estimate=rep.norm_estimate,
                        interval=list(rep.interval) if rep.interval else None,
                        verdict=verdict, caveat=rep.caveat)
    if args.with_eigs:
        M = build_direct(atom, SymbolSpec.first_variable(symbol), grid,
                         allow_large=args.allow_large)
        erep = spectrum(M, reference=rep.values, allow_large=args.allow_large)
        rows += [("eig", v) for v in erep.values]
        meta["hausdorff_eigs_vs_gamma"] = erep.hausdorff
        meta["operator_norm"] = erep.norm_estimate
    if args.format == "json":
        tio.write_json(args.out, {
            **meta,
            "values": [{"kind": k, "re": float(v.real), "im": float(v.imag)}
                       for k, v in rows]})
    else:
        body = "kind,re,im\n" + "".join(
            f"{k},{v.real:.17g},{v.imag:.17g}\n" for k, v in rows)
        tio.atomic_write_text(args.out, body)
        tio.write_json(tio.sidecar_path(args.out), meta)
    return 0


def cmd_kernel(args) -> int:
    atom = _atom(args)
    _check_n(args)
    grid = _xi_grid(args)
    if args.symbol:
        km = weighted_overlap_kernel(atom, parse_symbol(args.symbol), grid)
    else:
        km = overlap_kernel(atom, grid)
    meta = _config_meta(args, symbol=km.symbol_descriptor, kind=km.kind,
                        tolerances={"diag_unit_healthy": 1e-6,
                                    "hermitian": 1e-10})
    if args.format == "json":
        tio.write_json(args.out, {
            **meta, "xi": [float(x) for x in grid.samples],
            "re": [[float(v) for v in row] for row in km.values.real],
            "im": [[float(v) for v in row] for row in km.values.imag]})
    else:
        tio.export_kernel(args.out, km, metadata=meta)
    return 0


def _verify_equivalence_suite(args) -> dict:
    atom = _atom(args)
    grid = default_operator_grid(args.case, args.n)
    if args.suite == "cto1":
        alpha = (Symbol1D.indicator(-1.0, 1.0) if args.case == "gabor"
                 else Symbol1D.indicator(1.0, 2.0))
        espec = EquivalenceSpec("cto1", atom, alpha=alpha, xi_grid=grid,
                                seed=args.seed)
    elif args.suite == "cto2":
        espec = EquivalenceSpec("cto2", atom, beta=Symbol1D.gaussian_bump(1.0),
                                xi_grid=grid, seed=args.seed)
    else:
        if args.case == "gabor":
            alpha = Symbol1D.indicator(0.0, float("inf"))
            beta = Symbol1D.cosine_window(2.0)
        else:
            alpha = Symbol1D.indicator(0.5, 8.0)
            beta = Symbol1D.gaussian_bump(1.0)
        espec = EquivalenceSpec("cto3", atom, alpha=alpha, beta=beta,
                                xi_grid=grid, seed=args.seed)
    rep = verify_equivalence(espec, allow_large=args.allow_large)
    return rep.to_dict()


def _verify_transforms_suite(args) -> dict:
    atom = _atom(args)
    n = max(args.n, 64)
    grid = LineGrid.centered(8.0, n)
    worst_iso, worst_fact, worst_round = 0.0, 0.0, 0.0
    for k in range(20):
        f = random_bandlimited(grid, seed=args.seed + k)
        W = analyze(atom, f)
        worst_iso = max(worst_iso, abs(W.weighted_norm() - f.norm()))
        out = bargmann(atom, W)
        ref = fourier(f).values if atom.case == "wavelet" else f.values
        worst_fact = max(worst_fact, float(
            np.linalg.norm(out.values - ref) / np.linalg.norm(ref)))
    opg = default_operator_grid(args.case, min(args.n, 256))
    rng = np.random.default_rng(args.seed)
    for _ in range(5):
        v = rng.standard_normal(opg.count) + 1j * rng.standard_normal(opg.count)
        h = SampledFunction(opg, v)
        rr = bargmann(atom, bargmann_adjoint(atom, h), out_grid=opg)
        worst_round = max(worst_round, float(np.max(np.abs(rr.values - v))))
    passed = worst_iso <= 2e-3 and worst_fact <= 2e-3 and worst_round <= 1e-6
    return {"case": args.case, "atom": atom.name, "N": n,
            "isometry_error_max": worst_iso,
            "factorization_error_max": worst_fact,
            "roundtrip_error_max": worst_round,
            "tolerances": {"isometry": 2e-3, "factorization": 2e-3,
                           "roundtrip": 1e-6},
            "pass": passed}


def _verify_algebra_suite(args) -> dict:
    atom = _atom(args)
    grid = default_operator_grid(args.case, min(args.n, 256))
    if args.case == "gabor":
        pool = [Symbol1D.indicator(-1.0, 1.0),
                Symbol1D.indicator(float("-inf"), 0.0),
                Symbol1D.smooth_step(4.0),
                Symbol1D.gaussian_bump(8.0)]
        cuts = [0.0]
    else:
        pool = [Symbol1D.indicator(1.0, 2.0),
                Symbol1D.indicator(0.5, 8.0),
                Symbol1D.smooth_step(8.0, log2_axis=True),
                Symbol1D.constant(0.5)]
        cuts = [1.0]
    worst_comm = 0.0
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            d = commutator_diagnostics(atom, pool[i], pool[j], grid)
            worst_comm = max(worst_comm, d["commutator_norm_rel"])
    part = Partition.from_cuts(args.case, cuts, default_partition_domain(atom))
    cloud = partition_gammas(atom, part, grid)
    sums_dev = float(np.max(np.abs(cloud.points.sum(axis=1) - 1.0)))
    rng = np.random.default_rng(args.seed)
    worst_iso = 0.0
    for _ in range(5):
        coeffs = rng.standard_normal(part.m) + 1j * rng.standard_normal(part.m)
        _, sup = evaluate_on_cloud(coeffs, cloud)
        M = build_direct(atom, SymbolSpec.piecewise_constant(
            part.pieces, coeffs), grid)
        nm = operator_norm(M)
        worst_iso = max(worst_iso, abs(sup - nm) / nm)
    passed = worst_comm <= 5e-3 and sums_dev <= 1e-6 and worst_iso <= 2e-3
    return {"case": args.case, "atom": atom.name, "N": grid.count,
            "commutator_rel_max": worst_comm,
            "simplex_sum_deviation": sums_dev,
            "tau_isometry_rel_max": worst_iso,
            "tolerances": {"commutator": 5e-3, "simplex": 1e-6,
                           "tau_isometry": 2e-3},
            "pass": passed}


def cmd_verify(args) -> int:
    if args.suite in ("cto1", "cto2", "cto3"):
        _check_n(args)  # dense-solve cap applies to the operator suites only
        report = _verify_equivalence_suite(args)
    elif args.suite == "transforms":
        report = _verify_transforms_suite(args)
    else:
        report = _verify_algebra_suite(args)
    report["suite"] = args.suite
    report["seed"] = args.seed
    tio.write_json(args.out, report)
    return 0 if report["pass"] else 1


def cmd_filter(args) -> int:
    symbol = parse_symbol(args.symbol)
    atom = make_atom(args.case, args.atom or DEFAULT_ATOM[args.case])
    f = tio.read_signal_csv(args.input)
    spec = SymbolSpec.first_variable(symbol)
    meta = {"case": args.case, "atom": atom.name,
            "symbol": symbol.descriptor, "input": args.input}
    if args.compare:
        fast, slow, dev = filter_signal(atom, spec, f, method="compare")
        out = fast if args.method == "fast" else slow
        tio.write_signal_csv(args.out, out, metadata={
            **meta, "method": args.method, "compared": True,
            "relative_deviation": dev})
        tio.write_signal_csv(f"{args.out}.slow.csv", slow)
    else:
        out = filter_signal(atom, spec, f, method=args.method)
        tio.write_signal_csv(args.out, out, metadata={
            **meta, "method": args.method, "compared": False})
    return 0


def cmd_algebra(args) -> int:
    atom = _atom(args)
    _check_n(args)
    try:
        cuts = [float(c) for c in args.cuts.split(",") if c.strip()]
    except ValueError:
        raise ValueError(f"malformed --cuts {args.cuts!r}") from None
    part = Partition.from_cuts(args.case, cuts, default_partition_domain(atom))
    cloud = partition_gammas(atom, part, _xi_grid(args))
    meta = _config_meta(args, partition=part.descriptor(), m=part.m,
                        simplex_sum_deviation=float(
                            np.max(np.abs(cloud.points.sum(axis=1) - 1.0))))
    if args.format == "json":
        tio.write_json(args.out, {
            **meta, "xi": [float(x) for x in cloud.xi_grid.samples],
            "points": [[float(v) for v in row] for row in cloud.points]})
    else:
        tio.export_cloud(args.out, cloud, metadata=meta)
    return 0


_COMMANDS = {
    "gamma": cmd_gamma,
    "spectrum": cmd_spectrum,
    "kernel": cmd_kernel,
    "verify": cmd_verify,
    "filter": cmd_filter,
    "algebra": cmd_algebra,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SymbolParseError, ValueError, OSError) as exc:
        print(f"tfloc {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
