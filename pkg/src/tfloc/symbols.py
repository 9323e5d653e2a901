"""Operator symbols on the phase plane.

A full symbol is a function a(r, s) of the two phase-plane coordinates.  The
library distinguishes the structured classes that admit specialized operator
forms: symbols of the first variable only, of the second variable only,
separable products, piecewise-constant first-variable symbols over a
partition, and a generic sampled escape hatch.

One-variable factors are ``Symbol1D`` objects: a vectorized callable plus
the metadata the quadrature rules need (breakpoints, support, realness, a
sup bound when known).  The CLI's tiny symbol DSL (const:c, indicator:a,b,
power:p, sampled:file) parses into Symbol1D.
"""

from __future__ import annotations

import math

import numpy as np

from .grids import LineGrid

__all__ = ["Symbol1D", "SymbolSpec", "SymbolParseError", "parse_symbol"]

_INF = float("inf")


class SymbolParseError(ValueError):
    """Malformed symbol descriptor; carries the offending position."""

    def __init__(self, text: str, position: int, message: str):
        super().__init__(f"symbol {text!r}: {message} (at position {position})")
        self.position = position


class Symbol1D:
    """Scalar function of one real variable with quadrature metadata."""

    def __init__(self, fn, descriptor: str, breakpoints=(), support=(-_INF, _INF),
                 is_real: bool = True, sup_bound: float | None = None):
        self.fn = fn
        self.descriptor = descriptor
        self.breakpoints = tuple(float(b) for b in breakpoints)
        self.support = (float(support[0]), float(support[1]))
        self.is_real = bool(is_real)
        self.sup_bound = sup_bound

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Symbol1D":
        c = complex(c)
        real = abs(c.imag) == 0.0
        val = c.real if real else c

        def fn(x):
            return np.full_like(x, val, dtype=float if real else complex)

        desc = f"const:{c.real:g}" if real else f"const:{c.real:g}{c.imag:+g}j"
        return cls(fn, desc, is_real=real, sup_bound=abs(c))

    @classmethod
    def indicator(cls, a: float, b: float) -> "Symbol1D":
        """Indicator of the closed interval [a, b]; endpoints may be +/-inf."""
        if not a < b:
            raise ValueError(f"indicator needs a < b, got [{a}, {b}]")

        def fn(x):
            return ((x >= a) & (x <= b)).astype(float)

        breaks = [v for v in (a, b) if math.isfinite(v)]
        return cls(fn, f"indicator:{a:g},{b:g}", breakpoints=breaks,
                   support=(a, b), sup_bound=1.0)

    @classmethod
    def power(cls, p: float) -> "Symbol1D":
        """x^p symbol for the positive scale axis; unbounded unless p == 0."""

        def fn(x):
            return np.power(x, p)

        return cls(fn, f"power:{p:g}",
                   sup_bound=1.0 if p == 0 else None)

    @classmethod
    def smooth_step(cls, scale: float = 4.0, log2_axis: bool = False) -> "Symbol1D":
        """Bounded smooth 0->1 ramp; in log2(x) when the axis is a scale axis."""

        if log2_axis:
            def fn(x):
                return 0.5 * (1.0 + np.tanh(np.log2(x) / scale))
            desc = f"logstep:{scale:g}"
        else:
            def fn(x):
                return 0.5 * (1.0 + np.tanh(x / scale))
            desc = f"step:{scale:g}"
        return cls(fn, desc, sup_bound=1.0)

    @classmethod
    def gaussian_bump(cls, width: float = 1.0, center: float = 0.0) -> "Symbol1D":
        def fn(x):
            return np.exp(-np.pi * ((x - center) / width) ** 2)

        return cls(fn, f"bump:{width:g}@{center:g}", sup_bound=1.0)

    @classmethod
    def cosine_window(cls, half_width: float = 2.0) -> "Symbol1D":
        """cos^2 taper supported on [-half_width, half_width] (C^1 cutoff)."""

        def fn(x):
            inside = np.abs(x) <= half_width
            return np.where(inside, np.cos(np.pi * x / (2 * half_width)) ** 2, 0.0)

        return cls(fn, f"coswin:{half_width:g}",
                    breakpoints=(-half_width, half_width),
                    support=(-half_width, half_width), sup_bound=1.0)

    @classmethod
    def sampled(cls, grid: LineGrid, values, descriptor: str = "sampled") -> "Symbol1D":
        values = np.asarray(values)
        if not np.all(np.isfinite(values)):
            raise ValueError("sampled symbol contains non-finite values")
        real = bool(np.max(np.abs(values.imag)) == 0.0) if np.iscomplexobj(values) else True
        xs = grid.samples

        if real:
            re = values.real.astype(float)

            def fn(x):
                return np.interp(x, xs, re, left=0.0, right=0.0)
        else:
            def fn(x):
                return (np.interp(x, xs, values.real, left=0.0, right=0.0)
                        + 1j * np.interp(x, xs, values.imag, left=0.0, right=0.0))

        return cls(fn, descriptor, support=(xs[0], xs[-1]), is_real=real,
                   sup_bound=float(np.max(np.abs(values))))

    @classmethod
    def piecewise(cls, pieces, coefficients) -> "Symbol1D":
        """Sum of coefficients times indicators of finite interval unions.

        ``pieces`` is a list of interval lists [(a, b), ...]; intervals are
        right-open so that adjacent pieces never double-count an edge.
        """
        coefficients = [complex(c) for c in coefficients]
        if len(pieces) != len(coefficients):
            raise ValueError("one coefficient per piece required")
        real = all(abs(c.imag) == 0.0 for c in coefficients)

        def fn(x):
            out = np.zeros_like(x, dtype=float if real else complex)
            for ivs, c in zip(pieces, coefficients):
                for a, b in ivs:
                    out = out + (c.real if real else c) * ((x >= a) & (x < b))
            return out

        breaks = sorted({v for ivs in pieces for ab in ivs for v in ab
                         if math.isfinite(v)})
        desc = "piecewise:" + ",".join(f"{c:g}" if isinstance(c, float)
                                       else f"{c.real:g}{c.imag:+g}j"
                                       for c in coefficients)
        return cls(fn, desc, breakpoints=breaks, is_real=real,
                   sup_bound=max(abs(c) for c in coefficients) if coefficients else 0.0)


def parse_symbol(text: str) -> Symbol1D:
    """Parse the CLI symbol DSL: const:c | indicator:a,b | power:p | sampled:file."""
    if ":" not in text:
        raise SymbolParseError(text, 0, "expected '<kind>:<args>'")
    kind, _, args = text.partition(":")
    pos = len(kind) + 1
    if kind == "const":
        try:
            return Symbol1D.constant(complex(args))
        except ValueError:
            raise SymbolParseError(text, pos, f"bad constant {args!r}") from None
    if kind == "indicator":
        parts = args.split(",")
        if len(parts) != 2:
            raise SymbolParseError(text, pos, "indicator needs two endpoints a,b")
        try:
            a, b = (float(p) for p in parts)
        except ValueError:
            raise SymbolParseError(text, pos, f"bad endpoint in {args!r}") from None
        if not a < b:
            raise SymbolParseError(text, pos, f"need a < b, got {a}, {b}")
        return Symbol1D.indicator(a, b)
    if kind == "power":
        try:
            return Symbol1D.power(float(args))
        except ValueError:
            raise SymbolParseError(text, pos, f"bad exponent {args!r}") from None
    if kind == "sampled":
        from .io import read_signal_csv  # cycle-free: io imports only grids
        try:
            f = read_signal_csv(args)
        except OSError as exc:
            raise SymbolParseError(text, pos, f"cannot read {args!r}: {exc}") from None
        return Symbol1D.sampled(f.grid, f.values, descriptor=f"sampled:{args}")
    raise SymbolParseError(text, 0, f"unknown kind {kind!r}")


class SymbolSpec:
    """Structured phase-plane symbol a(r, s)."""

    def __init__(self, kind: str, alpha: Symbol1D | None = None,
                 beta: Symbol1D | None = None, general_fn=None,
                 descriptor: str | None = None):
        if kind not in ("first", "second", "separable", "general"):
            raise ValueError(f"unknown symbol kind {kind!r}")
        self.kind = kind
        self.alpha = alpha
        self.beta = beta
        self.general_fn = general_fn
        self._descriptor = descriptor

    # -- constructors ---------------------------------------------------------

    @classmethod
    def first_variable(cls, alpha: Symbol1D) -> "SymbolSpec":
        return cls("first", alpha=alpha)

    @classmethod
    def second_variable(cls, beta: Symbol1D) -> "SymbolSpec":
        return cls("second", beta=beta)

    @classmethod
    def separable(cls, alpha: Symbol1D, beta: Symbol1D) -> "SymbolSpec":
        return cls("separable", alpha=alpha, beta=beta)

    @classmethod
    def piecewise_constant(cls, pieces, coefficients) -> "SymbolSpec":
        return cls("first", alpha=Symbol1D.piecewise(pieces, coefficients))

    @classmethod
    def general(cls, fn, descriptor: str = "general") -> "SymbolSpec":
        return cls("general", general_fn=fn, descriptor=descriptor)

    # -- queries ----------------------------------------------------------------

    @property
    def descriptor(self) -> str:
        if self._descriptor is not None:
            return self._descriptor
        if self.kind == "first":
            return f"a(r)={self.alpha.descriptor}"
        if self.kind == "second":
            return f"a(s)={self.beta.descriptor}"
        return f"a(r,s)=[{self.alpha.descriptor}]x[{self.beta.descriptor}]"

    @property
    def is_real(self) -> bool:
        parts = [p for p in (self.alpha, self.beta) if p is not None]
        if self.kind == "general":
            return False  # unknown; callers must not assume
        return all(p.is_real for p in parts)

    def evaluate_field(self, r_nodes, s_nodes) -> np.ndarray:
        """Sample a(r, s) on the product grid, shape (len(r), len(s))."""
        r = np.asarray(r_nodes, dtype=float)
        s = np.asarray(s_nodes, dtype=float)
        if self.kind == "first":
            col = np.asarray(self.alpha(r))
            vals = np.broadcast_to(col[:, None], (r.size, s.size)).copy()
        elif self.kind == "second":
            row = np.asarray(self.beta(s))
            vals = np.broadcast_to(row[None, :], (r.size, s.size)).copy()
        elif self.kind == "separable":
            vals = np.outer(self.alpha(r), self.beta(s))
        else:
            vals = np.asarray(self.general_fn(r[:, None], s[None, :]))
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"symbol {self.descriptor} is not finite on the grid")
        return vals
