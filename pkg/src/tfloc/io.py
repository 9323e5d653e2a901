"""CSV and JSON export/import.

All writers are atomic (write to a temporary file in the target directory,
then rename), so failed runs never leave partial outputs.  Floats are
rendered with ``%.17g`` (full double precision) and JSON objects are written
with sorted keys, making repeated runs byte-identical.

Formats
-------
signal        header ``x,re,im``
field         header ``z,omega,re,im``
gamma         header ``xi,re,im``
kernel        header ``xi,omega,re,im``
matrix        header ``i,j,re,im``
cloud         header ``xi,z1,...,zm``
atom          time samples as a signal CSV plus a metadata sidecar
Every CSV gets a JSON sidecar at ``<path>.meta.json`` recording provenance.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile

import numpy as np

from .grids import LineGrid, SampledFunction, ScaleGrid

__all__ = [
    "atomic_write_text",
    "write_json",
    "sidecar_path",
    "write_signal_csv",
    "read_signal_csv",
    "export_atom",
    "import_atom",
    "export_field",
    "export_gamma",
    "export_kernel",
    "export_matrix",
    "export_cloud",
]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def atomic_write_text(path: str, text: str):
    """Write text to ``path`` via a temporary file and atomic rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_default(o):
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def write_json(path: str, obj):
    atomic_write_text(path, json.dumps(obj, sort_keys=True, indent=2,
                                       default=_json_default) + "\n")


def sidecar_path(path: str) -> str:
    return f"{path}.meta.json"


def _rows_to_csv(header: list[str], rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- signals -----------------------------------------------------------------

def write_signal_csv(path: str, f: SampledFunction, metadata: dict | None = None):
    rows = ((_fmt(x), _fmt(v.real), _fmt(v.imag))
            for x, v in zip(f.grid.samples, f.values))
    atomic_write_text(path, _rows_to_csv(["x", "re", "im"], rows))
    if metadata is not None:
        write_json(sidecar_path(path), metadata)


def read_signal_csv(path: str) -> SampledFunction:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["x", "re", "im"]:
            raise ValueError(f"{path}: expected header 'x,re,im', got {header}")
        xs, vals = [], []
        for row in reader:
            if not row:
                continue
            xs.append(float(row[0]))
            vals.append(float(row[1]) + 1j * float(row[2]))
    if len(xs) < 2:
        raise ValueError(f"{path}: need at least 2 samples")
    xs = np.asarray(xs)
    steps = np.diff(xs)
    step = steps[0]
    if step <= 0 or np.max(np.abs(steps - step)) > 1e-9 * abs(step):
        raise ValueError(f"{path}: samples are not uniformly spaced")
    return SampledFunction(LineGrid(xs[0], step, len(xs)), np.asarray(vals))


# -- atoms -------------------------------------------------------------------

def export_atom(path: str, atom):
    write_signal_csv(path, atom.time_samples)
    write_json(sidecar_path(path), atom.to_metadata())


def import_atom(path: str):
    """Rebuild an atom from CSV samples and its sidecar.

    Imported atoms have no closed-form profiles; fiber evaluations fall back
    to linear interpolation of the stored samples (documented, lower
    accuracy).
    """
    from .atoms import Atom
    from .fourier import fourier

    with open(sidecar_path(path)) as fh:
        md = json.load(fh)
    time_samples = read_signal_csv(path)
    freq_samples = fourier(time_samples, "forward")
    g1md = md["g1"]
    if g1md["kind"] == "scale":
        g1 = ScaleGrid(g1md["u_min"], g1md["u_max"], g1md["count"])
    else:
        g1 = LineGrid(g1md["start"], g1md["step"], g1md["count"])
    return Atom(md["case"], md["name"], time_samples, freq_samples,
                md["normalization"], g1,
                freq_support=(1e-6, 1.0 / (2 * time_samples.grid.step)),
                time_support=(time_samples.grid.start,
                              time_samples.grid.stop),
                healthy_range=tuple(md["healthy_range"]),
                fiber_tol=md["fiber_tol"])


# -- library objects ----------------------------------------------------------

def export_field(path: str, field, metadata: dict | None = None):
    g1_axis = field.g1.nodes if isinstance(field.g1, ScaleGrid) else field.g1.samples
    rows = []
    for k, z in enumerate(g1_axis):
        for i, w in enumerate(field.g2.samples):
            v = field.values[k, i]
            rows.append((_fmt(z), _fmt(w), _fmt(v.real), _fmt(v.imag)))
    atomic_write_text(path, _rows_to_csv(["z", "omega", "re", "im"], rows))
    md = {"case": field.case, "g2_kind": field.g2_kind,
          "shape": [field.g1.count, field.g2.count]}
    md.update(metadata or {})
    write_json(sidecar_path(path), md)


def export_gamma(path: str, gf, metadata: dict | None = None):
    rows = ((_fmt(x), _fmt(v.real), _fmt(v.imag))
            for x, v in zip(gf.grid.samples, gf.values))
    atomic_write_text(path, _rows_to_csv(["xi", "re", "im"], rows))
    md = {"atom": gf.atom_name, "symbol": gf.symbol_descriptor,
          "rule": gf.rule, "unbounded": gf.unbounded,
          "grid": {"start": gf.grid.start, "step": gf.grid.step,
                   "count": gf.grid.count}}
    md.update(metadata or {})
    write_json(sidecar_path(path), md)


def export_kernel(path: str, km, metadata: dict | None = None):
    xs = km.grid.samples
    rows = []
    for i, xi in enumerate(xs):
        for j, om in enumerate(xs):
            v = km.values[i, j]
            rows.append((_fmt(xi), _fmt(om), _fmt(v.real), _fmt(v.imag)))
    atomic_write_text(path, _rows_to_csv(["xi", "omega", "re", "im"], rows))
    md = {"atom": km.atom_name, "kind": km.kind,
          "symbol": km.symbol_descriptor,
          "grid": {"start": km.grid.start, "step": km.grid.step,
                   "count": km.grid.count}}
    md.update(metadata or {})
    write_json(sidecar_path(path), md)


def export_matrix(path: str, M, metadata: dict | None = None):
    n = M.grid.count
    rows = []
    for i in range(n):
        for j in range(n):
            v = M.values[i, j]
            rows.append((str(i), str(j), _fmt(v.real), _fmt(v.imag)))
    atomic_write_text(path, _rows_to_csv(["i", "j", "re", "im"], rows))
    md = {"atom": M.atom_name, "builder": M.builder,
          "symbol": M.symbol_descriptor, "hermitian": M.is_hermitian,
          "grid": {"start": M.grid.start, "step": M.grid.step,
                   "count": M.grid.count}}
    md.update(metadata or {})
    write_json(sidecar_path(path), md)


def export_cloud(path: str, cloud, metadata: dict | None = None):
    header = ["xi"] + [f"z{k + 1}" for k in range(cloud.m)]
    rows = []
    for x, pt in zip(cloud.xi_grid.samples, cloud.points):
        rows.append((_fmt(x), *(_fmt(v) for v in pt)))
    atomic_write_text(path, _rows_to_csv(header, rows))
    md = {"atom": cloud.atom_name, "partition": cloud.partition_descriptor,
          "m": cloud.m,
          "grid": {"start": cloud.xi_grid.start, "step": cloud.xi_grid.step,
                   "count": cloud.xi_grid.count}}
    md.update(metadata or {})
    write_json(sidecar_path(path), md)
