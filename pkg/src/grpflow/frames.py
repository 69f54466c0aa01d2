"""Frame file formats: version-stamped CSV for 1D profiles and space-time
stacks, legacy ASCII structured-grid VTK for 2D fields.

These formats are the contract consumed by the plotting package; the version
tag rides in the leading comment line.
"""

import numpy as np

from .errors import GridMismatch, UsageError

FORMAT_TAG = "grpflow-frame v1"

__all__ = ["FORMAT_TAG", "write_frame_csv", "read_frame_csv",
           "write_spacetime_csv", "write_vtk", "read_vtk", "compare_frames"]


def _fmt(x):
    return f"{x:.17g}"


def write_frame_csv(path, columns: dict, meta: str = ""):
    """columns: ordered name -> 1D array; first column is the coordinate."""
    names = list(columns)
    arrays = [np.asarray(columns[k], dtype=float) for k in names]
    n = len(arrays[0])
    if any(len(a) != n for a in arrays):
        raise UsageError("frame columns must share a length")
    with open(path, "w") as fh:
        fh.write(f"# {FORMAT_TAG} {meta}".rstrip() + "\n")
        fh.write(",".join(names) + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(a[i]) for a in arrays) + "\n")


def read_frame_csv(path):
    """Returns (columns dict, meta string)."""
    meta = ""
    with open(path) as fh:
        lines = fh.read().splitlines()
    rows = []
    header = None
    for line in lines:
        if line.startswith("#"):
            meta = line.lstrip("# ").strip()
            continue
        if not line.strip():
            continue
        if header is None:
            header = [h.strip() for h in line.split(",")]
            continue
        rows.append([float(v) for v in line.split(",")])
    if header is None or not rows:
        raise UsageError(f"{path}: not a frame CSV")
    data = np.asarray(rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(header)}, meta


def write_spacetime_csv(path, frames, meta: str = ""):
    """Stacked (x, t, v) rows from a ScalarFrame sequence."""
    with open(path, "w") as fh:
        fh.write(f"# {FORMAT_TAG} {meta}".rstrip() + "\n")
        fh.write("x,t,v\n")
        for fr in frames:
            for xi, vi in zip(fr.x, fr.v):
                fh.write(f"{_fmt(xi)},{_fmt(fr.t)},{_fmt(vi)}\n")


def write_vtk(path, x0, y0, dx, dy, fields: dict, velocity=None, meta: str = ""):
    """Legacy ASCII STRUCTURED_POINTS frame over cell centers.

    fields: name -> (nx, ny) scalar arrays; velocity: (vx, vy) pair.
    """
    names = list(fields)
    first = np.asarray(fields[names[0]])
    nx, ny = first.shape
    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(f"{FORMAT_TAG} {meta}".rstrip() + "\n")
        fh.write("ASCII\nDATASET STRUCTURED_POINTS\n")
        fh.write(f"DIMENSIONS {nx} {ny} 1\n")
        fh.write(f"ORIGIN {_fmt(x0 + dx / 2)} {_fmt(y0 + dy / 2)} 0\n")
        fh.write(f"SPACING {_fmt(dx)} {_fmt(dy)} 1\n")
        fh.write(f"POINT_DATA {nx * ny}\n")
        for name in names:
            arr = np.asarray(fields[name], dtype=float)
            fh.write(f"SCALARS {name} double\nLOOKUP_TABLE default\n")
            for j in range(ny):
                fh.write(" ".join(_fmt(arr[i, j]) for i in range(nx)) + "\n")
        if velocity is not None:
            vx = np.asarray(velocity[0], dtype=float)
            vy = np.asarray(velocity[1], dtype=float)
            fh.write("VECTORS velocity double\n")
            for j in range(ny):
                for i in range(nx):
                    fh.write(f"{_fmt(vx[i, j])} {_fmt(vy[i, j])} 0\n")


def read_vtk(path):
    """Reads the subset of legacy VTK written by write_vtk.

    Returns dict with 'origin', 'spacing', 'dims', scalar fields, and
    'velocity' when present.
    """
    with open(path) as fh:
        tokens = fh.read().split("\n")
    out = {"fields": {}}
    nx = ny = None
    i = 0
    while i < len(tokens):
        line = tokens[i].strip()
        parts = line.split()
        if not parts:
            i += 1
            continue
        key = parts[0].upper()
        if key == "DIMENSIONS":
            nx, ny = int(parts[1]), int(parts[2])
            out["dims"] = (nx, ny)
        elif key == "ORIGIN":
            out["origin"] = (float(parts[1]), float(parts[2]))
        elif key == "SPACING":
            out["spacing"] = (float(parts[1]), float(parts[2]))
        elif key == "SCALARS":
            name = parts[1]
            i += 1  # LOOKUP_TABLE line
            vals = []
            while len(vals) < nx * ny:
                i += 1
                vals.extend(float(v) for v in tokens[i].split())
            out["fields"][name] = np.asarray(vals).reshape(ny, nx).T
        elif key == "VECTORS":
            vals = []
            while len(vals) < 3 * nx * ny:
                i += 1
                vals.extend(float(v) for v in tokens[i].split())
            arr = np.asarray(vals).reshape(ny, nx, 3)
            out["velocity"] = (arr[:, :, 0].T, arr[:, :, 1].T)
        i += 1
    if "dims" not in out or not out["fields"]:
        raise UsageError(f"{path}: not a structured-points VTK frame")
    return out


def compare_frames(a: dict, b: dict):
    """L1/L2/Linf per shared column of two frame CSV dicts on a common grid."""
    xa, xb = a.get("x"), b.get("x")
    if xa is None or xb is None:
        raise UsageError("frames lack an x column")
    if len(xa) != len(xb) or not np.allclose(xa, xb, rtol=0, atol=1e-12):
        raise GridMismatch("frame grids differ; interpolation is not performed")
    dx = np.diff(xa).mean() if len(xa) > 1 else 1.0
    norms = {}
    for key in a:
        if key == "x" or key not in b:
            continue
        d = np.abs(a[key] - b[key])
        norms[key] = {"L1": float(np.sum(d) * dx),
                      "L2": float(np.sqrt(np.sum(d**2) * dx)),
                      "Linf": float(np.max(d))}
    return norms
