"""Readers for the solver's frame formats (CSV profiles, space-time CSV,
legacy ASCII structured-points VTK)."""

import numpy as np


class FormatError(ValueError):
    pass


def read_csv(path):
    """Returns (columns dict, meta comment string)."""
    meta = ""
    header = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
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
        raise FormatError(f"{path}: no CSV frame content")
    data = np.asarray(rows)
    return {name: data[:, i] for i, name in enumerate(header)}, meta


def spacetime_grid(cols):
    """Reshape stacked (x, t, v) columns onto the (x, t) product grid."""
    for key in ("x", "t", "v"):
        if key not in cols:
            raise FormatError("space-time frame needs x, t, v columns")
    x = np.unique(cols["x"])
    t = np.unique(cols["t"])
    if len(x) * len(t) != len(cols["v"]):
        raise FormatError("space-time frame is not a full product grid")
    order = np.lexsort((cols["x"], cols["t"]))
    v = cols["v"][order].reshape(len(t), len(x))
    return x, t, v


def read_vtk(path):
    """Reads a legacy ASCII STRUCTURED_POINTS frame.

    Returns dict with dims, origin, spacing, scalar 'fields', and optional
    'velocity' pair; field arrays are indexed [i, j] (x-major).
    """
    with open(path) as fh:
        lines = fh.read().split("\n")
    out = {"fields": {}}
    nx = ny = None
    i = 0
    while i < len(lines):
        parts = lines[i].split()
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
            i += 1  # LOOKUP_TABLE
            vals = []
            while len(vals) < nx * ny:
                i += 1
                vals.extend(float(v) for v in lines[i].split())
            out["fields"][name] = np.asarray(vals).reshape(ny, nx).T
        elif key == "VECTORS":
            vals = []
            while len(vals) < 3 * nx * ny:
                i += 1
                vals.extend(float(v) for v in lines[i].split())
            arr = np.asarray(vals).reshape(ny, nx, 3)
            out["velocity"] = (arr[:, :, 0].T, arr[:, :, 1].T)
        i += 1
    if "dims" not in out or not out["fields"]:
        raise FormatError(f"{path}: not a structured-points VTK frame")
    return out
