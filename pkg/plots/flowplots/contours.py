"""Contour figures: space-time CSV stacks and 2D VTK density fields.

Thirty equally spaced contour levels by default, matching the benchmark
figure convention.
"""

import argparse
import sys

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .readers import FormatError, read_csv, read_vtk, spacetime_grid  # noqa: E402

DEFAULT_LEVELS = 30


def plot_contours(path, output, variable="rho", levels=DEFAULT_LEVELS):
    """Contour a space-time CSV (x, t, v) or a VTK frame field."""
    if levels < 1:
        raise FormatError("contour level count must be positive")
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if path.endswith(".vtk"):
        data = read_vtk(path)
        if variable not in data["fields"]:
            raise FormatError(f"{path}: no field {variable!r} "
                              f"(has {sorted(data['fields'])})")
        f = data["fields"][variable]
        nx, ny = data["dims"]
        ox, oy = data.get("origin", (0.0, 0.0))
        dx, dy = data.get("spacing", (1.0, 1.0))
        x = ox + np.arange(nx) * dx
        y = oy + np.arange(ny) * dy
        lv = np.linspace(f.min(), f.max(), levels + 2)[1:-1]
        ax.contour(x, y, f.T, levels=lv, linewidths=0.5, colors="k")
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
    else:
        cols, _ = read_csv(path)
        x, t, v = spacetime_grid(cols)
        lv = np.linspace(v.min(), v.max(), levels + 2)[1:-1]
        ax.contour(x, t, v, levels=lv, linewidths=0.5, colors="k")
        ax.set_xlabel("x")
        ax.set_ylabel("t")
    fig.tight_layout()
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def main(argv=None):
    ap = argparse.ArgumentParser(prog="flowplot-contours",
                                 description="contour figure from a frame file")
    ap.add_argument("frame", help="space-time CSV or VTK frame")
    ap.add_argument("--variable", default="rho", help="VTK field name")
    ap.add_argument("--levels", type=int, default=DEFAULT_LEVELS)
    ap.add_argument("--output", required=True)
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        plot_contours(args.frame, args.output, variable=args.variable,
                      levels=args.levels)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
