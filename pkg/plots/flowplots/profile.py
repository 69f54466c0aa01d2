"""1D profile figures: computed frames as markers, reference as a line."""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .readers import FormatError, read_csv  # noqa: E402

MARKERS = ("s", "o", "^", "v")   # squares first, dots second


def plot_profile(frames, variable, output, reference=None, labels=None):
    """Render marker profiles of ``variable`` from one or more frame CSVs,
    optionally overlaying a reference frame as a solid line."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for k, path in enumerate(frames):
        cols, meta = read_csv(path)
        if variable not in cols:
            raise FormatError(f"{path}: no column {variable!r} (has {sorted(cols)})")
        label = labels[k] if labels else path
        ax.plot(cols["x"], cols[variable], MARKERS[k % len(MARKERS)],
                ms=3.5, mfc="none", label=label)
    if reference is not None:
        rcols, _ = read_csv(reference)
        if variable not in rcols:
            raise FormatError(f"{reference}: no column {variable!r}")
        ax.plot(rcols["x"], rcols[variable], "k-", lw=1.0, label="reference")
    ax.set_xlabel("x")
    ax.set_ylabel(variable)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def main(argv=None):
    ap = argparse.ArgumentParser(prog="flowplot-profile",
                                 description="line-profile figure from frame CSVs")
    ap.add_argument("frames", nargs="+", help="frame CSV paths (markers)")
    ap.add_argument("--variable", default="rho")
    ap.add_argument("--reference", default=None, help="reference CSV (solid line)")
    ap.add_argument("--output", required=True)
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        plot_profile(args.frames, args.variable, args.output,
                     reference=args.reference)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
