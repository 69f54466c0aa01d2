"""Command line: run benchmark cases, compare frames, convergence studies.

Exit codes: 0 ok, 1 solver failure or threshold miss, 2 usage error.
"""

import argparse
import os
import sys
import time

import numpy as np

from . import burgers, cases, frames, fvm1d, fvm2d
from .errors import GridMismatch, GrpflowError, UnknownCase, UsageError

DEFAULT_OUTDIR_ENV = "GRPFLOW_OUTDIR"


def _outdir(args):
    out = args.outdir or os.environ.get(DEFAULT_OUTDIR_ENV) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _load_case(name_or_path):
    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            return cases.load_case(fh.read())
    return cases.builtin(name_or_path)


def _report(pairs):
    for key, val in pairs:
        print(f"{key} = {val}")


def cmd_run(args):
    cfg = _load_case(args.case)
    out = _outdir(args)
    t0 = time.perf_counter()
    written = []
    errors = {}
    passed = True

    if cfg.dim == 0:
        frs = burgers.run_burgers(cfg, cells=args.cells, t_end=args.t_end)
        last = frs[-1]
        path = os.path.join(out, f"{cfg.name}-t{last.t:.6g}.csv")
        frames.write_frame_csv(path, {"x": last.x, "v": last.v},
                               meta=f"case={cfg.name} t={last.t:.17g}")
        st_path = os.path.join(out, f"{cfg.name}-spacetime.csv")
        frames.write_spacetime_csv(st_path, frs, meta=f"case={cfg.name}")
        written = [path, st_path]
        cells = len(last.x)
    elif cfg.dim == 1:
        frs = fvm1d.run(cfg, cells=args.cells, cfl=args.cfl, t_end=args.t_end,
                        bc_mode=args.bc_mode)
        for fr in frs if args.all_frames else frs[-1:]:
            path = os.path.join(out, f"{cfg.name}-t{fr.t:.6g}.csv")
            frames.write_frame_csv(path, {"x": fr.x, "rho": fr.rho, "v": fr.v,
                                          "p": fr.p},
                                   meta=f"case={cfg.name} t={fr.t:.17g}")
            written.append(path)
        last = frs[-1]
        cells = len(last.x)
        if cfg.reference is not None:
            ref = cfg.reference(last.x, last.t)
            dx = last.x[1] - last.x[0]
            for i, name in enumerate(("rho", "v", "p")):
                d = np.abs(getattr(last, name) - ref[i])
                errors[name] = {"L1": float(np.sum(d) * dx), "Linf": float(np.max(d))}
        if cfg.steady_stop is not None and last.residual > cfg.steady_stop:
            passed = False
    else:
        frs = fvm2d.run2d(cfg, cells=args.cells, cfl=args.cfl, t_end=args.t_end,
                          bc_mode=args.bc_mode)
        last = frs[-1]
        path = os.path.join(out, f"{cfg.name}-t{last.t:.6g}.vtk")
        frames.write_vtk(path, last.x0, last.y0, last.dx, last.dy,
                         {"rho": last.rho, "p": last.p},
                         velocity=(last.vx, last.vy),
                         meta=f"case={cfg.name} t={last.t:.17g}")
        written = [path]
        # wall-adjacent line cut in the 1D profile format
        j = 0
        x_cut = last.x0 + (np.arange(last.rho.shape[0]) + 0.5) * last.dx
        cut = os.path.join(out, f"{cfg.name}-t{last.t:.6g}-cut-y{last.y0 + 0.5 * last.dy:.4g}.csv")
        frames.write_frame_csv(cut, {"x": x_cut, "rho": last.rho[:, j],
                                     "v": last.vx[:, j], "p": last.p[:, j]},
                               meta=f"case={cfg.name} t={last.t:.17g} cut=y0")
        written.append(cut)
        cells = f"{last.rho.shape[0]}x{last.rho.shape[1]}"

    wall = time.perf_counter() - t0
    print(f"case {cfg.name}: advanced to t={last.t:.6g} in {wall:.2f}s")
    _report([("case", cfg.name), ("cells", cells), ("t_final", f"{last.t:.17g}"),
             ("wall_clock_s", f"{wall:.3f}")])
    if getattr(last, "residual", None) is not None and cfg.dim == 1:
        _report([("steady_residual", f"{last.residual:.6e}")])
    for var, norms in errors.items():
        for norm, val in norms.items():
            _report([(f"err_{var}_{norm}", f"{val:.6e}")])
    for path in written:
        _report([("frame", path)])
    return 0 if passed else 1


def cmd_compare(args):
    a, _ = frames.read_frame_csv(args.frame_a)
    b, _ = frames.read_frame_csv(args.frame_b)
    norms = frames.compare_frames(a, b)
    for var, vals in norms.items():
        for norm, val in vals.items():
            _report([(f"{var}_{norm}", f"{val:.17g}")])
    return 0


def cmd_convergence(args):
    cfg = _load_case(args.case)
    cell_list = [int(c) for c in args.cells.split(",")]
    if len(cell_list) < 2:
        raise UsageError("convergence needs at least two cell counts")
    errs = []
    for n in cell_list:
        fr = fvm1d.run(cfg, cells=n, t_end=args.t_end)[-1]
        if cfg.reference is not None:
            ref = cfg.reference(fr.x, fr.t)
            errs.append(float(np.sum(np.abs(fr.rho - ref[0])) * (fr.x[1] - fr.x[0])))
        else:
            errs.append(fr)
    if cfg.reference is None:
        # Richardson: successive-difference norms
        diffs = []
        for a, b in zip(errs[:-1], errs[1:]):
            coarse = a.rho
            fine = b.rho.reshape(len(a.rho), -1).mean(axis=1)
            diffs.append(float(np.mean(np.abs(coarse - fine))))
        orders = [np.log2(diffs[i] / diffs[i + 1]) for i in range(len(diffs) - 1)]
        for n, d in zip(cell_list[:-1], diffs):
            _report([(f"diff_{n}", f"{d:.6e}")])
    else:
        orders = [np.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)]
        for n, e in zip(cell_list, errs):
            _report([(f"err_L1_rho_{n}", f"{e:.6e}")])
    for i, o in enumerate(orders):
        _report([(f"order_{cell_list[i]}_{cell_list[i + 1]}", f"{o:.4f}")])
    return 0


def cmd_list_cases(args):
    for name in cases.case_names():
        cfg = cases.builtin(name)
        print(f"{name}: dim={cfg.dim} gamma={cfg.gamma:.6g} cells={cfg.cells} "
              f"cfl={cfg.cfl} t_end={cfg.t_end}")
    return 0


def cmd_export_case(args):
    cfg = _load_case(args.case)
    text = cases.export_case(cfg)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="grpflow",
                                 description="GRP finite-volume flow solver")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a benchmark case")
    run.add_argument("case", help="builtin case name or case file path")
    run.add_argument("--cells", type=lambda s: tuple(int(v) for v in s.split(","))
                     if "," in s else int(s), default=None)
    run.add_argument("--cfl", type=float, default=None)
    run.add_argument("--t-end", type=float, default=None)
    run.add_argument("--outdir", default=None)
    run.add_argument("--bc-mode", choices=("one-sided-grp", "reflective-ghost"),
                     default="one-sided-grp")
    run.add_argument("--all-frames", action="store_true")
    run.set_defaults(fn=cmd_run)

    cmp_ = sub.add_parser("compare", help="norms between two CSV frames")
    cmp_.add_argument("frame_a")
    cmp_.add_argument("frame_b")
    cmp_.set_defaults(fn=cmd_compare)

    conv = sub.add_parser("convergence", help="grid-refinement study")
    conv.add_argument("case")
    conv.add_argument("--cells", required=True, help="comma list, e.g. 100,200,400")
    conv.add_argument("--t-end", type=float, default=None)
    conv.set_defaults(fn=cmd_convergence)

    ls = sub.add_parser("list-cases", help="list builtin cases")
    ls.set_defaults(fn=cmd_list_cases)

    exp = sub.add_parser("export-case", help="write a case file")
    exp.add_argument("case")
    exp.add_argument("--output", default=None)
    exp.set_defaults(fn=cmd_export_case)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, GridMismatch, UnknownCase) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GrpflowError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
