"""Command-line interface.

Subcommands: ranges, gen, optimize, sweep, synthesize, bdrate.
Exit codes: 0 success, 2 validation error, 3 infeasible rate budget.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .camera import DEFAULT_CAMERA, load_camera
from .intervals import interval_table
from .metrics import bd_rate, psnr
from .optimize import InfeasibleBudgetError, sweep_lambda
from .pgm import read_pgm, write_pgm
from .pipeline import (
    build_problem,
    effective_camera,
    run_optimize,
    synthesize_image,
    tables_csv,
)
from .scene import Scene, gen_scene
from .validation import check_error_image

DEFAULT_SEED = 0


def _camera_from(args) -> "Camera":  # noqa: F821 - forward name for help only
    if args.config is None:
        return DEFAULT_CAMERA
    return load_camera(args.config)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        metavar="PATH",
        help="camera key/value file (defaults to the built-in synthetic camera)",
    )
    parser.add_argument(
        "--direction",
        choices=("+1", "-1"),
        default="+1",
        help="warp direction of the virtual view (default +1)",
    )
    parser.add_argument(
        "--baseline-scale",
        type=float,
        default=1.0,
        metavar="S",
        help="multiply the camera baseline (default 1.0)",
    )


def _load_scene(args) -> Scene:
    depth = read_pgm(args.depth)
    texture = read_pgm(args.texture) if args.texture else None
    if args.recon:
        recon = read_pgm(args.recon)
        if recon.shape != depth.shape:
            raise ValueError("recon shape does not match depth shape")
        errors = recon.astype(np.int64) - depth.astype(np.int64)
    else:
        errors = None
    return Scene(
        texture=texture,
        depth=depth,
        errors=check_error_image(errors, depth),
        baseline_scale=args.baseline_scale,
    )


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_ranges(args) -> int:
    cam = _camera_from(args)
    lines = ["v,lo,hi"]
    for v, interval in enumerate(interval_table(cam)):
        lines.append(f"{v},{interval.lo},{interval.hi}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_gen(args) -> int:
    scene = gen_scene(
        width=args.width,
        height=args.height,
        baseline_scale=args.baseline_scale,
        fg_depth=args.fg_depth,
        bg_depth=args.bg_depth,
        noise_sigma=args.sigma,
        seed=args.seed,
    )
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_pgm(out / "texture.pgm", scene.texture)
    write_pgm(out / "depth.pgm", scene.depth)
    write_pgm(out / "recon.pgm", scene.recon)
    print(f"wrote texture.pgm, depth.pgm, recon.pgm to {out}")
    return 0


def _cmd_optimize(args) -> int:
    scene = _load_scene(args)
    cam = _camera_from(args)
    direction = int(args.direction)
    adjusted, report = run_optimize(
        scene,
        cam,
        mode=args.mode,
        lam=args.lam,
        budget=args.rate_budget,
        sigma=args.sigma,
        direction=direction,
    )
    print(report.summary())
    if args.out:
        write_pgm(args.out, adjusted)
    if args.report:
        _write_text(args.report, report.rows_csv())
    if args.dump_tables:
        frame = build_problem(scene, cam, sigma=args.sigma, direction=direction)
        _write_text(args.dump_tables, tables_csv(frame))
    return 0


def _cmd_sweep(args) -> int:
    scene = _load_scene(args)
    cam = _camera_from(args)
    lambdas = [float(x) for x in args.lambdas.split(",") if x.strip()]
    if not lambdas:
        raise ValueError("at least one lambda required")
    if min(lambdas) < 0:
        raise ValueError("lambdas must be non-negative")
    frame = build_problem(scene, cam, sigma=args.sigma, direction=int(args.direction))
    rows = sweep_lambda(frame.problem, lambdas, mode=args.mode)
    lines = ["lambda,rate,distortion"]
    lines += [f"{lam:g},{rate:.6f},{dist:.9g}" for lam, rate, dist in rows]
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_synthesize(args) -> int:
    scene = _load_scene(args)
    if scene.texture is None:
        raise ValueError("synthesize requires --texture")
    cam = effective_camera(scene, _camera_from(args))
    virtual, filled, winner = synthesize_image(
        scene.texture, scene.depth, scene.errors, cam, int(args.direction)
    )
    write_pgm(args.out, virtual)
    if args.mask:
        write_pgm(args.mask, np.where(filled, 0, 255).astype(np.uint8))
    if args.winners:
        lines = ["y,target,source_x"]
        ys, ts = np.nonzero(winner >= 0)
        lines += [f"{y},{t},{winner[y, t]}" for y, t in zip(ys, ts)]
        _write_text(args.winners, "\n".join(lines) + "\n")
    holes = int((~filled).sum())
    print(f"synthesized {virtual.shape[1]}x{virtual.shape[0]} grid, {holes} holes")
    return 0


def _read_rd_csv(path: str) -> list[tuple[float, float]]:
    points = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                points.append((float(row[0]), float(row[1])))
            except ValueError:
                continue  # header row
    if len(points) < 2:
        raise ValueError(f"{path}: need at least 2 rate,quality rows")
    return points


def _cmd_bdrate(args) -> int:
    anchor = _read_rd_csv(args.anchor)
    test = _read_rd_csv(args.test)
    print(f"{bd_rate(anchor, test):+.3f}%")
    return 0


def _cmd_psnr(args) -> int:
    print(f"{psnr(read_pgm(args.a), read_pgm(args.b)):.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthopt",
        description=(
            "Adjust the coding errors of quantized depth maps inside their "
            "equal-disparity intervals, optimizing occlusion groups jointly "
            "under a Lagrangian rate-distortion cost."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ranges", help="dump zero-error change intervals as CSV")
    _add_common(p)
    p.add_argument("--out", metavar="PATH", help="output CSV (default stdout)")
    p.set_defaults(fn=_cmd_ranges)

    p = sub.add_parser("gen", help="generate a synthetic scene as PGM files")
    _add_common(p)
    p.add_argument("--width", type=int, default=96)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--fg-depth", type=int, default=210)
    p.add_argument("--bg-depth", type=int, default=60)
    p.add_argument(
        "--sigma", type=float, default=1.5, help="coding-noise std (default 1.5)"
    )
    p.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})"
    )
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.set_defaults(fn=_cmd_gen)

    def add_scene_inputs(p):
        p.add_argument("--depth", required=True, metavar="PGM")
        p.add_argument("--texture", metavar="PGM")
        p.add_argument(
            "--recon", metavar="PGM", help="initially-quantized depth (default: = depth)"
        )

    p = sub.add_parser("optimize", help="adjust a depth map's coding errors")
    _add_common(p)
    add_scene_inputs(p)
    p.add_argument(
        "--sigma", type=float, default=1.0, help="error-model std (default 1.0)"
    )
    p.add_argument("--mode", choices=("dp", "brute", "independent"), default="dp")
    budget = p.add_mutually_exclusive_group(required=True)
    budget.add_argument("--lambda", dest="lam", type=float, help="Lagrange multiplier")
    budget.add_argument("--rate-budget", type=float, help="total rate budget in bits")
    p.add_argument("--out", metavar="PGM", help="write the adjusted depth map")
    p.add_argument("--report", metavar="CSV", help="write per-group rows")
    p.add_argument("--dump-tables", metavar="CSV", help="write per-pixel tables")
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("sweep", help="rate/distortion totals over a lambda grid")
    _add_common(p)
    add_scene_inputs(p)
    p.add_argument(
        "--sigma", type=float, default=1.0, help="error-model std (default 1.0)"
    )
    p.add_argument("--mode", choices=("dp", "brute", "independent"), default="dp")
    p.add_argument("--lambdas", required=True, help="comma-separated multipliers")
    p.add_argument("--out", metavar="CSV", help="output CSV (default stdout)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("synthesize", help="render the virtual view of a scene")
    _add_common(p)
    add_scene_inputs(p)
    p.add_argument("--out", required=True, metavar="PGM")
    p.add_argument("--mask", metavar="PGM", help="write hole mask (255 = hole)")
    p.add_argument("--winners", metavar="CSV", help="write y,target,source_x rows")
    p.set_defaults(fn=_cmd_synthesize)

    p = sub.add_parser("bdrate", help="Bjontegaard delta bitrate of two RD curves")
    p.add_argument("--anchor", required=True, metavar="CSV", help="rate,quality rows")
    p.add_argument("--test", required=True, metavar="CSV", help="rate,quality rows")
    p.set_defaults(fn=_cmd_bdrate)

    p = sub.add_parser("psnr", help="PSNR between two PGM images")
    p.add_argument("a", metavar="PGM")
    p.add_argument("b", metavar="PGM")
    p.set_defaults(fn=_cmd_psnr)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InfeasibleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
