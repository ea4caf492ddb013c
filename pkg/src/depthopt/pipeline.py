"""End-to-end runs: scenes to problems, solved depth maps and reports."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .camera import Camera
from .cost import PixelTables, build_tables
from .intervals import equal_error_interval
from .optimize import (
    BisectionResult,
    Problem,
    ProblemSolution,
    bisect_lambda,
    solve_problem,
)
from .scene import Scene
from .validation import check_direction
from .warping import Pixel, extract_groups, synthesize_row, texture_weights


def effective_camera(scene: Scene, cam: Camera) -> Camera:
    return cam.with_baseline_scale(scene.baseline_scale)


@dataclass
class FrameProblem:
    """A scene's optimization inputs plus the bookkeeping the report needs."""

    problem: Problem
    targets: list[int]  # virtual-view target per group, grid units
    cam: Camera  # effective camera (baseline scale applied)
    direction: int


def build_problem(
    scene: Scene,
    cam: Camera,
    sigma: float = math.inf,
    direction: int = 1,
) -> FrameProblem:
    """Extract every row's occlusion groups and lone pixels with their
    probability/distortion/rate tables.

    The rate predictor of a pixel is the initially-quantized level of its
    left neighbor (its own uncompressed level in column 0).  Distortion
    weights come from the texture gradient when the scene has texture.
    """
    direction = check_direction(direction)
    cam = effective_camera(scene, cam)
    recon = scene.recon.astype(np.int64)
    problem = Problem()
    targets: list[int] = []

    def predictor_for(x: int, y: int) -> int | None:
        return int(recon[y, x - 1]) if x > 0 else None

    for y in range(scene.depth.shape[0]):
        weights = None
        if scene.texture is not None:
            weights = texture_weights(scene.texture[y])
        groups = extract_groups(
            scene.depth[y], scene.errors[y], cam, direction, weights, row=y
        )
        grouped: set[int] = set()
        for group in groups:
            tables = [
                build_tables(p, cam, sigma, predictor=predictor_for(p.x, y))
                for p in group.pixels
            ]
            for p in group.pixels:
                grouped.add(p.x)
            problem.groups.append(tables)
            targets.append(group.target)
        for x in range(scene.depth.shape[1]):
            if x in grouped:
                continue
            level = int(scene.depth[y, x])
            error = int(scene.errors[y, x])
            pixel = Pixel(
                x=x,
                y=y,
                level=level,
                error=error,
                candidates=equal_error_interval(level, error, cam),
                weight=float(weights[x]) if weights is not None else 1.0,
            )
            problem.singles.append(
                build_tables(pixel, cam, sigma, predictor=predictor_for(x, y))
            )
    return FrameProblem(problem=problem, targets=targets, cam=cam, direction=direction)


@dataclass
class GroupRow:
    gid: int
    target: int
    size: int
    changes: tuple[int, ...]
    rate: float
    distortion: float
    true_cost: float


@dataclass
class Report:
    """Totals and per-group rows of one optimization run."""

    lam: float
    mode: str
    rate: float
    distortion: float
    cost: float
    n_pixels: int
    n_groups: int
    n_grouped_pixels: int
    rows: list[GroupRow] = field(default_factory=list)

    def summary(self) -> str:
        return (
            f"mode={self.mode} lambda={self.lam:g} pixels={self.n_pixels} "
            f"groups={self.n_groups} grouped_pixels={self.n_grouped_pixels} "
            f"rate={self.rate:.3f}bits distortion={self.distortion:.6g} "
            f"cost={self.cost:.6g}"
        )

    def rows_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["group", "target", "size", "changes", "rate", "distortion", "true_cost"]
        )
        for r in self.rows:
            writer.writerow(
                [
                    r.gid,
                    r.target,
                    r.size,
                    ";".join(str(c) for c in r.changes),
                    f"{r.rate:.6f}",
                    f"{r.distortion:.9g}",
                    f"{r.true_cost:.9g}",
                ]
            )
        return buf.getvalue()


def tables_csv(frame: FrameProblem) -> str:
    """Debug dump of every pixel's tables (grouped pixels first)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["pixel", "change", "p", "distortion", "rate"])

    def dump(t: PixelTables) -> None:
        for i, dv in enumerate(t.changes.tolist()):
            writer.writerow(
                [
                    f"{t.pixel.y}:{t.pixel.x}",
                    dv,
                    f"{t.p[i]:.9g}",
                    f"{t.d[i]:.9g}",
                    f"{t.r[i]:.9g}",
                ]
            )

    for tables in frame.problem.groups:
        for t in tables:
            dump(t)
    for t in frame.problem.singles:
        dump(t)
    return buf.getvalue()


def _apply_solution(scene: Scene, problem: Problem, sol: ProblemSolution) -> np.ndarray:
    adjusted = scene.recon.astype(np.int64)
    for tables, gsol in zip(problem.groups, sol.group_solutions):
        for t, dv in zip(tables, gsol.changes):
            adjusted[t.pixel.y, t.pixel.x] = t.pixel.level + dv
    for t, dv in zip(problem.singles, sol.single_changes):
        adjusted[t.pixel.y, t.pixel.x] = t.pixel.level + dv
    return adjusted.astype(np.uint8)


def run_optimize(
    scene: Scene,
    cam: Camera,
    mode: str = "dp",
    lam: float | None = None,
    budget: float | None = None,
    sigma: float = 1.0,
    direction: int = 1,
    bisect_tol: float = 1e-3,
) -> tuple[np.ndarray, Report]:
    """Adjust a scene's depth map and report rate/distortion totals.

    Exactly one of `lam` (fixed multiplier) and `budget` (bits, resolved by
    bisection) must be given.  Occlusion groups are solved jointly with
    `mode`; pixels outside any group are always optimized independently.
    Every adjusted level stays inside its pixel's candidate interval, so
    the synthesized virtual view is unchanged.
    """
    if (lam is None) == (budget is None):
        raise ValueError("exactly one of lam and budget is required")
    frame = build_problem(scene, cam, sigma=sigma, direction=direction)
    if budget is not None:
        result: BisectionResult = bisect_lambda(
            frame.problem, budget, tol=bisect_tol, mode=mode
        )
        sol = result.solution
    else:
        if lam < 0:
            raise ValueError("lambda must be non-negative")
        sol = solve_problem(frame.problem, lam, mode)

    adjusted = _apply_solution(scene, frame.problem, sol)
    rows = [
        GroupRow(
            gid=i,
            target=target,
            size=len(tables),
            changes=gsol.changes,
            rate=gsol.rate,
            distortion=gsol.distortion,
            true_cost=gsol.true_cost,
        )
        for i, (tables, target, gsol) in enumerate(
            zip(frame.problem.groups, frame.targets, sol.group_solutions)
        )
    ]
    report = Report(
        lam=sol.lam,
        mode=mode,
        rate=sol.rate,
        distortion=sol.distortion,
        cost=sol.cost,
        n_pixels=scene.depth.size,
        n_groups=len(frame.problem.groups),
        n_grouped_pixels=sum(len(t) for t in frame.problem.groups),
        rows=rows,
    )
    return adjusted, report


def occluded_fraction(scene: Scene, cam: Camera, direction: int = 1) -> float:
    """Share of reference pixels that lose the z-buffer contest."""
    direction = check_direction(direction)
    cam = effective_camera(scene, cam)
    losers = 0
    for y in range(scene.depth.shape[0]):
        for group in extract_groups(scene.depth[y], scene.errors[y], cam, direction):
            losers += len(group.pixels) - 1
    return losers / scene.depth.size


def synthesize_image(
    texture: np.ndarray,
    levels: np.ndarray,
    errors: np.ndarray,
    cam: Camera,
    direction: int = 1,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-wise synthesis of a whole image; see `synthesize_row`."""
    parts = [
        synthesize_row(texture[y], levels[y], errors[y], cam, direction)
        for y in range(levels.shape[0])
    ]
    virtual = np.stack([p[0] for p in parts])
    filled = np.stack([p[1] for p in parts])
    winner = np.stack([p[2] for p in parts])
    return virtual, filled, winner


def synthesize_scene(
    scene: Scene, cam: Camera, direction: int = 1
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Synthesize the virtual view from the scene's quantized depth."""
    if scene.texture is None:
        raise ValueError("scene has no texture to synthesize from")
    cam = effective_camera(scene, cam)
    return synthesize_image(scene.texture, scene.depth, scene.errors, cam, direction)
