"""Scikit-learn style front end for the depth-map adjuster."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .camera import DEFAULT_CAMERA
from .optimize import bisect_lambda
from .pipeline import build_problem, run_optimize
from .scene import Scene
from .validation import (
    as_camera,
    check_depth_image,
    check_direction,
    check_error_image,
    check_texture_image,
)


class DepthMapOptimizer(BaseEstimator, TransformerMixin):
    """Rewrite the coding errors of a quantized depth map, spending fewer
    bits on occlusion regions without changing the synthesized view.

    Every pixel's error may move inside the interval of depth changes that
    reproduce its rounded disparity, so warping targets and z-buffer
    winners are invariant; occlusion groups are optimized jointly, other
    pixels independently.

    Parameters
    ----------
    camera : Camera, path or None
        Warping geometry; None selects the synthetic default camera.
    lam : float
        Lagrange multiplier used when no rate budget is given.
    rate_budget : float or None
        Target total rate in bits.  When set, `fit` resolves the
        multiplier by bisection on the fitted data.
    mode : {"dp", "brute", "independent"}
        Group solver.
    sigma : float
        Std of the Gaussian coding-error model (inf for uniform).
    direction : {1, -1}
        Warp direction of the virtual view.
    bisect_tol : float
        Rate tolerance of the bisection, in bits.

    Attributes
    ----------
    lambda_ : float
        Multiplier applied by `transform` (bisected or copied from `lam`).
    camera_ : Camera
        Resolved camera.
    fit_rate_ : float
        Total rate of the solution found on the fitted data.
    report_ : Report
        Report of the most recent `transform`.
    """

    def __init__(
        self,
        camera=None,
        lam: float = 1.0,
        rate_budget: float | None = None,
        mode: str = "dp",
        sigma: float = 1.0,
        direction: int = 1,
        bisect_tol: float = 1e-3,
    ):
        self.camera = camera
        self.lam = lam
        self.rate_budget = rate_budget
        self.mode = mode
        self.sigma = sigma
        self.direction = direction
        self.bisect_tol = bisect_tol

    def _scene(self, X, errors, texture) -> Scene:
        depth = check_depth_image(X)
        return Scene(
            texture=check_texture_image(texture, depth),
            depth=depth,
            errors=check_error_image(errors, depth),
        )

    def fit(self, X, errors=None, texture=None):
        """Resolve the Lagrange multiplier on a depth map.

        `X` is the uncompressed 2-D depth image; `errors` the per-pixel
        quantized depth errors (None means error-free input).  With a rate
        budget set, the multiplier is bisected against this data;
        otherwise `lam` is adopted as is.
        """
        self.camera_ = as_camera(self.camera) if self.camera is not None else DEFAULT_CAMERA
        check_direction(self.direction)
        scene = self._scene(X, errors, texture)
        if self.rate_budget is not None:
            frame = build_problem(
                scene, self.camera_, sigma=self.sigma, direction=self.direction
            )
            result = bisect_lambda(
                frame.problem, self.rate_budget, tol=self.bisect_tol, mode=self.mode
            )
            self.lambda_ = result.lam
            self.fit_rate_ = result.solution.rate
        else:
            if self.lam < 0:
                raise ValueError("lam must be non-negative")
            self.lambda_ = float(self.lam)
            self.fit_rate_ = float("nan")
        self.image_shape_ = scene.shape
        return self

    def transform(self, X, errors=None, texture=None) -> np.ndarray:
        """Return the adjusted depth map (uint8) for `X` at the fitted
        multiplier; stores the run's `report_`."""
        check_is_fitted(self, "lambda_")
        scene = self._scene(X, errors, texture)
        adjusted, report = run_optimize(
            scene,
            self.camera_,
            mode=self.mode,
            lam=self.lambda_,
            sigma=self.sigma,
            direction=self.direction,
        )
        self.report_ = report
        return adjusted

    def fit_transform(self, X, errors=None, texture=None) -> np.ndarray:
        return self.fit(X, errors, texture).transform(X, errors, texture)
