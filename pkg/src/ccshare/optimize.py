"""Derivative-free optimization over rank-1 projective qubit measurements.

The search domain is the Bloch hemisphere theta in [0, pi/2], phi in
[0, 2pi): every objective we optimize is symmetric under swapping the
projector pair, and antipodal axes give the same pair.  A coarse grid
brackets the optimum, Nelder-Mead polishes it.

Callers with a vectorized objective (all the entropy-based measures) can
pass ``grid_objective`` to evaluate the whole grid in one numpy call;
otherwise the scalar objective is looped over the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize as _nelder_mead

from .states import I2, SIGMA_X, SIGMA_Y, SIGMA_Z


class OptimizationError(RuntimeError):
    """An objective returned a non-finite value; carries the offending angles."""

    def __init__(self, angles: tuple[float, ...], value: float):
        self.angles = angles
        self.value = value
        super().__init__(f"objective returned {value} at angles {angles}")


@dataclass(frozen=True)
class BlochMeasurement:
    """Rank-1 projective qubit measurement along the Bloch axis (theta, phi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi / 2 + 1e-12:
            raise ValueError(f"theta must be in [0, pi/2], got {self.theta}")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must be in [0, 2pi), got {self.phi}")

    @property
    def axis(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )


@dataclass(frozen=True)
class OptimizerSettings:
    grid_points_theta: int = 31
    grid_points_phi: int = 31
    refine_tolerance: float = 1e-7
    max_refine_iterations: int = 200

    def __post_init__(self):
        if self.grid_points_theta < 8 or self.grid_points_phi < 8:
            raise ValueError("grid points must be >= 8 along each angle")
        if self.refine_tolerance <= 0:
            raise ValueError("refine_tolerance must be positive")


def bloch_projectors(m: BlochMeasurement) -> tuple[np.ndarray, np.ndarray]:
    """The orthogonal projector pair P_+/- = (I +/- n.sigma)/2."""
    nx, ny, nz = m.axis
    ns = nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
    return (I2 + ns) / 2, (I2 - ns) / 2


def projectors_batch(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Stacked projector pairs for angle arrays; shape (K, 2, 2, 2).

    Axis 1 indexes the outcome (P along +n, P along -n).
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    phis = np.asarray(phis, dtype=np.float64)
    st, ct = np.sin(thetas), np.cos(thetas)
    nx, ny, nz = st * np.cos(phis), st * np.sin(phis), ct
    ns = (
        nx[:, None, None] * SIGMA_X
        + ny[:, None, None] * SIGMA_Y
        + nz[:, None, None] * SIGMA_Z
    )
    return np.stack([(I2 + ns) / 2, (I2 - ns) / 2], axis=1)


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map arbitrary angles onto the hemisphere domain of BlochMeasurement."""
    n = np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )
    if n[2] < 0:
        n = -n
    theta_c = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
    theta_c = min(theta_c, np.pi / 2)
    phi_c = float(np.arctan2(n[1], n[0])) % (2 * np.pi)
    return theta_c, phi_c


def _angle_grid(settings: OptimizerSettings) -> tuple[np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, np.pi / 2, settings.grid_points_theta)
    phis = np.linspace(0.0, 2 * np.pi, settings.grid_points_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return tt.ravel(), pp.ravel()


def _check_finite(values: np.ndarray, thetas: np.ndarray, phis: np.ndarray):
    bad = ~np.isfinite(values)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise OptimizationError((float(thetas[k]), float(phis[k])), float(values[k]))


def minimize_over_qubit_basis(
    objective: Callable[[BlochMeasurement], float],
    settings: OptimizerSettings = OptimizerSettings(),
    grid_objective: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
    raw_objective: Callable[[float, float], float] | None = None,
) -> tuple[BlochMeasurement, float]:
    """Minimize a scalar function of a single measurement basis.

    Returns the best measurement found and its value; the value never
    exceeds the best coarse-grid value.  ``raw_objective``, when given,
    is called with unrestricted (theta, phi) floats during refinement so
    hot callers can skip object construction; it must agree with
    ``objective`` after angle canonicalization.
    """
    tt, pp = _angle_grid(settings)
    if grid_objective is not None:
        values = np.asarray(grid_objective(tt, pp), dtype=np.float64)
    else:
        values = np.array(
            [objective(BlochMeasurement(t, p)) for t, p in zip(tt, pp)],
            dtype=np.float64,
        )
    _check_finite(values, tt, pp)
    k = int(np.argmin(values))
    best_grid = float(values[k])

    if raw_objective is None:
        def raw_objective(theta: float, phi: float) -> float:
            return float(objective(BlochMeasurement(*canonical_angles(theta, phi))))

    def wrapped(x: np.ndarray) -> float:
        v = raw_objective(float(x[0]), float(x[1]))
        if not np.isfinite(v):
            raise OptimizationError((float(x[0]), float(x[1])), v)
        return v

    # Seed the simplex at the grid spacing so refinement starts local.
    dt = (np.pi / 2) / (settings.grid_points_theta - 1)
    dp = 2 * np.pi / settings.grid_points_phi
    x0 = np.array([tt[k], pp[k]])
    res = _nelder_mead(
        wrapped,
        x0=x0,
        method="Nelder-Mead",
        options={
            "xatol": settings.refine_tolerance,
            "fatol": settings.refine_tolerance,
            "maxiter": settings.max_refine_iterations,
            "initial_simplex": np.array(
                [x0, x0 + [dt, 0.0], x0 + [0.0, dp]]
            ),
        },
    )
    if res.fun <= best_grid:
        theta, phi = canonical_angles(float(res.x[0]), float(res.x[1]))
        return BlochMeasurement(theta, phi), float(res.fun)
    return BlochMeasurement(float(tt[k]), float(pp[k])), best_grid


def maximize_over_product_bases(
    objective: Callable[[BlochMeasurement, BlochMeasurement], float],
    settings: OptimizerSettings = OptimizerSettings(),
    grid_objective: Callable[
        [np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray
    ] | None = None,
    raw_objective: Callable[[float, float, float, float], float] | None = None,
) -> tuple[BlochMeasurement, BlochMeasurement, float]:
    """Maximize over a product of two measurement bases (4-angle domain).

    The coarse stage uses a thinned product grid (full density in each
    factor would be quartic in the grid size); Nelder-Mead then refines
    all four angles simultaneously.
    """
    # Thin each factor grid to keep the product grid in the low thousands.
    nt = max(8, settings.grid_points_theta // 4 + 1)
    nph = max(8, settings.grid_points_phi // 4 + 1)
    thin = OptimizerSettings(
        nt, nph, settings.refine_tolerance, settings.max_refine_iterations
    )
    ta, pa = _angle_grid(thin)
    k = ta.size
    ta4 = np.repeat(ta, k)
    pa4 = np.repeat(pa, k)
    tb4 = np.tile(ta, k)
    pb4 = np.tile(pa, k)
    if grid_objective is not None:
        values = np.asarray(grid_objective(ta4, pa4, tb4, pb4), dtype=np.float64)
    else:
        values = np.array(
            [
                objective(BlochMeasurement(t1, p1), BlochMeasurement(t2, p2))
                for t1, p1, t2, p2 in zip(ta4, pa4, tb4, pb4)
            ],
            dtype=np.float64,
        )
    _check_finite(values, ta4, pa4)
    j = int(np.argmax(values))
    best_grid = float(values[j])

    if raw_objective is None:
        def raw_objective(t1: float, p1: float, t2: float, p2: float) -> float:
            return float(
                objective(
                    BlochMeasurement(*canonical_angles(t1, p1)),
                    BlochMeasurement(*canonical_angles(t2, p2)),
                )
            )

    def wrapped(x: np.ndarray) -> float:
        v = raw_objective(float(x[0]), float(x[1]), float(x[2]), float(x[3]))
        if not np.isfinite(v):
            raise OptimizationError(tuple(float(xi) for xi in x), v)
        return -v

    res = _nelder_mead(
        wrapped,
        x0=np.array([ta4[j], pa4[j], tb4[j], pb4[j]]),
        method="Nelder-Mead",
        options={
            "xatol": settings.refine_tolerance,
            "fatol": settings.refine_tolerance,
            "maxiter": 2 * settings.max_refine_iterations,
        },
    )
    if -res.fun >= best_grid:
        ma = BlochMeasurement(*canonical_angles(float(res.x[0]), float(res.x[1])))
        mb = BlochMeasurement(*canonical_angles(float(res.x[2]), float(res.x[3])))
        return ma, mb, float(-res.fun)
    return (
        BlochMeasurement(float(ta4[j]), float(pa4[j])),
        BlochMeasurement(float(tb4[j]), float(pb4[j])),
        best_grid,
    )
