"""Multistart projected-BFGS minimization of the design criterion over the unit box.

Coordinates live in [-1, 1]; the only constraints are the box bounds, so
projection is a clip. Gradients are finite differences of the closed-form
criterion. A start converges when the projected gradient (gradient with
outward components zeroed on active bounds) has infinity norm at or below
the optimality tolerance. Converged optima are deduplicated by clustering
canonically sorted designs.

Everything is deterministic for a given seed: starting designs come from a
seeded generator and the descent itself contains no randomness, so repeated
searches return bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .criterion import imspe
from .errors import SingularDesignError
from .kernels import Design, as_design

_ARMIJO = 1e-4
_LINESEARCH_CAP = 60
_CURVATURE_FLOOR = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the local descent and the multistart wrapper."""

    starts: int = 32
    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-9
    fd_step: float = 1e-6
    max_iterations: int = 500
    seed: int = 0
    cluster_tol: float = 1e-5

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be at least 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        for name in ("feasibility_tol", "optimality_tol", "fd_step", "cluster_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


DEFAULT_CONFIG = SearchConfig()


class LocalSearchResult(NamedTuple):
    design: Design
    value: float
    converged: bool
    iterations: int
    grad_norm: float


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Multistart outcome; ``local_minima`` holds one (design, value) per cluster, best first."""

    best_design: Optional[Design]
    best_imspe: Optional[float]
    starts_converged: int
    local_minima: tuple
    iterations_total: int


def _objective(family, flat, shape):
    try:
        return imspe(family, flat.reshape(shape)).value
    except SingularDesignError:
        return math.inf


def fd_gradient(family, design, fd_step=1e-6):
    """Finite-difference gradient of the criterion in every coordinate.

    Central differences in the interior; second-order one-sided stencils when
    a coordinate sits within one step of its bound, so evaluation never leaves
    the box. Returns a flat gradient, point-major.
    """
    dsn = as_design(design)
    shape = dsn.points.shape
    x = dsn.points.ravel().copy()
    grad = np.empty(x.size)
    f0 = None

    def at(i, offset):
        shifted = x.copy()
        shifted[i] += offset
        return _objective(family, shifted, shape)

    for i in range(x.size):
        h = fd_step
        if x[i] + h <= 1.0 and x[i] - h >= -1.0:
            grad[i] = (at(i, h) - at(i, -h)) / (2.0 * h)
        elif x[i] + h > 1.0:
            if f0 is None:
                f0 = _objective(family, x, shape)
            grad[i] = (3.0 * f0 - 4.0 * at(i, -h) + at(i, -2.0 * h)) / (2.0 * h)
        else:
            if f0 is None:
                f0 = _objective(family, x, shape)
            grad[i] = -(3.0 * f0 - 4.0 * at(i, h) + at(i, 2.0 * h)) / (2.0 * h)
    return grad


def projected_gradient(x, g, feasibility_tol=1e-7):
    """Gradient with outward components dropped on active bounds.

    On the lower bound only negative components survive; on the upper bound
    only positive ones. Its infinity norm is the stationarity measure for the
    box-constrained problem.
    """
    pg = np.array(g, dtype=float, copy=True)
    lower = x <= -1.0 + feasibility_tol
    upper = x >= 1.0 - feasibility_tol
    pg[lower] = np.minimum(pg[lower], 0.0)
    pg[upper] = np.maximum(pg[upper], 0.0)
    return pg


def _clamp_outward(x, direction, feasibility_tol):
    d = direction.copy()
    lower = x <= -1.0 + feasibility_tol
    upper = x >= 1.0 - feasibility_tol
    d[lower & (d < 0.0)] = 0.0
    d[upper & (d > 0.0)] = 0.0
    return d


def local_search(family, start, config=DEFAULT_CONFIG):
    """Projected-BFGS descent from one starting design.

    Returns a LocalSearchResult; ``converged`` means the projected-gradient
    infinity norm reached ``config.optimality_tol``. Iterates that make the
    correlation matrix singular price as +inf, so the Armijo backtracking
    shrinks past them instead of crashing.
    """
    dsn = as_design(start)
    shape = dsn.points.shape
    x = np.clip(dsn.points.ravel(), -1.0, 1.0)
    f = _objective(family, x, shape)
    if not math.isfinite(f):
        raise SingularDesignError("starting design has a singular correlation matrix")
    g = fd_gradient(family, x.reshape(shape), config.fd_step)
    if not np.all(np.isfinite(g)):
        # a singular configuration one step away poisons the stencil
        return LocalSearchResult(Design(x.reshape(shape)), f, False, 0, math.inf)
    H = np.eye(x.size)
    h_is_identity = True
    iterations = 0
    converged = False

    for _ in range(config.max_iterations):
        pg = projected_gradient(x, g, config.feasibility_tol)
        if np.max(np.abs(pg)) <= config.optimality_tol:
            converged = True
            break
        iterations += 1

        direction = _clamp_outward(x, -(H @ g), config.feasibility_tol)
        if float(direction @ g) >= 0.0 or not np.any(direction):
            # quasi-Newton model broke down; restart from steepest descent
            H = np.eye(x.size)
            h_is_identity = True
            direction = -pg

        step_scale = 1.0
        accepted = False
        x_new = x
        f_new = f
        for _ls in range(_LINESEARCH_CAP):
            candidate = np.clip(x + step_scale * direction, -1.0, 1.0)
            step = candidate - x
            if not np.any(step):
                break
            f_cand = _objective(family, candidate, shape)
            if f_cand <= f + _ARMIJO * float(g @ step):
                x_new, f_new, accepted = candidate, f_cand, True
                break
            step_scale *= 0.5
        if not accepted:
            if h_is_identity:
                break
            # stale quasi-Newton model; retry this iterate from steepest descent
            H = np.eye(x.size)
            h_is_identity = True
            continue

        g_new = fd_gradient(family, x_new.reshape(shape), config.fd_step)
        if not np.all(np.isfinite(g_new)):
            return LocalSearchResult(
                Design(x_new.reshape(shape)), f_new, False, iterations, math.inf
            )
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        if sy > _CURVATURE_FLOOR * float(np.linalg.norm(s) * np.linalg.norm(y)):
            rho_inv = 1.0 / sy
            Hy = H @ y
            yHy = float(y @ Hy)
            H = (
                H
                - rho_inv * (np.outer(s, Hy) + np.outer(Hy, s))
                + (rho_inv * rho_inv * yHy + rho_inv) * np.outer(s, s)
            )
            h_is_identity = False
        x, f, g = x_new, f_new, g_new

    pg = projected_gradient(x, g, config.feasibility_tol)
    grad_norm = float(np.max(np.abs(pg)))
    converged = converged or grad_norm <= config.optimality_tol
    return LocalSearchResult(Design(x.reshape(shape)), f, converged, iterations, grad_norm)


def _canonical_points(points):
    pts = np.asarray(points, dtype=float)
    order = np.lexsort(tuple(pts[:, k] for k in reversed(range(pts.shape[1]))))
    return pts[order]


def _generate_starts(n, d, count, rng):
    base = np.repeat(np.linspace(-1.0, 1.0, n + 2)[1:-1][:, None], d, axis=1)
    starts = [base]
    perturbed = min(count - 1, max(0, (count - 1) // 3))
    for _ in range(perturbed):
        starts.append(np.clip(base + rng.normal(0.0, 0.15, size=(n, d)), -1.0, 1.0))
    while len(starts) < count:
        starts.append(rng.uniform(-1.0, 1.0, size=(n, d)))
    return starts[:count]


def multistart_search(family, n, d=1, config=DEFAULT_CONFIG):
    """Deterministic multistart over the box, returning the clustered optima.

    Start 0 is the symmetric equispaced design; roughly a third of the
    remaining starts are normal perturbations of it, the rest uniform draws,
    all from one seeded generator. Only converged starts count. If none
    converge, ``best_design`` and ``best_imspe`` are None and callers decide
    how loudly to fail.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 points and d >= 1 dimensions")
    rng = np.random.default_rng(config.seed)
    outcomes = []
    for start in _generate_starts(n, d, config.starts, rng):
        try:
            outcomes.append(local_search(family, start, config))
        except SingularDesignError:
            continue
    iterations_total = sum(o.iterations for o in outcomes)
    converged = [o for o in outcomes if o.converged]
    if not converged:
        return SearchResult(None, None, 0, (), iterations_total)

    # value and gradient ties happen where the criterion is flat to the last
    # ulp; within such a plateau every member is numerically equivalent, so
    # prefer the most stationary one, then the smallest-magnitude coordinates
    ranked = sorted(
        ((_canonical_points(o.design.points), o.value, o.grad_norm) for o in converged),
        key=lambda item: (
            item[1],
            item[2],
            float(np.max(np.abs(item[0]))),
            tuple(item[0].ravel()),
        ),
    )
    clusters = []
    for pts, value, _ in ranked:
        if any(np.max(np.abs(pts - kept)) <= config.cluster_tol for kept, _ in clusters):
            continue
        clusters.append((pts, value))
    minima = tuple((Design(pts), value) for pts, value in clusters)
    best_design, best_value = minima[0]
    return SearchResult(
        best_design=best_design,
        best_imspe=best_value,
        starts_converged=len(converged),
        local_minima=minima,
        iterations_total=iterations_total,
    )


__all__ = [
    "SearchConfig",
    "DEFAULT_CONFIG",
    "LocalSearchResult",
    "SearchResult",
    "fd_gradient",
    "projected_gradient",
    "local_search",
    "multistart_search",
]
