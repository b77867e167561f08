"""Steady-state I/O relations: transport, integral functions, duals, checks.

A planar relation is a set of (u, y) pairs a system can hold at equilibrium,
stored as a parameterized curve, a sampled point list, or a closed-form map.
Relations are transported under 2x2 maps (directly or stage by stage through
an elementary decomposition), integrated into convex potentials, conjugated
by a discrete Legendre transform, and tested for monotonicity and for the
numeric surrogate of cursivity that underpins the maximality check.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import MultiValued, WrongRepresentation

PARAM = "param"
SAMPLED = "sampled"
CLOSED = "closed"

DEFAULT_GRID_POINTS = 4001


@dataclass(frozen=True)
class PlanarRelation:
    """Planar relation with a concrete sample set and optional extra structure.

    ``kind`` is one of ``param`` (curve over a sigma grid), ``sampled``
    (ordered, deduplicated point list) or ``closed`` (function plus a
    direction flag, sampled on a grid for numeric work).
    """

    kind: str
    u: np.ndarray
    y: np.ndarray
    sigma: np.ndarray | None = None
    func: Callable[[np.ndarray], np.ndarray] | None = None
    direction: str = "u_to_y"

    @classmethod
    def from_param_curve(
        cls,
        u_of_sigma: Callable,
        y_of_sigma: Callable,
        sigma_range: tuple[float, float],
        n: int = DEFAULT_GRID_POINTS,
    ) -> "PlanarRelation":
        sigma = np.linspace(sigma_range[0], sigma_range[1], n)
        u = np.asarray(u_of_sigma(sigma), dtype=float) * np.ones_like(sigma)
        y = np.asarray(y_of_sigma(sigma), dtype=float) * np.ones_like(sigma)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(y))):
            raise ValueError("curve maps must be finite on the grid")
        return cls(PARAM, u, y, sigma=sigma)

    @classmethod
    def from_points(cls, u, y) -> "PlanarRelation":
        u = np.asarray(u, dtype=float)
        y = np.asarray(y, dtype=float)
        pts = np.unique(np.column_stack([u, y]), axis=0)
        return cls(SAMPLED, pts[:, 0], pts[:, 1])

    @classmethod
    def from_closed_form(
        cls,
        func: Callable,
        direction: str = "u_to_y",
        grid: np.ndarray | None = None,
    ) -> "PlanarRelation":
        if direction not in ("u_to_y", "y_to_u"):
            raise ValueError(f"unknown direction {direction!r}")
        if grid is None:
            grid = np.linspace(-3.0, 3.0, DEFAULT_GRID_POINTS)
        grid = np.asarray(grid, dtype=float)
        img = np.asarray(func(grid), dtype=float) * np.ones_like(grid)
        if direction == "u_to_y":
            u, y = grid, img
        else:
            u, y = img, grid
        return cls(CLOSED, u, y, func=func, direction=direction)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.u, self.y])

    def inverse(self) -> "PlanarRelation":
        """Swap the roles of input and output (an involution)."""
        direction = self.direction
        if self.kind == CLOSED:
            direction = "y_to_u" if direction == "u_to_y" else "u_to_y"
        return PlanarRelation(
            self.kind, self.y.copy(), self.u.copy(),
            sigma=None if self.sigma is None else self.sigma.copy(),
            func=self.func, direction=direction,
        )

    # -- serialization ----------------------------------------------------
    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sigma", "u", "y"])
            sig = self.sigma if self.sigma is not None else np.arange(len(self.u))
            for s, u, y in zip(sig, self.u, self.y):
                w.writerow([repr(float(s)), repr(float(u)), repr(float(y))])

    def to_json_dict(self) -> dict:
        d = {"kind": self.kind, "u": self.u.tolist(), "y": self.y.tolist()}
        if self.sigma is not None:
            d["sigma"] = self.sigma.tolist()
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "PlanarRelation":
        sigma = np.asarray(d["sigma"], dtype=float) if "sigma" in d else None
        return cls(d["kind"], np.asarray(d["u"], float), np.asarray(d["y"], float),
                   sigma=sigma)


@dataclass(frozen=True)
class IntegralFunction:
    """Sampled potential: strictly increasing grid plus accumulated values."""

    grid: np.ndarray
    values: np.ndarray
    convexity_certificate: bool

    def __post_init__(self):
        if not np.all(np.diff(self.grid) > 0):
            raise ValueError("integral-function grid must be strictly increasing")

    def __call__(self, x):
        return np.interp(x, self.grid, self.values)

    @classmethod
    def from_function(cls, f: Callable, grid) -> "IntegralFunction":
        grid = np.asarray(grid, dtype=float)
        vals = np.asarray(f(grid), dtype=float) * np.ones_like(grid)
        return cls(grid, vals, _convex_certificate(grid, vals))

    def anchored(self) -> "IntegralFunction":
        """Shift values so the minimum over the grid is zero."""
        return IntegralFunction(
            self.grid, self.values - float(self.values.min()),
            self.convexity_certificate,
        )

    def plus_quadratic(self, coeff: float) -> "IntegralFunction":
        """Add coeff/2 * x^2 pointwise (output-feedback integral rule)."""
        vals = self.values + 0.5 * coeff * self.grid**2
        return IntegralFunction(self.grid, vals, _convex_certificate(self.grid, vals))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "value"])
            for x, v in zip(self.grid, self.values):
                w.writerow([repr(float(x)), repr(float(v))])

    def to_json_dict(self) -> dict:
        return {
            "grid": self.grid.tolist(),
            "values": self.values.tolist(),
            "convexity_certificate": self.convexity_certificate,
        }


def _convex_certificate(grid: np.ndarray, values: np.ndarray) -> bool:
    """Nonnegative discrete second differences, with a relative band."""
    if len(grid) < 3:
        return True
    slopes = np.diff(values) / np.diff(grid)
    scale = float(np.abs(slopes).max()) + 1.0
    return bool(np.all(np.diff(slopes) >= -1e-9 * scale))


# ---------------------------------------------------------------------------
# Transport


def transform_relation(rel: PlanarRelation, transform) -> PlanarRelation:
    """Pointwise image of the relation under an invertible 2x2 map."""
    transform.require_invertible()
    ut, yt = transform(rel.u, rel.y)
    kind = rel.kind if rel.kind != CLOSED else PARAM
    sigma = rel.sigma
    if rel.kind == CLOSED:
        # the original abscissa doubles as the curve parameter
        sigma = rel.u if rel.direction == "u_to_y" else rel.y
    return PlanarRelation(kind, ut, yt,
                          sigma=None if sigma is None else np.asarray(sigma))


def compose_via_stages(rel: PlanarRelation, dec) -> PlanarRelation:
    """Apply the four elementary factors one at a time.

    Stage order is output feedback, post-gain, input feedthrough, pre-gain
    (after an optional column swap); the composite must agree with the direct
    single-map transport, which the test suite uses as a consistency oracle.
    """
    z = rel.points.T.copy()
    if dec.column_swapped:
        z = z[::-1]
    for factor in dec.factors():
        z = factor @ z
    kind = rel.kind if rel.kind != CLOSED else PARAM
    return PlanarRelation(kind, z[0], z[1],
                          sigma=None if rel.sigma is None else rel.sigma.copy())


# ---------------------------------------------------------------------------
# Integral functions and Legendre duals

OF_K = "of_k"
OF_K_INVERSE = "of_k_inverse"


def integral_function(
    rel: PlanarRelation,
    direction: str = OF_K,
    tie_tol: float = 1e-12,
) -> IntegralFunction:
    """Cumulative-trapezoid potential of the relation in one direction.

    ``of_k`` integrates y as a function of u; ``of_k_inverse`` integrates u
    as a function of y.  The relation must be single-valued in the chosen
    direction: ties in the abscissa (within ``tie_tol``) are merged, genuine
    folds raise.  Values are anchored to zero at the left end of the grid.
    """
    if direction == OF_K:
        x, v = rel.u, rel.y
    elif direction == OF_K_INVERSE:
        x, v = rel.y, rel.u
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if rel.sigma is not None:
        # a curve is single-valued in this direction iff the abscissa is
        # monotone along the parameter
        dx = np.diff(x)
        slack = tie_tol * (float(np.abs(x).max()) + 1.0)
        if not (np.all(dx >= -slack) or np.all(dx <= slack)):
            raise MultiValued("curve abscissa is not monotone in the parameter")
    order = np.argsort(x, kind="stable")
    x, v = x[order], v[order]
    scale = float(np.abs(x).max()) + 1.0
    keep_x, keep_v = [x[0]], [v[0]]
    for xi, vi in zip(x[1:], v[1:]):
        if xi - keep_x[-1] <= tie_tol * scale:
            if abs(vi - keep_v[-1]) > 1e-8 * (abs(vi) + abs(keep_v[-1]) + 1.0):
                raise MultiValued(
                    f"relation folds near abscissa {xi}: values "
                    f"{keep_v[-1]} and {vi}"
                )
            continue
        keep_x.append(xi)
        keep_v.append(vi)
    gx = np.asarray(keep_x)
    gv = np.asarray(keep_v)
    if len(gx) < 2:
        raise MultiValued("relation reduces to a single abscissa")
    vals = cumulative_trapezoid(gv, gx, initial=0.0)
    return IntegralFunction(gx, vals, _convex_certificate(gx, vals))


def _lower_convex_hull(x: np.ndarray, v: np.ndarray):
    """Indices of the lower convex hull of the graph points (x sorted)."""
    hull: list[int] = []
    for i in range(len(x)):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # pop i1 if it lies on or above segment i0 -> i
            cross = (x[i1] - x[i0]) * (v[i] - v[i0]) - (x[i] - x[i0]) * (v[i1] - v[i0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.asarray(hull)


def legendre(F: IntegralFunction, dual_grid=None) -> IntegralFunction:
    """Discrete Legendre transform F*(y) = max_i (y*x_i - F(x_i)).

    The conjugate of the sampled function equals the conjugate of its lower
    convex hull, so the hull is built once and each query resolved by a
    binary search over the hull slopes.  The default dual grid spans the hull
    slope range with as many points as the primal grid.
    """
    x, v = F.grid, F.values
    h = _lower_convex_hull(x, v)
    hx, hv = x[h], v[h]
    slopes = np.diff(hv) / np.diff(hx)
    if dual_grid is None:
        lo, hi = (float(slopes.min()), float(slopes.max())) if len(slopes) else (-1.0, 1.0)
        if hi - lo < 1e-12:
            lo, hi = lo - 1.0, hi + 1.0
        dual_grid = np.linspace(lo, hi, len(x))
    ys = np.asarray(dual_grid, dtype=float)
    # vertex j of the hull is the argmax for y between slopes[j-1] and slopes[j]
    j = np.searchsorted(slopes, ys)
    vals = ys * hx[j] - hv[j]
    return IntegralFunction(ys, vals, _convex_certificate(ys, vals))


# ---------------------------------------------------------------------------
# Monotonicity and cursivity


def is_monotone(rel: PlanarRelation, strict: bool = False, tol: float = 1e-9) -> bool:
    """Increment test (u2-u1)(y2-y1) >= 0 over all sample pairs.

    Sorting by input reduces the pairwise check to adjacent comparisons.
    Strict mode additionally requires a positive product whenever the inputs
    differ.
    """
    order = np.lexsort((rel.y, rel.u))
    u, y = rel.u[order], rel.y[order]
    du = np.diff(u)
    dy = np.diff(y)
    scale = float(np.abs(y).max()) + 1.0
    if not np.all(dy >= -tol * scale):
        return False
    if strict:
        uscale = float(np.abs(u).max()) + 1.0
        distinct = du > 1e-12 * uscale
        if np.any(dy[distinct] <= 0.0):
            return False
    return True


@dataclass(frozen=True)
class CursivityReport:
    """Outcome of the numeric cursivity surrogate, one flag per condition."""

    continuous: bool
    diverges: bool
    no_self_intersection: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def cursive(self) -> bool:
        return self.continuous and self.diverges and self.no_self_intersection


def _ends_grow(norms: np.ndarray) -> bool:
    """Norms trend upward over the final decile of the parameter range."""
    n = len(norms)
    dec = norms[max(0, n - max(2, n // 10)):]
    checkpoints = dec[np.linspace(0, len(dec) - 1, min(10, len(dec))).astype(int)]
    slack = 1e-9 * (float(np.abs(checkpoints).max()) + 1.0)
    return bool(np.all(np.diff(checkpoints) >= -slack))


def is_cursive(
    rel: PlanarRelation,
    intersection_sigma_gap: int = 20,
    end_factor: float = 1.5,
    atol: float = 1e-6,
) -> CursivityReport:
    """Numeric surrogate for the cursive property of a parameterized curve.

    Checks three finite-grid stand-ins: adjacent images stay within a
    Lipschitz-consistent bound (continuity), the point norm escapes past a
    multiple of its median at both parameter ends with monotone growth over
    the end decile (divergence), and no two parameter-distant samples nearly
    coincide (self-intersection measure, via a spatial hash).  These support
    but cannot prove the limit properties; the report says which passed.
    """
    if rel.kind != PARAM:
        raise WrongRepresentation("cursivity check needs a parameterized curve")
    pts = rel.points
    notes: list[str] = []

    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    med_seg = float(np.median(seg))
    continuous = bool(seg.max() <= max(10.0 * med_seg, atol))
    if not continuous:
        notes.append("jump: a grid segment exceeds 10x the median segment length")

    norms = np.linalg.norm(pts, axis=1)
    med = float(np.median(norms))
    threshold = max(end_factor * med, atol)
    diverges = (
        norms[0] > threshold
        and norms[-1] > threshold
        and _ends_grow(norms)
        and _ends_grow(norms[::-1])
    )
    if not diverges:
        notes.append(
            f"divergence surrogate failed: end norms ({norms[0]:.3g}, "
            f"{norms[-1]:.3g}) vs threshold {threshold:.3g}"
        )

    no_self_intersection = _no_near_self_intersection(
        pts, max(med_seg, atol), intersection_sigma_gap
    )
    if not no_self_intersection:
        notes.append("near self-intersection: parameter-distant samples coincide")

    return CursivityReport(continuous, bool(diverges), no_self_intersection,
                           tuple(notes))


def _no_near_self_intersection(pts: np.ndarray, radius: float, gap: int) -> bool:
    """Spatial-hash check that parameter-distant samples stay separated."""
    cells: dict[tuple[int, int], list[int]] = {}
    keys = np.floor(pts / radius).astype(np.int64)
    for i, key in enumerate(map(tuple, keys)):
        cells.setdefault(key, []).append(i)
    r2 = radius * radius
    for (cx, cy), idx in cells.items():
        neighborhood = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                neighborhood.extend(cells.get((cx + dx, cy + dy), ()))
        for i in idx:
            for j in neighborhood:
                if j - i > gap:
                    d = pts[i] - pts[j]
                    if d[0] * d[0] + d[1] * d[1] < r2:
                        return False
    return True


def is_maximal_monotone(rel: PlanarRelation) -> bool:
    """Monotone and (numerically) cursive; the operational maximality test."""
    return is_monotone(rel) and is_cursive(rel).cursive
