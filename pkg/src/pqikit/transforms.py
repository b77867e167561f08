"""Synthesis of monotonizing/passivizing I/O transformations.

Given a source and a target quadratic inequality, a 2x2 map sending one
solution cone onto the other is assembled from the boundary rays; a sign test
on the ray sums picks the correct one of the two candidates.  The map is then
factored into four realizable stages (output feedback, post-gain, input
feedthrough, pre-gain), and a numeric dissipation certificate checks that the
transformed system satisfies the requested inequality along trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateRays,
    NoStorageFunction,
    NonFiniteState,
    SingularTransform,
)
from .pqi import PQI, PassivityIndices, boundary_rays


@dataclass(frozen=True)
class Transform2:
    """Invertible map [[a, b], [c, d]] acting on stacked (u, y) pairs."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_matrix(cls, m) -> "Transform2":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "Transform2":
        return cls(1.0, 0.0, 0.0, 1.0)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def require_invertible(self, tol: float = 1e-12) -> None:
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d), 1.0)
        if abs(self.det) <= tol * scale * scale:
            raise SingularTransform(f"det {self.det} below tolerance")

    def inverse(self) -> "Transform2":
        self.require_invertible()
        return Transform2(
            self.d / self.det, -self.b / self.det,
            -self.c / self.det, self.a / self.det,
        )

    def __call__(self, u, y):
        """Map input/output samples (scalars or arrays) to the new pair."""
        u = np.asarray(u, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.a * u + self.b * y, self.c * u + self.d * y


# Realization of each elementary factor, in application order.
STAGE_REALIZATIONS = {
    "delta_A": "output-feedback",
    "delta_B": "post-gain",
    "delta_C": "input-feedthrough",
    "delta_D": "pre-gain",
}

_COLUMN_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class ElementaryDecomposition:
    """Gains of T = L_D @ L_C @ L_B @ L_A (optionally after a column swap)."""

    delta_A: float
    delta_B: float
    delta_C: float
    delta_D: float
    column_swapped: bool = False

    def factors(self) -> list[np.ndarray]:
        """The four elementary matrices, in application order L_A..L_D."""
        return [
            np.array([[1.0, self.delta_A], [0.0, 1.0]]),
            np.array([[1.0, 0.0], [0.0, self.delta_B]]),
            np.array([[1.0, 0.0], [self.delta_C, 1.0]]),
            np.array([[self.delta_D, 0.0], [0.0, 1.0]]),
        ]

    def reconstruct(self) -> np.ndarray:
        """Product of the factors; equals the original T including any swap."""
        la, lb, lc, ld = self.factors()
        m = ld @ lc @ lb @ la
        if self.column_swapped:
            m = m @ _COLUMN_SWAP
        return m

    def realizations(self) -> dict[str, str]:
        return dict(STAGE_REALIZATIONS)


def _ray_matrix(p: PQI) -> np.ndarray:
    r1, r2 = boundary_rays(p)
    m = np.column_stack([r1, r2])
    # colinearity is an angle condition, so normalize by the column norms
    # rather than the matrix scale (the rays can differ by many orders of
    # magnitude for near-degenerate leading coefficients)
    norms = float(np.linalg.norm(r1)) * float(np.linalg.norm(r2))
    if abs(np.linalg.det(m)) <= 1e-12 * norms:
        raise DegenerateRays("boundary rays are colinear")
    return m


def mapping_transform(source: PQI, target: PQI) -> Transform2:
    """A map carrying the source cone onto the target cone.

    The transformed inequality equals the target up to a positive scalar.
    Two candidates send boundary onto boundary; evaluating each inequality on
    the sum of its own rays tells which candidate maps interior to interior:
    matching signs select the plain candidate, opposite signs the one with the
    second target ray negated.
    """
    rs = _ray_matrix(source)
    rt = _ray_matrix(target)
    alpha1 = source(rs[0, 0] + rs[0, 1], rs[1, 0] + rs[1, 1])
    alpha2 = target(rt[0, 0] + rt[0, 1], rt[1, 0] + rt[1, 1])
    rs_inv = np.linalg.inv(rs)
    if alpha1 * alpha2 >= 0.0:
        m = rt @ rs_inv
    else:
        m = (rt * np.array([[1.0, -1.0], [1.0, -1.0]])) @ rs_inv
    return Transform2.from_matrix(m)


def passivize(
    indices: PassivityIndices,
    target: PassivityIndices | None = None,
) -> Transform2:
    """Transform making a system with the given indices meet the target ones.

    Defaults to target (0, 0): plain passivity, i.e. a monotone transformed
    steady-state relation.
    """
    if target is None:
        target = PassivityIndices(0.0, 0.0)
    return mapping_transform(indices.pqi(), target.pqi())


def decompose(transform: Transform2, tol: float = 1e-12) -> ElementaryDecomposition:
    """Factor T into output-feedback, post-gain, feedthrough and pre-gain.

    Requires the (1,1) entry to carry weight; when it is small the columns
    are swapped first (always possible for invertible T, and it keeps the
    b/a and d - (b/a)c gain formulas well conditioned) and the flag records
    the swap.
    """
    transform.require_invertible(tol)
    a, b, c, d = transform.a, transform.b, transform.c, transform.d
    scale = max(abs(a), abs(b), abs(c), abs(d))
    swapped = abs(a) <= 1e-2 * scale
    if swapped:
        a, b = b, a
        c, d = d, c
    return ElementaryDecomposition(
        delta_A=b / a,
        delta_B=d - (b / a) * c,
        delta_C=c,
        delta_D=a,
        column_swapped=swapped,
    )


# ---------------------------------------------------------------------------
# Numeric dissipation certificate


@dataclass
class PassivationReport:
    """Worst-case violation of the transformed dissipation inequality."""

    max_violation: float
    tolerance: float
    trials: int
    equilibria: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def find_equilibria(system, u_values, x_range=(-10.0, 10.0), cells: int = 400):
    """Sample forced equilibria by bisecting f(x, u) = 0 on a state grid.

    Returns a list of (x_eq, u_eq, y_eq) triples; one entry per sign change
    of f over the cell grid, for each input level.
    """
    lo, hi = x_range
    xs = np.linspace(lo, hi, cells + 1)
    out = []
    for u in np.atleast_1d(u_values):
        vals = np.array([system.f(x, u) for x in xs])
        for i in range(cells):
            va, vb = vals[i], vals[i + 1]
            if va == 0.0:
                root = xs[i]
            elif va * vb < 0.0:
                a_, b_ = xs[i], xs[i + 1]
                fa = va
                for _ in range(80):
                    m = 0.5 * (a_ + b_)
                    fm = system.f(m, u)
                    if fa * fm <= 0.0:
                        b_ = m
                    else:
                        a_, fa = m, fm
                root = 0.5 * (a_ + b_)
            else:
                continue
            out.append((float(root), float(u), float(system.h(root, u))))
    return out


def _storage_rate(storage, x, x_eq, xdot, eps_scale: float = 1e-6):
    """Directional numeric derivative of S along the vector field."""
    eps = eps_scale * (1.0 + np.abs(x))
    step = eps * np.sign(xdot + (xdot == 0.0))
    # dS/dt = S'(x) * xdot, via central difference in the state.
    return (storage(x + step, x_eq) - storage(x - step, x_eq)) / (2.0 * step) * xdot


def verify_passivation(
    system,
    transform: Transform2,
    indices_target: PassivityIndices,
    trials: int = 100,
    n_equilibria: int = 20,
    u_range=(-2.0, 2.0),
    x0_range=(-3.0, 3.0),
    horizon: float = 10.0,
    dt: float = 1e-3,
    tolerance: float = 1e-6,
    seed: int = 0,
    eval_stride: int = 20,
) -> PassivationReport:
    """Simulate random trajectories and check the transformed inequality.

    Inputs are piecewise-constant random signals; all trials integrate in one
    vectorized RK4 sweep.  At subsampled times the storage rate (numeric
    directional derivative of the supplied storage candidate) is compared
    against the transformed supply rate shifted by each sampled equilibrium.
    """
    if system.storage is None:
        raise NoStorageFunction("system supplies no storage-function candidate")
    transform.require_invertible()
    rng = np.random.default_rng(seed)

    u_grid = np.linspace(u_range[0], u_range[1], max(4, n_equilibria))
    eqs = find_equilibria(system, u_grid)
    if len(eqs) > n_equilibria:
        idx = rng.choice(len(eqs), size=n_equilibria, replace=False)
        eqs = [eqs[i] for i in sorted(idx)]

    n_steps = int(round(horizon / dt))
    n_segments = 10
    seg_len = max(1, n_steps // n_segments)
    u_levels = rng.uniform(u_range[0], u_range[1], size=(n_segments + 1, trials))
    x = rng.uniform(x0_range[0], x0_range[1], size=trials)

    f = np.vectorize(system.f)
    h = np.vectorize(system.h)

    xs, us = [], []
    for k in range(n_steps):
        u = u_levels[min(k // seg_len, n_segments)]
        if k % eval_stride == 0:
            xs.append(x.copy())
            us.append(u.copy())
        k1 = f(x, u)
        k2 = f(x + 0.5 * dt * k1, u)
        k3 = f(x + 0.5 * dt * k2, u)
        k4 = f(x + dt * k3, u)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise NonFiniteState(f"trajectory blew up at t = {k * dt:.3f}")

    xs = np.asarray(xs)  # (times, trials)
    us = np.asarray(us)
    ys = h(xs, us)
    xdots = f(xs, us)
    ut, yt = transform(us, ys)

    rho_t, nu_t = indices_target.rho, indices_target.nu
    worst = -np.inf
    for x_eq, u_eq, y_eq in eqs:
        ue_t, ye_t = transform(u_eq, y_eq)
        sdot = _storage_rate(system.storage, xs, x_eq, xdots)
        du = ut - ue_t
        dy = yt - ye_t
        supply = -rho_t * dy * dy - nu_t * du * du + dy * du
        worst = max(worst, float(np.max(sdot - supply)))
    return PassivationReport(
        max_violation=worst,
        tolerance=tolerance,
        trials=trials,
        equilibria=eqs,
    )
