"""Projective quadratic inequalities and their double-cone solution sets.

A PQI is the planar inequality ``a*xi**2 + b*xi*chi + c*chi**2 >= 0``.  When
``b**2 - 4*a*c > 0`` its solution set is a symmetric double-cone, bounded by
two rays on which the quadratic form vanishes.  This module provides the
algebra (non-triviality, membership, pullback under linear maps) and the
geometry (boundary rays, cone construction with an interior probe).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRays, SingularTransform, TrivialPQI

# Relative tolerance for the discriminant zero test, see also `is_nontrivial`.
DISC_RTOL = 1e-12
# Relative band for membership: |value| <= MEMBER_RTOL * |coeffs| * |z|^2.
MEMBER_RTOL = 1e-9


@dataclass(frozen=True)
class PQI:
    """Coefficient triple of ``a*xi**2 + b*xi*chi + c*chi**2 >= 0``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a == 0.0 and self.b == 0.0 and self.c == 0.0:
            raise ValueError("PQI coefficients must not all be zero")

    def __call__(self, xi, chi):
        return self.a * xi * xi + self.b * xi * chi + self.c * chi * chi

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=float)

    def normalized(self) -> "PQI":
        """Scale coefficients to unit Euclidean norm (sign preserved).

        Coefficients are pre-scaled by their largest magnitude so the norm
        never squares values whose squares would underflow to subnormals.
        """
        s = float(np.max(np.abs(self.coeffs)))
        v = np.asarray(self.coeffs) / s
        n = float(np.linalg.norm(v))
        return PQI(v[0] / n, v[1] / n, v[2] / n)


@dataclass(frozen=True)
class PassivityIndices:
    """Output index rho and input index nu, with rho*nu < 1/4."""

    rho: float
    nu: float

    def __post_init__(self):
        if not self.rho * self.nu < 0.25:
            raise TrivialPQI(
                f"indices rho={self.rho}, nu={self.nu} give rho*nu >= 1/4"
            )

    def pqi(self) -> PQI:
        """The induced increment inequality -nu*xi^2 + xi*chi - rho*chi^2 >= 0."""
        return PQI(-self.nu, 1.0, -self.rho)


@dataclass(frozen=True)
class SymmetricDoubleCone:
    """Double cone stored as two unit boundary rays plus an interior probe.

    Each ray is identified with its antipode; the probe pins down which pair
    of opposite sectors the cone occupies.
    """

    ray1: tuple[float, float]
    ray2: tuple[float, float]
    interior_probe: tuple[float, float]

    def _basis_inverse(self) -> np.ndarray:
        r = np.column_stack([self.ray1, self.ray2])
        det = r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]
        if abs(det) < 1e-14:
            raise DegenerateRays("boundary rays are colinear")
        return np.array([[r[1, 1], -r[0, 1]], [-r[1, 0], r[0, 0]]]) / det

    def contains(self, point, tol: float = 1e-12) -> bool:
        """Geometric membership: same sector pair as the interior probe."""
        inv = self._basis_inverse()
        w = inv @ np.asarray(point, dtype=float)
        wp = inv @ np.asarray(self.interior_probe, dtype=float)
        band = tol * float(w @ w + 1.0)
        if wp[0] * wp[1] > 0:
            return bool(w[0] * w[1] >= -band)
        return bool(w[0] * w[1] <= band)


def discriminant(p: PQI) -> float:
    return p.b * p.b - 4.0 * p.a * p.c


def is_nontrivial(p: PQI, rtol: float = DISC_RTOL) -> bool:
    """True iff b^2 - 4ac > 0, with a relative zero band."""
    scale = p.a * p.a + p.b * p.b + p.c * p.c
    return discriminant(p) > rtol * scale


def boundary_rays(p: PQI) -> tuple[np.ndarray, np.ndarray]:
    """Canonical direction pair spanning the cone boundary.

    The quadratic form vanishes on both returned rays.  Representatives are
    chosen so that factoring the form as a*(xi - s_minus*chi)(xi - s_plus*chi)
    yields rays (-s_minus, -1) and (s_plus, 1); for a == 0 the factorization
    chi*(b*xi + c*chi) yields (1, 0) and (-c, b).  This fixed convention keeps
    the two-cone mapping construction reproducible.
    """
    if not is_nontrivial(p):
        raise TrivialPQI(f"discriminant {discriminant(p)} is not positive")
    scale = math.sqrt(p.a * p.a + p.b * p.b + p.c * p.c)
    sqrt_d = math.sqrt(discriminant(p))
    # The paired-root formulas are cancellation-free for any nonzero a, so
    # the chi = 0 fallback is reserved for leading coefficients so small the
    # exact root q/a (bounded by scale/|a|) would overflow useful range.
    if abs(p.a) > 1e-30 * scale:
        # cancellation-free root pairing: one root via (-b -/+ sqrt_d)/2a,
        # the other via c divided by the same quantity
        if p.b >= 0.0:
            q = -0.5 * (p.b + sqrt_d)
            s_minus = q / p.a
            s_plus = p.c / q if q != 0.0 else (-p.b + sqrt_d) / (2.0 * p.a)
        else:
            q = -0.5 * (p.b - sqrt_d)
            s_plus = q / p.a
            s_minus = p.c / q if q != 0.0 else (-p.b - sqrt_d) / (2.0 * p.a)
        return np.array([-s_minus, -1.0]), np.array([s_plus, 1.0])
    # a == 0: one boundary line is chi = 0, the other b*xi + c*chi = 0
    # (b != 0 since the discriminant is b^2); scale by b for invariance.
    return np.array([1.0, 0.0]), np.array([-p.c / p.b, 1.0])


def _unit(v: np.ndarray) -> tuple[float, float]:
    n = float(np.linalg.norm(v))
    return (float(v[0] / n), float(v[1] / n))


def solution_set(p: PQI) -> SymmetricDoubleCone:
    """Build the double cone solving a non-trivial PQI.

    The probe is the bisector of the two unit rays if it satisfies the strict
    inequality, otherwise its 90-degree rotation (the bisector of the
    complementary sector pair), which then must lie strictly inside.
    """
    r1, r2 = boundary_rays(p)
    u1, u2 = _unit(r1), _unit(r2)
    probe = np.array([u1[0] + u2[0], u1[1] + u2[1]])
    if p(probe[0], probe[1]) <= 0.0:
        probe = np.array([-probe[1], probe[0]])
    return SymmetricDoubleCone(u1, u2, (float(probe[0]), float(probe[1])))


def contains(p: PQI, point, rtol: float = MEMBER_RTOL) -> bool:
    """Direct evaluation with a relative tolerance band."""
    xi, chi = float(point[0]), float(point[1])
    band = rtol * float(np.linalg.norm(p.coeffs)) * (xi * xi + chi * chi)
    return p(xi, chi) >= -band


def pullback(p: PQI, transform, tol: float = 1e-12) -> PQI:
    """The PQI q with q(z) = p(T^{-1} z) for an invertible 2x2 map T.

    Accepts a 2x2 array or anything exposing ``.matrix()``.
    """
    t = transform.matrix() if hasattr(transform, "matrix") else np.asarray(
        transform, dtype=float
    )
    det = t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0]
    # scale-free singularity guard: a genuinely rank-deficient map has a
    # determinant tiny against both its row and column norm products, while
    # well-defined maps with badly scaled rows or columns fail only one
    col_norms = float(np.linalg.norm(t[:, 0])) * float(np.linalg.norm(t[:, 1]))
    row_norms = float(np.linalg.norm(t[0, :])) * float(np.linalg.norm(t[1, :]))
    if det == 0.0 or abs(det) <= tol * min(col_norms, row_norms):
        raise SingularTransform(f"|det T| = {abs(det)} below tolerance")
    # T^{-1} = [[al, be], [ga, de]]; substitute xi = al*xi' + be*chi', etc.
    al = t[1, 1] / det
    be = -t[0, 1] / det
    ga = -t[1, 0] / det
    de = t[0, 0] / det
    a, b, c = p.a, p.b, p.c
    qa = a * al * al + b * al * ga + c * ga * ga
    qb = 2.0 * a * al * be + b * (al * de + be * ga) + 2.0 * c * ga * de
    qc = a * be * be + b * be * de + c * de * de
    return PQI(qa, qb, qc)
