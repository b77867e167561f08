"""LTI analysis path: stability, L-infinity norms, and passivity indices.

Transfer functions are rational with real coefficients.  Stability is read
off companion-matrix roots; peak gains come from a log-spaced frequency
sweep refined by golden-section search; the index formulas turn a stabilized
loop gain into an equilibrium-independent passivity-index pair, and a loop
transformation maps a transfer function through a 2x2 I/O change of
coordinates.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDegree,
    DegenerateTransformedTF,
    DestabilizingLambda,
    DegreeDrop,
    NoStabilizingLambda,
    NonpositiveGain,
    SingularDenominator1p2lm,
    UnstableDenominator,
)
from .pqi import PassivityIndices


@dataclass(frozen=True)
class FrequencyIndices:
    """Strict passivity estimates from a frequency sweep.

    Unlike PassivityIndices this pair is not tied to a non-trivial quadratic
    inequality (both values can be large and positive for a system that is
    simultaneously input- and output-strictly passive), so no product bound
    is enforced.
    """

    rho: float
    nu: float


STABILITY_MARGIN = 1e-9
TRIM_RTOL = 1e-14
COMMON_ROOT_TOL = 1e-8


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial stored as ascending coefficients, trailing zeros trimmed."""

    coeffs: tuple[float, ...]

    @classmethod
    def make(cls, coeffs) -> "RealPolynomial":
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        scale = float(np.abs(c).max())
        if scale == 0.0:
            return cls((0.0,))
        keep = len(c)
        while keep > 1 and abs(c[keep - 1]) <= TRIM_RTOL * scale:
            keep -= 1
        return cls(tuple(float(v) for v in c[:keep]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, s):
        return np.polynomial.polynomial.polyval(s, np.asarray(self.coeffs))

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([])
        return np.roots(np.asarray(self.coeffs)[::-1])

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n)
        a[: len(self.coeffs)] += self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return RealPolynomial.make(a)

    def scaled(self, k: float) -> "RealPolynomial":
        return RealPolynomial.make(np.asarray(self.coeffs) * k)


def is_stable(q: RealPolynomial) -> bool:
    """All roots in the open left half-plane with margin 1e-9."""
    if q.degree < 1:
        raise DegenerateDegree("stability is undefined for constant polynomials")
    return bool(np.all(q.roots().real < -STABILITY_MARGIN))


@dataclass(frozen=True)
class RationalTF:
    """Proper rational transfer function num/den with real coefficients."""

    num: RealPolynomial
    den: RealPolynomial

    @classmethod
    def make(cls, num, den) -> "RationalTF":
        n = num if isinstance(num, RealPolynomial) else RealPolynomial.make(num)
        d = den if isinstance(den, RealPolynomial) else RealPolynomial.make(den)
        if d.is_zero:
            raise ValueError("denominator must be nonzero")
        if n.degree > d.degree:
            raise ValueError("transfer function must be proper (deg num <= deg den)")
        return cls(n, d)._cancel_common_roots()

    def _cancel_common_roots(self) -> "RationalTF":
        if self.num.is_zero or self.num.degree < 1 or self.den.degree < 1:
            return self
        nr = list(self.num.roots())
        dr = list(self.den.roots())
        cancelled = False
        kept_d = []
        for r in dr:
            hit = None
            for i, z in enumerate(nr):
                if abs(z - r) <= COMMON_ROOT_TOL * (1.0 + abs(r)):
                    hit = i
                    break
            if hit is None:
                kept_d.append(r)
            else:
                nr.pop(hit)
                cancelled = True
        if not cancelled:
            return self
        warnings.warn("cancelling near-common numerator/denominator roots",
                      stacklevel=3)
        n_lead = self.num.coeffs[-1]
        d_lead = self.den.coeffs[-1]
        num = RealPolynomial.make(np.real(np.poly(nr))[::-1] * n_lead if nr
                                  else [n_lead])
        den = RealPolynomial.make(np.real(np.poly(kept_d))[::-1] * d_lead if kept_d
                                  else [d_lead])
        return RationalTF(num, den)

    def __call__(self, s):
        return self.num(s) / self.den(s)

    def to_json_dict(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "RationalTF":
        return cls.make(d["num"], d["den"])


def _golden_refine(fun, lo: float, hi: float, maximize: bool, iters: int = 200):
    """Golden-section search for an interior extremum of fun on [lo, hi]."""
    sign = -1.0 if maximize else 1.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = sign * fun(c), sign * fun(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = sign * fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = sign * fun(d)
        if b - a <= 1e-13 * (1.0 + abs(a)):
            break
    x = 0.5 * (a + b)
    return x, fun(x)


def _sweep_extremum(fun, maximize: bool = True) -> float:
    """Extremize fun(omega) over omega >= 0 via log sweep plus refinement.

    The sweep covers [1e-4, 1e4] rad/s with 10^4 points, plus omega = 0 and a
    high-frequency tail; the grid extends adaptively while the extremum sits
    on the upper boundary, then a golden-section pass polishes the winner.
    """
    lo_exp, hi_exp = -4.0, 4.0
    best_w, best_v = None, None
    for _ in range(8):
        omegas = np.concatenate([[0.0], np.logspace(lo_exp, hi_exp, 10_000)])
        vals = np.asarray(fun(omegas), dtype=float)
        vals = np.where(np.isfinite(vals), vals,
                        -np.inf if maximize else np.inf)
        i = int(np.argmax(vals) if maximize else np.argmin(vals))
        best_w, best_v = float(omegas[i]), float(vals[i])
        if i < len(omegas) - 1:
            break
        hi_exp += 2.0  # extremum on the boundary: extend the sweep
    i = int(np.argmax(vals) if maximize else np.argmin(vals))
    lo = float(omegas[max(0, i - 1)])
    hi = float(omegas[min(len(omegas) - 1, i + 1)])
    if hi > lo:
        w, v = _golden_refine(lambda x: float(fun(np.asarray([x]))[0]), lo, hi,
                              maximize)
        if (v > best_v) if maximize else (v < best_v):
            best_v = v
    return best_v


def linf_norm(G: RationalTF) -> float:
    """Peak magnitude sup_omega |G(j omega)| for a stable transfer function."""
    if G.den.degree >= 1 and not is_stable(G.den):
        raise UnstableDenominator("peak gain requires a stable denominator")
    return _sweep_extremum(lambda w: np.abs(G(1j * w)), maximize=True)


def l2gain_to_input_index(beta: float) -> float:
    """Input-index bound -(beta^2 + 1/4) guaranteed by a finite L2 gain."""
    if not beta > 0.0:
        raise NonpositiveGain(f"L2 gain must be positive, got {beta}")
    return -(beta * beta + 0.25)


def loop_mu(G: RationalTF, lam: float) -> float:
    """mu = peak of the stabilized loop p/(q + lam*p) plus 1/4."""
    shifted = G.den + G.num.scaled(lam)
    if shifted.degree != G.den.degree:
        raise DegreeDrop(
            f"q + {lam}*p drops degree from {G.den.degree} to {shifted.degree}"
        )
    if not is_stable(shifted):
        raise DestabilizingLambda(f"q + {lam}*p is not a stable polynomial")
    return linf_norm(RationalTF(G.num, shifted)) + 0.25


def eips_indices(G: RationalTF, lam: float) -> PassivityIndices:
    """Equilibrium-independent passivity indices from a stabilizing loop gain.

    With p/q = G and q + lam*p stable of unchanged degree, the peak of the
    stabilized loop p/(q + lam*p) plus 1/4 gives mu, and the index pair is
    rho = -lam(1 + lam*mu)/(1 + 2*lam*mu), nu = -mu/(1 + 2*lam*mu).
    """
    mu = loop_mu(G, lam)
    denom = 1.0 + 2.0 * lam * mu
    if abs(denom) <= 1e-12:
        raise SingularDenominator1p2lm("1 + 2*lambda*mu vanished")
    rho = -lam * (1.0 + lam * mu) / denom
    nu = -mu / denom
    return PassivityIndices(rho, nu)


def lambda_search(G: RationalTF, grid) -> float:
    """Grid value of lambda minimizing mu among the admissible candidates.

    Admissible means q + lambda*p keeps the denominator degree and is stable.
    """
    best_lam, best_mu = None, np.inf
    for lam in np.asarray(grid, dtype=float):
        shifted = G.den + G.num.scaled(float(lam))
        if shifted.degree != G.den.degree or not is_stable(shifted):
            continue
        mu = linf_norm(RationalTF(G.num, shifted)) + 0.25
        if mu < best_mu:
            best_lam, best_mu = float(lam), mu
    if best_lam is None:
        raise NoStabilizingLambda("no grid value stabilizes q + lambda*p")
    return best_lam


def transformed_tf(G: RationalTF, transform) -> RationalTF:
    """Loop-transformed transfer function (c*q + d*p)/(a*q + b*p).

    Follows from u-tilde = (a + b*G)u and y-tilde = (c + d*G)u in the
    frequency domain; near-common roots of the two combinations cancel with
    a warning.
    """
    a, b, c, d = transform.a, transform.b, transform.c, transform.d
    den = G.den.scaled(a) + G.num.scaled(b)
    num = G.den.scaled(c) + G.num.scaled(d)
    if den.is_zero:
        raise DegenerateTransformedTF("a*q + b*p vanished identically")
    if num.degree > den.degree:
        raise DegenerateTransformedTF(
            "transformed numerator degree exceeds denominator degree"
        )
    return RationalTF.make(num, den)


def tf_passivity_indices(G: RationalTF) -> FrequencyIndices:
    """Frequency-domain strict indices of a stable transfer function.

    The input index is the infimum of Re G(j omega), the output index the
    infimum of Re 1/G(j omega), both over the sweep used for peak gains.
    Positive values certify input- and output-strict passivity.
    """
    if G.den.degree >= 1 and not is_stable(G.den):
        raise UnstableDenominator("index sweep requires a stable denominator")
    nu_hat = _sweep_extremum(lambda w: np.real(G(1j * w)), maximize=False)
    rho_hat = _sweep_extremum(lambda w: np.real(1.0 / G(1j * w)), maximize=False)
    return FrequencyIndices(float(rho_hat), float(nu_hat))
