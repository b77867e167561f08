"""Diffusively-coupled networks: simulation, transforms, dual optimization.

Agents sit on vertices, controllers on edges of a directed graph; the
coupling is ζ = Eᵀy, u = −Eμ with E the incidence matrix.  The module
integrates the closed loop with fixed-step RK4, applies per-agent 2x2 I/O
transforms in closed form, and predicts steady states by minimizing the two
dual network objectives (potentials over outputs, flows over edge variables)
with subgradient descent plus a simplex polish.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NonConvexCertificate,
    NonFiniteState,
    PreconditionFailed,
    SingularTransform,
)
from .relations import (
    OF_K,
    OF_K_INVERSE,
    IntegralFunction,
    PlanarRelation,
    integral_function,
    is_maximal_monotone,
    is_monotone,
    legendre,
    transform_relation,
)


@dataclass(frozen=True)
class Graph:
    """Directed graph given by a vertex count and (head, tail) edge pairs."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for h, t in self.edges:
            if not (0 <= h < self.vertex_count and 0 <= t < self.vertex_count):
                raise DimensionMismatch(f"edge ({h},{t}) out of vertex range")
            if h == t:
                raise DimensionMismatch(f"self-loop at vertex {h}")

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incidence_matrix(self) -> np.ndarray:
        E = np.zeros((self.vertex_count, len(self.edges)))
        for e, (h, t) in enumerate(self.edges):
            E[h, e] = 1.0
            E[t, e] = -1.0
        return E


@dataclass(frozen=True)
class AgentODE:
    """Scalar-state agent dx/dt = f(x,u), y = h(x,u).

    The output may include a constant feedthrough term: h(x,u) must equal
    h(x,0) + feedthrough*u.  Optional extras carry a storage-function
    candidate S(x, x_eq), declared passivity indices, and the steady-state
    relation used by the optimization path.
    """

    f: Callable[[float, float], float]
    h: Callable[[float, float], float]
    state_dim: int = 1
    feedthrough: float = 0.0
    storage: Callable[[float, float], float] | None = None
    indices: object | None = None
    relation: PlanarRelation | None = None

    def h0(self, x):
        return self.h(x, 0.0)

    def check_relation(self, n_samples: int = 50, tol: float = 1e-8) -> bool:
        """Declared relation consistent with the dynamics at its samples.

        Each sampled (u, y) must sit at a forced equilibrium: a root of
        f(., u) localized by bisection to width ~1e-12 whose output matches y
        within tolerance.  (The root is certified by its sign-change bracket
        rather than by |f|, which is unbounded below for infinite-slope
        dynamics like cube roots.)
        """
        if self.relation is None:
            return True
        idx = np.linspace(0, len(self.relation.u) - 1, n_samples).astype(int)
        for u, y in zip(self.relation.u[idx], self.relation.y[idx]):
            x = self._state_at(u, y)
            if x is None:
                return False
            if abs(self.h(x, u) - y) > tol * (1.0 + abs(y)):
                return False
        return True

    def _state_at(self, u: float, y: float, span: float = 50.0):
        """Bisect f(x, u) = 0 near the sample, preferring roots matching y."""
        xs = np.linspace(-span, span, 2001)
        vals = np.array([self.f(x, u) for x in xs])
        best = None
        for i in range(len(xs) - 1):
            if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0.0:
                a, b = xs[i], xs[i + 1]
                fa = vals[i]
                for _ in range(60):
                    m = 0.5 * (a + b)
                    fm = self.f(m, u)
                    if fa * fm <= 0.0:
                        b = m
                    else:
                        a, fa = m, fm
                root = 0.5 * (a + b)
                err = abs(self.h(root, u) - y)
                if best is None or err < best[1]:
                    best = (root, err)
        return None if best is None else best[0]


@dataclass(frozen=True)
class ControllerSpec:
    """Edge controller: a static positive gain or an ODE (phi, psi).

    Static controllers have the quadratic potential gain/2 * ζ²; dynamic
    controllers supply phi (state derivative) and psi (output map) plus an
    optional potential.
    """

    gain: float | None = None
    phi: Callable | None = None
    psi: Callable | None = None
    eta0: float = 0.0
    potential: IntegralFunction | None = None

    def __post_init__(self):
        if self.gain is not None and not self.gain > 0.0:
            raise ValueError(f"static controller gain must be positive: {self.gain}")
        if self.gain is None and (self.phi is None or self.psi is None):
            raise ValueError("controller needs either a gain or (phi, psi)")

    @property
    def is_static(self) -> bool:
        return self.gain is not None

    def potential_on(self, grid: np.ndarray) -> IntegralFunction:
        if self.is_static:
            return IntegralFunction.from_function(
                lambda z: 0.5 * self.gain * z * z, grid
            )
        if self.potential is None:
            raise NonConvexCertificate("dynamic controller lacks a potential")
        return self.potential


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    horizon: float = 100.0
    convergence_window: float = 1.0
    tol_conv: float = 1e-6
    store_stride: int = 10
    stop_on_convergence: bool = True


@dataclass(frozen=True)
class NetworkSpec:
    graph: Graph
    agents: tuple[AgentODE, ...]
    controllers: tuple[ControllerSpec, ...]
    x0: np.ndarray
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self):
        if len(self.agents) != self.graph.vertex_count:
            raise DimensionMismatch(
                f"{len(self.agents)} agents for {self.graph.vertex_count} vertices"
            )
        if len(self.controllers) != self.graph.edge_count:
            raise DimensionMismatch(
                f"{len(self.controllers)} controllers for "
                f"{self.graph.edge_count} edges"
            )
        if len(np.atleast_1d(self.x0)) != self.graph.vertex_count:
            raise DimensionMismatch("initial state length != vertex count")


@dataclass
class SimResult:
    t: np.ndarray
    x: np.ndarray        # (steps, vertices)
    u: np.ndarray
    y: np.ndarray
    zeta: np.ndarray     # (steps, edges)
    mu: np.ndarray
    converged: bool
    steady_state: np.ndarray  # terminal y estimate

    def to_csv(self, path) -> None:
        n = self.y.shape[1]
        m = self.zeta.shape[1]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            header = (["t"]
                      + [f"x{i}" for i in range(n)]
                      + [f"u{i}" for i in range(n)]
                      + [f"y{i}" for i in range(n)]
                      + [f"zeta{e}" for e in range(m)]
                      + [f"mu{e}" for e in range(m)])
            w.writerow(header)
            for k in range(len(self.t)):
                row = np.concatenate([
                    [self.t[k]], self.x[k], self.u[k], self.y[k],
                    self.zeta[k], self.mu[k],
                ])
                w.writerow([repr(float(v)) for v in row])

    def summary_dict(self) -> dict:
        return {
            "converged": bool(self.converged),
            "t_end": float(self.t[-1]),
            "steady_state_y": [float(v) for v in self.steady_state],
            "terminal_u": [float(v) for v in self.u[-1]],
        }


def _outputs(agents, x, u_guess, E, gains, dynamic_mu=None):
    """Closed-loop outputs and inputs at state x for static couplings.

    With constant feedthrough D and static gains G the loop
    y = h0(x) + D u, u = -E G Eᵀ y is linear in y and solved directly;
    dynamic controllers contribute a fixed mu term instead.
    """
    n = len(agents)
    h0 = np.array([agents[i].h0(x[i]) for i in range(n)])
    D = np.array([a.feedthrough for a in agents])
    if dynamic_mu is not None:
        u = -E @ dynamic_mu
        y = h0 + D * u
        return u, y
    M = E @ (gains[:, None] * E.T)
    if np.any(D != 0.0):
        y = np.linalg.solve(np.eye(n) + D[:, None] * M, h0)
    else:
        y = h0
    u = -M @ y
    return u, y


def simulate(spec: NetworkSpec) -> SimResult:
    """Fixed-step RK4 integration of the diffusively-coupled closed loop.

    The couplings ζ = Eᵀy and u = -Eμ are evaluated, never integrated, so
    the stored signals satisfy them exactly.  The convergence flag is set
    when the max state-derivative norm over the trailing window drops below
    the configured tolerance; by default integration stops there.
    """
    cfg = spec.integrator
    if cfg.dt <= 0.0:
        raise ValueError("integrator step must be positive")
    E = spec.graph.incidence_matrix()
    n, m = spec.graph.vertex_count, spec.graph.edge_count
    agents = spec.agents
    static = all(c.is_static for c in spec.controllers)
    if not static and any(a.feedthrough != 0.0 for a in agents):
        raise DimensionMismatch(
            "dynamic edge controllers require agents without feedthrough"
        )
    gains = np.array([c.gain if c.is_static else 0.0 for c in spec.controllers])
    eta = np.array([c.eta0 for c in spec.controllers])

    def controller_mu(eta_vec, zeta):
        mu = np.empty(m)
        for e, c in enumerate(spec.controllers):
            mu[e] = c.gain * zeta[e] if c.is_static else c.psi(eta_vec[e], zeta[e])
        return mu

    def rhs(x, eta_vec):
        if static:
            u, y = _outputs(agents, x, None, E, gains)
            zeta = E.T @ y
            mu = gains * zeta
            u = -E @ mu
            eta_dot = np.zeros(m)
        else:
            y = np.array([agents[i].h0(x[i]) for i in range(n)])
            zeta = E.T @ y
            mu = controller_mu(eta_vec, zeta)
            u = -E @ mu
            eta_dot = np.array([
                0.0 if c.is_static else c.phi(eta_vec[e], zeta[e])
                for e, c in enumerate(spec.controllers)
            ])
        xdot = np.array([agents[i].f(x[i], u[i]) for i in range(n)])
        return xdot, eta_dot, u, y, zeta, mu

    n_steps = int(round(cfg.horizon / cfg.dt))
    window = max(1, int(round(cfg.convergence_window / cfg.dt)))
    x = np.atleast_1d(np.asarray(spec.x0, dtype=float)).copy()

    ts, xs, us, ys, zetas, mus = [], [], [], [], [], []
    recent = np.full(window, np.inf)
    converged = False
    dt = cfg.dt
    for k in range(n_steps + 1):
        k1, e1, u, y, zeta, mu = rhs(x, eta)
        stored = k % cfg.store_stride == 0 or k == n_steps
        if stored:
            ts.append(k * dt)
            xs.append(x.copy())
            us.append(u)
            ys.append(y)
            zetas.append(zeta)
            mus.append(mu)
        recent[k % window] = float(np.max(np.abs(k1))) if n else 0.0
        if k >= window and np.max(recent) < cfg.tol_conv:
            converged = True
            if cfg.stop_on_convergence:
                if not stored:
                    ts.append(k * dt)
                    xs.append(x.copy())
                    us.append(u)
                    ys.append(y)
                    zetas.append(zeta)
                    mus.append(mu)
                break
        if k == n_steps:
            break
        k2, e2, *_ = rhs(x + 0.5 * dt * k1, eta + 0.5 * dt * e1)
        k3, e3, *_ = rhs(x + 0.5 * dt * k2, eta + 0.5 * dt * e2)
        k4, e4, *_ = rhs(x + dt * k3, eta + dt * e3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        eta = eta + (dt / 6.0) * (e1 + 2.0 * e2 + 2.0 * e3 + e4)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(eta))):
            raise NonFiniteState(f"state blew up at t = {k * dt:.3f}")

    return SimResult(
        t=np.asarray(ts),
        x=np.asarray(xs),
        u=np.asarray(us),
        y=np.asarray(ys),
        zeta=np.asarray(zetas),
        mu=np.asarray(mus),
        converged=converged,
        steady_state=np.asarray(ys[-1]),
    )


# ---------------------------------------------------------------------------
# Per-agent I/O transforms


def transform_agent(agent: AgentODE, transform) -> AgentODE:
    """Closed-form agent realizing the transformed I/O pair.

    With (u~, y~) = T(u, y) and constant feedthrough D, the original input
    solves u = (u~ - b*h0(x)) / (a + b*D) and the new output is
    y~ = c*u + d*h(x, u); the new feedthrough is (c + d*D)/(a + b*D).
    """
    transform.require_invertible()
    a, b, c, d = transform.a, transform.b, transform.c, transform.d
    D = agent.feedthrough
    denom = a + b * D
    if abs(denom) <= 1e-12:
        raise SingularTransform(
            "a + b*feedthrough vanished; transformed input undefined"
        )
    h0 = agent.h0
    f_old, h_old = agent.f, agent.h

    def u_of(x, ut):
        return (ut - b * h0(x)) / denom

    def f_new(x, ut):
        return f_old(x, u_of(x, ut))

    def h_new(x, ut):
        u = u_of(x, ut)
        return c * u + d * h_old(x, u)

    relation = (None if agent.relation is None
                else transform_relation(agent.relation, transform))
    return replace(
        agent,
        f=f_new,
        h=h_new,
        feedthrough=(c + d * D) / denom,
        relation=relation,
        indices=None,
    )


def apply_network_transform(spec: NetworkSpec, transforms) -> NetworkSpec:
    """Per-vertex I/O transforms applied to every agent of the network."""
    if len(transforms) != spec.graph.vertex_count:
        raise DimensionMismatch("one transform per vertex required")
    agents = tuple(
        transform_agent(agent, T) for agent, T in zip(spec.agents, transforms)
    )
    return replace(spec, agents=agents)


# ---------------------------------------------------------------------------
# Dual network optimization


@dataclass(frozen=True)
class OptimizationResult:
    minimizer: np.ndarray
    objective: float
    primal: np.ndarray       # y for the potential problem, u for the flow one
    coupling: np.ndarray     # zeta or mu
    iterations: int


def _pwl(fun: IntegralFunction):
    """Value and subgradient callables of the linear interpolant."""
    g, v = fun.grid, fun.values
    slopes = np.diff(v) / np.diff(g)

    def value(x):
        return np.interp(x, g, v)

    def subgrad(x):
        j = np.clip(np.searchsorted(g, x) - 1, 0, len(slopes) - 1)
        return slopes[j]

    return value, subgrad


def _minimize_separable(node_funs, edge_funs, A, z0, max_iter, tol, step0):
    """Minimize sum_i F_i(z_i') + sum_e G_e((A z)_e) over z.

    z' is A_node z when A is None... here node terms act on z directly when
    A is the coupling for edge terms only.  Subgradient descent with c/sqrt(k)
    steps and best-iterate tracking, then a Nelder-Mead polish seeded at the
    best iterate.
    """
    node_v, node_g = zip(*(_pwl(f) for f in node_funs))
    edge_v, edge_g = zip(*(_pwl(f) for f in edge_funs)) if edge_funs else ((), ())

    def objective(z):
        total = sum(float(v(z[i])) for i, v in enumerate(node_v))
        if edge_funs:
            w = A @ z
            total += sum(float(v(w[e])) for e, v in enumerate(edge_v))
        return total

    def subgradient(z):
        g = np.array([float(gi(z[i])) for i, gi in enumerate(node_g)])
        if edge_funs:
            w = A @ z
            g = g + A.T @ np.array([float(ge(w[e])) for e, ge in enumerate(edge_g)])
        return g

    z = np.asarray(z0, dtype=float).copy()
    best_z, best_f = z.copy(), objective(z)
    k = 0
    for k in range(1, max_iter + 1):
        g = subgradient(z)
        gn = float(np.linalg.norm(g))
        if gn < 1e-14:
            break
        z = z - (step0 / np.sqrt(k)) * g / gn
        f = objective(z)
        if f < best_f:
            best_f, best_z = f, z.copy()
    res = minimize(objective, best_z, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 20_000})
    if res.fun <= best_f:
        best_z, best_f = np.atleast_1d(res.x), float(res.fun)
    return best_z, best_f, k


DEFAULT_OPT_GRID = np.linspace(-20.0, 20.0, 4001)


def _agent_kstar(agent: AgentODE, grid) -> IntegralFunction:
    if agent.relation is None:
        raise PreconditionFailed("agent lacks a steady-state relation")
    F = integral_function(agent.relation, OF_K_INVERSE)
    if not F.convexity_certificate:
        raise NonConvexCertificate(
            "agent potential failed the convexity certificate"
        )
    return F


def solve_opp(
    spec: NetworkSpec,
    grid=None,
    node_potentials=None,
    max_iter: int = 2000,
    tol: float = 1e-10,
) -> OptimizationResult:
    """Steady-state outputs from the potential problem.

    Minimizes sum_i K*_i(y_i) + sum_e Γ_e((Eᵀy)_e); K*_i comes from each
    agent's relation (integrated in the inverse direction) unless supplied,
    Γ_e from the edge controllers.
    """
    grid = DEFAULT_OPT_GRID if grid is None else np.asarray(grid, dtype=float)
    if node_potentials is None:
        node_potentials = [_agent_kstar(a, grid) for a in spec.agents]
    for F in node_potentials:
        if not F.convexity_certificate:
            raise NonConvexCertificate("node potential is not certified convex")
    edge_potentials = [c.potential_on(grid) for c in spec.controllers]
    E = spec.graph.incidence_matrix()
    y0 = np.zeros(spec.graph.vertex_count)
    y, fval, iters = _minimize_separable(
        node_potentials, edge_potentials, E.T, y0, max_iter, tol, step0=1.0
    )
    if not np.isfinite(fval):
        raise NoConvergence("potential problem did not converge")
    return OptimizationResult(y, fval, y, E.T @ y, iters)


def solve_ofp(
    spec: NetworkSpec,
    grid=None,
    node_potentials=None,
    edge_duals=None,
    max_iter: int = 2000,
    tol: float = 1e-10,
) -> OptimizationResult:
    """Steady-state flows from the dual problem over edge variables.

    Minimizes sum_i K_i((-Eμ)_i) + sum_e Γ*_e(μ_e); K_i is the conjugate of
    the agent potential (via the discrete Legendre transform) unless given,
    and likewise Γ*_e for static gains is μ²/(2*gain).
    """
    grid = DEFAULT_OPT_GRID if grid is None else np.asarray(grid, dtype=float)
    if node_potentials is None:
        node_potentials = [
            legendre(_agent_kstar(a, grid), grid) for a in spec.agents
        ]
    if edge_duals is None:
        edge_duals = []
        for c in spec.controllers:
            if c.is_static:
                g = c.gain
                edge_duals.append(IntegralFunction.from_function(
                    lambda z, g=g: z * z / (2.0 * g), grid
                ))
            else:
                edge_duals.append(legendre(c.potential_on(grid), grid))
    E = spec.graph.incidence_matrix()
    m = spec.graph.edge_count
    if m == 0:
        u = np.zeros(spec.graph.vertex_count)
        obj = float(sum(F(0.0) for F in node_potentials))
        return OptimizationResult(np.zeros(0), obj, u, np.zeros(0), 0)

    # node terms act on u = -E mu, so fold them into "edge" terms over mu
    node_v, _ = zip(*(_pwl(f) for f in node_potentials))
    edge_v, _ = zip(*(_pwl(f) for f in edge_duals))

    def objective(mu):
        u = -E @ mu
        total = sum(float(v(u[i])) for i, v in enumerate(node_v))
        total += sum(float(v(mu[e])) for e, v in enumerate(edge_v))
        return total

    node_pwls = [_pwl(f) for f in node_potentials]
    edge_pwls = [_pwl(f) for f in edge_duals]

    def subgradient(mu):
        u = -E @ mu
        gu = np.array([float(node_pwls[i][1](u[i])) for i in range(len(u))])
        gm = np.array([float(edge_pwls[e][1](mu[e])) for e in range(m)])
        return -E.T @ gu + gm

    mu = np.zeros(m)
    best_mu, best_f = mu.copy(), objective(mu)
    iters = 0
    for k in range(1, max_iter + 1):
        g = subgradient(mu)
        gn = float(np.linalg.norm(g))
        if gn < 1e-14:
            break
        mu = mu - (1.0 / np.sqrt(k)) * g / gn
        f = objective(mu)
        if f < best_f:
            best_f, best_mu = f, mu.copy()
        iters = k
    res = minimize(objective, best_mu, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 20_000})
    if res.fun <= best_f:
        best_mu, best_f = np.atleast_1d(res.x), float(res.fun)
    return OptimizationResult(best_mu, best_f, -E @ best_mu, best_mu, iters)


# ---------------------------------------------------------------------------
# Prediction + verification


@dataclass
class PredictionReport:
    y_predicted: np.ndarray
    y_simulated: np.ndarray
    gap: float
    tolerance: float
    converged: bool

    @property
    def passed(self) -> bool:
        return self.converged and self.gap <= self.tolerance


def predict_and_verify(
    spec: NetworkSpec,
    transforms,
    grid=None,
    tolerance: float = 1e-2,
) -> PredictionReport:
    """Transform the network, predict its steady state, and simulate it.

    Preconditions checked and reported on failure: every transformed agent
    relation is (numerically) maximally monotone, at least one side of each
    relation is strictly monotone, and every controller is MEIP (static
    positive gain or dynamic with a certified convex potential).
    """
    tspec = apply_network_transform(spec, transforms)
    failures = []
    for i, agent in enumerate(tspec.agents):
        if agent.relation is None:
            failures.append(f"agent {i}: no steady-state relation declared")
            continue
        if not is_maximal_monotone(agent.relation):
            failures.append(
                f"agent {i}: transformed relation is not maximally monotone"
            )
        elif not (is_monotone(agent.relation, strict=True)
                  or is_monotone(agent.relation.inverse(), strict=True)):
            failures.append(
                f"agent {i}: neither the relation nor its inverse is strictly "
                "monotone"
            )
    for e, c in enumerate(tspec.controllers):
        if not c.is_static:
            try:
                pot = c.potential_on(DEFAULT_OPT_GRID)
            except NonConvexCertificate:
                failures.append(f"controller {e}: no potential supplied")
                continue
            if not pot.convexity_certificate:
                failures.append(f"controller {e}: potential is not convex")
    if failures:
        raise PreconditionFailed("; ".join(failures))

    opt = solve_opp(tspec, grid=grid)
    sim = simulate(tspec)
    gap = float(np.max(np.abs(sim.steady_state - opt.primal)))
    return PredictionReport(
        y_predicted=opt.primal,
        y_simulated=sim.steady_state,
        gap=gap,
        tolerance=tolerance,
        converged=sim.converged,
    )


# ---------------------------------------------------------------------------
# JSON ingest


def spec_from_json(doc: str | dict, agent_registry: dict | None = None) -> NetworkSpec:
    """Build a NetworkSpec from a JSON document.

    Expected shape::

        {"graph": {"vertices": 5, "edges": [[0,1], ...]},
         "agents": [{"kind": "gradient", "params": {...}}, ...],
         "controllers": [{"gain": 1.0}, ...],
         "x0": [...],
         "integrator": {"dt": 1e-3, "horizon": 100.0}}

    ``agents`` may be a single object applied to every vertex.  Agent kinds
    resolve through ``agent_registry`` (defaults to the built-in fixtures).
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    if agent_registry is None:
        from .systems import AGENT_REGISTRY
        agent_registry = AGENT_REGISTRY
    g = doc["graph"]
    graph = Graph(int(g["vertices"]), tuple((int(h), int(t)) for h, t in g["edges"]))

    raw_agents = doc["agents"]
    if isinstance(raw_agents, dict):
        raw_agents = [raw_agents] * graph.vertex_count
    agents = []
    for spec_a in raw_agents:
        kind = spec_a["kind"]
        if kind not in agent_registry:
            raise ValueError(f"unknown agent kind {kind!r}")
        agents.append(agent_registry[kind](**spec_a.get("params", {})))

    raw_ctrl = doc["controllers"]
    if isinstance(raw_ctrl, dict):
        raw_ctrl = [raw_ctrl] * graph.edge_count
    controllers = tuple(ControllerSpec(gain=float(c["gain"])) for c in raw_ctrl)

    x0 = np.asarray(doc["x0"], dtype=float)
    integ = IntegratorConfig(**doc.get("integrator", {}))
    return NetworkSpec(graph, tuple(agents), controllers, x0, integ)
