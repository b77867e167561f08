"""Ready-made agents, plants, and networks used by tests, CLI, and scripts.

Each factory is named for the behavior it exhibits:

- ``odd_cubic_agent``: scalar agent whose steady-state inverse relation is
  the non-monotone cubic u = y^3 - y (output-passive short).
- ``nonmonotone_demo_agent``: agent with output feedthrough whose
  steady-state relation and inverse are both non-monotone; the standard
  demonstration target for the monotonizing transform.
- ``pendulum_gradient_agent``: gradient system with a sinusoidal potential;
  cursive but non-monotone steady-state relation.
- ``unstable_plant_tf``: second-order transfer function with one unstable
  pole, the worked example for the LTI index path.
- ``pendulum_network`` / ``quadratic_network``: seeded diffusively-coupled
  fixtures for the simulation and optimization paths.
"""

from __future__ import annotations

import numpy as np

from .lti import RationalTF
from .network import (
    AgentODE,
    ControllerSpec,
    Graph,
    IntegratorConfig,
    NetworkSpec,
)
from .pqi import PassivityIndices
from .relations import PlanarRelation


def odd_cubic_agent(sigma_range=(-3.0, 3.0), n: int = 4001) -> AgentODE:
    """dx/dt = -x + cbrt(x) + u, y = cbrt(x); inverse relation u = y^3 - y."""
    relation = PlanarRelation.from_param_curve(
        lambda s: s**3 - s, lambda s: s, sigma_range, n
    )
    return AgentODE(
        f=lambda x, u: -x + np.cbrt(x) + u,
        h=lambda x, u: np.cbrt(x),
        storage=lambda x, xe: 0.5 * (x - xe) ** 2,
        indices=PassivityIndices(-1.0, 0.0),
        relation=relation,
    )


def nonmonotone_demo_agent(sigma_range=(-3.0, 3.0), n: int = 4001) -> AgentODE:
    """dx/dt = -cbrt(x) + x/2 + u/2, y = x/2 - u/2.

    Steady states trace (u, y) = (2s - s^3, s^3 - s) with s the cube root of
    the equilibrium state: non-monotone in both directions, but cursive.
    """
    relation = PlanarRelation.from_param_curve(
        lambda s: 2.0 * s - s**3, lambda s: s**3 - s, sigma_range, n
    )
    return AgentODE(
        f=lambda x, u: -np.cbrt(x) + 0.5 * x + 0.5 * u,
        h=lambda x, u: 0.5 * x - 0.5 * u,
        feedthrough=-0.5,
        storage=lambda x, xe: 0.5 * (x - xe) ** 2,
        indices=PassivityIndices(-2.0 / 3.0, -1.0 / 3.0),
        relation=relation,
    )


def pendulum_gradient_agent(
    r1: float = 2.5,
    r2: float = 0.1,
    sigma_range=(-40.0, 40.0),
    n: int = 4001,
) -> AgentODE:
    """Gradient flow of U(x) = -r1*cos(x) + r2*x^2/2 driven by u, with y = x.

    The steady-state relation u = r1*sin(y) + r2*y is cursive but
    non-monotone whenever r1 > r2.
    """
    relation = PlanarRelation.from_param_curve(
        lambda s: r1 * np.sin(s) + r2 * s, lambda s: s, sigma_range, n
    )
    return AgentODE(
        f=lambda x, u: -r1 * np.sin(x) - r2 * x + u,
        h=lambda x, u: x,
        storage=lambda x, xe: 0.5 * (x - xe) ** 2,
        relation=relation,
    )


def quadratic_agent(center: float = 0.0) -> AgentODE:
    """dx/dt = -x + u + center, y = x; steady state y = u + center.

    The inverse relation u = y - center integrates to the shifted quadratic
    potential (y - center)^2 / 2.
    """
    relation = PlanarRelation.from_param_curve(
        lambda s: s - center, lambda s: s, (-20.0, 20.0), 4001
    )
    return AgentODE(
        f=lambda x, u: -x + u + center,
        h=lambda x, u: x,
        storage=lambda x, xe: 0.5 * (x - xe) ** 2,
        relation=relation,
    )


def unstable_plant_tf(gain: float = 0.75) -> RationalTF:
    """gain / (s^2 + 2s - 2): stable pole plus one unstable pole."""
    return RationalTF.make([gain], [-2.0, 2.0, 1.0])


def pendulum_network(
    n_agents: int = 5,
    gain: float = 1.0,
    r1: float = 2.5,
    r2: float = 0.1,
    seed: int = 4,
    x0_range=(-20.0, 20.0),
    integrator: IntegratorConfig | None = None,
) -> NetworkSpec:
    """Path-graph network of gradient-pendulum agents with static gains.

    Initial states are drawn uniformly from ``x0_range`` with a fixed seed so
    runs are reproducible.  The default seed and range are chosen so the
    untransformed network settles into several output clusters while the
    transformed network still reaches consensus at zero.
    """
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(x0_range[0], x0_range[1], size=n_agents)
    graph = Graph.path(n_agents)
    agents = tuple(pendulum_gradient_agent(r1, r2) for _ in range(n_agents))
    controllers = tuple(ControllerSpec(gain=gain) for _ in range(graph.edge_count))
    return NetworkSpec(graph, agents, controllers, x0,
                       integrator or IntegratorConfig())


def quadratic_network(
    centers=(1.0, 3.0),
    gain: float = 1.0,
    integrator: IntegratorConfig | None = None,
) -> NetworkSpec:
    """Chain of quadratic agents; closed-form optimum makes it the duality fixture."""
    n = len(centers)
    graph = Graph.path(n)
    agents = tuple(quadratic_agent(c) for c in centers)
    controllers = tuple(ControllerSpec(gain=gain) for _ in range(graph.edge_count))
    return NetworkSpec(graph, agents, controllers, np.zeros(n),
                       integrator or IntegratorConfig())


AGENT_REGISTRY = {
    "odd-cubic": odd_cubic_agent,
    "nonmonotone-demo": nonmonotone_demo_agent,
    "pendulum-gradient": pendulum_gradient_agent,
    "quadratic": quadratic_agent,
}
