"""Relation transport, integral functions, Legendre duals, shape checks."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqikit import (
    IntegralFunction,
    PlanarRelation,
    Transform2,
    compose_via_stages,
    decompose,
    integral_function,
    is_cursive,
    is_maximal_monotone,
    is_monotone,
    legendre,
    transform_relation,
)
from pqikit.errors import MultiValued, WrongRepresentation
from pqikit.relations import OF_K, OF_K_INVERSE
from pqikit.systems import (
    nonmonotone_demo_agent,
    odd_cubic_agent,
    pendulum_gradient_agent,
)


def cubic_fold_curve(n=4001):
    """(2s - s^3, s^3 - s): non-monotone in both coordinates."""
    return nonmonotone_demo_agent(n=n).relation


class TestTransformRelation:
    def test_fold_curve_straightens_to_cubic(self):
        rel = cubic_fold_curve()
        out = transform_relation(rel, Transform2(1.0, 1.0, 1.0, 2.0))
        s = rel.sigma
        assert np.max(np.abs(out.u - s)) <= 1e-12
        assert np.max(np.abs(out.y - s**3)) <= 1e-12

    def test_identity_is_noop(self):
        rel = cubic_fold_curve()
        out = transform_relation(rel, Transform2.identity())
        np.testing.assert_array_equal(out.u, rel.u)
        np.testing.assert_array_equal(out.y, rel.y)

    def test_sinusoidal_curve_gains_linear_term(self):
        r1, r2 = 2.5, 0.1
        rel = pendulum_gradient_agent(r1, r2).relation
        out = transform_relation(rel, Transform2(1.0, r1, 0.0, 1.0))
        s = rel.sigma
        np.testing.assert_allclose(out.u, r1 * np.sin(s) + (r1 + r2) * s,
                                   atol=1e-12)
        np.testing.assert_allclose(out.y, s, atol=1e-15)


class TestComposeViaStages:
    def test_fold_curve_through_stages(self):
        rel = cubic_fold_curve()
        T = Transform2(1.0, 1.0, 1.0, 2.0)
        out = compose_via_stages(rel, decompose(T))
        s = rel.sigma
        assert np.max(np.abs(out.u - s)) <= 1e-10
        assert np.max(np.abs(out.y - s**3)) <= 1e-10

    def test_identity_decomposition(self):
        rel = cubic_fold_curve()
        out = compose_via_stages(rel, decompose(Transform2.identity()))
        np.testing.assert_allclose(out.points, rel.points, atol=1e-14)

    def test_pure_feedback_on_cubic_inverse(self):
        rel = odd_cubic_agent().relation  # u = y^3 - y
        out = compose_via_stages(rel, decompose(Transform2(1.0, 1.0, 0.0, 1.0)))
        np.testing.assert_allclose(out.u, out.y**3, atol=1e-12)

    @given(st.tuples(*[st.floats(-5.0, 5.0) for _ in range(4)])
           .map(lambda t: Transform2(*t))
           .filter(lambda T: abs(T.det) > 1e-2))
    @settings(max_examples=100, deadline=None)
    def test_agrees_with_direct_transport(self, T):
        rel = cubic_fold_curve(n=401)
        direct = transform_relation(rel, T)
        staged = compose_via_stages(rel, decompose(T))
        scale = np.abs(direct.points).max() + 1.0
        np.testing.assert_allclose(staged.points, direct.points,
                                   atol=1e-10 * scale)


class TestIntegralFunction:
    def test_cubic_inverse_potential(self):
        rel = odd_cubic_agent().relation
        F = integral_function(rel, OF_K_INVERSE)
        y = F.grid
        want = 0.25 * y**4 - 0.5 * y**2
        diff = F.values - want
        assert np.max(diff) - np.min(diff) <= 1e-4  # equal up to a constant
        assert not F.convexity_certificate

    def test_pure_cubic_potential_is_convex(self):
        rel = PlanarRelation.from_param_curve(
            lambda s: s**3, lambda s: s, (-3.0, 3.0), 4001
        )
        F = integral_function(rel, OF_K_INVERSE)
        want = 0.25 * F.grid**4
        diff = F.values - want
        assert np.max(diff) - np.min(diff) <= 1e-4
        assert F.convexity_certificate

    def test_transformed_sinusoid_potential(self):
        r1, r2 = 2.5, 0.1
        rel = pendulum_gradient_agent(r1, r2).relation
        out = transform_relation(rel, Transform2(1.0, r1, 0.0, 1.0))
        F = integral_function(out, OF_K_INVERSE)
        y = F.grid
        want = 0.5 * (r1 + r2) * y**2 - r1 * np.cos(y)
        diff = F.values - want
        assert np.max(diff) - np.min(diff) <= 1e-2
        assert F.convexity_certificate

    def test_fold_rejected(self):
        rel = cubic_fold_curve()
        with pytest.raises(MultiValued):
            integral_function(rel, OF_K)  # u = 2s - s^3 folds

    def test_anchored_at_left_end(self):
        rel = odd_cubic_agent().relation
        F = integral_function(rel, OF_K_INVERSE)
        assert F.values[0] == 0.0

    def test_output_feedback_adds_half_quadratic(self):
        rel = odd_cubic_agent().relation
        delta = 1.0
        base = integral_function(rel, OF_K_INVERSE)
        shifted = transform_relation(rel, Transform2(1.0, delta, 0.0, 1.0))
        F = integral_function(shifted, OF_K_INVERSE)
        want = base(F.grid) + 0.5 * delta * F.grid**2
        diff = F.values - want
        assert np.max(diff) - np.min(diff) <= 1e-6
        assert F.convexity_certificate and not base.convexity_certificate


class TestLegendre:
    def test_half_square_is_self_dual(self):
        g = np.linspace(-3.0, 3.0, 2001)
        F = IntegralFunction.from_function(lambda u: 0.5 * u * u, g)
        Fs = legendre(F, g)
        np.testing.assert_allclose(Fs.values, 0.5 * g * g, atol=1e-6)

    def test_quartic_conjugate(self):
        F = IntegralFunction.from_function(
            lambda u: 0.25 * u**4, np.linspace(-3.0, 3.0, 4001)
        )
        ys = np.array([-8.0, -1.0, 0.0, 1.0, 8.0])
        Fs = legendre(F, ys)
        want = 0.75 * np.abs(ys) ** (4.0 / 3.0)
        np.testing.assert_allclose(Fs.values, want, atol=2e-6)

    def test_quadratic_gain_conjugate(self):
        gain = 2.5
        g = np.linspace(-10.0, 10.0, 4001)
        F = IntegralFunction.from_function(lambda z: 0.5 * gain * z * z, g)
        mus = np.linspace(-5.0, 5.0, 101)
        Fs = legendre(F, mus)
        np.testing.assert_allclose(Fs.values, mus**2 / (2.0 * gain), atol=1e-5)

    @given(st.floats(0.2, 3.0), st.floats(-2.0, 2.0))
    @settings(max_examples=50, deadline=None)
    def test_double_transform_recovers_convex_function(self, curv, lin):
        g = np.linspace(-4.0, 4.0, 801)
        h = g[1] - g[0]
        F = IntegralFunction.from_function(
            lambda u: 0.5 * curv * u * u + lin * u, g
        )
        back = legendre(legendre(F), g)
        interior = (np.abs(g) <= 3.0)
        err = np.abs(back.values - F.values)[interior]
        assert np.max(err) <= 5.0 * h * h * max(curv, 1.0)


class TestShapeChecks:
    def test_cubic_curve_monotone(self):
        rel = PlanarRelation.from_param_curve(
            lambda s: s, lambda s: s**3, (-3.0, 3.0), 2001
        )
        assert is_monotone(rel)
        assert is_monotone(rel, strict=True)

    def test_fold_curve_not_monotone(self):
        rel = cubic_fold_curve()
        assert not is_monotone(rel)
        assert not is_monotone(rel.inverse())

    def test_single_point_monotone(self):
        assert is_monotone(PlanarRelation.from_points([1.0], [2.0]))

    def test_sinusoidal_curve_cursive(self):
        rel = pendulum_gradient_agent().relation
        report = is_cursive(rel)
        assert report.cursive

    def test_fold_curve_cursive(self):
        assert is_cursive(cubic_fold_curve()).cursive

    def test_constant_curve_not_cursive(self):
        rel = PlanarRelation.from_param_curve(
            lambda s: 0.0 * s, lambda s: 0.0 * s, (-1.0, 1.0), 501
        )
        report = is_cursive(rel)
        assert not report.cursive
        assert not report.diverges

    def test_sampled_representation_rejected(self):
        with pytest.raises(WrongRepresentation):
            is_cursive(PlanarRelation.from_points([0.0, 1.0], [0.0, 1.0]))

    def test_cubic_curve_maximal_monotone(self):
        rel = PlanarRelation.from_param_curve(
            lambda s: s, lambda s: s**3, (-3.0, 3.0), 2001
        )
        assert is_maximal_monotone(rel)

    def test_fold_curve_not_maximal_monotone(self):
        assert not is_maximal_monotone(cubic_fold_curve())

    def test_truncated_segment_not_maximal(self):
        rel = PlanarRelation.from_param_curve(
            lambda s: s, lambda s: s, (0.0, 1.0), 501
        )
        assert not is_maximal_monotone(rel)


class TestRepresentations:
    def test_inverse_is_involution(self):
        rel = cubic_fold_curve()
        back = rel.inverse().inverse()
        np.testing.assert_array_equal(back.u, rel.u)
        np.testing.assert_array_equal(back.y, rel.y)

    def test_sampled_deduplicates(self):
        rel = PlanarRelation.from_points([0.0, 0.0, 1.0], [1.0, 1.0, 2.0])
        assert len(rel.u) == 2

    def test_closed_form_directions(self):
        fwd = PlanarRelation.from_closed_form(lambda u: u**3, "u_to_y")
        bwd = PlanarRelation.from_closed_form(lambda y: y**3, "y_to_u")
        np.testing.assert_allclose(fwd.y, fwd.u**3)
        np.testing.assert_allclose(bwd.u, bwd.y**3)

    def test_csv_and_json_round_trip(self, tmp_path):
        rel = cubic_fold_curve(n=101)
        path = tmp_path / "rel.csv"
        rel.to_csv(path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "sigma,u,y"
        assert len(rows) == 102
        back = PlanarRelation.from_json_dict(
            json.loads(json.dumps(rel.to_json_dict()))
        )
        np.testing.assert_array_equal(back.u, rel.u)
        np.testing.assert_array_equal(back.y, rel.y)

    def test_integral_function_csv(self, tmp_path):
        F = integral_function(odd_cubic_agent().relation, OF_K_INVERSE)
        path = tmp_path / "pot.csv"
        F.to_csv(path)
        assert path.read_text().startswith("x,value")
