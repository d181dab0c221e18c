import numpy as np
import pytest

from causalapprox import (
    LpProblem,
    LpStatus,
    create_constraint_matrix,
    feasibility_check,
    get_constraint_distribution,
    solve,
)
from causalapprox.models import CausalModelSpec, ModelVariant, build_support
from oracles import binary_lp_optimum, random_inputs


def binary_problem(inputs, variant=ModelVariant.X_TO_Y):
    a = create_constraint_matrix(2, 2)
    c = get_constraint_distribution(inputs)
    obj = build_support(CausalModelSpec(variant, 2, 2)).objective_coeffs
    return LpProblem(a, c, obj)


class TestBasics:
    def test_one_constraint(self):
        prob = LpProblem([[1.0, 1.0]], [1.0], [1.0, 0.0])
        sol = solve(prob)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(sol.p, [1.0, 0.0])

    def test_uniform_instance_reaches_upper_bound(self):
        # mass 1/4 on 0000, 0111, 1000, 1111 is feasible and fully on-support
        from causalapprox import DiscreteDistribution, EmpiricalInputs

        uniform = EmpiricalInputs(
            DiscreteDistribution.uniform((2, 2)),
            (DiscreteDistribution.uniform((2,)), DiscreteDistribution.uniform((2,))),
        )
        sol = solve(binary_problem(uniform))
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective == pytest.approx(1.0, abs=1e-9)

    def test_infeasible_is_a_status_not_an_exception(self):
        prob = LpProblem([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0], [1.0, 0.0])
        assert solve(prob).status is LpStatus.INFEASIBLE

    def test_unbounded(self):
        prob = LpProblem([[1.0, -1.0]], [0.0], [1.0, 0.0])
        assert solve(prob).status is LpStatus.UNBOUNDED

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            LpProblem([[1.0, 0.0]], [1.0, 2.0], [1.0, 0.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            LpProblem([[np.inf, 0.0]], [1.0], [1.0, 0.0])

    def test_redundant_rows_are_tolerated(self):
        prob = LpProblem(
            [[1.0, 1.0], [2.0, 2.0]], [1.0, 2.0], [0.5, 1.0]
        )
        sol = solve(prob)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective == pytest.approx(1.0, abs=1e-9)


class TestFeasibilityCheck:
    def test_exact_vertex(self):
        prob = LpProblem([[1.0, 1.0]], [1.0], [1.0, 0.0])
        report = feasibility_check(prob, [1.0, 0.0])
        assert report.max_residual == 0.0
        assert report.min_component == 0.0

    def test_zero_vector_misses_normalization(self):
        prob = LpProblem([[1.0, 1.0]], [1.0], [1.0, 0.0])
        assert feasibility_check(prob, [0.0, 0.0]).max_residual == 1.0

    def test_solver_output_is_feasible(self):
        inputs = random_inputs(2, 2, seed=5)
        prob = binary_problem(inputs)
        sol = solve(prob)
        report = feasibility_check(prob, sol.p)
        assert report.max_residual <= 1e-7
        assert report.min_component >= -1e-9


class TestAgainstBasisEnumeration:
    def test_random_instances(self):
        for seed in range(25):
            inputs = random_inputs(2, 2, seed=seed)
            prob = binary_problem(inputs)
            sol = solve(prob)
            assert sol.status is LpStatus.OPTIMAL
            want = binary_lp_optimum(prob.b, prob.c)
            assert sol.objective == pytest.approx(want, abs=1e-7)

    def test_monotone_objective_instances(self):
        for seed in range(10):
            inputs = random_inputs(2, 2, seed=100 + seed)
            prob = binary_problem(inputs, ModelVariant.X_TO_Y_MONO_DEC)
            sol = solve(prob)
            want = binary_lp_optimum(prob.b, prob.c)
            assert sol.objective == pytest.approx(want, abs=1e-7)


class TestDegenerateInstances:
    def test_point_mass_inputs_terminate(self):
        from causalapprox import DiscreteDistribution, EmpiricalInputs

        joint = DiscreteDistribution((2, 2), [1.0, 0.0, 0.0, 0.0])
        delta = DiscreteDistribution((2,), [1.0, 0.0])
        inputs = EmpiricalInputs(joint, (delta, delta))
        sol = solve(binary_problem(inputs))
        assert sol.status is LpStatus.OPTIMAL
        assert sol.objective == pytest.approx(1.0, abs=1e-9)

    def test_weak_duality_on_feasible_points(self):
        rng = np.random.default_rng(31)
        inputs = random_inputs(2, 2, seed=77)
        prob = binary_problem(inputs)
        optimum = solve(prob).objective
        # feasible points: product embeddings jittered along the null space
        base = _product_embedding(inputs)
        null = _null_space(prob.a)
        for _ in range(20):
            direction = null @ rng.normal(size=null.shape[1])
            point = _clip_into_feasibility(base, direction)
            report = feasibility_check(prob, point)
            assert report.max_residual <= 1e-9
            assert float(prob.c @ point) <= optimum + 1e-7

    def test_determinism(self):
        inputs = random_inputs(2, 2, seed=13)
        prob = binary_problem(inputs)
        first = solve(prob)
        second = solve(prob)
        assert np.array_equal(first.p, second.p)
        assert first.objective == second.objective


def _product_embedding(inputs):
    """joint (x, y) times independent copies: always feasible."""
    p = np.zeros(16)
    for x in range(2):
        for y in range(2):
            for y0 in range(2):
                for y1 in range(2):
                    p[x * 8 + y * 4 + y0 * 2 + y1] = (
                        inputs.joint.prob((x, y))
                        * inputs.interventional[0].mass[y0]
                        * inputs.interventional[1].mass[y1]
                    )
    return p


def _null_space(a):
    _, s, vt = np.linalg.svd(a)
    rank = int(np.sum(s > 1e-10))
    return vt[rank:].T


def _clip_into_feasibility(base, direction):
    """Scale the null-space step so the point stays nonnegative."""
    negative = direction < -1e-15
    if not negative.any():
        return base + direction
    scale = min(1.0, float(np.min(base[negative] / -direction[negative])) * 0.5)
    return base + scale * direction
