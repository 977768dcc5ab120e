# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lwpm_reduction.exceptions import ConfigError, DimensionError, SolverInfeasibleError
from lwpm_reduction.sat.affine_system import AffineSystem
from lwpm_reduction.sat.metaheuristics import (LocalSearchState, hill_climb, hill_climb_run,
                                               make_rng, neighbours, random_nonzero_assignment,
                                               run_solver, simulated_anneal,
                                               simulated_anneal_run)
from lwpm_reduction.sat.solver_config import SolverConfig

from .conftest import random_system

SINGLE = AffineSystem([[1]], [1])


class TestNeighbourhood:
    def test_two_variables(self):
        assert [n.tolist() for n in neighbours([0, 0])] == [[1, 0], [0, 1]]

    def test_forbid_zero_empties(self):
        assert neighbours([1], forbid_zero=True) == []

    def test_state_deltas_match_recount(self, rng):
        for _ in range(30):
            system = random_system(rng, int(rng.integers(1, 15)), int(rng.integers(1, 10)))
            gamma = rng.integers(0, 2, size=system.k)
            state = LocalSearchState(system, gamma)
            assert state.fitness == system.violation_count(gamma)
            deltas = state.deltas()
            for j in range(system.k):
                flipped = gamma.copy()
                flipped[j] ^= 1
                expected = system.violation_count(flipped) - state.fitness
                assert state.delta(j) == expected
                assert deltas[j] == expected

    def test_state_flip_keeps_cache(self, rng):
        system = random_system(rng, 12, 6)
        state = LocalSearchState(system, [1, 0, 0, 1, 0, 1])
        for j in [0, 3, 3, 5, 1]:
            state.flip(j)
            assert state.fitness == system.violation_count(state.assignment)
            assert state.ones == int(state.assignment.sum())

    def test_random_nonzero(self):
        generator = make_rng(1)
        for _ in range(50):
            assert random_nonzero_assignment(1, generator).tolist() == [1]


class TestHillClimb:
    def test_single_flip(self):
        result = hill_climb_run(SINGLE, [0], SolverConfig())
        assert result.assignment.tolist() == [1]
        assert result.violations == 0

    def test_local_minimum_kept(self, worked_system):
        start = [1, 1, 0, 1, 1]
        config = SolverConfig(forbid_zero=True)
        state = LocalSearchState(worked_system, start)
        result = hill_climb(worked_system, start, config)
        assert worked_system.violation_count(result) == state.fitness == 2

    def test_never_worsens(self, rng):
        for trial in range(1000):
            system = random_system(rng, int(rng.integers(1, 25)), int(rng.integers(2, 12)))
            start = random_nonzero_assignment(system.k, rng)
            config = SolverConfig(seed=trial, forbid_zero=True)
            result = hill_climb(system, start, config)
            assert system.violation_count(result) <= system.violation_count(start)
            assert result.any()

    @pytest.mark.parametrize("variant", ["stochastic", "steepest"])
    def test_stops_at_local_minimum(self, rng, variant):
        for _ in range(50):
            system = random_system(rng, 20, 8)
            result = hill_climb(system, rng.integers(0, 2, size=8), SolverConfig(hc_variant=variant))
            assert (LocalSearchState(system, result).deltas() >= 0).all()

    def test_deterministic(self, rng):
        system = random_system(rng, 40, 20)
        start = rng.integers(0, 2, size=20)
        config = SolverConfig(seed=99, restarts=3)
        first = hill_climb_run(system, start, config)
        second = hill_climb_run(system, start, config)
        assert np.array_equal(first.assignment, second.assignment)
        assert first.iterations == second.iterations

    def test_plateau_move_separates_variants(self):
        # 两个约束互斥，翻转前后都违反1个
        plateau = AffineSystem([[1], [1]], [1, 0])
        stochastic = hill_climb_run(plateau, [0], SolverConfig(hc_variant="stochastic"))
        steepest = hill_climb_run(plateau, [0], SolverConfig(hc_variant="steepest"))
        assert (stochastic.assignment.tolist(), stochastic.iterations) == ([1], 1)
        assert (steepest.assignment.tolist(), steepest.iterations) == ([0], 0)
        assert stochastic.violations == steepest.violations == 1

    def test_empty_neighbourhood(self):
        with pytest.raises(SolverInfeasibleError):
            hill_climb(AffineSystem([[1]], [0]), [1], SolverConfig(forbid_zero=True))

    def test_zero_start_rejected(self, worked_system):
        with pytest.raises(SolverInfeasibleError):
            hill_climb(worked_system, [0] * 5, SolverConfig(forbid_zero=True))

    def test_length_mismatch(self, worked_system):
        with pytest.raises(DimensionError):
            hill_climb(worked_system, [1, 0], SolverConfig())

    def test_restarts_never_hurt(self, rng):
        system = random_system(rng, 60, 25)
        start = rng.integers(0, 2, size=25)
        plain = hill_climb_run(system, start, SolverConfig(seed=5))
        restarted = hill_climb_run(system, start, SolverConfig(seed=5, restarts=4))
        assert restarted.violations <= plain.violations


class TestSimulatedAnneal:
    def test_frozen_schedule_returns_start(self, worked_system):
        start = [1, 1, 0, 1, 1]
        config = SolverConfig(t_initial=0.001, t_min=0.001)
        result = simulated_anneal_run(worked_system, start, config)
        assert result.assignment.tolist() == start
        assert result.iterations == 0

    def test_single_flip(self):
        result = simulated_anneal(SINGLE, [0], SolverConfig(t_initial=1.0, alpha=0.5))
        assert result.tolist() == [1]

    def test_best_visited_never_worse(self, rng):
        for trial in range(200):
            system = random_system(rng, int(rng.integers(1, 25)), int(rng.integers(2, 12)))
            start = random_nonzero_assignment(system.k, rng)
            config = SolverConfig(seed=trial, forbid_zero=True, alpha=0.9)
            result = simulated_anneal(system, start, config)
            assert system.violation_count(result) <= system.violation_count(start)
            assert result.any()

    def test_cold_schedule_is_greedy(self, rng):
        for trial in range(300):
            system = random_system(rng, int(rng.integers(1, 25)), int(rng.integers(1, 12)))
            start = rng.integers(0, 2, size=system.k)
            config = SolverConfig(seed=trial, t_initial=1e-11, t_min=1e-12, alpha=0.05,
                                  sa_return="final")
            result = simulated_anneal_run(system, start, config)
            assert result.iterations == 1
            assert result.worsening_moves == 0
            assert result.violations <= system.violation_count(start)

    def test_final_state_mode(self, rng):
        system = random_system(rng, 30, 10)
        start = rng.integers(0, 2, size=10)
        config = SolverConfig(seed=3, sa_return="final")
        result = simulated_anneal_run(system, start, config)
        assert result.violations == system.violation_count(result.assignment)

    def test_deterministic(self, rng):
        system = random_system(rng, 40, 20)
        start = rng.integers(0, 2, size=20)
        config = SolverConfig(seed=11, restarts=2)
        first = simulated_anneal_run(system, start, config)
        second = simulated_anneal_run(system, start, config)
        assert np.array_equal(first.assignment, second.assignment)
        assert first.worsening_moves == second.worsening_moves


class TestDispatch:
    def test_engine_names(self, worked_system):
        config = SolverConfig(forbid_zero=True)
        assert run_solver(worked_system, "exhaustive", config).violations == 2
        for engine in ("hc", "hill_climb", "sa", "simulated_anneal"):
            result = run_solver(worked_system, engine, config)
            assert result.violations >= 2
            assert result.assignment.any()

    def test_unknown_engine(self, worked_system):
        with pytest.raises(ConfigError):
            run_solver(worked_system, "tabu", SolverConfig())

    def test_result_dict(self, worked_system):
        data = run_solver(worked_system, "exhaustive", SolverConfig()).to_dict()
        assert data["assignment"] == "00000"
        assert data["satisfied"] == 7
