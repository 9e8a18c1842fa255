import math

import numpy as np
import pytest

from chainmix.clustering.cluster_config import ClusterConfig, ConfigError
from chainmix.clustering.kmeans import (
    ClusteringError,
    assign_step,
    fit,
    k_sweep,
    random_prior,
    reestimate_step,
)
from chainmix.evaluation.purity import average_purity
from chainmix.model.chain import MarkovChain, log_likelihood
from chainmix.model.sequence import EncodedSequence
from chainmix.model.states import ALLOWED_EDGES, N_STATES, State
from chainmix.synthetic.generator import random_generator_chain, sample_corpus
from chainmix.utils.rng import derive_rng


def seq(*labels):
    return EncodedSequence.from_labels(["S", *labels, "E"])


def looping_chain(state):
    """Starts with `state`, repeats it or ends with equal probability; every other action state ends"""
    matrix = np.zeros((N_STATES, N_STATES))
    matrix[State.S, state] = 1.0
    for source in State:
        if source not in (State.S, State.E):
            matrix[source, State.E] = 1.0
    matrix[state, State.E] = 0.5
    matrix[state, state] = 0.5
    return MarkovChain(matrix)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


class TestClusterConfig:
    def test_defaults(self):
        config = ClusterConfig()
        assert config.restarts == 5
        assert config.convergence_fraction == 0.05
        assert config.max_iterations == 100
        assert config.smoothing == 1e-6

    def test_ints_are_accepted_for_floats(self):
        assert ClusterConfig(smoothing=0).smoothing == 0.0

    def test_type_checked(self):
        with pytest.raises(KeyError, match="k"):
            ClusterConfig(k="two")

    def test_validate_lists_every_problem(self):
        with pytest.raises(ConfigError, match="k must be >= 1.*smoothing must be >= 0"):
            ClusterConfig(k=0, smoothing=-1.0).validate()


class TestRandomPrior:
    def test_only_allowed_edges(self, rng):
        chain = random_prior(rng)
        assert not chain.transitions[~ALLOWED_EDGES].any()
        assert (chain.transitions[ALLOWED_EDGES] > 0).all()

    def test_same_seed_same_chain(self):
        assert random_prior(derive_rng(5)) == random_prior(derive_rng(5))


class TestAssignStep:
    def test_single_chain(self, rng):
        assert assign_step([seq("L"), seq("Qr", "Qw")], [random_prior(rng)]).tolist() == [0, 0]

    def test_only_chain_that_can_generate_the_path(self):
        chains = [looping_chain(State.L), looping_chain(State.QW), looping_chain(State.QR)]
        assert assign_step([seq("Qr", "Qr")], chains).tolist() == [2]

    def test_matches_per_sequence_comparison(self, rng):
        seqs = [seq("Qr"), seq("L", "L_c", "Qw"), seq("Qw", "Qr_c", "Qr_c", "Qr")]
        chains = [random_prior(rng), random_prior(rng)]
        expected = [int(np.argmax([log_likelihood(s, c) for c in chains])) for s in seqs]
        assert assign_step(seqs, chains).tolist() == expected


class TestReestimateStep:
    def test_hand_counted_frequencies(self, rng):
        (chain,), reseeded = reestimate_step([seq("Qr", "Qr"), seq("Qr")], [0, 0], 1, 0.0, rng)
        assert reseeded == []
        assert chain.probability(State.S, State.QR) == 1
        assert chain.probability(State.QR, State.QR) == pytest.approx(1 / 3)
        assert chain.probability(State.QR, State.E) == pytest.approx(2 / 3)

    def test_single_sequence(self, rng):
        (chain,), _ = reestimate_step([seq("L")], [0], 1, 0.0, rng)
        assert chain.probability(State.S, State.L) == 1
        assert chain.probability(State.L, State.E) == 1
        assert chain.probability(State.QW, State.QR_C) == pytest.approx(1 / 7)

    def test_empty_cluster_is_reseeded(self, rng):
        chains, reseeded = reestimate_step([seq("L")], [0], 2, 0.0, rng)
        assert reseeded == [1]
        assert (chains[1].transitions[ALLOWED_EDGES] > 0).all()

    def test_matches_brute_force_counting(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(1, 11))
            k = int(rng.integers(1, 4))
            seqs, _ = sample_corpus([random_generator_chain(rng, 0.3)], n, rng)
            assignments = rng.integers(0, k, size=n)
            chains, reseeded = reestimate_step(seqs, assignments, k, 0.0, rng)
            for j in range(k):
                if j in reseeded:
                    continue
                counts = np.zeros((N_STATES, N_STATES))
                for s, a in zip(seqs, assignments):
                    if a == j:
                        for source, target in zip(s.states, s.states[1:]):
                            counts[source, target] += 1
                for source in range(State.E):
                    total = counts[source].sum()
                    if total:
                        np.testing.assert_allclose(chains[j].transitions[source], counts[source] / total, atol=1e-12)

    def test_invalid_assignments(self, rng):
        with pytest.raises(ValueError, match="Assignments"):
            reestimate_step([seq("L")], [2], 2, 0.0, rng)
        with pytest.raises(ValueError, match="Assignments"):
            reestimate_step([seq("L")], [0, 0], 2, 0.0, rng)


class TestFit:
    @pytest.fixture
    def separated(self):
        rng = np.random.default_rng(42)
        chains = [looping_chain(State.L), looping_chain(State.QR)]
        return sample_corpus(chains, 200, rng)

    def test_recovers_well_separated_generators(self, separated):
        seqs, generators = separated
        model = fit(seqs, ClusterConfig(k=2, restarts=10, rng_seed=1))
        assert average_purity(model.assignments, generators).average_purity == 1.0
        assert model.unsupported_count == 0
        assert sorted(model.cluster_sizes()) == sorted(np.bincount(generators).tolist())

    def test_single_chain_is_the_pooled_estimate(self, separated):
        seqs, _ = separated
        model = fit(seqs, ClusterConfig(k=1, restarts=1))
        (pooled,), _ = reestimate_step(seqs, [0] * len(seqs), 1, 1e-6, np.random.default_rng())
        assert model.iterations_run <= 2
        np.testing.assert_allclose(model.chains[0].transitions, pooled.transitions)

    def test_deterministic(self, separated):
        seqs, _ = separated
        config = ClusterConfig(k=3, restarts=2, rng_seed=7)
        first, second = fit(seqs, config), fit(seqs, config)
        assert first.chains == second.chains
        assert first.assignments.tolist() == second.assignments.tolist()
        assert first.sum_log_likelihood == second.sum_log_likelihood
        assert first.reassignment_history == second.reassignment_history

    def test_input_order_only_reorders_assignments(self, separated):
        seqs, _ = separated
        config = ClusterConfig(k=2, restarts=1, rng_seed=5)
        order = np.random.default_rng(0).permutation(len(seqs))
        model = fit(seqs, config)
        shuffled = fit([seqs[i] for i in order], config)
        assert shuffled.assignments.tolist() == model.assignments[order].tolist()
        assert shuffled.sum_log_likelihood == pytest.approx(model.sum_log_likelihood)
        for a, b in zip(shuffled.chains, model.chains):
            np.testing.assert_allclose(a.transitions, b.transitions)

    def test_diagnostics(self, separated):
        seqs, _ = separated
        model = fit(seqs, ClusterConfig(k=2, restarts=3, rng_seed=3))
        assert model.reassignment_history[0] == 1.0
        assert len(model.reassignment_history) == model.iterations_run
        assert len(model.log_likelihood_history) == model.iterations_run
        assert len(model.restart_log_likelihoods) == 3
        assert model.sum_log_likelihood == max(model.restart_log_likelihoods)
        assert model.restart_log_likelihoods[model.chosen_restart] == model.sum_log_likelihood
        assert model.sum_log_likelihood == pytest.approx(model.sequence_log_likelihoods.sum())

    def test_assignments_are_argmax_under_the_returned_chains(self, separated):
        seqs, _ = separated
        model = fit(seqs, ClusterConfig(k=3, restarts=1, rng_seed=9))
        assert model.assignments.tolist() == assign_step(seqs, model.chains).tolist()

    def test_iteration_cap(self, separated):
        seqs, _ = separated
        model = fit(seqs, ClusterConfig(k=4, restarts=1, max_iterations=1))
        assert model.iterations_run == 1

    def test_sum_log_likelihood_never_decreases_without_reseeds(self):
        rng = np.random.default_rng(5)
        checked = 0
        for trial in range(100):
            generators = [random_generator_chain(rng, 0.2) for _ in range(3)]
            seqs, _ = sample_corpus(generators, 60, rng)
            model = fit(seqs, ClusterConfig(k=3, restarts=1, smoothing=0.0, rng_seed=trial))
            if model.reseed_count:
                continue
            checked += 1
            history = model.log_likelihood_history
            for before, after in zip(history, history[1:]):
                assert after >= before - 1e-9 * abs(before)
        assert checked > 0

    def test_priors(self, separated):
        seqs, generators = separated
        priors = [looping_chain(State.L), looping_chain(State.QR)]
        model = fit(seqs, ClusterConfig(k=2, restarts=5, smoothing=0.0), priors)
        assert model.assignments.tolist() == generators.tolist()
        assert len(model.restart_log_likelihoods) == 1

    def test_wrong_number_of_priors(self, separated):
        seqs, _ = separated
        with pytest.raises(ClusteringError, match="Expected 3 priors"):
            fit(seqs, ClusterConfig(k=3), [looping_chain(State.L)])

    def test_unsupported_sequences(self):
        prior = looping_chain(State.L)
        model = fit([seq("L", "L"), seq("Qr")], ClusterConfig(k=1, max_iterations=1, smoothing=0.0), [prior])
        assert model.unsupported_count == 1
        assert model.assignments.tolist() == [0, 0]
        assert model.sequence_log_likelihoods[1] == -math.inf
        assert model.sum_log_likelihood == pytest.approx(2 * math.log(0.5))

    def test_everything_unsupported(self):
        with pytest.raises(ClusteringError, match="impossible"):
            fit([seq("Qr")], ClusterConfig(k=1, max_iterations=1, smoothing=0.0), [looping_chain(State.L)])

    def test_no_sequences(self):
        with pytest.raises(ClusteringError, match="no sequences"):
            fit([], ClusterConfig())

    def test_invalid_config(self, separated):
        seqs, _ = separated
        with pytest.raises(ConfigError):
            fit(seqs, ClusterConfig(k=0))


class TestKSweep:
    @pytest.fixture
    def seqs(self):
        rng = np.random.default_rng(8)
        chains = [random_generator_chain(rng, 0.2) for _ in range(3)]
        return sample_corpus(chains, 150, rng)[0]

    def test_single_k(self, seqs):
        config = ClusterConfig(restarts=2)
        (row,) = k_sweep(seqs, [2], config)
        assert row.k == 2
        assert row.gain is None
        assert row.sum_log_likelihood == fit(seqs, ClusterConfig(config, k=2)).sum_log_likelihood

    def test_sorted_with_gain(self, seqs):
        rows = k_sweep(seqs, [3, 1, 2], ClusterConfig(restarts=2))
        assert [row.k for row in rows] == [1, 2, 3]
        assert rows[1].gain == pytest.approx(rows[1].sum_log_likelihood - rows[0].sum_log_likelihood)

    def test_duplicated_k_gives_identical_rows(self, seqs):
        first, second = k_sweep(seqs, [2, 2], ClusterConfig(restarts=2))
        assert first.sum_log_likelihood == second.sum_log_likelihood
        assert second.gain == 0

    def test_empty(self, seqs):
        with pytest.raises(ValueError, match="k_values"):
            k_sweep(seqs, [], ClusterConfig())
