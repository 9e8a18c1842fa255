import numpy as np
import pytest

from chainmix.clustering.cluster_config import ConfigError
from chainmix.clustering.kmeans import random_prior
from chainmix.model.chain import MarkovChain, log_likelihood, transition_table
from chainmix.model.states import N_STATES, State
from chainmix.synthetic.generator import (
    SamplingError,
    label_corpus,
    noisy_prior,
    random_generator_chain,
    sample_corpus,
    sample_sequence,
)
from chainmix.utils.rng import derive_rng


def single_path_chain(state):
    matrix = np.zeros((N_STATES, N_STATES))
    matrix[State.S, state] = 1.0
    for source in State:
        if source not in (State.S, State.E):
            matrix[source, State.E] = 1.0
    return MarkovChain(matrix)


class TestRandomGeneratorChain:
    def test_end_probability(self):
        chain = random_generator_chain(derive_rng(1), 0.05)
        for state in State:
            if state not in (State.S, State.E):
                assert chain.probability(state, State.E) == pytest.approx(0.05)
        assert chain.probability(State.S, State.E) == 0

    def test_same_seed_same_chain(self):
        assert random_generator_chain(derive_rng(4)) == random_generator_chain(derive_rng(4))

    @pytest.mark.parametrize("end_probability", [0.0, 1.0, -0.1])
    def test_end_probability_bounds(self, end_probability):
        with pytest.raises(ConfigError):
            random_generator_chain(derive_rng(1), end_probability)

    def test_half_end_probability_gives_two_actions_on_average(self):
        rng = derive_rng(2)
        seqs, _ = sample_corpus([random_generator_chain(rng, 0.5)], 20000, rng)
        assert np.mean([s.n_actions for s in seqs]) == pytest.approx(2, abs=0.05)


class TestSampleSequence:
    def test_single_path(self):
        chain = single_path_chain(State.QR)
        rng = derive_rng(0)
        for _ in range(10):
            assert sample_sequence(chain, rng).labels() == ["S", "Qr", "E"]

    def test_same_seed_same_sequence(self):
        chain = random_generator_chain(derive_rng(1), 0.2)
        assert sample_sequence(chain, derive_rng(9)) == sample_sequence(chain, derive_rng(9))

    def test_mean_length(self):
        rng = derive_rng(3)
        chain = random_generator_chain(rng, 0.05)
        lengths = [sample_sequence(chain, rng).n_actions for _ in range(10000)]
        assert np.mean(lengths) == pytest.approx(20, abs=1)

    def test_pathological_chain(self):
        matrix = np.zeros((N_STATES, N_STATES))
        matrix[State.S, State.L] = 1.0
        for source in State:
            if source not in (State.S, State.E):
                matrix[source, source] = 1.0
        with pytest.raises(SamplingError):
            sample_sequence(MarkovChain(matrix), derive_rng(0))


class TestSampleCorpus:
    def test_generators_and_ids(self):
        chains = [single_path_chain(State.L), single_path_chain(State.QW)]
        seqs, generators = sample_corpus(chains, 100, derive_rng(5))
        assert len(seqs) == 100
        assert set(generators.tolist()) == {0, 1}
        for i, (s, g) in enumerate(zip(seqs, generators)):
            assert s.labels() == ["S", "L" if g == 0 else "Qw", "E"]
            assert s.source_session_id == f"synthetic:{i}"

    def test_mean_length(self):
        rng = derive_rng(6)
        chains = [random_generator_chain(rng, 0.05) for _ in range(3)]
        seqs, _ = sample_corpus(chains, 10000, rng)
        assert np.mean([s.n_actions for s in seqs]) == pytest.approx(20, abs=1)

    def test_generator_shares_within_three_sigma(self):
        rng = derive_rng(7)
        chains = [random_generator_chain(rng, 0.5) for _ in range(3)]
        n = 30000
        _, generators = sample_corpus(chains, n, rng)
        sigma = np.sqrt(n * (1 / 3) * (2 / 3))
        for count in np.bincount(generators, minlength=3):
            assert abs(count - n / 3) <= 3 * sigma

    def test_transition_frequencies_match_the_chain(self):
        rng = derive_rng(8)
        chain = random_generator_chain(rng, 0.05)
        seqs, _ = sample_corpus([chain], 10000, rng)
        counts = transition_table(seqs).sum(axis=0).reshape(N_STATES, N_STATES)
        assert counts.sum() >= 100000
        for source in State:
            if source is State.E:
                continue
            frequencies = counts[source] / counts[source].sum()
            assert np.max(np.abs(frequencies - chain.transitions[source])) < 0.02

    def test_reproducible(self):
        chains = [random_generator_chain(derive_rng(1), 0.2)]
        assert sample_corpus(chains, 50, derive_rng(2))[0] == sample_corpus(chains, 50, derive_rng(2))[0]


class TestLabelCorpus:
    def test_disjoint_supports(self):
        chains = [single_path_chain(State.L), single_path_chain(State.QR), single_path_chain(State.QW)]
        seqs, generators = sample_corpus(chains, 60, derive_rng(1))
        for item in label_corpus(seqs, chains, generators):
            assert item.label == item.generator_index

    def test_single_true_chain(self):
        chain = random_generator_chain(derive_rng(1), 0.2)
        seqs, generators = sample_corpus([chain], 30, derive_rng(2))
        assert {item.label for item in label_corpus(seqs, [chain], generators)} == {0}

    def test_overlapping_chains_match_brute_force(self):
        rng = derive_rng(7)
        chains = [random_generator_chain(rng, 0.2) for _ in range(3)]
        seqs, generators = sample_corpus(chains, 100, rng)
        for item in label_corpus(seqs, chains, generators):
            scores = [log_likelihood(item.seq, chain) for chain in chains]
            assert item.label == int(np.argmax(scores))


class TestNoisyPrior:
    @pytest.fixture
    def true_chain(self):
        return random_generator_chain(derive_rng(1), 0.05)

    def test_no_noise(self, true_chain):
        assert noisy_prior(true_chain, derive_rng(2), 0.0) == true_chain

    def test_all_noise(self, true_chain):
        assert noisy_prior(true_chain, derive_rng(2), 1.0) == random_prior(derive_rng(2))

    def test_half_noise(self, true_chain):
        noise = random_prior(derive_rng(2))
        mixed = noisy_prior(true_chain, derive_rng(2), 0.5)
        np.testing.assert_allclose(mixed.transitions, (true_chain.transitions + noise.transitions) / 2)

    @pytest.mark.parametrize("alpha", [-0.1, 1.5])
    def test_alpha_bounds(self, true_chain, alpha):
        with pytest.raises(ConfigError):
            noisy_prior(true_chain, derive_rng(2), alpha)
