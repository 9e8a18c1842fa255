from chainmix.synthetic.generator import (
    LabelledSequence,
    SamplingError,
    label_corpus,
    noisy_prior,
    random_generator_chain,
    sample_corpus,
    sample_sequence,
)
from chainmix.synthetic.noise_sweep import (
    NoiseCell,
    NoiseSummary,
    NoiseSweepResult,
    SyntheticConfig,
    SyntheticCorpus,
    draw_corpus,
    noise_sweep_experiment,
    run_noise_cell,
)

__all__ = [
    "LabelledSequence",
    "NoiseCell",
    "NoiseSummary",
    "NoiseSweepResult",
    "SamplingError",
    "SyntheticConfig",
    "SyntheticCorpus",
    "draw_corpus",
    "label_corpus",
    "noise_sweep_experiment",
    "noisy_prior",
    "random_generator_chain",
    "run_noise_cell",
    "sample_corpus",
    "sample_sequence",
]
