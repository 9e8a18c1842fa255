from chainmix.evaluation.metrics import assigned_log_likelihoods, check_assignments, corpus_log_likelihood
from chainmix.evaluation.permutation import PermutationRow, permutation_baseline, permute_interior
from chainmix.evaluation.profiles import ChainStats, ProfileSummary, StudentProfile, chain_stats, student_profiles
from chainmix.evaluation.purity import PurityError, PurityReport, average_purity

__all__ = [
    "ChainStats",
    "PermutationRow",
    "ProfileSummary",
    "PurityError",
    "PurityReport",
    "StudentProfile",
    "assigned_log_likelihoods",
    "average_purity",
    "chain_stats",
    "check_assignments",
    "corpus_log_likelihood",
    "permutation_baseline",
    "permute_interior",
    "student_profiles",
]
