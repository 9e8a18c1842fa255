from chainmix.model.chain import (
    InvalidChainError,
    MarkovChain,
    log_likelihood,
    log_likelihood_matrix,
    most_likely_chain,
    score_chains,
    transition_table,
)
from chainmix.model.sequence import Action, ActionKind, EncodedSequence, EncodingError, InvalidSequenceError, encode_session
from chainmix.model.states import ALLOWED_EDGES, LABELS, N_STATES, State, edge_labels

__all__ = [
    "ALLOWED_EDGES",
    "LABELS",
    "N_STATES",
    "Action",
    "ActionKind",
    "EncodedSequence",
    "EncodingError",
    "InvalidChainError",
    "InvalidSequenceError",
    "MarkovChain",
    "State",
    "edge_labels",
    "encode_session",
    "log_likelihood",
    "log_likelihood_matrix",
    "most_likely_chain",
    "score_chains",
    "transition_table",
]
