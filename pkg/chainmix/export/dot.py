from __future__ import annotations

from typing import NamedTuple

import pydot

from chainmix.errors import DataValidationError, UsageError
from chainmix.model.chain import MarkovChain
from chainmix.model.states import STATES_BY_INDEX, State

DEFAULT_COVERAGE = 0.7
PEN_WIDTH_SCALE = 6.0
_TOLERANCE = 1e-12


class DotExportError(DataValidationError):
    pass


class DrawnEdge(NamedTuple):
    source: State
    target: State
    probability: float


def _take_until(edges: list[DrawnEdge], coverage: float) -> list[DrawnEdge]:
    # highest probability first, equal probabilities in state order
    edges.sort(key=lambda edge: (-edge.probability, edge.source, edge.target))
    if coverage >= 1:
        return edges
    goal = coverage * sum(edge.probability for edge in edges) - _TOLERANCE
    drawn: list[DrawnEdge] = []
    mass = 0.0
    for edge in edges:
        if mass >= goal:
            break
        drawn.append(edge)
        mass += edge.probability
    return drawn


def select_edges(chain: MarkovChain, coverage: float = DEFAULT_COVERAGE) -> list[DrawnEdge]:
    """
    The edges worth drawing. For every state except E, its outgoing edges to states other than E, most
    likely first, until `coverage` of that (non-E) mass is reached. For E, its incoming edges, most
    likely first, until `coverage` of the incoming mass is reached.
    """
    if not 0 < coverage <= 1:
        msg = f"Coverage must be in (0, 1] (got {coverage})"
        raise UsageError(msg)
    selected: list[DrawnEdge] = []
    for source in STATES_BY_INDEX:
        if source is State.E:
            continue
        outgoing = [
            DrawnEdge(source, target, chain.probability(source, target))
            for target in STATES_BY_INDEX
            if target is not State.E and chain.probability(source, target) > 0
        ]
        selected.extend(_take_until(outgoing, coverage))
    incoming = [
        DrawnEdge(source, State.E, chain.probability(source, State.E))
        for source in STATES_BY_INDEX
        if chain.probability(source, State.E) > 0
    ]
    selected.extend(_take_until(incoming, coverage))
    return selected


def chain_to_dot(chain: MarkovChain, index: int, coverage: float = DEFAULT_COVERAGE) -> pydot.Dot:
    graph = pydot.Dot(f"chain_{index}", graph_type="digraph")
    for state in STATES_BY_INDEX:
        graph.add_node(pydot.Node(state.label, label=state.label))
    for edge in select_edges(chain, coverage):
        graph.add_edge(
            pydot.Edge(
                edge.source.label,
                edge.target.label,
                label=f"{edge.probability:.2f}",
                penwidth=f"{PEN_WIDTH_SCALE * edge.probability:.3f}",
            )
        )
    return graph


def render_dot(chain: MarkovChain, index: int, coverage: float = DEFAULT_COVERAGE) -> str:
    """DOT source for one chain, checked by parsing it back"""
    text: str = chain_to_dot(chain, index, coverage).to_string()
    if not pydot.graph_from_dot_data(text):
        msg = f"Generated DOT for chain {index} does not parse"
        raise DotExportError(msg)
    return text
