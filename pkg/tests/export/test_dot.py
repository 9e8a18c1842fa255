import numpy as np
import pydot
import pytest

from chainmix.errors import UsageError
from chainmix.export.dot import chain_to_dot, render_dot, select_edges
from chainmix.model.chain import MarkovChain
from chainmix.model.states import N_STATES, State


@pytest.fixture
def chain():
    matrix = np.zeros((N_STATES, N_STATES))
    matrix[State.S, [State.L, State.QR, State.QW]] = [0.5, 0.3, 0.2]
    matrix[State.L, [State.L, State.QR, State.QW]] = [0.5, 0.3, 0.2]
    matrix[State.QR, [State.QR, State.E]] = [0.6, 0.4]
    matrix[State.QW, [State.QR_C, State.QW_C, State.E]] = [0.25, 0.25, 0.5]
    for state in (State.L_C, State.QR_C, State.QW_C):
        matrix[state, State.E] = 1.0
    return MarkovChain(matrix)


def edges_from(selected, source):
    return [(e.target, e.probability) for e in selected if e.source is source]


class TestSelectEdges:
    def test_stops_once_coverage_is_reached(self, chain):
        selected = select_edges(chain, 0.7)
        assert edges_from(selected, State.L) == [(State.L, 0.5), (State.QR, 0.3)]

    def test_full_coverage_draws_every_edge(self, chain):
        selected = select_edges(chain, 1.0)
        assert len(selected) == int((chain.transitions > 0).sum())

    def test_coverage_ignores_the_end_state(self, chain):
        # Qr only has one edge besides E
        assert edges_from(select_edges(chain, 0.7), State.QR) == [(State.QR, 0.6)]

    def test_ties_follow_state_order(self, chain):
        assert edges_from(select_edges(chain, 0.5), State.QW) == [(State.QR_C, 0.25)]

    def test_incoming_edges_of_the_end_state(self, chain):
        incoming = [(e.source, e.probability) for e in select_edges(chain, 0.7) if e.target is State.E]
        # incoming mass 0.4 + 0.5 + 3 * 1.0 = 3.9, 70% of it is 2.73
        assert incoming == [(State.L_C, 1.0), (State.QR_C, 1.0), (State.QW_C, 1.0)]

    @pytest.mark.parametrize("coverage", [0.0, -0.2, 1.5])
    def test_coverage_bounds(self, chain, coverage):
        with pytest.raises(UsageError, match="Coverage"):
            select_edges(chain, coverage)


class TestChainToDot:
    def test_graph(self, chain):
        graph = chain_to_dot(chain, 3, 0.7)
        assert graph.get_name() == "chain_3"
        assert {node.get_name() for node in graph.get_nodes()} >= {"S", "L", "Qr_c", "E"}
        (edge,) = graph.get_edge("S", "L")
        assert edge.get("label").strip('"') == "0.50"
        assert float(edge.get("penwidth").strip('"')) == pytest.approx(3.0)

    def test_render_parses(self, chain):
        text = render_dot(chain, 0, 0.7)
        (parsed,) = pydot.graph_from_dot_data(text)
        assert len(parsed.get_edges()) == len(select_edges(chain, 0.7))

    def test_deterministic(self, chain):
        assert render_dot(chain, 1) == render_dot(chain, 1)

    def test_uniform_chain(self):
        text = render_dot(MarkovChain.uniform(), 0, 1.0)
        assert "Qw_c" in text
