import pytest

from chainmix.model.states import ALLOWED_EDGES, LABELS, N_STATES, State, edge_labels


class TestState:
    def test_labels_follow_index_order(self):
        assert N_STATES == 8
        assert [s.label for s in State] == list(LABELS)
        assert LABELS == ("S", "L", "Qr", "Qw", "L_c", "Qr_c", "Qw_c", "E")

    def test_from_label(self):
        assert State.from_label("Qw_c") is State.QW_C
        with pytest.raises(ValueError, match="Unknown state"):
            State.from_label("Q")

    def test_topic_change(self):
        assert {s for s in State if s.is_topic_change} == {State.L_C, State.QR_C, State.QW_C}


class TestAllowedEdges:
    def test_start_only_reaches_same_topic_states(self):
        assert [State(i) for i in ALLOWED_EDGES[State.S].nonzero()[0]] == [State.L, State.QR, State.QW]

    def test_nothing_enters_start_or_leaves_end(self):
        assert not ALLOWED_EDGES[:, State.S].any()
        assert not ALLOWED_EDGES[State.E].any()

    def test_action_states_reach_all_actions_and_end(self):
        for source in State:
            if source in (State.S, State.E):
                continue
            assert ALLOWED_EDGES[source].sum() == 7
            assert ALLOWED_EDGES[source, State.E]

    def test_read_only(self):
        with pytest.raises(ValueError, match="read-only"):
            ALLOWED_EDGES[0, 0] = True

    def test_edge_labels(self):
        edges = edge_labels()
        assert len(edges) == 3 + 6 * 7
        assert edges[0] == ["S", "L"]
        assert ["S", "L_c"] not in edges
