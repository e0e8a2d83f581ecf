from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monstertower.orbits import (
    COUNT_LABEL,
    DirectionType,
    Plane,
    PlaneState,
    class_tree,
    direction_types,
    enumerate_classes,
    is_extrapolated,
    planar_word_count,
    successor_state,
    to_dot,
)
from monstertower.words import SpellingError, validate_code
from oracles import orbit_counts_by_plane_number


def brute_force_words(k, alphabet="RVT"):
    n = 0
    for w in product(alphabet, repeat=k):
        try:
            validate_code("".join(w))
        except SpellingError:
            continue
        n += 1
    return n


def state_with(n, *births):
    return PlaneState(tuple(Plane(b, "") for b in births), n, max(births, default=1))


class TestStateMachine:
    def test_regular_clears_planes(self):
        s = PlaneState.initial(3)
        assert successor_state(s, DirectionType(frozenset())).tangency == ()

    def test_vertical_spawns_plane(self):
        s = successor_state(PlaneState.initial(3), DirectionType(frozenset({"V"})))
        assert s.tangency == (Plane(2, ""),)

    def test_l_keeps_two_planes(self):
        s = state_with(3, 2)
        d = DirectionType(frozenset({"V", Plane(2, "")}))
        assert d.letter == "L"
        nxt = successor_state(s, d)
        assert len(nxt.tangency) == 2
        assert {p.birth_level for p in nxt.tangency} == {2, 3}

    def test_rejects_foreign_plane(self):
        with pytest.raises(ValueError):
            successor_state(PlaneState.initial(3), DirectionType(frozenset({Plane(5, "")})))

    def test_plane_bound(self):
        with pytest.raises(ValueError):
            state_with(2, 2, 3)

    @pytest.mark.parametrize("planes, count", [((), 2), ((2,), 4), ((2, 3), 7)])
    def test_direction_type_counts(self, planes, count):
        assert len(direction_types(state_with(3, *planes))) == count

    def test_letters_over_two_planes(self):
        letters = sorted(d.letter for d in direction_types(state_with(3, 2, 3)))
        assert letters == ["L", "L", "R", "T", "T", "T", "V"]


class TestCounts:
    def test_spatial(self):
        assert enumerate_classes(3, 5) == (1, 2, 6, 23, 98)

    def test_planar(self):
        assert enumerate_classes(2, 5) == (1, 2, 5, 13, 34)
        assert enumerate_classes(2, 2) == (1, 2)

    @pytest.mark.parametrize("k, count", [(1, 1), (3, 5), (5, 34)])
    def test_word_count(self, k, count):
        assert planar_word_count(k) == count

    @pytest.mark.parametrize("k", range(1, 9))
    def test_planar_agrees_with_word_count(self, k):
        assert enumerate_classes(2, k)[-1] == planar_word_count(k) == brute_force_words(k)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_plane_number_oracle(self, n):
        assert list(enumerate_classes(n, 7)) == orbit_counts_by_plane_number(n, 7)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            enumerate_classes(3, 0)
        with pytest.raises(ValueError):
            planar_word_count(0)

    def test_label_and_extrapolation(self):
        assert "lower bounds" in COUNT_LABEL
        assert not is_extrapolated(3) and is_extrapolated(4)


@given(st.integers(2, 4), st.integers(1, 6))
def test_paths_are_valid_words_with_bounded_planes(n, depth):
    for level, nodes in enumerate(class_tree(n, depth), start=1):
        for node in nodes:
            assert len(node.word) == level
            assert validate_code(node.word)
            assert len(node.state.tangency) <= n - 1
            if n == 2:
                assert "L" not in node.word


def test_dot_export():
    dot = to_dot(3, 3)
    assert dot.startswith("digraph")
    assert dot.count("->") == 1 + 2 + 6 - 1
    assert dot.count("[label=") == (1 + 2 + 6) + (2 + 6)
