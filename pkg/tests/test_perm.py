"""Permutation parsing, trimming, inversions, and Rothe diagrams."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pipelattice import (
    DomainError,
    Permutation,
    dots_northwest,
    inverse,
    inversions,
    rothe_diagram,
)

from conftest import all_windows


def test_trailing_fixed_points_are_trimmed():
    assert Permutation([1, 4, 3, 2, 5]).oneline == (1, 4, 3, 2)
    assert Permutation([1, 2, 3]).oneline == (1,)
    assert Permutation([2, 1, 3, 4]).oneline == (2, 1)


def test_identity_collapses_but_still_acts():
    e = Permutation([1, 2, 3, 4])
    assert e.n == 1
    assert e(3) == 3
    assert e(100) == 100


def test_call_extends_by_fixed_points():
    w = Permutation([3, 1, 2])
    assert [w(i) for i in range(1, 6)] == [3, 1, 2, 4, 5]
    with pytest.raises(DomainError):
        w(0)


@pytest.mark.parametrize(
    "bad", [[], [2, 2], [0, 1], [1, 3], [2, 3, 1, 5]], ids=repr
)
def test_rejects_non_permutations(bad):
    with pytest.raises(DomainError):
        Permutation(bad)


@pytest.mark.parametrize("bad_text", ["", "abc", "1,2,x", "14 32"])
def test_rejects_bad_text(bad_text):
    with pytest.raises(DomainError):
        Permutation.from_text(bad_text)


def test_from_text_accepts_digits_and_commas():
    assert Permutation.from_text("314652") == Permutation.from_text("3,1,4,6,5,2")
    assert Permutation.from_text(" 1432 ").oneline == (1, 4, 3, 2)


@given(st.permutations(list(range(1, 8))))
def test_text_roundtrip(word):
    w = Permutation(word)
    assert Permutation.from_text(w.to_text()) == w


@given(st.permutations(list(range(1, 13))))
def test_large_windows_use_commas(word):
    w = Permutation(word)
    text = w.to_text()
    if w.n > 9:
        assert "," in text
    assert Permutation.from_text(text) == w


def test_extended_pads_and_refuses_to_shrink():
    w = Permutation([2, 1])
    assert w.extended(4) == (2, 1, 3, 4)
    with pytest.raises(DomainError):
        Permutation([3, 1, 2]).extended(2)


@given(st.permutations(list(range(1, 7))))
def test_inverse_is_an_involution(word):
    w = Permutation(word)
    assert inverse(inverse(w)) == w
    for i in range(1, w.n + 1):
        assert inverse(w)(w(i)) == i


def test_length_counts_inversions():
    assert Permutation([1]).length == 0
    assert Permutation([3, 2, 1]).length == 3
    w = Permutation([3, 1, 4, 6, 5, 2])
    assert w.length == len(inversions(w)) == 6


@given(st.permutations(list(range(1, 7))))
def test_diagram_size_equals_length(word):
    w = Permutation(word)
    diagram = rothe_diagram(w)
    assert len(diagram.cells) == w.length
    # every cell lies strictly northwest of both dots that carve it out
    for (i, j) in diagram.cells:
        assert j < w(i)
        assert i < inverse(w)(j)


def test_diagram_of_1432():
    assert rothe_diagram(Permutation([1, 4, 3, 2])).cells == {
        (2, 2), (2, 3), (3, 2),
    }


def test_dots_northwest_frozen_values():
    w = Permutation([3, 1, 4, 6, 5, 2])
    # dots of w are (i, w(i)); cell (4, 5) sees (1, 3), (2, 1), and (3, 4)
    assert dots_northwest(w, (4, 5)) == 3
    assert dots_northwest(w, (1, 1)) == 0
    assert dots_northwest(Permutation([1, 4, 3, 2]), (3, 2)) == 1


def test_dots_northwest_rejects_non_diagram_cells():
    w = Permutation([3, 1, 4, 6, 5, 2])
    with pytest.raises(DomainError):
        dots_northwest(w, (2, 2))  # struck out by the dot (2, 1)


def test_all_windows_partition_the_symmetric_group():
    # trimmed windows of each exact size tile S4 without overlap
    sizes = [len(all_windows(k)) for k in range(1, 5)]
    assert sizes == [1, 1, 4, 18]
    assert sum(sizes) == 24
