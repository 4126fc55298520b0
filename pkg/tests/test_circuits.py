import itertools

import pytest
from hypothesis import given, settings

from hypertoric import fixtures
from hypertoric.arrangement import Arrangement
from hypertoric.circuits import all_splittings, enumerate_circuits, matroid_circuits, split_circuit, verify_split
from hypertoric.errors import ValidationError
from hypertoric.exactmath import rank

from conftest import arrangements, simple_arrangements


def _brute_circuits(arr):
    """Minimal dependent subsets by rank counting alone."""
    out = []
    for size in range(1, arr.n + 1):
        for S in itertools.combinations(arr.labels, size):
            vecs = [arr.normal(i) for i in S]
            if rank(vecs) != size - 1:
                continue
            if all(rank([arr.normal(j) for j in S if j != i]) == size - 1 for i in S):
                out.append(S)
    return out


def test_fig2a_circuits():
    got = [(c.support, c.dependence, c.offset_sum) for c in enumerate_circuits(fixtures.fig2a())]
    assert got == [((2, 3), (-1, -1), 2), ((1, 2, 4), (-1, 1, -1), 1), ((1, 3, 4), (-1, -1, -1), 3)]


def test_fig2a_splittings():
    arr = fixtures.fig2a()
    splits = [(s.S1, s.S2) for s in (split_circuit(arr, c) for c in enumerate_circuits(arr))]
    assert splits == [((2, 3), ()), ((1, 4), (2,)), ((1, 3, 4), ())]


def test_non_simple_raises():
    bad = Arrangement.from_data([(1, 0), (0, 1), (1, 1)], [0, 0, 0])
    with pytest.raises(ValidationError):
        enumerate_circuits(bad)
    assert len(matroid_circuits(bad)) == 1


@settings(max_examples=80, deadline=None)
@given(arrangements(dims=(2, 3), max_n=5))
def test_circuits_match_brute_force(arr):
    got = matroid_circuits(arr)
    assert [c.support for c in got] == sorted(_brute_circuits(arr), key=lambda s: (len(s), s))
    for c in got:
        total = [sum(l * arr.normal(i)[k] for l, i in zip(c.dependence, c.support)) for k in range(arr.dimension)]
        assert not any(total)
        assert c.offset_sum >= 0


@settings(max_examples=60, deadline=None)
@given(simple_arrangements(dims=(2, 3), max_n=5))
def test_sign_rule_is_unique_valid_splitting(arr):
    for c in enumerate_circuits(arr):
        sc = split_circuit(arr, c)
        passing = [s for s in all_splittings(c.support) if verify_split(arr, *s)]
        assert passing == [(sc.S1, sc.S2)]


def test_all_splittings_count():
    assert len(list(all_splittings((1, 2, 3)))) == 8
