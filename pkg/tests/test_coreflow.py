import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypertoric import fixtures
from hypertoric.arrangement import Arrangement, validate
from hypertoric.coreflow import (
    b_vector,
    core_components,
    essential,
    fixed_components,
    in_span,
    potential,
    region_weight,
    summarize,
    vertex_flow,
)
from hypertoric.errors import InputError
from hypertoric.regions import vertices

# every pair of these normals is a lattice basis, so any simple choice of offsets is smooth
UNIMODULAR_NORMALS = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)]


@st.composite
def smooth_planar(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    normals = draw(st.lists(st.sampled_from(UNIMODULAR_NORMALS), min_size=n, max_size=n))
    offsets = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    arr = Arrangement.from_data(normals, offsets)
    rep = validate(arr)
    assume(rep.is_smooth and essential(arr))
    return arr


def test_potential_and_weight():
    arr = fixtures.fig2a()
    assert potential((1, 2), arr) == (2, 1)
    assert region_weight(arr, (1, 3, 4)) == (1, 0)
    assert region_weight(arr, (1, 2, 3, 4)) == (0, 0)
    with pytest.raises(InputError):
        potential((9,), arr)


def test_in_span():
    assert in_span((0, 0), [])
    assert not in_span((1, 0), [])
    assert in_span((2, 0), [(1, 0)])
    assert not in_span((1, 1), [(1, 0)])


@pytest.mark.parametrize("name,count", [("fig2a", 2), ("fig2b", 2), ("fig2c", 2), ("fig2a5", 4), ("fig2c5", 4)])
def test_fixture_bijection(name, count):
    s = summarize(fixtures.get(name))
    assert (s.bounded, s.fixed, s.core, s.injective, s.bijective) == (count, count, count, True, True)


def test_fig2a_core_faces():
    cores, comps = core_components(fixtures.fig2a())
    assert [(c.A, c.face.tight, c.face.dimension) for c in cores] == [((1, 3, 4), (1, 4), 0), ((1, 2, 3, 4), (), 2)]
    assert comps.minimum == 1 and comps.minimum_compact


def test_non_smooth_example_is_injective_only():
    arr = Arrangement.from_data([(1, 0), (1, 2), (0, 1)], [0, 0, 1])
    assert validate(arr).is_simple and not validate(arr).is_smooth
    s = summarize(arr)
    assert (s.bounded, s.fixed, s.injective, s.bijective, s.minimum_compact) == (1, 2, True, False, False)
    comps = fixed_components(arr)
    assert comps.minimum is not None and comps.count == len(comps.components) - 1


def test_non_smooth_vertex_has_two_stable_rays():
    arr = Arrangement.from_data([(1, 0), (1, 2), (0, 1)], [0, 0, 1])
    flow = vertex_flow(arr, (0, 0))
    line1 = flow.lines[0]
    assert line1.b == (2, -1) and line1.pairing == 2 and line1.unstable_count == 0


def test_b_vector():
    arr = fixtures.fig2a()
    assert b_vector(arr, (1, 4), 1) == (1, 0)
    assert b_vector(arr, (1, 4), 4) == (1, -1)


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_one_unstable_ray_per_line(name):
    arr = fixtures.get(name)
    for v in vertices(arr):
        for line in vertex_flow(arr, v).lines:
            assert line.unstable_count == 1
            assert line.R.test_value + line.Q.test_value == -line.pairing


@settings(max_examples=30, deadline=None)
@given(smooth_planar())
def test_smooth_bijection_property(arr):
    s = summarize(arr)
    assert s.bijective and s.bounded == s.fixed
    for v in vertices(arr):
        for line in vertex_flow(arr, v).lines:
            assert line.pairing == 1 and line.unstable_count == 1
