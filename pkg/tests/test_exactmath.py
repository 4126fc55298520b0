import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertoric.errors import ContractError, InputError
from hypertoric.exactmath import (
    det_int,
    eq,
    geq,
    is_unimodular,
    kernel_basis,
    leq,
    lp_bounded,
    lp_feasible,
    lp_optimize,
    make_primitive,
    rank,
    rref,
    solve_square,
)

small = st.integers(-4, 4)
matrices = st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=4))


def test_rref_example():
    m, piv = rref([[1, 2, 3], [2, 4, 7]])
    assert piv == [0, 2] or tuple(piv) == (0, 2)
    assert m[0] == [1, 2, 0] or tuple(m[0]) == (1, 2, 0)


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(matrices)
def test_kernel_is_kernel(rows):
    ncols = len(rows[0])
    ker = kernel_basis(rows, ncols=ncols)
    assert len(ker) == ncols - rank(rows)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(m):
    assert det_int(m) == sympy.Matrix(m).det()


def test_unimodular_and_primitive():
    assert is_unimodular([(1, 1), (1, 0)])
    assert not is_unimodular([(1, 2), (2, 1)])
    assert tuple(make_primitive((Fraction(2, 3), Fraction(-4, 3)))) == (1, -2)


def test_solve_square():
    assert tuple(solve_square([(1, 1), (1, -1)], [3, 1])) == (2, 1)


def test_zero_constraint_rejected():
    with pytest.raises(InputError):
        geq((0, 0), 1)


def test_lp_statuses():
    square = [geq((1, 0), 0), leq((1, 0), 1), geq((0, 1), 0), leq((0, 1), 1)]
    res = lp_optimize(square, (1, 1), maximize=True)
    assert res.status == "optimal" and res.value == 2
    assert lp_optimize(square[:2], (0, 1), maximize=True, dim=2).status == "unbounded"
    assert lp_feasible(square + [geq((1, 1), 3)]) is None
    assert lp_bounded(square)
    assert not lp_bounded(square[:3])
    with pytest.raises(ContractError):
        lp_bounded([geq((1, 0), 1), leq((1, 0), 0)])


def test_lp_equality_and_rational_optimum():
    cons = [eq((1, 1), Fraction(1, 3)), geq((1, 0), 0), geq((0, 1), 0)]
    res = lp_optimize(cons, (1, 0), maximize=True)
    assert res.value == Fraction(1, 3) and res.point == (Fraction(1, 3), 0)


def _vertex_oracle(cons, objective):
    """Best objective over intersection points of constraint lines (2D)."""
    best = None
    for c1, c2 in itertools.combinations(cons, 2):
        m = sympy.Matrix([list(c1.normal), list(c2.normal)])
        if m.det() == 0:
            continue
        sol = m.solve(sympy.Matrix([c1.bound, c2.bound]))
        p = tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol)
        if all(c.satisfied_by(p) for c in cons):
            val = sum(a * b for a, b in zip(objective, p))
            best = val if best is None else max(best, val)
    return best


half = st.tuples(st.tuples(small, small).filter(any), st.integers(-6, 6), st.booleans())


@settings(max_examples=60, deadline=None)
@given(st.lists(half, max_size=5), st.tuples(small, small))
def test_lp_matches_vertex_enumeration(halfspaces, objective):
    box = [geq((1, 0), -5), leq((1, 0), 5), geq((0, 1), -5), leq((0, 1), 5)]
    cons = box + [geq(a, r) if ge else leq(a, r) for a, r, ge in halfspaces]
    expected = _vertex_oracle(cons, objective)
    res = lp_optimize(cons, objective, maximize=True)
    if expected is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal" and res.value == expected
        assert all(c.satisfied_by(res.point) for c in cons)
