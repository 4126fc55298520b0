"""Circuits of the normal vectors and their coorientation splittings."""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .exactmath import geq, kernel_basis, leq, lp_feasible, rank


@dataclass(frozen=True)
class Circuit:
    support: tuple  # sorted hyperplane labels
    dependence: tuple  # lambda_i aligned with support, sum lambda_i a_i = 0
    offset_sum: Fraction

    def coefficient(self, i):
        return self.dependence[self.support.index(i)]


@dataclass(frozen=True)
class SplitCircuit:
    circuit: Circuit
    S1: tuple  # u_i factors (negative sides)
    S2: tuple  # (x - u_j) factors (positive sides)


def _normalize(support, lam, arr):
    offset_sum = sum((l * arr.offset(i) for l, i in zip(lam, support)), Fraction(0))
    flip = offset_sum < 0 or (offset_sum == 0 and next(l for l in lam if l) < 0)
    if flip:
        lam = tuple(-l for l in lam)
        offset_sum = -offset_sum
    return Circuit(tuple(support), tuple(lam), offset_sum)


def matroid_circuits(arr):
    """All circuits of the linear matroid on the normals, no simplicity check.

    Subsets are scanned by size up to rank + 1; a subset is a circuit when its
    kernel is one-dimensional with full support.
    """
    r = rank(arr.normals)
    out = []
    for size in range(1, r + 2):
        for support in itertools.combinations(arr.labels, size):
            cols = [arr.normal(i) for i in support]
            rows = [[col[k] for col in cols] for k in range(arr.dimension)]
            ker = kernel_basis(rows)
            if len(ker) == 1 and all(ker[0]):
                out.append(_normalize(support, ker[0], arr))
    return out


def enumerate_circuits(arr):
    circuits = matroid_circuits(arr)
    bad = [c.support for c in circuits if c.offset_sum == 0]
    if bad:
        raise ValidationError("arrangement is not simple", [(s, "circuit with zero offset sum") for s in bad])
    return circuits


def split_circuit(arr, circuit: Circuit) -> SplitCircuit:
    if circuit.offset_sum == 0:
        raise ValidationError("circuit has zero offset sum; arrangement is not simple", [(circuit.support, "zero offset sum")])
    lam = circuit.dependence
    if circuit.offset_sum < 0:
        lam = tuple(-l for l in lam)
    S1 = tuple(i for i, l in zip(circuit.support, lam) if l < 0)
    S2 = tuple(i for i, l in zip(circuit.support, lam) if l > 0)
    return SplitCircuit(circuit, S1, S2)


def split_constraints(arr, S1, S2):
    return [leq(arr.normal(i), arr.offset(i)) for i in S1] + [geq(arr.normal(j), arr.offset(j)) for j in S2]


def verify_split(arr, S1, S2) -> bool:
    """True iff the G sides over S1 and the F sides over S2 have empty intersection."""
    if set(S1) & set(S2):
        raise ValueError("S1 and S2 must be disjoint")
    cons = split_constraints(arr, S1, S2)
    return lp_feasible(cons, dim=arr.dimension) is None


def all_splittings(support):
    """Every ordered partition (S1, S2) of a support set."""
    for mask in range(1 << len(support)):
        S2 = tuple(i for k, i in enumerate(support) if mask >> k & 1)
        S1 = tuple(i for i in support if i not in S2)
        yield S1, S2


def split_all(arr):
    return [split_circuit(arr, c) for c in enumerate_circuits(arr)]
