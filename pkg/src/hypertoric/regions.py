"""Regions, vertices and faces of the polyhedral complex cut out by an arrangement.

A region is indexed by its F-set A: Delta_A is the intersection of F_i for i
in A and G_i for i outside A. All 2^n index sets are kept, empty ones flagged
infeasible, so indices stay stable.
"""

import itertools
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import validate
from .exactmath import dot, eq, geq, leq, lp_bounded, lp_feasible, lp_optimize, rank, solve_square
from .errors import InputError, ResourceError, ValidationError

DEFAULT_SUBSET_CAP = 20


@dataclass(frozen=True)
class Region:
    A: tuple  # F-set, sorted labels
    feasible: bool
    bounded: bool
    witness: object = None  # a point of Delta_A when feasible

    def G(self, n):
        return tuple(i for i in range(1, n + 1) if i not in self.A)


@dataclass(frozen=True)
class Vertex:
    point: tuple
    incident: tuple  # labels of hyperplanes through the point


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by its tight set and the sides of the rest.

    ``tight`` is the set of hyperplanes containing the whole face; for every
    other hyperplane the face lies in F_i (label in ``positive``) or in G_i.
    """

    tight: tuple
    positive: tuple
    dimension: int
    witness: tuple

    def carriers(self, n):
        """F-sets A with this face contained in Delta_A."""
        free = self.tight
        base = set(self.positive)
        out = []
        for mask in range(1 << len(free)):
            A = base | {free[k] for k in range(len(free)) if mask >> k & 1}
            out.append(tuple(sorted(A)))
        return sorted(out)

    def constraints(self, arr):
        return face_constraints(arr, self.tight, self.positive)

    def is_bounded(self, arr):
        return lp_bounded(self.constraints(arr), dim=arr.dimension)


@dataclass(frozen=True)
class FaceComplex:
    vertices: tuple
    faces: tuple  # sorted by (dimension, tight, positive)
    incidence: tuple  # (face index, subface index) with dimension drop 1

    def faces_of(self, arr, A):
        A = set(A)
        return [f for f in self.faces if _face_in_region(f, A, arr.n)]

    def count_by_dimension(self, faces=None):
        counts = {}
        for f in self.faces if faces is None else faces:
            counts[f.dimension] = counts.get(f.dimension, 0) + 1
        return counts


def _face_in_region(face, A, n):
    pos = set(face.positive)
    tight = set(face.tight)
    return all((i in A) == (i in pos) for i in range(1, n + 1) if i not in tight)


def region_constraints(arr, A):
    A = set(A)
    return [geq(arr.normal(i), arr.offset(i)) if i in A else leq(arr.normal(i), arr.offset(i)) for i in arr.labels]


def face_constraints(arr, tight, positive):
    tight, positive = set(tight), set(positive)
    out = []
    for i in arr.labels:
        a, r = arr.normal(i), arr.offset(i)
        if i in tight:
            out.append(eq(a, r))
        elif i in positive:
            out.append(geq(a, r))
        else:
            out.append(leq(a, r))
    return out


def _require_simple(arr):
    report = validate(arr)
    if not report.is_simple:
        raise ValidationError("arrangement is not simple", report.witnesses)


def _check_cap(arr, cap):
    if arr.n > cap:
        raise ResourceError(
            f"region enumeration loops over 2^{arr.n} subsets; n = {arr.n} exceeds the cap {cap} "
            "(raise the cap explicitly if this is intended)"
        )


def region(arr, A) -> Region:
    A = tuple(sorted(set(A)))
    if any(i not in arr.labels for i in A):
        raise InputError(f"index set {A} is not a subset of 1..{arr.n}")
    cons = region_constraints(arr, A)
    w = lp_feasible(cons, dim=arr.dimension)
    if w is None:
        return Region(A, False, False, None)
    return Region(A, True, lp_bounded(cons, dim=arr.dimension), w)


def enumerate_regions(arr, cap=DEFAULT_SUBSET_CAP):
    """One Region per subset A of {1..n}, in order of increasing bitmask."""
    _require_simple(arr)
    _check_cap(arr, cap)
    return list(_all_regions(arr))


@lru_cache(maxsize=64)
def _all_regions(arr):
    out = []
    for mask in range(1 << arr.n):
        A = tuple(i for i in arr.labels if mask >> (i - 1) & 1)
        out.append(region(arr, A))
    return tuple(out)


def feasible_regions(arr, cap=DEFAULT_SUBSET_CAP):
    return [r for r in enumerate_regions(arr, cap) if r.feasible]


def bounded_index_set(arr, cap=DEFAULT_SUBSET_CAP):
    return [r.A for r in enumerate_regions(arr, cap) if r.bounded]


def vertices(arr):
    """Points where a rank-d set of hyperplanes meets, sorted by point."""
    _require_simple(arr)
    return list(_vertices(arr))


@lru_cache(maxsize=64)
def _vertices(arr):
    d = arr.dimension
    points = {}
    for B in itertools.combinations(arr.labels, d):
        rows = [arr.normal(i) for i in B]
        if rank(rows) < d:
            continue
        p = tuple(solve_square(rows, [arr.offset(i) for i in B]))
        points.setdefault(p, None)
    out = []
    for p in sorted(points):
        incident = tuple(i for i in arr.labels if dot(arr.normal(i), p) == arr.offset(i))
        if len(incident) != d:
            raise ValidationError("vertex on more than d hyperplanes; arrangement is not simple", [(incident, "degenerate vertex")])
        out.append(Vertex(p, incident))
    return tuple(out)


def find_vertex(arr, point):
    point = tuple(Fraction(x) for x in point)
    for v in vertices(arr):
        if v.point == point:
            return v
    raise InputError(f"{point} is not a vertex of the arrangement")


def tight_set(arr, constraints, candidates, witness=None):
    """Labels among ``candidates`` whose hyperplane contains the whole set."""
    out = []
    d = arr.dimension
    for i in candidates:
        a, r = arr.normal(i), arr.offset(i)
        if witness is not None and dot(a, witness) != r:
            continue
        hi = lp_optimize(constraints, a, maximize=True, dim=d)
        lo = lp_optimize(constraints, a, maximize=False, dim=d)
        if hi.status == "optimal" and lo.status == "optimal" and hi.value == r and lo.value == r:
            out.append(i)
    return tuple(out)


def identify_face(arr, constraints, witness):
    """The Face (tight set and sides) of a nonempty convex set cut by extra constraints."""
    tight = tight_set(arr, constraints, arr.labels, witness)
    positive = []
    for i in arr.labels:
        if i in tight:
            continue
        # off its tight hyperplanes, a face lies strictly on one side; find it
        if dot(arr.normal(i), witness) > arr.offset(i):
            positive.append(i)
        elif dot(arr.normal(i), witness) == arr.offset(i):
            hi = lp_optimize(constraints, arr.normal(i), maximize=True, dim=arr.dimension)
            if hi.status == "unbounded" or hi.value > arr.offset(i):
                positive.append(i)
    dim = arr.dimension - rank([arr.normal(i) for i in tight]) if tight else arr.dimension
    return Face(tight, tuple(positive), dim, tuple(witness))


def face_complex(arr, cap=DEFAULT_SUBSET_CAP) -> FaceComplex:
    """All nonempty faces of all regions, with their covering relation."""
    _require_simple(arr)
    _check_cap(arr, cap)
    return _face_complex(arr)


@lru_cache(maxsize=64)
def _face_complex(arr):
    cap = arr.n
    d = arr.dimension
    independent = [
        B for k in range(d + 1) for B in itertools.combinations(arr.labels, k) if rank([arr.normal(i) for i in B]) == k
    ]
    found = {}
    for reg in enumerate_regions(arr, cap):
        if not reg.feasible:
            continue
        base = region_constraints(arr, reg.A)
        for B in independent:
            cons = base + [eq(arr.normal(i), arr.offset(i)) for i in B]
            w = lp_feasible(cons, dim=d)
            if w is None:
                continue
            face = identify_face(arr, cons, w)
            key = (face.tight, face.positive)
            if key not in found:
                found[key] = face
    faces = sorted(found.values(), key=lambda f: (f.dimension, f.tight, f.positive))
    incidence = []
    for j, sub in enumerate(faces):
        for i, sup in enumerate(faces):
            if sup.dimension == sub.dimension + 1 and _contains(sup, sub):
                incidence.append((i, j))
    return FaceComplex(tuple(vertices(arr)), tuple(faces), tuple(sorted(incidence)))


def _contains(sup, sub):
    if not set(sup.tight) <= set(sub.tight):
        return False
    return all((i in sup.positive) == (i in sub.positive) for i in set(sup.positive) | set(sub.positive) if i not in sub.tight)
