"""Exact rational linear algebra and linear programming.

Rationals are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator. Nothing in this module touches floats.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import ContractError, InputError

Rational = Fraction
RatVector = tuple  # tuple of Fraction, fixed length


def ratvec(values) -> tuple:
    return tuple(Fraction(v) for v in values)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class Sense(Enum):
    GEQ = ">="
    LEQ = "<="
    EQ = "="


@dataclass(frozen=True)
class LinConstraint:
    """``<normal, x> (sense) bound``."""

    normal: tuple
    bound: Fraction
    sense: Sense

    def __post_init__(self):
        object.__setattr__(self, "normal", ratvec(self.normal))
        object.__setattr__(self, "bound", Fraction(self.bound))
        if not any(self.normal) and not (self.sense is Sense.EQ and self.bound == 0):
            raise InputError("degenerate constraint with zero normal")

    @property
    def dimension(self):
        return len(self.normal)

    def satisfied_by(self, point) -> bool:
        value = dot(self.normal, point)
        if self.sense is Sense.GEQ:
            return value >= self.bound
        if self.sense is Sense.LEQ:
            return value <= self.bound
        return value == self.bound

    def homogeneous(self) -> "LinConstraint":
        return LinConstraint(self.normal, Fraction(0), self.sense)


def geq(normal, bound):
    return LinConstraint(normal, bound, Sense.GEQ)


def leq(normal, bound):
    return LinConstraint(normal, bound, Sense.LEQ)


def eq(normal, bound):
    return LinConstraint(normal, bound, Sense.EQ)


# ---------------------------------------------------------------------------
# linear algebra over Q


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def clear_denominators(vec):
    """Scale a rational vector to coprime integers, keeping its direction."""
    vec = [Fraction(v) for v in vec]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def kernel_basis(rows, ncols=None):
    """Basis of the right kernel ``{v : M v = 0}`` as coprime integer vectors.

    With no rows the kernel is the whole space and the standard basis of
    length ``ncols`` is returned.
    """
    rows = [list(r) for r in rows]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InputError("kernel_basis: rows have different lengths")
        if ncols is not None and ncols != width:
            raise InputError("kernel_basis: ncols disagrees with row length")
        ncols = width
    elif ncols is None:
        return []
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(clear_denominators(v))
    return basis


def det_int(matrix) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    m = [[int(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def make_primitive(v):
    """Smallest integer vector with the same direction as a rational vector."""
    out = clear_denominators(v)
    if not any(out):
        raise InputError("make_primitive: zero vector")
    return out


def is_unimodular(vectors) -> bool:
    vectors = [tuple(v) for v in vectors]
    d = len(vectors)
    if d == 0 or any(len(v) != d for v in vectors):
        raise InputError("is_unimodular expects d vectors of length d")
    return abs(det_int(vectors)) == 1


def solve_square(rows, rhs):
    """Solve a nonsingular square system exactly; None when singular."""
    n = len(rows)
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in reduced)


# ---------------------------------------------------------------------------
# exact simplex (two-phase, Bland's rule)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    point: Optional[tuple] = None


def _dimension(constraints, dim):
    dims = {c.dimension for c in constraints}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise InputError(f"constraints in mixed dimensions {sorted(dims)}")
    if not dims:
        raise InputError("cannot infer dimension of an empty constraint system")
    return dims.pop()


def _pivot(tab, rhs, basis, row, col):
    piv = tab[row][col]
    prow = [x / piv for x in tab[row]]
    tab[row] = prow
    rhs[row] /= piv
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i in range(len(tab)):
        f = tab[i][col]
        if i != row and f:
            r = tab[i]
            for j, v in nz:
                r[j] -= f * v
            rhs[i] -= f * rhs[row]
    basis[row] = col


def _run_simplex(tab, rhs, basis, cost, allowed):
    """Minimise ``cost . z`` from a canonical tableau; Bland's rule throughout."""
    while True:
        entering = None
        priced = [(i, cost[b]) for i, b in enumerate(basis) if cost[b]]
        in_basis = set(basis)
        for j in allowed:
            if j in in_basis:
                continue
            reduced = cost[j] - sum((c * tab[i][j] for i, c in priced), Fraction(0))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i in range(len(tab)):
            a = tab[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(tab, rhs, basis, best[1], entering)


def lp_optimize(constraints: Sequence[LinConstraint], objective=None, maximize=False, dim=None) -> LPResult:
    """Optimise a linear objective over ``{x : constraints}`` with x free.

    With ``objective=None`` only feasibility is decided and the returned point
    is a witness.
    """
    constraints = list(constraints)
    d = _dimension(constraints, dim)
    nx = 2 * d  # x = p - q, p, q >= 0
    rows, rhs, slack_of = [], [], []
    nslack = sum(1 for c in constraints if c.sense is not Sense.EQ)
    ncols_real = nx + nslack
    s = 0
    for c in constraints:
        row = [Fraction(0)] * ncols_real
        for k, a in enumerate(c.normal):
            row[k] = a
            row[d + k] = -a
        if c.sense is Sense.GEQ:
            row[nx + s] = Fraction(-1)
            s += 1
        elif c.sense is Sense.LEQ:
            row[nx + s] = Fraction(1)
            s += 1
        b = c.bound
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    m = len(rows)
    ncols = ncols_real + m
    tab = [row + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(rows)]
    basis = [ncols_real + i for i in range(m)]
    phase1_cost = [Fraction(0)] * ncols_real + [Fraction(1)] * m
    _run_simplex(tab, rhs, basis, phase1_cost, range(ncols))
    if sum((rhs[i] for i, b in enumerate(basis) if b >= ncols_real), Fraction(0)) > 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis; drop redundant rows
    i = 0
    while i < len(tab):
        if basis[i] >= ncols_real:
            col = next((j for j in range(ncols_real) if tab[i][j] != 0), None)
            if col is None:
                del tab[i], rhs[i], basis[i]
                continue
            _pivot(tab, rhs, basis, i, col)
        i += 1

    def extract():
        z = [Fraction(0)] * ncols
        for i, b in enumerate(basis):
            z[b] = rhs[i]
        return tuple(z[k] - z[d + k] for k in range(d))

    if objective is None:
        point = extract()
        return LPResult("optimal", Fraction(0), point)
    obj = ratvec(objective)
    if len(obj) != d:
        raise InputError("objective dimension mismatch")
    sign = -1 if maximize else 1
    cost = [sign * obj[k] for k in range(d)] + [-sign * obj[k] for k in range(d)]
    cost += [Fraction(0)] * (ncols - nx)
    status = _run_simplex(tab, rhs, basis, cost, range(ncols_real))
    if status == "unbounded":
        return LPResult("unbounded")
    point = extract()
    return LPResult("optimal", dot(obj, point), point)


def lp_feasible(constraints: Sequence[LinConstraint], dim=None):
    """A point satisfying every constraint exactly, or None if infeasible."""
    constraints = list(constraints)
    if not constraints:
        if dim is None:
            raise InputError("cannot infer dimension of an empty constraint system")
        return tuple(Fraction(0) for _ in range(dim))
    result = lp_optimize(constraints, dim=dim)
    if result.status == "infeasible":
        return None
    assert all(c.satisfied_by(result.point) for c in constraints)
    return result.point


def lp_bounded(constraints: Sequence[LinConstraint], dim=None) -> bool:
    """Whether a feasible polyhedron is bounded.

    The recession cone, cut down to the box [-1, 1]^d, must collapse to the
    origin: every coordinate has max and min 0 over it.
    """
    constraints = list(constraints)
    d = _dimension(constraints, dim) if constraints else dim
    if lp_feasible(constraints, dim=d) is None:
        raise ContractError("lp_bounded called on an infeasible system")
    cone = [c.homogeneous() for c in constraints if any(c.normal)]
    for k in range(d):
        e = tuple(Fraction(int(i == k)) for i in range(d))
        cone.append(leq(e, 1))
        cone.append(geq(e, -1))
    for k in range(d):
        e = tuple(Fraction(int(i == k)) for i in range(d))
        for maximize in (True, False):
            res = lp_optimize(cone, e, maximize=maximize, dim=d)
            if res.value != 0:
                return False
    return True
