"""Dense linear algebra over Q and F2, and the Groebner-free dimension oracle."""

from fractions import Fraction

from ..errors import ResourceError
from .poly import F2, monomials_of_degree, mono_mul

DEFAULT_DENSE_CAP = 200_000  # max monomials in one degree slice


def row_rank(rows, field) -> int:
    if field is F2:
        return _rank_f2([_bits(r) for r in rows])
    return _rank_q([{k: Fraction(c) for k, c in enumerate(r) if c} for r in rows])


def _bits(row):
    out = 0
    for k, c in enumerate(row):
        if c % 2:
            out |= 1 << k
    return out


def _rank_f2(rows):
    pivots = {}  # highest bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def _rank_q(rows):
    pivots = {}  # pivot column -> normalized sparse row
    for r in rows:
        r = dict(r)
        while r:
            col = min(r)
            if col not in pivots:
                c = r[col]
                pivots[col] = {k: v / c for k, v in r.items()}
                break
            c = r[col]
            for k, v in pivots[col].items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def dims_by_degree(I, cap, dense_cap=DEFAULT_DENSE_CAP):
    """dim of (R/I)_k for k = 0..cap by exact rank of I_k in the monomial basis.

    I_k is spanned by monomial multiples of the generators; no Groebner bases.
    """
    ring = I.ring
    field = ring.field
    gens = [g for g in I.generators if g.terms]
    dims = []
    for k in range(cap + 1):
        size = ring.count_monomials(k)
        if size > dense_cap:
            raise ResourceError(f"degree {k} slice has {size} monomials (cap {dense_cap})")
        basis = list(monomials_of_degree(ring.nvars, k))
        index = {m: j for j, m in enumerate(basis)}
        rows = []
        for g in gens:
            dg = g.degree()
            if dg > k:
                continue
            for shift in monomials_of_degree(ring.nvars, k - dg):
                row = {}
                for m, c in g.terms.items():
                    row[index[mono_mul(m, shift)]] = c
                rows.append(row)
        if field is F2:
            r = _rank_f2([sum(1 << j for j, c in row.items() if c % 2) for row in rows])
        else:
            r = _rank_q([{j: Fraction(c) for j, c in row.items()} for row in rows])
        dims.append(len(basis) - r)
    return dims
