"""Buchberger's algorithm with the Gebauer-Moeller pair criteria.

Pairs are selected by the sugar strategy so that the same code serves the
homogeneous ideals of the presentations and the inhomogeneous auxiliary
ideals used for elimination.
"""

from dataclasses import dataclass

from ..errors import InputError, ResourceError
from .poly import Poly, mono_div, mono_divides, mono_lcm, mono_mul

DEFAULT_PAIR_CAP = 200_000
_pair_cap = [DEFAULT_PAIR_CAP]


def set_pair_cap(cap):
    """Set the critical-pair budget used when no explicit cap is passed; None restores the default."""
    if cap is None:
        cap = DEFAULT_PAIR_CAP
    if cap < 1:
        raise InputError("pair cap must be positive")
    _pair_cap[0] = int(cap)


def normal_form(p: Poly, basis, full=True) -> Poly:
    """Remainder of ``p`` on division by ``basis`` (monic polynomials).

    With ``full=False`` only the leading term is reduced.
    """
    ring = p.ring
    key = ring.order.key
    norm = ring.field.norm
    leads = [(g.lm, g) for g in basis if g.terms]
    work = dict(p.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, g in leads:
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                for gm, gc in g.terms.items():
                    t = mono_mul(gm, shift)
                    v = norm(work.get(t, 0) - c * gc)
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
            if not full:
                rem.update(work)
                break
    return Poly._raw(ring, rem)


def spoly(f: Poly, g: Poly) -> Poly:
    lcm = mono_lcm(f.lm, g.lm)
    a = f.mul_term(mono_div(lcm, f.lm), 1)
    b = g.mul_term(mono_div(lcm, g.lm), 1)
    return a - b


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass
class _Pair:
    i: int
    j: int
    lcm: tuple
    sugar: int


def buchberger(polys, ring=None, pair_cap=None):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Output is monic, autoreduced and sorted by decreasing leading monomial.
    """
    polys = [p for p in polys if p.terms]
    if ring is None:
        if not polys:
            raise InputError("ring required for an empty generator list")
        ring = polys[0].ring
    if pair_cap is None:
        pair_cap = _pair_cap[0]
    key = ring.order.key
    basis = []  # all polynomials ever added
    sugar = []
    active = []  # indices currently in G
    pairs = []

    def update(h):
        nonlocal active, pairs
        lm_h = basis[h].lm
        cand = [_Pair(h, g, mono_lcm(lm_h, basis[g].lm), 0) for g in active]
        for p in cand:
            g = p.j
            p.sugar = max(
                sugar[h] + sum(p.lcm) - sum(lm_h),
                sugar[g] + sum(p.lcm) - sum(basis[g].lm),
            )
        keep = []
        for k, p in enumerate(cand):
            if _coprime(lm_h, basis[p.j].lm):
                keep.append(p)
                continue
            others = cand[k + 1:] + keep
            if any(mono_divides(q.lcm, p.lcm) for q in others):
                continue
            keep.append(p)
        new = [p for p in keep if not _coprime(lm_h, basis[p.j].lm)]
        old = []
        for p in pairs:
            if (
                not mono_divides(lm_h, p.lcm)
                or mono_lcm(basis[p.i].lm, lm_h) == p.lcm
                or mono_lcm(basis[p.j].lm, lm_h) == p.lcm
            ):
                old.append(p)
        pairs = old + new
        active = [g for g in active if not mono_divides(lm_h, basis[g].lm)] + [h]

    def add(p, s):
        basis.append(p.monic())
        sugar.append(s)
        update(len(basis) - 1)

    for p in sorted(polys, key=lambda q: (q.degree(), key(q.lm))):
        r = normal_form(p, [basis[g] for g in active])
        if r.terms:
            add(r, p.degree())

    processed = 0
    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k].sugar, key(pairs[k].lcm), pairs[k].i, pairs[k].j))
        pr = pairs.pop(best)
        processed += 1
        if processed > pair_cap:
            raise ResourceError(f"Groebner basis computation exceeded {pair_cap} critical pairs")
        s = spoly(basis[pr.i], basis[pr.j])
        r = normal_form(s, [basis[g] for g in active])
        if r.terms:
            add(r, max(pr.sugar, r.degree()))

    return reduce_basis([basis[g] for g in active])


def reduce_basis(G):
    """Minimalise and interreduce a Groebner basis."""
    G = [g.monic() for g in G if g.terms]
    key = G[0].ring.order.key if G else None
    G.sort(key=lambda g: key(g.lm))
    minimal = []
    for k, g in enumerate(G):
        if any(mono_divides(h.lm, g.lm) and (h.lm != g.lm or j < k) for j, h in enumerate(G) if j != k):
            continue
        minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: key(g.lm), reverse=True)
    return reduced


def is_groebner(G) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g.monic() for g in G if g.terms]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if _coprime(G[a].lm, G[b].lm):
                continue
            if normal_form(spoly(G[a], G[b]), G).terms:
                return False
    return True
