"""Homogeneous ideals and the queries built on their Groebner bases."""

from dataclasses import dataclass
from functools import lru_cache

from ..errors import ContractError, InputError
from .groebner import buchberger, normal_form
from .poly import MonomialOrder, Poly, PolyRing, mono_div, mono_divides, mono_gcd


class Ideal:
    def __init__(self, ring: PolyRing, generators, check_homogeneous=True):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, Poly):
                g = ring.parse(g) if isinstance(g, str) else ring.const(g)
            if not g.ring.same_ambient(ring):
                raise InputError(f"generator {g} lives in {g.ring}, not {ring}")
            if g.ring is not ring:
                g = Poly._raw(ring, dict(g.terms))
            if g.terms:
                if check_homogeneous and not g.is_homogeneous():
                    raise InputError(f"generator {g} is not homogeneous")
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.generators))}])"

    def groebner(self):
        if self._gb is None:
            self._gb = tuple(buchberger(self.generators, self.ring))
        return self._gb

    def __add__(self, other):
        if isinstance(other, Ideal):
            _same(self, other)
            other = other.generators
        return Ideal(self.ring, list(self.generators) + list(other))

    def contains(self, p) -> bool:
        if isinstance(p, str):
            p = self.ring.parse(p)
        return ideal_member(p, self)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    order: str


def groebner_basis(I: Ideal) -> GroebnerBasis:
    return GroebnerBasis(I.groebner(), I.ring.order.descriptor())


def _same(I, J):
    if not I.ring.same_ambient(J.ring):
        raise InputError(f"ambient mismatch: {I.ring} vs {J.ring}")


def _coerce(p, ring):
    if not p.ring.same_ambient(ring):
        raise InputError(f"variable mismatch: {p.ring} vs {ring}")
    return p if p.ring is ring else Poly._raw(ring, dict(p.terms))


def reduce(p: Poly, I: Ideal) -> Poly:
    return normal_form(_coerce(p, I.ring), I.groebner())


def ideal_member(p: Poly, I: Ideal) -> bool:
    return not reduce(p, I).terms


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same(I, J)
    if I.ring.order == J.ring.order:
        return [g.terms for g in I.groebner()] == [g.terms for g in J.groebner()]
    return ideal_contains(I, J) and ideal_contains(J, I)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """Whether J is a subset of I."""
    _same(I, J)
    return all(ideal_member(g, I) for g in J.generators)


# ---------------------------------------------------------------------------
# elimination and quotients


def extend_ring(ring: PolyRing, new_vars, eliminate_new=True):
    """Ring with extra variables; with ``eliminate_new`` they form the first block."""
    variables = ring.variables + tuple(new_vars)
    n = len(ring.variables)
    k = len(new_vars)
    if eliminate_new:
        order = MonomialOrder(n + k, [tuple(range(n, n + k)), tuple(range(n))])
    else:
        order = MonomialOrder(n + k)
    return PolyRing(variables, ring.field, order)


def embed(p: Poly, big: PolyRing) -> Poly:
    pad = (0,) * (big.nvars - p.ring.nvars)
    return Poly._raw(big, {m + pad: c for m, c in p.terms.items()})


def eliminate(polys, big: PolyRing, keep: PolyRing):
    """Generators of the elimination ideal: basis elements free of the extra variables."""
    n = keep.nvars
    gb = buchberger(polys, big)
    out = []
    for g in gb:
        if all(not any(m[n:]) for m in g.terms):
            out.append(Poly._raw(keep, {m[:n]: c for m, c in g.terms.items()}))
    return out


def divide_exact(p: Poly, f: Poly) -> Poly:
    """``p / f`` when f divides p; raises otherwise."""
    ring = p.ring
    key = ring.order.key
    q = {}
    work = p
    inv = ring.field.inv(f.lc)
    while work.terms:
        m = work.lm
        if not mono_divides(f.lm, m):
            raise ContractError(f"{f} does not divide {p}")
        t = mono_div(m, f.lm)
        c = ring.field.norm(work.terms[m] * inv)
        q[t] = c
        work = work - f.mul_term(t, c)
    del key
    return Poly(ring, q)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via ``t I + (1 - t) J`` and elimination of t."""
    _same(I, J)
    big = extend_ring(I.ring, ("_t",))
    t = big.gen("_t")
    gens = [t * embed(g, big) for g in I.generators]
    gens += [(big.one() - t) * embed(g, big) for g in J.generators]
    return Ideal(I.ring, eliminate(gens, big, I.ring))


def ideal_quotient(I: Ideal, f: Poly) -> Ideal:
    """(I : f) = {g : g f in I}."""
    f = _coerce(f, I.ring)
    if not f.terms:
        raise InputError("ideal quotient by zero")
    if not f.is_homogeneous():
        raise InputError("ideal quotient needs a homogeneous element")
    meet = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in meet.groebner()])


# ---------------------------------------------------------------------------
# Hilbert series


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # integer coefficients of N(t)
    exponent: int  # series = N(t) / (1 - t)^exponent
    coefficients: tuple  # graded dimensions in degrees 0..cap

    def total_dimension(self):
        """Sum of all graded dimensions, or None when infinite."""
        return sum(self.numerator) if self.exponent == 0 else None

    def as_text(self):
        num = poly_text(self.numerator)
        if self.exponent == 0:
            return num
        den = "(1-t)" if self.exponent == 1 else f"(1-t)^{self.exponent}"
        return f"({num})/{den}"


def poly_text(coeffs, var="t"):
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = mono if abs(c) == 1 and k else (str(abs(c)) if k == 0 else f"{abs(c)}{mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return tuple(sorted(out))


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]


@lru_cache(maxsize=100_000)
def _numerator(monos):
    """Numerator N with H(R/M) = N / (1-t)^nvars for a minimal monomial ideal M."""
    if not monos:
        return (1,)
    if all(sum(1 for e in m if e) == 1 for m in monos):
        # pure powers of distinct variables: product of (1 - t^e)
        out = [1]
        for m in monos:
            e = sum(m)
            shifted = [0] * e + out
            out = _poly_sub(out + [0] * e, shifted)
        return tuple(out)
    *rest, last = monos
    rest = tuple(rest)
    colon = _minimalize(mono_div(m, mono_gcd(m, last)) for m in rest)
    shift = [0] * sum(last) + list(_numerator(colon))
    return tuple(_poly_sub(list(_numerator(rest)), shift))


def _strip(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def series_coefficients(numerator, exponent, cap):
    coeffs = [numerator[k] if k < len(numerator) else 0 for k in range(cap + 1)]
    for _ in range(exponent):
        for k in range(1, cap + 1):
            coeffs[k] += coeffs[k - 1]
    return tuple(coeffs)


def hilbert_from_leading_monomials(leads, nvars, cap=8):
    monos = _minimalize(leads)
    num = _strip(_numerator(monos))
    v = nvars
    # cancel common factors of (1 - t)
    while v > 0 and sum(num) == 0:
        quotient = []
        acc = 0
        for c in num[:-1]:
            acc += c
            quotient.append(acc)
        num = _strip(quotient) if quotient else [0]
        v -= 1
    return HilbertData(tuple(num), v, series_coefficients(num, v, cap))


def hilbert_series(I: Ideal, cap=8) -> HilbertData:
    for g in I.generators:
        if not g.is_homogeneous():
            raise InputError("Hilbert series needs homogeneous generators")
    return hilbert_from_leading_monomials([g.lm for g in I.groebner()], I.ring.nvars, cap)


# ---------------------------------------------------------------------------
# minimal generators


@dataclass(frozen=True)
class MinimalGenerators:
    degrees: tuple
    generators: tuple  # representatives, one per minimal generator


def minimal_generators(J: Ideal, I: Ideal) -> MinimalGenerators:
    """Minimal homogeneous generators of J / I as a module over the ring.

    Degree by degree: the generators of J of degree k that stay linearly
    independent modulo (I + generators already chosen in lower degrees).
    """
    _same(I, J)
    if not ideal_contains(J, I):
        raise ContractError("minimal_generators requires I to be contained in J")
    candidates = {}
    for g in J.generators:
        if not g.is_homogeneous():
            raise InputError("minimal generators need homogeneous generators")
        candidates.setdefault(g.degree(), []).append(g)
    chosen = []
    degrees = []
    for k in sorted(candidates):
        base = Ideal(J.ring, list(I.generators) + chosen)
        gb = base.groebner()
        reduced = []
        for g in candidates[k]:
            r = normal_form(g, gb)
            if r.terms and _independent(r, reduced, J.ring):
                reduced.append(r)
                chosen.append(g)
                degrees.append(k)
    return MinimalGenerators(tuple(degrees), tuple(chosen))


def _independent(p, vectors, ring):
    """Whether p is outside the span of ``vectors`` (all homogeneous)."""
    if not vectors:
        return True
    from .linalg import row_rank

    monos = sorted({m for v in vectors + [p] for m in v.terms})
    rows = [[v.terms.get(m, 0) for m in monos] for v in vectors]
    return row_rank(rows + [[p.terms.get(m, 0) for m in monos]], ring.field) > row_rank(rows, ring.field)


def minimal_generator_degrees(J: Ideal, I: Ideal):
    return minimal_generators(J, I).degrees


# ---------------------------------------------------------------------------
# substitution


def substitute(mapping, p: Poly, target: PolyRing) -> Poly:
    """Ring homomorphism sending variable ``v`` of p's ring to ``mapping[v]``."""
    images = []
    for v in p.ring.variables:
        if v not in mapping:
            raise InputError(f"substitution does not assign variable {v}")
        img = mapping[v]
        if isinstance(img, str):
            img = target.parse(img)
        img = _coerce(img, target)
        images.append(img)
    powers = [{0: target.one()} for _ in images]
    out = target.zero()
    for m, c in p.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e:
                if e not in powers[i]:
                    powers[i][e] = images[i] ** e
                term = term * powers[i][e]
        out = out + term
    return out


def check_linear_map(mapping, source: PolyRing, target: PolyRing):
    """Every image must be a homogeneous degree-1 form (or zero)."""
    for v in source.variables:
        img = mapping.get(v)
        if img is None:
            raise InputError(f"substitution does not assign variable {v}")
        if isinstance(img, str):
            img = target.parse(img)
        if img.terms and (not img.is_homogeneous() or img.degree() != 1):
            raise InputError(f"image of {v} is not a homogeneous degree-1 form: {img}")


def substitute_ideal(mapping, I: Ideal, target: PolyRing) -> Ideal:
    check_linear_map(mapping, I.ring, target)
    return Ideal(target, [substitute(mapping, g, target) for g in I.generators])
