"""Sparse multivariate polynomials over Q or GF(2).

A polynomial is a dict from exponent tuples to nonzero coefficients. Exponent
tuples follow the ring's variable list, which is written from the smallest
variable to the largest (``u1 < u2 < ... < un < x``).
"""

import re
from fractions import Fraction
from math import comb

from ..errors import InputError


class Field:
    def __init__(self, name, characteristic):
        self.name = name
        self.characteristic = characteristic

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_field_by_name, (self.name,))

    def coerce(self, c):
        if self.characteristic == 2:
            if isinstance(c, Fraction):
                if c.denominator % 2 == 0:
                    raise InputError(f"{c} has no image in GF(2)")
                c = c.numerator
            return int(c) % 2
        return Fraction(c)

    def inv(self, c):
        if self.characteristic == 2:
            if c % 2 == 0:
                raise ZeroDivisionError("inverse of 0 in GF(2)")
            return 1
        return 1 / Fraction(c)

    def norm(self, c):
        return c % 2 if self.characteristic == 2 else c


QQ = Field("QQ", 0)
F2 = Field("F2", 2)


def _field_by_name(name):
    return {"QQ": QQ, "F2": F2}[name]


def field_from_name(name):
    key = str(name).strip().lower()
    if key in ("q", "qq", "rational", "rationals"):
        return QQ
    if key in ("f2", "gf2", "z2", "gf(2)"):
        return F2
    raise InputError(f"unknown field {name!r}; use q or f2")


class MonomialOrder:
    """Graded reverse lexicographic order, optionally by blocks.

    ``blocks`` lists index groups from most to least significant; within a
    block, grevlex with larger indices being larger variables. A single block
    with all indices is plain grevlex; putting variables in an earlier block
    makes the order eliminate them.
    """

    def __init__(self, nvars, blocks=None):
        self.nvars = nvars
        if blocks is None:
            blocks = [tuple(range(nvars))]
        self.blocks = tuple(tuple(b) for b in blocks)
        if sorted(i for b in self.blocks for i in b) != list(range(nvars)):
            raise ValueError("blocks must partition the variables")
        self._cache = {}

    def key(self, mono):
        k = self._cache.get(mono)
        if k is None:
            if len(self.blocks) == 1 and self.blocks[0] == tuple(range(self.nvars)):
                k = (sum(mono),) + tuple(-e for e in mono)
            else:
                k = ()
                for b in self.blocks:
                    k += (sum(mono[i] for i in b),) + tuple(-mono[i] for i in sorted(b))
            self._cache[mono] = k
        return k

    def descriptor(self):
        if len(self.blocks) == 1:
            return "grevlex"
        return "block-grevlex" + "".join(str(list(b)) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __reduce__(self):
        return (MonomialOrder, (self.nvars, self.blocks))


class PolyRing:
    def __init__(self, variables, field, order=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate variable names")
        self.field = field
        self.order = order or MonomialOrder(len(self.variables))
        self.index = {v: i for i, v in enumerate(self.variables)}

    @property
    def nvars(self):
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field is other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field.name, self.order))

    def __repr__(self):
        return f"{self.field}[{','.join(self.variables)}]"

    def __reduce__(self):
        return (PolyRing, (self.variables, self.field, self.order))

    def same_ambient(self, other):
        return self.variables == other.variables and self.field is other.field

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    # constructors
    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: self.field.coerce(1)})

    def const(self, c):
        return Poly(self, {(0,) * self.nvars: self.field.coerce(c)})

    def gen(self, name):
        try:
            i = self.index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r} in {self}") from None
        mono = tuple(int(j == i) for j in range(self.nvars))
        return Poly(self, {mono: self.field.coerce(1)})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def monomial(self, mono, coeff=1):
        return Poly(self, {tuple(mono): self.field.coerce(coeff)})

    def linear_form(self, coeffs):
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field.coerce(c)
            if c:
                terms[tuple(int(j == i) for j in range(self.nvars))] = c
        return Poly(self, terms)

    def from_terms(self, terms):
        out = {}
        for mono, c in terms:
            mono = tuple(mono)
            out[mono] = out.get(mono, 0) + self.field.coerce(c)
        return Poly(self, out)

    def parse(self, text):
        return parse_poly(self, text)

    def monomials_of_degree(self, k):
        return list(monomials_of_degree(self.nvars, k))

    def count_monomials(self, k):
        return comb(k + self.nvars - 1, self.nvars - 1) if self.nvars else int(k == 0)


def monomials_of_degree(nvars, k):
    if nvars == 0:
        if k == 0:
            yield ()
        return
    if nvars == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in monomials_of_degree(nvars - 1, k - first):
            yield (first,) + rest


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        norm = ring.field.norm
        self.terms = {m: norm(c) for m, c in terms.items() if norm(c)}
        self._lm = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._lm = None
        return p

    # structure
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def lm(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, k):
        return Poly._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == k})

    def support_variables(self):
        return tuple(i for i in range(self.ring.nvars) if any(m[i] for m in self.terms))

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), 0)

    def linear_coefficients(self):
        """Coefficient vector of a homogeneous degree-1 polynomial."""
        if any(sum(m) != 1 for m in self.terms):
            raise InputError(f"{self} is not a homogeneous linear form")
        out = [self.ring.field.coerce(0)] * self.ring.nvars
        for m, c in self.terms.items():
            out[m.index(1)] = c
        return out

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        if other.ring is not self.ring and other.ring != self.ring:
            raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: self.ring.field.norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field.coerce(other)
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._check(other)
        norm = self.ring.field.norm
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.ring, {m: c for m, c in out.items() if norm(c)})

    __rmul__ = __mul__

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def mul_term(self, mono, coeff):
        norm = self.ring.field.norm
        return Poly._raw(self.ring, {mono_mul(m, mono): norm(c * coeff) for m, c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc)
        return Poly._raw(self.ring, {m: self.ring.field.norm(c * inv) for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.same_ambient(other.ring) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # display
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def sort_key(self):
        key = self.ring.order.key
        return tuple((key(m), str(c)) for m, c in self.sorted_terms())


def format_monomial(ring, mono):
    parts = []
    for v, e in zip(ring.variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p):
    if not p.terms:
        return "0"
    out = ""
    for mono, c in p.sorted_terms():
        mtext = format_monomial(p.ring, mono)
        c = Fraction(c)
        neg = c < 0
        mag = -c if neg else c
        if mtext == "1":
            body = str(mag)
        elif mag == 1:
            body = mtext
        else:
            body = f"{mag}*{mtext}"
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def parse_poly(ring, text):
    """Parse sums of products with integer/rational coefficients, ``^`` powers
    and parentheses, e.g. ``u1+2*u2-x`` or ``(x-u2)^2*u3``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse {text!r} at position {pos}")
        tokens.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
    if not tokens:
        raise InputError("empty expression")
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else None

    def take():
        nonlocal k
        k += 1
        return tokens[k - 1]

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        result = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            result = result + t if op == "+" else result - t
        return result

    def term():
        result = power()
        while peek() == "*" or (peek() is not None and peek() not in ("+", "-", ")", "^", "*")):
            if peek() == "*":
                take()
            result = result * power()
        return result

    def power():
        base = atom()
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise InputError(f"bad exponent in {text!r}")
            base = base ** int(e)
        return base

    def atom():
        tok = take() if peek() is not None else None
        if tok is None:
            raise InputError(f"unexpected end of {text!r}")
        if tok == "(":
            inner = expr()
            if peek() != ")":
                raise InputError(f"unbalanced parentheses in {text!r}")
            take()
            return inner
        if tok[0].isdigit():
            return ring.const(Fraction(tok))
        if tok in ring.index:
            return ring.gen(tok)
        raise InputError(f"unknown symbol {tok!r} in {text!r}; ring variables are {', '.join(ring.variables)}")

    result = expr()
    if k != len(tokens):
        raise InputError(f"trailing input in {text!r}")
    return result
