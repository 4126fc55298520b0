"""Cooriented rational affine hyperplane arrangements.

Hyperplane ``i`` (labels are 1-based, matching the ring variables ``u_i``) is
``H_i = {x : <x, a_i> = r_i}`` with positive side ``F_i = {<x, a_i> >= r_i}``
and negative side ``G_i = {<x, a_i> <= r_i}``.
"""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import InputError, ParseError
from .exactmath import dot, is_unimodular, make_primitive, rank


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text, location=None) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"offset must be a string holding an integer or p/q, got {text!r}", location)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read rational {text!r}", location) from None


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal = tuple(int(a) for a in self.normal)
        if not any(normal):
            raise InputError("hyperplane normal must be nonzero")
        if make_primitive(normal) != normal:
            raise InputError(f"hyperplane normal {normal} is not primitive")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def normalized(cls, normal, offset):
        """Rescale ``<x, normal> = offset`` so the normal is primitive."""
        normal = [int(a) for a in normal]
        g = 0
        for a in normal:
            g = gcd(g, a)
        if g == 0:
            raise InputError("hyperplane normal must be nonzero")
        return cls(tuple(a // g for a in normal), Fraction(offset) / g)

    def value(self, point):
        """``<point, a> - r``: positive on the F side, negative on the G side."""
        return dot(self.normal, point) - self.offset

    def flipped(self):
        return Hyperplane(tuple(-a for a in self.normal), -self.offset)


@dataclass(frozen=True)
class Arrangement:
    dimension: int
    hyperplanes: tuple
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if self.dimension < 1:
            raise InputError("arrangement dimension must be at least 1")
        if not self.hyperplanes:
            raise InputError("arrangement needs at least one hyperplane")
        for i, h in enumerate(self.hyperplanes, 1):
            if len(h.normal) != self.dimension:
                raise InputError(f"hyperplane {i} has normal of length {len(h.normal)}, expected {self.dimension}")

    @classmethod
    def from_data(cls, normals, offsets, name=None):
        normals = [tuple(a) for a in normals]
        if len(normals) != len(offsets):
            raise InputError("normals and offsets differ in length")
        if not normals:
            raise InputError("arrangement needs at least one hyperplane")
        hs = [Hyperplane.normalized(a, r) for a, r in zip(normals, offsets)]
        return cls(len(normals[0]), tuple(hs), name)

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @property
    def labels(self):
        return range(1, self.n + 1)

    def normal(self, i):
        return self.hyperplanes[i - 1].normal

    def offset(self, i):
        return self.hyperplanes[i - 1].offset

    @property
    def normals(self):
        return [h.normal for h in self.hyperplanes]

    @property
    def offsets(self):
        return [h.offset for h in self.hyperplanes]

    @property
    def matrix(self):
        """The d x n matrix B whose columns are the normals."""
        return [tuple(h.normal[k] for h in self.hyperplanes) for k in range(self.dimension)]

    def renamed(self, name):
        return Arrangement(self.dimension, self.hyperplanes, name)


# ---------------------------------------------------------------------------
# file format


def parse(text: str) -> Arrangement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("dimension", "hyperplanes"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    unknown = set(data) - {"dimension", "name", "hyperplanes"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    d = data["dimension"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError("dimension must be a positive integer", "dimension")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string", "name")
    raw = data["hyperplanes"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("hyperplanes must be a nonempty list", "hyperplanes")
    hyperplanes = []
    for i, entry in enumerate(raw, 1):
        loc = f"hyperplanes[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"normal", "offset"}:
            raise ParseError("each hyperplane needs exactly 'normal' and 'offset'", loc)
        normal = entry["normal"]
        if not isinstance(normal, list) or any(isinstance(a, bool) or not isinstance(a, int) for a in normal):
            raise ParseError("normal must be an integer array", f"{loc}.normal")
        if len(normal) != d:
            raise ParseError(f"normal has length {len(normal)}, dimension is {d}", f"{loc}.normal")
        if not any(normal):
            raise ParseError("zero normal", f"{loc}.normal")
        offset = parse_rational(entry["offset"], f"{loc}.offset")
        hyperplanes.append(Hyperplane.normalized(normal, offset))
    return Arrangement(d, tuple(hyperplanes), name)


def serialize(arr: Arrangement) -> str:
    lines = ["{", f'  "dimension": {arr.dimension},']
    if arr.name is not None:
        lines.append(f'  "name": {json.dumps(arr.name)},')
    lines.append('  "hyperplanes": [')
    body = []
    for h in arr.hyperplanes:
        normal = ",".join(str(a) for a in h.normal)
        body.append(f'    {{"normal": [{normal}], "offset": "{format_rational(h.offset)}"}}')
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# transforms


def flip_coorientation(arr: Arrangement, l: int) -> Arrangement:
    if not 1 <= l <= arr.n:
        raise InputError(f"hyperplane index {l} out of range 1..{arr.n}")
    hs = list(arr.hyperplanes)
    hs[l - 1] = hs[l - 1].flipped()
    return Arrangement(arr.dimension, tuple(hs), arr.name)


def translate(arr: Arrangement, c) -> Arrangement:
    c = tuple(Fraction(x) for x in c)
    if len(c) != arr.dimension:
        raise InputError(f"translation vector has length {len(c)}, dimension is {arr.dimension}")
    hs = tuple(Hyperplane(h.normal, h.offset + dot(c, h.normal)) for h in arr.hyperplanes)
    return Arrangement(arr.dimension, hs, arr.name)


def kernel_linear_forms(arr: Arrangement):
    """The d forms ``sum_i (a_i)_k u_i``, one per row of B, as coefficient tuples."""
    return [tuple(row) for row in arr.matrix]


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    is_simple: bool
    is_smooth: bool
    witnesses: list  # (labels tuple, reason)

    def summary(self):
        yes = {True: "yes", False: "no"}
        return f"simple: {yes[self.is_simple]}, smooth: {yes[self.is_smooth]}"


def validate(arr: Arrangement) -> ValidationReport:
    from .circuits import matroid_circuits

    witnesses = []
    simple = True
    for c in matroid_circuits(arr):
        if c.offset_sum == 0:
            simple = False
            witnesses.append((c.support, "circuit with zero offset sum: hyperplanes meet in too high a dimension"))
    smooth = simple
    d = arr.dimension
    for subset in itertools.combinations(arr.labels, d):
        vecs = [arr.normal(i) for i in subset]
        if rank(vecs) == d and not is_unimodular(vecs):
            smooth = False
            witnesses.append((subset, "vertex normals do not form a Z-basis"))
    return ValidationReport(simple, smooth, witnesses)
