"""Presentations of the cohomology rings attached to an arrangement.

Each builder returns a ``Presentation``: variables, field and a sorted list of
homogeneous relations. Every variable has algebraic degree 1 (cohomological
degree 2). The invariants at the bottom of the module (fingerprints,
substitution isomorphisms, Lawrence specialization) are what the examples
are checked with.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .algebra.groebner import normal_form
from .algebra.ideals import (
    Ideal,
    hilbert_series,
    ideal_contains,
    ideal_equal,
    ideal_quotient,
    minimal_generator_degrees,
    substitute_ideal,
)
from .algebra.linalg import row_rank
from .algebra.poly import F2, QQ, MonomialOrder, Poly, PolyRing, field_from_name, format_poly
from .arrangement import kernel_linear_forms, validate
from .circuits import split_all
from .errors import ContractError, InputError, ValidationError

NAMES = ("TD", "ORDINARY", "TDS1", "S1", "OS2", "Z2OS", "LAWRENCE")
CLI_NAMES = {
    "td": "TD",
    "h": "ORDINARY",
    "ordinary": "ORDINARY",
    "tds1": "TDS1",
    "s1": "S1",
    "os2": "OS2",
    "z2os": "Z2OS",
    "lawrence": "LAWRENCE",
}
F2_ONLY = ("OS2", "Z2OS")
DEFAULT_FIELD = {"TD": QQ, "ORDINARY": QQ, "TDS1": QQ, "S1": QQ, "LAWRENCE": QQ, "OS2": F2, "Z2OS": F2}

NONSMOOTH_NOTE = "theorem hypotheses not met (arrangement is not smooth); Q-coefficients advised"


@dataclass(frozen=True)
class Relation:
    poly: Poly
    factored: str
    support: tuple  # hyperplane labels (or variable indices for linear forms)


@dataclass(frozen=True)
class Presentation:
    name: str
    field: object
    ring: PolyRing
    relations: tuple  # of Relation
    notes: tuple = ()
    source: str = ""

    @property
    def variables(self):
        return self.ring.variables

    @property
    def polys(self):
        return tuple(r.poly for r in self.relations)

    @property
    def ideal(self) -> Ideal:
        cache = self.__dict__.get("_ideal")
        if cache is None:
            cache = Ideal(self.ring, self.polys)
            object.__setattr__(self, "_ideal", cache)
        return cache

    def native(self) -> str:
        lines = [f"ring {self.name} field {_field_tag(self.field)} vars {','.join(self.variables)}"]
        for r in self.relations:
            text = format_poly(r.poly)
            lines.append(text if r.factored == text else f"{text}  # {r.factored}")
        return "\n".join(lines) + "\n"

    def cas(self) -> str:
        base = "QQ" if self.field is QQ else "ZZ/2"
        gens = ",\n    ".join(format_poly(r.poly) for r in self.relations)
        out = [f"-- {self.name} presentation of {self.source or 'arrangement'}"]
        out.append(f"R = {base}[{','.join(self.variables)}];")
        out.append(f"I = ideal({gens});" if gens else "I = ideal(0_R);")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": _field_tag(self.field),
            "variables": list(self.variables),
            "relations": [format_poly(r.poly) for r in self.relations],
            "factored": [r.factored for r in self.relations],
            "notes": list(self.notes),
        }


def _field_tag(field):
    return "Q" if field is QQ else "F2"


def parse_native(text: str) -> Presentation:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty presentation")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "ring" or head[2] != "field" or head[4] != "vars":
        raise InputError(f"bad presentation header: {lines[0]!r}")
    name, field, variables = head[1], field_from_name(head[3]), tuple(head[5].split(","))
    ring = PolyRing(variables, field)
    rels = tuple(Relation(ring.parse(ln), ln, ()) for ln in lines[1:])
    return Presentation(name, field, ring, rels)


# ---------------------------------------------------------------------------
# builders


def _check_field(name, field):
    field = DEFAULT_FIELD[name] if field is None else field
    if isinstance(field, str):
        field = field_from_name(field)
    if name in F2_ONLY and field is not F2:
        raise InputError(f"{name} is defined over F2 only")
    return field


def _prepare(arr):
    report = validate(arr)
    if not report.is_simple:
        raise ValidationError("arrangement is not simple", report.witnesses)
    notes = () if report.is_smooth else (NONSMOOTH_NOTE,)
    return split_all(arr), notes


def _u_names(n, letter="u"):
    return tuple(f"{letter}{i}" for i in range(1, n + 1))


def _make_ring(variables, field):
    return PolyRing(variables, field, MonomialOrder(len(variables)))


def _product(ring, factors):
    out = ring.one()
    for f in factors:
        out = out * f
    return out


def _finish(name, field, ring, rels, notes, arr):
    key = ring.order.key
    rels = sorted(rels, key=lambda r: (r.poly.degree(), r.support, tuple(-x for x in key(r.poly.lm))))
    return Presentation(name, field, ring, tuple(rels), notes, arr.name or "")


def _x_minus(ring, j, field):
    sign = "+" if field is F2 else "-"
    return ring.gen("x") - ring.gen(f"u{j}"), f"(x{sign}u{j})"


def _split_relation(ring, sc, field, with_x=True):
    factors, texts = [], []
    for i in sorted(sc.S1 + sc.S2):
        if i in sc.S1 or not with_x:
            factors.append(ring.gen(f"u{i}"))
            texts.append(f"u{i}")
        else:
            f, t = _x_minus(ring, i, field)
            factors.append(f)
            texts.append(t)
    return Relation(_product(ring, factors), "*".join(texts), sc.circuit.support)


def _linear_relations(arr, ring):
    rels = []
    for row in kernel_linear_forms(arr):
        coeffs = {f"u{i}": c for i, c in zip(arr.labels, row) if c}
        p = ring.zero()
        for v, c in coeffs.items():
            p = p + ring.gen(v) * c
        if p.terms:
            support = tuple(sorted(i for i, c in zip(arr.labels, row) if c))
            rels.append(Relation(p, linear_text(coeffs.items()), support))
    return rels


def linear_text(pairs):
    """``u1 + u2 - u3`` from (variable, coefficient) pairs in the given order."""
    out = ""
    for v, c in pairs:
        c = Fraction(c)
        mag = abs(c)
        body = v if mag == 1 else f"{mag}*{v}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def class_text(form):
    """A linear form written in variable order."""
    ring = form.ring
    pairs = []
    for k, v in enumerate(ring.variables):
        c = form.coefficient(tuple(int(j == k) for j in range(ring.nvars)))
        if c:
            pairs.append((v, c))
    return linear_text(pairs)


def present_td(arr, field=None) -> Presentation:
    field = _check_field("TD", field)
    splits, notes = _prepare(arr)
    ring = _make_ring(_u_names(arr.n), field)
    rels = [_split_relation(ring, sc, field, with_x=False) for sc in splits]
    return _finish("TD", field, ring, rels, notes, arr)


def present_ordinary(arr, field=None) -> Presentation:
    field = _check_field("ORDINARY", field)
    td = present_td(arr, field)
    rels = list(td.relations) + _linear_relations(arr, td.ring)
    return _finish("ORDINARY", field, td.ring, rels, td.notes, arr)


def present_tds1(arr, field=None) -> Presentation:
    field = _check_field("TDS1", field)
    splits, notes = _prepare(arr)
    ring = _make_ring(_u_names(arr.n) + ("x",), field)
    rels = [_split_relation(ring, sc, field) for sc in splits]
    return _finish("TDS1", field, ring, rels, notes, arr)


def present_s1(arr, field=None) -> Presentation:
    field = _check_field("S1", field)
    t = present_tds1(arr, field)
    rels = list(t.relations) + _linear_relations(arr, t.ring)
    return _finish("S1", field, t.ring, rels, t.notes, arr)


def present_os2(arr, field=None) -> Presentation:
    field = _check_field("OS2", field)
    splits, notes = _prepare(arr)
    ring = _make_ring(_u_names(arr.n, "e"), field)
    rels = []
    for sc in splits:
        labels = sc.circuit.support
        p = _product(ring, [ring.gen(f"e{i}") for i in labels])
        rels.append(Relation(p, "*".join(f"e{i}" for i in labels), labels))
    for i in arr.labels:
        rels.append(Relation(ring.gen(f"e{i}") ** 2, f"e{i}^2", (i,)))
    return _finish("OS2", field, ring, rels, notes, arr)


def present_z2os(arr, field=None) -> Presentation:
    field = _check_field("Z2OS", field)
    t = present_tds1(arr, field)
    ring = t.ring
    rels = list(t.relations)
    for i in arr.labels:
        u = ring.gen(f"u{i}")
        rels.append(Relation(u * (ring.gen("x") - u), f"u{i}*(x+u{i})", (i,)))
    return _finish("Z2OS", field, ring, rels, t.notes, arr)


def present_lawrence(arr, field=None) -> Presentation:
    field = _check_field("LAWRENCE", field)
    splits, notes = _prepare(arr)
    ring = _make_ring(_u_names(arr.n) + _u_names(arr.n, "v"), field)
    rels = []
    for sc in splits:
        names = [f"u{i}" if i in sc.S1 else f"v{i}" for i in sorted(sc.circuit.support)]
        rels.append(Relation(_product(ring, [ring.gen(v) for v in names]), "*".join(names), sc.circuit.support))
    return _finish("LAWRENCE", field, ring, rels, notes, arr)


BUILDERS = {
    "TD": present_td,
    "ORDINARY": present_ordinary,
    "TDS1": present_tds1,
    "S1": present_s1,
    "OS2": present_os2,
    "Z2OS": present_z2os,
    "LAWRENCE": present_lawrence,
}


def present(arr, which, field=None) -> Presentation:
    name = CLI_NAMES.get(str(which).lower(), str(which).upper())
    if name not in BUILDERS:
        raise InputError(f"unknown ring {which!r}; choose from {', '.join(CLI_NAMES)}")
    return BUILDERS[name](arr, field)


# ---------------------------------------------------------------------------
# Lawrence specialization


def lawrence_specialize(arr) -> bool:
    """Whether imposing u_i + v_i = x on the Lawrence ideal and eliminating the
    v's gives back the tds1 ideal over Q."""
    law = present_lawrence(arr, QQ)
    tds1 = present_tds1(arr, QQ)
    n = arr.n
    us, vs = _u_names(n), _u_names(n, "v")
    variables = vs + us + ("x",)
    order = MonomialOrder(len(variables), [tuple(range(n)), tuple(range(n, 2 * n + 1))])
    big = PolyRing(variables, QQ, order)

    def lift(p):
        return big.parse(format_poly(p)) if p.terms else big.zero()

    gens = [lift(r.poly) for r in law.relations]
    last = big.gen(us[-1]) + big.gen(vs[-1])
    for i in range(n - 1):
        gens.append(big.gen(us[i]) + big.gen(vs[i]) - last)
    gens.append(big.gen("x") - last)
    # the kept variables are the trailing block; reorder so they come first
    keep = PolyRing(us + ("x",), QQ)
    elim = _eliminate_leading(gens, big, n, keep)
    return ideal_equal(Ideal(keep, elim), Ideal(keep, [tds1.ring.parse(format_poly(p)) for p in tds1.polys]))


def _eliminate_leading(gens, big, k, keep):
    """Elimination of the first k variables of ``big`` (which form the first block)."""
    from .algebra.groebner import buchberger

    out = []
    for g in buchberger(gens, big):
        if all(not any(m[:k]) for m in g.terms):
            out.append(Poly._raw(keep, {m[k:]: c for m, c in g.terms.items()}))
    return out


# ---------------------------------------------------------------------------
# fingerprints


def degree_one_classes(pres: Presentation):
    """Nonzero degree-1 classes of the quotient over F2: (mask, form, profile key).

    Forms are enumerated by coefficient bitmask (bit k = variable k); classes
    equal modulo the ideal are merged and keep their smallest mask.
    """
    if pres.field is not F2:
        raise InputError("exhaustive class scans are defined over F2 only")
    ring = pres.ring
    gb = pres.ideal.groebner()
    seen = {}
    out = []
    for mask in range(1, 1 << ring.nvars):
        form = ring.linear_form([(mask >> k) & 1 for k in range(ring.nvars)])
        nf = normal_form(form, gb)
        if not nf.terms:
            continue
        key = tuple(sorted(nf.terms))
        if key in seen:
            continue
        seen[key] = mask
        out.append((mask, form))
    return out


def annihilator_profile(pres: Presentation, element) -> tuple:
    """Degrees of minimal generators of (I : element) over I."""
    if isinstance(element, str):
        element = pres.ring.parse(element)
    I = pres.ideal
    return tuple(sorted(minimal_generator_degrees(ideal_quotient(I, element), I)))


def annihilator(pres: Presentation, element):
    """(I : element) and its minimal generators over I."""
    from .algebra.ideals import minimal_generators

    if isinstance(element, str):
        element = pres.ring.parse(element)
    I = pres.ideal
    J = ideal_quotient(I, element)
    return J, minimal_generators(J, I)


def _profile_task(args):
    pres, mask = args
    form = pres.ring.linear_form([(mask >> k) & 1 for k in range(pres.ring.nvars)])
    return annihilator_profile(pres, form)


def threads_from_env():
    raw = os.environ.get("HV_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"HV_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"HV_THREADS must be a positive integer, got {raw!r}")
    return value


def scan_annihilators(pres: Presentation, threads=None):
    """Annihilator profile of every nonzero degree-1 class (F2 only), by mask."""
    classes = degree_one_classes(pres)
    threads = threads_from_env() if threads is None else threads
    tasks = [(pres, mask) for mask, _ in classes]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            profiles = list(pool.map(_profile_task, tasks))
    else:
        profiles = [_profile_task(t) for t in tasks]
    return [(mask, class_text(form), prof) for (mask, form), prof in zip(classes, profiles)]


def x_regular(pres: Presentation):
    """Whether x is a nonzerodivisor, i.e. (I : x) = I; None without x."""
    if "x" not in pres.ring.variables:
        return None
    I = pres.ideal
    return ideal_equal(ideal_quotient(I, pres.ring.gen("x")), I)


@dataclass(frozen=True)
class Fingerprint:
    hilbert: tuple
    x_regular: object  # True/False, None when the ring has no x
    profiles: tuple = ()  # (mask, class text, profile) per class; F2 only
    scanned: bool = False

    def profile_counts(self):
        counts = {}
        for _, _, prof in self.profiles:
            counts[prof] = counts.get(prof, 0) + 1
        return counts


def fingerprint(pres: Presentation, maxdeg=8, threads=None) -> Fingerprint:
    hil = hilbert_series(pres.ideal, maxdeg).coefficients
    reg = x_regular(pres)
    if pres.field is F2:
        return Fingerprint(hil, reg, tuple(scan_annihilators(pres, threads)), True)
    return Fingerprint(hil, reg)


def profile_text(profile):
    return "{" + ",".join(str(d) for d in profile) + "}"


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    witness: str
    invariant: str = ""

    def __str__(self):
        if self.distinguished:
            return f"DISTINGUISHED: {self.witness}"
        return "EQUAL_FINGERPRINT" + (f": {self.witness}" if self.witness else "")


def distinguish(presA: Presentation, presB: Presentation, maxdeg=8, threads=None) -> Verdict:
    if presA.field is not presB.field:
        raise InputError("cannot compare presentations over different fields")
    if presA.name != presB.name:
        raise InputError(f"cannot compare {presA.name} with {presB.name}")
    fa = fingerprint(presA, maxdeg, threads)
    fb = fingerprint(presB, maxdeg, threads)
    return compare_fingerprints(fa, fb)


def compare_fingerprints(fa: Fingerprint, fb: Fingerprint) -> Verdict:
    if fa.hilbert != fb.hilbert:
        k = next(k for k, (a, b) in enumerate(zip(fa.hilbert, fb.hilbert)) if a != b)
        return Verdict(True, f"Hilbert function differs in degree {k}: {fa.hilbert[k]} vs {fb.hilbert[k]}", "hilbert")
    ca, cb = fa.profile_counts(), fb.profile_counts()
    for prof in sorted(set(ca) | set(cb), key=lambda p: (len(p), p)):
        if (prof in ca) != (prof in cb):
            side, fp = ("A", fa) if prof in ca else ("B", fb)
            cls = next(text for _, text, p in fp.profiles if p == prof)
            return Verdict(
                True,
                f"annihilator profile {profile_text(prof)} at class {cls} present only in {side}",
                "annihilator",
            )
    for prof in sorted(set(ca) | set(cb), key=lambda p: (len(p), p)):
        if ca.get(prof, 0) != cb.get(prof, 0):
            return Verdict(
                True,
                f"annihilator profile {profile_text(prof)} occurs {ca.get(prof, 0)} times in A and {cb.get(prof, 0)} times in B",
                "annihilator",
            )
    if fa.x_regular != fb.x_regular:
        return Verdict(True, f"x is regular in {'A' if fa.x_regular else 'B'} only (invariant of F2[x]-algebras)", "x-regularity")
    note = "" if fa.scanned else "no exhaustive class scan over Q"
    return Verdict(False, note)


# ---------------------------------------------------------------------------
# substitution isomorphisms


def parse_map(text: str, ring: PolyRing):
    """Parse ``"u1->u1+u2,u2->x+u2"``; unassigned variables map to themselves."""
    mapping = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise InputError(f"bad map entry {part!r}; expected var->expression")
        lhs, rhs = (s.strip() for s in part.split("->", 1))
        if lhs not in ring.variables:
            raise InputError(f"unknown variable {lhs!r} in map")
        if lhs in mapping:
            raise InputError(f"variable {lhs!r} assigned twice")
        mapping[lhs] = ring.parse(rhs)
    for v in ring.variables:
        mapping.setdefault(v, ring.gen(v))
    return mapping


def flip_map(ring: PolyRing, l: int):
    """u_l -> x - u_l, other variables fixed."""
    mapping = {v: ring.gen(v) for v in ring.variables}
    mapping[f"u{l}"] = ring.gen("x") - ring.gen(f"u{l}")
    return mapping


@dataclass(frozen=True)
class IsoCheck:
    invertible: bool
    contained: bool
    same_hilbert: bool
    fixes_x: bool

    @property
    def ok(self):
        return self.invertible and self.contained and self.same_hilbert and self.fixes_x

    def __bool__(self):
        return self.ok

    def reason(self):
        if self.ok:
            return "ISOMORPHISM VERIFIED"
        failed = [
            name
            for name, good in (
                ("map does not fix x", self.fixes_x),
                ("degree-1 matrix is singular", self.invertible),
                ("image of the source ideal is not contained in the target ideal", self.contained),
                ("Hilbert series differ", self.same_hilbert),
            )
            if not good
        ]
        return "NOT VERIFIED: " + "; ".join(failed)


def check_substitution_iso(presA: Presentation, presB: Presentation, mapping, maxdeg=8) -> IsoCheck:
    if presA.ring.variables != presB.ring.variables or presA.field is not presB.field:
        raise InputError("isomorphism check needs the same variables and field")
    ring = presB.ring
    mapping = {v: (ring.parse(p) if isinstance(p, str) else p) for v, p in mapping.items()}
    fixes_x = "x" not in ring.variables or mapping.get("x") == ring.gen("x")
    image = substitute_ideal(mapping, presA.ideal, ring)
    matrix = [[mapping[v].coefficient(tuple(int(k == j) for k in range(ring.nvars))) for j in range(ring.nvars)] for v in ring.variables]
    invertible = row_rank(matrix, ring.field) == ring.nvars
    contained = ideal_contains(presB.ideal, image)
    same_hilbert = hilbert_series(presA.ideal, maxdeg) == hilbert_series(presB.ideal, maxdeg)
    return IsoCheck(invertible, contained, same_hilbert, fixes_x)


def verify_substitution_iso(presA: Presentation, presB: Presentation, mapping, require_fix_x=True) -> bool:
    check = check_substitution_iso(presA, presB, mapping)
    if require_fix_x and not check.fixes_x:
        raise ContractError("map must fix x for an F2[x]-algebra isomorphism")
    return check.ok


def set_x_zero(pres: Presentation, target: Presentation) -> Ideal:
    """Image of pres's ideal under x -> 0 with u_i renamed to target's variables."""
    ring = target.ring
    names = [v for v in pres.ring.variables if v != "x"]
    mapping = {v: ring.gen(t) for v, t in zip(names, ring.variables)}
    mapping["x"] = ring.zero()
    return substitute_ideal(mapping, pres.ideal, ring)

