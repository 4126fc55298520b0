"""The ``hv`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 validation failure
(non-simple input), 3 resource cap exceeded, 4 internal invariant violation.
Arrangement arguments are JSON files or built-in fixtures written ``@fig2a``.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, fixtures
from .algebra.groebner import set_pair_cap
from .algebra.ideals import hilbert_series, ideal_quotient, minimal_generators
from .algebra.linalg import dims_by_degree
from .algebra.poly import F2, field_from_name, format_poly
from .arrangement import flip_coorientation, format_rational, load, serialize, translate, validate
from .circuits import enumerate_circuits, split_circuit
from .errors import ContractError, HypertoricError, InputError, ResourceError, ValidationError
from .regions import DEFAULT_SUBSET_CAP

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_RESOURCE, EXIT_BUG = 0, 1, 2, 3, 4
RING_CHOICES = ("td", "h", "tds1", "s1", "os2", "z2os", "lawrence")
SURROGATE_NOTE = "coefficients are a field ({field}); integral statements are checked through Q and F2 surrogates"
EXAMPLE_FIRST_NOTE = (
    "this map is printed with codomain H_b in its source; it is checked against FIG2C, "
    "the arrangement whose ring it actually lands in"
)


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


# ---------------------------------------------------------------------------
# helpers


def load_arrangement(spec):
    if spec.startswith("@"):
        try:
            return fixtures.get(spec[1:])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    try:
        return load(spec)
    except FileNotFoundError:
        raise InputError(f"file not found: {spec}") from None
    except IsADirectoryError:
        raise InputError(f"not a file: {spec}") from None


def rat(q):
    return format_rational(Fraction(q))


def ratlist(v):
    return [rat(x) for x in v]


def point_text(p):
    return "(" + ",".join(rat(x) for x in p) + ")"


def set_text(s):
    return "{" + ",".join(str(i) for i in s) + "}"


def face_json(face):
    return {
        "tight": list(face.tight),
        "positive": list(face.positive),
        "dimension": face.dimension,
        "witness": ratlist(face.witness),
    }


def _field(args, which, default_f2=False):
    from .rings import CLI_NAMES, DEFAULT_FIELD

    if args.field:
        return field_from_name(args.field)
    if default_f2:
        return F2
    return DEFAULT_FIELD[CLI_NAMES[which]]


def _presentation(arr, which, field):
    from .rings import present

    return present(arr, which, field)


class Output:
    """Collects human lines, the JSON result and notes for one run."""

    def __init__(self, verb, inputs):
        self.verb = verb
        self.inputs = inputs
        self.lines = []
        self.result = {}
        self.notes = []

    def line(self, text=""):
        self.lines.append(text)

    def note(self, text):
        if text not in self.notes:
            self.notes.append(text)

    def report(self):
        return {
            "tool": "hv",
            "version": __version__,
            "verb": self.verb,
            "inputs": list(self.inputs),
            "result": self.result,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# verbs


def cmd_validate(args, out):
    arr = load_arrangement(args.file)
    rep = validate(arr)
    out.line(rep.summary())
    for labels, reason in rep.witnesses:
        out.line(f"  witness {set_text(labels)}: {reason}")
    out.result = {
        "simple": rep.is_simple,
        "smooth": rep.is_smooth,
        "summary": rep.summary(),
        "witnesses": [{"labels": list(l), "reason": r} for l, r in rep.witnesses],
    }
    return EXIT_OK if rep.is_simple else EXIT_INVALID


def cmd_circuits(args, out):
    arr = load_arrangement(args.file)
    circuits = enumerate_circuits(arr)
    items = []
    out.line(f"circuits: {len(circuits)}")
    for c in circuits:
        item = {"support": list(c.support), "dependence": [int(x) for x in c.dependence], "offset_sum": rat(c.offset_sum)}
        text = f"{set_text(c.support)} lambda=({','.join(str(int(x)) for x in c.dependence)}) offset_sum={rat(c.offset_sum)}"
        if args.split:
            sc = split_circuit(arr, c)
            rel = "*".join(f"u{i}" if i in sc.S1 else f"(x-u{i})" for i in c.support)
            item.update({"S1": list(sc.S1), "S2": list(sc.S2), "relation": rel})
            text += f" S1={set_text(sc.S1)} S2={set_text(sc.S2)} relation {rel}"
        items.append(item)
        out.line(text)
    out.result = {"count": len(circuits), "circuits": items}
    return EXIT_OK


def cmd_regions(args, out):
    from .regions import enumerate_regions, vertices

    arr = load_arrangement(args.file)
    regs = enumerate_regions(arr, args.cap)
    feas = [r for r in regs if r.feasible]
    bounded = [r for r in feas if r.bounded]
    shown = bounded if args.bounded else feas
    out.line(f"feasible: {len(feas)}, bounded: {len(bounded)}")
    for r in shown:
        tag = "bounded" if r.bounded else "unbounded"
        out.line(f"  A={set_text(r.A)} {tag} witness={point_text(r.witness)}")
    out.result = {
        "feasible": len(feas),
        "bounded": len(bounded),
        "regions": [{"A": list(r.A), "bounded": r.bounded, "witness": ratlist(r.witness)} for r in shown],
    }
    if args.vertices:
        vs = vertices(arr)
        out.line(f"vertices: {len(vs)}")
        for v in vs:
            out.line(f"  {point_text(v.point)} on {set_text(v.incident)}")
        out.result["vertices"] = [{"point": ratlist(v.point), "incident": list(v.incident)} for v in vs]
    return EXIT_OK


def cmd_core(args, out):
    from .coreflow import core_components, essential, vertex_flow
    from .regions import vertices

    arr = load_arrangement(args.file)
    smooth = validate(arr).is_smooth
    cores, comps = core_components(arr, args.cap)
    targets = [c.component for c in cores]
    injective = len(set(targets)) == len(targets)
    bijective = injective and len(set(targets)) == comps.count
    if not essential(arr):
        out.note("the normals do not span; there is no hypertoric variety and the bijection is not asserted")
    elif smooth and not bijective:
        raise ContractError("smooth arrangement but bounded regions do not biject onto fixed components")
    out.line(f"bounded regions: {len(cores)}, fixed components: {comps.count}, core components: {len(set(targets))}")
    out.line(f"injective: {'yes' if injective else 'no'}, bijective: {'yes' if bijective else 'no'}, smooth: {'yes' if smooth else 'no'}")
    for c in cores:
        out.line(
            f"  A={set_text(c.A)} eta=({','.join(map(str, c.eta))}) minimized on face tight={set_text(c.face.tight)} "
            f"dim={c.face.dimension} at {point_text(c.face.witness)} -> component {c.component}"
        )
    flows = []
    for v in vertices(arr):
        vf = vertex_flow(arr, v)
        lines = []
        for L in vf.lines:
            lines.append(
                {
                    "label": L.label,
                    "b": list(L.b),
                    "pairing": L.pairing,
                    "R_test": rat(L.R.test_value),
                    "R_unstable": L.R.unstable,
                    "Q_test": rat(L.Q.test_value),
                    "Q_unstable": L.Q.unstable,
                }
            )
            out.line(
                f"  vertex {point_text(v.point)} line {L.label}: b=({','.join(map(str, L.b))}) <a,b>={L.pairing} "
                f"R {'unstable' if L.R.unstable else 'stable'} ({rat(L.R.test_value)}), "
                f"Q {'unstable' if L.Q.unstable else 'stable'} ({rat(L.Q.test_value)})"
            )
        flows.append({"point": ratlist(v.point), "incident": list(v.incident), "lines": lines})
    if not all(comps.compact):
        out.note("noncompact fixed components (including a noncompact Phi-minimum X) are not counted")
    out.result = {
        "bounded": len(cores),
        "fixed": comps.count,
        "core": len(set(targets)),
        "injective": injective,
        "bijective": bijective,
        "smooth": smooth,
        "minimum_compact": comps.minimum_compact,
        "components": [
            {"A": list(c.A), "eta": list(c.eta), "face": face_json(c.face), "component": c.component} for c in cores
        ],
        "vertices": flows,
    }
    return EXIT_OK


def cmd_fixed(args, out):
    from .coreflow import fixed_components, fixed_faces
    from .regions import face_complex

    arr = load_arrangement(args.file)
    fc = face_complex(arr, args.cap)
    comps = fixed_components(arr, fc)
    ffs = fixed_faces(arr, fc)
    out.line(f"fixed components: {comps.count}")
    for k, comp in enumerate(comps.components):
        tags = []
        if k == comps.minimum:
            tags.append("Phi-minimum X")
        if not comps.compact[k]:
            tags.append("noncompact, not counted")
        tag = f" ({', '.join(tags)})" if tags else ""
        out.line(f"  component {k}{tag}: {len(comp)} faces, top dimension {comp[0].dimension}")
        for f in comp:
            out.line(f"    face tight={set_text(f.tight)} dim={f.dimension} at {point_text(f.witness)}")
    out.result = {
        "count": comps.count,
        "minimum": comps.minimum,
        "minimum_compact": comps.minimum_compact,
        "components": [
            {"index": k, "compact": comps.compact[k], "faces": [face_json(f) for f in comp]} for k, comp in enumerate(comps.components)
        ],
        "fixed_faces": [{"A": list(f.A), "B": list(f.B), "eta": list(f.eta)} for f in ffs],
    }
    return EXIT_OK


def cmd_ring(args, out):
    arr = load_arrangement(args.file)
    pres = _presentation(arr, args.which, _field(args, args.which))
    for n in pres.notes:
        out.note(n)
    if pres.field is F2 and any(r.factored for r in pres.relations if "(x+" in r.factored):
        out.note("over F2, x - u_j is written x+u_j")
    fmt = "json" if args.json else args.format
    out.result = pres.to_json()
    if fmt == "cas":
        out.lines = pres.cas().rstrip("\n").split("\n")
    else:
        out.lines = pres.native().rstrip("\n").split("\n")
        if fmt == "json":
            args.json = True
    return EXIT_OK


def cmd_hilbert(args, out):
    arr = load_arrangement(args.file)
    pres = _presentation(arr, args.which, _field(args, args.which))
    for n in pres.notes:
        out.note(n)
    h = hilbert_series(pres.ideal, args.maxdeg)
    dense = dims_by_degree(pres.ideal, args.maxdeg)
    agree = list(h.coefficients) == dense
    if not agree:
        raise ContractError(f"Hilbert series {h.coefficients} disagrees with dense ranks {dense}")
    out.line(f"ring {pres.name} field {'F2' if pres.field is F2 else 'Q'}")
    out.line(f"series: {h.as_text()}")
    out.line(f"dims: {' '.join(map(str, h.coefficients))}")
    total = h.total_dimension()
    out.line(f"total: {total if total is not None else 'infinite'}")
    out.line("dense rank check: agree")
    out.result = {
        "ring": pres.name,
        "field": "F2" if pres.field is F2 else "Q",
        "numerator": list(h.numerator),
        "exponent": h.exponent,
        "series": h.as_text(),
        "dims": list(h.coefficients),
        "dense_dims": dense,
        "agree": agree,
        "total": total,
    }
    return EXIT_OK


def cmd_ann(args, out):
    arr = load_arrangement(args.file)
    pres = _presentation(arr, args.which, _field(args, args.which))
    for n in pres.notes:
        out.note(n)
    element = pres.ring.parse(args.element)
    if not element.terms:
        raise InputError("annihilator of zero is the whole ring")
    J = ideal_quotient(pres.ideal, element)
    mg = minimal_generators(J, pres.ideal)
    degrees = sorted(mg.degrees)
    profile = "{" + ",".join(map(str, degrees)) + "}"
    out.line(f"annihilator of {format_poly(element)} in {pres.name}: {len(J.groebner())} basis elements")
    for g in J.groebner():
        out.line(f"  {format_poly(g)}")
    out.line(f"minimal generators over the ideal: {profile}")
    for g in mg.generators:
        out.line(f"  {format_poly(g)}")
    out.note(SURROGATE_NOTE.format(field="F2" if pres.field is F2 else "Q"))
    out.result = {
        "ring": pres.name,
        "field": "F2" if pres.field is F2 else "Q",
        "element": format_poly(element),
        "annihilator": [format_poly(g) for g in J.groebner()],
        "minimal_generators": [format_poly(g) for g in mg.generators],
        "degrees": degrees,
        "profile": profile,
    }
    return EXIT_OK


def cmd_scan(args, out):
    from .rings import scan_annihilators

    arr = load_arrangement(args.file)
    field = _field(args, args.which, default_f2=True)
    if field is not F2:
        raise InputError("scan-ann enumerates classes exhaustively and runs over F2 only")
    pres = _presentation(arr, args.which, field)
    for n in pres.notes:
        out.note(n)
    rows = scan_annihilators(pres)
    counts = {}
    for _, _, prof in rows:
        counts[prof] = counts.get(prof, 0) + 1
    out.line(f"{pres.name} over F2: {len(rows)} nonzero degree-1 classes")
    for mask, text, prof in rows:
        out.line(f"  {text}: {{{','.join(map(str, prof))}}}")
    out.line("profile counts:")
    ordered = sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0]))
    for prof, c in ordered:
        out.line(f"  {{{','.join(map(str, prof))}}}: {c}")
    out.note(SURROGATE_NOTE.format(field="F2"))
    out.result = {
        "ring": pres.name,
        "field": "F2",
        "classes": [{"mask": m, "class": t, "profile": list(p)} for m, t, p in rows],
        "counts": [{"profile": list(p), "count": c} for p, c in ordered],
    }
    return EXIT_OK


def cmd_iso(args, out):
    from .rings import check_substitution_iso, parse_map

    a, b = load_arrangement(args.fileA), load_arrangement(args.fileB)
    field = _field(args, args.which)
    pa, pb = _presentation(a, args.which, field), _presentation(b, args.which, field)
    mapping = parse_map(args.map, pb.ring)
    check = check_substitution_iso(pa, pb, mapping, args.maxdeg)
    if args.which == "z2os" and (a.name, b.name) == ("FIG2A", "FIG2C"):
        out.note(EXAMPLE_FIRST_NOTE)
    out.line(check.reason())
    out.result = {
        "verified": check.ok,
        "invertible": check.invertible,
        "contained": check.contained,
        "same_hilbert": check.same_hilbert,
        "fixes_x": check.fixes_x,
        "message": check.reason(),
    }
    return EXIT_OK


def cmd_distinguish(args, out):
    from .rings import distinguish

    a, b = load_arrangement(args.fileA), load_arrangement(args.fileB)
    field = _field(args, args.which, default_f2=True)
    pa, pb = _presentation(a, args.which, field), _presentation(b, args.which, field)
    for n in pa.notes + pb.notes:
        out.note(n)
    verdict = distinguish(pa, pb, args.maxdeg)
    out.line(str(verdict))
    if field is F2:
        out.note(SURROGATE_NOTE.format(field="F2"))
    out.result = {
        "verdict": "DISTINGUISHED" if verdict.distinguished else "EQUAL_FINGERPRINT",
        "witness": verdict.witness,
        "invariant": verdict.invariant,
        "message": str(verdict),
    }
    return EXIT_OK


def _write_arrangement(arr, args, out):
    text = serialize(arr)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.line(f"wrote {args.output}")
    else:
        out.lines = text.rstrip("\n").split("\n")
    out.result = {"arrangement": json.loads(text), "output": args.output}
    return EXIT_OK


def cmd_flip(args, out):
    arr = load_arrangement(args.file)
    return _write_arrangement(flip_coorientation(arr, args.index), args, out)


def cmd_translate(args, out):
    arr = load_arrangement(args.file)
    try:
        c = [Fraction(x.strip()) for x in args.by.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad translation vector {args.by!r}; expected comma-separated rationals") from None
    return _write_arrangement(translate(arr, c), args, out)


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = _Parser(prog="hv", description="Exact combinatorics and cohomology rings of hypertoric varieties.")
    p.add_argument("--version", action="version", version=f"hv {__version__}")
    p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    p.add_argument("--pair-cap", type=int, default=None, help="critical-pair budget for Groebner bases")
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)

    def verb(name, func, help_text, files=("file",)):
        sp = sub.add_parser(name, help=help_text)
        for f in files:
            sp.add_argument(f, help="arrangement JSON file or @fixture")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report on stdout")
        sp.set_defaults(func=func)
        return sp

    def ring_opts(sp, required=True):
        sp.add_argument("--which", choices=RING_CHOICES, required=required)
        sp.add_argument("--field", choices=("q", "f2", "Q", "F2"))

    verb("validate", cmd_validate, "check simplicity and smoothness")
    sp = verb("circuits", cmd_circuits, "list circuits")
    sp.add_argument("--split", action="store_true", help="include the coorientation splitting")
    sp = verb("regions", cmd_regions, "enumerate regions")
    sp.add_argument("--bounded", action="store_true", help="list bounded regions only")
    sp.add_argument("--vertices", action="store_true", help="also list vertices")
    sp.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP, help="maximum n for subset enumeration")
    for name, func, text in (("core", cmd_core, "core components and vertex flow"), ("fixed", cmd_fixed, "circle-fixed components")):
        sp = verb(name, func, text)
        sp.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP, help="maximum n for subset enumeration")
    sp = verb("ring", cmd_ring, "print a ring presentation")
    ring_opts(sp)
    sp.add_argument("--format", choices=("native", "cas", "json"), default="native")
    sp = verb("hilbert", cmd_hilbert, "Hilbert series of a presentation")
    ring_opts(sp)
    sp.add_argument("--maxdeg", type=int, default=8)
    sp = verb("ann", cmd_ann, "annihilator of an element")
    ring_opts(sp)
    sp.add_argument("--element", required=True)
    sp = verb("scan-ann", cmd_scan, "annihilator profiles of all degree-1 classes (F2)")
    ring_opts(sp)
    sp = verb("iso", cmd_iso, "verify a substitution isomorphism", files=("fileA", "fileB"))
    ring_opts(sp)
    sp.add_argument("--map", required=True, help='e.g. "u1->u1+u2,u2->x+u2"; unlisted variables are fixed')
    sp.add_argument("--maxdeg", type=int, default=8)
    sp = verb("distinguish", cmd_distinguish, "compare invariant fingerprints", files=("fileA", "fileB"))
    ring_opts(sp)
    sp.add_argument("--maxdeg", type=int, default=8)
    sp = verb("flip", cmd_flip, "flip the coorientation of one hyperplane")
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp = verb("translate", cmd_translate, "translate the arrangement")
    sp.add_argument("--by", required=True, help="comma-separated rationals")
    sp.add_argument("-o", "--output")
    return p


def _validate_report(report):
    try:
        import jsonschema
    except ImportError:  # pragma: no cover - declared dependency
        return
    jsonschema.validate(report, load_schema())


def load_schema():
    from importlib.resources import files

    return json.loads(files("hypertoric").joinpath("schemas/report.json").read_text(encoding="utf-8"))


def _join_vector_flags(argv):
    """Glue ``--by -5,7`` into ``--by=-5,7`` so argparse does not read a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--by":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--by={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_vector_flags(sys.argv[1:] if argv is None else list(argv)))
        if not args.verb:
            raise UsageError(parser.format_usage().strip())
        set_pair_cap(args.pair_cap)
        inputs = [getattr(args, k) for k in ("file", "fileA", "fileB") if getattr(args, k, None)]
        out = Output(args.verb, inputs)
        code = args.func(args, out)
        if args.json:
            report = out.report()
            _validate_report(report)
            stdout.write(json.dumps(report, indent=2) + "\n")
        else:
            for ln in out.lines:
                stdout.write(ln + "\n")
        for n in out.notes:
            stderr.write(f"note: {n}\n")
        return code
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        stderr.write(f"error: {exc}\n")
        for labels, reason in getattr(exc, "witnesses", ()):
            stderr.write(f"  witness {set_text(labels)}: {reason}\n")
        return EXIT_INVALID
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (ContractError, HypertoricError) as exc:
        stderr.write(f"internal error: {exc}\n")
        return EXIT_BUG
    except Exception as exc:  # noqa: BLE001 - any other failure is a bug
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_BUG


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
