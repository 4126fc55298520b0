"""Fixed points and flow data of the residual circle action.

Regions are indexed by F-sets throughout the package. On the piece over
Delta_A the circle moment map is, up to a constant, minus the pairing with
the weight of the G-sides of A, ``eta = sum of a_i over i not in A``; the
piece with no G-sides is the Phi-minimum X = intersection of all F_i. A face
of Delta_A is circle-fixed when eta lies in the span of the normals tight on
it. Each bounded region contributes the fixed face on which <x, eta> is
smallest.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import dot, eq, kernel_basis, lp_feasible, lp_optimize, make_primitive, rank
from .errors import ContractError, InputError
from .regions import (
    DEFAULT_SUBSET_CAP,
    bounded_index_set,
    face_complex,
    find_vertex,
    identify_face,
    region_constraints,
)


def potential(A, arr):
    """eta_A = sum of a_i over i in A."""
    out = [0] * arr.dimension
    for i in A:
        if i not in arr.labels:
            raise InputError(f"label {i} out of range 1..{arr.n}")
        out = [x + y for x, y in zip(out, arr.normal(i))]
    return tuple(out)


def g_set(arr, A):
    return tuple(i for i in arr.labels if i not in set(A))


def region_weight(arr, A):
    """Weight of the region with F-set A: the potential of its G-set."""
    return potential(g_set(arr, A), arr)


def in_span(v, vectors) -> bool:
    """Whether v lies in the Q-span of ``vectors`` (rank comparison)."""
    if not any(v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [v]) == rank(list(vectors))


@dataclass(frozen=True)
class FixedFace:
    A: tuple  # carrier region (F-set)
    B: tuple  # hyperplanes tight on the face
    face: object  # regions.Face
    eta: tuple


def fixed_faces(arr, complex_=None, cap=DEFAULT_SUBSET_CAP):
    """Every (carrier region, face) pair whose weight lies in the tight span."""
    fc = complex_ or face_complex(arr, cap)
    out = []
    for face in fc.faces:
        tight_normals = [arr.normal(i) for i in face.tight]
        for A in face.carriers(arr.n):
            eta = region_weight(arr, A)
            if in_span(eta, tight_normals):
                out.append(FixedFace(A, face.tight, face, eta))
    out.sort(key=lambda f: (f.face.dimension, f.B, f.face.positive, f.A))
    return out


def _faces_meet(arr, f, g):
    cons = f.constraints(arr) + g.constraints(arr)
    return lp_feasible(cons, dim=arr.dimension) is not None


@dataclass(frozen=True)
class FixedComponents:
    components: tuple  # each a tuple of geometric faces (maximal ones first)
    minimum: object  # index of the component containing X, or None
    minimum_compact: bool
    compact: tuple = ()  # per component: every face bounded

    @property
    def count(self):
        """Compact components; a noncompact one cannot carry a core component."""
        return sum(1 for c in self.compact if c)


def fixed_components(arr, complex_=None, cap=DEFAULT_SUBSET_CAP) -> FixedComponents:
    """Group the fixed faces into connected pieces by point-set intersection."""
    fc = complex_ or face_complex(arr, cap)
    faces = []
    for ff in fixed_faces(arr, fc):
        if ff.face not in faces:
            faces.append(ff.face)
    parent = list(range(len(faces)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            if find(i) != find(j) and _faces_meet(arr, faces[i], faces[j]):
                parent[find(i)] = find(j)
    groups = {}
    for k, f in enumerate(faces):
        groups.setdefault(find(k), []).append(f)
    comps = []
    for members in groups.values():
        members.sort(key=lambda f: (-f.dimension, f.tight, f.positive))
        comps.append(tuple(members))
    comps.sort(key=lambda c: (c[0].witness, c[0].tight))
    # X: the face complex of the all-F region
    everything = tuple(arr.labels)
    minimum, compact = None, True
    x_faces = [f for f in fc.faces if f.tight == () and f.positive == everything]
    if x_faces:
        X = x_faces[0]
        minimum = next(k for k, c in enumerate(comps) if X in c)
        compact = X.is_bounded(arr)
    bounded = tuple(all(f.is_bounded(arr) for f in c) for c in comps)
    return FixedComponents(tuple(comps), minimum, compact, bounded)


@dataclass(frozen=True)
class CoreComponent:
    A: tuple  # bounded region (F-set)
    eta: tuple
    face: object  # minimizing face of <x, eta> over Delta_A
    component: int  # index into fixed_components(...).components


def minimizing_face(arr, A, eta):
    cons = region_constraints(arr, A)
    d = arr.dimension
    if not any(eta):
        w = lp_feasible(cons, dim=d)
        return identify_face(arr, cons, w)
    res = lp_optimize(cons, eta, maximize=False, dim=d)
    if res.status != "optimal":
        raise ContractError(f"weight unbounded below on region {A}")
    cons = cons + [eq(eta, res.value)]
    return identify_face(arr, cons, res.point)


def core_components(arr, cap=DEFAULT_SUBSET_CAP):
    """One entry per bounded region with the fixed component it flows to."""
    fc = face_complex(arr, cap)
    comps = fixed_components(arr, fc)
    regions_ = bounded_index_set(arr, cap)
    out = []
    for A in regions_:
        eta = region_weight(arr, A)
        face = minimizing_face(arr, A, eta)
        if not in_span(eta, [arr.normal(i) for i in face.tight]):
            raise ContractError(f"minimizing face of region {A} is not fixed")
        idx = next((k for k, c in enumerate(comps.components) if face in c), None)
        if idx is None:
            raise ContractError(f"minimizing face of region {A} missing from the fixed components")
        out.append(CoreComponent(A, eta, face, idx))
    return out, comps


@dataclass(frozen=True)
class CoreSummary:
    bounded: int
    fixed: int
    core: int
    injective: bool
    bijective: bool
    minimum_compact: bool


def essential(arr) -> bool:
    """Whether the normals span Q^d; otherwise there is no hypertoric variety."""
    return rank(arr.normals) == arr.dimension


def summarize(arr, smooth=None, cap=DEFAULT_SUBSET_CAP):
    """Counts behind the bijection; asserted only for smooth essential input."""
    from .arrangement import validate

    cores, comps = core_components(arr, cap)
    targets = [c.component for c in cores]
    injective = len(set(targets)) == len(targets)
    bijective = injective and len(set(targets)) == comps.count
    if smooth is None:
        smooth = validate(arr).is_smooth
    if smooth and essential(arr) and not bijective:
        raise ContractError("smooth arrangement but bounded regions do not biject onto fixed components")
    return CoreSummary(len(cores), comps.count, len(set(targets)), injective, bijective, comps.minimum_compact)


# ---------------------------------------------------------------------------
# flow at a vertex


@dataclass(frozen=True)
class RayClass:
    label: int
    direction: tuple  # b_l for R_l, -b_l for Q_l
    kind: str  # "R" (into F_l) or "Q" (into G_l)
    region_G: tuple  # G-set of the region the ray starts in (sides on B minus l ignored)
    test_value: Fraction
    unstable: bool
    end: object  # first point where the ray meets another hyperplane, or None


@dataclass(frozen=True)
class LineFlow:
    label: int
    b: tuple
    pairing: int  # <a_l, b_l>
    R: RayClass
    Q: RayClass

    @property
    def unstable_count(self):
        return int(self.R.unstable) + int(self.Q.unstable)


@dataclass(frozen=True)
class VertexFlow:
    point: tuple
    incident: tuple
    lines: tuple  # LineFlow per incident label


def b_vector(arr, incident, l):
    """Smallest integer b with <a_j, b> = 0 for the other incident j and <a_l, b> > 0."""
    others = [arr.normal(j) for j in incident if j != l]
    ker = kernel_basis(others, ncols=arr.dimension) if others else None
    if ker is None or len(ker) != 1:
        raise ContractError(f"hyperplanes {incident} do not meet in a vertex")
    b = make_primitive(ker[0])
    if dot(arr.normal(l), b) < 0:
        b = tuple(-x for x in b)
    return tuple(int(x) for x in b)


def _ray_end(arr, point, direction, skip):
    best = None
    for i in arr.labels:
        if i in skip:
            continue
        rate = dot(arr.normal(i), direction)
        if rate == 0:
            continue
        t = (arr.offset(i) - dot(arr.normal(i), point)) / rate
        if t > 0 and (best is None or t < best):
            best = t
    if best is None:
        return None
    return tuple(p + best * q for p, q in zip(point, direction))


def vertex_flow(arr, v) -> VertexFlow:
    """Stable/unstable classification of the rays along each line through v."""
    if not hasattr(v, "incident"):
        v = find_vertex(arr, v)
    B = set(v.incident)
    G = tuple(i for i in arr.labels if i not in B and dot(arr.normal(i), v.point) < arr.offset(i))
    eta = potential(G, arr)
    lines = []
    for l in v.incident:
        b = b_vector(arr, v.incident, l)
        pairing = dot(arr.normal(l), b)
        r_val = dot(b, eta)
        q_val = dot(tuple(-x for x in b), tuple(x + y for x, y in zip(arr.normal(l), eta)))
        R = RayClass(l, b, "R", G, r_val, r_val >= 0, _ray_end(arr, v.point, b, B))
        minus_b = tuple(-x for x in b)
        Q = RayClass(l, minus_b, "Q", tuple(sorted(G + (l,))), q_val, q_val >= 0, _ray_end(arr, v.point, minus_b, B))
        lines.append(LineFlow(l, b, int(pairing), R, Q))
    return VertexFlow(v.point, v.incident, tuple(lines))
