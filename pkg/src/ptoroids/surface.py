"""Closed orientable triangle meshes: topology checks, embedding, volume, R-OFF I/O."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .geometry import (
    DegenerateTriangle,
    Location,
    Point3,
    TriangleContact,
    cross,
    dot,
    format_rat,
    integer_scaled,
    point_on_triangle,
    rat,
    sub,
    tet_volume6,
    triangle_normal,
    triangles_classify,
)


class MeshError(ValueError):
    """Base class for mesh validation failures."""


class InvalidFace(MeshError):
    pass


class NotClosed(MeshError):
    pass


class NotManifold(MeshError):
    pass


class NotOrientable(MeshError):
    pass


class DuplicateVertex(MeshError):
    pass


class MissingCoordinates(MeshError):
    pass


class AbstractMesh(MissingCoordinates):
    """Raised when a geometric operation is requested on a coordinate-free mesh."""


class ParseError(MeshError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NonTriangularFace(ParseError):
    pass


Face = tuple[int, int, int]


@dataclass(frozen=True)
class TriMesh:
    n_vertices: int
    faces: tuple[Face, ...]
    coords: Optional[tuple[Point3, ...]] = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in self.faces))
        if self.coords is not None:
            object.__setattr__(self, "coords", tuple(Point3.of(*p) for p in self.coords))
            if len(self.coords) != self.n_vertices:
                raise MeshError(
                    f"{len(self.coords)} coordinates given for {self.n_vertices} vertices"
                )

    @property
    def is_abstract(self) -> bool:
        return self.coords is None

    @cached_property
    def int_coords(self) -> list[tuple[int, int, int]]:
        """Coordinates rescaled to integers (predicate-equivalent, much faster)."""
        self.require_coords()
        return integer_scaled(self.coords)

    def require_coords(self) -> None:
        if self.coords is None:
            raise AbstractMesh(f"mesh {self.label or '<unnamed>'} has no coordinates")

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for f in self.faces:
            for i in range(3):
                a, b = f[i], f[(i + 1) % 3]
                out.add((min(a, b), max(a, b)))
        return frozenset(out)

    @cached_property
    def face_keys(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(tuple(sorted(f)) for f in self.faces)

    def with_faces(self, faces: Iterable[Face]) -> "TriMesh":
        return replace(self, faces=tuple(faces))

    def relabel(self, label: str) -> "TriMesh":
        return replace(self, label=label)


@dataclass(frozen=True)
class SurfaceReport:
    V: int
    E: int
    F: int
    euler_characteristic: int
    genus: Optional[int]
    manifold: bool
    orientable: bool
    components: int = 1
    embedded: Optional[bool] = None
    volume6: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "euler_characteristic": self.euler_characteristic,
            "genus": self.genus,
            "manifold": self.manifold,
            "orientable": self.orientable,
            "components": self.components,
            "embedded": self.embedded,
            "volume6": None if self.volume6 is None else format_rat(self.volume6),
        }


# -- combinatorial structure --------------------------------------------------


def _edge_faces(mesh: TriMesh) -> dict[tuple[int, int], list[int]]:
    ef: dict[tuple[int, int], list[int]] = defaultdict(list)
    for fi, f in enumerate(mesh.faces):
        for i in range(3):
            a, b = f[i], f[(i + 1) % 3]
            ef[(min(a, b), max(a, b))].append(fi)
    return ef


def _check_faces(mesh: TriMesh) -> None:
    if not mesh.faces:
        raise InvalidFace("mesh has no faces")
    seen = {}
    for fi, f in enumerate(mesh.faces):
        if len(f) != 3 or len(set(f)) != 3:
            raise InvalidFace(f"face {fi} {f} does not have three distinct vertices")
        if any(i < 0 or i >= mesh.n_vertices for i in f):
            raise InvalidFace(f"face {fi} {f} references a vertex out of range")
        key = tuple(sorted(f))
        if key in seen:
            raise InvalidFace(f"faces {seen[key]} and {fi} have the same vertex set {key}")
        seen[key] = fi


def _check_closed_manifold(mesh: TriMesh, ef) -> None:
    for e, fs in sorted(ef.items()):
        if len(fs) == 1:
            raise NotClosed(f"edge {e} lies in only one face")
        if len(fs) > 2:
            raise NotManifold(f"edge {e} lies in {len(fs)} faces")
    used = set(itertools.chain.from_iterable(mesh.faces))
    for v in range(mesh.n_vertices):
        if v not in used:
            raise NotManifold(f"vertex {v} is not used by any face")
    link: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for f in mesh.faces:
        for i in range(3):
            link[f[i]].append((f[(i + 1) % 3], f[(i + 2) % 3]))
    for v in sorted(link):
        adj: dict[int, list[int]] = defaultdict(list)
        for a, b in link[v]:
            adj[a].append(b)
            adj[b].append(a)
        # every link vertex has degree 2 (edges are manifold); need one cycle
        start = next(iter(adj))
        seen, stack = {start}, [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(adj):
            raise NotManifold(f"link of vertex {v} is not a single cycle")


def _check_orientation(mesh: TriMesh, ef) -> None:
    directed = {}
    for fi, f in enumerate(mesh.faces):
        for i in range(3):
            d = (f[i], f[(i + 1) % 3])
            if d in directed:
                raise NotOrientable(
                    f"faces {directed[d]} and {fi} traverse edge {d} in the same direction"
                )
            directed[d] = fi


def _components(mesh: TriMesh, ef) -> int:
    parent = list(range(len(mesh.faces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for fs in ef.values():
        for other in fs[1:]:
            parent[find(other)] = find(fs[0])
    return len({find(i) for i in range(len(mesh.faces))})


def validate(mesh: TriMesh) -> SurfaceReport:
    """Check that ``mesh`` is a closed, consistently oriented 2-manifold and count it.

    Raises :class:`NotClosed`, :class:`NotManifold` or :class:`NotOrientable`
    naming the offending edge or vertex.  When coordinates are present, faces
    must be nondegenerate and vertices pairwise distinct.
    """
    _check_faces(mesh)
    ef = _edge_faces(mesh)
    _check_closed_manifold(mesh, ef)
    _check_orientation(mesh, ef)
    if mesh.coords is not None:
        pts = mesh.coords
        seen: dict[Point3, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicateVertex(f"vertices {seen[p]} and {i} coincide at {p}")
            seen[p] = i
        for fi, f in enumerate(mesh.faces):
            if triangle_normal(*(pts[i] for i in f)) == (0, 0, 0):
                raise DegenerateTriangle(f"face {fi} {f} has zero area")
    V, E, F = mesh.n_vertices, len(ef), len(mesh.faces)
    chi = V - E + F
    comps = _components(mesh, ef)
    return SurfaceReport(
        V=V,
        E=E,
        F=F,
        euler_characteristic=chi,
        genus=(2 * comps - chi) // 2,
        manifold=True,
        orientable=True,
        components=comps,
    )


def genus(mesh: TriMesh) -> int:
    return validate(mesh).genus


def orient_consistently(mesh: TriMesh) -> TriMesh:
    """Flip faces so that every edge is traversed in opposite directions.

    Raises :class:`NotOrientable` for surfaces that admit no such orientation.
    """
    ef = _edge_faces(mesh)
    faces = [tuple(f) for f in mesh.faces]
    flipped: dict[int, bool] = {}

    def directed(fi):
        f = faces[fi]
        if flipped[fi]:
            f = (f[0], f[2], f[1])
        return f

    def has_dir(f, a, b):
        return any((f[i], f[(i + 1) % 3]) == (a, b) for i in range(3))

    for root in range(len(faces)):
        if root in flipped:
            continue
        flipped[root] = False
        stack = [root]
        while stack:
            fi = stack.pop()
            f = directed(fi)
            for i in range(3):
                a, b = f[i], f[(i + 1) % 3]
                for gj in ef[(min(a, b), max(a, b))]:
                    if gj == fi:
                        continue
                    g = faces[gj]
                    want_flip = has_dir(g, a, b)
                    if gj in flipped:
                        if has_dir(directed(gj), a, b):
                            raise NotOrientable(f"edge {(a, b)} cannot be oriented consistently")
                        continue
                    flipped[gj] = want_flip
                    stack.append(gj)
    return mesh.with_faces(directed(i) for i in range(len(faces)))


def _signed_volume6(mesh: TriMesh) -> Fraction:
    pts = mesh.coords
    o = (0, 0, 0)
    return sum((tet_volume6(o, *(pts[i] for i in f)) for f in mesh.faces), Fraction(0))


def orient_outward(mesh: TriMesh) -> TriMesh:
    """Consistent orientation with positive enclosed volume (when coordinates exist)."""
    mesh = orient_consistently(mesh)
    if mesh.coords is not None and _signed_volume6(mesh) < 0:
        mesh = mesh.with_faces((f[0], f[2], f[1]) for f in mesh.faces)
    return mesh


def enclosed_volume6(mesh: TriMesh) -> Fraction:
    """Six times the enclosed volume, as a sum of signed cones from the origin."""
    mesh.require_coords()
    return abs(_signed_volume6(orient_consistently(mesh)))


def edge_graph_is_complete(mesh: TriMesh) -> bool:
    n = mesh.n_vertices
    return len(mesh.edges) == n * (n - 1) // 2


# -- embedding -------------------------------------------------------------------

_EXPECTED_CONTACT = {
    0: TriangleContact.DISJOINT,
    1: TriangleContact.SHARED_VERTEX,
    2: TriangleContact.SHARED_EDGE,
}


@dataclass(frozen=True)
class EmbeddingCheck:
    embedded: bool
    faces: Optional[tuple[int, int]] = None
    contact: Optional[str] = None

    def __bool__(self) -> bool:
        return self.embedded


def is_embedded(mesh: TriMesh) -> EmbeddingCheck:
    """Pairwise face test: geometric contact must match index sharing exactly."""
    mesh.require_coords()
    pts = mesh.int_coords
    if len(set(pts)) != len(pts):
        for i, j in itertools.combinations(range(len(pts)), 2):
            if pts[i] == pts[j]:
                return EmbeddingCheck(False, None, f"vertices {i} and {j} coincide")
    tris = [[pts[i] for i in f] for f in mesh.faces]
    for a, b in itertools.combinations(range(len(tris)), 2):
        k = len(set(mesh.faces[a]) & set(mesh.faces[b]))
        got = triangles_classify(tris[a], tris[b])
        if got is not _EXPECTED_CONTACT[k]:
            return EmbeddingCheck(False, (a, b), got.value)
    return EmbeddingCheck(True)


# -- point location ----------------------------------------------------------------


def _ray_directions():
    k = 0
    while True:
        k += 1
        yield (k + 1, 2 * k * k + 3, 3 * k * k * k + 5 * k + 7)
        yield (-(2 * k + 1), k * k + 5, -(k * k * k + 2))


def _ray_hit(p, d, a, b, c):
    """1 if the open ray hits the triangle interior, 0 if it misses, None if degenerate."""
    n = triangle_normal(a, b, c)
    dn = dot(d, n)
    side = dot(n, sub(a, p))
    if dn == 0:
        return None if side == 0 else 0
    # ray parameter t = side / dn must be positive
    if (side > 0) != (dn > 0) or side == 0:
        return 0
    pa, pb, pc = sub(a, p), sub(b, p), sub(c, p)
    u = dot(d, cross(pb, pc))
    v = dot(d, cross(pc, pa))
    w = dot(d, cross(pa, pb))
    if (u > 0 and v > 0 and w > 0) or (u < 0 and v < 0 and w < 0):
        return 1
    if (u >= 0 and v >= 0 and w >= 0) or (u <= 0 and v <= 0 and w <= 0):
        return None
    return 0


def point_in_solid(mesh: TriMesh, p, direction=None) -> Location:
    """Exact ray-parity location of ``p`` relative to the closed solid of ``mesh``.

    Rays that graze an edge, a vertex, or run inside a face plane are discarded
    and the next rational direction is tried.
    """
    mesh.require_coords()
    pts = mesh.coords
    p = tuple(rat(c) for c in p)
    tris = [[pts[i] for i in f] for f in mesh.faces]
    for t in tris:
        if point_on_triangle(p, *t):
            return Location.BOUNDARY
    dirs = [direction] if direction is not None else _ray_directions()
    for d in dirs:
        hits = 0
        for t in tris:
            h = _ray_hit(p, d, *t)
            if h is None:
                break
            hits += h
        else:
            return Location.INSIDE if hits % 2 else Location.OUTSIDE
    raise ValueError(f"direction {direction} is degenerate for this query")


def point_in_solid_int(pts, faces, p) -> Location:
    """:func:`point_in_solid` on pre-scaled integer coordinates (hot path)."""
    tris = [[pts[i] for i in f] for f in faces]
    for t in tris:
        if point_on_triangle(p, *t):
            return Location.BOUNDARY
    for d in _ray_directions():
        hits = 0
        for t in tris:
            h = _ray_hit(p, d, *t)
            if h is None:
                break
            hits += h
        else:
            return Location.INSIDE if hits % 2 else Location.OUTSIDE
    raise AssertionError("unreachable")


# -- R-OFF I/O ----------------------------------------------------------------------


def write_off(mesh: TriMesh) -> str:
    lines = []
    if mesh.label:
        lines.append(f"# {mesh.label}")
    if mesh.coords is None:
        lines.insert(0, "AOFF")
        lines.append(f"{mesh.n_vertices} {len(mesh.faces)} 0")
    else:
        lines.insert(0, "OFF")
        lines.append(f"{mesh.n_vertices} {len(mesh.faces)} {len(mesh.edges)}")
        for p in mesh.coords:
            lines.append(" ".join(format_rat(c) for c in p))
    for f in mesh.faces:
        lines.append(f"3 {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"


def _fan(poly: Sequence[int]) -> list[Face]:
    return [(poly[0], poly[i], poly[i + 1]) for i in range(1, len(poly) - 1)]


def _is_planar_convex(poly, pts) -> bool:
    ps = [pts[i] for i in poly]
    n = None
    for i in range(len(ps)):
        c = triangle_normal(ps[i - 1], ps[i], ps[(i + 1) % len(ps)])
        if c == (0, 0, 0):
            return False
        if n is None:
            n = c
        elif cross(n, c) != (0, 0, 0) or dot(n, c) <= 0:
            return False
    return all(dot(n, sub(q, ps[0])) == 0 for q in ps)


def parse_off(text: str, label: str = "", fan_convex: bool = False) -> TriMesh:
    """Parse R-OFF / AOFF text into an outward-oriented :class:`TriMesh`.

    With ``fan_convex`` set, planar convex polygon faces are fan-triangulated;
    otherwise any non-triangular face raises :class:`NonTriangularFace`.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            if not label and len(rows) < 2:
                label = s[1:].strip()
            continue
        rows.append((lineno, s.split()))
    if not rows:
        raise ParseError("empty file")
    lineno, head = rows[0]
    if head[0] not in ("OFF", "AOFF") or len(head) != 1:
        raise ParseError(f"expected 'OFF' or 'AOFF', got {' '.join(head)!r}", lineno)
    abstract = head[0] == "AOFF"
    if len(rows) < 2:
        raise ParseError("missing counts line", lineno)
    lineno, counts = rows[1]
    try:
        nv, nf = int(counts[0]), int(counts[1])
        if len(counts) != 3:
            raise ValueError
        int(counts[2])
    except (ValueError, IndexError):
        raise ParseError("counts line must be 'V F E'", lineno) from None
    body = rows[2:]
    need = nf + (0 if abstract else nv)
    if len(body) < need:
        raise ParseError(f"expected {need} data lines, found {len(body)}", body[-1][0] if body else lineno)
    if len(body) > need:
        raise ParseError("unexpected trailing data", body[need][0])
    coords = None
    if not abstract:
        coords = []
        for lineno, toks in body[:nv]:
            if len(toks) != 3:
                raise ParseError("vertex line needs three coordinates", lineno)
            try:
                coords.append(Point3.of(*toks))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational in {' '.join(toks)!r}", lineno) from None
        body = body[nv:]
    faces: list[Face] = []
    for lineno, toks in body:
        try:
            k = int(toks[0])
            idx = [int(t) for t in toks[1:]]
        except ValueError:
            raise ParseError("face indices must be integers", lineno) from None
        if k != len(idx):
            raise ParseError(f"face declares {k} vertices but lists {len(idx)}", lineno)
        if any(i < 0 or i >= nv for i in idx):
            raise ParseError("face index out of range", lineno)
        if k == 3:
            faces.append(tuple(idx))
        elif fan_convex and coords is not None and k > 3 and _is_planar_convex(idx, coords):
            faces.extend(_fan(idx))
        else:
            raise NonTriangularFace(f"face with {k} vertices", lineno)
    mesh = TriMesh(nv, tuple(faces), None if coords is None else tuple(coords), label)
    return orient_outward(mesh)
