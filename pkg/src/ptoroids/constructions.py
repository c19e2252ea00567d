"""Polyhedron families: pyramids, bipyramids, the twisted prism, Császár tori and their gluings.

Geometric families carry exact rational coordinates and a checked witness
triangulation.  The tetrahedron-sharing chains are built only as abstract
complexes since no embedding for them is known.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

from .congraph import Decomposition, Piece, build_graph
from .engine import Triangulation, candidate_tets, is_valid_triangulation, tet_faces
from .geometry import AffineMap, Point3, orient3d, sub, triangle_normal
from .surface import (
    MeshError,
    TriMesh,
    is_embedded,
    orient_consistently,
    orient_outward,
    validate,
)


class ConstructionError(ValueError):
    pass


class TwistTooLarge(ConstructionError):
    pass


class InvalidTwist(ConstructionError):
    pass


class PlacementMismatch(ConstructionError):
    pass


class NotEmbedded(ConstructionError):
    pass


@dataclass(frozen=True)
class ConstructionOutput:
    mesh: TriMesh
    witness: Optional[Triangulation] = None
    decomposition: Optional[Decomposition] = None
    claimed_genus: int = 0
    claimed_tmin: Optional[int] = None
    extras: Mapping[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.mesh.n_vertices


def _finish(out: ConstructionOutput, check_witness: bool = True) -> ConstructionOutput:
    rep = validate(out.mesh)
    if rep.genus != out.claimed_genus:
        raise ConstructionError(
            f"{out.mesh.label}: genus {rep.genus} differs from claimed {out.claimed_genus}"
        )
    if check_witness and out.witness is not None:
        v = is_valid_triangulation(out.mesh, out.witness.tets)
        if not v:
            raise ConstructionError(f"{out.mesh.label}: witness invalid ({v.condition}: {v.detail})")
    return out


def _circle_point(k: int, m: int) -> tuple[Fraction, Fraction]:
    """A rational point on the unit circle near angle ``2*pi*k/m``."""
    if 2 * k == m:
        return Fraction(-1), Fraction(0)
    t = Fraction(math.tan(math.pi * k / m)).limit_denominator(64)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def _polygon(m: int) -> list[tuple[Fraction, Fraction]]:
    return [_circle_point(k, m) for k in range(m)]


def pyramid(n: int, planar_base: bool = True) -> ConstructionOutput:
    """Apex over an ``(n-1)``-gon; the witness is the apex fan over a base triangulation.

    With ``planar_base`` false, base vertex 0 is lowered so that the base
    becomes a skew polygon whose lower hull is the fan from vertex 0.
    """
    if n < 4:
        raise ConstructionError("a pyramid needs at least 4 vertices")
    m = n - 1
    base = [Point3.of(x, y, 0) for x, y in _polygon(m)]
    if not planar_base:
        base[0] = Point3.of(base[0].x, base[0].y, -1)
    apex = Point3.of(0, 0, 2)
    coords = base + [apex]
    a = m
    faces = [(a, i, (i + 1) % m) for i in range(m)]
    fan = [(0, i + 1, i) for i in range(1, m - 1)]
    faces += fan
    label = f"pyramid-{n}" + ("" if planar_base else "-space")
    mesh = orient_outward(TriMesh(n, tuple(faces), tuple(coords), label))
    witness = Triangulation(label, [(a, 0, i, i + 1) for i in range(1, m - 1)])
    return _finish(
        ConstructionOutput(
            mesh,
            witness,
            Decomposition.from_tets(label, witness.tets),
            claimed_genus=0,
            claimed_tmin=n - 3,
        )
    )


def bipyramid(n: int) -> ConstructionOutput:
    """Two apices over a convex ``(n-2)``-gon, with both canonical triangulations.

    ``extras["method1"]`` splits into two pyramids over a common base fan
    (``2(n-4)`` tets); ``extras["method2"]`` fans around the apex axis
    (``n-2`` tets).  The witness is the smaller, method 1 on ties.
    """
    if n < 5:
        raise ConstructionError("a bipyramid needs at least 5 vertices")
    m = n - 2
    coords = [Point3.of(x, y, 0) for x, y in _polygon(m)]
    top, bot = m, m + 1
    coords += [Point3.of(0, 0, 1), Point3.of(0, 0, -1)]
    faces = [(top, i, (i + 1) % m) for i in range(m)] + [(bot, (i + 1) % m, i) for i in range(m)]
    label = f"bipyramid-{n}"
    mesh = orient_outward(TriMesh(n, tuple(faces), tuple(coords), label))
    method1 = Triangulation(
        label,
        [(apex, 0, i, i + 1) for apex in (top, bot) for i in range(1, m - 1)],
    )
    method2 = Triangulation(label, [(top, bot, i, (i + 1) % m) for i in range(m)])
    for name, tri in (("method1", method1), ("method2", method2)):
        v = is_valid_triangulation(mesh, tri.tets)
        if not v:
            raise ConstructionError(f"{label} {name} invalid: {v.detail}")
    witness = method1 if len(method1) <= len(method2) else method2
    # the two-pyramid split, contact across the base fan
    base_fan = [(0, i, i + 1) for i in range(1, m - 1)]
    halves = Decomposition(
        label,
        [
            Piece(list(range(m)) + [apex], [f for f in faces if apex in f] + base_fan)
            for apex in (top, bot)
        ],
    )
    return _finish(
        ConstructionOutput(
            mesh,
            witness,
            Decomposition.from_tets(label, witness.tets),
            claimed_genus=0,
            claimed_tmin=min(len(method1), len(method2)) if n <= 7 else None,
            extras={"method1": method1, "method2": method2, "two_pyramids": halves},
        ),
        check_witness=False,
    )


# A near-equilateral rational triangle inscribed in the unit circle.
_PRISM_BASE = (
    (Fraction(1), Fraction(0)),
    (Fraction(-33, 65), Fraction(56, 65)),
    (Fraction(-33, 65), Fraction(-56, 65)),
)


def schoenhardt(twist: Sequence = (Fraction(24, 25), Fraction(7, 25))) -> ConstructionOutput:
    """Triangular prism with diagonals A1B2, B1C2, C1A2 and the top turned by ``(cos, sin)``."""
    c, s = (Fraction(v) for v in twist)
    if c * c + s * s != 1:
        raise InvalidTwist(f"({c}, {s}) is not on the unit circle")
    if s <= 0:
        raise InvalidTwist("the twist must be a positive rotation (sin > 0)")
    bottom = [Point3.of(x, y, 0) for x, y in _PRISM_BASE]
    top = [Point3.of(c * x - s * y, s * x + c * y, 1) for x, y in _PRISM_BASE]
    A1, B1, C1, A2, B2, C2 = range(6)
    faces = [
        (A1, C1, B1),
        (A2, B2, C2),
        (A1, B1, B2), (A1, B2, A2),
        (B1, C1, C2), (B1, C2, B2),
        (C1, A1, A2), (C1, A2, C2),
    ]
    label = f"schoenhardt-{c}-{s}"
    mesh = orient_outward(TriMesh(6, tuple(faces), tuple(bottom + top), label))
    validate(mesh)
    emb = is_embedded(mesh)
    if not emb:
        raise TwistTooLarge(f"twist ({c}, {s}) makes the surface self-intersect at faces {emb.faces}")
    inner = candidate_tets(mesh)
    if inner:
        raise TwistTooLarge(
            f"twist ({c}, {s}) leaves {len(inner)} inner tetrahedra; the prism is triangulable"
        )
    return _finish(ConstructionOutput(mesh, None, None, claimed_genus=0, claimed_tmin=None))


# -- the Császár torus -----------------------------------------------------------------------

# Integer realization found by randomized search and checked by the module's
# own predicates: embedded, K7 edge graph, genus 1.  Faces are {i, i+1, i+3}
# and {i, i+2, i+3} mod 7, oriented outward.
CSASZAR_COORDS = ((-2, -3, -1), (-8, 6, 6), (3, 4, -4), (-8, 6, -7), (3, 5, -8), (4, -2, 1), (1, 5, -5))
CSASZAR_FACES = (
    (0, 1, 3), (0, 3, 2), (1, 2, 4), (1, 4, 3), (2, 3, 5), (2, 5, 4), (3, 4, 6),
    (3, 6, 5), (4, 5, 0), (4, 0, 6), (5, 6, 1), (5, 1, 0), (6, 0, 2), (6, 2, 1),
)
# Its unique 3-triangulation.
CSASZAR_TETS = (
    (0, 1, 3, 5), (0, 2, 3, 5), (0, 2, 4, 5), (0, 2, 4, 6),
    (1, 2, 4, 6), (1, 3, 4, 6), (1, 3, 5, 6),
)
# Two vertex-disjoint convex-hull faces, used as gluing sites in chains.
CSASZAR_IN_FACE = (0, 1, 3)
CSASZAR_OUT_FACE = (2, 5, 4)


def csaszar() -> ConstructionOutput:
    mesh = TriMesh(7, CSASZAR_FACES, CSASZAR_COORDS, "csaszar")
    witness = Triangulation("csaszar", CSASZAR_TETS)
    return _finish(
        ConstructionOutput(
            mesh,
            witness,
            Decomposition.from_tets("csaszar", CSASZAR_TETS),
            claimed_genus=1,
            claimed_tmin=7,
            extras={"in_face": CSASZAR_IN_FACE, "out_face": CSASZAR_OUT_FACE},
        )
    )


# -- the nine-vertex ring of prisms ---------------------------------------------------------

# Three directions summing to zero: an affine image of three rays 120 degrees apart.
_RING_DIRS = ((1, 0), (0, 1), (-1, -1))
# Cross-section triangle as (distance from the axis, height).
_RING_SECTION = ((1, 0), (3, 0), (2, 2))


def toroid_p9() -> ConstructionOutput:
    """Three convex prisms in a cycle around a triangular hole (n = 9, genus 1)."""
    coords = []
    for dx, dy in _RING_DIRS:
        for r, z in _RING_SECTION:
            coords.append(Point3.of(r * dx, r * dy, z))
    faces, pieces, tets = [], [], []
    for i in range(3):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        j = (i + 1) % 3
        a2, b2, c2 = 3 * j, 3 * j + 1, 3 * j + 2
        lateral = [(a, b, a2), (b, b2, a2), (b, c, b2), (c, c2, b2), (c, a, a2), (a2, c2, c)]
        faces += lateral
        pieces.append(Piece([a, b, c, a2, b2, c2], lateral + [(a, b, c), (a2, b2, c2)]))
        tets += [(a, b, c, a2), (b, c, a2, b2), (c, a2, b2, c2)]
    mesh = orient_outward(TriMesh(9, tuple(faces), tuple(coords), "toroid-p9"))
    emb = is_embedded(mesh)
    if not emb:
        raise NotEmbedded(f"toroid-p9 faces {emb.faces} intersect")
    decomposition = Decomposition("toroid-p9", pieces)
    return _finish(
        ConstructionOutput(
            mesh,
            Triangulation("toroid-p9", tets),
            decomposition,
            claimed_genus=1,
            claimed_tmin=9,
            extras={"hole_center": Point3.of(0, 0, 1)},
        )
    )


# -- gluing ---------------------------------------------------------------------------------------


def _oriented_face(mesh: TriMesh, face) -> tuple[int, int, int]:
    key = tuple(sorted(face))
    for f in mesh.faces:
        if tuple(sorted(f)) == key:
            return f
    raise ConstructionError(f"{face} is not a face of {mesh.label}")


def supporting_faces(mesh: TriMesh, strict: bool = True) -> list[tuple[int, int, int]]:
    """Mesh faces whose plane has the whole mesh on its inner side.

    ``strict`` demands every other vertex strictly inside, so that the plane
    meets the solid in exactly that face.
    """
    pts = mesh.int_coords
    out = []
    for f in mesh.faces:
        signs = [orient3d(*(pts[i] for i in f), pts[v]) for v in range(mesh.n_vertices) if v not in f]
        if all(s < 0 for s in signs) or (not strict and all(s <= 0 for s in signs)):
            out.append(f)
    return sorted(out, key=lambda f: tuple(sorted(f)))


def placement_onto(target: TriMesh, face_t, source: TriMesh, face_s, lift: Fraction = Fraction(1)) -> AffineMap:
    """Affine map laying ``face_s`` of ``source`` onto ``face_t`` of ``target``.

    The source solid lands on the outer side of ``face_t``; ``lift`` scales
    how far it reaches.  Orientation is preserved (positive determinant).
    """
    ft = _oriented_face(target, face_t)
    fs = _oriented_face(source, face_s)
    tp = [target.coords[i] for i in ft]
    sp = [source.coords[i] for i in fs]
    s_in = [Fraction(sum(p[k] for p in source.coords), source.n_vertices) for k in range(3)]
    if orient3d(*sp, s_in) >= 0:
        raise PlacementMismatch(f"{face_s} does not face away from the rest of {source.label}")
    n = triangle_normal(*tp)
    size = max(abs(c) for p in tp for q in tp for c in sub(p, q))
    scale = Fraction(size) / max(abs(c) for c in n) * lift
    centre = [sum(p[k] for p in tp) / 3 for k in range(3)]
    out_pt = [centre[k] + n[k] * scale for k in range(3)]
    # reversed vertex order: the shared face is traversed oppositely by the two sides
    return AffineMap.from_frames([sp[0], sp[1], sp[2], s_in], [tp[0], tp[2], tp[1], out_pt])


def glue_on_face(
    a: ConstructionOutput,
    face_a,
    b: ConstructionOutput,
    face_b,
    placement: Optional[AffineMap] = None,
    label: Optional[str] = None,
) -> ConstructionOutput:
    """Place ``b`` by ``placement`` so that ``face_b`` lands on ``face_a`` and merge.

    The three vertices of the contact face are identified and both copies of
    it leave the boundary.  Raises :class:`PlacementMismatch` when the image of
    ``face_b`` is not exactly ``face_a`` and :class:`NotEmbedded` when the
    merged surface self-intersects.
    """
    ma, mb = a.mesh, b.mesh
    ma.require_coords()
    mb.require_coords()
    key_a, key_b = tuple(sorted(face_a)), tuple(sorted(face_b))
    _oriented_face(ma, key_a)
    _oriented_face(mb, key_b)
    if placement is None:
        placement = placement_onto(ma, key_a, mb, key_b)
    images = [placement(p) for p in mb.coords]
    where = {p: i for i, p in enumerate(ma.coords)}
    index = {}
    for v in key_b:
        u = where.get(images[v])
        if u is None or u not in key_a:
            raise PlacementMismatch(f"vertex {v} of {mb.label} does not land on a vertex of face {key_a}")
        index[v] = u
    if len(set(index.values())) != 3:
        raise PlacementMismatch("contact face vertices collapse")
    coords = list(ma.coords)
    for v in range(mb.n_vertices):
        if v not in index:
            index[v] = len(coords)
            coords.append(images[v])
    faces = [f for f in ma.faces if tuple(sorted(f)) != key_a]
    faces += [tuple(index[v] for v in f) for f in mb.faces if tuple(sorted(f)) != key_b]
    label = label or f"{ma.label}+{mb.label}"
    try:
        mesh = orient_outward(TriMesh(len(coords), tuple(faces), tuple(coords), label))
        validate(mesh)
    except MeshError as exc:
        raise NotEmbedded(f"glued surface is not a closed manifold: {exc}") from exc
    emb = is_embedded(mesh)
    if not emb:
        raise NotEmbedded(f"glued copies collide at faces {emb.faces} ({emb.contact})")
    witness = None
    if a.witness is not None and b.witness is not None:
        witness = Triangulation(
            label, list(a.witness.tets) + [tuple(index[v] for v in t) for t in b.witness.tets]
        )
    decomposition = None
    if a.decomposition is not None and b.decomposition is not None:
        decomposition = Decomposition(
            label, list(a.decomposition.pieces) + list(b.decomposition.remap(index).pieces)
        )
    claimed = None
    if a.claimed_tmin is not None and b.claimed_tmin is not None:
        claimed = a.claimed_tmin + b.claimed_tmin
    out = ConstructionOutput(
        mesh,
        witness,
        decomposition,
        claimed_genus=a.claimed_genus + b.claimed_genus,
        claimed_tmin=claimed,
        extras={"contact_face": key_a, "b_index": dict(index)},
    )
    return _finish(out)


_LIFTS = (Fraction(1), Fraction(2), Fraction(4), Fraction(1, 2), Fraction(8), Fraction(1, 4))


def _next_site(out: ConstructionOutput, last: dict, avoid) -> Optional[tuple]:
    """A face of the newest copy that supports the whole mesh and misses ``avoid``."""
    outer = {tuple(sorted(f)) for f in supporting_faces(out.mesh)}
    prefs = [CSASZAR_OUT_FACE] + [
        tuple(sorted(f)) for f in CSASZAR_FACES if tuple(sorted(f)) != tuple(sorted(CSASZAR_IN_FACE))
    ]
    for f in prefs:
        img = tuple(sorted(last[v] for v in f))
        if img in outer and not set(avoid) & set(img):
            return img
    return None


def chain_csaszar(p: int) -> ConstructionOutput:
    """``p`` Császár tori glued in a row, each pair of neighbours sharing one face.

    Each new copy is laid on a convex-hull face of the newest copy, so the
    union stays embedded; the lift is the first in a fixed list that leaves a
    free hull face for the copy after it.
    """
    if p < 1:
        raise ConstructionError("p must be at least 1")
    unit = csaszar()
    out = unit
    last = {v: v for v in range(7)}  # vertex map of the newest copy
    contacts: list[tuple] = []
    for k in range(2, p + 1):
        site = _next_site(out, last, contacts[-1] if contacts else ())
        if site is None:
            raise NotEmbedded(f"no free convex-hull face on copy {k - 1}")
        for lift in _LIFTS:
            mesh_a = out.mesh
            placement = placement_onto(mesh_a, site, unit.mesh, CSASZAR_IN_FACE, lift)
            glued = glue_on_face(out, site, unit, CSASZAR_IN_FACE, placement, label=f"chain-{k}")
            if k == p or _next_site(glued, glued.extras["b_index"], site) is not None:
                break
        else:
            raise NotEmbedded(f"copy {k} leaves no free convex-hull face for the next one")
        out = glued
        last = out.extras["b_index"]
        contacts.append(site)
    mesh = out.mesh.relabel(f"chain-{p}")
    witness = Triangulation(mesh.label, out.witness.tets)
    decomposition = Decomposition(mesh.label, out.decomposition.pieces)
    graph = build_graph(decomposition)
    return ConstructionOutput(
        mesh,
        witness,
        decomposition,
        claimed_genus=p,
        claimed_tmin=7 * p,
        extras={"contact_faces": tuple(contacts), "connection_graph": graph},
    )


def attach_simple(base: ConstructionOutput, k: int) -> ConstructionOutput:
    """Glue a skew-based pyramid on ``k`` vertices onto a free convex-hull face of ``base``."""
    if k < 4:
        raise ConstructionError("the attached pyramid needs at least 4 vertices")
    sites = supporting_faces(base.mesh) or supporting_faces(base.mesh, strict=False)
    if not sites:
        raise NotEmbedded(f"{base.mesh.label} has no convex-hull face to attach to")
    s = pyramid(k, planar_base=False)
    apex = k - 1
    lateral = next(f for f in supporting_faces(s.mesh) if apex in f)
    glued = glue_on_face(base, sites[0], s, lateral, label=f"{base.mesh.label}+S{k}")
    extras = dict(glued.extras)
    extras.update(attached_face=tuple(sorted(sites[0])), attached_k=k)
    return replace(glued, extras=extras)


# -- abstract tetrahedron-sharing chains ------------------------------------------------------


def _tet_face_status(tets, boundary) -> dict:
    """For each tet, which of its faces (indexed by the opposite vertex) lie on the boundary."""
    return {t: {w: tri in boundary for tri, w in tet_faces(t)} for t in tets}


def _abstract_complex(p: int, in_tet, out_tet, sigma, closed: bool):
    """Union-find p copies of the Császár triangulation along shared tetrahedra."""
    parent = list(range(7 * p))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    links = [(k, k + 1) for k in range(p - 1)] + ([(p - 1, 0)] if closed else [])
    for k, l in links:
        for x, y in zip(out_tet, sigma):
            ra, rb = find(7 * k + x), find(7 * l + y)
            if ra == rb:
                return None
            parent[rb] = ra
    classes: dict[int, int] = {}
    for s in range(7 * p):
        classes.setdefault(find(s), len(classes))
    idx = [classes[find(s)] for s in range(7 * p)]
    for k in range(p):
        if len({idx[7 * k + v] for v in range(7)}) != 7:
            return None
    tets = set()
    for k in range(p):
        for t in CSASZAR_TETS:
            tets.add(tuple(sorted(idx[7 * k + v] for v in t)))
    count: dict[tuple, int] = {}
    for t in tets:
        for tri, _ in tet_faces(t):
            count[tri] = count.get(tri, 0) + 1
    if any(c > 2 for c in count.values()):
        return None
    faces = [tri for tri, c in sorted(count.items()) if c == 1]
    return len(classes), sorted(tets), faces


def _shared_tet_family(p: int, closed: bool, want_n: int, want_genus: int, want_tets: int, label: str):
    boundary = {tuple(sorted(f)) for f in CSASZAR_FACES}
    status = _tet_face_status(CSASZAR_TETS, boundary)
    halves = [t for t in CSASZAR_TETS if sum(status[t].values()) == 2]
    for in_tet, out_tet in itertools.product(halves, repeat=2):
        if (p > 2 or closed) and in_tet == out_tet:
            continue
        for perm in itertools.permutations(in_tet):
            # the out tet's boundary faces become interior faces of the next copy and vice versa
            if any(status[out_tet][x] == status[in_tet][y] for x, y in zip(out_tet, perm)):
                continue
            built = _abstract_complex(p, in_tet, out_tet, perm, closed)
            if built is None:
                continue
            n, tets, faces = built
            if n != want_n or len(tets) != want_tets:
                continue
            try:
                mesh = orient_consistently(TriMesh(n, tuple(faces), None, label))
                rep = validate(mesh)
            except MeshError:
                continue
            if rep.genus != want_genus:
                continue
            return mesh, tets, (in_tet, out_tet, perm)
    raise ConstructionError(f"no tetrahedron-sharing gluing yields a genus-{want_genus} surface on {want_n} vertices")


def chain_csaszar_shared_tet(p: int) -> ConstructionOutput:
    """``p`` Császár tori in a row, neighbours sharing a tetrahedron (coordinate-free)."""
    if p < 2:
        raise ConstructionError("p must be at least 2")
    label = f"chain-shared-tet-{p}"
    mesh, tets, choice = _shared_tet_family(p, False, 3 * p + 4, p, 6 * p + 1, label)
    d = Decomposition.from_tets(label, tets)
    return ConstructionOutput(
        mesh,
        None,
        d,
        claimed_genus=p,
        claimed_tmin=len(tets),
        extras={"complex_tets": tuple(tets), "gluing": choice, "connection_graph": build_graph(d)},
    )


def cycle_closure(p: int) -> ConstructionOutput:
    """The tetrahedron-sharing chain of ``p`` tori closed into a ring: genus ``p + 1`` on ``3p`` vertices."""
    if p < 3:
        raise ConstructionError("closing a ring needs p >= 3")
    n, g = 3 * p, p + 1
    # a closed simplicial surface has E = 3(V - chi) edges, at most V(V-1)/2
    if 3 * (n - (2 - 2 * g)) > n * (n - 1) // 2:
        raise ConstructionError(
            f"no simplicial surface of genus {g} has {n} vertices: it needs "
            f"{3 * (n - (2 - 2 * g))} edges but only {n * (n - 1) // 2} vertex pairs exist"
        )
    label = f"cycle-closure-{p}"
    mesh, tets, choice = _shared_tet_family(p, True, n, g, 6 * p, label)
    d = Decomposition.from_tets(label, tets)
    return ConstructionOutput(
        mesh,
        None,
        d,
        claimed_genus=p + 1,
        claimed_tmin=len(tets),
        extras={"complex_tets": tuple(tets), "gluing": choice, "connection_graph": build_graph(d)},
    )


# -- small reference solids ----------------------------------------------------------------


def octahedron() -> TriMesh:
    return bipyramid(6).mesh.relabel("octahedron")


def unit_tetrahedron() -> TriMesh:
    pts = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    return orient_outward(TriMesh(4, ((0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)), pts, "unit-tetrahedron"))


def unit_cube() -> TriMesh:
    pts = tuple((x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1))
    quads = ((0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3))
    faces = [t for q in quads for t in ((q[0], q[1], q[2]), (q[0], q[2], q[3]))]
    return orient_outward(TriMesh(8, tuple(faces), pts, "unit-cube"))
