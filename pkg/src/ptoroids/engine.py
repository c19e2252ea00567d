"""Inner tetrahedra, triangulation checking, and exact minimal/maximal triangulation search."""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .geometry import (
    Location,
    TetContact,
    TriangleContact,
    integer_scaled,
    orient3d,
    point_in_tet,
    tet_volume6,
    triangles_classify,
    tets_classify,
)
from .surface import TriMesh, point_in_solid_int, validate

Tet = tuple[int, int, int, int]

DEFAULT_BUDGET = 10**7


def dumps(data, sort_keys: bool = False) -> str:
    """Indented JSON with integer lists kept on one line."""
    text = json.dumps(data, indent=2, sort_keys=sort_keys)
    flat = re.compile(r"\[\s*((?:-?\d+,\s*)*-?\d+)\s*\]")
    return flat.sub(lambda m: "[" + ", ".join(re.split(r",\s*", m.group(1))) + "]", text) + "\n"


class EngineError(ValueError):
    pass


class InvalidWitness(EngineError):
    pass


def make_tet(*idx) -> Tet:
    if len(idx) == 1:
        idx = tuple(idx[0])
    t = tuple(sorted(int(i) for i in idx))
    if len(t) != 4 or len(set(t)) != 4:
        raise ValueError(f"a tet needs four distinct vertex indices, got {idx}")
    return t  # type: ignore[return-value]


def tet_faces(t: Tet) -> list[tuple[tuple[int, int, int], int]]:
    """The four faces of ``t`` (sorted triples) paired with the opposite vertex."""
    return [(tuple(v for v in t if v != w), w) for w in t]


@dataclass(frozen=True)
class Triangulation:
    mesh: str
    tets: frozenset

    def __init__(self, mesh: str, tets: Iterable):
        object.__setattr__(self, "mesh", mesh)
        object.__setattr__(self, "tets", frozenset(make_tet(t) for t in tets))

    def __len__(self) -> int:
        return len(self.tets)

    def sorted_tets(self) -> list[Tet]:
        return sorted(self.tets)

    def to_dict(self) -> dict:
        return {"mesh": self.mesh, "tets": [list(t) for t in self.sorted_tets()]}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Triangulation":
        return cls(data.get("mesh", ""), data["tets"])

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        return cls.from_dict(json.loads(text))


class _MeshGeometry:
    """Per-mesh caches for the hot predicates, on integer-rescaled coordinates."""

    def __init__(self, mesh: TriMesh):
        mesh.require_coords()
        self.mesh = mesh
        # factor 4 keeps tet centroids integral
        self.pts = integer_scaled(mesh.coords, 4)
        self.faces = mesh.faces
        self.face_tris = [[self.pts[i] for i in f] for f in self.faces]
        self.face_sets = [frozenset(f) for f in self.faces]
        self._tri_ok: dict[tuple, bool] = {}
        self._inner: dict[Tet, bool] = {}
        self._compat: dict[tuple[Tet, Tet], bool] = {}
        self.total_volume = abs(
            sum(tet_volume6((0, 0, 0), *tri) for tri in self.face_tris)
        )

    def volume(self, t: Tet) -> int:
        return abs(tet_volume6(*(self.pts[i] for i in t)))

    def triangle_ok(self, tri: tuple[int, int, int]) -> bool:
        """A triangle on mesh vertices meets every mesh face exactly as indices say."""
        hit = self._tri_ok.get(tri)
        if hit is not None:
            return hit
        geo = [self.pts[i] for i in tri]
        s = set(tri)
        ok = True
        for fs, ftri in zip(self.face_sets, self.face_tris):
            k = len(s & fs)
            got = triangles_classify(geo, ftri)
            want = (
                TriangleContact.IDENTICAL
                if k == 3
                else (TriangleContact.DISJOINT, TriangleContact.SHARED_VERTEX, TriangleContact.SHARED_EDGE)[k]
            )
            if got is not want:
                ok = False
                break
        self._tri_ok[tri] = ok
        return ok

    def inner_reason(self, t: Tet) -> Optional[str]:
        geo = [self.pts[i] for i in t]
        if tet_volume6(*geo) == 0:
            return "degenerate"
        for v, p in enumerate(self.pts):
            if v not in t and point_in_tet(p, geo) is Location.INSIDE:
                return f"vertex {v} lies strictly inside"
        for tri, _ in tet_faces(t):
            if not self.triangle_ok(tri):
                return f"face {tri} crosses the surface"
        centroid = tuple(sum(c) // 4 for c in zip(*geo))
        if point_in_solid_int(self.pts, self.faces, centroid) is Location.OUTSIDE:
            return "lies outside the solid"
        return None

    def is_inner(self, t: Tet) -> bool:
        hit = self._inner.get(t)
        if hit is None:
            hit = self._inner[t] = self.inner_reason(t) is None
        return hit

    def compatible(self, a: Tet, b: Tet) -> bool:
        key = (a, b) if a < b else (b, a)
        hit = self._compat.get(key)
        if hit is None:
            got = tets_classify([self.pts[i] for i in a], [self.pts[i] for i in b])
            hit = self._compat[key] = got is TetContact.INTERIORS_DISJOINT
        return hit

    def side(self, tri: tuple[int, int, int], w: int) -> int:
        return orient3d(*(self.pts[i] for i in tri), self.pts[w])

    def boundary_front(self) -> dict[tuple[int, int, int], int]:
        """Each mesh face (sorted) with the orientation sign of the solid's side."""
        front = {}
        for f in self.faces:
            key = tuple(sorted(f))
            # outward (a, b, c): interior points give negative orient3d
            perm_even = key in (f, (f[1], f[2], f[0]), (f[2], f[0], f[1]))
            front[key] = -1 if perm_even else 1
        return front


_GEOMETRY_CACHE: dict[int, _MeshGeometry] = {}


def _geometry(mesh: TriMesh) -> _MeshGeometry:
    g = _GEOMETRY_CACHE.get(id(mesh))
    if g is None or g.mesh is not mesh:
        if len(_GEOMETRY_CACHE) > 64:
            _GEOMETRY_CACHE.clear()
        g = _GEOMETRY_CACHE[id(mesh)] = _MeshGeometry(mesh)
    return g


def is_inner_tet(mesh: TriMesh, tet) -> bool:
    return _geometry(mesh).is_inner(make_tet(tet))


def candidate_tets(mesh: TriMesh) -> set[Tet]:
    """All 4-subsets of vertices spanning a tetrahedron inside the closed solid."""
    g = _geometry(mesh)
    return {t for t in itertools.combinations(range(mesh.n_vertices), 4) if g.is_inner(t)}


@dataclass(frozen=True)
class Verdict:
    valid: bool
    condition: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.valid


def is_valid_triangulation(mesh: TriMesh, tets: Iterable) -> Verdict:
    """Check (a) inner tets, (b) proper pairwise contact, (c) volume, (d) boundary cover."""
    g = _geometry(mesh)
    tets = sorted({make_tet(t) for t in tets})
    for t in tets:
        if max(t) >= mesh.n_vertices:
            return Verdict(False, "inner", f"tet {t} references a missing vertex")
        reason = g.inner_reason(t)
        if reason is not None:
            return Verdict(False, "inner", f"tet {t}: {reason}")
    for a, b in itertools.combinations(tets, 2):
        if not g.compatible(a, b):
            return Verdict(False, "overlap", f"tets {a} and {b} overlap")
    vol = sum(g.volume(t) for t in tets)
    if vol != g.total_volume:
        covered = Fraction(vol, g.total_volume)
        kind = "deficit" if covered < 1 else "excess"
        return Verdict(False, "volume", f"tets cover {covered} of the solid volume ({kind})")
    count: dict[tuple, int] = {}
    for t in tets:
        for tri, _ in tet_faces(t):
            count[tri] = count.get(tri, 0) + 1
    for f in sorted(mesh.face_keys):
        if count.get(f, 0) != 1:
            return Verdict(False, "boundary", f"mesh face {f} is a face of {count.get(f, 0)} tets")
    return Verdict(True)


class SearchStatus(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    NOT_TRIANGULABLE = "not-triangulable"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    t_min: Optional[int] = None
    t_max: Optional[int] = None
    count_of_triangulations: Optional[int] = None
    witness_min: Optional[Triangulation] = None
    witness_max: Optional[Triangulation] = None
    nodes_explored: int = 0
    n_candidates: int = 0

    @property
    def witness(self) -> Optional[Triangulation]:
        return self.witness_min

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "count_of_triangulations": self.count_of_triangulations,
            "witness_min": None if self.witness_min is None else self.witness_min.to_dict()["tets"],
            "witness_max": None if self.witness_max is None else self.witness_max.to_dict()["tets"],
            "nodes_explored": self.nodes_explored,
            "n_candidates": self.n_candidates,
        }


class _BudgetExceeded(Exception):
    pass


class _Stop(Exception):
    pass


def search(mesh: TriMesh, mode: str = "any", budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Advancing-front backtracking over inner tetrahedra.

    The front maps uncovered triangles to the side still needing cover.  Each
    step takes the lexicographically least front triangle and branches over
    the candidate tets on that side of it, in sorted order, so every
    triangulation is reached along exactly one path.  ``mode="any"`` stops at
    the first triangulation; ``mode="exhaustive"`` enumerates all of them.
    """
    if mode not in ("any", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    g = _geometry(mesh)
    cands = sorted(candidate_tets(mesh))
    if not cands:
        return SearchResult(SearchStatus.NOT_TRIANGULABLE, count_of_triangulations=0)

    by_face: dict[tuple, list[tuple[Tet, int]]] = {}
    faces_of: dict[Tet, list[tuple[tuple, int]]] = {}
    vol = {t: g.volume(t) for t in cands}
    for t in cands:
        fl = []
        for tri, w in tet_faces(t):
            s = g.side(tri, w)
            by_face.setdefault(tri, []).append((t, s))
            fl.append((tri, s))
        faces_of[t] = fl

    nodes = 0
    solutions: list[frozenset] = []
    seen: set[frozenset] = set()
    best = {"min": None, "max": None}
    chosen: list[Tet] = []

    def record():
        sol = frozenset(chosen)
        if sol in seen:
            return
        seen.add(sol)
        solutions.append(sol)
        if best["min"] is None or len(sol) < len(best["min"]):
            best["min"] = sol
        if best["max"] is None or len(sol) > len(best["max"]):
            best["max"] = sol

    def rec(front: dict, vol_left: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if not front:
            if vol_left == 0:
                record()
                if mode == "any":
                    raise _Stop
            return
        f = min(front)
        need = front[f]
        for t, s in by_face.get(f, ()):
            if s != need or vol[t] > vol_left:
                continue
            if not all(g.compatible(t, c) for c in chosen):
                continue
            nxt = dict(front)
            ok = True
            for tri, ts in faces_of[t]:
                req = nxt.pop(tri, None)
                if req is None:
                    nxt[tri] = -ts
                elif req != ts:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(t)
            rec(nxt, vol_left - vol[t])
            chosen.pop()

    status = None
    try:
        rec(g.boundary_front(), g.total_volume)
    except _BudgetExceeded:
        status = SearchStatus.BUDGET_EXCEEDED
    except _Stop:
        status = SearchStatus.FOUND
    if status is None:
        status = SearchStatus.EXHAUSTED if solutions else SearchStatus.NOT_TRIANGULABLE

    def tri(sol):
        return None if sol is None else Triangulation(mesh.label, sol)

    if mode == "any" and status is SearchStatus.FOUND:
        return SearchResult(
            status,
            witness_min=tri(best["min"]),
            witness_max=tri(best["max"]),
            nodes_explored=nodes,
            n_candidates=len(cands),
        )
    return SearchResult(
        status,
        t_min=len(best["min"]) if best["min"] is not None else None,
        t_max=len(best["max"]) if best["max"] is not None else None,
        count_of_triangulations=len(solutions),
        witness_min=tri(best["min"]),
        witness_max=tri(best["max"]),
        nodes_explored=nodes,
        n_candidates=len(cands),
    )


def lower_bound(n: int, p: int) -> int:
    """Fewest tetrahedra any 3-triangulation of a genus-``p`` polyhedron on ``n`` vertices can use."""
    if n < 4 or p < 0:
        raise ValueError(f"need n >= 4 and p >= 0, got n={n}, p={p}")
    return n + 3 * (p - 1)


class Certificate(str, enum.Enum):
    PROVEN_MINIMAL = "proven-minimal"
    VALID_BUT_UNPROVEN = "valid-but-unproven"


@dataclass(frozen=True)
class Certification:
    verdict: Certificate
    size: int
    bound: int
    n: int
    genus: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "size": self.size,
            "bound": self.bound,
            "n": self.n,
            "genus": self.genus,
        }


def certify_minimal(mesh: TriMesh, witness) -> Certification:
    """A valid witness meeting the genus lower bound is a minimal triangulation."""
    tets = witness.tets if isinstance(witness, Triangulation) else witness
    verdict = is_valid_triangulation(mesh, tets)
    if not verdict:
        raise InvalidWitness(f"{verdict.condition}: {verdict.detail}")
    p = validate(mesh).genus
    bound = lower_bound(mesh.n_vertices, p)
    size = len(set(make_tet(t) for t in tets))
    v = Certificate.PROVEN_MINIMAL if size == bound else Certificate.VALID_BUT_UNPROVEN
    return Certification(v, size, bound, mesh.n_vertices, p)
