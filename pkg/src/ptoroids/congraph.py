"""Convex decompositions of a solid and their graphs of connection."""

from __future__ import annotations

import enum
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional, Sequence

import networkx as nx

from .engine import (
    DEFAULT_BUDGET,
    SearchStatus,
    Triangulation,
    dumps,
    is_valid_triangulation,
    lower_bound,
    search,
    tet_faces,
)
from .geometry import (
    integer_scaled,
    orient3d,
    point_on_triangle,
    sub,
    triangle_normal,
    weakly_separated,
)
from .surface import (
    MeshError,
    TriMesh,
    enclosed_volume6,
    orient_outward,
    validate,
)

Face = tuple[int, int, int]


class DecompositionError(MeshError):
    pass


class NotConvexPiece(DecompositionError):
    pass


class VolumeMismatch(DecompositionError):
    pass


class UnmatchedFace(DecompositionError):
    pass


class OverlappingPieces(DecompositionError):
    pass


@dataclass(frozen=True)
class Piece:
    vertices: tuple[int, ...]
    faces: tuple[Face, ...]

    def __init__(self, vertices: Iterable[int], faces: Iterable[Sequence[int]]):
        object.__setattr__(self, "vertices", tuple(sorted(int(v) for v in vertices)))
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in faces))

    @property
    def face_keys(self) -> set[Face]:
        return {tuple(sorted(f)) for f in self.faces}


@dataclass(frozen=True)
class Decomposition:
    mesh: str
    pieces: tuple[Piece, ...]

    def __init__(self, mesh: str, pieces: Iterable[Piece]):
        object.__setattr__(self, "mesh", mesh)
        object.__setattr__(self, "pieces", tuple(pieces))

    @classmethod
    def from_tets(cls, label: str, tets: Iterable[Sequence[int]]) -> "Decomposition":
        """Every tetrahedron is its own convex piece."""
        pieces = []
        for t in sorted(tuple(sorted(t)) for t in tets):
            pieces.append(Piece(t, [tri for tri, _ in tet_faces(t)]))
        return cls(label, pieces)

    def remap(self, mapping, label: Optional[str] = None) -> "Decomposition":
        return Decomposition(
            self.mesh if label is None else label,
            [
                Piece([mapping[v] for v in p.vertices], [tuple(mapping[v] for v in f) for f in p.faces])
                for p in self.pieces
            ],
        )

    def to_dict(self) -> dict:
        return {
            "mesh": self.mesh,
            "pieces": [
                {"vertices": list(p.vertices), "faces": [list(f) for f in p.faces]}
                for p in self.pieces
            ],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Decomposition":
        return cls(data.get("mesh", ""), [Piece(p["vertices"], p["faces"]) for p in data["pieces"]])

    @classmethod
    def from_json(cls, text: str) -> "Decomposition":
        return cls.from_dict(json.loads(text))


def piece_mesh(mesh: TriMesh, piece: Piece, label: str = "") -> tuple[TriMesh, list[int]]:
    """The piece as a standalone outward-oriented mesh, plus local-to-global indices."""
    glob = list(piece.vertices)
    local = {v: i for i, v in enumerate(glob)}
    try:
        faces = [tuple(local[v] for v in f) for f in piece.faces]
    except KeyError as exc:
        raise DecompositionError(f"piece face uses vertex {exc.args[0]} outside the piece") from None
    coords = None if mesh.coords is None else tuple(mesh.coords[v] for v in glob)
    return orient_outward(TriMesh(len(glob), tuple(faces), coords, label)), glob


def _check_convex(pm: TriMesh, idx: int) -> None:
    pts = pm.int_coords
    for f in pm.faces:
        a, b, c = (pts[i] for i in f)
        for v, q in enumerate(pts):
            if v in f:
                continue
            o = orient3d(a, b, c, q)
            if o > 0:
                raise NotConvexPiece(f"piece {idx}: vertex lies outside the plane of face {f}")
            if o == 0 and point_on_triangle(q, a, b, c):
                raise NotConvexPiece(f"piece {idx}: a vertex lies on face {f}")


def _sat_features(pm: TriMesh):
    pts = pm.int_coords
    edges = [sub(pts[b], pts[a]) for a, b in pm.edges]
    normals = [triangle_normal(*(pts[i] for i in f)) for f in pm.faces]
    return edges, normals


@dataclass(frozen=True)
class DecompositionReport:
    n_pieces: int
    volume6: Fraction
    piece_volume6: tuple[Fraction, ...]
    contact_faces: tuple[Face, ...]
    sharing_rule: Optional[bool] = None
    sharing_violation: Optional[str] = None


def validate_decomposition(
    mesh: TriMesh, d: Decomposition, check_sharing: bool = False
) -> DecompositionReport:
    """Check convexity, face matching, pairwise interior disjointness and volume.

    Raises :class:`NotConvexPiece`, :class:`UnmatchedFace`,
    :class:`OverlappingPieces` or :class:`VolumeMismatch` naming the culprit.
    With ``check_sharing``, also reports whether every vertex or edge common to
    two pieces is reachable through contact faces that contain it.
    """
    mesh.require_coords()
    piece_meshes = []
    for i, piece in enumerate(d.pieces):
        if any(v < 0 or v >= mesh.n_vertices for v in piece.vertices):
            raise DecompositionError(f"piece {i} references a vertex outside the mesh")
        try:
            pm, _ = piece_mesh(mesh, piece, f"{d.mesh}[{i}]")
            rep = validate(pm)
        except MeshError as exc:
            raise NotConvexPiece(f"piece {i} is not a closed surface: {exc}") from exc
        if rep.genus != 0 or rep.components != 1:
            raise NotConvexPiece(f"piece {i} is not a topological ball")
        _check_convex(pm, i)
        piece_meshes.append(pm)

    owners: dict[Face, list[int]] = defaultdict(list)
    for i, piece in enumerate(d.pieces):
        for f in piece.face_keys:
            owners[f].append(i)
    boundary = mesh.face_keys
    for f in sorted(boundary):
        if len(owners.get(f, ())) != 1:
            raise UnmatchedFace(f"mesh face {f} belongs to {len(owners.get(f, ()))} pieces")
    contacts = []
    for f, who in sorted(owners.items()):
        if f in boundary:
            continue
        if len(who) != 2:
            raise UnmatchedFace(f"interior face {f} belongs to pieces {who}, expected exactly two")
        contacts.append(f)

    feats = [_sat_features(pm) for pm in piece_meshes]
    # separating-axis tests run in one common integer frame
    pts = integer_scaled(mesh.coords)
    for i, j in itertools.combinations(range(len(d.pieces)), 2):
        pi = [pts[v] for v in d.pieces[i].vertices]
        pj = [pts[v] for v in d.pieces[j].vertices]
        if not weakly_separated(pi, feats[i][0], feats[i][1], pj, feats[j][0], feats[j][1]):
            raise OverlappingPieces(f"pieces {i} and {j} have overlapping interiors")

    vols = tuple(enclosed_volume6(pm) for pm in piece_meshes)
    total = enclosed_volume6(mesh)
    if sum(vols) != total:
        raise VolumeMismatch(f"pieces sum to {sum(vols)} but the mesh encloses {total} (6x volume)")

    sharing = violation = None
    if check_sharing:
        sharing, violation = _sharing_rule(d, contacts, owners)
    return DecompositionReport(len(d.pieces), total, vols, tuple(contacts), sharing, violation)


def _sharing_rule(d: Decomposition, contacts, owners) -> tuple[bool, Optional[str]]:
    """Common vertices/edges of pieces must be joined by a chain of contact faces containing them."""
    simplices: dict[tuple, set[int]] = defaultdict(set)
    for i, p in enumerate(d.pieces):
        for f in p.faces:
            for v in f:
                simplices[(v,)].add(i)
            for a, b in itertools.combinations(sorted(f), 2):
                simplices[(a, b)].add(i)
    for s, who in sorted(simplices.items()):
        if len(who) < 2:
            continue
        g = nx.Graph()
        g.add_nodes_from(who)
        for f in contacts:
            if set(s) <= set(f):
                a, b = owners[f]
                g.add_edge(a, b)
        if not nx.is_connected(g):
            return False, f"pieces {sorted(who)} share {s} without a connecting chain of contact faces"
    return True, None


# -- graphs of connection -------------------------------------------------------------


@dataclass(frozen=True)
class ConnectionGraph:
    n_nodes: int
    edges: tuple[tuple[int, int, Optional[Face]], ...]

    def __init__(self, n_nodes: int, edges: Iterable[Sequence]):
        es = []
        for e in edges:
            a, b = int(e[0]), int(e[1])
            if a == b:
                raise ValueError(f"self-loop at node {a}")
            face = tuple(e[2]) if len(e) > 2 and e[2] is not None else None
            es.append((min(a, b), max(a, b), face))
        object.__setattr__(self, "n_nodes", int(n_nodes))
        object.__setattr__(self, "edges", tuple(sorted(es, key=lambda e: (e[0], e[1], e[2] or ()))))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n_nodes))
        g.add_edges_from((a, b) for a, b, _ in self.edges)
        return g

    @property
    def components(self) -> int:
        return nx.number_connected_components(self.to_networkx()) if self.n_nodes else 0

    @property
    def connected(self) -> bool:
        return self.n_nodes > 0 and self.components == 1

    @property
    def cycle_rank(self) -> int:
        """First Betti number: E - V + C."""
        return len(self.edges) - self.n_nodes + self.components

    def degrees(self) -> list[int]:
        deg = [0] * self.n_nodes
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def relabel(self, perm: Sequence[int]) -> "ConnectionGraph":
        return ConnectionGraph(self.n_nodes, [(perm[a], perm[b], f) for a, b, f in self.edges])

    def to_dict(self) -> dict:
        return {
            "nodes": self.n_nodes,
            "edges": [[a, b] for a, b, _ in self.edges],
            "cycle_rank": self.cycle_rank,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ConnectionGraph":
        return cls(data["nodes"], data["edges"])


def build_graph(d: Decomposition, mesh: Optional[TriMesh] = None, merge_coplanar: bool = False) -> ConnectionGraph:
    """One node per piece, one edge per contact face.

    With ``merge_coplanar`` (needs ``mesh`` coordinates), parallel edges whose
    contact triangles are coplanar and edge-adjacent collapse into one edge,
    so a polygonal contact face counts once.
    """
    owners: dict[Face, list[int]] = defaultdict(list)
    for i, p in enumerate(d.pieces):
        for f in p.face_keys:
            owners[f].append(i)
    edges = [(who[0], who[1], f) for f, who in sorted(owners.items()) if len(who) == 2]
    if merge_coplanar:
        if mesh is None:
            raise ValueError("merging coplanar contact faces needs the mesh coordinates")
        edges = _merge_coplanar(edges, mesh)
    return ConnectionGraph(len(d.pieces), edges)


def _merge_coplanar(edges, mesh: TriMesh):
    pts = mesh.int_coords
    groups: dict[tuple[int, int], list[Face]] = defaultdict(list)
    for a, b, f in edges:
        groups[(a, b)].append(f)
    out = []
    for (a, b), faces in sorted(groups.items()):
        # union-find over coplanar, edge-adjacent contact triangles
        parent = list(range(len(faces)))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for i, j in itertools.combinations(range(len(faces)), 2):
            fi, fj = faces[i], faces[j]
            if len(set(fi) & set(fj)) == 2:
                odd = (set(fj) - set(fi)).pop()
                if orient3d(*(pts[v] for v in fi), pts[odd]) == 0:
                    parent[find(j)] = find(i)
        for root in sorted({find(i) for i in range(len(faces))}):
            out.append((a, b, faces[root]))
    return out


def is_single_cycle(g: ConnectionGraph) -> bool:
    return g.connected and g.n_nodes > 0 and all(d == 2 for d in g.degrees()) and g.cycle_rank == 1


def is_planar(g: ConnectionGraph) -> bool:
    """Reported alongside the cycle rank; never used to reject a decomposition."""
    return nx.check_planarity(nx.Graph(g.to_networkx()))[0]


def isomorphic(g1: ConnectionGraph, g2: ConnectionGraph) -> bool:
    return nx.is_isomorphic(g1.to_networkx(), g2.to_networkx())


def graph_invariant(g: ConnectionGraph) -> tuple:
    """A relabeling-invariant fingerprint (equal for isomorphic graphs)."""
    simple = nx.Graph()
    simple.add_nodes_from(range(g.n_nodes))
    mult: dict[tuple[int, int], int] = defaultdict(int)
    for a, b, _ in g.edges:
        mult[(a, b)] += 1
    for (a, b), m in mult.items():
        simple.add_edge(a, b, m=str(m))
    return (
        g.n_nodes,
        len(g.edges),
        tuple(sorted(g.degrees())),
        nx.weisfeiler_lehman_graph_hash(simple, edge_attr="m"),
    )


def branch_nodes(g: ConnectionGraph) -> list[int]:
    """Nodes lying on no cycle (every incident edge is a bridge)."""
    mg = g.to_networkx()
    simple = nx.Graph(mg)
    bridges = set()
    for a, b in nx.bridges(simple):
        if mg.number_of_edges(a, b) == 1:
            bridges.add((min(a, b), max(a, b)))
    out = []
    for v in range(g.n_nodes):
        inc = [(min(a, b), max(a, b)) for a, b in mg.edges(v)]
        if inc and all(e in bridges for e in inc):
            out.append(v)
    return out


# -- m-division -----------------------------------------------------------------------


class MVerdict(str, enum.Enum):
    M_DIVISION = "m-division"
    NOT_M_DIVISION = "not-m-division"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class MDivisionResult:
    verdict: MVerdict
    piece_minima: tuple[Optional[int], ...]
    piece_sum: Optional[int]
    whole_minimum: Optional[int]
    how: str
    union_witness: Optional[Triangulation] = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "piece_minima": list(self.piece_minima),
            "piece_sum": self.piece_sum,
            "whole_minimum": self.whole_minimum,
            "how": self.how,
        }


def check_m_division(mesh: TriMesh, d: Decomposition, budget: int = DEFAULT_BUDGET) -> MDivisionResult:
    """Do minimal triangulations of the pieces form a minimal triangulation of the whole?"""
    validate_decomposition(mesh, d)
    minima: list[Optional[int]] = []
    union = set()
    for i, piece in enumerate(d.pieces):
        pm, glob = piece_mesh(mesh, piece, f"{d.mesh}[{i}]")
        res = search(pm, "exhaustive", budget)
        if res.status is not SearchStatus.EXHAUSTED:
            minima.append(None)
            continue
        minima.append(res.t_min)
        union |= {tuple(sorted(glob[v] for v in t)) for t in res.witness_min.tets}
    if any(m is None for m in minima):
        return MDivisionResult(MVerdict.UNDECIDED, tuple(minima), None, None, "a piece minimum is unsettled")
    total = sum(minima)
    witness = Triangulation(mesh.label, union)
    p = validate(mesh).genus
    bound = lower_bound(mesh.n_vertices, p)
    if len(union) == total and total == bound and is_valid_triangulation(mesh, union):
        return MDivisionResult(MVerdict.M_DIVISION, tuple(minima), total, total, "lower bound", witness)
    res = search(mesh, "exhaustive", budget)
    if res.status is not SearchStatus.EXHAUSTED:
        return MDivisionResult(MVerdict.UNDECIDED, tuple(minima), total, None, f"whole-mesh search {res.status.value}", witness)
    verdict = MVerdict.M_DIVISION if res.t_min == total else MVerdict.NOT_M_DIVISION
    return MDivisionResult(verdict, tuple(minima), total, res.t_min, "exhaustive search", witness)


# -- fixture graphs ------------------------------------------------------------------------


def load_fixture(name: str) -> tuple[ConnectionGraph, dict]:
    """A shipped graph fixture by name, with its metadata (expected cycle rank, caption)."""
    text = resources.files("ptoroids.data").joinpath(f"{name}.json").read_text()
    data = json.loads(text)
    return ConnectionGraph.from_dict(data), data


def fixture_names() -> list[str]:
    return sorted(
        p.name[:-5] for p in resources.files("ptoroids.data").iterdir() if p.name.endswith(".json")
    )


def _heptagon(offset: int) -> list[tuple[int, int]]:
    return [(offset + i, offset + (i + 1) % 7) for i in range(7)]


def face_chain_graph(p: int) -> ConnectionGraph:
    """``p`` heptagons joined in a row by ``p - 1`` single edges."""
    edges = []
    for k in range(p):
        edges += _heptagon(7 * k)
        if k:
            edges.append((7 * (k - 1) + 3, 7 * k))
    return ConnectionGraph(7 * p, edges)


def _shared_node_cycles(p: int, closed: bool) -> ConnectionGraph:
    # heptagon k uses local node 0 to meet heptagon k-1 and local node 3 to meet heptagon k+1
    ids: dict[tuple[int, int], int] = {}
    nxt = 0
    for k in range(p):
        for i in range(7):
            if i == 0 and k > 0:
                ids[(k, 0)] = ids[(k - 1, 3)]
            elif i == 3 and closed and k == p - 1:
                ids[(k, 3)] = ids[(0, 0)]
            else:
                ids[(k, i)] = nxt
                nxt += 1
    edges = [(ids[(k, i)], ids[(k, (i + 1) % 7)]) for k in range(p) for i in range(7)]
    return ConnectionGraph(nxt, edges)


def tet_chain_graph(p: int) -> ConnectionGraph:
    """``p`` heptagons in a row, consecutive ones sharing a node."""
    return _shared_node_cycles(p, closed=False)


def closed_tet_chain_graph(p: int) -> ConnectionGraph:
    """``p`` heptagons in a ring, consecutive ones sharing a node (one more cycle)."""
    return _shared_node_cycles(p, closed=True)
