"""Slow, independent reference implementations used to cross-check the library."""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx

from ptoroids.engine import candidate_tets, is_valid_triangulation
from ptoroids.geometry import TetContact, tet_volume6, tets_classify
from ptoroids.surface import enclosed_volume6


def _v(p):
    return tuple(Fraction(c) for c in p)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def segment_in_triangle(p, q, tri):
    """Parameters [lo, hi] of the part of segment pq inside the closed triangle, or None.

    Every triangle constraint is linear in t, so the feasible set is an interval.
    """
    p, q = _v(p), _v(q)
    a, b, c = (_v(x) for x in tri)
    d = _sub(q, p)
    n = _cross(_sub(b, a), _sub(c, a))
    lo, hi = Fraction(0), Fraction(1)
    # plane: n.(p + t d - a) = 0
    alpha, beta = _dot(n, d), _dot(n, _sub(p, a))
    if alpha == 0:
        if beta != 0:
            return None
    else:
        t = -beta / alpha
        lo, hi = max(lo, t), min(hi, t)
    for u, w in ((a, b), (b, c), (c, a)):
        inward = _cross(n, _sub(w, u))
        alpha, beta = _dot(inward, d), _dot(inward, _sub(p, u))
        # alpha t + beta >= 0
        if alpha == 0:
            if beta < 0:
                return None
        elif alpha > 0:
            lo = max(lo, -beta / alpha)
        else:
            hi = min(hi, -beta / alpha)
    if lo > hi:
        return None
    return lo, hi


def _point(p, q, t):
    p, q = _v(p), _v(q)
    return tuple(x + t * (y - x) for x, y in zip(p, q))


def _in_hull(x, pts):
    if not pts:
        return False
    if len(pts) == 1:
        return x == pts[0]
    if len(pts) == 2:
        a, b = pts
        ab, ax = _sub(b, a), _sub(x, a)
        if _cross(ab, ax) != (0, 0, 0):
            return False
        s = _dot(ax, ab)
        return 0 <= s <= _dot(ab, ab)
    return True  # three common points: the triangles coincide


def classify_triangles(t1, t2) -> str:
    """Reference contact classification for two nondegenerate triangles."""
    t1 = [_v(p) for p in t1]
    t2 = [_v(p) for p in t2]
    common = [p for p in t1 if p in t2]
    pieces = []
    for src, dst in ((t1, t2), (t2, t1)):
        for i in range(3):
            p, q = src[i], src[(i + 1) % 3]
            hit = segment_in_triangle(p, q, dst)
            if hit is not None:
                pieces.append(_point(p, q, hit[0]))
                pieces.append(_point(p, q, hit[1]))
    if not pieces:
        return "disjoint"
    if not all(_in_hull(x, common) for x in pieces):
        return "improper"
    return {1: "shared-vertex", 2: "shared-edge", 3: "identical"}[len(common)]


def nondegenerate_quadruples(mesh) -> set:
    pts = mesh.coords
    return {
        q for q in itertools.combinations(range(mesh.n_vertices), 4)
        if tet_volume6(*(pts[i] for i in q)) != 0
    }


def enumerate_triangulations(mesh) -> list[frozenset]:
    """All 3-triangulations by clique enumeration over pairwise compatible inner tets.

    A triangulation is a maximal set of interior-disjoint inner tets (any other
    inner tet would overlap the covered solid), so it is a maximal clique of
    the compatibility graph whose volumes add up to the solid's volume.
    """
    cands = sorted(candidate_tets(mesh))
    pts = mesh.coords
    vol = {t: abs(tet_volume6(*(pts[i] for i in t))) for t in cands}
    g = nx.Graph()
    g.add_nodes_from(cands)
    for s, t in itertools.combinations(cands, 2):
        if tets_classify([pts[i] for i in s], [pts[i] for i in t]) is TetContact.INTERIORS_DISJOINT:
            g.add_edge(s, t)
    total = enclosed_volume6(mesh)
    found = set()
    for clique in nx.find_cliques(g):
        if sum(vol[t] for t in clique) != total:
            continue
        if is_valid_triangulation(mesh, clique):
            found.add(frozenset(clique))
    return sorted(found, key=sorted)
