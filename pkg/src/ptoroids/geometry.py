"""Exact rational geometry: points, affine maps and the predicates built on them.

Every predicate works on any exact number type that supports ``+ - *`` and
comparison with ``0`` (``int`` and :class:`fractions.Fraction`).  Nothing here
touches floating point.  Callers that run many predicates on one mesh usually
rescale coordinates to integers first (see :func:`integer_scaled`), which is
several times faster than working with ``Fraction`` directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

Rat = Fraction


class GeometryError(ValueError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class DegenerateTet(GeometryError):
    pass


def rat(value) -> Fraction:
    """Parse ``value`` into a Fraction; strings may be ``"p/q"`` or integers."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q'")
    return Fraction(value)


def format_rat(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x, y, z) -> "Point3":
        return cls(rat(x), rat(y), rat(z))

    def __add__(self, other):  # type: ignore[override]
        return Point3(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other):
        return Point3(self.x - other[0], self.y - other[1], self.z - other[2])

    def scale(self, k) -> "Point3":
        return Point3(self.x * k, self.y * k, self.z * k)


# -- vector helpers on plain 3-sequences -------------------------------------


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def sign(x) -> int:
    return (x > 0) - (x < 0)


def det3(u, v, w):
    return dot(u, cross(v, w))


def tet_volume6(a, b, c, d):
    """Signed six times the volume of ``abcd``: ``det[b-a, c-a, d-a]``."""
    return det3(sub(b, a), sub(c, a), sub(d, a))


def orient3d(a, b, c, d) -> int:
    """Sign of :func:`tet_volume6`; 0 iff the four points are coplanar."""
    return sign(tet_volume6(a, b, c, d))


def integer_scaled(points: Sequence[Sequence], factor: int = 1) -> list[tuple[int, int, int]]:
    """Multiply all coordinates by a common positive integer to clear denominators.

    Positive scaling preserves every predicate in this module, so the result can
    be used in their place.  ``factor`` is an extra multiplier (e.g. 4 so that
    tet centroids stay integral).
    """
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, Fraction(c).denominator)
    k = den * factor
    return [tuple(int(Fraction(c) * k) for c in p) for p in points]


# -- affine maps ---------------------------------------------------------------


def _mat_det(m) -> Fraction:
    return det3(m[0], m[1], m[2])


def _mat_inv(m):
    d = _mat_det(m)
    if d == 0:
        raise GeometryError("singular matrix")
    # rows of the inverse are cross products of columns of m
    cols = [(m[0][j], m[1][j], m[2][j]) for j in range(3)]
    r0 = cross(cols[1], cols[2])
    r1 = cross(cols[2], cols[0])
    r2 = cross(cols[0], cols[1])
    return tuple(tuple(Fraction(v) / d for v in row) for row in (r0, r1, r2))


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translation`` with exact rational entries."""

    linear: tuple = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    translation: tuple = (0, 0, 0)

    def __post_init__(self):
        object.__setattr__(
            self, "linear", tuple(tuple(rat(v) for v in row) for row in self.linear)
        )
        object.__setattr__(self, "translation", Point3.of(*self.translation))

    def __call__(self, p) -> Point3:
        m, t = self.linear, self.translation
        return Point3(dot(m[0], p) + t[0], dot(m[1], p) + t[1], dot(m[2], p) + t[2])

    def det(self) -> Fraction:
        return _mat_det(self.linear)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self ∘ inner``."""
        m = self.linear
        cols = [(inner.linear[0][j], inner.linear[1][j], inner.linear[2][j]) for j in range(3)]
        lin = tuple(tuple(dot(m[i], cols[j]) for j in range(3)) for i in range(3))
        return AffineMap(lin, self(inner.translation))

    @classmethod
    def translate(cls, v) -> "AffineMap":
        return cls(translation=tuple(v))

    @classmethod
    def from_frames(cls, src: Sequence, dst: Sequence) -> "AffineMap":
        """The unique map sending the four points ``src`` to ``dst``.

        ``src`` must be affinely independent.
        """
        s0, d0 = src[0], dst[0]
        su = [sub(p, s0) for p in src[1:4]]
        du = [sub(p, d0) for p in dst[1:4]]
        # linear @ S = D with S, D having the difference vectors as columns
        s_mat = tuple(tuple(su[j][i] for j in range(3)) for i in range(3))
        d_mat = tuple(tuple(du[j][i] for j in range(3)) for i in range(3))
        if _mat_det(s_mat) == 0:
            raise GeometryError("source frame is degenerate")
        s_inv = _mat_inv(s_mat)
        s_cols = [(s_inv[0][j], s_inv[1][j], s_inv[2][j]) for j in range(3)]
        lin = tuple(tuple(dot(d_mat[i], s_cols[j]) for j in range(3)) for i in range(3))
        partial = cls(lin)
        shift = sub(d0, partial(s0))
        return cls(lin, shift)


# -- low level incidence tests ------------------------------------------------


def _drop_axis(n) -> int:
    """Coordinate to drop when projecting a plane with normal ``n`` to 2D."""
    a = [abs(c) for c in n]
    return a.index(max(a))


def _proj(p, axis):
    if axis == 0:
        return (p[1], p[2])
    if axis == 1:
        return (p[2], p[0])
    return (p[0], p[1])


def _orient2d(a, b, c) -> int:
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def triangle_normal(a, b, c):
    return cross(sub(b, a), sub(c, a))


def _point_in_triangle_coplanar(p, a, b, c, n) -> bool:
    """Closed containment of a point already known to lie in plane ``abc``."""
    ax = _drop_axis(n)
    P, A, B, C = (_proj(q, ax) for q in (p, a, b, c))
    s = _orient2d(A, B, C)
    return (
        _orient2d(A, B, P) * s >= 0
        and _orient2d(B, C, P) * s >= 0
        and _orient2d(C, A, P) * s >= 0
    )


def point_on_triangle(p, a, b, c) -> bool:
    """True iff ``p`` lies on the closed triangle ``abc`` (assumed nondegenerate)."""
    if orient3d(a, b, c, p) != 0:
        return False
    return _point_in_triangle_coplanar(p, a, b, c, triangle_normal(a, b, c))


def point_on_segment(p, a, b) -> bool:
    d = sub(b, a)
    if cross(d, sub(p, a)) != (0, 0, 0):
        return False
    t = dot(sub(p, a), d)
    return 0 <= t <= dot(d, d)


def _lerp(p, q, t):
    return tuple(p[i] + (q[i] - p[i]) * t for i in range(3))


def segment_triangle_intersection(p, q, a, b, c) -> list:
    """Endpoints of ``[p, q] ∩ triangle(abc)``: ``[]``, one point, or two."""
    n = triangle_normal(a, b, c)
    dp = dot(n, sub(p, a))
    dq = dot(n, sub(q, a))
    if (dp > 0 and dq > 0) or (dp < 0 and dq < 0):
        return []
    if dp != 0 or dq != 0:
        t = Fraction(dp, dp - dq) if isinstance(dp, int) else dp / (dp - dq)
        x = _lerp(p, q, t)
        return [x] if _point_in_triangle_coplanar(x, a, b, c, n) else []
    # coplanar: clip the parameter interval against the three edge half-planes
    ax = _drop_axis(n)
    P, Q = _proj(p, ax), _proj(q, ax)
    tri = [_proj(v, ax) for v in (a, b, c)]
    s = _orient2d(*tri)
    lo, hi = Fraction(0), Fraction(1)
    for i in range(3):
        e0, e1 = tri[i], tri[(i + 1) % 3]
        # f(x) = s * orient2d(e0, e1, x) must be >= 0; f is affine along the segment
        def f(x):
            return s * ((e1[0] - e0[0]) * (x[1] - e0[1]) - (e1[1] - e0[1]) * (x[0] - e0[0]))

        fp, fq = f(P), f(Q)
        if fp < 0 and fq < 0:
            return []
        if fp < 0:
            lo = max(lo, Fraction(fp) / (fp - fq))
        elif fq < 0:
            hi = min(hi, Fraction(fp) / (fp - fq))
        if lo > hi:
            return []
    if lo == hi:
        return [_lerp(p, q, lo)]
    return [_lerp(p, q, lo), _lerp(p, q, hi)]


def segment_segment_intersection(p, q, r, s) -> list:
    """Endpoints of ``[p, q] ∩ [r, s]`` in 3D (both segments nondegenerate)."""
    d1, d2 = sub(q, p), sub(s, r)
    w = sub(r, p)
    if det3(d1, d2, w) != 0:
        return []
    n = cross(d1, d2)
    if n == (0, 0, 0):
        if cross(d1, w) != (0, 0, 0):
            return []  # parallel, distinct lines
        dd = dot(d1, d1)
        t0 = Fraction(dot(sub(r, p), d1)) / dd
        t1 = Fraction(dot(sub(s, p), d1)) / dd
        lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
        if lo > hi:
            return []
        if lo == hi:
            return [_lerp(p, q, lo)]
        return [_lerp(p, q, lo), _lerp(p, q, hi)]
    nn = dot(n, n)
    t = Fraction(dot(cross(w, d2), n)) / nn
    u = Fraction(dot(cross(w, d1), n)) / nn
    if 0 <= t <= 1 and 0 <= u <= 1:
        return [_lerp(p, q, t)]
    return []


def _in_hull_of(x, pts) -> bool:
    """Membership of ``x`` in the convex hull of 0-3 points (a simplex)."""
    if not pts:
        return False
    if len(pts) == 1:
        return tuple(x) == tuple(pts[0])
    if len(pts) == 2:
        return point_on_segment(x, pts[0], pts[1])
    return point_on_triangle(x, *pts)


def _common_points(u, v) -> list:
    vs = {tuple(p) for p in v}
    return [tuple(p) for p in u if tuple(p) in vs]


# -- triangle contact ---------------------------------------------------------


class TriangleContact(str, enum.Enum):
    DISJOINT = "disjoint"
    SHARED_VERTEX = "shared-vertex"
    SHARED_EDGE = "shared-edge"
    IDENTICAL = "identical"
    IMPROPER = "improper"


_CONTACT_BY_SHARED = {
    0: TriangleContact.DISJOINT,
    1: TriangleContact.SHARED_VERTEX,
    2: TriangleContact.SHARED_EDGE,
}


def _check_triangle(t) -> None:
    if triangle_normal(*t) == (0, 0, 0):
        raise DegenerateTriangle(f"zero-area triangle {t!r}")


def _bbox_disjoint(u, v) -> bool:
    for i in range(3):
        if max(p[i] for p in u) < min(p[i] for p in v):
            return True
        if max(p[i] for p in v) < min(p[i] for p in u):
            return True
    return False


def triangles_classify(t1: Sequence, t2: Sequence) -> TriangleContact:
    """Classify how two closed triangles meet.

    The intersection is proper when it is exactly the convex hull of the
    vertices the two triangles have in common (nothing, a vertex, an edge, or
    the whole triangle).  Anything else, crossing, overlap, or a vertex
    touching the other triangle's interior, is ``IMPROPER``.
    """
    _check_triangle(t1)
    _check_triangle(t2)
    shared = _common_points(t1, t2)
    if len(shared) == 3:
        return TriangleContact.IDENTICAL
    if not shared and _bbox_disjoint(t1, t2):
        return TriangleContact.DISJOINT
    n1 = triangle_normal(*t1)
    s2 = [sign(dot(n1, sub(p, t1[0]))) for p in t2]
    if not shared and (all(s > 0 for s in s2) or all(s < 0 for s in s2)):
        return TriangleContact.DISJOINT
    for (u, v) in ((t1, t2), (t2, t1)):
        for i in range(3):
            hits = segment_triangle_intersection(u[i], u[(i + 1) % 3], *v)
            for x in hits:
                if not _in_hull_of(x, shared):
                    return TriangleContact.IMPROPER
    return _CONTACT_BY_SHARED[len(shared)]


# -- tetrahedra -----------------------------------------------------------------


class TetContact(str, enum.Enum):
    INTERIORS_DISJOINT = "interiors-disjoint"
    IMPROPER_OVERLAP = "improper-overlap"


class Location(str, enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


_TET_FACES = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))
_TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _check_tet(t) -> None:
    if tet_volume6(*t) == 0:
        raise DegenerateTet(f"zero-volume tetrahedron {t!r}")


def point_in_tet(p, t: Sequence) -> Location:
    """Locate ``p`` against the closed tetrahedron ``t``."""
    _check_tet(t)
    signs = []
    for opp, f in enumerate(_TET_FACES):
        a, b, c = (t[i] for i in f)
        # positive when p is on the same side of the face as the opposite vertex
        signs.append(orient3d(a, b, c, p) * orient3d(a, b, c, t[opp]))
    if any(s < 0 for s in signs):
        return Location.OUTSIDE
    if all(s > 0 for s in signs):
        return Location.INSIDE
    return Location.BOUNDARY


def _projection_range(points, axis):
    vals = [dot(axis, p) for p in points]
    return min(vals), max(vals)


def weakly_separated(pa: Sequence, ea, fa, pb: Sequence, eb, fb) -> bool:
    """Separating-axis test for two convex polytopes, touching allowed.

    ``pa``/``pb`` are vertex coordinates, ``ea``/``eb`` edge direction vectors
    and ``fa``/``fb`` face normals.  Returns True iff some plane has one
    polytope on each closed side, i.e. their interiors are disjoint.
    """
    axes = list(fa) + list(fb)
    for u in ea:
        for v in eb:
            c = cross(u, v)
            if c != (0, 0, 0):
                axes.append(c)
    for ax in axes:
        lo_a, hi_a = _projection_range(pa, ax)
        lo_b, hi_b = _projection_range(pb, ax)
        if hi_a <= lo_b or hi_b <= lo_a:
            return True
    return False


def _tet_features(t):
    edges = [sub(t[j], t[i]) for i, j in _TET_EDGES]
    normals = [triangle_normal(t[i], t[j], t[k]) for i, j, k in _TET_FACES]
    return edges, normals


def tets_classify(A: Sequence, B: Sequence) -> TetContact:
    """Whether two closed tetrahedra meet only in a common face, edge, vertex or not at all."""
    _check_tet(A)
    _check_tet(B)
    ea, fa = _tet_features(A)
    eb, fb = _tet_features(B)
    if not weakly_separated(A, ea, fa, B, eb, fb):
        return TetContact.IMPROPER_OVERLAP
    shared = {tuple(p) for p in _common_points(A, B)}
    for u, v in ((A, B), (B, A)):
        for p in u:
            if tuple(p) not in shared and point_in_tet(p, v) is not Location.OUTSIDE:
                return TetContact.IMPROPER_OVERLAP
    for i, j in _TET_EDGES:
        for k, l in _TET_EDGES:
            for x in segment_segment_intersection(A[i], A[j], B[k], B[l]):
                if tuple(x) not in shared:
                    return TetContact.IMPROPER_OVERLAP
    return TetContact.INTERIORS_DISJOINT
