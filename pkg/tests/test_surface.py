from fractions import Fraction

import pytest

from ptoroids.constructions import (
    chain_csaszar,
    chain_csaszar_shared_tet,
    csaszar,
    octahedron,
    pyramid,
    schoenhardt,
    toroid_p9,
    unit_cube,
    unit_tetrahedron,
)
from ptoroids.congraph import piece_mesh
from ptoroids.geometry import Location
from ptoroids.surface import (
    AbstractMesh,
    DuplicateVertex,
    InvalidFace,
    NonTriangularFace,
    NotClosed,
    NotManifold,
    NotOrientable,
    ParseError,
    TriMesh,
    edge_graph_is_complete,
    enclosed_volume6,
    is_embedded,
    orient_consistently,
    parse_off,
    point_in_solid,
    validate,
    write_off,
)


def _translated(mesh, v):
    coords = tuple(tuple(c + d for c, d in zip(p, v)) for p in mesh.coords)
    return TriMesh(mesh.n_vertices, mesh.faces, coords, mesh.label)


# -- validation -----------------------------------------------------------------


def test_octahedron_counts():
    r = validate(octahedron())
    assert (r.V, r.E, r.F, r.euler_characteristic, r.genus) == (6, 12, 8, 2, 0)


def test_csaszar_counts():
    r = validate(csaszar().mesh)
    assert (r.V, r.E, r.F, r.euler_characteristic, r.genus) == (7, 21, 14, 0, 1)


def test_chain_of_two_has_genus_two():
    assert validate(chain_csaszar(2).mesh).genus == 2


@pytest.mark.parametrize(
    "mesh, p",
    [
        (pyramid(6).mesh, 0),
        (octahedron(), 0),
        (schoenhardt().mesh, 0),
        (csaszar().mesh, 1),
        (toroid_p9().mesh, 1),
        (chain_csaszar(2).mesh, 2),
        (chain_csaszar_shared_tet(3).mesh, 3),
    ],
    ids=lambda x: getattr(x, "label", str(x)),
)
def test_euler_characteristic_and_edge_identity(mesh, p):
    r = validate(mesh)
    assert r.euler_characteristic == 2 - 2 * p
    assert 3 * r.F == 2 * r.E


def test_open_surface_rejected():
    faces = unit_tetrahedron().faces[:-1]
    with pytest.raises(NotClosed):
        validate(TriMesh(4, faces))


def test_pinched_vertex_rejected():
    # two tetrahedra sharing only vertex 0
    a = ((0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3))
    b = tuple(tuple(v + 3 if v else 0 for v in f) for f in a)
    with pytest.raises(NotManifold):
        validate(TriMesh(7, a + b))


def test_inconsistent_orientation_rejected():
    faces = list(unit_tetrahedron().faces)
    faces[0] = faces[0][::-1]
    with pytest.raises(NotOrientable):
        validate(TriMesh(4, tuple(faces)))
    assert validate(orient_consistently(TriMesh(4, tuple(faces)))).genus == 0


def test_bad_faces_rejected():
    with pytest.raises(InvalidFace):
        validate(TriMesh(4, ((0, 0, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3))))
    with pytest.raises(InvalidFace):
        validate(TriMesh(4, ((0, 2, 9), (0, 1, 3), (0, 3, 2), (1, 2, 3))))


def test_duplicate_coordinates_rejected():
    t = unit_tetrahedron()
    coords = (t.coords[0],) + t.coords[:3]
    with pytest.raises(DuplicateVertex):
        validate(TriMesh(4, t.faces, coords))


# -- embedding and volume -------------------------------------------------------


def test_embedded_examples():
    assert is_embedded(octahedron())
    assert is_embedded(schoenhardt().mesh)
    assert is_embedded(csaszar().mesh)


def test_overlapping_tetrahedra_not_embedded():
    t = unit_tetrahedron()
    shifted = tuple(tuple(c + Fraction(1, 4) for c in p) for p in t.coords)
    faces = t.faces + tuple(tuple(v + 4 for v in f) for f in t.faces)
    two = TriMesh(8, faces, t.coords + shifted)
    assert validate(two).components == 2
    check = is_embedded(two)
    assert not check
    assert check.faces is not None


def test_abstract_mesh_refuses_geometry():
    m = chain_csaszar_shared_tet(2).mesh
    assert m.coords is None
    with pytest.raises(AbstractMesh):
        is_embedded(m)
    with pytest.raises(AbstractMesh):
        enclosed_volume6(m)


def test_volumes():
    assert enclosed_volume6(unit_cube()) == 6
    assert enclosed_volume6(unit_tetrahedron()) == 1
    c = csaszar().mesh
    assert enclosed_volume6(_translated(c, (Fraction(7, 3), -5, Fraction(1, 2)))) == enclosed_volume6(c)


def test_volume_positive_whatever_the_input_orientation():
    t = unit_tetrahedron()
    flipped = TriMesh(4, tuple(f[::-1] for f in t.faces), t.coords)
    assert enclosed_volume6(flipped) == 1


def test_p9_volume_is_sum_of_pieces():
    out = toroid_p9()
    pieces = [enclosed_volume6(piece_mesh(out.mesh, p)[0]) for p in out.decomposition.pieces]
    assert sum(pieces) == enclosed_volume6(out.mesh)


# -- point location -------------------------------------------------------------


def test_point_in_solid_tetrahedron():
    t = unit_tetrahedron()
    assert point_in_solid(t, (Fraction(1, 4),) * 3) is Location.INSIDE
    for v in t.coords:
        assert point_in_solid(t, v) is Location.BOUNDARY
    assert point_in_solid(t, (1, 1, 1)) is Location.OUTSIDE


def test_hole_of_p9_is_outside_for_several_rays():
    out = toroid_p9()
    center = out.extras["hole_center"]
    for d in ((1, 2, 3), (-3, 1, 7), (2, -5, 1), (0, 1, 11)):
        assert point_in_solid(out.mesh, center, d) is Location.OUTSIDE
    assert point_in_solid(out.mesh, center) is Location.OUTSIDE


def test_point_in_solid_independent_of_direction():
    m = csaszar().mesh
    probes = [(-2, 1, -2), (0, 0, 0), (-1, 3, -3), (5, 5, 5), (-3, 4, -1)]
    for q in probes:
        seen = set()
        for d in ((1, 2, 3), (-3, 1, 7), (2, -5, 1), (7, 1, -2)):
            try:
                seen.add(point_in_solid(m, q, d))
            except ValueError:
                continue
        assert len(seen) == 1


def test_edge_graph_completeness():
    assert edge_graph_is_complete(csaszar().mesh)
    assert not edge_graph_is_complete(octahedron())
    assert edge_graph_is_complete(unit_tetrahedron())


# -- OFF I/O --------------------------------------------------------------------


def test_round_trip_octahedron():
    o = octahedron()
    back = parse_off(write_off(o))
    assert back.coords == o.coords
    assert back.faces == o.faces
    assert back.label == o.label


def test_round_trip_abstract():
    m = chain_csaszar_shared_tet(2).mesh
    text = write_off(m)
    assert text.startswith("AOFF")
    back = parse_off(text)
    assert back.coords is None and validate(back).genus == 2


def test_quad_face_rejected_unless_fanned():
    text = "OFF\n5 5 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n4 0 3 2 1\n3 0 1 4\n3 1 2 4\n3 2 3 4\n3 3 0 4\n"
    with pytest.raises(NonTriangularFace):
        parse_off(text)
    m = parse_off(text, fan_convex=True)
    assert len(m.faces) == 6 and validate(m).genus == 0
    assert enclosed_volume6(m) == 2


def test_exact_rationals_preserved():
    text = "OFF\n4 4 0\n1/3 0 -2/5\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n"
    m = parse_off(text)
    assert m.coords[0] == (Fraction(1, 3), 0, Fraction(-2, 5))
    assert "1/3 0 -2/5" in write_off(m)


@pytest.mark.parametrize(
    "text, line",
    [
        ("PLY\n", 1),
        ("OFF\n4 4\n", 2),
        ("OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 x\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n", 6),
        ("OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 7\n3 1 2 3\n", 9),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_off(text)
    assert info.value.line == line
