"""Acceptance criteria 1 to 10.

Each test prints one line of the form
``criterion N: PASS|FAIL  <elapsed>s / <limit>  <detail>`` and then asserts.
The lines are repeated in a summary section at the end of the pytest run.
"""

import json
import time

import oracles
from conftest import record_acceptance
from ptoroids.cli import main
from ptoroids.congraph import (
    MVerdict,
    branch_nodes,
    build_graph,
    check_m_division,
    is_single_cycle,
    isomorphic,
    load_fixture,
)
from ptoroids.constructions import (
    ConstructionError,
    attach_simple,
    bipyramid,
    chain_csaszar,
    chain_csaszar_shared_tet,
    csaszar,
    cycle_closure,
    octahedron,
    pyramid,
    schoenhardt,
    toroid_p9,
    unit_cube,
    unit_tetrahedron,
)
from ptoroids.engine import Certificate, SearchStatus, certify_minimal, is_valid_triangulation, lower_bound, search
from ptoroids.surface import edge_graph_is_complete, is_embedded, validate, write_off


class Criterion:
    """Timer plus failure collector for one criterion."""

    def __init__(self, number, limit=None):
        self.number, self.limit = number, limit
        self.failures = []
        self.notes = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is not None:
            self.failures.append(f"{exc[0].__name__}: {exc[1]}")
        if self.limit is not None and self.elapsed >= self.limit:
            self.failures.append(f"took {self.elapsed:.2f}s, limit {self.limit}s")
        verdict = "FAIL" if self.failures else "PASS"
        limit = f"< {self.limit}s" if self.limit is not None else "no limit"
        detail = "; ".join(self.failures or self.notes)
        record_acceptance(f"criterion {self.number}: {verdict}  {self.elapsed:.2f}s ({limit})  {detail}")
        return False


def _finish(c):
    assert not c.failures, "; ".join(c.failures)


def test_criterion_1_schoenhardt(tmp_path, capsys):
    path = tmp_path / "schoenhardt.off"
    path.write_text(write_off(schoenhardt().mesh))
    with Criterion(1, limit=1.0) as c:
        code = main(["--json", "triangulate", str(path)])
        rep = json.loads(capsys.readouterr().out)["search"]
        c.check(code == 2, f"exit code {code}")
        c.check(rep["status"] == "not-triangulable", rep["status"])
        c.check(rep["n_candidates"] == 0, f"{rep['n_candidates']} candidates")
        c.notes.append(f"status {rep['status']}, {rep['n_candidates']} candidate tets")
    _finish(c)


def test_criterion_2_pyramids():
    with Criterion(2, limit=10.0) as c:
        for n in range(4, 11):
            out = pyramid(n)
            r = search(out.mesh, "exhaustive")
            c.check(r.t_min == n - 3, f"n={n}: t_min {r.t_min}")
            cert = certify_minimal(out.mesh, r.witness_min)
            c.check(cert.verdict is Certificate.PROVEN_MINIMAL and cert.bound == n - 3, f"n={n}: {cert.verdict}")
        c.notes.append("t_min = n-3 proven for n=4..10")
    _finish(c)


def test_criterion_3_bipyramids():
    with Criterion(3, limit=30.0) as c:
        mins = {}
        for n, expected in ((5, 2), (6, 4), (7, 5)):
            out = bipyramid(n)
            r = search(out.mesh, "exhaustive")
            mins[n] = (r.t_min, r.t_max)
            c.check(r.t_min == expected, f"n={n}: t_min {r.t_min} != {expected}")
            m1, m2 = out.extras["method1"], out.extras["method2"]
            c.check(len(m1) == 2 * (n - 4) and is_valid_triangulation(out.mesh, m1.tets), f"n={n}: method 1")
            c.check(len(m2) == n - 2 and is_valid_triangulation(out.mesh, m2.tets), f"n={n}: method 2")
        c.check(mins[7][1] >= 6, f"n=7: t_max {mins[7][1]}")
        c.notes.append("(t_min, t_max) " + ", ".join(f"n={n}: {v}" for n, v in mins.items()))
    _finish(c)


def test_criterion_4_octahedron():
    with Criterion(4, limit=5.0) as c:
        r = search(octahedron(), "exhaustive")
        c.check(r.status is SearchStatus.EXHAUSTED, str(r.status))
        c.check((r.t_min, r.t_max) == (4, 4), f"sizes {r.t_min}..{r.t_max}")
        c.notes.append(f"{r.count_of_triangulations} triangulations, all of size {r.t_min}")
    _finish(c)


def test_criterion_5_csaszar():
    with Criterion(5) as c:
        out = csaszar()
        rep = validate(out.mesh)
        c.check((rep.V, rep.E, rep.F, rep.genus) == (7, 21, 14, 1), f"counts {rep.V},{rep.E},{rep.F} genus {rep.genus}")
        c.check(edge_graph_is_complete(out.mesh), "edge graph not complete")
        c.check(bool(is_embedded(out.mesh)), "not embedded")
        c.check(len(out.witness) == 7 and is_valid_triangulation(out.mesh, out.witness.tets), "witness")
        c.check(certify_minimal(out.mesh, out.witness).verdict is Certificate.PROVEN_MINIMAL, "not proven minimal")
        r = search(out.mesh, "exhaustive", budget=10**7)
        c.check(r.status is SearchStatus.EXHAUSTED and r.t_min == 7, f"exhaustive {r.status} t_min {r.t_min}")
        c.notes.append(f"exhaustive in {r.nodes_explored} nodes, t_min {r.t_min}, t_max {r.t_max}")
    _finish(c)


def _sweep_meshes():
    yield from ((pyramid(n).mesh, 0) for n in range(4, 11))
    yield from ((bipyramid(n).mesh, 0) for n in (5, 6, 7))
    yield octahedron(), 0
    yield csaszar().mesh, 1
    yield toroid_p9().mesh, 1
    yield chain_csaszar(2).mesh, 2
    yield chain_csaszar(3).mesh, 3


def test_criterion_6_bound_sweep():
    with Criterion(6) as c:
        checked = 0
        for mesh, p in _sweep_meshes():
            r = search(mesh, "exhaustive")
            c.check(r.status is SearchStatus.EXHAUSTED, f"{mesh.label}: {r.status}")
            bound = lower_bound(mesh.n_vertices, p)
            c.check(r.t_min >= bound, f"{mesh.label}: t_min {r.t_min} < {bound}")
            checked += 1
        c.notes.append(f"{checked} meshes, zero violations")
    _finish(c)


def test_criterion_7_equality():
    with Criterion(7, limit=60.0) as c:
        for p in (1, 2, 3):
            out = chain_csaszar(p)
            c.check(out.n == 4 * p + 3, f"p={p}: n {out.n}")
            c.check(len(out.witness) == 7 * p and is_valid_triangulation(out.mesh, out.witness.tets), f"p={p}: witness")
            c.check(certify_minimal(out.mesh, out.witness).verdict is Certificate.PROVEN_MINIMAL, f"p={p}: unproven")
            for k in (4, 5, 6):
                a = attach_simple(out, k)
                cert = certify_minimal(a.mesh, a.witness)
                c.check(
                    cert.verdict is Certificate.PROVEN_MINIMAL and cert.size == lower_bound(a.n, p),
                    f"p={p} k={k}: {cert.verdict}",
                )
        c.notes.append("chains p=1..3 and 9 attachments proven minimal")
    _finish(c)


def test_criterion_8_abstract_families():
    with Criterion(8, limit=1.0) as c:
        for p in range(2, 6):
            out = chain_csaszar_shared_tet(p)
            c.check(
                out.n == 3 * p + 4 and out.claimed_tmin == 6 * p + 1 == lower_bound(out.n, p),
                f"shared-tet p={p}: n {out.n}, claimed {out.claimed_tmin}",
            )
        for p in range(3, 6):
            try:
                out = cycle_closure(p)
            except ConstructionError as e:
                c.check(False, f"cycle_closure({p}): {e}")
                continue
            c.check(
                out.n == 3 * p and out.claimed_tmin == 6 * p == lower_bound(3 * p, p + 1),
                f"cycle_closure({p}): n {out.n}, claimed {out.claimed_tmin}",
            )
        c.notes.append("shared-tet p=2..5 and cycle_closure p=3..5 consistent")
    _finish(c)


def test_criterion_9_connection_graphs():
    with Criterion(9, limit=10.0) as c:
        p9 = toroid_p9()
        g = build_graph(p9.decomposition)
        c.check(g.n_nodes == 3 and g.cycle_rank == 1 and is_single_cycle(g), "P9 graph")
        c.check(check_m_division(p9.mesh, p9.decomposition).verdict is MVerdict.M_DIVISION, "P9 m-division")
        a, _ = load_fixture("fig5_six_pieces")
        b, _ = load_fixture("fig5_merged_middle")
        c.check(a.cycle_rank == b.cycle_rank == 2 and not isomorphic(a, b), "two-handle fixtures")
        f7, _ = load_fixture("fig7_branch")
        c.check(f7.cycle_rank == 2 and bool(branch_nodes(f7)), "branch fixture")
        f8, _ = load_fixture("fig8_face_chain_p3")
        c.check(f8.cycle_rank == 3, "face chain fixture")
        c.notes.append("P9 single cycle and m-division; fixture ranks 2, 2, 2, 3")
    _finish(c)


def _small_fixtures():
    yield from (pyramid(n).mesh for n in range(4, 9))
    yield from (pyramid(n, planar_base=False).mesh for n in range(5, 9))
    yield from (bipyramid(n).mesh for n in range(5, 9))
    yield from (octahedron(), csaszar().mesh, schoenhardt().mesh, unit_cube(), unit_tetrahedron())


def test_criterion_10_oracle_equivalence():
    with Criterion(10) as c:
        meshes = list(_small_fixtures())
        assert all(m.n_vertices <= 8 for m in meshes)
        for mesh in meshes:
            sols = oracles.enumerate_triangulations(mesh)
            sizes = [len(s) for s in sols]
            expected = (len(sols), min(sizes, default=None), max(sizes, default=None))
            r = search(mesh, "exhaustive")
            got = (r.count_of_triangulations, r.t_min, r.t_max)
            c.check(got == expected, f"{mesh.label}: search {got} vs oracle {expected}")
        c.notes.append(f"{len(meshes)} meshes match count, t_min and t_max")
    _finish(c)
