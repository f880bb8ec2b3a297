import itertools

import pytest

from corpus import completing_vector, cube_model, standard_cp
from quasicob.charmodel import (CharacteristicModel, IsotropyModel, is_smooth, local_orders,
                                restrict_to_exceptional, validate_characteristic)
from quasicob.chern import verify_relation
from quasicob.cobordism import (FakeWeightedProjective, boundary_components, check_hirzebruch_schema,
                                choose_lambda0, comcob_relation, qbd_construction, qbd_decompose,
                                vertex_cut_relation, vertex_truncation)
from quasicob.errors import ModelError
from quasicob.polytope import polygon, prism, simplex, truncate_vertex


def seg(a, b):
    return CharacteristicModel(simplex(1), {"F1": (a,), "F2": (b,)})


def tri(labels):
    p = simplex(2)
    return CharacteristicModel(p, dict(zip(p.facets, labels)))


SQUARE = CharacteristicModel(polygon(4), {"F1": (1, 0), "F2": (0, 1), "F3": (-1, 0), "F4": (0, -1)})


def labels_of(comp):
    return sorted(comp.model.model.labels)


class TestQbd:
    def test_cp1(self):
        rel = qbd_decompose(seg(1, -1), (1,))
        assert rel.provenance == "qbd"
        assert [c.sign for c in rel.components] == [-1, 1, 1]
        assert rel.components[0].model.model == seg(1, -1)
        assert sorted(labels_of(c) for c in rel.components[1:]) == [[(-1,), (1,)], [(1,), (1,)]]
        assert verify_relation(rel).ok

    def test_cp1_values(self):
        check = verify_relation(qbd_decompose(seg(1, -1), (1,)))
        assert check.components[0] == {(1,): 2}
        assert sorted(c[(1,)] for c in check.components[1:]) == [0, 2]
        assert check.sums == {(1,): 0}

    def test_cp2_lambda0(self):
        rel = qbd_decompose(standard_cp(2), (1, 2))
        assert len(rel.components) == 4
        orig = set(standard_cp(2).labels)
        for c in rel.components[1:]:
            m = c.model.model
            assert m.polytope.is_simplex() and m.dim == 2
            labs = list(m.labels)
            assert (1, 2) in labs and len(set(labs) & orig) == 2

    def test_cp2_bad_lambda0(self):
        with pytest.raises(ModelError) as info:
            qbd_decompose(standard_cp(2), (1, 0))
        assert info.value.witness == ("F1", )

    def test_non_primitive_lambda0(self):
        with pytest.raises(ModelError, match="primitive"):
            qbd_decompose(standard_cp(2), (2, 4))

    def test_wrong_length_lambda0(self):
        with pytest.raises(ModelError):
            qbd_decompose(standard_cp(2), (1,))

    def test_orbifold_target(self):
        rel = qbd_decompose(tri([(1, 0), (0, 1), (-2, -3)]))
        comps = rel.components[1:]
        assert len(comps) == 3
        for c in comps:
            FakeWeightedProjective(c.model.model)
        assert any(o > 1 for c in comps for o in local_orders(c.model.model))
        assert verify_relation(rel).status == "unverifiable"

    def test_auto_lambda0(self):
        assert choose_lambda0(standard_cp(2)) == (-1, 1)
        assert qbd_decompose(standard_cp(2)).details["lambda0"] == [-1, 1]

    def test_square_smooth(self):
        lam = completing_vector(SQUARE)
        rel = qbd_decompose(SQUARE, lam)
        assert rel.all_smooth and verify_relation(rel).ok

    def test_cube_completion_relation(self):
        cube = cube_model()
        lam = completing_vector(cube)
        assert lam is not None
        rel = qbd_decompose(cube, lam)
        assert len(rel.components) == 9 and rel.all_smooth
        assert verify_relation(rel).ok

    def test_structure(self):
        c = qbd_construction(standard_cp(2), (1, 2))
        assert c.isotropy.marking.exceptional[0] == c.top
        assert len(c.truncation) == 3
        assert restrict_to_exceptional(c.isotropy, c.top) == standard_cp(2)
        for h in c.truncation:
            assert not c.isotropy.polytope.vertices_on({h, c.top})
            assert len(c.isotropy.polytope.vertices_on({h, c.bottom})) == 2
            assert len(c.isotropy.polytope.vertices_on({h})) == 3

    def test_invalid_target(self):
        with pytest.raises(ModelError):
            qbd_decompose(tri([(1, 0), (2, 0), (0, 1)]))


class TestBoundary:
    def test_prism(self):
        q = prism(simplex(2))
        m = IsotropyModel(q, ("BOTTOM", "TOP"), {"F1": (1, 0), "F2": (0, 1), "F3": (1, 1)})
        comps = boundary_components(m)
        assert len(comps) == 2 and comps[0] == comps[1]
        rel = comcob_relation(m)
        assert [c.sign for c in rel.components] == [1, 1]
        a, b = rel.components
        assert a.model.orientation == b.model.orientation.reversed()

    def test_prism_relation_vanishes(self):
        q = prism(simplex(2))
        m = IsotropyModel(q, ("BOTTOM", "TOP"), {"F1": (1, 0), "F2": (0, 1), "F3": (-1, -1)})
        rel = comcob_relation(m)
        assert rel.all_smooth and verify_relation(rel).ok
        assert verify_relation(rel).components[0][(1, 1)] == -verify_relation(rel).components[1][(1, 1)]

    def test_truncated_cube(self):
        q = prism(polygon(4))
        hs = []
        # Cut the four bottom corners; marking TOP plus the cuts.
        for v in [v for v in q.vertices if "BOTTOM" in v]:
            q, h = truncate_vertex(q, v)
            hs.append(h)
        labs = {"F1": (1, 0), "F2": (0, 1), "F3": (-1, 0), "F4": (0, -1), "BOTTOM": (1, 1)}
        m = IsotropyModel(q, ("TOP", *hs), labs)
        assert len(comcob_relation(m).components) == 5

    def test_invalid_rejected(self):
        q = prism(simplex(2))
        m = IsotropyModel(q, ("TOP",), {"F1": (1, 0), "F2": (0, 1), "F3": (1, 1), "BOTTOM": (1, 2)})
        with pytest.raises(ModelError):
            comcob_relation(m)


class TestVertexCut:
    def test_triangle(self):
        rel = vertex_cut_relation(simplex(2), {"F1": (1,), "F2": (1,), "F3": (2,)})
        assert rel.provenance == "vertexcut" and len(rel.components) == 3
        assert sorted(labels_of(c) for c in rel.components) == [[(1,), (1,)], [(1,), (2,)], [(1,), (2,)]]
        assert all(c.sign == 1 for c in rel.components)
        assert verify_relation(rel).status == "unverifiable"

    def test_square(self):
        rel = vertex_cut_relation(polygon(4), {f: (1,) for f in polygon(4).facets})
        assert len(rel.components) == 4 and rel.all_smooth
        check = verify_relation(rel)
        assert check.ok and all(c == {(1,): 0} for c in check.components)

    def test_tetrahedron(self):
        labs = {"F1": (1, 0), "F2": (0, 1), "F3": (1, 1), "F4": (1, 2)}
        rel = vertex_cut_relation(simplex(3), labs)
        assert len(rel.components) == 4
        assert all(c.model.model.polytope.is_simplex() and c.model.dim == 2 for c in rel.components)
        assert all(validate_characteristic(c.model.model).ok for c in rel.components)
        assert not rel.all_smooth

    def test_tetrahedron_has_no_smooth_labeling(self):
        # Every pair of facets of a tetrahedron shares an edge, so a smooth cut needs four
        # pairwise unimodular vectors in Z^2. Their classes mod 2 would be distinct and
        # nonzero, and there are only three, so none exist; confirm by search in a box.
        box = [v for v in itertools.product(range(-4, 5), repeat=2) if any(v)]
        adj = {a: {b for b in box if abs(a[0] * b[1] - a[1] * b[0]) == 1} for a in box}
        triangles = [(a, b, c) for a in box for b in adj[a] if b > a for c in adj[a] & adj[b] if c > b]
        assert triangles
        assert not any(adj[a] & adj[b] & adj[c] for a, b, c in triangles)

    def test_smooth_cube(self):
        cube = prism(polygon(4))
        labs = {"F1": (1, 0), "F3": (1, 0), "F2": (0, 1), "F4": (0, 1), "BOTTOM": (1, 1), "TOP": (1, 1)}
        rel = vertex_cut_relation(cube, labs)
        assert len(rel.components) == 8 and rel.all_smooth
        assert verify_relation(rel).ok

    def test_bad_labels(self):
        with pytest.raises(ModelError):
            vertex_cut_relation(simplex(2), {"F1": (1,), "F2": (0,), "F3": (2,)})

    def test_truncation_facets_are_simplices(self):
        cut, hs = vertex_truncation(prism(polygon(5)))
        from quasicob.polytope import facet_polytope
        assert len(hs) == 10 and all(facet_polytope(cut, h).is_simplex() for h in hs)


class TestHirzebruch:
    def setup_method(self):
        self.target = SQUARE
        self.lam = completing_vector(SQUARE)
        self.q = qbd_construction(SQUARE, self.lam).isotropy

    def test_pass(self):
        rep = check_hirzebruch_schema(self.target, self.q)
        assert rep.ok and rep.relation is not None
        assert all(rep.smooth_components) and len(rep.smooth_components) == 5
        assert rep.relation.components[0].sign == -1
        assert verify_relation(rep.relation).ok

    def test_condition_one(self):
        labels = self.q.label_map()
        labels["F2"] = (0, -1)
        bad = IsotropyModel(self.q.polytope, self.q.marking, labels)
        rep = check_hirzebruch_schema(self.target, bad, designated="TOP")
        assert not rep.ok and rep.relation is None
        c1 = [f for f in rep.failures if f.kind == "condition 1"]
        assert [f.witness for f in c1] == [("F2",)]

    def test_condition_two(self):
        labels = self.q.label_map()
        labels["BOTTOM"] = (1, 2)  # (1, 2) with (1, 0) has det 2; still outside every edge span
        bad = IsotropyModel(self.q.polytope, self.q.marking, labels)
        rep = check_hirzebruch_schema(self.target, bad)
        assert not rep.ok
        c2 = [f for f in rep.failures if f.kind == "condition 2"]
        assert c2 and all("BOTTOM" in f.witness for f in c2)
        assert {tuple(sorted(f.witness)) for f in c2} == {("BOTTOM", "F1"), ("BOTTOM", "F3")}
        assert not [f for f in rep.failures if f.kind == "condition 1"]

    def test_qbd_auto_lambda0_may_fail(self):
        # The auto choice only avoids spans; it need not complete every edge to a basis.
        q = qbd_construction(standard_cp(2)).isotropy
        rep = check_hirzebruch_schema(standard_cp(2), q)
        assert rep.ok == all(abs(d) == 1 for c in qbd_decompose(standard_cp(2)).components
                             for d in local_orders(c.model.model))

    def test_wrong_designated(self):
        with pytest.raises(ModelError):
            check_hirzebruch_schema(self.target, self.q, designated="F1")

    def test_is_smooth_target(self):
        assert is_smooth(self.target)
