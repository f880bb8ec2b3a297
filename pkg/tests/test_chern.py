import random
from fractions import Fraction

import pytest

from corpus import smooth_model, standard_cp
from quasicob.charmodel import CharacteristicModel, OmniorientedModel, vertex_sign
from quasicob.chern import (_evaluate, chern_number, chern_numbers, generic_points, partitions,
                            tangent_weights, weight_system)
from quasicob.errors import InvariantViolation, ModelError
from quasicob.polytope import simplex


def seg(a, b):
    return CharacteristicModel(simplex(1), {"F1": (a,), "F2": (b,)})


def test_partitions():
    assert list(partitions(1)) == [(1,)]
    assert list(partitions(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(list(partitions(6))) == 11


class TestWeights:
    def test_cp1(self):
        m = seg(1, -1)
        assert tangent_weights(m, ["F1"]) == [(1,)]
        assert tangent_weights(m, ["F2"]) == [(-1,)]

    def test_cp2_identity_vertex(self):
        assert tangent_weights(standard_cp(2), ["F1", "F2"]) == [(1, 0), (0, 1)]

    def test_trivial_segment(self):
        ws = weight_system(seg(1, 1))
        assert ws.weights == [[(1,)], [(1,)]] and ws.signs == [1, -1]

    def test_dual_basis(self):
        rng = random.Random(3)
        for _ in range(10):
            m = smooth_model(rng)
            p = m.polytope
            for v in p.vertices:
                w = tangent_weights(m, v)
                labs = [m.label(f) for f in p.ordered(v)]
                assert [[sum(a * b for a, b in zip(wi, lj)) for lj in labs] for wi in w] == \
                    [[int(i == j) for j in range(m.dim)] for i in range(m.dim)]

    def test_singular(self):
        m = CharacteristicModel(simplex(2), {"F1": (1, 0), "F2": (0, 1), "F3": (-2, -3)})
        with pytest.raises(ModelError):
            tangent_weights(m, ["F1", "F3"])
        with pytest.raises(ModelError):
            chern_number(m, (2,))


class TestAnchors:
    def test_cp1(self):
        assert chern_number(seg(1, -1), (1,)) == 2

    def test_cp2(self):
        m = standard_cp(2)
        assert chern_number(m, (1, 1)) == 9
        assert chern_number(m, (2,)) == 3

    def test_cp3(self):
        assert chern_number(standard_cp(3), (3,)) == 4
        assert chern_numbers(standard_cp(3)) == {(3,): 4, (2, 1): 24, (1, 1, 1): 64}

    def test_trivial_segment(self):
        assert chern_number(seg(1, 1), (1,)) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_top_chern_is_euler_characteristic(self, n):
        assert chern_number(standard_cp(n), (n,)) == n + 1

    @pytest.mark.parametrize("model, omega, value", [
        (seg(1, -1), (1,), 2),
        (standard_cp(2), (1, 1), 9),
        (standard_cp(2), (2,), 3),
        (standard_cp(3), (3,), 4),
        (seg(1, 1), (1,), 0),
    ])
    def test_two_points_agree(self, model, omega, value):
        ws = weight_system(model)
        pts = generic_points(ws, model.dim, count=4)
        assert len(set(pts)) == 4
        assert {_evaluate(ws, omega, t) for t in pts} == {Fraction(value)}

    def test_bad_partition(self):
        with pytest.raises(ModelError):
            chern_number(standard_cp(2), (1,))


class TestProperties:
    @pytest.mark.parametrize("seed", range(20))
    def test_top_chern_is_signed_vertex_count(self, seed):
        m = OmniorientedModel(smooth_model(random.Random(seed)))
        assert chern_number(m, (m.dim,)) == sum(vertex_sign(m, v) for v in m.polytope.vertices)

    @pytest.mark.parametrize("seed", range(20))
    def test_reversal_negates(self, seed):
        m = OmniorientedModel(smooth_model(random.Random(seed)))
        r = m.reversed()
        assert {k: -v for k, v in chern_numbers(m).items()} == chern_numbers(r)

    @pytest.mark.parametrize("seed", range(20))
    def test_point_independence(self, seed):
        m = smooth_model(random.Random(seed))
        ws = weight_system(m)
        pts = generic_points(ws, m.dim, count=3)
        for omega in partitions(m.dim):
            assert len({_evaluate(ws, omega, t) for t in pts}) == 1

    def test_disagreement_is_detected(self, monkeypatch):
        # Dropping fixed points leaves a rational function that is not constant.
        from quasicob import chern
        real = chern.weight_system

        def partial(m):
            ws = real(m)
            return chern.WeightSystem(ws.vertices[:1], ws.weights[:1], ws.signs[:1])

        monkeypatch.setattr(chern, "weight_system", partial)
        with pytest.raises(InvariantViolation):
            chern_number(standard_cp(2), (1, 1))
