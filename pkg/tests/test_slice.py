from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qgrkz import slice as sl
from qgrkz.rootsys import build
from qgrkz.slice import SliceProblem

from instances import A1_W4_0, A1_W4_2W, A1_WW0, A2_W1W2_0, SMALL, problem, random_instances


def test_validation_errors():
    d = build("A1")
    with pytest.raises(ValueError, match="minuscule"):
        SliceProblem(d, [(2,)], (0,))
    with pytest.raises(ValueError, match="below"):
        SliceProblem(d, [(1,), (1,)], (1,))
    with pytest.raises(ValueError, match="dominant"):
        SliceProblem(d, [(1,), (1,)], (-2,))


def test_fixed_point_examples():
    p = problem(*A1_WW0)
    assert [x.delta for x in p.fixed_points] == [((1,), (-1,)), ((-1,), (1,))]
    assert len(problem(*A1_W4_0).fixed_points) == 6
    a2 = problem(*A2_W1W2_0)
    assert len(a2.fixed_points) == 3
    for x in a2.fixed_points:
        assert x.delta[1] == tuple(-c for c in x.delta[0])


@pytest.mark.parametrize("inst", SMALL + random_instances(8, seed=5))
def test_count_matches_tensor_multiplicity(inst):
    p = problem(*inst)
    assert len(p.fixed_points) == sl.weight_multiplicity(p.datum, p.lambdas, p.mu)
    for x in p.fixed_points:
        assert x.sigma[-1] == p.mu


def test_tangent_example():
    prob = problem(*A1_WW0)
    p, q = prob.fixed_points
    assert sl.tangent_multiplicity(prob, p, (1,), 0) == 1
    assert sl.tangent_multiplicity(prob, p, (-1,), -1) == 1
    assert sum(sl.tangent_weights(prob, p).values()) == 2
    assert sl.tangent_multiplicity(prob, p, (1,), 1) == 0
    assert sl.tangent_multiplicity(prob, p, (3,), 0) == 0
    with pytest.raises(ValueError):
        sl.tangent_multiplicity(prob, p, (3,), 0, strict=True)
    assert dict(sl.tangent_weights(prob, q)) == {((1,), -1): 1, ((-1,), 0): 1}


@pytest.mark.parametrize("inst", SMALL)
def test_tangent_identities(inst):
    prob = problem(*inst)
    for x in prob.fixed_points:
        assert sum(sl.tangent_weights(prob, x).values()) == prob.dimension
        mult = sl.a_multiplicities(prob, x)
        assert mult == sl.a_multiplicities_from_crossings(prob, x)
        for r in prob.datum.roots:
            assert mult[r.root] == mult[prob.datum.negative_of(r).root]


def test_reversed_crossing_changes_dimension(monkeypatch):
    prob = problem(*A1_W4_2W)
    monkeypatch.setattr(sl, "CROSSING_DIRECTION", -1)
    dims = {sum(sl.tangent_weights(prob, x).values()) for x in prob.fixed_points}
    assert dims != {prob.dimension}


def test_bundle_weights():
    prob = problem(*A1_WW0)
    p = prob.fixed_points[0]
    assert sl.bundle_weight(prob, p, 1, "E") == (0.5,)
    for x in prob.fixed_points:
        assert sl.bundle_weight(prob, x, 0) == (0,)
        assert sl.bundle_weight(prob, x, prob.l) == prob.datum.form_functional(prob.mu)
    with pytest.raises(IndexError):
        sl.bundle_weight(prob, p, 0, "E")
    with pytest.raises(IndexError):
        sl.bundle_weight(prob, p, 3)


def test_t_star_p1_curve():
    prob = problem(*A1_WW0)
    proj = [c for c in sl.enumerate_curves(prob) if c.kind == sl.PROJECTIVE]
    assert len(proj) == 1
    c = proj[0]
    assert (c.i, c.j, c.root, c.n) == (0, 2, (1,), 0)
    assert c.q.delta == ((-1,), (1,))
    assert sl.curve_class(prob, c) == (1, -1)
    assert sl.curve_degree(prob, c, 1) == 1


def test_affine_curve_has_no_class():
    prob = problem(*A1_WW0)
    aff = [c for c in sl.enumerate_curves(prob) if c.kind == sl.AFFINE]
    # the two non-compact directions -a - h and a - h, one at each point
    assert sorted((c.root, c.n) for c in aff) == [((-1,), -1), ((1,), -1)]
    with pytest.raises(ValueError, match="non-compact"):
        sl.curve_class(prob, aff[0])


def test_a2_projective_curves_at_each_point():
    prob = problem(*A2_W1W2_0)
    curves = [c for c in sl.enumerate_curves(prob) if c.kind == sl.PROJECTIVE]
    for x in prob.fixed_points:
        roots = {c.root if c.p == x else tuple(-v for v in c.root) for c in curves if x in (c.p, c.q)}
        expected = {r.root for r in prob.datum.roots if sl.pair(x.sigma[1], r.root) == 1}
        assert roots == expected


@pytest.mark.parametrize("inst", SMALL)
def test_curve_descriptions_match_tangent_weights(inst):
    prob = problem(*inst)
    for x in prob.fixed_points:
        assert Counter(c.weight for c in sl.curve_descriptions(prob, x)) == sl.tangent_weights(prob, x)


@pytest.mark.parametrize("inst", SMALL)
def test_curve_classes(inst):
    prob = problem(*inst)
    for c in sl.enumerate_curves(prob):
        if c.kind != sl.PROJECTIVE:
            continue
        cls = sl.curve_class(prob, c)
        assert sum(cls) == 0
        assert sl.is_effective(cls)
        for k in range(1, prob.l + 1):
            assert sl.curve_degree(prob, c, k) - sl.curve_degree(prob, c, k - 1) == cls[k - 1]


def test_is_effective():
    assert sl.is_effective((1, -1))
    assert sl.is_effective((1, 0, -1))
    assert not sl.is_effective((-1, 1))
    assert not sl.is_effective((1, 0))


def test_betti_t_star_p1():
    prob = problem(*A1_WW0)
    d = prob.datum
    ind = sl.attractor_indices(prob, d.default_chamber())
    p, q = prob.fixed_points
    assert (ind[p], ind[q]) == (2, 1)
    assert sl.betti_ranks(prob, d.default_chamber()) == {1: 1, 2: 1}
    assert sl.betti_ranks(prob, d.default_chamber().opposite()) == {1: 1, 2: 1}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(SMALL), st.lists(st.integers(-20, 20).filter(bool), min_size=4, max_size=4))
def test_betti_chamber_independent(inst, raw):
    prob = problem(*inst)
    d = prob.datum
    xi = [r + Fraction(k, 101) for k, r in enumerate(raw[: d.rank])]
    try:
        ch = d.chamber(xi)
    except ValueError:
        return
    ranks = sl.betti_ranks(prob, ch)
    assert ranks == sl.betti_ranks(prob, d.default_chamber())
    assert sum(ranks.values()) == len(prob.fixed_points)


def test_wall_examples():
    prob = problem(*A1_WW0)
    comps = sl.wall_components(prob, (1,), 0)
    assert len(comps) == 1
    assert comps[0].m == 1 and not comps[0].has_affine_line
    assert all(len(c.points) == 1 and c.m == 0 for c in sl.wall_components(prob, (1,), 5))


def test_wall_affine_lines_follow_curves():
    # affine-line components sit at n = -1 and n = 3 for this slice; the
    # closed formula would predict n in {0, 1}
    prob = problem(*A1_W4_2W)
    found = {n for n in range(-5, 6) if any(c.has_affine_line for c in sl.wall_components(prob, (1,), n))}
    assert found == {-1, 3}
    assert {n for n in range(-5, 6) if sl.affine_line_by_formula(prob, (1,), n)} == {0, 1}
