from fractions import Fraction

import pytest

from qgrkz import kzrep, stabops
from qgrkz.rootsys import build
from qgrkz.verify import random_chambers

from instances import A1_WW0, A2_W1W1W2_W1, A2_W1W2_0, A2_W1X3_0, A3_W2X3_W2, C2_W2W2_0, D4_W1W1_0, problem

SIMPLY_LACED = [A1_WW0, A2_W1W2_0, A2_W1X3_0, A2_W1W1W2_W1, D4_W1W1_0]


def test_a1_defining_rep():
    d = build("A1")
    rep = kzrep.MinusculeRep(d, (1,), d.default_chamber())
    assert rep.e[(1,)] == {((1,), (-1,)): 1}
    assert rep.f[(1,)] == {((-1,), (1,)): 1}
    assert rep.h((1,)) == {((1,), (1,)): 1, ((-1,), (-1,)): -1}


def test_a2_chain():
    d = build("A2")
    rep = kzrep.MinusculeRep(d, d.fundamental_coweight(0), d.default_chamber())
    assert len(rep.weights) == 3
    a1 = d.root_by_vector(d.simple_root(0))
    low = tuple(x - y for x, y in zip(d.fundamental_coweight(0), a1.coroot))
    assert rep.e[a1.root] == {(d.fundamental_coweight(0), low): 1}


def test_rep_rejects_bad_input():
    c2 = build("C2")
    with pytest.raises(ValueError):
        kzrep.MinusculeRep(c2, c2.fundamental_coweight(1), c2.default_chamber())
    a2 = build("A2")
    with pytest.raises(ValueError):
        kzrep.MinusculeRep(a2, (1, 1), a2.default_chamber())


@pytest.mark.parametrize("name,k", [("A3", 1), ("D4", 0), ("D4", 3), ("E6", 0)])
def test_relations_hold_for_other_chambers(name, k):
    d = build(name)
    for ch in random_chambers(d, 2, seed=k):
        kzrep.MinusculeRep(d, d.fundamental_coweight(k), ch)


def test_casimir_root_a1():
    prob = problem(*A1_WW0)
    m = kzrep.casimir_root(prob, 1, 2, (-1,))
    assert m.entries == {(1, 0): 1}
    assert kzrep.casimir_root(prob, 1, 2, (1,)).column(0) == {}


@pytest.mark.parametrize("inst", SIMPLY_LACED + [A3_W2X3_W2])
def test_direct_rule_matches_oracle_on_simple_roots(inst):
    prob = problem(*inst)
    c = prob.datum.default_chamber()
    reps = kzrep.build_reps(prob, c)
    for r in c.simple_roots():
        for gamma in (r.root, prob.datum.negative_of(r).root):
            assert kzrep.casimir_root(prob, 1, 2, gamma) == kzrep.casimir_root_oracle(prob, reps, 1, 2, gamma)


def test_direct_rule_sign_on_non_simple_root():
    # the 0/1 chain basis gives a -1 structure constant for the highest root
    prob = problem(*A2_W1W2_0)
    c = prob.datum.default_chamber()
    reps = kzrep.build_reps(prob, c)
    top = max(c.positive_roots(), key=lambda r: sum(r.root))
    direct = kzrep.casimir_root(prob, 1, 2, top.root)
    oracle = kzrep.casimir_root_oracle(prob, reps, 1, 2, top.root)
    assert set(direct.entries) == set(oracle.entries)
    assert oracle == direct.scale(-1)


@pytest.mark.parametrize("inst", SIMPLY_LACED + [A3_W2X3_W2])
def test_casimir_chamber_matches_stable_side(inst):
    prob = problem(*inst)
    c = prob.datum.default_chamber()
    reps = kzrep.build_reps(prob, c)
    for i in range(1, prob.l + 1):
        for j in range(1, prob.l + 1):
            if i != j:
                assert kzrep.casimir_chamber(prob, reps, i, j, c) == stabops.omega_chamber(prob, i, j, c)
                assert kzrep.casimir_chamber(prob, reps, i, j, c.opposite()) == stabops.omega_chamber(prob, i, j, c.opposite(), c)


def test_full_casimir_is_chamber_independent():
    prob = problem(*A2_W1X3_0)
    c = prob.datum.default_chamber()
    reps = kzrep.build_reps(prob, c)
    base = kzrep.casimir_chamber(prob, reps, 1, 2, c) + kzrep.casimir_chamber(prob, reps, 1, 2, c.opposite())
    assert base == kzrep.casimir_full(prob, reps, 1, 2)


@pytest.mark.parametrize("name,a,b", [("A1", 0, 0), ("A2", 0, 1), ("A3", 1, 1), ("D4", 0, 2)])
def test_casimir_commutes_with_diagonal_action(name, a, b):
    d = build(name)
    c = d.default_chamber()
    ra = kzrep.MinusculeRep(d, d.fundamental_coweight(a), c)
    rb = kzrep.MinusculeRep(d, d.fundamental_coweight(b), c)
    assert kzrep.casimir_invariance_defect(d, ra, rb) is None


def test_casimir_zero_and_hat_h_a1():
    prob = problem(*A1_WW0)
    z = kzrep.casimir_zero(prob, 1, 2)
    assert z[(0, 0)] == Fraction(-1, 2)
    assert z[(0, 0)] + z[(1, 1)] == -1
    assert kzrep.hat_h(prob, 1) == stabops.h_term(prob, 1)


@pytest.mark.parametrize("inst", SIMPLY_LACED)
def test_hat_h_sum(inst):
    prob = problem(*inst)
    d = prob.datum
    total = kzrep.hat_h(prob, 1)
    for i in range(2, prob.l + 1):
        total = total + kzrep.hat_h(prob, i)
    want = stabops.linear_form(d, prob.mu, d.form(prob.mu, prob.mu) / 2)
    assert total == stabops.OperatorMatrix.scalar(total.size, want)


def test_kz_a1_order3_matches_hatted():
    prob = problem(*A1_WW0)
    c = prob.datum.default_chamber()
    for i in (1, 2):
        assert kzrep.kz_matrix(prob, i, c, 3) == stabops.connection(prob, i, c, 3, hatted=True)


def test_kz_order_zero_is_constant_part():
    prob = problem(*A2_W1X3_0)
    c = prob.datum.default_chamber()
    for i in range(1, prob.l + 1):
        assert kzrep.kz_matrix(prob, i, c, 0) == stabops.connection(prob, i, c, 0, hatted=True)


def test_kz_rejects_non_simply_laced():
    prob = problem(*C2_W2W2_0)
    with pytest.raises(ValueError):
        kzrep.kz_matrix(prob, 1, prob.datum.default_chamber(), 2)
