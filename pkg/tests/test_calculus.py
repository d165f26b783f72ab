import random

from nwalgebra.calculus import (
    bracket_matrix,
    check_basic_rev,
    check_gen_leibniz,
    check_nz_antipode,
    check_ofbskew,
    check_prep_abstr_comm2,
    check_rhoD,
    check_skew_commutation,
    check_tower_invariance,
    find_commuting_cofactors,
    random_element,
)
from nwalgebra.disjoint import classify, search_complete
from nwalgebra.nichols_core import NicholsElement, multiply, right_derivative
from nwalgebra.nilcoxeter import skew_element


def test_failing_report_carries_counterexample(s3):
    from nwalgebra.calculus import IdentityReport, _fail

    z = NicholsElement.generator(s3, 0)
    rep = _fail("demo", {"p": 1}, 3, 9, degree=2, z=z, note="synthetic")
    assert rep.status == "fail" and not rep.passed
    assert rep.counterexample["degree"] == 2
    assert rep.counterexample["note"] == "synthetic"
    assert rep.counterexample["z"]["degree_components"][0]["degree"] == 1
    data = rep.to_json()
    assert data["status"] == "fail" and data["seed"] == 9
    ok = IdentityReport("demo", {}, 0, "pass")
    assert ok.passed and ok.to_json()["counterexample"] is None


def test_rhoD(s3, s4):
    assert check_rhoD(s3, trials=60, seed=7).passed
    assert check_rhoD(s4, trials=40, seed=7, max_degree=4).passed


def test_nz_antipode(s3, s4):
    r = check_nz_antipode(s3)
    assert r.passed and r.parameters["exponent"] == 6
    r = check_nz_antipode(s4, max_degree=6)
    assert r.passed and r.parameters["exponent"] == 12


def test_gen_leibniz_trivial_collapse(s3):
    # v = w: the skew factor is 1 and both sides are the same operator
    sys = s3.system
    wo = sys.longest_element()
    rng = random.Random(5)
    one = NicholsElement.unit(s3)
    assert skew_element(wo, wo, s3) == one
    for _ in range(10):
        z = random_element(s3, rng, rng.randint(0, 3))
        b = random_element(s3, rng, rng.randint(0, 2))
        lhs = right_derivative(multiply(b, z), one)
        assert lhs == multiply(b, z)


def test_gen_leibniz(s3, s4):
    sys = s3.system
    wo = sys.longest_element()
    e = sys.identity()
    assert check_gen_leibniz(s3, e, wo, e, trials=50, seed=3).passed
    s1 = sys.simple_reflection(0)
    s2 = sys.simple_reflection(1)
    assert check_gen_leibniz(s3, s1, wo, s1 * s2, trials=10, seed=4).passed
    assert check_gen_leibniz(s3, s2, s2 * s1, s2, trials=10, seed=5).passed
    sys4 = s4.system
    wo4 = sys4.longest_element()
    assert check_gen_leibniz(s4, sys4.identity(), wo4, sys4.identity(),
                             trials=2, seed=3, max_degree=4).passed
    w = sys4.from_permutation((2, 4, 1, 3))
    assert check_gen_leibniz(s4, sys4.simple_reflection(0), wo4, w,
                             trials=2, seed=6, max_degree=4).passed


def test_tower_invariance(s3, s4):
    sys = s3.system
    wo = sys.longest_element()
    for w in sys.elements():
        assert check_tower_invariance(s3, w, sys.simple_reflection(0),
                                      trials=4, seed=1).passed
    sys4 = s4.system
    w = sys4.from_permutation((2, 4, 1, 3))
    assert check_tower_invariance(s4, w, sys4.simple_reflection(1),
                                  trials=2, seed=1, max_degree=4).passed


def test_skew_commutation(s3, s4):
    sys = s3.system
    for w in sys.elements():
        for v in (sys.identity(), sys.simple_reflection(0)):
            r = check_skew_commutation(s3, w, v, trials=4, seed=2)
            assert r.status in ("pass", "skipped")
    sys4 = s4.system
    w = sys4.from_permutation((2, 4, 1, 3))
    r = check_skew_commutation(s4, w, sys4.identity(), trials=3, seed=2, max_degree=4)
    assert r.passed


def test_ofbskew_and_prep_abstr_comm2(s4):
    d = search_complete(s4.system)[0]
    assert check_ofbskew(s4, d, max_degree=6).passed
    w = next(w for w in d.elements if not w.is_identity())
    r = check_prep_abstr_comm2(s4, w, trials=8, seed=4, max_degree=6)
    assert r.passed and r.trials > 0


def test_prep_abstr_comm_general_w(s4):
    # the preparation lemma with the w w_o w^{-1} twist, for w outside the
    # centralizer of the longest element
    from nwalgebra.calculus import check_prep_abstr_comm

    sys = s4.system
    wo = sys.longest_element()
    outside = next(w for w in sys.elements()
                   if w * wo != wo * w and 0 < w.length() <= 2)
    r = check_prep_abstr_comm(s4, outside, trials=8, seed=5, max_degree=6)
    assert r.status in ("pass", "skipped")
    if r.status == "pass":
        assert r.trials > 0
    w2 = sys.from_permutation((2, 4, 1, 3))
    r = check_prep_abstr_comm(s4, w2, trials=8, seed=6, max_degree=6)
    assert r.passed and r.trials > 0


def test_basic_rev(s3, s4):
    assert check_basic_rev(s3, trials=40, seed=5).passed
    assert check_basic_rev(s4, trials=20, seed=5).passed


def test_bracket_r1(s4):
    sys = s4.system
    d = classify([sys.identity()], sys)
    matrix, report = bracket_matrix(d, list(d.elements), s4)
    assert report.passed
    assert matrix == [[s4.field.one]]


def test_bracket_r2(s4):
    d = search_complete(s4.system)[0]
    matrix, report = bracket_matrix(d, list(d.elements), s4)
    assert report.passed
    one = s4.field.one
    # l(w_o) = 6 is even, so every sign collapses to +1
    assert matrix == [[one, one], [one, one]]
    # symmetry of the sign
    assert matrix[0][1] == matrix[1][0]


def test_cofactors_dependent_case(s4):
    # orthogonal generators already commute: empty cofactors, scalar 1
    sys = s4.system
    r12 = sys.root_of_pair[(1, 2)]
    r34 = sys.root_of_pair[(3, 4)]
    res = find_commuting_cofactors((r12,), (r34,), {r12}, {r34}, 3, s4)
    assert res == ((), (), s4.field.one)


def test_cofactors_s3(s3):
    sys = s3.system
    a1, a2 = sys.simple_index
    res = find_commuting_cofactors((a1,), (a2,), {a1}, {a2}, 4, s3)
    assert res is not None
    yw, bw, scalar = res
    assert len(yw) + len(bw) <= 2
    u = multiply(NicholsElement.from_word(s3, yw),
                 multiply(NicholsElement.generator(s3, a1), NicholsElement.generator(s3, a2)))
    v = multiply(NicholsElement.from_word(s3, bw),
                 multiply(NicholsElement.generator(s3, a2), NicholsElement.generator(s3, a1)))
    assert not u.is_zero() and u == v.scale(scalar)


def test_cofactors_s4(s4):
    sys = s4.system
    a1 = sys.simple_index[0]
    theta12 = sys.index[(1, 1, 0)]
    res = find_commuting_cofactors((a1,), (theta12,), {a1}, {theta12}, 12, s4)
    assert res is not None
    yw, bw, scalar = res
    u = multiply(NicholsElement.from_word(s4, yw),
                 multiply(NicholsElement.generator(s4, a1), NicholsElement.generator(s4, theta12)))
    v = multiply(NicholsElement.from_word(s4, bw),
                 multiply(NicholsElement.generator(s4, theta12), NicholsElement.generator(s4, a1)))
    assert not u.is_zero() and u == v.scale(scalar)
    assert scalar != 0


def test_cofactors_exhausted_returns_none(s3):
    sys = s3.system
    a1, a2 = sys.simple_index
    # cap 0 admits no witness for a non-proportional pair
    assert find_commuting_cofactors((a1,), (a2,), {a1}, {a2}, 0, s3) is None
