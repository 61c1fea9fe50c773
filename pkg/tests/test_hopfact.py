import json

import pytest

from helpers import z
from taftsmash.exactfield import CycloElem, primitive_roots
from taftsmash.hopfact import (
    InvalidAction,
    LinearAction,
    TaftAlgebra,
    build_smash,
    classify_linear_actions,
    coproduct,
    is_prime_smash,
    make_action,
    nondiagonal_obstruction,
    verify_module_algebra,
    verify_hopf_axioms,
)
from taftsmash.ncpoly import monomial_count, verify_confluence
from taftsmash.qcomb import q_int

M1 = CycloElem.rational(2, -1)


def test_coproduct_examples():
    lam = z(3)
    one = CycloElem.rational(3, 1)
    assert coproduct(0, 1, lam, 3) == {((1, 0), (0, 1)): one, ((0, 1), (0, 0)): one}
    for l in range(3):
        assert coproduct(l, 0, lam, 3) == {((l, 0), (l, 0)): one}
    # Delta(g) Delta(x) = gx (x) g + g^2 (x) gx
    assert coproduct(1, 1, lam, 3) == {((1, 1), (1, 0)): one, ((2, 0), (1, 1)): one}


def test_coproduct_coefficients_are_binomials():
    lam = z(5, 2)
    d = coproduct(0, 3, lam, 5)
    assert d[((2, 1), (0, 2))] == 1 + lam + lam ** 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hopf_axioms(n):
    for lam in primitive_roots(n):
        rep = verify_hopf_axioms(TaftAlgebra(n, lam))
        assert rep.passed, rep.failures[:3]
        assert set(rep.checks) >= {"coassociativity", "counit", "antipode"}


def test_antipode_of_x():
    H = TaftAlgebra(3, z(3))
    assert H.antipode((0, 1)) == H.elem(2, 1, -1)
    assert H.counit((0, 1)) == 0


def test_taft_requires_primitive_root():
    with pytest.raises(ValueError):
        TaftAlgebra(4, CycloElem.rational(2, -1))


def test_action_x_on_powers_of_v():
    mu = z(3)
    lam = mu ** 2
    act = make_action("qplane", 3, lam, mu)
    A = act.A
    assert act.act_x(A.monomial((0, 3))) == A.monomial((1, 2), q_int(3, lam))
    for i in range(4):
        for j in range(4):
            want = A.monomial((i + 1, j - 1), mu ** i * q_int(j, lam)) if j else A.zero()
            assert act.act_x(A.monomial((i, j))) == want
    assert act.act_g(A.one()) == A.one()
    assert act.act((2, 0), A.one()) == A.one()


def test_module_algebra_examples():
    assert verify_module_algebra(make_action("qplane", 2, M1, M1), 6).passed
    mu = z(3)
    assert verify_module_algebra(make_action("weyl", 3, mu ** -2, mu), 6).passed


def test_corrupted_action_fails():
    mu = z(3)
    act = make_action("qplane", 3, mu ** 2, mu, check=False)
    act.g_images["v"] = act.A.gen("v") * mu
    act._x_cache.clear()
    rep = verify_module_algebra(act, 3)
    assert not rep.passed
    # the x(uv) = mu x(vu) compatibility survives; the Taft relation xg = lam gx does not
    assert rep.checks["x_relations"]
    assert not rep.checks["xg_relation"]


def test_make_action_rejects_bad_data():
    with pytest.raises(InvalidAction):
        make_action("qplane", 2, M1, M1, family=3)
    with pytest.raises(InvalidAction):
        make_action("qplane", 2, M1, M1, eta=0)
    with pytest.raises(InvalidAction):
        make_action("affine3", 3, z(3), z(3), family=2)
    # mu = -1 on the commutative ring is not a module algebra for H_2(-1)
    with pytest.raises(InvalidAction):
        make_action("polyring", 2, M1, M1)


def test_classify_examples():
    fams = classify_linear_actions(2, M1, "qplane")
    assert sorted(f.family for f in fams) == [1, 2]
    assert classify_linear_actions(3, M1, "qplane") == []
    mu = z(3)
    fams = classify_linear_actions(3, mu, "weyl")
    fam1 = [f for f in fams if f.family == 1]
    assert len(fam1) == 1 and fam1[0].lam == mu ** -2


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 2), (4, 4), (6, 3)])
def test_classify_plane_families(n, m):
    mu = z(m)
    fams = classify_linear_actions(n, mu, "qplane")
    assert {f.family for f in fams} == {1, 2}
    for f in fams:
        lam = f.lam
        assert lam.multiplicative_order() == n
        if f.family == 1:
            assert f.beta == lam * f.alpha
        else:
            assert f.alpha == lam * f.beta
        assert verify_module_algebra(f.action, 4).passed


@pytest.mark.parametrize("n,m", [(3, 2), (4, 3), (5, 2), (6, 4)])
def test_classify_empty_when_order_does_not_divide(n, m):
    assert classify_linear_actions(n, z(m), "qplane") == []


def test_nondiagonal_obstruction():
    for kappa in (0, 1):
        assert all(b == ["1"] for b in nondiagonal_obstruction(kappa))


def test_smash_examples():
    s = build_smash(make_action("qplane", 2, M1, M1))
    P = s.presentation
    assert verify_confluence(P).passed
    assert monomial_count(P, (2, 2, 2, 2)) == 16
    mu = z(3)
    w = build_smash(make_action("weyl", 3, mu ** -2, mu)).presentation
    u, v = w.gen("u"), w.gen("v")
    assert v * u == (u * v - 1) * mu.inverse()
    lam = mu
    a = build_smash(make_action("affine3", 3, lam, mu)).presentation
    u, v, ww = a.gen("u"), a.gen("v"), a.gen("w")
    assert u * v == v * u * mu
    assert v * ww == ww * v * (lam * mu)
    assert ww * u == u * ww * mu


def test_smash_rules_follow_coproduct():
    mu = z(4)
    lam = z(4, 3)
    s = build_smash(make_action("qplane", 4, lam, mu, eta=3))
    P = s.presentation
    u, v, g, x = (P.gen(c) for c in "uvgx")
    assert g * u == u * g * mu
    assert g * v == v * g * (lam * mu)
    assert x * u == u * x * mu
    assert x * v == v * x * (lam * mu) + u * 3
    assert x * g == g * x * lam
    assert g ** 4 == P.one() and not x ** 4


def test_is_prime_examples():
    prime, w = is_prime_smash(build_smash(make_action("qplane", 2, M1, M1)))
    assert prime and w == w.P.gen("u")
    i4 = z(4)
    assert not is_prime_smash(build_smash(make_action("qplane", 4, i4, i4 ** 2)))[0]
    mu = z(3)
    prime, w = is_prime_smash(build_smash(make_action("weyl", 3, mu ** -2, mu)))
    assert prime and w == w.P.monomial((2, 0))


def test_action_json_round_trip():
    act = make_action("qplane", 3, z(3, 2), z(3))
    data = json.loads(json.dumps(act.to_json()))
    back = LinearAction.from_json(data)
    assert back.lam == act.lam and back.family == act.family
    assert all(back.g_images[g].terms == act.g_images[g].terms for g in act.A.gens)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 2), (4, 4), (6, 3)])
def test_is_prime_both_families(n, m):
    for f in classify_linear_actions(n, z(m), "qplane"):
        prime, w = is_prime_smash(build_smash(f.action))
        assert prime == (m == n)
        if prime:
            assert not f.action.act_x(w)
