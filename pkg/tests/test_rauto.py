import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from taftsmash.ncpoly import verify_confluence
from taftsmash.rauto import (
    Endomorphism,
    EvenParams,
    OddParams,
    build,
    build_even,
    build_odd,
    check_disc_preservation,
    compose,
    disc_preservation_detail,
    identity,
    inner_conjugation,
    inverse_even,
    is_homomorphism,
    is_identity,
    parity,
    random_params,
    relation_images,
    restricted_smash,
    slice_bijective,
    theorem_search,
)


def gens():
    S = restricted_smash()
    return S, S.gen("u"), S.gen("v"), S.gen("g"), S.gen("x")


def test_presentation_relations():
    S, u, v, g, x = gens()
    assert verify_confluence(S).passed
    assert u * v == -(v * u)
    assert v * x == x * v - u
    assert not x * x and g * g == S.one()


def test_identity():
    e = identity()
    assert e.restricted and is_homomorphism(e) and is_identity(e)
    assert parity(e)[0] == "even"
    assert slice_bijective(e, 4)


def test_odd_generator_image():
    S, u, v, g, x = gens()
    e = build_odd(OddParams())
    assert e.images["u"] == u * g - v * g * x * 2
    assert is_homomorphism(e)
    assert parity(e)[0] == "odd"


def test_even_with_beta3():
    S, u, v, g, x = gens()
    e = build_even(EvenParams(betas={3: 5}))
    assert e.images["v"] == v + u ** 3 * x * 5
    assert is_homomorphism(e)
    kind, p = parity(e)
    assert kind == "even" and p.betas == {3: Fraction(5)}


def test_swap_is_not_homomorphism():
    S, u, v, g, x = gens()
    e = Endomorphism({"u": v, "v": u, "g": g, "x": x})
    assert e.restricted
    assert not is_homomorphism(e)
    bad = {k for k, r in relation_images(e).items() if r}
    assert "gu+ug" in bad


def test_restricted_flag():
    S, u, v, g, x = gens()
    assert not Endomorphism({"u": u, "v": v, "g": g + x, "x": x}).restricted
    assert not Endomorphism({"u": u, "v": v, "g": g, "x": x * 0}).restricted
    assert Endomorphism({"u": u, "v": v, "g": -g, "x": x * 3}).restricted


@pytest.mark.parametrize("cls", [EvenParams, OddParams])
def test_params_validation(cls):
    with pytest.raises(ValueError):
        cls(alpha=0)
    with pytest.raises(ValueError):
        cls(eps=2)
    with pytest.raises(ValueError):
        cls(betas={2: 1})


def test_inverse_even_examples():
    p = EvenParams(alpha=2)
    q = inverse_even(p)
    assert q.alpha == Fraction(1, 2)
    assert is_identity(compose(build(p), build(q)))
    p = EvenParams(betas={1: 3})
    q = inverse_even(p)
    assert q.betas == {1: Fraction(-3)}
    assert is_identity(compose(build(q), build(p)))


def test_parity_table():
    # even o even = even, odd o odd = even, mixed = odd
    rng = random.Random(11)
    for k1 in ("even", "odd"):
        for k2 in ("even", "odd"):
            e = compose(build(random_params(rng, k1)), build(random_params(rng, k2)))
            want = "even" if k1 == k2 else "odd"
            assert is_homomorphism(e)
            assert parity(e)[0] == want


def test_disc_preservation_examples():
    assert check_disc_preservation(identity())
    assert check_disc_preservation(build_odd(OddParams(betas={1: 2})))
    S, u, v, g, x = gens()
    # u -> v is a valid substitution on the center but moves the discriminant locus
    bad = Endomorphism({"u": v, "v": u, "g": g, "x": x})
    d = disc_preservation_detail(bad)
    assert not d["ok"] and not d["u2_scalar_multiple"]


def test_random_draws():
    rng = random.Random(2024)
    for i in range(30):
        kind = "even" if i % 2 else "odd"
        p = random_params(rng, kind)
        e = build(p)
        assert e.restricted and is_homomorphism(e)
        got_kind, got = parity(e)
        assert got_kind == kind and got == p
        assert check_disc_preservation(e)


@given(st.integers(0, 10 ** 6))
def test_even_inverse_property(seed):
    p = random_params(random.Random(seed), "even")
    assert is_identity(compose(build(inverse_even(p)), build(p)))


def test_json_round_trip():
    e = build_odd(OddParams(alpha=Fraction(3, 2), theta=-2, eps=-1, betas={1: 1, 5: Fraction(-1, 3)}))
    back = Endomorphism.loads(json.dumps(e.to_json()))
    assert back == e and back.restricted


def test_inner_conjugation():
    e = inner_conjugation(1)
    S, u, v, g, x = gens()
    assert is_homomorphism(e) and e.restricted
    assert e.images["g"] == g and e.images["x"] == x
    assert parity(e)[0] == "neither"
    assert check_disc_preservation(e)
    assert slice_bijective(e, 4)
    assert is_identity(compose(inner_conjugation(-1), e))


def test_theorem_search_finds_inner_map():
    rep = theorem_search(1, 1, deg=3, samples_per_component=3, seed=0)
    assert rep.samples > 0 and rep.components > 0
    assert rep.samples == rep.even + rep.odd + rep.excluded + len(rep.counterexamples)
    assert not rep.passed
    assert any(c.get("bijective_on_slice") for c in rep.counterexamples)
    assert rep.as_dict()["passed"] is False
