"""Shared builders for the test suite."""

from fractions import Fraction

from taftsmash.exactfield import CycloElem, LaurentQ
from taftsmash.hopfact import build_smash, make_action
from taftsmash.ncpoly import (
    NCElem,
    ore_family,
    polynomial_ring,
    quantum_affine3,
    quantum_matrices,
    quantum_plane,
    quantum_weyl,
    taft_presentation,
)


def z(n, p=1):
    return CycloElem.zeta(n, p)


def builtin_presentations():
    """Every built-in presentation, keyed by a short name."""
    z3, m1 = z(3), CycloElem.rational(2, -1)
    return {
        "qplane": quantum_plane(z3),
        "weyl": quantum_weyl(z3),
        "polyring": polynomial_ring(1),
        "affine3": quantum_affine3(z3, z3),
        "qmatrices": quantum_matrices(z3),
        "taft3": taft_presentation(3, z3),
        "ore": ore_family(1, 1),
        "ore_weyl": ore_family(3, -2, 1),
        "smash_plane2": build_smash(make_action("qplane", 2, m1, m1)).presentation,
        "smash_weyl3": build_smash(make_action("weyl", 3, z3 ** -2, z3)).presentation,
    }


def random_coeff(rng, P):
    num = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    if P.ring.kind == "laurent_q":
        N = P.ring.conductor
        return LaurentQ(N, {rng.randint(-1, 2): num, 0: Fraction(rng.randint(-2, 2))})
    N = P.ring.conductor
    c = CycloElem.rational(N, num)
    if N > 2 and rng.random() < 0.5:
        c = c + CycloElem.zeta(N, rng.randrange(N)) * rng.randint(-2, 2)
    return c


def random_monomial(rng, P, max_exp=2):
    out = []
    for i in range(P.nvars):
        cap = P.power[i][0] - 1 if i in P.power else max_exp
        out.append(rng.randint(0, min(cap, max_exp)))
    return tuple(out)


def random_element(rng, P, nterms=3, max_exp=2):
    acc = P.zero()
    for _ in range(nterms):
        acc = acc + P.monomial(random_monomial(rng, P, max_exp), random_coeff(rng, P))
    return acc


def random_word(rng, P, length=5):
    return [rng.choice(P.gens) for _ in range(length)]


def as_elem(P, terms):
    return NCElem(P, dict(terms))
