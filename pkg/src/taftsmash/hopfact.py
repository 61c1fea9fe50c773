"""Taft algebras, their linear actions on two-generator algebras, smash products.

The Taft algebra H_n(lam) has basis g^l x^k (0 <= l, k < n) with
g^n = 1, x^n = 0, xg = lam gx, g grouplike and Delta(x) = g (x) x + x (x) 1.
An action is stored by the images of the target's generators under g and x;
on products, g acts as an automorphism and x as a twisted derivation
x(ab) = g(a) x(b) + x(a) b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactfield import CycloElem, primitive_roots
from .ncpoly import (
    NCElem,
    Presentation,
    apply_endomorphism,
    cyclo_ring,
    polynomial_ring,
    quantum_affine3,
    quantum_matrices,
    quantum_plane,
    taft_presentation,
)
from .qcomb import q_binomial


class InvalidAction(ValueError):
    pass


# ---------------------------------------------------------------------------
# the Hopf algebra


class TaftAlgebra:
    def __init__(self, n, lam):
        if n < 2:
            raise ValueError("n must be at least 2")
        if lam.multiplicative_order() != n:
            raise ValueError("lam must be a primitive n-th root of unity")
        self.n = n
        self.lam = lam
        self.P = taft_presentation(n, lam)
        self.one_mono = (0, 0)
        self._delta = {}

    def basis(self):
        return [(l, k) for l in range(self.n) for k in range(self.n)]

    def elem(self, l, k, c=1):
        return self.P.monomial((l % self.n, k), c)

    def mul(self, a, b):
        return self.P._mono_mul(a, b)

    def counit(self, mono):
        return 1 if mono[1] == 0 else 0

    def coproduct(self, l, k):
        key = (l, k)
        if key not in self._delta:
            self._delta[key] = coproduct(l, k, self.lam, self.n)
        return self._delta[key]

    def antipode(self, mono):
        """S(g^l x^k) = S(x)^k S(g)^l with S(g) = g^(n-1), S(x) = -g^(n-1) x."""
        n = self.n
        l, k = mono
        Sg = self.elem(n - 1, 0)
        Sx = self.elem(n - 1, 1, -1)
        return (Sx ** k) * (Sg ** l)


def coproduct(l, k, lam, n=None):
    """Delta(g^l x^k) as {(left mono, right mono): coeff} with monos (g-exp, x-exp)."""
    out = {}
    for i in range(k + 1):
        c = q_binomial(k, i, lam)
        if c:
            left = ((l + i) % n if n else l + i, k - i)
            right = (l % n if n else l, i)
            out[(left, right)] = c
    return out


def _tensor_mul(H, a, b):
    out = {}
    for (a1, a2), c in a.items():
        for (b1, b2), d in b.items():
            cd = c * d
            for m1, e1 in H.mul(a1, b1).items():
                for m2, e2 in H.mul(a2, b2).items():
                    key = (m1, m2)
                    v = out[key] + cd * e1 * e2 if key in out else cd * e1 * e2
                    if v:
                        out[key] = v
                    else:
                        del out[key]
    return out


def _elem_coproduct(H, e):
    """Delta applied linearly to an element of the Taft presentation."""
    out = {}
    for mono, c in e.terms.items():
        for key, d in H.coproduct(*mono).items():
            v = out[key] + c * d if key in out else c * d
            if v:
                out[key] = v
            else:
                del out[key]
    return out


@dataclass
class Report:
    passed: bool
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def record(self, name, ok, detail=None):
        self.checks[name] = self.checks.get(name, True) and bool(ok)
        if not ok:
            self.passed = False
            self.failures.append((name, detail))


def verify_hopf_axioms(H):
    """Coassociativity, counit, antipode and multiplicativity of Delta and epsilon."""
    rep = Report(True)
    P = H.P
    one = P.one()
    for mono in H.basis():
        delta = H.coproduct(*mono)
        # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
        left, right = {}, {}
        for (a, b), c in delta.items():
            for (a1, a2), d in H.coproduct(*a).items():
                key = (a1, a2, b)
                left[key] = left.get(key, 0) + c * d
            for (b1, b2), d in H.coproduct(*b).items():
                key = (a, b1, b2)
                right[key] = right.get(key, 0) + c * d
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        rep.record("coassociativity", left == right, mono)
        # counit: (eps (x) id) Delta = id = (id (x) eps) Delta
        elem = P.monomial(mono)
        lhs = sum((P.monomial(b, c) for (a, b), c in delta.items() if H.counit(a)), P.zero())
        rhs = sum((P.monomial(a, c) for (a, b), c in delta.items() if H.counit(b)), P.zero())
        rep.record("counit", lhs == elem and rhs == elem, mono)
        # antipode: m(S (x) id)Delta = eps 1 = m(id (x) S)Delta
        target = one * H.counit(mono)
        s_left = sum((H.antipode(a) * P.monomial(b, c) for (a, b), c in delta.items()), P.zero())
        s_right = sum((P.monomial(a, c) * H.antipode(b) for (a, b), c in delta.items()), P.zero())
        rep.record("antipode", s_left == target and s_right == target, mono)
    # Delta and eps are algebra maps: check on all basis pairs
    for a in H.basis():
        da = H.coproduct(*a)
        for b in H.basis():
            prod = P.monomial(a) * P.monomial(b)
            lhs = _elem_coproduct(H, prod)
            rhs = _tensor_mul(H, da, H.coproduct(*b))
            rep.record("coproduct_multiplicative", lhs == rhs, (a, b))
            eps_prod = sum((c for m, c in prod.terms.items() if H.counit(m)), 0)
            rep.record("counit_multiplicative",
                       eps_prod == H.counit(a) * H.counit(b), (a, b))
    # antipode respects the defining relations (it is an anti-homomorphism)
    n = H.n
    Sg, Sx = H.antipode((1, 0)), H.antipode((0, 1))
    rep.record("antipode_relations",
               Sg ** n == one and not (Sx ** n) and Sg * Sx == Sx * Sg * H.lam)
    return rep


# ---------------------------------------------------------------------------
# actions


TARGETS = ("qplane", "weyl", "affine3", "qmatrices", "polyring")


@dataclass
class LinearAction:
    """Data of a linear Taft action on a target algebra.

    ``k`` is the chosen integer with lam = mu^k when one exists (None otherwise).
    """

    n: int
    lam: CycloElem
    mu: CycloElem
    eta: CycloElem
    family: int
    target: str
    A: Presentation
    g_images: dict
    x_images: dict
    k: int | None = None

    def __post_init__(self):
        self._x_cache = {}

    @property
    def m(self):
        return self.mu.multiplicative_order()

    @property
    def taft(self):
        return TaftAlgebra(self.n, self.lam)

    # -- the action on elements ------------------------------------------

    def act_g(self, e, power=1):
        for _ in range(power):
            e = apply_endomorphism(self.g_images, e, self.A)
        return e

    def _x_mono(self, mono):
        hit = self._x_cache.get(mono)
        if hit is not None:
            return hit
        A = self.A
        first = next((i for i, e in enumerate(mono) if e), None)
        if first is None:
            out = A.zero()
        else:
            rest = list(mono)
            rest[first] -= 1
            rest = A.monomial(tuple(rest))
            s = A.gens[first]
            # x(s * rest) = g(s) x(rest) + x(s) rest
            out = self.g_images[s] * self.act_x(rest) + self.x_images[s] * rest
        self._x_cache[mono] = out
        return out

    def act_x(self, e, power=1):
        for _ in range(power):
            acc = self.A.zero()
            for mono, c in e.terms.items():
                acc = acc + self._x_mono(mono) * c
            e = acc
        return e

    def act(self, h, e):
        """Action of the basis element g^l x^k (h = (l, k)) on e."""
        l, k = h
        return self.act_g(self.act_x(e, k), l)

    def to_json(self):
        def enc(d):
            return {g: d[g].to_json() for g in self.A.gens}

        return {
            "schema": "taftsmash.action/1",
            "n": self.n, "lam": self.lam.to_json(), "mu": self.mu.to_json(),
            "eta": self.eta.to_json(), "k": self.k, "family": self.family,
            "target": self.target, "presentation": self.A.to_json(),
            "g_images": enc(self.g_images), "x_images": enc(self.x_images),
        }

    @classmethod
    def from_json(cls, data):
        A = Presentation.from_json(data["presentation"])

        def dec(d):
            return {g: NCElem(A, {tuple(t["exp"]): A.ring.decode(t["coeff"]) for t in d[g]})
                    for g in A.gens}

        return cls(int(data["n"]), CycloElem.from_json(data["lam"]),
                   CycloElem.from_json(data["mu"]), CycloElem.from_json(data["eta"]),
                   int(data["family"]), data["target"], A, dec(data["g_images"]),
                   dec(data["x_images"]), data.get("k"))


def lift_exponent(lam, mu, n):
    """Smallest k >= 0 with lam = mu^k, or None."""
    for k in range(n * mu.multiplicative_order()):
        if mu ** k == lam:
            return k
    return None


def target_algebra(target, mu, lam=None):
    if target == "qplane":
        return quantum_plane(mu)
    if target == "weyl":
        return quantum_plane(mu, kappa=1)
    if target == "affine3":
        return quantum_affine3(mu, lam)
    if target == "qmatrices":
        return quantum_matrices(mu)
    if target == "polyring":
        return polynomial_ring(mu.conductor)
    raise InvalidAction(f"unknown target {target!r}")


def _common(n, mu, lam, eta):
    N = math.lcm(n, mu.conductor, lam.conductor)
    mu, lam = mu.embed(N), lam.embed(N)
    eta = CycloElem.rational(N, 1) if eta is None else (
        eta.embed(N) if isinstance(eta, CycloElem) else CycloElem.rational(N, eta))
    return N, mu, lam, eta


def make_action(target, n, lam, mu, family=1, eta=None, check=True):
    """The linear action of the stated family on the named target algebra."""
    N, mu, lam, eta = _common(n, mu, lam, eta)
    if not eta:
        raise InvalidAction("eta must be nonzero")
    A = target_algebra(target, mu, lam)
    G = A.gens_dict()
    if target in ("qplane", "weyl", "polyring"):
        u, v = G["u"], G["v"]
        if family == 1:
            gi = {"u": u * mu, "v": v * (lam * mu)}
            xi = {"u": A.zero(), "v": u * eta}
        elif family == 2:
            gi = {"u": u * (lam * mu.inverse()), "v": v * mu.inverse()}
            xi = {"u": v * eta, "v": A.zero()}
        else:
            raise InvalidAction("family must be 1 or 2")
    elif target == "affine3":
        if family != 1:
            raise InvalidAction("affine3 only carries the family-1 action")
        u, v, w = G["u"], G["v"], G["w"]
        gi = {"u": u * mu, "v": v * (lam * mu), "w": w * (lam * lam * mu)}
        xi = {"u": A.zero(), "v": u * eta, "w": v * eta}
    elif target == "qmatrices":
        if family != 1:
            raise InvalidAction("qmatrices only carries the family-1 action")
        a, b, c, d = G["a"], G["b"], G["c"], G["d"]
        mi = mu.inverse()
        gi = {"a": a * mu, "b": b * mu, "c": c * mi, "d": d * mi}
        xi = {"a": A.zero(), "b": A.zero(), "c": a * eta, "d": b * eta}
    else:
        raise InvalidAction(f"unknown target {target!r}")
    act = LinearAction(n, lam, mu, eta, family, target, A, gi, xi, lift_exponent(lam, mu, n))
    if check:
        rep = verify_module_algebra(act, 2)
        if not rep:
            raise InvalidAction(f"not a module algebra: {rep.failures[:3]}")
    return act


def _monomials_upto(A, D):
    """Normal monomials of total degree (plain count) at most D."""
    out = []

    def rec(i, left, cur):
        if i == A.nvars:
            out.append(tuple(cur))
            return
        top = left
        if i in A.power:
            top = min(top, A.power[i][0] - 1)
        for e in range(top + 1):
            cur.append(e)
            rec(i + 1, left - e, cur)
            cur.pop()

    rec(0, D, [])
    return out


def _x_on_word(action, word):
    """x applied to a word in the free algebra via the twisted Leibniz rule."""
    A = action.A
    total = A.zero()
    prefix_g = A.one()
    for i, s in enumerate(word):
        rest = A.normal_form(word[i + 1:])
        total = total + prefix_g * action.x_images[s] * rest
        prefix_g = prefix_g * action.g_images[s]
    return total


def _relation_words(A):
    """Defining relations as (word_later_earlier, rhs) for the presentation."""
    rels = []
    for (i, j), rhs in A.swap.items():
        rels.append(((A.gens[i], A.gens[j]), NCElem(A, dict(rhs))))
    for i in range(A.nvars):
        for j in range(i):
            if (i, j) not in A.swap:
                rels.append(((A.gens[i], A.gens[j]), A.normal_form((A.gens[j], A.gens[i]))))
    return rels


def verify_module_algebra(action, degree_bound):
    """Check that the stated generator images define an H-module algebra.

    Checks: g and x respect the defining relations of the target; h.1 = eps(h);
    g(ab) = g(a)g(b) and x(ab) = g(a)x(b) + x(a)b on all pairs of normal
    monomials with total degree at most degree_bound; g^n = id, x^n = 0 and
    xg = lam gx on generators.
    """
    A = action.A
    rep = Report(True)
    lam, n = action.lam, action.n
    # relations: the maps are defined on the free algebra, they must kill relations
    for word, rhs in _relation_words(A):
        g_word = apply_endomorphism(action.g_images, A.normal_form(word[:1]), A) * \
            apply_endomorphism(action.g_images, A.normal_form(word[1:]), A)
        rep.record("g_relations", g_word == apply_endomorphism(action.g_images, rhs, A), word)
        rep.record("x_relations", _x_on_word(action, word) == action.act_x(rhs), word)
    # unit
    rep.record("unit", action.act_g(A.one()) == A.one() and not action.act_x(A.one()))
    # multiplicativity on products of monomials
    monos = _monomials_upto(A, degree_bound)
    elems = {m: A.monomial(m) for m in monos}
    for m1 in monos:
        a = elems[m1]
        ga, xa = action.act_g(a), action.act_x(a)
        for m2 in monos:
            if sum(m1) + sum(m2) > degree_bound:
                continue
            b = elems[m2]
            ab = a * b
            rep.record("g_multiplicative", action.act_g(ab) == ga * action.act_g(b), (m1, m2))
            rep.record("x_twisted_leibniz",
                       action.act_x(ab) == ga * action.act_x(b) + xa * b, (m1, m2))
    # Taft relations on generators
    for s in A.gens:
        r = A.gen(s)
        rep.record("g_order", action.act_g(r, n) == r, s)
        rep.record("x_nilpotent", not action.act_x(r, n), s)
        rep.record("xg_relation", action.act_x(action.act_g(r)) == action.act_g(action.act_x(r)) * lam, s)
    rep.record("inner_faithful_x_nonzero", any(action.x_images[s] for s in A.gens))
    return rep


# ---------------------------------------------------------------------------
# classification of linear actions on the plane and the Weyl algebra


@dataclass
class ActionFamily:
    family: int
    lam: CycloElem
    alpha: CycloElem
    beta: CycloElem
    x_u: str
    x_v: str
    action: LinearAction

    def describe(self):
        return {"family": self.family, "lam": repr(self.lam), "g(u)": f"({self.alpha!r})u",
                "g(v)": f"({self.beta!r})v", "x(u)": self.x_u, "x(v)": self.x_v,
                "eta": "free (normalised to 1)"}


def classify_linear_actions(n, mu, target):
    """All linear actions of H_n(lam), lam primitive of order n, with g diagonal.

    The diagonal data alpha, beta range over n-th roots of unity (beta =
    alpha^-1 on the Weyl algebra); the x-matrix is forced by xg = lam gx and
    x^2 = 0 to one of the two off-diagonal shapes.  Each candidate is then
    tested against the relation of the target.  Returns the surviving actions,
    which are exactly the two families; empty when the order of mu does not
    divide n.
    """
    if target not in ("qplane", "weyl"):
        raise InvalidAction("classification is implemented for qplane and weyl")
    m = mu.multiplicative_order()
    if m < 2:
        raise InvalidAction("mu must have order at least 2")
    N = math.lcm(n, mu.conductor)
    mu = mu.embed(N)
    A = target_algebra(target, mu)
    u, v = A.gen("u"), A.gen("v")
    roots = [CycloElem.zeta(N, (N // n) * i) for i in range(n)]
    found = []
    for lam in primitive_roots(n, N):
        for alpha in roots:
            betas = [alpha.inverse()] if target == "weyl" else roots
            for beta in betas:
                # xg - lam gx = 0 kills a1, b2 (lam != 1); x^2 = 0 forces a2 b1 = 0
                shapes = []
                if beta == lam * alpha:
                    shapes.append(("0", "u", {"u": A.zero(), "v": u}))
                if alpha == lam * beta:
                    shapes.append(("v", "0", {"u": v, "v": A.zero()}))
                for xu, xv, xi in shapes:
                    gi = {"u": u * alpha, "v": v * beta}
                    act = LinearAction(n, lam, mu, CycloElem.rational(N, 1), 0, target, A, gi, xi,
                                       lift_exponent(lam, mu, n))
                    ok = True
                    for word, rhs in _relation_words(A):
                        if _x_on_word(act, word) != act.act_x(rhs):
                            ok = False
                    if not ok:
                        continue
                    family = 1 if xu == "0" else 2
                    act.family = family
                    found.append(ActionFamily(family, lam, alpha, beta, xu, xv, act))
    return found


def nondiagonal_obstruction(kappa=0):
    """Symbolic check that g(u) = alpha v, g(v) = beta u admits no nonzero x when mu = -1.

    Builds the constraints from x(uv + vu - kappa) = 0 and x^2 = 0 with sympy
    and shows, for each possible nonzero entry of the x-matrix, that the
    Groebner basis of the constraint ideal (with alpha, beta invertible and
    that entry invertible) is {1}.  Returns the list of Groebner bases.
    """
    import sympy as sp

    a1, a2, b1, b2, al, be, s, t = sp.symbols("a1 a2 b1 b2 alpha beta s t")
    # degree-two words expanded in the basis u^2, uv, v^2, 1 using vu = -uv + kappa
    # x(u) = a1 u + a2 v, x(v) = b1 u + b2 v, g(u) = al v, g(v) = be u
    # x(uv) = g(u) x(v) + x(u) v ; x(vu) = g(v) x(u) + x(v) u
    def word(p, q):
        # product of linear forms p = (pu, pv), q = (qu, qv) in normal form
        uu = p[0] * q[0]
        vv = p[1] * q[1]
        uv = p[0] * q[1] - p[1] * q[0]
        const = p[1] * q[0] * kappa
        return sp.Matrix([uu, uv, vv, const])

    xu, xv = (a1, a2), (b1, b2)
    gu, gv = (0, al), (be, 0)
    u_, v_ = (1, 0), (0, 1)
    rel = word(gu, xv) + word(xu, v_) + word(gv, xu) + word(xv, u_)
    eqs = [sp.expand(e) for e in rel]
    if kappa:
        # g must preserve uv + vu = kappa as well
        eqs.append(sp.expand(al * be - 1))
    X = sp.Matrix([[a1, b1], [a2, b2]])
    eqs += [sp.expand(e) for e in X * X]
    bases = []
    for entry in (a1, a2, b1, b2):
        G = sp.groebner(eqs + [al * be * s - 1, entry * t - 1], a1, a2, b1, b2, al, be, s, t,
                        order="grevlex")
        bases.append([str(p) for p in G.exprs])
    return bases


# ---------------------------------------------------------------------------
# smash products


@dataclass
class SmashProduct:
    action: LinearAction
    presentation: Presentation

    @property
    def n(self):
        return self.action.n

    def from_target(self, e):
        """r -> r#1."""
        P = self.presentation
        pad = (0, 0)
        return NCElem(P, {m + pad: P.ring.coerce(c) for m, c in e.terms.items()})

    def h(self, l, k, c=1):
        """1#g^l x^k."""
        mono = (0,) * self.action.A.nvars + (l % self.n, k)
        return self.presentation.monomial(mono, c)

    def split(self, e):
        """z = sum r_{i,j} # g^i x^j as {(i, j): r_{i,j}}."""
        A = self.action.A
        nv = A.nvars
        out = {}
        for m, c in e.terms.items():
            key = m[nv:]
            out.setdefault(key, {})[m[:nv]] = c
        return {k: NCElem(A, v) for k, v in out.items()}


def build_smash(action):
    """The smash product A#H_n(lam) as a presentation on A's generators then g < x."""
    A = action.A
    nv = A.nvars
    gens = A.gens + ("g", "x")
    ring = cyclo_ring(A.ring.conductor)
    n = action.n

    def lift(e, gx):
        return {m + gx: c for m, c in e.terms.items()}

    swaps = {}
    for (i, j), rhs in A.swap.items():
        swaps[(A.gens[i], A.gens[j])] = {m + (0, 0): c for m, c in rhs.items()}
    for s in A.gens:
        swaps[("g", s)] = lift(action.g_images[s], (1, 0))
        rhs = lift(action.g_images[s], (0, 1))
        for m, c in lift(action.x_images[s], (0, 0)).items():
            rhs[m] = rhs[m] + c if m in rhs else c
        swaps[("x", s)] = {m: c for m, c in rhs.items() if c}
    gx = [0] * (nv + 2)
    gx[nv] = gx[nv + 1] = 1
    swaps[("x", "g")] = {tuple(gx): action.lam}
    powers = {"g": (n, {(0,) * (nv + 2): ring.one()}), "x": (n, {})}
    weights = A.weights + (0, 0)
    P = Presentation(gens, ring, swaps, powers, weights, name=f"{A.name}#H{n}")
    return SmashProduct(action, P)


def is_prime_smash(s):
    """Search monomials u^i v^(jn) that are x-invariant with g-eigenvalue lam^(n-1).

    For family 2 the roles of u and v are exchanged.  Returns (True, witness)
    when one exists, else (False, None).
    """
    act = s.action
    if act.target not in ("qplane", "weyl"):
        raise InvalidAction("primeness test supports the plane and Weyl actions")
    A = act.A
    n = act.n
    target = act.lam ** (n - 1)
    for j in (0, n):
        for i in range(max(n, act.m) + 1):
            if i == 0 and j == 0:
                continue
            mono = A.monomial((i, j) if act.family == 1 else (j, i))
            if act.act_x(mono):
                continue
            if act.act_g(mono) == mono * target:
                return True, mono
    return False, None
