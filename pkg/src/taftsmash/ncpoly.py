"""PBW normal forms for algebras given by ordered generators and rewrite rules.

A :class:`Presentation` lists generators in their normal order together with

* swap rules ``later * earlier -> rhs`` for pairs of generators that appear out
  of order, the right-hand side already being in normal form, and
* power rules ``gen^p -> rhs`` (for instance ``g^n -> 1`` and ``x^n -> 0``).

Elements (:class:`NCElem`) are finite maps from exponent vectors to
coefficients, so ``{(i, j, k, l): c}`` stands for ``c u^i v^j g^k x^l``.
Products are computed by moving one generator at a time into place, with
memoisation on the presentation, which keeps the common smash-product
computations cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import CycloElem, LaurentQ


class PresentationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring selector: Q(zeta_N) or Q(zeta_N)[q, q^-1]."""

    kind: str
    conductor: int

    def __post_init__(self):
        if self.kind not in ("cyclotomic", "laurent_q"):
            raise ValueError(f"unknown coefficient ring {self.kind!r}")

    def coerce(self, c):
        if self.kind == "cyclotomic":
            if isinstance(c, CycloElem):
                return c if c.conductor == self.conductor else c.embed(self.conductor)
            if isinstance(c, LaurentQ):
                if not c.is_constant():
                    raise TypeError("cannot put a q-dependent coefficient in a field presentation")
                return self.coerce(c.constant_value())
            return CycloElem.rational(self.conductor, c)
        if isinstance(c, LaurentQ):
            return c
        return LaurentQ.constant(self.conductor, c)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def to_json(self):
        return {"kind": self.kind, "conductor": self.conductor}

    def encode(self, c):
        return c.to_json()

    def decode(self, data):
        if self.kind == "cyclotomic":
            return CycloElem.from_json(data)
        return LaurentQ.from_json(data)


def _add_into(acc, mono, c):
    if mono in acc:
        s = acc[mono] + c
        if s:
            acc[mono] = s
        else:
            del acc[mono]
    elif c:
        acc[mono] = c


class Presentation:
    """An algebra presentation with a confluent rewriting system.

    ``swap_rules`` maps ``(later, earlier)`` generator names to the normal form
    of ``later * earlier``; a missing pair means the two generators commute.
    ``power_rules`` maps a generator to ``(p, rhs)`` meaning ``gen^p = rhs``.
    """

    def __init__(self, generators, ring, swap_rules=None, power_rules=None,
                 weights=None, name=""):
        self.gens = tuple(generators)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate generator names")
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.ring = ring
        self.name = name
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.gens)
        self.nvars = len(self.gens)
        self._one_mono = (0,) * self.nvars
        # rules are stored on indices; rhs are term dicts
        self.swap = {}
        for (a, b), rhs in (swap_rules or {}).items():
            i, j = self.index[a], self.index[b]
            if i <= j:
                raise ValueError(f"swap rule {a}*{b} is not an out-of-order pair")
            self.swap[(i, j)] = self._terms_of(rhs)
        self.power = {}
        for g, (p, rhs) in (power_rules or {}).items():
            if p < 1:
                raise ValueError("power rule exponent must be positive")
            self.power[self.index[g]] = (p, self._terms_of(rhs))
        self._gen_cache = {}
        self._mul_cache = {}
        self._validate_rules()

    # -- construction helpers --------------------------------------------

    def _terms_of(self, rhs):
        if isinstance(rhs, NCElem):
            return dict(rhs.terms)
        if isinstance(rhs, dict):
            return {tuple(m): self.ring.coerce(c) for m, c in rhs.items() if c}
        c = self.ring.coerce(rhs)
        return {self._one_mono: c} if c else {}

    def _validate_rules(self):
        for key, rhs in list(self.swap.items()) + [((i, i), r) for i, (_, r) in self.power.items()]:
            for m in rhs:
                if len(m) != self.nvars or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m}")
                for idx, (p, _) in self.power.items():
                    if m[idx] >= p:
                        raise ValueError(f"rule rhs {m} violates truncation of {self.gens[idx]}")
        for (i, j), rhs in self.swap.items():
            bound = self.weights[i] + self.weights[j]
            for m in rhs:
                if self._weight(m) > bound:
                    raise ValueError(
                        f"rule {self.gens[i]}*{self.gens[j]} raises the filtration degree")

    def _weight(self, mono, weights=None):
        w = weights or self.weights
        return sum(a * b for a, b in zip(mono, w))

    def one(self):
        return NCElem(self, {self._one_mono: self.ring.one()})

    def zero(self):
        return NCElem(self, {})

    def scalar(self, c):
        c = self.ring.coerce(c)
        return NCElem(self, {self._one_mono: c} if c else {})

    def gen(self, name):
        return NCElem(self, self._gen_times(self.index[name], self._one_mono))

    def gens_dict(self):
        return {g: self.gen(g) for g in self.gens}

    def monomial(self, exps, coeff=1):
        """The element coeff * prod gen_i^exps[i] in the stated order, normalised."""
        if isinstance(exps, dict):
            exps = tuple(exps.get(g, 0) for g in self.gens)
        exps = tuple(exps)
        result = {self._one_mono: self.ring.coerce(coeff)}
        for i in reversed(range(self.nvars)):
            for _ in range(exps[i]):
                result = self._gen_times_terms(i, result)
        return NCElem(self, result)

    def normal_form(self, word, coeff=1):
        """Normal form of coeff * w_1 w_2 ... w_r for a sequence of generator names."""
        result = {self._one_mono: self.ring.coerce(coeff)}
        if not result[self._one_mono]:
            return self.zero()
        for name in reversed(list(word)):
            result = self._gen_times_terms(self.index[name], result)
        return NCElem(self, result)

    def is_normal(self, mono):
        return all(mono[i] < p for i, (p, _) in self.power.items())

    # -- the rewriting engine --------------------------------------------

    def _gen_times_terms(self, s, terms):
        acc = {}
        for m, c in terms.items():
            for m2, c2 in self._gen_times(s, m).items():
                _add_into(acc, m2, c * c2)
        return acc

    def _gen_times(self, s, m):
        """Normal form of gen_s * m for a normal monomial m, as a term dict."""
        key = (s, m)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        t = next((i for i, e in enumerate(m) if e), None)
        if t is None or s <= t:
            new = list(m)
            new[s] += 1
            out = self._power_reduce(tuple(new), s)
        else:
            rest = list(m)
            rest[t] -= 1
            rest = tuple(rest)
            rhs = self.swap.get((s, t))
            if rhs is None:
                # commuting pair: s t rest = t (s rest)
                swapped_terms = self._gen_times(s, rest)
                out = {}
                for m2, c2 in swapped_terms.items():
                    for m3, c3 in self._gen_times(t, m2).items():
                        _add_into(out, m3, c2 * c3)
            else:
                out = {}
                for r, c in rhs.items():
                    for m2, c2 in self._mono_mul(r, rest).items():
                        _add_into(out, m2, c * c2)
        self._gen_cache[key] = out
        return out

    def _power_reduce(self, mono, s):
        rule = self.power.get(s)
        if rule is None or mono[s] < rule[0]:
            return {mono: self.ring.one()}
        p, rhs = rule
        rest = list(mono)
        rest[s] -= p
        rest = tuple(rest)
        # gen_s is the lowest generator present, so gen_s^p * rest is the word
        out = {}
        for r, c in rhs.items():
            for m2, c2 in self._mono_mul(r, rest).items():
                _add_into(out, m2, c * c2)
        return out

    def _mono_mul(self, m1, m2):
        """Normal form of m1 * m2 for normal monomials, as a term dict."""
        if not any(m1):
            return {m2: self.ring.one()}
        if not any(m2):
            return {m1: self.ring.one()}
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        s = max(i for i, e in enumerate(m1) if e)
        t = next(i for i, e in enumerate(m2) if e)
        if s < t or (s == t and (s not in self.power or m1[s] + m2[s] < self.power[s][0])):
            out = {tuple(a + b for a, b in zip(m1, m2)): self.ring.one()}
        else:
            head = list(m1)
            head[s] -= 1
            head = tuple(head)
            out = {}
            for m3, c3 in self._gen_times(s, m2).items():
                for m4, c4 in self._mono_mul(head, m3).items():
                    _add_into(out, m4, c3 * c4)
        self._mul_cache[key] = out
        return out

    def mul_terms(self, a, b):
        acc = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = c1 * c2
                if not c:
                    continue
                for m3, c3 in self._mono_mul(m1, m2).items():
                    _add_into(acc, m3, c * c3)
        return acc

    # -- comparison and io -----------------------------------------------

    def rules_equal(self, other):
        return (self.gens == other.gens and self.ring == other.ring
                and self.weights == other.weights and self.swap == other.swap
                and self.power == other.power)

    def to_json(self):
        enc = self.ring.encode

        def terms_json(terms):
            return [{"exp": list(m), "coeff": enc(c)} for m, c in sorted(terms.items())]

        return {
            "schema": "taftsmash.presentation/1",
            "name": self.name,
            "generators": list(self.gens),
            "coeff_ring": self.ring.to_json(),
            "weights": list(self.weights),
            "swap_rules": [
                {"later": self.gens[i], "earlier": self.gens[j], "rhs": terms_json(rhs)}
                for (i, j), rhs in sorted(self.swap.items())
            ],
            "power_rules": [
                {"gen": self.gens[i], "exponent": p, "rhs": terms_json(rhs)}
                for i, (p, rhs) in sorted(self.power.items())
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, data):
        ring = CoeffRing(data["coeff_ring"]["kind"], int(data["coeff_ring"]["conductor"]))

        def terms(items):
            return {tuple(t["exp"]): ring.decode(t["coeff"]) for t in items}

        swaps = {(r["later"], r["earlier"]): terms(r["rhs"]) for r in data["swap_rules"]}
        powers = {r["gen"]: (int(r["exponent"]), terms(r["rhs"])) for r in data["power_rules"]}
        return cls(data["generators"], ring, swaps, powers, data.get("weights"),
                   data.get("name", ""))

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return f"Presentation({self.name or ','.join(self.gens)})"


class NCElem:
    """A normal-form element of a presented algebra."""

    __slots__ = ("P", "terms")

    def __init__(self, presentation, terms):
        self.P = presentation
        self.terms = terms

    def _check(self, other):
        if isinstance(other, NCElem):
            if other.P is not self.P:
                raise PresentationMismatch("elements of different presentations")
            return other
        return self.P.scalar(other)

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return NCElem(self.P, acc)

    __radd__ = __add__

    def __neg__(self):
        return NCElem(self.P, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, NCElem):
            self._check(other)
            return NCElem(self.P, self.P.mul_terms(self.terms, other.terms))
        c = self.P.ring.coerce(other)
        if not c:
            return self.P.zero()
        return NCElem(self.P, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __pow__(self, e):
        result = self.P.one()
        for _ in range(e):
            result = result * self
        return result

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, NCElem):
            return self.P is other.P and self.terms == other.terms
        return self.terms == self.P.scalar(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(g, 0) for g in self.P.gens)
        return self.terms.get(tuple(exps), self.P.ring.zero())

    def support(self):
        return sorted(self.terms)

    def is_scalar(self):
        return all(not any(m) for m in self.terms)

    def map_coeffs(self, fn, presentation):
        out = {}
        for m, c in self.terms.items():
            v = presentation.ring.coerce(fn(c))
            if v:
                out[m] = v
        return NCElem(presentation, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                (g if e == 1 else f"{g}^{e}") for g, e in zip(self.P.gens, m) if e)
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return [{"exp": list(m), "coeff": self.P.ring.encode(c)} for m, c in sorted(self.terms.items())]


def filtration_degree(e, weights=None):
    """Largest weighted degree among the terms of e (0 for scalars and for 0)."""
    weights = weights if weights is not None else e.P.weights
    if isinstance(weights, dict):
        weights = tuple(weights.get(g, 0) for g in e.P.gens)
    return max((sum(a * b for a, b in zip(m, weights)) for m in e.terms), default=0)


def apply_endomorphism(images, e, target=None):
    """Evaluate the algebra map gen -> images[gen] on the element e.

    ``images`` maps generator names of e's presentation to elements of the
    target presentation (which may be the same one).
    """
    P = e.P
    if target is None:
        target = next(iter(images.values())).P
    imgs = [images[g] for g in P.gens]
    powers = [{0: target.one()} for _ in P.gens]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * imgs[i]
        return cache[k]

    acc = target.zero()
    for m, c in e.terms.items():
        term = target.scalar(c)
        for i, k in enumerate(m):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def evaluate_word(images, word, target=None):
    """Product images[w_1] * ... * images[w_r] for a sequence of generator names."""
    if target is None:
        target = next(iter(images.values())).P
    result = target.one()
    for name in word:
        result = result * images[name]
    return result


# ---------------------------------------------------------------------------
# confluence


@dataclass
class ConfluenceReport:
    passed: bool
    checked: int
    failure: object = None
    details: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def verify_confluence(P):
    """Diamond-lemma check: resolve every overlap ambiguity both ways and compare.

    Overlaps are z*y*x for generators z > y > x, t*s^p and s^p*r for power
    rules s^p, and s^(p+1) for each power rule.  Each side is reduced with the
    engine, which always terminates in a normal form, so a disagreement is a
    genuine failure of confluence.
    """
    n = P.nvars
    checked = 0

    def elem(terms):
        return NCElem(P, dict(terms))

    def swap_elem(i, j):
        rhs = P.swap.get((i, j))
        if rhs is None:
            m = [0] * n
            m[i] += 1
            m[j] += 1
            return elem({tuple(m): P.ring.one()})
        return elem(rhs)

    def gen(i):
        m = [0] * n
        m[i] = 1
        return elem({tuple(m): P.ring.one()})

    def power_elem(i, k):
        m = [0] * n
        m[i] = k
        return elem({tuple(m): P.ring.one()})

    for z in range(n):
        for y in range(z):
            for x in range(y):
                left = swap_elem(z, y) * gen(x)
                right = gen(z) * swap_elem(y, x)
                checked += 1
                if left != right:
                    return ConfluenceReport(False, checked,
                                            (P.gens[z], P.gens[y], P.gens[x]),
                                            [repr(left), repr(right)])
    for s, (p, rhs) in P.power.items():
        R = elem(rhs)
        for t in range(n):
            if t > s:
                # t * s^p
                left = gen(t) * R
                right = swap_elem(t, s) * power_elem(s, p - 1)
                checked += 1
                if left != right:
                    return ConfluenceReport(False, checked, (P.gens[t], f"{P.gens[s]}^{p}"),
                                            [repr(left), repr(right)])
            elif t < s:
                # s^p * t
                left = R * gen(t)
                right = power_elem(s, p - 1) * swap_elem(s, t)
                checked += 1
                if left != right:
                    return ConfluenceReport(False, checked, (f"{P.gens[s]}^{p}", P.gens[t]),
                                            [repr(left), repr(right)])
        left = R * gen(s)
        right = gen(s) * R
        checked += 1
        if left != right:
            return ConfluenceReport(False, checked, (f"{P.gens[s]}^{p + 1}",),
                                    [repr(left), repr(right)])
    return ConfluenceReport(True, checked)


# ---------------------------------------------------------------------------
# built-in presentations


def cyclo_ring(conductor):
    return CoeffRing("cyclotomic", conductor)


def _mono(P_gens, **exps):
    return tuple(exps.get(g, 0) for g in P_gens)


def build(gens, ring, swaps, powers=None, weights=None, name=""):
    """Build a presentation from rules written as {exponent-dict: coeff} maps.

    ``swaps`` maps (later, earlier) to a list of (coeff, {gen: exp}) pairs.
    """
    def terms(items):
        out = {}
        for c, exps in items:
            m = tuple(exps.get(g, 0) for g in gens)
            c = ring.coerce(c)
            if c:
                out[m] = out[m] + c if m in out else c
        return out

    swap_rules = {k: terms(v) for k, v in swaps.items()}
    power_rules = {g: (p, terms(v)) for g, (p, v) in (powers or {}).items()}
    return Presentation(gens, ring, swap_rules, power_rules, weights, name)


def quantum_plane(mu, kappa=0, names=("u", "v")):
    """k<u,v | uv - mu vu - kappa>: the quantum plane (kappa=0) or quantum Weyl algebra."""
    ring = cyclo_ring(mu.conductor)
    u, v = names
    inv = mu.inverse()
    rhs = [(inv, {u: 1, v: 1})]
    if kappa:
        rhs.append((-inv * kappa, {}))
    name = "qweyl" if kappa else "qplane"
    return build(names, ring, {(v, u): rhs}, name=name)


def quantum_weyl(mu):
    return quantum_plane(mu, kappa=1)


def polynomial_ring(conductor, names=("u", "v")):
    return build(names, cyclo_ring(conductor), {}, name="polyring")


def taft_presentation(n, lam):
    """H_n(lam) on generators g < x: g^n = 1, x^n = 0, xg = lam gx."""
    ring = cyclo_ring(lam.conductor)
    return build(("g", "x"), ring, {("x", "g"): [(lam, {"g": 1, "x": 1})]},
                 powers={"g": (n, [(1, {})]), "x": (n, [])}, weights=(0, 0),
                 name=f"taft{n}")


def quantum_affine3(mu, lam):
    """uv = mu vu, vw = lam mu wv, wu = mu uw."""
    ring = cyclo_ring(mu.conductor)
    lm = lam * mu
    return build(("u", "v", "w"), ring, {
        ("v", "u"): [(mu.inverse(), {"u": 1, "v": 1})],
        ("w", "v"): [(lm.inverse(), {"v": 1, "w": 1})],
        ("w", "u"): [(mu, {"u": 1, "w": 1})],
    }, name="affine3")


def quantum_matrices(mu):
    """O_mu(M_2): ab = mu ba, bd = mu db, bc = cb, ac = mu ca, cd = mu dc,
    ad - da = (mu - mu^-1) bc."""
    ring = cyclo_ring(mu.conductor)
    inv = mu.inverse()
    return build(("a", "b", "c", "d"), ring, {
        ("b", "a"): [(inv, {"a": 1, "b": 1})],
        ("c", "a"): [(inv, {"a": 1, "c": 1})],
        ("d", "a"): [(1, {"a": 1, "d": 1}), (-(mu - inv), {"b": 1, "c": 1})],
        ("c", "b"): [(1, {"b": 1, "c": 1})],
        ("d", "b"): [(inv, {"b": 1, "d": 1})],
        ("d", "c"): [(inv, {"c": 1, "d": 1})],
    }, name="qmatrices")


def ore_family(conductor, k, kappa=0, weights=(2, 1, 1)):
    """The k[q^{+-1}]-algebra R on u < v < x with
    uv - q vu - kappa, xu - q ux, xv - q^{k+1} vx - u."""
    ring = CoeffRing("laurent_q", conductor)
    q = LaurentQ.q(conductor)
    vu = [(q ** -1, {"u": 1, "v": 1})]
    if kappa:
        vu.append((-(q ** -1) * kappa, {}))
    return build(("u", "v", "x"), ring, {
        ("v", "u"): vu,
        ("x", "u"): [(q, {"u": 1, "x": 1})],
        ("x", "v"): [(q ** (k + 1), {"v": 1, "x": 1}), (1, {"u": 1})],
    }, weights=weights, name=f"R(k={k},kappa={kappa})")


def specialize(P, eps):
    """The presentation over Q(zeta_N) obtained by setting q = eps in every rule."""
    if P.ring.kind != "laurent_q":
        raise ValueError("only Laurent-q presentations can be specialized")
    ring = cyclo_ring(P.ring.conductor)

    def spec(terms):
        out = {}
        for m, c in terms.items():
            v = ring.coerce(c.evaluate(eps))
            if v:
                out[m] = v
        return out

    swaps = {(P.gens[i], P.gens[j]): spec(rhs) for (i, j), rhs in P.swap.items()}
    powers = {P.gens[i]: (p, spec(rhs)) for i, (p, rhs) in P.power.items()}
    return Presentation(P.gens, ring, swaps, powers, P.weights, P.name + f"@{eps!r}")


def specialize_elem(e, target, eps):
    """sigma: push an element of a Laurent-q presentation to its specialization."""
    return e.map_coeffs(lambda c: c.evaluate(eps), target)


def monomial_count(P, bounds):
    """Number of normal monomials with exponent i below bounds[i] (a dimension count)."""
    total = 1
    for g, b in zip(P.gens, bounds):
        i = P.index[g]
        if i in P.power:
            b = min(b, P.power[i][0])
        total *= b
    return total
