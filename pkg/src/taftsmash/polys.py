"""Sparse commutative polynomials over cyclotomic fields.

Used for central subalgebras (``z1 = u^n`` and friends), Poisson brackets and
discriminants.  Monomials are exponent tuples; the term order is plain tuple
comparison, i.e. lex with the first variable largest.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactfield import CycloElem, NotDivisible


def _scalar(conductor, c):
    if isinstance(c, CycloElem):
        return c
    return CycloElem.rational(conductor, c)


class Poly:
    __slots__ = ("names", "terms", "conductor")

    def __init__(self, names, terms=None, conductor=1):
        self.names = tuple(names)
        self.conductor = conductor
        clean = {}
        for m, c in (terms or {}).items():
            c = _scalar(conductor, c)
            if c:
                clean[tuple(m)] = c
                self.conductor = math.lcm(self.conductor, c.conductor)
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def var(cls, names, name, conductor=1):
        names = tuple(names)
        m = tuple(1 if v == name else 0 for v in names)
        if not any(m):
            raise KeyError(name)
        return cls(names, {m: 1}, conductor)

    @classmethod
    def const(cls, names, c, conductor=1):
        return cls(names, {(0,) * len(names): c}, conductor)

    @classmethod
    def monomial(cls, names, exps, c=1, conductor=1):
        return cls(names, {tuple(exps): c}, conductor)

    def _like(self, terms):
        p = Poly.__new__(Poly)
        p.names = self.names
        p.conductor = self.conductor
        p.terms = terms
        return p

    def _other(self, other):
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError("polynomials in different variables")
            return other
        return Poly.const(self.names, other, self.conductor)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc[m] + c if m in acc else c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        out = self._like(acc)
        out.conductor = math.lcm(self.conductor, other.conductor)
        return out

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _scalar(self.conductor, other)
            if not c:
                return self._like({})
            return self._like({m: v * c for m, v in self.terms.items()})
        other = self._other(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = acc[m] + c1 * c2 if m in acc else c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        out = self._like(acc)
        out.conductor = math.lcm(self.conductor, other.conductor)
        return out

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.names, 1, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exact_div(other)
        c = _scalar(self.conductor, other).inverse()
        return self * c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.names == other.names and self.terms == other.terms
        return self == self._other(other)

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    # -- structure -------------------------------------------------------

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.names), CycloElem.rational(self.conductor, 0))

    def leading(self):
        """Lex-largest monomial and its coefficient."""
        m = max(self.terms)
        return m, self.terms[m]

    def degree(self, weights=None):
        weights = weights or (1,) * len(self.names)
        return max((sum(a * b for a, b in zip(m, weights)) for m in self.terms), default=-1)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self, weights):
        degs = {sum(a * b for a, b in zip(m, weights)) for m in self.terms}
        return len(degs) <= 1

    def derivative(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        acc = {}
        for m, c in self.terms.items():
            if m[i]:
                new = list(m)
                new[i] -= 1
                acc[tuple(new)] = c * m[i]
        return self._like(acc)

    def evaluate(self, point):
        """Substitute values (scalars or polynomials) for every variable."""
        if isinstance(point, dict):
            point = [point[n] for n in self.names]
        total = None
        cache = [{} for _ in point]
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    if e not in cache[i]:
                        cache[i][e] = point[i] ** e
                    term = term * cache[i][e]
            total = term if total is None else total + term
        if total is None:
            return CycloElem.rational(self.conductor, 0)
        return total

    def map_coeffs(self, fn):
        return Poly(self.names, {m: fn(c) for m, c in self.terms.items()}, self.conductor)

    # -- division --------------------------------------------------------

    def divmod(self, other):
        """Division by a single polynomial in lex order: self = q*other + r."""
        other = self._other(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = other.leading()
        inv = lc.inverse()
        quot = {}
        rem = {}
        work = dict(self.terms)
        while work:
            m = max(work)
            c = work.pop(m)
            if all(a >= b for a, b in zip(m, lm)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = c * inv
                quot[qm] = quot[qm] + qc if qm in quot else qc
                for m2, c2 in other.terms.items():
                    if m2 == lm:
                        continue
                    t = tuple(a + b for a, b in zip(qm, m2))
                    s = work[t] - qc * c2 if t in work else -qc * c2
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
            else:
                rem[m] = c
        return Poly(self.names, quot, self.conductor), Poly(self.names, rem, self.conductor)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise NotDivisible("polynomial division leaves a remainder")
        return q

    def divides(self, other):
        """True when self divides other exactly."""
        return not other.divmod(self)[1]

    # -- normalisation ---------------------------------------------------

    def normalized(self):
        """Scale so the lex-first monomial has coefficient 1 (zero stays zero)."""
        if not self.terms:
            return self
        return self * self.leading()[1].inverse()

    def equal_up_to_unit(self, other):
        other = self._other(other)
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        return self.normalized() == other.normalized()

    # -- io --------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join((v if e == 1 else f"{v}^{e}") for v, e in zip(self.names, m) if e)
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return {"vars": list(self.names),
                "terms": [{"exp": list(m), "coeff": c.to_json()} for m, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data):
        names = data["vars"]
        terms = {tuple(t["exp"]): CycloElem.from_json(t["coeff"]) for t in data["terms"]}
        conductor = max((c.conductor for c in terms.values()), default=1)
        return cls(names, terms, conductor)


def equal_up_to_unit(p, q):
    """p = c*q for a nonzero scalar c (units of a polynomial ring are scalars)."""
    return p.equal_up_to_unit(q)


def poly_gcd_univariate(a, b):
    """Monic gcd of two univariate polynomials."""
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    return a.normalized() if a else a


def rational_poly(names, terms, conductor=1):
    """Convenience constructor from {exps: number} with Fraction-friendly coefficients."""
    return Poly(names, {m: CycloElem.rational(conductor, Fraction(c)) for m, c in terms.items()},
                conductor)
