"""Exact scalars: rationals, cyclotomic field elements and Laurent polynomials in q.

Rationals are :class:`fractions.Fraction`.  A :class:`CycloElem` is an element of
Q(zeta_N) stored as its coefficient vector against 1, zeta, ..., zeta^(phi(N)-1),
reduced modulo the N-th cyclotomic polynomial.  A :class:`LaurentQ` is a sparse
Laurent polynomial in q with CycloElem coefficients.

Dense univariate polynomials over Q are plain lists of Fractions, constant term
first, with no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


# ---------------------------------------------------------------------------
# dense polynomials over Q


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out])


def poly_divmod(a, b):
    """Quotient and remainder of a by b over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def poly_exact_div(a, b):
    q, r = poly_divmod(a, b)
    if r:
        raise NotDivisible("remainder is nonzero")
    return q


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = [Fraction(c) for c in a], [Fraction(c) for c in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    lead = r0[-1]
    return ([c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0])


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(n):
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num = poly_exact_div(num, list(_cyclotomic(d)))
    return tuple(num)


def cyclotomic_poly(n):
    """The n-th cyclotomic polynomial as a coefficient list (constant term first)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return list(_cyclotomic(n))


# ---------------------------------------------------------------------------
# cyclotomic fields


class _FieldData:
    __slots__ = ("n", "phi", "modulus", "reduce_rows", "zeta_powers")

    def __init__(self, n):
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.phi = len(self.modulus) - 1
        phi = self.phi
        # t^j mod Phi_n for j < max(2*phi - 1, n)
        rows = []
        cur = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        for _ in range(max(2 * phi - 1, n)):
            rows.append(tuple(cur))
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(phi):
                    nxt[i] -= top * self.modulus[i]
            cur = nxt
        self.reduce_rows = rows
        self.zeta_powers = rows[:n]


@lru_cache(maxsize=None)
def _field(n):
    return _FieldData(n)


def _lcm(a, b):
    return a * b // gcd(a, b)


class CycloElem:
    """An element of the cyclotomic field Q(zeta_N).

    Immutable.  Arithmetic between elements of different conductors embeds both
    into Q(zeta_lcm).  Plain ints and Fractions coerce into any conductor.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        fd = _field(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > fd.phi:
            coeffs = _reduce(fd, coeffs)
        elif len(coeffs) < fd.phi:
            coeffs = coeffs + (Fraction(0),) * (fd.phi - len(coeffs))
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, conductor, coeffs):
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, conductor, value):
        fd = _field(conductor)
        return cls._raw(conductor, (Fraction(value),) + (Fraction(0),) * (fd.phi - 1))

    @classmethod
    def zeta(cls, conductor, power=1):
        """The distinguished primitive root zeta_N raised to ``power``."""
        fd = _field(conductor)
        return cls._raw(conductor, fd.zeta_powers[power % conductor])

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.conductor == self.conductor:
                return self, other
            m = _lcm(self.conductor, other.conductor)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloElem.rational(self.conductor, other)
        return None

    def embed(self, conductor):
        """Image in Q(zeta_M) for a multiple M of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        step = conductor // self.conductor
        fd = _field(conductor)
        out = [Fraction(0)] * fd.phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = fd.zeta_powers[(i * step) % conductor]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloElem._raw(conductor, tuple(out))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloElem._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._raw(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloElem._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            return CycloElem._raw(self.conductor, tuple(x * other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        fd = _field(a.conductor)
        if fd.phi == 1:
            return CycloElem._raw(a.conductor, (a.coeffs[0] * b.coeffs[0],))
        conv = [Fraction(0)] * (2 * fd.phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CycloElem._raw(a.conductor, _reduce(fd, conv))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        fd = _field(self.conductor)
        if fd.phi == 1:
            return CycloElem._raw(self.conductor, (1 / self.coeffs[0],))
        g, s, _ = poly_xgcd(_trim(list(self.coeffs)), fd.modulus)
        if len(g) != 1:
            raise ZeroDivisionError("element is not invertible")
        return CycloElem(self.conductor, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloElem._raw(self.conductor, tuple(x / other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElem.rational(self.conductor, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def multiplicative_order(self):
        """Order of a root of unity in this field, or None if it is not one."""
        one = CycloElem.rational(self.conductor, 1)
        p = self
        for k in range(1, 2 * self.conductor + 1):
            if p == one:
                return k
            p = p * self
        return None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return body if self.conductor <= 2 else f"({body})_{self.conductor}"

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


def _reduce(fd, conv):
    phi = fd.phi
    out = list(conv[:phi])
    out += [Fraction(0)] * (phi - len(out))
    rows = fd.reduce_rows
    for j in range(phi, len(conv)):
        c = conv[j]
        if c:
            row = rows[j] if j < len(rows) else fd.zeta_powers[j % fd.n]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return tuple(out)


def cyclo_arith(a, b, op):
    """Field operation ``op`` in {'add', 'sub', 'mul', 'div'} on two field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def primitive_roots(n, conductor=None):
    """All primitive n-th roots of unity inside Q(zeta_conductor)."""
    conductor = conductor or n
    if conductor % n:
        raise ValueError("n must divide the conductor")
    step = conductor // n
    return [CycloElem.zeta(conductor, a * step) for a in range(1, n + 1) if gcd(a, n) == 1]


# ---------------------------------------------------------------------------
# Laurent polynomials in q


class LaurentQ:
    """A Laurent polynomial in q over Q(zeta_N).  Zero coefficients are never stored."""

    __slots__ = ("conductor", "terms")

    def __init__(self, conductor, terms=None):
        self.conductor = conductor
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_cyclo(conductor, c)
            if c:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, conductor, terms):
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.terms = terms
        return obj

    @classmethod
    def q(cls, conductor, power=1):
        return cls(conductor, {power: 1})

    @classmethod
    def constant(cls, conductor, value):
        return cls(conductor, {0: value})

    def _lift(self, other):
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, (int, Fraction, CycloElem)):
            return LaurentQ(self.conductor, {0: other})
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentQ._raw(self.conductor, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ._raw(self.conductor, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloElem)):
            if not other:
                return LaurentQ._raw(self.conductor, {})
            return LaurentQ._raw(self.conductor, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out[e] + c1 * c2 if e in out else c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentQ._raw(self.conductor, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only Laurent monomials are invertible")
            (k, c), = self.terms.items()
            return LaurentQ._raw(self.conductor, {k * e: c ** e})
        result = LaurentQ.constant(self.conductor, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloElem)):
            return self * (1 / _as_cyclo(self.conductor, other))
        return self.exact_div(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts)

    # -- structure ---------------------------------------------------------

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    def constant_value(self):
        return self.terms.get(0, CycloElem.rational(self.conductor, 0))

    def _dense(self):
        """(shift, coefficient list) with self = q^shift * sum c_i q^i."""
        lo, hi = self.min_exp(), self.max_exp()
        zero = CycloElem.rational(self.conductor, 0)
        return lo, [self.terms.get(lo + i, zero) for i in range(hi - lo + 1)]

    def evaluate(self, value):
        """Substitute q -> value (a scalar or another ring element)."""
        if not self.terms:
            return _zero_like(value, self.conductor)
        lo, dense = self._dense()
        acc = None
        for c in reversed(dense):
            acc = c if acc is None else acc * value + c
        if lo:
            acc = acc * value ** lo
        return acc

    subs = evaluate

    def exact_div(self, other):
        """Exact quotient self / other in k[q, q^-1]; raises NotDivisible."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        if not self.terms:
            return LaurentQ._raw(self.conductor, {})
        a = list(a)
        lead = b[-1].inverse()
        quot = {}
        while len(a) >= len(b):
            c = a[-1] * lead
            shift = len(a) - len(b)
            if c:
                quot[shift] = c
                for i, bc in enumerate(b):
                    a[shift + i] = a[shift + i] - c * bc
            a.pop()
        if any(a):
            raise NotDivisible(f"{self} is not divisible by {other}")
        return LaurentQ(self.conductor, {e + lo_a - lo_b: c for e, c in quot.items()})

    def to_json(self):
        return {"conductor": self.conductor,
                "terms": {str(e): c.to_json()["coeffs"] for e, c in sorted(self.terms.items())}}

    @classmethod
    def from_json(cls, data):
        n = int(data["conductor"])
        return cls(n, {int(e): CycloElem(n, [Fraction(x) for x in cs])
                       for e, cs in data["terms"].items()})


def _as_cyclo(conductor, c):
    if isinstance(c, CycloElem):
        if c.conductor != conductor:
            return c.embed(conductor)
        return c
    return CycloElem.rational(conductor, c)


def _zero_like(value, conductor):
    if isinstance(value, LaurentQ):
        return LaurentQ(value.conductor)
    if isinstance(value, CycloElem):
        return CycloElem.rational(value.conductor, 0)
    return CycloElem.rational(conductor, 0)


def laurent_div_at(p, eps):
    """Value at q = eps of p / (q - eps), by exact synthetic division.

    ``p`` must vanish at eps; negative powers are cleared by q^m first, which
    changes the answer by the unit eps^m.
    """
    if not isinstance(p, LaurentQ):
        raise TypeError("expected a LaurentQ")
    if not isinstance(eps, CycloElem):
        eps = CycloElem.rational(p.conductor, eps)
    if not p.terms:
        return CycloElem.rational(p.conductor, 0)
    lo, dense = p._dense()
    # Horner: quotient coefficients and remainder of dense(q) / (q - eps)
    acc = None
    quot = []
    for c in reversed(dense):
        acc = c if acc is None else acc * eps + c
        quot.append(acc)
    remainder = quot.pop()
    if remainder:
        raise NotDivisible(f"{p} does not vanish at {eps}")
    # quot holds quotient coefficients from the top degree down
    val = None
    for c in quot:
        val = c if val is None else val * eps + c
    if val is None:
        val = CycloElem.rational(p.conductor, 0)
    return val * eps ** lo if lo else val
