"""Degree-truncated invariants, fixed rings and centers.

Everything here is linear algebra on a finite slice of a PBW basis: the
monomials of weighted degree at most D.  Spans are kept in reduced row echelon
form, so two spans are equal exactly when their stored bases are.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopfact import LinearAction, Report, SmashProduct
from .linalg import Echelon, nullspace
from .ncpoly import NCElem


class NotCentral(ValueError):
    pass


class GradedSpan:
    """A finite-dimensional span of elements of one presentation, in RREF."""

    def __init__(self, presentation, degree_bound, elements=()):
        self.P = presentation
        self.degree_bound = degree_bound
        self._ech = Echelon()
        for e in elements:
            self.add(e)

    def add(self, e):
        if isinstance(e, NCElem):
            if e.P is not self.P:
                raise ValueError("element of another presentation")
            e = e.terms
        return self._ech.add(e)

    @property
    def basis(self):
        return [NCElem(self.P, dict(r)) for r in self._ech.basis()]

    def dim(self):
        return self._ech.rank()

    def contains(self, e):
        return self._ech.contains(e.terms if isinstance(e, NCElem) else e)

    def is_monomial_span(self):
        return all(len(r) == 1 for r in self._ech.rows.values())

    def monomials(self):
        """Leading (pivot) monomials in increasing order."""
        return sorted(self._ech.rows)

    def intersect(self, other):
        """Intersection of two spans in the same presentation."""
        if other.P is not self.P:
            raise ValueError("spans of different presentations")
        A, B = self.basis, other.basis
        if not A or not B:
            return GradedSpan(self.P, min(self.degree_bound, other.degree_bound))
        # solve sum a_i A_i - sum b_j B_j = 0
        rows = {}
        for i, e in enumerate(A):
            for m, c in e.terms.items():
                rows.setdefault(m, {})[("a", i)] = c
        for j, e in enumerate(B):
            for m, c in e.terms.items():
                rows.setdefault(m, {})[("b", j)] = -c
        one = self.P.ring.one()
        cols = [("a", i) for i in range(len(A))] + [("b", j) for j in range(len(B))]
        kernel = nullspace(list(rows.values()), cols, one)
        out = GradedSpan(self.P, min(self.degree_bound, other.degree_bound))
        for vec in kernel:
            acc = self.P.zero()
            for (tag, i), c in vec.items():
                if tag == "a":
                    acc = acc + A[i] * c
            out.add(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedSpan) or other.P is not self.P:
            return NotImplemented
        return self._ech.basis() == other._ech.basis()

    def __repr__(self):
        return f"GradedSpan(dim={self.dim()}, D={self.degree_bound}, {self.basis})"

    def to_json(self):
        return {"schema": "taftsmash.span/1", "generators": list(self.P.gens),
                "degree_bound": self.degree_bound, "dim": self.dim(),
                "basis": [e.to_json() for e in self.basis],
                "display": [repr(e) for e in self.basis]}


# ---------------------------------------------------------------------------
# slices


def slice_monomials(P, D, weights=None):
    """Normal monomials of P with weighted degree at most D.

    Generators of weight 0 must carry a power rule so the slice is finite.
    """
    weights = tuple(weights) if weights is not None else P.weights
    out = []

    def rec(i, left, cur):
        if i == P.nvars:
            out.append(tuple(cur))
            return
        w = weights[i]
        cap = P.power[i][0] - 1 if i in P.power else None
        if w == 0:
            if cap is None:
                raise ValueError(f"generator {P.gens[i]} has weight 0 and no truncation")
            top = cap
        else:
            top = left // w
            if cap is not None:
                top = min(top, cap)
        for e in range(top + 1):
            cur.append(e)
            rec(i + 1, left - e * w, cur)
            cur.pop()

    rec(0, D, [])
    return sorted(out)


def kernel_on_slice(P, monos, maps, D):
    """Span of elements of span(monos) killed by every linear map in maps."""
    rows = {}
    for f in maps:
        for mono in monos:
            image = f(P.monomial(mono))
            for m, c in image.terms.items():
                rows.setdefault((id(f), m), {})[mono] = c
    kernel = nullspace(list(rows.values()), monos, P.ring.one())
    return GradedSpan(P, D, [NCElem(P, v) for v in kernel])


def span_of_monomials(P, monos, D):
    return GradedSpan(P, D, [P.monomial(m) for m in monos])


def subalgebra_span(P, generators, D, weights=None):
    """Span of all products of the given (homogeneous-leading) elements with degree <= D.

    Products are formed in every order; degree means the filtration degree of
    the product's leading data, computed as the sum of the generators' degrees.
    """
    from .ncpoly import filtration_degree

    degs = [filtration_degree(g, weights) for g in generators]
    if any(d <= 0 for d in degs):
        raise ValueError("generators must have positive degree")
    span = GradedSpan(P, D, [P.one()])
    frontier = [(P.one(), 0)]
    while frontier:
        new = []
        for e, d in frontier:
            for g, dg in zip(generators, degs):
                if d + dg <= D:
                    prod = e * g
                    span.add(prod)
                    # dependent products are still extended further
                    new.append((prod, d + dg))
        seen = set()
        frontier = []
        for e, d in new:
            key = (frozenset(e.terms.items()), d)
            if key not in seen:
                seen.add(key)
                frontier.append((e, d))
    return span


# ---------------------------------------------------------------------------
# invariants of an action


def weight_space(action, k, D):
    """R(k) truncated: elements of degree <= D with g(r) = lam^k r."""
    A = action.A
    ev = action.lam ** k
    monos = slice_monomials(A, D)
    return kernel_on_slice(A, monos, [lambda e: action.act_g(e) - e * ev], D)


def x_invariants(action, D):
    A = action.A
    return kernel_on_slice(A, slice_monomials(A, D), [action.act_x], D)


def fixed_ring(action, D):
    """A^H truncated, as the intersection of the x-invariants and the g-invariants."""
    return x_invariants(action, D).intersect(weight_space(action, 0, D))


def fixed_ring_direct(action, D):
    """A^H truncated, as one joint kernel (used to cross-check fixed_ring)."""
    A = action.A
    return kernel_on_slice(A, slice_monomials(A, D),
                           [action.act_x, lambda e: action.act_g(e) - e], D)


def power_monomial_span(P, steps, D):
    """Span of monomials whose exponent of generator i is a multiple of steps[i]."""
    monos = [m for m in slice_monomials(P, D)
             if all(e % s == 0 for e, s in zip(m, steps))]
    return span_of_monomials(P, monos, D)


# ---------------------------------------------------------------------------
# centers


def center_truncated(s, D, weights=None):
    """Central elements of filtration degree <= D, by solving [z, gen] = 0."""
    P = s.presentation if isinstance(s, SmashProduct) else s
    monos = slice_monomials(P, D, weights)
    gens = [P.gen(g) for g in P.gens]
    maps = [(lambda e, t=t: e * t - t * e) for t in gens]
    return kernel_on_slice(P, monos, maps, D)


def is_central(P, z):
    return all(not z.commutator(P.gen(g)) for g in P.gens)


def check_center_relations(s, z):
    """For central z = sum r_{i,j} # g^i x^j check g(r_{i,j}) = lam^j r_{i,j}
    and x(r_{i,0}) = 0, x(r_{i,j}) = (1 - lam^(i+j-1)) r_{i,j-1} for j > 0."""
    P = s.presentation
    if not is_central(P, z):
        raise NotCentral(repr(z))
    act = s.action
    lam, n = act.lam, act.n
    parts = s.split(z)
    A = act.A
    rep = Report(True)
    for i in range(n):
        for j in range(n):
            r = parts.get((i, j), A.zero())
            rep.record("weight", act.act_g(r) == r * lam ** j, (i, j))
            if j == 0:
                rep.record("x_relation", not act.act_x(r), (i, j))
            else:
                prev = parts.get((i, j - 1), A.zero())
                coeff = 1 - lam ** (i + j - 1)
                rep.record("x_relation", act.act_x(r) == prev * coeff, (i, j))
    rep.checks["components"] = {f"{i},{j}": repr(r) for (i, j), r in sorted(parts.items())}
    return rep


def g_powers_act_nontrivially_on(action, gen="u"):
    """No power g^i, 0 < i < n, fixes the generator: the sufficient condition
    under which the center of the smash product lies inside the target."""
    e = action.A.gen(gen)
    cur = e
    for _ in range(1, action.n):
        cur = action.act_g(cur)
        if cur == e:
            return False
    return True
