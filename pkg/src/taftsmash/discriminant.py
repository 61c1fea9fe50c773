"""Regular traces and discriminants over central polynomial subalgebras.

An algebra that is free over a central subalgebra C = k[z_1..z_r], with
z_i = gen_i^period, has the basis of monomials whose exponents stay below the
periods (and below the truncations of power-ruled generators).  The
discriminant is det(tr(b_i b_j)), defined up to a nonzero scalar.

Determinants are computed either by fraction-free elimination on polynomial
entries or by evaluation and interpolation.  When the algebra carries
gradings that make the trace form homogeneous, some central variables can be
set to 1 and restored afterwards, which shrinks the interpolation problem.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exactfield import CycloElem, NotDivisible
from .linalg import bareiss_det, det
from .polys import Poly


class SingularTraceForm(ArithmeticError):
    pass


@dataclass
class CentralBasisDecomposition:
    P: object
    central: list          # [(var name, generator name, period)]
    basis: list            # normal monomials of the module basis

    @property
    def rank(self):
        return len(self.basis)

    @property
    def names(self):
        return tuple(name for name, _, _ in self.central)

    @property
    def conductor(self):
        return self.P.ring.conductor

    def split(self, mono):
        """mono = (central monomial) * (basis monomial), returned as (z-exponents, basis mono)."""
        rem = list(mono)
        zexp = []
        for _, g, p in self.central:
            i = self.P.index[g]
            zexp.append(rem[i] // p)
            rem[i] %= p
        return tuple(zexp), tuple(rem)

    def zero(self):
        return Poly(self.names, {}, self.conductor)


def make_decomposition(P, central):
    """central: list of (var name, generator name, period).  Every generator must
    either be central-periodic or carry a power rule."""
    bounds = []
    periods = {g: p for _, g, p in central}
    for i, g in enumerate(P.gens):
        if g in periods:
            bounds.append(periods[g])
        elif i in P.power:
            bounds.append(P.power[i][0])
        else:
            raise ValueError(f"generator {g} is neither periodic nor truncated")
    basis = [()]
    for b in bounds:
        basis = [m + (e,) for m in basis for e in range(b)]
    return CentralBasisDecomposition(P, list(central), sorted(basis))


def decompose_over_center(e, d):
    out = {}
    for mono, c in e.terms.items():
        zexp, b = d.split(mono)
        p = Poly(d.names, {zexp: c}, d.conductor)
        out[b] = out[b] + p if b in out else p
    return {b: p for b, p in out.items() if p}


def regular_trace(e, d):
    """Trace of left multiplication by e on the free module with basis d.basis."""
    P = d.P
    total = d.zero()
    for b in d.basis:
        prod = e * P.monomial(b)
        part = decompose_over_center(prod, d).get(b)
        if part:
            total = total + part
    return total


class TraceForm:
    """The matrix (tr(b_i b_j)) with polynomial entries in the central variables."""

    def __init__(self, d):
        self.d = d
        P = d.P
        elems = [P.monomial(b) for b in d.basis]
        self._basis_trace = {}
        for b, e in zip(d.basis, elems):
            self._basis_trace[b] = regular_trace(e, d)
        n = len(elems)
        self.matrix = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                self.matrix[i][j] = self.trace(elems[i] * elems[j])

    def trace(self, e):
        """tr(e) by C-linearity from the stored traces of basis monomials."""
        total = self.d.zero()
        for mono, c in e.terms.items():
            zexp, b = self.d.split(mono)
            t = self._basis_trace[b]
            if t:
                total = total + t * Poly(self.d.names, {zexp: c}, self.d.conductor)
        return total

    def is_symmetric(self):
        n = len(self.matrix)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))


# ---------------------------------------------------------------------------
# gradings


def check_grading(P, weights):
    """True when every rewrite rule of P is homogeneous for the integer weights."""
    def deg(m):
        return sum(a * b for a, b in zip(m, weights))

    for (i, j), rhs in P.swap.items():
        target = weights[i] + weights[j]
        if any(deg(m) != target for m in rhs):
            return False
    for i, (p, rhs) in P.power.items():
        if any(deg(m) != p * weights[i] for m in rhs):
            return False
    return True


def _solve_rational(A, b):
    """Solve the square system A x = b over Q; raises on singular A."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ValueError("singular grading block")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def _rank_rows(rows):
    """Indices of a maximal independent subset of the integer row vectors."""
    chosen, basis = [], []
    for idx, r in enumerate(rows):
        vec = [Fraction(x) for x in r]
        for piv, brow in basis:
            if vec[piv]:
                f = vec[piv] / brow[piv]
                vec = [x - f * y for x, y in zip(vec, brow)]
        nz = next((i for i, x in enumerate(vec) if x), None)
        if nz is not None:
            basis.append((nz, vec))
            chosen.append(idx)
    return chosen


@dataclass
class GradingReduction:
    """Central variables fixed to 1 and how to restore them from degrees."""

    names: tuple
    weights: list          # rows: degree of each central variable per grading
    target: list           # total degree of the discriminant per grading
    eliminated: list       # indices of variables set to 1
    kept: list

    def restore(self, poly_kept):
        """Rehomogenize a polynomial in the kept variables."""
        W = self.weights
        T = self.eliminated
        block = [[W[a][t] for t in T] for a in range(len(W))]
        out = {}
        for m, c in poly_kept.terms.items():
            rhs = [self.target[a] - sum(W[a][k] * e for k, e in zip(self.kept, m))
                   for a in range(len(W))]
            sol = _solve_rational(block, rhs)
            if any(s.denominator != 1 or s < 0 for s in sol):
                raise ValueError("discriminant is not homogeneous for the supplied gradings")
            exps = [0] * len(self.names)
            for k, e in zip(self.kept, m):
                exps[k] = e
            for t, s in zip(T, sol):
                exps[t] = int(s)
            out[tuple(exps)] = c
        return Poly(self.names, out, poly_kept.conductor)


def grading_reduction(d, gradings, eliminate=None):
    """Build the reduction for generator gradings (one weight vector per grading)."""
    P = d.P
    rows = []
    for w in gradings:
        if not check_grading(P, w):
            raise ValueError(f"rules are not homogeneous for weights {w}")
        rows.append(w)
    idx = _rank_rows(rows)
    rows = [rows[i] for i in idx]
    W = [[w[P.index[g]] * p for _, g, p in d.central] for w in rows]
    target = [2 * sum(sum(a * b for a, b in zip(m, w)) for m in d.basis) for w in rows]
    r = len(rows)
    nvars = len(d.central)
    if eliminate is None:
        # pick the last r variables whose weight block is invertible
        from itertools import combinations

        for T in sorted(combinations(range(nvars), r), key=lambda t: [-x for x in t]):
            try:
                _solve_rational([[W[a][t] for t in T] for a in range(r)], [0] * r)
                eliminate = list(T)
                break
            except ValueError:
                continue
        if eliminate is None:
            raise ValueError("no invertible weight block")
    else:
        eliminate = [d.names.index(e) if isinstance(e, str) else e for e in eliminate]
    kept = [i for i in range(nvars) if i not in eliminate]
    return GradingReduction(d.names, W, target, sorted(eliminate), kept)


# ---------------------------------------------------------------------------
# determinants


def _substitute_ones(matrix, names, eliminated, kept):
    kept_names = tuple(names[i] for i in kept)
    out = []
    for row in matrix:
        new = []
        for p in row:
            terms = {}
            for m, c in p.terms.items():
                key = tuple(m[i] for i in kept)
                terms[key] = terms[key] + c if key in terms else c
            new.append(Poly(kept_names, {k: v for k, v in terms.items() if v}, p.conductor))
        out.append(new)
    return out


def det_bareiss(matrix):
    return bareiss_det(matrix, lambda a, b: a.exact_div(b))


def degree_bounds(matrix, nvars):
    bounds = []
    for i in range(nvars):
        rows = sum(max((p.degree_in(i) for p in row), default=0) for row in matrix)
        cols = sum(max((matrix[r][c].degree_in(i) for r in range(len(matrix))), default=0)
                   for c in range(len(matrix)))
        bounds.append(max(0, min(rows, cols)))
    return bounds


def _eval_det(args):
    matrix, point = args
    M = [[p.evaluate(point) for p in row] for row in matrix]
    return det(M)


def _workers():
    try:
        return max(1, int(os.environ.get("TAFTSMASH_THREADS", "1")))
    except ValueError:
        return 1


def _newton_interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial through (xs, ys)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * Fraction(1, xs[i] - xs[i - j])
    # expand Newton form
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        new = [None] * (len(poly) + 1)
        new[0] = poly[0] * (-xs[i]) + coef[i]
        for k in range(1, len(poly)):
            new[k] = poly[k] * (-xs[i]) + poly[k - 1]
        new[len(poly)] = poly[-1]
        poly = new
    return poly


def det_interpolate(matrix, names, conductor):
    """Determinant of a polynomial matrix by evaluation on an integer grid and
    tensor-product Newton interpolation."""
    nv = len(names)
    if nv == 0:
        M = [[p.constant_term() for p in row] for row in matrix]
        return Poly(names, {(): det(M)}, conductor)
    bounds = degree_bounds(matrix, nv)
    grids = [list(range(b + 1)) for b in bounds]
    points = [()]
    for g in grids:
        points = [p + (x,) for p in points for x in g]
    one = CycloElem.rational(conductor, 1)
    jobs = [(matrix, [one * x for x in p]) for p in points]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            values = list(ex.map(_eval_det, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        values = [_eval_det(j) for j in jobs]
    table = dict(zip(points, values))
    return Poly(names, _interp_nd(table, grids, 0, ()), conductor)


def _interp_nd(table, grids, axis, prefix):
    """Recursively interpolate along each axis; returns {exponent tuple: coeff}."""
    xs = grids[axis]
    if axis == len(grids) - 1:
        ys = [table[prefix + (x,)] for x in xs]
        coeffs = _newton_interpolate(xs, ys)
        return {(e,): c for e, c in enumerate(coeffs) if c}
    # interpolate the inner axes for each value on this axis, then along this axis
    inner = {x: _interp_nd(table, grids, axis + 1, prefix + (x,)) for x in xs}
    keys = set()
    for v in inner.values():
        keys.update(v)
    out = {}
    for key in keys:
        ys = [inner[x].get(key, CycloElem.rational(1, 0)) for x in xs]
        for e, c in enumerate(_newton_interpolate(xs, ys)):
            if c:
                out[(e,) + key] = c
    return out


def discriminant(d, method="auto", gradings=None, eliminate=None, form=None, raw=False):
    """det(tr(b_i b_j)) normalised so its lex-first coefficient is 1.

    method: "bareiss" (fraction-free elimination on polynomial entries),
    "interpolate" (evaluation on integer grids), or "auto" (bareiss up to
    rank 16, interpolation above).  gradings: optional generator weight
    vectors under which the rules are homogeneous; they let the computation
    run with some central variables set to 1.
    """
    form = form or TraceForm(d)
    matrix = form.matrix
    names = d.names
    if method == "auto":
        method = "bareiss" if d.rank <= 16 else "interpolate"
    red = None
    if gradings:
        red = grading_reduction(d, gradings, eliminate)
        matrix = _substitute_ones(matrix, names, red.eliminated, red.kept)
        work_names = tuple(names[i] for i in red.kept)
    else:
        work_names = names
    if method == "bareiss":
        value = det_bareiss(matrix)
        if not isinstance(value, Poly):
            value = Poly(work_names, {(0,) * len(work_names): value}, d.conductor)
    elif method == "interpolate":
        value = det_interpolate(matrix, work_names, d.conductor)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not value:
        raise SingularTraceForm("the trace form is degenerate")
    if red is not None:
        value = red.restore(value)
    return value if raw else value.normalized()


def equal_up_to_unit(p, q):
    return p.equal_up_to_unit(q)


def degree_census(d, weights):
    """Sum of weighted degrees of the module basis."""
    if isinstance(weights, dict):
        weights = [weights.get(g, 0) for g in d.P.gens]
    return sum(sum(a * b for a, b in zip(m, weights)) for m in d.basis)


# ---------------------------------------------------------------------------
# the concrete algebras


def ore_specialization_decomposition(n, k=1, case="plane", mu=None):
    """R_mu over C_mu = k[u^n, v^n, x^n], with its gradings."""
    from .ncpoly import ore_family, specialize

    mu = mu if mu is not None else CycloElem.zeta(n, 1)
    kappa = 1 if case == "weyl" else 0
    R = specialize(ore_family(mu.conductor, k, kappa), mu)
    d = make_decomposition(R, [("z1", "u", n), ("z2", "v", n), ("z3", "x", n)])
    gradings = [(1, 1, 0), (1, 0, 1)] if case == "plane" else [(1, -1, 2)]
    return d, gradings


def smash_decomposition(smash):
    """A#H over k[u^n, v^n] for the plane or Weyl smash products."""
    n = smash.action.n
    P = smash.presentation
    d = make_decomposition(P, [("z1", "u", n), ("z2", "v", n)])
    if smash.action.target == "qplane":
        gradings = [(1, 1, 0, 0), (1, 0, 0, 1)]
    elif smash.action.target == "weyl":
        gradings = [(1, -1, 0, 2)]
    else:
        gradings = None
    return d, gradings


def expected_ore_plane(n, theta, conductor):
    names = ("z1", "z2", "z3")
    z1, z2, z3 = (Poly.var(names, v, conductor) for v in names)
    a = n * n * (n - 1)
    return (z1 ** a) * ((z2 * z3 + z1 * theta) ** a)


def expected_ore_weyl(n, theta, shift, conductor):
    names = ("z1", "z2", "z3")
    z1, z2, z3 = (Poly.var(names, v, conductor) for v in names)
    a = n * n * (n - 1)
    return (z1 * z2 * z3 + z1 * z1 * theta + z3 * shift) ** a


def weighted_degree(p, weights):
    return p.degree(weights)


def azumaya_report(disc, power_var="z1"):
    """Describe the zero locus of a discriminant in the central variables.

    The locus is exactly {power_var = 0} when the discriminant is a scalar
    times a power of that single variable.
    """
    i = disc.names.index(power_var)
    terms = list(disc.terms.items())
    single = len(terms) == 1
    mono = terms[0][0] if single else None
    pure = single and all(e == 0 for j, e in enumerate(mono) if j != i)
    return {
        "discriminant": repr(disc),
        "is_scalar_times_power": bool(pure),
        "exponent": mono[i] if pure else None,
        "zero_locus": f"{power_var} = 0" if pure and mono[i] > 0 else None,
    }


def weyl_variant_report(n=3, mu=None, disc=None):
    """Compute d(R_mu/C_mu) for the Weyl family and compare with both printed forms:
    the prime z1 z2 z3 + theta z1^2 + (b2/b1) z3, and the variant with plain z3."""
    from .poisson import prop33_coefficients

    d, gr = ore_specialization_decomposition(n, -2, "weyl", mu)
    if disc is None:
        disc = discriminant(d, "interpolate", gradings=gr)
    co = prop33_coefficients(n, -2, "weyl", mu)
    with_shift = expected_ore_weyl(n, co.theta, co.b2 * co.b1.inverse(), d.conductor)
    plain = expected_ore_weyl(n, co.theta, 1, d.conductor)
    return {
        "n": n,
        "rank": d.rank,
        "terms": len(disc.terms),
        "matches_b2_over_b1_form": disc.equal_up_to_unit(with_shift),
        "matches_plain_z3_form": disc.equal_up_to_unit(plain),
        "discriminant": disc,
    }
