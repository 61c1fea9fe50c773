"""Command-line front end.

Every command prints one JSON report with a stable ``schema_version``.  Exit
codes: 0 success, 1 verification mismatch, 2 invalid parameters.  The
``timing`` field is the only part of a report that varies between runs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .exactfield import CycloElem, primitive_roots

SCHEMA_VERSION = "taftsmash.report/1"

COMMANDS = ("hopf-verify", "classify", "fixed-ring", "center", "prime", "poisson",
            "disc", "rauto", "confluence")


class InvalidParams(ValueError):
    pass


# ---------------------------------------------------------------------------
# parameters


def _root(order, power=1):
    return CycloElem.zeta(order, power % order)


def _check_n(n):
    if n is None or n < 2:
        raise InvalidParams("--n must be at least 2")


def _mu_order(args):
    m = args.mu_order if args.mu_order is not None else args.n
    if m < 2:
        raise InvalidParams("--mu-order must be at least 2")
    return m


def _action_params(args):
    """Validated (n, m, lam, mu) for commands that need a concrete action."""
    _check_n(args.n)
    n = args.n
    m = _mu_order(args)
    if args.target in ("qplane", "weyl") and n % m:
        raise InvalidParams(f"mu-order {m} must divide n = {n}")
    if args.target == "weyl" and (n % 2 == 0 or m != n):
        raise InvalidParams("the Weyl target needs n odd and mu of order n")
    mu = _root(m)
    if args.target == "weyl":
        lam = mu ** -2 if args.family == 1 else mu ** 2
    elif args.target == "qmatrices":
        lam = mu ** -2
    else:
        lam = _root(n, args.lam_power)
        if lam.multiplicative_order() != n:
            raise InvalidParams("--lam-power must give a primitive n-th root")
    return n, m, lam, mu


def _action(args):
    from .hopfact import InvalidAction, make_action

    n, m, lam, mu = _action_params(args)
    try:
        return make_action(args.target, n, lam, mu, family=args.family)
    except InvalidAction as exc:
        raise InvalidParams(str(exc)) from exc


def _span_json(span):
    return {"dim": span.dim(), "basis": [repr(e) for e in span.basis]}


# ---------------------------------------------------------------------------
# commands; each returns (results, expected, ok)


def cmd_hopf_verify(args):
    from .hopfact import TaftAlgebra, verify_hopf_axioms

    _check_n(args.n)
    results = []
    ok = True
    for lam in primitive_roots(args.n):
        rep = verify_hopf_axioms(TaftAlgebra(args.n, lam))
        ok = ok and rep.passed
        results.append({"lam": repr(lam), "passed": rep.passed,
                        "failures": [str(f) for f in rep.failures[:5]]})
    return {"algebras": results}, {"all_axioms_hold": True}, ok


def cmd_classify(args):
    from .hopfact import InvalidAction, classify_linear_actions, verify_module_algebra

    _check_n(args.n)
    m = _mu_order(args)
    if args.target not in ("qplane", "weyl"):
        raise InvalidParams("classify supports --target qplane or weyl")
    try:
        fams = classify_linear_actions(args.n, _root(m), args.target)
    except InvalidAction as exc:
        raise InvalidParams(str(exc)) from exc
    out = []
    ok = True
    for f in fams:
        rep = verify_module_algebra(f.action, args.degree)
        ok = ok and rep.passed
        out.append({**f.describe(), "module_algebra_verified": rep.passed})
    divides = args.n % m == 0
    if args.target == "qplane":
        expected_nonempty = divides
    else:
        expected_nonempty = divides and m == args.n and args.n % 2 == 1
    ok = ok and (bool(fams) == expected_nonempty)
    return ({"families": out, "count": len(fams)},
            {"nonempty": expected_nonempty, "mu_order_divides_n": divides}, ok)


def _expected_fixed(action, D):
    from .structure import power_monomial_span

    A = action.A
    if action.target in ("qplane", "weyl"):
        steps = (action.mu.multiplicative_order(), action.n)
        if action.family == 2:
            # x moves u to v, so the roles of the generators swap
            steps = steps[::-1]
        return power_monomial_span(A, steps, D), f"k[u^{steps[0]}, v^{steps[1]}]"
    if action.target == "affine3":
        n = action.n
        return power_monomial_span(A, (n, n, n), D), f"k[u^{n}, v^{n}, w^{n}]"
    if action.target == "qmatrices":
        from .structure import subalgebra_span

        n = action.n
        a, b, c, d = (A.gen(g) for g in "abcd")
        gens = [c ** n, d ** n] + [a ** i * b ** (n - i) for i in range(n + 1)]
        return subalgebra_span(A, gens, D), f"k<c^{n}, d^{n}, a^i b^j (i+j={n})>"
    return None, None


def cmd_fixed_ring(args):
    from .structure import fixed_ring

    act = _action(args)
    D = args.degree if args.degree is not None else 2 * act.n
    span = fixed_ring(act, D)
    expected, label = _expected_fixed(act, D)
    ok = expected is None or span == expected
    return ({"fixed_ring": _span_json(span), "degree_bound": D},
            {"generators": label, "span": _span_json(expected) if expected else None}, ok)


def cmd_center(args):
    from .hopfact import build_smash
    from .structure import center_truncated, check_center_relations, power_monomial_span

    act = _action(args)
    s = build_smash(act)
    n = act.n
    D = args.degree if args.degree is not None else 2 * n
    z = center_truncated(s, D)
    P = s.presentation
    expected = power_monomial_span(P, (n, n, 1, 1), D)
    # the expected span lives in degree 0 of g and x
    exp_basis = [e for e in expected.basis if all(m[-2:] == (0, 0) for m in e.terms)]
    from .structure import GradedSpan

    expected = GradedSpan(P, D, exp_basis)
    relations = all(check_center_relations(s, e).passed for e in z.basis)
    ok = (z == expected) and relations
    return ({"center": _span_json(z), "degree_bound": D, "center_relations_hold": relations},
            {"span": _span_json(expected)}, ok)


def cmd_prime(args):
    from .hopfact import build_smash, is_prime_smash

    act = _action(args)
    prime, witness = is_prime_smash(build_smash(act))
    expected = act.mu.multiplicative_order() == act.n
    return ({"prime": prime, "witness": repr(witness) if witness is not None else None},
            {"prime": expected}, prime == expected)


def cmd_poisson(args):
    from .poisson import (closed_form_algebra, delta_power, family_context, induced_algebra,
                          is_poisson_normal, ore_data, prime_candidates, prop33_coefficients,
                          verify_poisson_ore)

    _check_n(args.n)
    case = "weyl" if args.target == "weyl" else "plane"
    k = args.k if args.k is not None else (-2 if case == "weyl" else 1)
    if case == "weyl" and (args.n % 2 == 0 or k != -2):
        raise InvalidParams("the Weyl case needs n odd and k = -2")
    if k % args.n == 0:
        raise InvalidParams("k must be nonzero mod n")
    co = prop33_coefficients(args.n, k, case)
    ctx = family_context(args.n, k, case)
    computed = induced_algebra(ctx)
    closed = closed_form_algebra(co)
    table_ok = computed.table_equal(closed)
    verdicts = {}
    normal_ok = True
    for name, (y, want) in prime_candidates(co).items():
        got = is_poisson_normal(computed, y)
        verdicts[name] = got
        normal_ok = normal_ok and got == want
    B, pair = ore_data(co)
    ore = verify_poisson_ore(B, pair, closed, "z3")
    dp = delta_power(args.n, k, case, co.mu.conductor)[0]
    ok = table_ok and normal_ok and ore.passed and dp and co.c1_is_k_plus_1_b1
    return ({"coefficients": co.as_dict(), "pbw_table_matches_closed_form": table_ok,
             "poisson_normal": verdicts, "ore_extension_checks": ore.checks,
             "delta_power_identity": dp},
            {"poisson_normal": {k_: w for k_, (_, w) in prime_candidates(co).items()}}, ok)


def cmd_disc(args):
    from . import discriminant as dm
    from .hopfact import build_smash
    from .poisson import prop33_coefficients

    _check_n(args.n)
    n = args.n
    if args.algebra == "smash":
        if args.target != "qplane":
            raise InvalidParams("the smash discriminant is implemented for --target qplane")
        if n > 2 and not args.heavy:
            raise InvalidParams("n > 2 needs --heavy")
        act = _action(args)
        d, gr = dm.smash_decomposition(build_smash(act))
        disc = dm.discriminant(d, args.method, gradings=gr)
        expo = 2 * n ** 3 * (n - 1)
        from .polys import Poly

        expected = Poly.var(d.names, "z1", d.conductor) ** expo
        ok = disc.equal_up_to_unit(expected)
        report = dm.azumaya_report(disc)
        return ({"rank": d.rank, "discriminant": repr(disc), "in_terms_of_u": f"u^{n * expo}",
                 "azumaya": report},
                {"discriminant": f"z1^{expo} (= u^{n * expo})"}, ok)
    case = "weyl" if args.target == "weyl" else "plane"
    k = args.k if args.k is not None else (-2 if case == "weyl" else 1)
    if case == "weyl" and (n % 2 == 0 or k != -2):
        raise InvalidParams("the Weyl case needs n odd and k = -2")
    if k % n == 0:
        raise InvalidParams("k must be nonzero mod n")
    if (n > 2 or case == "weyl") and not args.heavy:
        raise InvalidParams("this instance needs --heavy")
    d, gr = dm.ore_specialization_decomposition(n, k, case)
    method = "interpolate" if args.method == "auto" and d.rank > 8 else args.method
    disc = dm.discriminant(d, method, gradings=gr)
    co = prop33_coefficients(n, k, case)
    census = dm.degree_census(d, (2, 1, 1))
    if case == "plane":
        expected = dm.expected_ore_plane(n, co.theta, d.conductor)
        ok = disc.equal_up_to_unit(expected)
        exp_text = f"z1^a (z2 z3 + theta z1)^a, a = {n * n * (n - 1)}"
        extra = {}
    else:
        rep = dm.weyl_variant_report(n, disc=disc)
        ok = rep["matches_b2_over_b1_form"]
        exp_text = f"(z1 z2 z3 + theta z1^2 + (b2/b1) z3)^a, a = {n * n * (n - 1)}"
        extra = {"matches_b2_over_b1_form": rep["matches_b2_over_b1_form"],
                 "matches_plain_z3_form": rep["matches_plain_z3_form"]}
    return ({"rank": d.rank, "discriminant_terms": len(disc.terms), "discriminant": repr(disc),
             "degree_census": census, "weighted_degree": disc.degree((2 * n, n, n)), **extra},
            {"form": exp_text, "theta": repr(co.theta), "degree_census": 2 * n ** 3 * (n - 1)}, ok)


def cmd_rauto(args):
    from . import rauto as ra

    if args.mode == "map":
        if not args.map:
            raise InvalidParams("--mode map needs --map FILE")
        with open(args.map) as fh:
            try:
                e = ra.Endomorphism.from_json(json.load(fh))
            except (KeyError, ValueError, TypeError) as exc:
                raise InvalidParams(f"bad endomorphism file: {exc}") from exc
        kind, params = ra.parity(e)
        hom = ra.is_homomorphism(e)
        res = {"homomorphism": hom, "restricted": e.restricted, "parity": kind,
               "params": repr(params) if params else None,
               "disc_preservation": ra.disc_preservation_detail(e) if hom else None,
               "bijective_on_slice": ra.slice_bijective(e, 4) if hom else None}
        return res, {}, hom
    if args.mode == "inner":
        e = ra.inner_conjugation(1)
        inv = ra.inner_conjugation(-1)
        res = {"map": repr(e), "homomorphism": ra.is_homomorphism(e), "restricted": e.restricted,
               "two_sided_inverse": ra.is_identity(ra.compose(e, inv))
               and ra.is_identity(ra.compose(inv, e)),
               "parity": ra.parity(e)[0]}
        ok = res["parity"] != "neither"
        return res, {"parity": "even or odd"}, ok
    if args.mode == "search":
        reps = [ra.theorem_search(eps, th, args.degree or 3, seed=args.seed).as_dict()
                for eps, th in ((1, 1), (-1, 2))]
        return {"searches": reps}, {"counterexamples": 0}, all(r["passed"] for r in reps)
    # lemma: random even/odd draws
    rng = random.Random(args.seed)
    draws = []
    ok = True
    for _ in range(args.draws):
        a, b = ra.random_params(rng, "even"), ra.random_params(rng, "odd")
        ea, eb = ra.build(a), ra.build(b)
        inv = ra.build_even(ra.inverse_even(a))
        row = {
            "homomorphism": ra.is_homomorphism(ea) and ra.is_homomorphism(eb),
            "bijective_on_slice": bool(ra.slice_bijective(ea, 4) and ra.slice_bijective(eb, 4)),
            "inverse": ra.is_identity(ra.compose(ea, inv)) and ra.is_identity(ra.compose(inv, ea)),
            "parity_table": [ra.parity(ra.compose(x, y))[0] for x, y in
                             ((ea, ea), (ea, eb), (eb, ea), (eb, eb))] == ["even", "odd", "odd", "even"],
            "disc_preservation": ra.check_disc_preservation(ea) and ra.check_disc_preservation(eb),
        }
        ok = ok and all(row.values())
        draws.append(row)
    psi = ra.build_odd(ra.OddParams())
    psi2 = ra.parity(ra.compose(psi, psi))[0]
    ok = ok and psi2 == "even"
    return ({"draws": len(draws), "all_passed": ok, "failures": [r for r in draws if not all(r.values())],
             "psi_psi_parity": psi2}, {"all_passed": True}, ok)


def _confluence_targets():
    from .hopfact import build_smash, make_action
    from .ncpoly import (ore_family, polynomial_ring, quantum_affine3, quantum_matrices,
                         quantum_plane, quantum_weyl, taft_presentation)

    z3, z2 = _root(3), _root(2)
    return {
        "qplane": lambda: quantum_plane(z3),
        "weyl": lambda: quantum_weyl(z3),
        "polyring": lambda: polynomial_ring(1),
        "affine3": lambda: quantum_affine3(z3, z3),
        "qmatrices": lambda: quantum_matrices(z3),
        "taft": lambda: taft_presentation(3, z3),
        "ore": lambda: ore_family(1, 1),
        "smash": lambda: build_smash(make_action("qplane", 2, z2, z2)).presentation,
    }


def cmd_confluence(args):
    from .ncpoly import verify_confluence

    targets = _confluence_targets()
    names = list(targets) if args.target == "all" else [args.target]
    if any(t not in targets for t in names):
        raise InvalidParams(f"--target must be one of {sorted(targets)} or all")
    out = {}
    for t in names:
        rep = verify_confluence(targets[t]())
        out[t] = {"passed": rep.passed, "checked": rep.checked,
                  "failure": repr(rep.failure) if rep.failure is not None else None}
    return {"presentations": out}, {"confluent": True}, all(r["passed"] for r in out.values())


HANDLERS = {
    "hopf-verify": cmd_hopf_verify,
    "classify": cmd_classify,
    "fixed-ring": cmd_fixed_ring,
    "center": cmd_center,
    "prime": cmd_prime,
    "poisson": cmd_poisson,
    "disc": cmd_disc,
    "rauto": cmd_rauto,
    "confluence": cmd_confluence,
}


def build_parser():
    p = argparse.ArgumentParser(prog="taftsmash", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--mu-order", type=int, default=None, help="order of mu (default n)")
    p.add_argument("--lam-power", type=int, default=1, help="lam = zeta_n^power (plane targets)")
    p.add_argument("--family", type=int, default=1, choices=(1, 2))
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--target", default="qplane")
    p.add_argument("--degree", type=int, default=None, help="degree bound D")
    p.add_argument("--algebra", choices=("smash", "ore"), default="smash",
                   help="disc: smash product over k[u^n, v^n] or the specialized family")
    p.add_argument("--method", choices=("auto", "bareiss", "interpolate"), default="auto")
    p.add_argument("--heavy", action="store_true")
    p.add_argument("--mode", choices=("lemma", "search", "inner", "map"), default="lemma")
    p.add_argument("--map", default=None, help="rauto: endomorphism JSON file")
    p.add_argument("--draws", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    return p


def run(argv=None):
    """Run one job; returns (exit code, report dict)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "classify" and args.degree is None:
        args.degree = 6
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("output",)}
    start = time.perf_counter()
    try:
        results, expected, ok = HANDLERS[args.command](args)
    except InvalidParams as exc:
        report = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": inputs,
                  "error": str(exc), "verdict": "INVALID"}
        return 2, report
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "expected": expected,
        "verdict": "MATCH" if ok else "MISMATCH",
        "timing": {"wall_seconds": round(time.perf_counter() - start, 3)},
    }
    return (0 if ok else 1), report


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, default=str)


def main(argv=None):
    code, report = run(argv)
    text = dumps(report)
    args = build_parser().parse_known_args(argv)[0]
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
