"""The ellwitt command line: one addressable subcommand per verifiable
claim, JSON reports, and the one-shot verification suite.

Exit codes: 0 success, 1 usage error (including out-of-range arguments),
2 validation failure (two methods disagree — the printed counterexample
names the prime, the curve and the methods involved).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import cache, formalgroup, modforms, padicwitt, sslocus
from .arith import PrimeField, fq2_context, has_sqrt3, is_prime
from .errors import ValidationError
from .formalgroup import MAX_FORMAL_PRIME, WCurve
from .modforms import MAX_EISENSTEIN_PRIME
from .padicwitt import (
    MAX_LIFT_PRECISION,
    MAX_SPLIT_PRECISION,
    MAX_SPLIT_PRIME,
)
from .polyseries import QQ
from .report import Report, padic_digits
from .sslocus import (
    MAX_DEURING_PRIME,
    MAX_POINT_COUNT_PRIME,
    MONSTER_PRIMES,
)

DEFAULT_PRECISION = 10
_VERIFY_PRIMES = (5, 7, 11, 13)


class UsageError(Exception):
    pass


def _require_prime(p: int, bound: int, what: str) -> None:
    if not is_prime(p) or p <= 3:
        raise UsageError(f"{what}: --prime must be a prime > 3, got {p}")
    if p > bound:
        raise UsageError(f"{what}: enforced bound is p <= {bound}, got {p}")


def _sorted_j(js):
    return sorted(js, key=lambda z: (z.a, z.b))


# --- section builders (all deterministic) ---


def ss_section(p: int) -> dict:
    key = {"p": p}
    hit = cache.load("ss", key)
    if hit is not None:
        return hit
    locus = sslocus.cross_validate(p)
    payload = {
        "prime": p,
        "sigma": locus.sigma,
        "all_rational": locus.all_rational,
        "j_values": [[z.a, z.b] for z in _sorted_j(locus.j_values)],
        "ss_poly": [c.value for c in locus.ss_poly.coeffs],
        "ss_poly_str": locus.ss_poly.pretty(),
        "point_count_checked": p <= MAX_POINT_COUNT_PRIME,
    }
    cache.store("ss", key, payload)
    return payload


def hasse_section(p: int) -> dict:
    H = sslocus.hasse_polynomial(p)
    ctx = fq2_context(p)
    from .polyseries import roots_in_field
    lams = _sorted_j(roots_in_field(H, ctx))
    return {
        "prime": p,
        "degree": H.degree,
        "hasse_poly": [c.value for c in H.coeffs],
        "lambda_roots": [[z.a, z.b] for z in lams],
        "j_images": [[z.a, z.b] for z in
                     _sorted_j({sslocus.legendre_to_j(lam)
                                for lam in lams})],
    }


def lift_section(p: int, N: int) -> dict:
    key = {"n": N, "p": p}
    hit = cache.load("lift", key)
    if hit is not None:
        return hit
    shat = padicwitt.lift_ss_poly(p, N)
    wctx = shat.ring
    payload = {
        "prime": p,
        "precision": N,
        "digit_order": "little-endian base-p",
        "modulus_g1": padic_digits(wctx.G1, p, N),
        "modulus_g0": padic_digits(wctx.G0, p, N),
        "coeffs": [{"a": padic_digits(c.a, p, N),
                    "b": padic_digits(c.b, p, N)} for c in shat.coeffs],
        "frobenius_fixed": True,
        "reduces_to_ss_poly": True,
    }
    cache.store("lift", key, payload)
    return payload


def split_section(p: int, N: int) -> dict:
    idems = padicwitt.splitting_idempotents(p, N)
    return {
        "prime": p,
        "precision": N,
        "digit_order": "little-endian base-p",
        "count": len(idems),
        "idempotents": [[{"a": padic_digits(c.a, p, N),
                          "b": padic_digits(c.b, p, N)}
                         for c in e.coeffs] for e in idems],
        "orthogonal": True,
        "sum_to_one": True,
    }


def formal_section(p: int, a4: int, a6: int) -> dict:
    field = PrimeField(p)
    E = WCurve.short(field, a4, a6)
    v1, v2 = formalgroup.v_invariants(E, p)
    lift = WCurve.short(QQ, E.a4.value, E.a6.value)
    ps = formalgroup.mult_by_p_series(lift, p)
    return {
        "prime": p,
        "a4": E.a4.value,
        "a6": E.a6.value,
        "v1": v1.value,
        "v2": None if v2 is None else v2.value,
        "supersingular": v2 is not None,
        "series_mod_p": [ps.series_mod_p.coeff(k).value
                         for k in range(p * p + 1)],
        "series_rational": [str(ps.series.coeff(k))
                            for k in range(p * p + 1)],
    }


def deligne_section(p: int) -> dict:
    r = formalgroup.verify_deligne(p)
    return {
        "prime": p,
        "curves_checked": r.curves_checked,
        "supersingular_curves": r.supersingular_curves,
        "three_way_agreement": True,
    }


def gl_section(p: int) -> dict:
    r = formalgroup.verify_gross_landweber(p)
    return {
        "prime": p,
        "sign": r.sign,
        "exponent": (p * p - 1) // 12,
        "curves": [{"j": e.j, "a4": e.a4, "a6": e.a6, "v2": e.v2,
                    "predicted": e.predicted, "match": e.match,
                    "ratio": e.ratio,
                    "ratio_pow_of_12": e.ratio_pow_of_12}
                   for e in r.entries],
        "all_match": r.all_match,
        "common_power_of_12": r.common_power_of_12,
    }


def ogg_section(p_max: int) -> dict:
    primes = sslocus.ogg_scan(p_max)
    monster = [q for q in MONSTER_PRIMES if 3 < q <= p_max]
    return {
        "max": p_max,
        "primes": primes,
        "monster_primes_in_range": monster,
        "match": primes == monster,
    }


def sqrt3_section(p_max: int) -> dict:
    exceptions = []
    checked = 0
    for p in range(5, p_max + 1):
        if not is_prime(p):
            continue
        checked += 1
        if has_sqrt3(p) != (p % 12 in (1, 11)):
            exceptions.append(p)
    if exceptions:
        raise ValidationError(
            f"sqrt(3) rule fails at primes {exceptions}")
    return {
        "max": p_max,
        "primes_checked": checked,
        "all_match_mod_12_rule": True,
        "exceptions": [],
    }


def forms_section(k: int, prec: int) -> dict:
    e = modforms.eisenstein_q(k, prec)
    return {
        "weight": k,
        "prec": prec,
        "eisenstein_q": [str(e.coeff(n)) for n in range(prec)],
    }


def _q_identities_section() -> dict:
    prec = 200
    e4 = modforms.eisenstein_q(4, prec)
    e6 = modforms.eisenstein_q(6, prec)
    lhs = e4 ** 3 - e6 ** 2
    rhs = modforms.eta24_q(prec).scale(Fraction(1728))
    if not (lhs - rhs).is_zero():
        raise ValidationError(
            "E4^3 - E6^2 != 1728 * eta^24 at q-precision 200")
    j = modforms.j_q(4)
    if (j.coeff(-1), j.coeff(0), j.coeff(1)) != (1, 744, 196884):
        raise ValidationError("j-expansion leading terms are wrong")
    return {"eta24_prec": prec, "delta_identity": True,
            "j_leading_terms": [1, 744, 196884]}


def verify_all_section(p_max: int) -> dict:
    out = {}
    eis_max = min(p_max, MAX_EISENSTEIN_PRIME)
    primes = [p for p in range(5, eis_max + 1) if is_prime(p)]
    for p in primes:
        locus = sslocus.cross_validate(p)   # raises on any disagreement
        if locus.ss_poly.degree != sslocus.sigma(p):
            raise ValidationError(f"degree formula fails at p={p}")
    out["degree_formula"] = {"primes": primes, "ok": True}
    out["three_method_agreement"] = {
        "primes": primes,
        "point_count_primes": [p for p in primes
                               if p <= MAX_POINT_COUNT_PRIME],
        "ok": True,
    }
    spot = {7: [[6, 0]], 11: [[0, 0], [1, 0]], 13: [[5, 0]]}
    for p, want in spot.items():
        if p > eis_max:
            continue
        got = [[z.a, z.b]
               for z in _sorted_j(sslocus.cross_validate(p).j_values)]
        if got != want:
            raise ValidationError(f"spot locus at p={p}: {got} != {want}")
    out["spot_values"] = {"ok": True}
    formal_primes = [p for p in _VERIFY_PRIMES if p <= max(p_max, 5)]
    out["deligne"] = {str(p): deligne_section(p) for p in formal_primes}
    gl = {str(p): gl_section(p) for p in formal_primes}
    powers = {s["common_power_of_12"] for s in gl.values()}
    if len(powers) != 1 or None in powers:
        raise ValidationError(
            f"Gross-Landweber normalization inconsistent: powers {powers}")
    out["gross_landweber"] = gl
    out["gross_landweber_power_of_12"] = powers.pop()
    witt = {"primes": primes, "precisions": [1, 5, 10], "ok": True}
    for p in primes:
        for N in (1, 5, 10):
            padicwitt.lift_ss_poly(p, N)   # raises on any broken assertion
    out["witt_layer"] = witt
    split_primes = [p for p in primes if p <= MAX_SPLIT_PRIME]
    for p in split_primes:
        padicwitt.splitting_idempotents(p, DEFAULT_PRECISION)
    out["splitting"] = {"primes": split_primes,
                        "precision": DEFAULT_PRECISION, "ok": True}
    ogg = ogg_section(min(p_max, 71))
    if not ogg["match"]:
        raise ValidationError(
            f"Ogg scan mismatch: {ogg['primes']} != "
            f"{ogg['monster_primes_in_range']}")
    out["ogg"] = ogg
    out["sqrt3"] = sqrt3_section(10 ** 4)
    out["q_identities"] = _q_identities_section()
    return out


# --- human-readable rendering ---


def _print_ss(s: dict) -> None:
    print(f"p = {s['prime']}   sigma = {s['sigma']}   "
          f"all j in F_p: {'yes' if s['all_rational'] else 'no'}")
    js = ", ".join(f"{a}" if b == 0 else f"{a}+{b}x"
                   for a, b in s["j_values"])
    print(f"supersingular j-values: {js}")
    print(f"ss polynomial: {s['ss_poly_str']}")
    methods = "eisenstein = deuring"
    if s["point_count_checked"]:
        methods += " = point-count"
    print(f"methods agree: {methods}")


def _print_hasse(s: dict) -> None:
    from .polyseries import Poly
    print(f"p = {s['prime']}   degree {s['degree']}")
    field = PrimeField(s["prime"])
    print("hasse polynomial:",
          Poly(field, s["hasse_poly"]).pretty("L"))
    lams = ", ".join(f"{a}" if b == 0 else f"{a}+{b}x"
                     for a, b in s["lambda_roots"])
    js = ", ".join(f"{a}" if b == 0 else f"{a}+{b}x"
                   for a, b in s["j_images"])
    print(f"lambda roots in F_p^2: {lams}")
    print(f"j images: {js}")


def _print_lift(s: dict) -> None:
    print(f"p = {s['prime']}   precision N = {s['precision']}   "
          f"(digits little-endian base p)")
    print(f"W-modulus: X^2 + [{s['modulus_g1']}]*X + [{s['modulus_g0']}]")
    for i, c in enumerate(s["coeffs"]):
        print(f"  X^{i}: a = {c['a']}   b = {c['b']}")
    print("frobenius-fixed: yes   reduces to ss polynomial: yes")


def _print_split(s: dict) -> None:
    print(f"p = {s['prime']}   precision N = {s['precision']}   "
          f"{s['count']} idempotents (digits little-endian base p)")
    for k, e in enumerate(s["idempotents"]):
        print(f"idempotent e_{k}:")
        for i, c in enumerate(e):
            print(f"  X^{i}: a = {c['a']}   b = {c['b']}")
    print("orthogonal: yes   sum to one: yes")


def _print_formal(s: dict) -> None:
    p = s["prime"]
    print(f"p = {p}   curve y^2 = x^3 + {s['a4']}x + {s['a6']} over F_{p}")
    kind = "supersingular" if s["supersingular"] else "ordinary"
    v2 = "-" if s["v2"] is None else s["v2"]
    print(f"v1 = {s['v1']}   v2 = {v2}   ({kind})")
    nz = [(k, c) for k, c in enumerate(s["series_mod_p"]) if c]
    terms = " + ".join(f"{c}*t^{k}" for k, c in nz)
    print(f"[p](t) mod {p} = {terms}")
    head = ", ".join(s["series_rational"][1:min(8, len(s['series_rational']))])
    print(f"[p](t) over Q starts: t-coefficients {head}, ...")


def _print_deligne(s: dict) -> None:
    print(f"OK: {s['curves_checked']} curves, 3-way agreement "
          f"(formal v1 = classical Hasse = E_(p-1) form at (c4,-c6)) "
          f"at p = {s['prime']}; {s['supersingular_curves']} supersingular")


def _print_gl(s: dict) -> None:
    print(f"p = {s['prime']}   sign (-1)^((p-1)/2) = {s['sign']:+d}   "
          f"exponent (p^2-1)/12 = {s['exponent']}")
    for c in s["curves"]:
        mark = "OK " if c["match"] else "OFF"
        print(f"  {mark} j={c['j']}: v2={c['v2']} predicted={c['predicted']}"
              f" ratio={c['ratio']} (12^{c['ratio_pow_of_12']})")
    print(f"all match: {'yes' if s['all_match'] else 'no'}   "
          f"common power of 12: {s['common_power_of_12']}")


def _print_ogg(s: dict) -> None:
    print(f"primes p <= {s['max']} with all supersingular j in F_p:")
    print(" ", " ".join(str(p) for p in s["primes"]))
    verdict = "matches" if s["match"] else "DOES NOT match"
    print(f"{verdict} the Monster primes in range: "
          + " ".join(str(p) for p in s["monster_primes_in_range"]))


def _print_sqrt3(s: dict) -> None:
    print(f"checked {s['primes_checked']} primes 3 < p <= {s['max']}: "
          f"sqrt(3) exists mod p iff p = +-1 mod 12 "
          f"({'no exceptions' if not s['exceptions'] else s['exceptions']})")


def _print_forms(s: dict) -> None:
    print(f"E_{s['weight']} to q-precision {s['prec']}:")
    for n, c in enumerate(s["eisenstein_q"]):
        print(f"  q^{n}: {c}")


def _print_verify_all(s: dict) -> None:
    print("degree formula        OK  primes",
          f"5..{s['degree_formula']['primes'][-1]}")
    print("three-method j-sets   OK  (point count through p <= 31)")
    print("spot loci 7/11/13     OK")
    for p, d in s["deligne"].items():
        print(f"deligne p={p:<3}         OK  {d['curves_checked']} curves")
    print(f"gross-landweber       OK  power-of-12 offset "
          f"{s['gross_landweber_power_of_12']}")
    print("witt layer            OK  N in {1,5,10}")
    sp = s["splitting"]["primes"]
    print(f"splitting             OK  primes 5..{sp[-1] if sp else '-'}, "
          f"N = {s['splitting']['precision']}")
    print("ogg scan              OK ", " ".join(map(str, s["ogg"]["primes"])))
    print(f"sqrt3 exercise        OK  {s['sqrt3']['primes_checked']} primes")
    print("q-identities          OK  eta24 at prec 200, j leading terms")


# --- argument parsing and dispatch ---


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="ellwitt", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true",
                        help="emit the JSON report instead of a table")
        return sp

    sp = add("ss", f"supersingular locus (cross-validated; "
                   f"p <= {MAX_EISENSTEIN_PRIME})")
    sp.add_argument("--prime", type=int, required=True)

    sp = add("hasse", f"Deuring lambda-polynomial and its roots "
                      f"(p <= {MAX_DEURING_PRIME})")
    sp.add_argument("--prime", type=int, required=True)

    sp = add("lift", f"Teichmuller-lifted supersingular polynomial "
                     f"(p <= {MAX_EISENSTEIN_PRIME}, "
                     f"N <= {MAX_LIFT_PRECISION})")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    sp = add("split", f"idempotent splitting mod (p^N, S_p-hat) "
                      f"(p <= {MAX_SPLIT_PRIME}, "
                      f"N <= {MAX_SPLIT_PRECISION})")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    sp = add("formal", f"[p]-series and v1/v2 of one curve "
                       f"(p <= {MAX_FORMAL_PRIME})")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--a4", type=int, required=True)
    sp.add_argument("--a6", type=int, required=True)

    ver = sub.add_parser("verify", help="verification suites")
    vsub = ver.add_subparsers(dest="verify_what", required=True)
    for name in ("deligne", "gross-landweber"):
        sp = vsub.add_parser(name)
        sp.add_argument("--prime", type=int, required=True,
                        help="one of 5, 7, 11, 13")
        sp.add_argument("--json", action="store_true")
    sp = vsub.add_parser("all")
    sp.add_argument("--max", type=int, default=MAX_EISENSTEIN_PRIME)
    sp.add_argument("--json", action="store_true")

    scan = sub.add_parser("scan", help="per-prime scans")
    ssub = scan.add_subparsers(dest="scan_what", required=True)
    sp = ssub.add_parser("ogg")
    sp.add_argument("--max", type=int, required=True,
                    help=f"upper bound (<= {MAX_DEURING_PRIME})")
    sp.add_argument("--json", action="store_true")
    sp = ssub.add_parser("sqrt3")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = add("forms", "exact Eisenstein q-expansion")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--prec", type=int, default=10)
    return top


def _dispatch(args):
    report = Report()
    t0 = time.perf_counter()
    if args.command == "ss":
        _require_prime(args.prime, MAX_EISENSTEIN_PRIME, "ss")
        report.prime = args.prime
        report.sections["ss_locus"] = ss_section(args.prime)
        printer = _print_ss
    elif args.command == "hasse":
        _require_prime(args.prime, MAX_DEURING_PRIME, "hasse")
        report.prime = args.prime
        report.sections["hasse"] = hasse_section(args.prime)
        printer = _print_hasse
    elif args.command == "lift":
        _require_prime(args.prime, MAX_EISENSTEIN_PRIME, "lift")
        if not 1 <= args.precision <= MAX_LIFT_PRECISION:
            raise UsageError(
                f"lift: enforced bound is 1 <= N <= {MAX_LIFT_PRECISION}")
        report.prime, report.precision = args.prime, args.precision
        report.sections["lift"] = lift_section(args.prime, args.precision)
        printer = _print_lift
    elif args.command == "split":
        _require_prime(args.prime, MAX_SPLIT_PRIME, "split")
        if not 1 <= args.precision <= MAX_SPLIT_PRECISION:
            raise UsageError(
                f"split: enforced bound is 1 <= N <= {MAX_SPLIT_PRECISION}")
        report.prime, report.precision = args.prime, args.precision
        report.sections["split"] = split_section(args.prime, args.precision)
        printer = _print_split
    elif args.command == "formal":
        _require_prime(args.prime, MAX_FORMAL_PRIME, "formal")
        report.prime = args.prime
        report.sections["formal"] = formal_section(
            args.prime, args.a4, args.a6)
        printer = _print_formal
    elif args.command == "verify" and args.verify_what == "deligne":
        if args.prime not in _VERIFY_PRIMES:
            raise UsageError(
                f"verify deligne: enforced range is p in {_VERIFY_PRIMES}")
        report.prime = args.prime
        report.sections["deligne"] = deligne_section(args.prime)
        printer = _print_deligne
    elif args.command == "verify" and args.verify_what == "gross-landweber":
        if args.prime not in _VERIFY_PRIMES:
            raise UsageError(f"verify gross-landweber: enforced range is "
                             f"p in {_VERIFY_PRIMES}")
        report.prime = args.prime
        report.sections["gross_landweber"] = gl_section(args.prime)
        printer = _print_gl
    elif args.command == "verify" and args.verify_what == "all":
        report.sections["verify_all"] = verify_all_section(args.max)
        printer = _print_verify_all
    elif args.command == "scan" and args.scan_what == "ogg":
        if args.max > MAX_DEURING_PRIME:
            raise UsageError(
                f"scan ogg: enforced bound is max <= {MAX_DEURING_PRIME}")
        report.sections["ogg"] = ogg_section(args.max)
        printer = _print_ogg
    elif args.command == "scan" and args.scan_what == "sqrt3":
        report.sections["sqrt3"] = sqrt3_section(args.max)
        printer = _print_sqrt3
    elif args.command == "forms":
        if args.weight < 4 or args.weight % 2:
            raise UsageError("forms: --weight must be even and >= 4")
        if args.weight > modforms.MAX_BERNOULLI:
            raise UsageError(f"forms: enforced bound is weight <= "
                             f"{modforms.MAX_BERNOULLI}")
        report.sections["forms"] = forms_section(args.weight, args.prec)
        printer = _print_forms
    else:  # pragma: no cover - argparse prevents this
        raise UsageError(f"unknown command {args.command}")
    section_name = next(iter(report.sections))
    report.timings[section_name] = round(
        (time.perf_counter() - t0) * 1000, 3)
    return report, printer


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, printer = _dispatch(args)
    except UsageError as exc:
        print(f"ellwitt: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"ellwitt: error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"VALIDATION FAILURE: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "json", False):
        sys.stdout.write(report.to_json())
    else:
        printer(next(iter(report.sections.values())))
    return 0


if __name__ == "__main__":
    sys.exit(main())
