"""Command-line interface.

Exit codes: 0 everything requested was verified (or computed), 1 a check
failed or manifests differ, 2 bad usage or unreadable input, 3 some check is
inconclusive under the fixed pi enclosure.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from pathlib import Path

from . import verifier as V
from .charnum import (
    ChernDataError,
    ManifestError,
    VerificationFailure,
    chern_numbers_equal,
    dump_manifest,
    first_difference,
    fixture_cpn,
    format_monomial,
    genera,
    load_manifest,
    product_chern_data,
    verify_class_identity,
)
from .numerics import bernoulli
from .series import GenusKind, monomial_name, multiplicative_sequence, partitions_of
from .verifier import frac

log = logging.getLogger("chargenus")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

EPILOG = """exit codes:
  0  every requested check verified
  1  a check failed (or manifests differ, for 'cobordant')
  2  bad usage or unreadable manifest
  3  a pi-dependent check was inconclusive
"""


class InputError(Exception):
    pass


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _read_manifest(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read manifest {path}: {exc.strerror}") from None
    try:
        return load_manifest(text)
    except (ManifestError, ChernDataError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_bernoulli(args) -> int:
    print(frac(bernoulli(args.m)))
    return EXIT_OK


def cmd_coeffs(args) -> int:
    kind = GenusKind.parse(args.kind)
    poly = multiplicative_sequence(kind, args.degree)
    for part in partitions_of(args.degree):
        name = monomial_name(part, kind.variable)
        print(f"{str(tuple(part)):<24} {name:<24} {frac(poly.coefficient(part))}")
    return EXIT_OK


def cmd_genera(args) -> int:
    g = genera(_read_manifest(args.manifest))
    print(f"sigma={frac(g.signature)}")
    print(f"a_hat={frac(g.a_hat)}")
    print(f"todd={frac(g.todd)}")
    print(f"chi={g.euler}")
    print(f"sigma_integral={_flag(g.signature_integral)}")
    print(f"a_hat_integral={_flag(g.a_hat_integral)}")
    print(f"todd_integral={_flag(g.todd_integral)}")
    return EXIT_OK


def cmd_fixture(args) -> int:
    text = dump_manifest(fixture_cpn(args.n))
    if args.out:
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_product(args) -> int:
    a, b = _read_manifest(args.a), _read_manifest(args.b)
    sys.stdout.write(dump_manifest(product_chern_data(a, b)))
    return EXIT_OK


def cmd_cobordant(args) -> int:
    a, b = _read_manifest(args.a), _read_manifest(args.b)
    if a.half_dim != b.half_dim:
        print(f"different (dim {a.dim} vs {b.dim})")
        return EXIT_FAILED
    if chern_numbers_equal(a, b):
        print("equal")
        return EXIT_OK
    key = first_difference(a, b)
    print(f"different ({format_monomial(key)}: {a[key]} vs {b[key]})")
    return EXIT_FAILED


def _random_inputs(rng: random.Random, count: int, trials: int):
    yield (0,) * count
    for _ in range(trials - 1):
        yield tuple(rng.randint(-10**6, 10**6) for _ in range(count))


def _run_lemma(name: str, k: int, trials: int, seed: int) -> bool:
    func, arity = {
        "lemma1": (V.lemma1_residual, 1),
        "lemma2": (V.lemma2_residual, 2),
        "lemma3": (V.lemma3_residual, 2),
    }[name]
    rng = random.Random(seed)
    worst = 0
    ok = True
    for inputs in _random_inputs(rng, arity, trials):
        try:
            residual = func(k, *inputs)
        except VerificationFailure as exc:
            log.error("%s", exc)
            ok = False
            continue
        log.debug("%s k=%d inputs=%s residual=%s", name, k, inputs, frac(residual))
        if residual != 0:
            ok = False
            worst = max(worst, abs(residual))
    status = "verified" if ok else "failed"
    print(f"{name} k={k} trials={trials} max_residual={frac(worst)} status={status}")
    return ok


def cmd_verify_lemma(args) -> int:
    return EXIT_OK if _run_lemma(args.check, args.k, args.trials, args.seed) else EXIT_FAILED


def _estimates(k_max: int) -> int:
    code = EXIT_OK
    print(f"{'k':>3} {'C_sigma':<13} {'C_chi':<13} {'C_td':<13}")
    for k in range(1, k_max + 1):
        rep = V.estimates_check(k)
        print(f"{k:>3} {rep.c_sigma.value:<13} {rep.c_chi.value:<13} {rep.c_td.value:<13}")
        statuses = rep.statuses.values()
        if any(s is V.Status.VIOLATED for s in statuses):
            code = EXIT_FAILED
        elif code == EXIT_OK and any(s is V.Status.INCONCLUSIVE for s in statuses):
            code = EXIT_INCONCLUSIVE
    return code


def _corollary(k_max: int) -> int:
    ok = True
    print(f"{'k':>3} {'C_td/(C_sigma+C_chi)>4^k':<26} {'C_sigma/C_chi>=3^k':<20} C_sigma/C_chi")
    for k in range(1, k_max + 1):
        first, second = V.corollary_check(k)
        _, ratio = V.corollary_ratios(k)
        ok &= first and second
        shown = frac(ratio) if len(frac(ratio)) <= 40 else "(large)"
        print(f"{k:>3} {_flag(first):<26} {_flag(second):<20} {shown}")
    return EXIT_OK if ok else EXIT_FAILED


def _class_identity(degree: int) -> int:
    try:
        res = verify_class_identity(degree)
    except VerificationFailure as exc:
        print(f"class identity: {exc}")
        return EXIT_FAILED
    print(f"sign={res.sign:+d} (Ahat = exp({'-' if res.sign < 0 else '+'}c1/2) * Td)")
    for w in range(degree + 1):
        print(
            f"weight {w}: sign-1={_flag(res.per_weight[-1][w])} "
            f"sign+1={_flag(res.per_weight[1][w])} c1_free={_flag(res.c1_free[w])}"
        )
    return EXIT_OK if res.c1_free_holds else EXIT_FAILED


def cmd_verify_range(args) -> int:
    if args.check == "estimates":
        return _estimates(args.k_max)
    return _corollary(args.k_max)


def cmd_verify_class_identity(args) -> int:
    return _class_identity(args.degree)


def cmd_classify(args) -> int:
    d = _read_manifest(args.manifest)
    try:
        result = V.classify_chern_data(d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(result.render())
    return EXIT_OK


def _replay_dim4() -> int:
    try:
        result = V.replay_dim4()
    except V.ReplayError as exc:
        print(f"replay failed: {exc}")
        return EXIT_FAILED
    print(result.render())
    return EXIT_OK if result.cobordant_to_cp2 else EXIT_FAILED


def _exclude(k_max: int) -> int:
    failed = []
    for k in range(1, k_max + 1):
        cert = V.exclusion_8k(k)
        print(cert.render())
        if not cert.excluded:
            failed.append(k)
    print(f"summary: excluded {k_max - len(failed)}/{k_max}"
          + (f"; not excluded: k={','.join(map(str, failed))}" if failed else ""))
    return EXIT_FAILED if failed else EXIT_OK


def cmd_replay(args) -> int:
    if args.which == "dim4":
        return _replay_dim4()
    return _exclude(args.k_max)


def cmd_verify_all(args) -> int:
    """Every check at its default range; the worst exit code wins."""
    codes = []
    start = time.perf_counter()

    def section(title):
        print(f"== {title}")

    section("coefficient tables")
    codes.append(cmd_coeffs(argparse.Namespace(kind="L", degree=2)))
    codes.append(cmd_coeffs(argparse.Namespace(kind="Ahat", degree=2)))
    for name in ("lemma1", "lemma2", "lemma3"):
        section(name)
        for k in range(1, 5):
            codes.append(EXIT_OK if _run_lemma(name, k, args.trials, args.seed) else EXIT_FAILED)
    section("estimates")
    codes.append(_estimates(64))
    section("corollary")
    codes.append(_corollary(64))
    section("class identity")
    codes.append(_class_identity(6))
    section("fixtures")
    fixture_ok = True
    for n in range(1, 7):
        g = genera(fixture_cpn(n))
        good = g.todd == 1 and g.euler == n + 1 and (n % 2 or g.signature == 1)
        fixture_ok &= good
        print(f"CP^{n}: sigma={frac(g.signature)} todd={frac(g.todd)} chi={g.euler} ok={_flag(good)}")
    codes.append(EXIT_OK if fixture_ok else EXIT_FAILED)
    section("replay dim4")
    codes.append(_replay_dim4())
    section("replay exclude-8k")
    codes.append(_exclude(32))
    print(f"elapsed={time.perf_counter() - start:.2f}s")
    if EXIT_FAILED in codes:
        return EXIT_FAILED
    if EXIT_INCONCLUSIVE in codes:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chargenus",
        description="Exact characteristic numbers, genera and classification checks.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bernoulli", help="unsigned Bernoulli number B_m (B_1 = 1/6)")
    p.add_argument("m", type=_positive)
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("coeffs", help="coefficients of the multiplicative sequence K_n")
    p.add_argument("kind", choices=["L", "Ahat", "Todd"])
    p.add_argument("--degree", type=_positive, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("genera", help="sigma, Ahat, Td and chi of a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_genera)

    p = sub.add_parser("fixture", help="emit a fixture manifest")
    p.add_argument("family", choices=["cpn"])
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("product", help="manifest of a product manifold")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("cobordant", help="compare all Chern numbers (exit 1 if different)")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_cobordant)

    p = sub.add_parser("classify", help="case analysis of an 8k manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("replay", help="replay the total-Betti-3 argument")
    rsub = p.add_subparsers(dest="which", required=True)
    r = rsub.add_parser("dim4")
    r.set_defaults(func=cmd_replay)
    r = rsub.add_parser("exclude-8k")
    r.add_argument("--k-max", type=_positive, default=32)
    r.set_defaults(func=cmd_replay)

    p = sub.add_parser("verify", help="run exact verification checks")
    vsub = p.add_subparsers(dest="check", required=True)
    for name in ("lemma1", "lemma2", "lemma3"):
        v = vsub.add_parser(name)
        v.add_argument("--k", type=_positive, required=True)
        v.add_argument("--trials", type=_positive, default=100)
        v.add_argument("--seed", type=int, default=0)
        v.set_defaults(func=cmd_verify_lemma)
    for name in ("estimates", "corollary"):
        v = vsub.add_parser(name)
        v.add_argument("--k-max", type=_positive, required=True)
        v.set_defaults(func=cmd_verify_range)
    v = vsub.add_parser("class-identity")
    v.add_argument("--degree", type=_positive, required=True)
    v.set_defaults(func=cmd_verify_class_identity)
    v = vsub.add_parser("all", help="run the full verification suite")
    v.add_argument("--trials", type=_positive, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
