"""Command-line front end.

Exit codes: 0 when every check passes, 1 on any refutation or identity
mismatch, 2 on usage or parse errors.  A human summary goes to stdout;
``--out PATH`` also writes the JSON run report and ``--figures DIR``
renders matplotlib figures next to it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .congruence import (
    CongruenceClaim,
    LegendreConditionError,
    check_claim,
    exact_crosscheck,
    gf_series,
    parse_progression,
    quadratic_criterion,
    scan,
    theorem1_suite,
    theorem2_suite,
    theorem3_suite,
)
from .dissect import is_prime, verify_identity, verify_pdissection
from .etalang import CatalogError, ParseError, default_catalog, load_catalog, parse
from .oracle import ColoredPartitionSpec, convolution_oracle, count_dp
from .series import EXACT, Ring

EXACT_SPOT_BOUND = 500


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    ring: str
    order: int
    items: list = field(default_factory=list)
    version: str = __version__
    duration_ms: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "version": self.version,
                "ring": self.ring,
                "order": self.order,
                "items": self.items,
                "duration_ms": self.duration_ms,
            },
            indent=2,
            sort_keys=True,
        )


def _workers() -> int:
    env = os.environ.get("QDISSECT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"QDISSECT_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _pmap(fn, items):
    items = list(items)
    n = min(_workers(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _gf(text: str):
    try:
        return parse(text)
    except ParseError as err:
        raise UsageError(f"bad --gf expression: {err}")


def _claim_lines(claims) -> list[str]:
    out = []
    for c in claims:
        if c.verified:
            state = f"{c.status}({c.bound})  [{c.tested} indices]"
        else:
            state = f"{c.status}({c.refuted_at})"
        tag = "  empirical" if c.empirical else ""
        out.append(f"  {c.name:<22} {state}{tag}")
    return out


def _claims_items(claims, exact: bool):
    items, ok = [], True
    for c in claims:
        d = c.to_dict()
        ok &= c.verified
        if exact and c.tested:
            d["exact_check"] = exact_crosscheck(c, EXACT_SPOT_BOUND)
            ok &= d["exact_check"]
        items.append(d)
    return items, ok


def _claims_report(args, claims, title):
    items, ok = _claims_items(claims, args.exact)
    lines = [title] + _claim_lines(claims)
    if args.exact:
        bad = [d["name"] for d in items if d.get("exact_check") is False]
        lines.append(f"  exact cross-check to {min(args.limit, EXACT_SPOT_BOUND)}: " + ("ok" if not bad else "FAILED " + ", ".join(bad)))
    moduli = sorted({c.m for c in claims})
    report = RunReport(args.cmdline, "Z/" + ",".join(map(str, moduli)), args.limit, items)
    figs = {"claims.png": ("claims", claims, title)}
    return report, lines, ok, figs


# ------------------------------------------------------------------ commands


def cmd_coeff(args):
    gf = _gf(args.gf)
    ring = EXACT if args.mod is None else Ring.mod(args.mod)
    s = gf_series(gf, args.upto, ring.modulus)
    report = RunReport(args.cmdline, str(ring), args.upto, [{"kind": "coefficients", "name": gf.render(), "values": s.tolist()}])
    return report, [" ".join(map(str, s.tolist()))], True, {"coefficients.png": ("coefficients", s, gf.render())}


def cmd_verify_identities(args):
    try:
        if args.catalog == "default":
            records = default_catalog()
        else:
            records = load_catalog(Path(args.catalog).read_text(encoding="utf-8"))
    except (OSError, CatalogError) as err:
        raise UsageError(str(err))
    if args.only:
        names = {r.name for r in records}
        missing = [n for n in args.only if n not in names]
        if missing:
            raise UsageError(f"unknown identity name(s): {', '.join(missing)}")
        records = [r for r in records if r.name in args.only]
    reports = sorted(_pmap(lambda r: verify_identity(r, args.order), records), key=lambda r: r.name)
    lines = []
    for r in reports:
        state = "equal" if r.equal else f"MISMATCH at {r.mismatch}: {r.lhs_value} vs {r.rhs_value}"
        lines.append(f"  {r.name:<22} {r.ring:<6} order {r.order}  {state}")
    ok = all(r.equal for r in reports)
    rings = sorted({r.ring for r in reports})
    report = RunReport(args.cmdline, ",".join(rings), args.order, [r.to_dict() for r in reports])
    return report, [f"identities ({len(reports)})"] + lines, ok, {"identities.png": ("identities", reports, "catalog")}


def cmd_pdissect(args):
    for p in args.p:
        if p < 5 or not is_prime(p):
            raise UsageError(f"--p needs primes >= 5, got {p}")
    reports = _pmap(lambda p: verify_pdissection(p, args.order), sorted(set(args.p)))
    lines, ok = [], True
    for r in reports:
        good = r.equal and r.side_claim and r.principal_extraction
        ok &= good
        state = "equal" if r.equal else f"MISMATCH at {r.mismatch}"
        lines.append(
            f"  p={r.p:<4} {state}; side claim {'holds' if r.side_claim else 'FAILS'}; "
            f"principal class {'ok' if r.principal_extraction else 'FAILS'}; "
            f"summand residues pairwise distinct: {r.pairwise_distinct}"
        )
    report = RunReport(args.cmdline, "ZZ", args.order, [r.to_dict() for r in reports])
    return report, ["p-dissection of f(-q)"] + lines, ok, {}


def cmd_theorem1(args):
    claims = theorem1_suite(args.limit)
    return _claims_report(args, claims, f"p33 congruences, bound {args.limit}")


def cmd_theorem3(args):
    if args.limit < 121:
        raise UsageError("--limit must be >= 121")
    claims = theorem3_suite(args.limit)
    return _claims_report(args, claims, f"p33 congruences mod 7 and 11 (empirical), bound {args.limit}")


def cmd_theorem2(args):
    claims = []
    try:
        for p in args.p:
            for alpha in args.alpha:
                claims += theorem2_suite(p, alpha, args.limit)
    except LegendreConditionError as err:
        raise UsageError(f"theorem2 precondition: {err}")
    except ValueError as err:
        raise UsageError(str(err))
    return _claims_report(args, claims, f"p33 prime-family congruences mod 27, bound {args.limit}")


def cmd_quadratic(args):
    primes = [p for p in range(5, args.pmax) if is_prime(p)]
    reports = [quadratic_criterion(p) for p in primes]
    lines = []
    for r in reports:
        extra = "unique" if r.unique else f"{len(r.solutions)} solutions"
        lines.append(f"  p={r.p:<4} (-3/p)={r.legendre:+d}  {extra}{'' if r.ok else '  FAILED'}")
    ok = all(r.ok for r in reports)
    report = RunReport(args.cmdline, "ZZ", args.pmax, [r.to_dict() for r in reports])
    return report, ["quadratic criterion 2(6k+1)^2 + 6(6m+1)^2 = 0 (mod p)"] + lines, ok, {"quadratic.png": ("quadratic", reports, "")}


def cmd_check(args):
    gf = _gf(args.gf)
    if args.progression:
        try:
            a, bs = parse_progression(args.progression)
        except ValueError as err:
            raise UsageError(str(err))
    else:
        if args.a is None or args.b is None:
            raise UsageError("check needs --a and --b, or --progression")
        a, bs = args.a, args.b
    try:
        claims = [CongruenceClaim(gf, a, b, args.mod) for b in bs]
    except ValueError as err:
        raise UsageError(str(err))
    for c in claims:
        if args.limit < c.b:
            raise UsageError(f"--limit {args.limit} is below the first index {c.b}")
    claims = _pmap(lambda c: check_claim(c, args.limit), claims)
    return _claims_report(args, claims, f"{gf.render()}: bound {args.limit}")


def cmd_scan(args):
    gf = _gf(args.gf)
    try:
        found = scan(gf, args.amax, args.moduli, args.limit, args.min_hits)
    except ValueError as err:
        raise UsageError(str(err))
    lines = [f"empirical congruences of {gf.render()} to {args.limit} (a <= {args.amax}, min hits {args.min_hits})"]
    lines += _claim_lines(found)
    report = RunReport(
        args.cmdline, "Z/" + ",".join(map(str, sorted(set(args.moduli)))), args.limit, [c.to_dict() for c in found]
    )
    return report, lines, True, {"scan.png": ("scan", found, args.amax, args.moduli, gf.render())}


def cmd_oracle(args):
    groups = []
    for tok in args.restricted:
        t, _, c = tok.partition(":")
        try:
            groups.append((int(t), int(c)))
        except ValueError:
            raise UsageError(f"--restricted expects t:count, got {tok!r}")
    try:
        spec = ColoredPartitionSpec(args.colors, tuple(groups))
    except ValueError as err:
        raise UsageError(str(err))
    dp = count_dp(spec, args.upto)
    item = {"kind": "oracle", "name": "count_dp", "values": dp}
    lines = [" ".join(map(str, dp))]
    ok = True
    if args.compare:
        etas: dict[int, int] = {1: -spec.colors_all_parts}
        for t, c in spec.colors_multiples:
            etas[t] = etas.get(t, 0) - c
        gf = parse("*".join(f"f{k}^{e}" for k, e in sorted(etas.items()) if e) or "1")
        routes = {"series": gf_series(gf, args.upto, None).tolist()}
        if spec == ColoredPartitionSpec(3, ((3, 3),)):
            routes["convolution"] = convolution_oracle(args.upto)
        agree = {}
        for name, vals in routes.items():
            bad = next((n for n, (x, y) in enumerate(zip(dp, vals)) if x != y), None)
            agree[name] = bad
            ok &= bad is None
            lines.append(f"  dp vs {name}: " + ("agree" if bad is None else f"DIFFER at n={bad}"))
        item["compare"] = {k: ("agree" if v is None else v) for k, v in agree.items()}
    report = RunReport(args.cmdline, "ZZ", args.upto, [item])
    return report, lines, ok, {}


# ------------------------------------------------------------------ parser


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _modulus(text):
    v = int(text)
    if not 2 <= v <= 2**31:
        raise argparse.ArgumentTypeError(f"modulus must lie in [2, 2^31], got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the JSON run report here")
    common.add_argument("--figures", type=Path, help="directory for matplotlib figures")

    exact = argparse.ArgumentParser(add_help=False)
    exact.add_argument(
        "--exact", action="store_true", help=f"also cross-check over ZZ up to min(limit, {EXACT_SPOT_BOUND})"
    )

    ap = argparse.ArgumentParser(prog="qdissect", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qdissect {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", parents=[common], help="dump generating-function coefficients")
    p.add_argument("--gf", default="f1^-3*f3^-3")
    p.add_argument("--upto", type=_nonneg, required=True)
    p.add_argument("--mod", type=_modulus)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("verify-identities", parents=[common], help="check a catalog of identities")
    p.add_argument("--catalog", default="default", help="catalog file path, or 'default'")
    p.add_argument("--order", type=_positive, default=400)
    p.add_argument("--only", action="append", metavar="NAME")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("pdissect", parents=[common], help="check the p-dissection of f(-q)")
    p.add_argument("--p", type=_int_list, required=True, help="prime(s) >= 5, comma-separated")
    p.add_argument("--order", type=_positive, default=300)
    p.set_defaults(func=cmd_pdissect)

    for name, fn in (("theorem1", cmd_theorem1), ("theorem3", cmd_theorem3)):
        p = sub.add_parser(name, parents=[common, exact])
        p.add_argument("--limit", type=_positive, default=50000)
        p.set_defaults(func=fn)

    p = sub.add_parser("theorem2", parents=[common, exact], help="prime-family congruences mod 27")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--alpha", type=_int_list, default=[1])
    p.add_argument("--limit", type=_positive, default=50000)
    p.set_defaults(func=cmd_theorem2)

    p = sub.add_parser("quadratic-criterion", parents=[common])
    p.add_argument("--pmax", type=_positive, default=200, help="check primes 5 <= p < PMAX")
    p.set_defaults(func=cmd_quadratic)

    p = sub.add_parser("check", parents=[common, exact], help="check one congruence claim")
    p.add_argument("--gf", default="f1^-3*f3^-3")
    p.add_argument("--a", type=_positive)
    p.add_argument("--b", type=_int_list, help="residue(s), comma-separated")
    p.add_argument("--progression", help='shorthand such as "12n+6,9"')
    p.add_argument("--mod", type=_modulus, required=True)
    p.add_argument("--limit", type=_positive, default=10000)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="search for congruences empirically")
    p.add_argument("--gf", default="f1^-3*f3^-3")
    p.add_argument("--amax", type=_positive, default=12)
    p.add_argument("--moduli", type=_int_list, default=[2, 3, 4, 5, 9, 27])
    p.add_argument("--limit", type=_positive, default=10000)
    p.add_argument("--min-hits", type=_positive, default=50)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", parents=[common], help="brute-force colored partition counts")
    p.add_argument("--upto", type=_nonneg, default=120)
    p.add_argument("--colors", type=_nonneg, default=3)
    p.add_argument("--restricted", nargs="*", default=["3:3"], metavar="T:COUNT")
    p.add_argument("--compare", action="store_true", help="cross-check against the series engine")
    p.set_defaults(func=cmd_oracle)
    return ap


def _render_figures(figdir: Path, figs: dict) -> list[Path]:
    from . import plotting

    out = []
    for fname, (kind, *payload) in figs.items():
        fn = getattr(plotting, f"plot_{kind}")
        *data, title = payload
        out.append(fn(*data, figdir / fname, title=title))
    return out


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.cmdline = " ".join(["qdissect"] + argv)
    t0 = time.perf_counter()
    try:
        report, lines, ok, figs = args.func(args)
    except UsageError as err:
        print(f"qdissect: error: {err}", file=sys.stderr)
        return 2
    report.duration_ms = int(round((time.perf_counter() - t0) * 1000))
    print("\n".join(lines))
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(report.to_json() + "\n", encoding="utf-8")
    if args.figures and figs:
        for path in _render_figures(args.figures, figs):
            print(f"figure: {path}")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
