"""Ramanujan-type congruence claims: checking, the p_{3,3} theorem suites,
the quadratic-residue criterion and an empirical progression scanner."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .dissect import is_prime, pm_index
from .etalang import EtaExpr, evaluate, parse
from .series import EXACT, Ring, Series, reduce_mod

P33 = parse("f1^-3*f3^-3")

THEOREM1 = [(12, 6, 2), (12, 9, 2), (6, 4, 4), (3, 1, 3), (3, 2, 9), (9, 5, 27), (9, 8, 27), (5, 3, 5)]
THEOREM3 = [(21, b, 7) for b in (7, 10, 16, 18)] + [(121, b, 11) for b in (39, 61, 72, 94, 105, 116)]

UNCHECKED = "Unchecked"
VERIFIED = "VerifiedUpTo"
REFUTED = "RefutedAt"


@dataclass(frozen=True)
class CongruenceClaim:
    """``coefficient(a n + b) = 0 (mod m)`` for every ``n >= 0``.

    ``b`` is normally below ``a``; prime-family progressions may start past
    ``a`` and are kept unreduced so the absolute progression is preserved.
    """

    gf: EtaExpr
    a: int
    b: int
    m: int
    status: str = UNCHECKED
    bound: int | None = None
    refuted_at: int | None = None
    tested: int = 0
    empirical: bool = False

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError(f"bad progression {self.a}n+{self.b}")
        if self.m < 2:
            raise ValueError(f"congruence modulus must be >= 2, got {self.m}")

    @property
    def name(self) -> str:
        return f"{self.a}n+{self.b} mod {self.m}"

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_dict(self) -> dict:
        return {
            "kind": "claim",
            "name": self.name,
            "gf": self.gf.render(),
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "status": self.status,
            "bound": self.bound,
            "refuted_at": self.refuted_at,
            "tested": self.tested,
            "empirical": self.empirical,
        }


@lru_cache(maxsize=64)
def gf_series(gf: EtaExpr, order: int, m: int | None) -> Series:
    """Generating-function expansion, shared across claims on the same ring."""
    return evaluate(gf, order, EXACT if m is None else Ring.mod(m))


def check_claim(c: CongruenceClaim, bound: int) -> CongruenceClaim:
    if bound < c.b:
        raise ValueError(f"bound {bound} is below the first index {c.b}")
    s = gf_series(c.gf, bound, c.m)
    vals = s.coeffs[c.b :: c.a]
    bad = np.flatnonzero(vals)
    if bad.shape[0]:
        n = c.b + c.a * int(bad[0])
        return replace(c, status=REFUTED, bound=bound, refuted_at=n, tested=int(bad[0]) + 1)
    return replace(c, status=VERIFIED, bound=bound, refuted_at=None, tested=vals.shape[0])


def exact_crosscheck(c: CongruenceClaim, bound: int = 500) -> bool:
    """Recompute the coefficients over ZZ and reduce; True if the progression vanishes."""
    bound = min(bound, c.bound if c.bound is not None else bound)
    s = reduce_mod(gf_series(c.gf, bound, None), c.m)
    return not s.coeffs[c.b :: c.a].any()


def theorem1_suite(bound: int, gf: EtaExpr = P33) -> list[CongruenceClaim]:
    if bound < 9:
        raise ValueError("bound must be >= 9")
    return [check_claim(CongruenceClaim(gf, a, b, m), bound) for a, b, m in THEOREM1]


def theorem3_suite(bound: int, gf: EtaExpr = P33) -> list[CongruenceClaim]:
    if bound < 121:
        raise ValueError("bound must be >= 121")
    return [check_claim(CongruenceClaim(gf, a, b, m, empirical=True), bound) for a, b, m in THEOREM3]


# ------------------------------------------------------------ quadratic residues


def legendre(a: int, p: int) -> int:
    """Legendre symbol ``(a/p)`` by Euler's criterion."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass
class QuadraticReport:
    p: int
    legendre: int
    solutions: list[tuple[int, int]]
    trivial: tuple[int, int]
    kind: str = "quadratic"

    @property
    def unique(self) -> bool:
        return self.solutions == [self.trivial]

    @property
    def ok(self) -> bool:
        # the uniqueness statement only applies to (-3/p) = -1
        return self.unique if self.legendre == -1 else self.trivial in self.solutions

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "name": f"p={self.p}",
            "p": self.p,
            "legendre": self.legendre,
            "solutions": [list(s) for s in self.solutions],
            "trivial": list(self.trivial),
            "unique": self.unique,
            "ok": self.ok,
        }


def quadratic_criterion(p: int) -> QuadraticReport:
    """All ``k, m`` in ``[-(p-1)/2, (p-1)/2]`` with ``2(6k+1)^2 + 6(6m+1)^2 = 0 (mod p)``."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    half = (p - 1) // 2
    box = range(-half, half + 1)
    sols = [(k, m) for k in box for m in box if (2 * (6 * k + 1) ** 2 + 6 * (6 * m + 1) ** 2) % p == 0]
    k0 = pm_index(p)
    return QuadraticReport(p, legendre(-3, p), sols, (k0, k0))


# ------------------------------------------------------------ prime family


class LegendreConditionError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeFamilyClaim:
    p: int
    alpha: int
    j: int

    @property
    def a(self) -> int:
        return 9 * self.p ** (2 * self.alpha)

    @property
    def numerator(self) -> int:
        return self.p ** (2 * self.alpha - 1) * (3 * self.p + 18 * self.j) + 1

    @property
    def b(self) -> int:
        return self.numerator // 2

    m = 27

    def claim(self, gf: EtaExpr = P33) -> CongruenceClaim:
        return CongruenceClaim(gf, self.a, self.b, self.m)


def theorem2_claims(p: int, alpha: int) -> list[PrimeFamilyClaim]:
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    sym = legendre(-3, p)
    if sym != -1:
        raise LegendreConditionError(f"Legendre symbol (-3/{p}) = {sym:+d}, need -1")
    out = [PrimeFamilyClaim(p, alpha, j) for j in range(1, p)]
    for c in out:
        assert c.numerator % 2 == 0
    return out


def theorem2_suite(p: int, alpha: int, bound: int, gf: EtaExpr = P33) -> list[CongruenceClaim]:
    claims = [c.claim(gf) for c in theorem2_claims(p, alpha)]
    if bound < min(c.b for c in claims):
        raise ValueError(f"bound {bound} is below every progression start")
    # a progression starting past the bound is vacuous: report it with zero tests
    return [
        check_claim(c, bound) if c.b <= bound else replace(c, status=VERIFIED, bound=bound)
        for c in claims
    ]


# ------------------------------------------------------------ scanning


def scan(
    gf: EtaExpr,
    a_max: int,
    moduli,
    bound: int,
    min_hits: int = 50,
) -> list[CongruenceClaim]:
    """Every ``(a <= a_max, b < a, m)`` whose progression vanishes up to ``bound``.

    Only progressions with at least ``min_hits`` tested indices are kept.
    Results are empirical, never proofs.
    """
    moduli = sorted(set(int(m) for m in moduli))
    if a_max < 1:
        raise ValueError("a_max must be >= 1")
    if not moduli or min(moduli) < 2:
        raise ValueError("every modulus must be >= 2")
    if bound < a_max * min_hits:
        raise ValueError(f"bound must be >= a_max*min_hits = {a_max * min_hits}")
    found = []
    for m in moduli:
        c = gf_series(gf, bound, m).coeffs
        for a in range(1, a_max + 1):
            for b in range(a):
                hits = (bound - b) // a + 1
                if hits < min_hits:
                    continue
                if not c[b::a].any():
                    found.append(
                        CongruenceClaim(gf, a, b, m, VERIFIED, bound, None, hits, empirical=True)
                    )
    return found


_PROG = re.compile(r"^\s*(\d+)\s*n\s*\+\s*(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_progression(text: str) -> tuple[int, list[int]]:
    """``"12n+6,9"`` -> ``(12, [6, 9])``, the comma shorthand for several residues."""
    m = _PROG.match(text)
    if not m:
        raise ValueError(f"cannot parse progression {text!r}")
    return int(m.group(1)), [int(b) for b in m.group(2).split(",")]
