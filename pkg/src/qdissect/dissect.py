"""Dissection checks: identity verification, the p-dissection of f(-q),
and residue-class support of series."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .etalang import EtaExpr, IdentityRecord, Side, eta_series, evaluate
from .series import EXACT, Ring, Series, extract, first_mismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def pm_index(p: int) -> int:
    """``(+-p - 1)/6``: ``(p-1)/6`` if ``p = 1 (mod 6)``, else ``(-p-1)/6``."""
    if p % 6 == 1:
        return (p - 1) // 6
    if p % 6 == 5:
        return (-p - 1) // 6
    raise ValueError(f"{p} is not coprime to 6")


@dataclass(frozen=True)
class Summand:
    k: int
    exponent: int  # (3k^2 + k)/2
    a: int
    b: int


@dataclass(frozen=True)
class PDissection:
    p: int
    principal_exponent: int
    principal_sign: int
    excluded_k: int
    summands: tuple[Summand, ...]

    def expr(self) -> EtaExpr:
        p = self.p
        out = EtaExpr.monomial(
            coeff=self.principal_sign, qshift=self.principal_exponent, etas={p * p: 1}
        )
        for s in self.summands:
            out = out + EtaExpr.monomial(
                coeff=(-1) ** (s.k % 2), qshift=s.exponent, thetas=[(s.a, s.b)]
            )
        return out

    def side_claim(self) -> bool:
        """No summand exponent is congruent to the principal one mod p."""
        r0 = self.principal_exponent % self.p
        return all(s.exponent % self.p != r0 for s in self.summands)

    def summand_residues(self) -> list[int]:
        return [s.exponent % self.p for s in self.summands]

    def pairwise_distinct(self) -> bool:
        res = self.summand_residues()
        return len(set(res)) == len(res)


def build_pdissection(p: int) -> PDissection:
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    half = (p - 1) // 2
    k0 = pm_index(p)
    summands = []
    for k in range(-half, half + 1):
        if k == k0:
            continue
        summands.append(
            Summand(
                k=k,
                exponent=(3 * k * k + k) // 2,
                a=(3 * p * p + (6 * k + 1) * p) // 2,
                b=(3 * p * p - (6 * k + 1) * p) // 2,
            )
        )
    return PDissection(
        p=p,
        principal_exponent=(p * p - 1) // 24,
        principal_sign=-1 if k0 % 2 else 1,
        excluded_k=k0,
        summands=tuple(summands),
    )


@dataclass
class IdentityReport:
    name: str
    order: int
    ring: str
    equal: bool
    mismatch: int | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None
    source: str = ""
    kind: str = "identity"

    def to_dict(self) -> dict:
        return asdict(self)


def compare(name: str, lhs: Series, rhs: Series, source: str = "") -> IdentityReport:
    idx = first_mismatch(lhs, rhs)
    rep = IdentityReport(
        name=name,
        order=min(lhs.order, rhs.order),
        ring=str(lhs.ring),
        equal=idx is None,
        source=source,
    )
    if idx is not None:
        rep.mismatch, rep.lhs_value, rep.rhs_value = idx, lhs[idx], rhs[idx]
    return rep


def ring_for(modulus: int | None) -> Ring:
    return EXACT if modulus is None else Ring.mod(modulus)


def verify_identity(rec: IdentityRecord, order: int) -> IdentityReport:
    """Evaluate both sides to ``order`` in ZZ (or Z/m) and compare."""
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = ring_for(rec.modulus)
    return compare(rec.name, evaluate(rec.lhs, order, ring), evaluate(rec.rhs, order, ring), rec.source)


@dataclass
class PDissectionReport(IdentityReport):
    p: int = 0
    side_claim: bool = False
    pairwise_distinct: bool = False
    principal_extraction: bool = False
    kind: str = "pdissection"


def verify_pdissection(p: int, order: int) -> PDissectionReport:
    d = build_pdissection(p)
    f1 = eta_series(1, order, EXACT)
    rhs = evaluate(d.expr(), order, EXACT)
    base = compare(f"pdissect.p{p}", f1, rhs, "p-dissection of f(-q)")
    # the residue class of the principal exponent holds only sign*q^s*f_p
    r0 = d.principal_exponent % p
    got = extract(f1, p, r0)
    want = evaluate(
        EtaExpr.monomial(d.principal_sign, (d.principal_exponent - r0) // p, {p: 1}),
        got.order,
        EXACT,
    )
    return PDissectionReport(
        **{k: v for k, v in asdict(base).items() if k != "kind"},
        p=p,
        side_claim=d.side_claim(),
        pairwise_distinct=d.pairwise_distinct(),
        principal_extraction=first_mismatch(got, want) is None,
    )


def residue_support(s: Series, m: int) -> set[int]:
    """Residues ``r`` mod ``m`` hit by some nonzero coefficient ``s[n]``, ``n = r (mod m)``."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return {int(r) for r in np.unique(s.nonzero() % m)}


def side_support(side: Side, m: int, order: int, ring: Ring) -> set[int]:
    return residue_support(evaluate(side, order, ring), m)
