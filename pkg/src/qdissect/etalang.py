"""Eta-quotient / theta expressions and their evaluation to series.

An expression is a sum of monomials ``c * q^s * prod f_k^e_k * prod theta(A, B)``
where ``f_k = (q^k; q^k)_inf`` and ``theta(A, B) = f(-q^A, -q^B)`` is the
two-variable Ramanujan theta function.  Text syntax::

    f2^6*f3 / (f1^2*f6^2) + 3*q*f1^2*f6^6/(f2^2*f3^3)
    f9^3/f3^12 * (P(q^3)^2 + 3*q*f9^3*P(q^3) + 9*q^2*f9^6)
    theta(5, 10)

Parenthesised sums are expanded on parse; division is only allowed by pure
eta products, which become negative exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Union

from .series import Ring, Series, divide, extract, mul, shift

# ---------------------------------------------------------------- expressions


@dataclass(frozen=True, order=True)
class EtaMonomial:
    qshift: int
    etas: tuple[tuple[int, int], ...]
    thetas: tuple[tuple[int, int], ...]
    coeff: int = field(compare=False)

    def __post_init__(self):
        if self.qshift < 0:
            raise ValueError("negative q-shift")
        for k, e in self.etas:
            if k < 1 or e == 0:
                raise ValueError(f"bad eta factor f{k}^{e}")
        for a, b in self.thetas:
            if a < 1 or b < 1:
                raise ValueError(f"bad theta factor theta({a},{b})")

    @classmethod
    def make(cls, coeff=1, qshift=0, etas: Mapping[int, int] | None = None, thetas=()):
        etas = {k: e for k, e in (etas or {}).items() if e}
        return cls(
            qshift=int(qshift),
            etas=tuple(sorted(etas.items())),
            thetas=tuple(sorted(tuple(sorted(t)) for t in thetas)),
            coeff=int(coeff),
        )

    @property
    def key(self):
        return (self.qshift, self.etas, self.thetas)

    def __mul__(self, other: EtaMonomial) -> EtaMonomial:
        etas = dict(self.etas)
        for k, e in other.etas:
            etas[k] = etas.get(k, 0) + e
        return EtaMonomial.make(
            self.coeff * other.coeff,
            self.qshift + other.qshift,
            etas,
            self.thetas + other.thetas,
        )

    def substitute(self, t: int) -> EtaMonomial:
        return EtaMonomial.make(
            self.coeff,
            self.qshift * t,
            {k * t: e for k, e in self.etas},
            [(a * t, b * t) for a, b in self.thetas],
        )

    def render(self) -> str:
        parts = []
        if self.qshift:
            parts.append("q" if self.qshift == 1 else f"q^{self.qshift}")
        for k, e in self.etas:
            parts.append(f"f{k}" if e == 1 else f"f{k}^{e}")
        for a, b in self.thetas:
            parts.append(f"theta({a},{b})")
        c = abs(self.coeff)
        if c != 1 or not parts:
            parts.insert(0, str(c))
        return "*".join(parts)


class EtaExpr:
    """Normalised sum of :class:`EtaMonomial` terms (possibly empty = 0)."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict = {}
        for t in terms:
            if t.key in merged:
                merged[t.key] = merged[t.key] + t.coeff
            else:
                merged[t.key] = t.coeff
        out = []
        for (s, etas, thetas), c in sorted(merged.items()):
            if c:
                out.append(EtaMonomial(qshift=s, etas=etas, thetas=thetas, coeff=c))
        self.terms: tuple[EtaMonomial, ...] = tuple(out)

    @classmethod
    def monomial(cls, coeff=1, qshift=0, etas=None, thetas=()) -> EtaExpr:
        return cls([EtaMonomial.make(coeff, qshift, etas, thetas)])

    @classmethod
    def const(cls, c: int) -> EtaExpr:
        return cls.monomial(coeff=c)

    def __eq__(self, other):
        if not isinstance(other, EtaExpr):
            return NotImplemented
        return [(t.key, t.coeff) for t in self.terms] == [
            (t.key, t.coeff) for t in other.terms
        ]

    def __hash__(self):
        return hash(tuple((t.key, t.coeff) for t in self.terms))

    def __repr__(self):
        return f"EtaExpr({self.render()!r})"

    def __str__(self):
        return self.render()

    def __add__(self, other: EtaExpr) -> EtaExpr:
        return EtaExpr(self.terms + other.terms)

    def __neg__(self) -> EtaExpr:
        return self.scaled(-1)

    def __sub__(self, other: EtaExpr) -> EtaExpr:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        return EtaExpr([a * b for a in self.terms for b in other.terms])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> EtaExpr:
        if e < 0:
            mono = self.as_pure_eta()
            if mono is None:
                raise ValueError("only pure eta products may carry negative powers")
            return EtaExpr.monomial(
                coeff=mono.coeff ** abs(e), etas={k: v * e for k, v in mono.etas}
            )
        out = EtaExpr.const(1)
        for _ in range(e):
            out = out * self
        return out

    def scaled(self, c: int) -> EtaExpr:
        return EtaExpr(
            EtaMonomial(t.qshift, t.etas, t.thetas, t.coeff * c) for t in self.terms
        )

    def substitute(self, t: int) -> EtaExpr:
        """The expression with ``q`` replaced by ``q**t``."""
        if t < 1:
            raise ValueError("substitution power must be >= 1")
        return EtaExpr(m.substitute(t) for m in self.terms)

    def as_pure_eta(self) -> EtaMonomial | None:
        """The single monomial if this is ``+-prod f_k^e`` with no q or theta."""
        if len(self.terms) != 1:
            return None
        m = self.terms[0]
        if m.qshift or m.thetas or m.coeff not in (1, -1):
            return None
        return m

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, t in enumerate(self.terms):
            body = t.render()
            if i == 0:
                out.append(body if t.coeff > 0 else "-" + body)
            else:
                out.append((" + " if t.coeff > 0 else " - ") + body)
        return "".join(out)


@dataclass(frozen=True)
class Extraction:
    """``sum_n [q^(m n + r)] expr * q^n`` as one side of an identity."""

    expr: EtaExpr
    m: int
    r: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.r < self.m:
            raise ValueError(f"bad extraction ({self.m}, {self.r})")

    def render(self) -> str:
        return f"extract({self.expr.render()}, {self.m}, {self.r})"

    def __str__(self):
        return self.render()


Side = Union[EtaExpr, Extraction]


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    lhs: Side
    rhs: Side
    modulus: int | None = None
    source: str = ""

    def swapped(self) -> IdentityRecord:
        return IdentityRecord(self.name, self.rhs, self.lhs, self.modulus, self.source)


# ---------------------------------------------------------------- evaluation


@lru_cache(maxsize=256)
def eta_series(k: int, order: int, ring: Ring) -> Series:
    """``(q^k; q^k)_inf`` via Euler's pentagonal number theorem."""
    if k < 1:
        raise ValueError("eta index must be >= 1")
    terms = {}
    j = 0
    while True:
        e1 = k * j * (3 * j - 1) // 2
        if e1 > order:
            break
        sign = -1 if j % 2 else 1
        terms[e1] = sign
        if j:
            e2 = k * j * (3 * j + 1) // 2
            if e2 <= order:
                terms[e2] = sign
        j += 1
    return Series.from_sparse(ring, order, terms)


@lru_cache(maxsize=256)
def theta_series(a: int, b: int, order: int, ring: Ring) -> Series:
    """Truncated ``sum_{n in Z} (-1)^n q^(a n(n+1)/2 + b n(n-1)/2)``."""
    if a < 1 or b < 1:
        raise ValueError("theta parameters must be >= 1")
    lo = min(a, b)
    terms: dict[int, int] = {}
    n = 0
    while lo * n * (n - 1) // 2 <= order:
        for j in {n, -n}:
            e = a * j * (j + 1) // 2 + b * j * (j - 1) // 2
            if e <= order:
                terms[e] = terms.get(e, 0) + (-1 if j % 2 else 1)
        n += 1
    return Series.from_sparse(ring, order, terms)


def eval_monomial(m: EtaMonomial, order: int, ring: Ring) -> Series:
    if m.qshift > order or (ring.modulus and m.coeff % ring.modulus == 0):
        return Series.zero(ring, order)
    acc = Series.monomial(ring, order, m.coeff, 0)
    # sparse factors first: products with them stay O(N * support)
    for a, b in m.thetas:
        acc = mul(acc, theta_series(a, b, order, ring))
    for k, e in m.etas:
        f = eta_series(k, order, ring)
        for _ in range(abs(e)):
            acc = mul(acc, f) if e > 0 else divide(acc, f)
    return shift(acc, m.qshift) if m.qshift else acc


def evaluate(expr: Side, order: int, ring: Ring) -> Series:
    """Expand an expression (or extraction) to a series of the given order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if isinstance(expr, Extraction):
        inner = evaluate(expr.expr, expr.m * order + expr.r, ring)
        return extract(inner, expr.m, expr.r)
    total = Series.zero(ring, order)
    for m in expr.terms:
        total = total + eval_monomial(m, order, ring)
    return total


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f": {text!r}" if text else ""))


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<eta>f(?P<k>\d+))|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character", pos, text)
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("int") is not None:
            out.append(("int", int(m.group("int")), start))
        elif m.group("eta") is not None:
            out.append(("eta", int(m.group("k")), start))
        elif m.group("name") is not None:
            out.append(("name", m.group("name"), start))
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, defs: Mapping[str, EtaExpr]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.defs = defs

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, op):
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def expect_int(self, signed=False):
        sign = 1
        if signed and self.peek()[:2] == ("op", "-"):
            self.next()
            sign = -1
        tok = self.next()
        if tok[0] != "int":
            self.fail("expected an integer", tok)
        return sign * tok[1]

    def side(self) -> Side:
        tok = self.peek()
        if tok[:2] == ("name", "extract") and self.toks[self.i + 1][:2] == ("op", "("):
            self.next()
            self.next()
            e = self.expr()
            self.expect_op(",")
            m = self.expect_int()
            self.expect_op(",")
            r = self.expect_int()
            self.expect_op(")")
            self.end()
            try:
                return Extraction(e, m, r)
            except ValueError as err:
                self.fail(str(err), tok)
        e = self.expr()
        self.end()
        return e

    def end(self):
        if self.peek()[0] != "end":
            self.fail("trailing input")

    def expr(self) -> EtaExpr:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.next()[1] == "-" else 1
        out = self.term().scaled(sign)
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.next()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> EtaExpr:
        out = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.next()
            rhs = self.power()
            if op[1] == "*":
                out = out * rhs
            else:
                if rhs.as_pure_eta() is None:
                    self.fail("can only divide by a product of f_k factors", op)
                out = out * rhs**-1
        return out

    def power(self) -> EtaExpr:
        tok = self.peek()
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.next()
            e = self.expect_int(signed=True)
            try:
                return base**e
            except ValueError as err:
                self.fail(str(err), tok)
        return base

    def atom(self) -> EtaExpr:
        tok = self.next()
        kind, val, _ = tok
        if kind == "int":
            return EtaExpr.const(val)
        if kind == "eta":
            if val < 1:
                self.fail("eta index must be >= 1", tok)
            return EtaExpr.monomial(etas={val: 1})
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "name":
            if val == "q":
                if self.peek()[:2] == ("op", "^"):
                    self.next()
                    return EtaExpr.monomial(qshift=self.expect_int())
                return EtaExpr.monomial(qshift=1)
            if val == "theta":
                self.expect_op("(")
                a = self.expect_int()
                self.expect_op(",")
                b = self.expect_int()
                self.expect_op(")")
                if a < 1 or b < 1:
                    self.fail("theta parameters must be >= 1", tok)
                return EtaExpr.monomial(thetas=[(a, b)])
            if val in self.defs:
                return self._call(val)
            self.fail(f"unknown factor {val!r}", tok)
        self.fail("unexpected token", tok)

    def _call(self, name) -> EtaExpr:
        body = self.defs[name]
        if self.peek()[:2] != ("op", "("):
            return body
        self.next()
        tok = self.next()
        if tok[:2] != ("name", "q"):
            self.fail("expected q or q^t as argument", tok)
        t = 1
        if self.peek()[:2] == ("op", "^"):
            self.next()
            t = self.expect_int()
        self.expect_op(")")
        if t < 1:
            self.fail("substitution power must be >= 1", tok)
        return body.substitute(t)


def parse(text: str, defs: Mapping[str, EtaExpr] | None = None) -> EtaExpr:
    """Parse an eta expression; ``defs`` names reusable sub-expressions."""
    p = _Parser(text, defs or {})
    e = p.expr()
    p.end()
    return e


def parse_side(text: str, defs: Mapping[str, EtaExpr] | None = None) -> Side:
    """Like :func:`parse` but also accepts ``extract(expr, m, r)``."""
    return _Parser(text, defs or {}).side()


# ---------------------------------------------------------------- catalogs


class CatalogError(ValueError):
    pass


def load_catalog(text: str) -> list[IdentityRecord]:
    """Parse catalog text.

    Records are ``name | lhs | rhs | modulus | source`` (modulus blank for an
    exact identity); ``let NAME = expr`` defines a reusable sub-expression;
    ``#`` starts a comment line.
    """
    defs: dict[str, EtaExpr] = {}
    records: list[IdentityRecord] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("let "):
                name, _, body = line[4:].partition("=")
                name = name.strip()
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name) or name in ("q", "theta", "extract"):
                    raise CatalogError(f"bad definition name {name!r}")
                defs[name] = parse(body, defs)
                continue
            fields = [f.strip() for f in line.split("|")]
            if len(fields) != 5:
                raise CatalogError(f"expected 5 '|'-separated fields, got {len(fields)}")
            name, lhs, rhs, mod, source = fields
            if name in seen:
                raise CatalogError(f"duplicate identity name {name!r}")
            seen.add(name)
            modulus = int(mod) if mod else None
            if modulus is not None and modulus < 2:
                raise CatalogError(f"modulus must be >= 2, got {modulus}")
            records.append(
                IdentityRecord(name, parse_side(lhs, defs), parse_side(rhs, defs), modulus, source)
            )
        except (ParseError, ValueError) as err:
            raise CatalogError(f"line {lineno}: {err}") from err
    return records


def default_catalog_text() -> str:
    from importlib.resources import files

    return files("qdissect").joinpath("data/default.catalog").read_text(encoding="utf-8")


def default_catalog() -> list[IdentityRecord]:
    return load_catalog(default_catalog_text())


def dump_catalog(records) -> str:
    lines = []
    for r in records:
        mod = "" if r.modulus is None else str(r.modulus)
        lines.append(" | ".join([r.name, r.lhs.render(), r.rhs.render(), mod, r.source]))
    return "\n".join(lines) + "\n"
