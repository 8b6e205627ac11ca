"""Truncated formal power series over Z or Z/mZ.

A :class:`Series` holds coefficients for exponents ``0..order`` inclusive.
Every operation returns the largest order it can guarantee, so precision
is tracked rather than assumed.  Exact series keep Python integers in an
object array; modular series keep canonical residues in an int64 array and
route the heavy loops through :mod:`qdissect._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

MAX_MODULUS = 2**31


class RingMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: exact integers (``modulus=None``) or Z/mZ."""

    modulus: int | None = None

    def __post_init__(self):
        m = self.modulus
        if m is not None and not (2 <= m <= MAX_MODULUS):
            raise ValueError(f"modulus must lie in [2, 2^31], got {m}")

    @classmethod
    def exact(cls) -> Ring:
        return cls(None)

    @classmethod
    def mod(cls, m: int) -> Ring:
        return cls(int(m))

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    @property
    def kind(self) -> str:
        return "ExactInteger" if self.modulus is None else "Modular"

    def __str__(self):
        return "ZZ" if self.modulus is None else f"Z/{self.modulus}"

    def array(self, values: Iterable[int]) -> np.ndarray:
        if self.modulus is None:
            vals = [int(v) for v in values]
            arr = np.empty(len(vals), dtype=object)
            arr[:] = vals
            return arr
        vals = [int(v) % self.modulus for v in values]
        return np.asarray(vals, dtype=np.int64).reshape(-1)

    def zeros(self, n: int) -> np.ndarray:
        if self.modulus is None:
            arr = np.empty(n, dtype=object)
            arr[:] = 0
            return arr
        return np.zeros(n, dtype=np.int64)

    def unit_inverse(self, c: int) -> int:
        if self.modulus is None:
            if c in (1, -1):
                return c
            raise NotAUnit(f"constant term {c} is not a unit in ZZ")
        m = self.modulus
        if gcd(int(c), m) != 1:
            raise NotAUnit(f"constant term {c} is not a unit in Z/{m}")
        return pow(int(c), -1, m)


EXACT = Ring.exact()


class Series:
    """Immutable truncated power series ``sum c_n q^n`` for ``n <= order``."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring: Ring, coeffs):
        if isinstance(coeffs, np.ndarray) and _native(ring, coeffs):
            arr = coeffs.copy()
            if ring.modulus is not None:
                arr %= ring.modulus
        else:
            arr = ring.array(coeffs)
        if arr.shape[0] == 0:
            raise ValueError("a series needs at least the constant coefficient")
        arr.flags.writeable = False
        self.ring = ring
        self._c = arr

    @classmethod
    def _wrap(cls, ring: Ring, arr: np.ndarray) -> Series:
        # trusted constructor: arr is freshly built and already canonical
        s = object.__new__(cls)
        arr.flags.writeable = False
        s.ring = ring
        s._c = arr
        return s

    @classmethod
    def one(cls, ring: Ring, order: int) -> Series:
        arr = ring.zeros(order + 1)
        arr[0] = 1
        return cls._wrap(ring, arr)

    @classmethod
    def zero(cls, ring: Ring, order: int) -> Series:
        return cls._wrap(ring, ring.zeros(order + 1))

    @classmethod
    def monomial(cls, ring: Ring, order: int, coeff: int = 1, shift: int = 0) -> Series:
        arr = ring.zeros(order + 1)
        if shift <= order:
            arr[shift] = coeff if ring.modulus is None else coeff % ring.modulus
        return cls._wrap(ring, arr)

    @classmethod
    def from_sparse(cls, ring: Ring, order: int, terms: dict[int, int]) -> Series:
        arr = ring.zeros(order + 1)
        for e, c in terms.items():
            if 0 <= e <= order:
                arr[e] += c
        if ring.modulus is not None:
            arr %= ring.modulus
        return cls._wrap(ring, arr)

    @property
    def order(self) -> int:
        return self._c.shape[0] - 1

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def tolist(self) -> list[int]:
        return [int(v) for v in self._c]

    def __len__(self):
        return self._c.shape[0]

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(v) for v in self._c[n]]
        return int(self._c[n])

    def __iter__(self):
        return (int(v) for v in self._c)

    def __repr__(self):
        head = " ".join(str(v) for v in self.tolist()[:10])
        more = " ..." if self.order >= 10 else ""
        return f"Series({self.ring}, order={self.order}, [{head}{more}])"

    def nonzero(self) -> np.ndarray:
        return np.flatnonzero(self._c != 0)

    def is_zero(self) -> bool:
        return self.nonzero().shape[0] == 0

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return Series._wrap(self.ring, self._c[: order + 1].copy())

    # equality is coefficient-wise up to the common order
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.ring == other.ring and first_mismatch(self, other) is None

    __hash__ = None

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return scale(self, int(other))

    __rmul__ = __mul__

    def __pow__(self, e):
        return pow_(self, e)


def _native(ring: Ring, arr: np.ndarray) -> bool:
    return arr.dtype == object if ring.modulus is None else arr.dtype == np.int64


def _check_ring(*series: Series) -> Ring:
    ring = series[0].ring
    for s in series[1:]:
        if s.ring != ring:
            raise RingMismatch(f"ring mismatch: {ring} vs {s.ring}")
    return ring


def first_mismatch(a: Series, b: Series) -> int | None:
    """Lowest index below the common order where ``a`` and ``b`` differ."""
    _check_ring(a, b)
    n = min(a.order, b.order) + 1
    diff = np.flatnonzero(a.coeffs[:n] != b.coeffs[:n])
    return int(diff[0]) if diff.shape[0] else None


def add(a: Series, b: Series) -> Series:
    ring = _check_ring(a, b)
    n = min(a.order, b.order) + 1
    out = a.coeffs[:n] + b.coeffs[:n]
    if ring.modulus is not None:
        out %= ring.modulus
    return Series._wrap(ring, out)


def sub(a: Series, b: Series) -> Series:
    ring = _check_ring(a, b)
    n = min(a.order, b.order) + 1
    out = a.coeffs[:n] - b.coeffs[:n]
    if ring.modulus is not None:
        out %= ring.modulus
    return Series._wrap(ring, out)


def scale(a: Series, c: int) -> Series:
    ring = a.ring
    if ring.modulus is None:
        return Series._wrap(ring, a.coeffs * int(c))
    return Series._wrap(ring, (a.coeffs * (int(c) % ring.modulus)) % ring.modulus)


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at ``min(a.order, b.order)``.

    Cost is ``O(N * nnz)`` where ``nnz`` counts nonzero terms of the sparser
    factor, so products with eta-type series stay cheap.
    """
    ring = _check_ring(a, b)
    order = min(a.order, b.order)
    if a.nonzero().shape[0] > b.nonzero().shape[0]:
        a, b = b, a
    idx = a.nonzero()
    idx = idx[idx <= order]
    bc = b.coeffs[: order + 1]
    if ring.modulus is not None:
        vals = a.coeffs[idx]
        return Series._wrap(ring, _kernels.mul_mod(idx, vals, bc, ring.modulus, order))
    out = ring.zeros(order + 1)
    for i in idx:
        i = int(i)
        out[i:] += a.coeffs[i] * bc[: order + 1 - i]
    return Series._wrap(ring, out)


def divide(num: Series, den: Series) -> Series:
    """Solve ``den * x = num`` for ``x``; ``den`` needs a unit constant term.

    Uses the convolution recurrence, ``O(N * nnz(den))``.
    """
    ring = _check_ring(num, den)
    order = min(num.order, den.order)
    inv0 = ring.unit_inverse(den[0])
    idx = den.nonzero()
    idx = idx[idx <= order]
    vals = den.coeffs[idx]
    if ring.modulus is not None:
        out = _kernels.divide_mod(
            num.coeffs[: order + 1], idx, vals, inv0, ring.modulus, order
        )
        return Series._wrap(ring, out)
    terms = [(int(s), int(v)) for s, v in zip(idx[1:], vals[1:])]
    nc = num.coeffs
    out = [0] * (order + 1)
    for n in range(order + 1):
        acc = nc[n]
        for s, v in terms:
            if s > n:
                break
            acc -= v * out[n - s]
        out[n] = acc * inv0
    return Series._wrap(ring, ring.array(out))


def inverse(a: Series) -> Series:
    return divide(Series.one(a.ring, a.order), a)


def pow_(a: Series, e: int) -> Series:
    """``a**e`` by repeated squaring; negative ``e`` inverts first."""
    e = int(e)
    if e < 0:
        a = inverse(a)
        e = -e
    result = Series.one(a.ring, a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def inflate(a: Series, t: int) -> Series:
    """Substitute ``q -> q**t`` keeping the order fixed."""
    if t < 1:
        raise ValueError("inflation factor must be >= 1")
    out = a.ring.zeros(a.order + 1)
    src = a.coeffs[: a.order // t + 1]
    out[:: t][: src.shape[0]] = src
    return Series._wrap(a.ring, out)


def shift(a: Series, s: int) -> Series:
    """Multiply by ``q**s`` keeping the order fixed."""
    if s < 0:
        raise ValueError("shift must be nonnegative")
    out = a.ring.zeros(a.order + 1)
    if s <= a.order:
        out[s:] = a.coeffs[: a.order + 1 - s]
    return Series._wrap(a.ring, out)


def extract(a: Series, m: int, r: int) -> Series:
    """Reindex the ``q^(m n + r)`` terms: ``result[n] = a[m n + r]``."""
    if m < 1:
        raise ValueError("extraction modulus must be >= 1")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} not in [0, {m})")
    if r > a.order:
        raise ValueError(f"residue {r} exceeds series order {a.order}")
    return Series._wrap(a.ring, a.coeffs[r::m].copy())


def interleave(parts: Sequence[Series]) -> Series:
    """Inverse of :func:`extract` over all residues of ``len(parts)``."""
    if not parts:
        raise ValueError("interleave needs at least one part")
    ring = _check_ring(*parts)
    m = len(parts)
    k = min(p.order for p in parts) + 1
    out = ring.zeros(m * k)
    for r, p in enumerate(parts):
        out[r::m] = p.coeffs[:k]
    return Series._wrap(ring, out)


def reduce_mod(a: Series, m: int) -> Series:
    """Canonical coefficient-wise reduction of an exact series into Z/m."""
    if a.ring.modulus is not None:
        if a.ring.modulus % m:
            raise RingMismatch(f"Z/{a.ring.modulus} does not reduce to Z/{m}")
    ring = Ring.mod(m)
    vals = np.fromiter((int(v) % m for v in a.coeffs), dtype=np.int64, count=len(a))
    return Series._wrap(ring, vals)
