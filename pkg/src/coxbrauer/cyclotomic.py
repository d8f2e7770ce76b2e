"""Exact arithmetic in rings of cyclotomic integers Z[zeta_L].

Elements are integer coordinate vectors on the power basis
1, zeta, ..., zeta^(phi(L)-1), with reduction modulo the L-th cyclotomic
polynomial.  No floating point is used anywhere; equality of elements is
literal equality of coordinates.

The module also knows how to express sqrt(2) and sqrt(3) inside a large
enough cyclotomic ring (8 | L, resp. 12 | L), which is what the twisted
torus order polynomials need.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .numtheory import euler_phi


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending, monic."""
    if n == 1:
        return (-1, 1)
    # (x^n - 1) / prod_{d | n, d < n} Phi_d(x), exact division by monic factors
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, den monic."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    out = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    if any(num[: dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _reduction_table(L: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_L^k for k = 0 .. L-1."""
    d = euler_phi(L)
    phi = cyclotomic_polynomial(L)
    rows: list[tuple[int, ...]] = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(L):
        rows.append(tuple(cur))
        # multiply by zeta: shift, then reduce the overflow with zeta^d = -(phi - x^d)
        top = cur[d - 1]
        cur = [0] + cur[: d - 1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


@dataclass(frozen=True)
class CycloInt:
    """An element of Z[zeta_L] in power-basis coordinates."""

    L: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != euler_phi(self.L):
            raise ValueError("coordinate vector has wrong length")

    @staticmethod
    def zero(L: int) -> "CycloInt":
        return CycloInt(L, (0,) * euler_phi(L))

    @staticmethod
    def integer(L: int, a: int) -> "CycloInt":
        c = [0] * euler_phi(L)
        c[0] = a
        return CycloInt(L, tuple(c))

    @staticmethod
    def zeta_power(L: int, k: int) -> "CycloInt":
        return CycloInt(L, _reduction_table(L)[k % L])

    def __add__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.L, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        return CycloInt(self.L, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.L, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInt(self.L, tuple(a * other for a in self.coords))
        table = _reduction_table(self.L)
        d = len(self.coords)
        # schoolbook product, then fold exponents >= d back with the table
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = table[k % self.L]
                for i in range(d):
                    out[i] += c * row[i]
        return CycloInt(self.L, tuple(out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_integer(self) -> int | None:
        """The element as a rational integer, or None if it is not one."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def galois(self, k: int) -> "CycloInt":
        """Image under zeta -> zeta^k (k must be prime to L)."""
        table = _reduction_table(self.L)
        acc = [0] * len(self.coords)
        for i, a in enumerate(self.coords):
            if a:
                row = table[i * k % self.L]
                for t in range(len(acc)):
                    acc[t] += a * row[t]
        return CycloInt(self.L, tuple(acc))

    def conjugate(self) -> "CycloInt":
        return self.galois(-1 % self.L)


def sqrt_element(L: int, p: int) -> CycloInt:
    """sqrt(p) for p in {2, 3} as an element of Z[zeta_L].

    Uses sqrt(2) = zeta_8 + zeta_8^-1 and sqrt(3) = zeta_12 + zeta_12^-1,
    so L must be divisible by 8 resp. 12.
    """
    if p == 2:
        if L % 8:
            raise ValueError("sqrt(2) needs 8 | L")
        k = L // 8
    elif p == 3:
        if L % 12:
            raise ValueError("sqrt(3) needs 12 | L")
        k = L // 12
    else:
        raise ValueError("only sqrt(2) and sqrt(3) are supported")
    return CycloInt.zeta_power(L, k) + CycloInt.zeta_power(L, -k % L)


def as_quadratic_pair(x: CycloInt, p: int | None) -> tuple[int, int]:
    """Write x as a + b*sqrt(p) with integers a, b (b = 0 when p is None).

    Raises ArithmeticError when x does not lie in Z[sqrt(p)]; the caller
    treats that as a table bug.
    """
    if p is None:
        a = x.as_integer()
        if a is None:
            raise ArithmeticError(f"non-rational cyclotomic residue: {x.coords}")
        return a, 0
    w = sqrt_element(x.L, p)
    # solve x = a*1 + b*w coordinatewise; basis vectors 1 and w are
    # supported on disjoint sets of power-basis positions (w[0] == 0)
    b = 0
    for i in range(1, len(w.coords)):
        if w.coords[i]:
            if x.coords[i] % w.coords[i]:
                raise ArithmeticError(f"residue outside Z[sqrt({p})]: {x.coords}")
            b = x.coords[i] // w.coords[i]
            break
    a = x.coords[0] - b * w.coords[0]
    if (CycloInt.integer(x.L, a) + b * w).coords != x.coords:
        raise ArithmeticError(f"residue outside Z[sqrt({p})]: {x.coords}")
    return a, b


def common_level(denominators: list[int]) -> int:
    """lcm of angle denominators, the level L used for the arithmetic."""
    return lcm(*denominators) if denominators else 1
