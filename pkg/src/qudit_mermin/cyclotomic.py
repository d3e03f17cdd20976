"""Exact arithmetic over cyclotomic integers Z[alpha], alpha = exp(2*pi*i/m).

Supported orders are m = d**2 with d an odd prime.  Elements are integer
coordinate vectors over the power basis 1, alpha, ..., alpha**(phi(m)-1),
reduced modulo the m-th cyclotomic polynomial

    Phi_m(x) = 1 + x**d + x**(2*d) + ... + x**((d-1)*d),

which is the minimal polynomial of alpha, so equality and zero tests on the
canonical form are exact.  A float "shadow" (``to_complex``, ``magnitude``)
is provided for reporting and for cross-checks; it never feeds back into the
ring operations.

For qutrits m = 9: alpha = exp(2*pi*i/9) and omega = alpha**3 is the usual
cube root of unity, so all amplitudes, operator weights, and hidden-variable
values handled by this package live in a single ring.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

__all__ = [
    "CycInt",
    "PhaseExponent",
    "root_of_unity",
    "order_params",
    "compare_real_coeffs",
]


@lru_cache(maxsize=None)
def order_params(m: int) -> tuple[int, int]:
    """Validate an order m = d**2 (d an odd prime) and return (d, phi(m)).

    phi(d**2) = d*(d-1) is the length of the reduced coefficient vector.
    """
    if m <= 0:
        raise ValueError(f"invalid cyclotomic order {m}")
    d = math.isqrt(m)
    is_odd_prime = (
        d >= 3 and d % 2 == 1 and all(d % q for q in range(3, math.isqrt(d) + 1, 2))
    )
    if d * d != m or not is_odd_prime:
        raise ValueError(
            f"invalid cyclotomic order {m}: expected d**2 with d an odd prime"
        )
    return d, d * (d - 1)


def _reduce(m: int, raw) -> tuple[int, ...]:
    """Reduce power-basis coefficients (any length) to the canonical vector.

    Exponents are first folded mod m (alpha**m = 1); the top d exponents are
    then eliminated with alpha**(phi+t) = -sum_{j<d-1} alpha**(j*d+t), which
    is division by Phi_m.
    """
    d, phi = order_params(m)
    tmp = [0] * m
    for e, c in enumerate(raw):
        if c:
            tmp[e % m] += c
    for t in range(d):
        c = tmp[phi + t]
        if c:
            tmp[phi + t] = 0
            for j in range(d - 1):
                tmp[j * d + t] -= c
    return tuple(tmp[:phi])


@lru_cache(maxsize=None)
def _alpha_powers(m: int) -> tuple[complex, ...]:
    _, phi = order_params(m)
    return tuple(cmath.exp(2j * math.pi * j / m) for j in range(phi))


@lru_cache(maxsize=None)
def _root_table(m: int) -> dict[tuple[int, ...], int]:
    """Canonical coefficient vectors of alpha**e for e in [0, m)."""
    table = {}
    for e in range(m):
        raw = [0] * m
        raw[e] = 1
        table.setdefault(_reduce(m, raw), e)
    return table


@dataclass(frozen=True)
class CycInt:
    """A cyclotomic integer in canonical reduced form.

    ``coeffs[j]`` is the integer coefficient of alpha**j for j < phi(m).
    Instances are immutable; every operation returns a new value, so they
    are safe to share across threads and processes.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _, phi = order_params(self.order)
        if len(self.coeffs) != phi:
            raise ValueError(
                f"expected {phi} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )

    # ---- constructors ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, m: int, coeffs) -> CycInt:
        """Build from power-basis coefficients of any length (reducing)."""
        return cls(m, _reduce(m, tuple(coeffs)))

    @classmethod
    def zero(cls, m: int) -> CycInt:
        _, phi = order_params(m)
        return cls(m, (0,) * phi)

    @classmethod
    def one(cls, m: int) -> CycInt:
        return cls.integer(1, m)

    @classmethod
    def integer(cls, n: int, m: int) -> CycInt:
        _, phi = order_params(m)
        return cls(m, (n,) + (0,) * (phi - 1))

    # ---- ring operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return CycInt.integer(other, self.order)
        if isinstance(other, CycInt):
            if other.order != self.order:
                raise ValueError(
                    f"mismatched cyclotomic orders {self.order} and {other.order}"
                )
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycInt(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycInt(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> CycInt:
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = len(self.coeffs)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycInt(self.order, _reduce(self.order, prod))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycInt:
        if k < 0:
            raise ValueError("negative powers are not defined in the ring")
        result = CycInt.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def times_root(self, j: int) -> CycInt:
        """Multiply by alpha**j (a signed permutation of coefficients)."""
        m = self.order
        tmp = [0] * m
        for e, c in enumerate(self.coeffs):
            if c:
                tmp[(e + j) % m] += c
        return CycInt(m, _reduce(m, tmp))

    def conjugate(self) -> CycInt:
        """Complex conjugation: alpha**j -> alpha**(m-j)."""
        m = self.order
        tmp = [0] * m
        for e, c in enumerate(self.coeffs):
            if c:
                tmp[(-e) % m] += c
        return CycInt(m, _reduce(m, tmp))

    # ---- queries and the float shadow -------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def as_root_exponent(self) -> int | None:
        """Exponent e with self == alpha**e, or None if not a root of unity."""
        return _root_table(self.order).get(self.coeffs)

    def to_complex(self) -> complex:
        powers = _alpha_powers(self.order)
        return sum((c * powers[j] for j, c in enumerate(self.coeffs) if c), 0j)

    def magnitude(self) -> float:
        return abs(self.to_complex())

    def __abs__(self) -> float:
        return self.magnitude()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(f"{c}")
            else:
                mono = "a" if j == 1 else f"a^{j}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


@dataclass(frozen=True)
class PhaseExponent:
    """A root of unity alpha**exponent, stored by its exponent mod m."""

    exponent: int
    order: int

    def __post_init__(self) -> None:
        order_params(self.order)
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: PhaseExponent) -> PhaseExponent:
        if not isinstance(other, PhaseExponent):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(
                f"mismatched cyclotomic orders {self.order} and {other.order}"
            )
        return PhaseExponent(self.exponent + other.exponent, self.order)

    def conjugate(self) -> PhaseExponent:
        return PhaseExponent(-self.exponent, self.order)

    def cyc(self) -> CycInt:
        return root_of_unity(self.exponent, self.order)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.exponent / self.order)


def root_of_unity(j: int, m: int) -> CycInt:
    """Canonical representative of alpha**j, alpha = exp(2*pi*i/m)."""
    order_params(m)
    raw = [0] * m
    raw[j % m] = 1
    return CycInt(m, _reduce(m, raw))


def mp_real_value(m: int, coeffs, dps: int = 80):
    """High-precision real part of sum_j coeffs[j] * alpha**j."""
    order_params(m)
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for j, c in enumerate(coeffs):
            if c:
                total += c * mpmath.cos(2 * mpmath.pi * j / m)
        return total


def compare_real_coeffs(m: int, c1, c2) -> int:
    """Total order on two real cyclotomic values given by canonical coeffs.

    Returns -1, 0, or +1.  Equality is decided exactly on the canonical
    form; a strict inequality is decided by the float shadow, falling back
    to 80-digit evaluation when the float gap is within noise.
    """
    c1 = tuple(c1)
    c2 = tuple(c2)
    if c1 == c2:
        return 0
    powers = _alpha_powers(m)

    def shadow(c):
        return sum(v * powers[j].real for j, v in enumerate(c) if v)

    f1, f2 = shadow(c1), shadow(c2)
    gap = f1 - f2
    if abs(gap) > 1e-6 * (1.0 + abs(f1) + abs(f2)):
        return 1 if gap > 0 else -1
    diff = tuple(a - b for a, b in zip(c1, c2))
    value = mp_real_value(m, diff)
    if value > 0:
        return 1
    if value < 0:
        return -1
    raise ArithmeticError("comparison of distinct canonical forms came out zero")
