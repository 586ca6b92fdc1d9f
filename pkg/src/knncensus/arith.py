"""Exact integer and modular arithmetic primitives.

Everything runs on plain Python integers, which are arbitrary precision,
so no intermediate value can overflow.  Validation is strict: the census
only makes sense for odd prime powers n = p**e > 3, and absurdly large
moduli are refused up front instead of degrading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    EvenPrime,
    ModulusTooLarge,
    ModulusTooSmall,
    NotInvertible,
    NotPrime,
    ParameterError,
)

MAX_MODULUS = 1 << 62


def is_prime(x: int) -> bool:
    """Deterministic trial division; inputs here are tiny."""
    if x < 2:
        return False
    if x in (2, 3):
        return True
    if x % 2 == 0:
        return False
    d = 3
    while d * d <= x:
        if x % d == 0:
            return False
        d += 2
    return True


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus, for exp >= 0."""
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be nonnegative, got {exp}")
    return pow(base, exp, modulus)


def mod_inv(a: int, m: int) -> int:
    """Inverse of a mod m; raises NotInvertible when gcd(a, m) != 1."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def p_adic_valuation(x: int, p: int) -> int:
    """Largest t with p**t dividing x, for x >= 1."""
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return t


def unit_group_order(p: int, t: int) -> int:
    """Order of the unit group of Z/p**t, i.e. Euler phi of p**t."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0:
        return 1
    return p ** (t - 1) * (p - 1)


@dataclass(frozen=True)
class PrimePower:
    """An odd prime power n = p**e with n > 3."""

    p: int
    e: int
    n: int = field(init=False)

    def __post_init__(self) -> None:
        if self.p == 2:
            raise EvenPrime("p must be an odd prime; p = 2 is rejected")
        if not is_prime(self.p):
            raise NotPrime(f"p must be an odd prime, got {self.p}")
        if self.e < 1:
            raise ParameterError(f"e must be at least 1, got {self.e}")
        n = self.p**self.e
        if n == 3:
            raise ModulusTooSmall("n = p**e must exceed 3")
        if n > MAX_MODULUS:
            raise ModulusTooLarge(f"n = {n} exceeds the supported bound 2**62")
        object.__setattr__(self, "n", n)
