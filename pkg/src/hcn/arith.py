"""Exact integer arithmetic primitives shared by every module.

Integers are arbitrary precision throughout; nothing here ever rounds.
Factorization is trial division plus a deterministic Miller-Rabin on the
cofactor, which covers every input this library touches (well below 2**63).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "DiscSplit",
    "disc_split",
    "divisors",
    "factorize",
    "fundamental_split",
    "is_fundamental_discriminant",
    "is_prime",
    "is_squarefree",
    "kronecker",
    "lambda_s",
    "moebius",
    "omega",
    "rational_str",
    "sigma_lns",
    "sigma_s",
    "squarefree_part",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p increasing."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 7
    # trial division with a mod-30 wheel; cofactor resolved by Miller-Rabin
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n:
        if is_prime(n):
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    out.sort()
    return tuple(out)


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def squarefree_part(n: int) -> tuple[int, int]:
    """n = s * f**2 with s squarefree; returns (s, f).  Needs n >= 1."""
    s = 1
    f = 1
    for p, e in factorize(n):
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    out.sort()
    return out


def sigma_s(n: int, s: int = 1) -> int:
    return sum(d**s for d in divisors(n))


def lambda_s(n: int, s: int = 1) -> int:
    """Sum of max(a, b)**s over ordered factorizations n = a*b."""
    return sum(max(d, n // d) ** s for d in divisors(n))


def sigma_lns(ell: int, big_n: int, s: int, r: int) -> int:
    """Restricted divisor power sum used by the Eisenstein coefficients.

    Sum of d**s over d | r with gcd(d, ell) = 1 and gcd(r/d, big_n/ell) = 1.
    """
    if big_n % ell != 0:
        raise ValueError(f"ell={ell} must divide N={big_n}")
    co = big_n // ell
    return sum(
        d**s
        for d in divisors(r)
        if math.gcd(d, ell) == 1 and math.gcd(r // d, co) == 1
    )


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), fully extended to all integer arguments."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


@dataclass(frozen=True)
class DiscSplit:
    """-n = D * f**2 with D a fundamental discriminant."""

    n: int
    D: int
    f: int


def is_fundamental_discriminant(d: int) -> bool:
    if d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def fundamental_split(delta: int) -> tuple[int, int]:
    """delta = D * f**2 with D fundamental; delta must be 0, 1 mod 4."""
    if delta == 0 or delta % 4 not in (0, 1):
        raise ValueError(f"{delta} is not a discriminant")
    sign = 1 if delta > 0 else -1
    s, f = squarefree_part(abs(delta))
    s *= sign
    if s % 4 == 1:
        return s, f
    # s = 2, 3 mod 4: the even part of f absorbs a 4
    return 4 * s, f // 2


def disc_split(n: int) -> DiscSplit | None:
    """Split -n = D*f**2, or None when -n is not a discriminant (n = 1, 2 mod 4)."""
    if n < 1:
        raise ValueError(f"disc_split needs n >= 1, got {n}")
    if (-n) % 4 not in (0, 1):
        return None
    d, f = fundamental_split(-n)
    return DiscSplit(n=n, D=d, f=f)


def rational_str(x: Fraction | int) -> str:
    """Exact decimal-free rendering: '3', '-1/12'."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
