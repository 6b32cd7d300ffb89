"""Class-number families and their local-factor representations.

Two independent evaluation routes run through this module: the defining
divisor-sum/product formulas (`pw_class_number`, `lsz_class_number`) and
the local-factor products (`*_local`).  Identity checks compare the two,
so neither side may call into the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hcn import binary_forms
from hcn.arith import (
    disc_split,
    divisors,
    factorize,
    fundamental_split,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker,
    moebius,
    sigma_lns,
)

__all__ = [
    "EllLocalFactors",
    "L0_chi",
    "LocalFactors",
    "PWParams",
    "ell_local_factors",
    "hurwitz_local",
    "l_n_value",
    "local_factors",
    "lsz_class_number",
    "lsz_class_number_local",
    "pw_class_number",
    "pw_class_number_local",
]


def _prime_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _sigma1_prime_power(q: int, p: int) -> int:
    # sigma_1 of the p-power q; sigma(q/p) with q = 1 is 0 by convention
    total = 0
    while q >= 1:
        total += q
        if q == 1:
            break
        q //= p
    return total


def _require_odd_squarefree(n: int, what: str = "N"):
    if n < 1 or n % 2 == 0 or not is_squarefree(n):
        raise ValueError(f"{what}={n} must be odd and squarefree")


@lru_cache(maxsize=None)
def L0_chi(d: int) -> Fraction:
    """L(0, chi_d) for a fundamental discriminant d < 0.

    Character sum -(1/|d|) sum a*(d|a), asserted equal to 2h(d)/w(d); the
    double computation guards the constant appearing in every identity.
    """
    if d >= 0 or not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    total = sum(kronecker(d, a) * a for a in range(1, -d))
    value = Fraction(-total, -d)
    w = 6 if d == -3 else 4 if d == -4 else 2
    from_h = Fraction(2 * binary_forms.class_number_h(d), w)
    assert value == from_h, f"L(0, chi_{d}): {value} != {from_h}"
    return value


def l_n_value(n_level: int, s: int = -1) -> Fraction:
    """L_N(-1, id) = (-1/12) * prod_{p | N} (1 - p).

    Only the central value s = -1 is needed (or defined) here.
    """
    if s != -1:
        raise ValueError("only s = -1 is supported")
    _require_odd_squarefree(n_level)
    value = Fraction(-1, 12)
    for p, _ in factorize(n_level):
        value *= 1 - p
    return value


@dataclass(frozen=True)
class LocalFactors:
    """The four rational quantities attached to (p, n) via -n = D f^2."""

    p: int
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction


def local_factors(p: int, n: int) -> LocalFactors:
    split = disc_split(n)
    if split is None:
        raise ValueError(f"-{n} is not a discriminant")
    fp = _prime_part(split.f, p)
    chi = kronecker(split.D, p)
    a_val = Fraction(fp * p * (p - chi), (p - 1) * (p + 1))
    b_val = Fraction(2 * p * fp - p - 1 - chi * (2 * fp - p - 1), p - 1)
    c_val = Fraction(1 - chi)
    d_val = Fraction(
        _sigma1_prime_power(fp, p)
        - chi * (_sigma1_prime_power(fp // p, p) if fp > 1 else 0)
    )
    assert c_val in (0, 1, 2)
    return LocalFactors(p=p, A=a_val, B=b_val, C=c_val, D=d_val)


@dataclass(frozen=True)
class EllLocalFactors:
    """Character-twisted local factors from the two splits
    -eps*n = D_ell f^2 and -ell*n = D_ell' f'^2."""

    p: int
    A: Fraction
    C: Fraction
    D: Fraction
    D_ell: int
    D_ell_prime: int
    f: int
    f_prime: int
    eps: int


def _twisted_splits(ell: int, n: int):
    """(eps, D_ell, f, D_ell', f') or None when -eps*n is not a discriminant."""
    eps = -1 if ell % 4 == 3 else 1
    d1 = -eps * n
    if d1 % 4 not in (0, 1):
        return None
    d2 = -ell * n
    big_d, f = fundamental_split(d1)
    big_d2, f2 = fundamental_split(d2)
    return eps, big_d, f, big_d2, f2


def ell_local_factors(p: int, ell: int, n: int) -> EllLocalFactors:
    _require_odd_squarefree(ell, "ell")
    parts = _twisted_splits(ell, n)
    if parts is None:
        raise ValueError(f"-(-1)^((ell-1)/2) * {n} is not a discriminant")
    eps, big_d, f, big_d2, f2 = parts
    fp = _prime_part(f, p)
    chi2 = kronecker(big_d2, p)
    a_val = Fraction(fp * p * (p - chi2), (p - 1) * (p + 1))
    c_val = Fraction(1 - chi2)
    d_val = Fraction(
        _sigma1_prime_power(fp, p)
        - kronecker(big_d, p) * kronecker(p, ell)
        * (_sigma1_prime_power(fp // p, p) if fp > 1 else 0)
    )
    return EllLocalFactors(
        p=p, A=a_val, C=c_val, D=d_val,
        D_ell=big_d, D_ell_prime=big_d2, f=f, f_prime=f2, eps=eps,
    )


@dataclass(frozen=True)
class PWParams:
    """(ell, m, N) with ell | N, m | N, N odd squarefree."""

    ell: int
    m: int
    N: int

    def __post_init__(self):
        _require_odd_squarefree(self.N)
        if self.N % self.ell:
            raise ValueError(f"ell={self.ell} must divide N={self.N}")
        if self.N % self.m:
            raise ValueError(f"m={self.m} must divide N={self.N}")


def pw_class_number(params: PWParams, n: int) -> Fraction:
    """H(ell, m, N; n) straight from the defining divisor sums.

    The sum runs over divisors a | f_n coprime to N (as in the local
    expansion's lemma; the unrestricted sum contradicts the theta-series
    side already at N = 5, n = 75).
    """
    ell, m, big_n = params.ell, params.m, params.N
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return l_n_value(big_n) if m == big_n else Fraction(0)
    parts = _twisted_splits(ell, n)
    if parts is None:
        return Fraction(0)
    eps, big_d, f, big_d2, f2 = parts
    total = Fraction(0)
    for a in divisors(f):
        if math.gcd(a, big_n) != 1:
            continue
        mu = moebius(a)
        if mu == 0:
            continue
        total += (
            mu * kronecker(big_d, a) * kronecker(a, ell)
            * sigma_lns(m, big_n, 1, f // a)
        )
    value = L0_chi(big_d2)
    for p, _ in factorize(m):
        value *= 1 - kronecker(big_d2, p)  # Euler factors of L_m at s=0
    if m == big_n:
        return value * total
    for p, _ in factorize(big_n // m):
        chi = kronecker(big_d2, p)
        value *= Fraction(p * (p - chi), (p - 1) * (p + 1))
    g1 = math.gcd(ell, big_d)
    value *= Fraction(g1, math.gcd(g1, m))
    return value * total


def pw_class_number_local(params: PWParams, n: int) -> Fraction:
    """H_{m,N}(n) as the local product L(0,chi) * prod D_p * C_p * A_p."""
    if params.ell != 1:
        raise ValueError("local product is the trivial-character route")
    split = disc_split(n)
    if n < 1 or split is None:
        raise ValueError(f"-{n} is not a discriminant")
    m, big_n = params.m, params.N
    value = L0_chi(split.D)
    for p, _ in factorize(split.f):
        if big_n % p:
            value *= local_factors(p, n).D
    for p, _ in factorize(m):
        value *= local_factors(p, n).C
    for p, _ in factorize(big_n // m):
        value *= local_factors(p, n).A
    return value


def hurwitz_local(n: int) -> Fraction:
    """H(n) via L(0, chi_{D_n}) * prod_{p | f_n} D_p(n); independent of the
    reduced-form oracle in binary_forms."""
    split = disc_split(n)
    if n < 1 or split is None:
        raise ValueError(f"-{n} is not a discriminant")
    value = L0_chi(split.D)
    for p, _ in factorize(split.f):
        value *= local_factors(p, n).D
    return value


def _validate_lsz_pair(n1: int, n2: int):
    if n1 < 1 or n2 < 1:
        raise ValueError("N1, N2 must be positive")
    if math.gcd(n1, n2) != 1:
        raise ValueError(f"gcd(N1={n1}, N2={n2}) must be 1")
    if not (is_squarefree(n1) and is_squarefree(n2)):
        raise ValueError("N1, N2 must be squarefree")
    if n2 % 2 == 0:
        raise ValueError("N2 must be odd")
    # N1 may carry one factor of 2: the r_3 identity needs H^{(2,1)}(4n)


def _lsz_conductor(n1: int, n2: int, d: int) -> int | None:
    """Largest f supported on primes of N1*N2 with -d/f^2 a discriminant."""
    f = 1
    rest = d
    for p, _ in factorize(n1 * n2):
        if p == 2:
            continue
        e = 0
        while rest % (p * p) == 0:
            rest //= p * p
            e += 1
        f *= p**e
    if (n1 * n2) % 2 == 0:
        v = 0
        while rest % 4**(v + 1) == 0:
            v += 1
        for j in range(v, -1, -1):
            if (-(rest // 4**j)) % 4 in (0, 1):
                return f * 2**j
        return None
    return f if (-d // (f * f)) % 4 in (0, 1) else None


def lsz_class_number(n1: int, n2: int, d: int) -> Fraction:
    """Modified class number H^(N1,N2)(D) from the defining formula.

    Uses the reduced-form Hurwitz oracle for the H factor, keeping this
    route independent of the local-factor product.
    """
    _validate_lsz_pair(n1, n2)
    if d < 0:
        raise ValueError("D must be >= 0")
    if d == 0:
        value = Fraction(-1, 12)
        for p, _ in factorize(n1):
            value *= 1 - p
        for p, _ in factorize(n2):
            value *= p + 1
        return value
    f = _lsz_conductor(n1, n2, d)
    if f is None or d % (f * f):
        return Fraction(0)
    d0 = -(d // (f * f))  # the negative discriminant -D/f^2
    if d0 % 4 not in (0, 1):
        return Fraction(0)
    value = binary_forms.hurwitz_H(-d0)
    for p, _ in factorize(n1):
        value *= 1 - kronecker(d0, p)
    for p, _ in factorize(n2):
        fp = _prime_part(f, p)
        chi = kronecker(d0, p)
        value *= Fraction(2 * p * fp - p - 1 - chi * (2 * fp - p - 1), p - 1)
    return value


def lsz_class_number_local(n1: int, n2: int, n: int) -> Fraction:
    """H^(N1,N2)(n) as the local product L(0,chi) * prod D_p * C_p * B_p."""
    _validate_lsz_pair(n1, n2)
    if n1 % 2 == 0:
        raise ValueError("local product needs odd N1 (N = N1*N2 odd squarefree)")
    split = disc_split(n)
    if n < 1 or split is None:
        raise ValueError(f"-{n} is not a discriminant")
    big_n = n1 * n2
    value = L0_chi(split.D)
    for p, _ in factorize(split.f):
        if big_n % p:
            value *= local_factors(p, n).D
    for p, _ in factorize(n1):
        value *= local_factors(p, n).C
    for p, _ in factorize(n2):
        value *= local_factors(p, n).B
    return value
