import math
import random

import pytest

from hcn import arith


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def ref_kronecker(a, n):
    # independent reference: multiplicative over the bottom factorization,
    # Legendre by Euler's criterion at odd primes
    if n == 0:
        return 1 if abs(a) == 1 else 0
    out = 1
    if n < 0:
        out = 1 if a >= 0 else -1
        n = -n
    while n % 2 == 0:
        if a % 2 == 0:
            return 0
        out *= 1 if a % 8 in (1, 7) else -1
        n //= 2
    p = 3
    while n > 1:
        while p * p <= n and n % p:
            p += 2
        q = p if p * p <= n else n
        out *= legendre(a, q)
        n //= q
    return out


def test_kronecker_against_reference():
    for a in range(-100, 101):
        for n in range(-100, 101):
            assert arith.kronecker(a, n) == ref_kronecker(a, n), (a, n)


def test_kronecker_paper_values():
    assert arith.kronecker(-35, 31) == -1
    assert arith.kronecker(-35, 41) == -1
    for d in (-3, -4, -20, 5, 12, -163):
        assert arith.kronecker(d, 1) == 1
    assert arith.kronecker(-3, 5) == -1  # -3 = 2 mod 5 is a non-residue


def test_kronecker_multiplicative():
    rng = random.Random(7)
    for _ in range(300):
        d = rng.randint(-50, 50)
        a = rng.randint(-10**4, 10**4)
        b = rng.randint(-10**4, 10**4)
        assert (arith.kronecker(d, a * b)
                == arith.kronecker(d, a) * arith.kronecker(d, b))
        assert (arith.kronecker(a * b, d)
                == arith.kronecker(a, d) * arith.kronecker(b, d))


def test_kronecker_at_zero():
    assert arith.kronecker(1, 0) == 1
    assert arith.kronecker(-1, 0) == 1
    assert arith.kronecker(7, 0) == 0
    assert arith.kronecker(0, 7) == 0


def test_disc_split_examples():
    assert arith.disc_split(3) == arith.DiscSplit(3, -3, 1)
    assert arith.disc_split(12) == arith.DiscSplit(12, -3, 2)
    assert arith.disc_split(5) is None
    assert arith.disc_split(4) == arith.DiscSplit(4, -4, 1)


def test_disc_split_roundtrip():
    for n in range(1, 10**5 + 1):
        if n % 4 in (1, 2):
            assert arith.disc_split(n) is None
            continue
        split = arith.disc_split(n)
        assert split.D * split.f**2 == -n
        assert arith.is_fundamental_discriminant(split.D)


def test_fundamental_split_positive():
    assert arith.fundamental_split(5) == (5, 1)
    assert arith.fundamental_split(4) == (1, 2)  # 4*1 is not fundamental
    assert arith.fundamental_split(9) == (1, 3)  # trivial character case
    assert arith.fundamental_split(8) == (8, 1)
    with pytest.raises(ValueError):
        arith.fundamental_split(6)


def test_sigma_lns():
    assert arith.sigma_lns(1, 1, 1, 6) == 12
    assert arith.sigma_lns(5, 5, 1, 5) == 1
    assert arith.sigma_lns(1, 5, 1, 5) == 5
    with pytest.raises(ValueError):
        arith.sigma_lns(3, 5, 1, 10)
    for s in (0, 1, 2):
        for r in range(1, 1001):
            assert arith.sigma_lns(1, 1, s, r) == arith.sigma_s(r, s)


def test_divisor_functions():
    assert arith.lambda_s(1, 1) == 1
    assert arith.lambda_s(4, 1) == 10
    assert arith.sigma_s(6, 1) == 12
    assert arith.omega(35) == 2
    assert arith.moebius(30) == -1
    assert arith.moebius(12) == 0
    assert arith.divisors(12) == [1, 2, 3, 4, 6, 12]


def test_factorize():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 10**9)
        fac = arith.factorize(n)
        prod = 1
        for p, e in fac:
            assert arith.is_prime(p)
            prod *= p**e
        assert prod == n
        assert list(fac) == sorted(fac)
    assert arith.factorize(2**40) == ((2, 40),)
    assert arith.factorize(999999999989) == ((999999999989, 1),)  # prime


def test_is_prime_small():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(2 * i, 2000, i):
                sieve[j] = False
    for n in range(2000):
        assert arith.is_prime(n) == sieve[n], n


def test_squarefree_part():
    for n in range(1, 2000):
        s, f = arith.squarefree_part(n)
        assert s * f * f == n
        assert arith.is_squarefree(s)
