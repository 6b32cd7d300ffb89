import math
from fractions import Fraction

import pytest

from hcn import binary_forms, class_numbers as cn
from hcn.arith import disc_split, divisors, factorize, kronecker, moebius, sigma_lns
from hcn.class_numbers import PWParams

F = Fraction


def test_l0_chi():
    assert cn.L0_chi(-3) == F(1, 3)
    assert cn.L0_chi(-4) == F(1, 2)
    assert cn.L0_chi(-23) == 3
    assert cn.L0_chi(-7) == 1
    with pytest.raises(ValueError):
        cn.L0_chi(-12)  # not fundamental
    with pytest.raises(ValueError):
        cn.L0_chi(5)


def test_l_n_value():
    assert cn.l_n_value(1) == F(-1, 12)
    assert cn.l_n_value(5) == F(1, 3)
    assert cn.l_n_value(35) == -2
    with pytest.raises(ValueError):
        cn.l_n_value(9)
    with pytest.raises(ValueError):
        cn.l_n_value(4)


def test_local_factors_worked_example():
    lf = cn.local_factors(5, 3)
    assert (lf.A, lf.B, lf.C, lf.D) == (F(5, 4), F(0), F(2), F(1))


def test_local_factors_split_prime():
    # p not dividing n*D with (D/p) = 1: C=0, D=1, B=2, A=p/(p+1)
    lf = cn.local_factors(13, 3)
    assert kronecker(-3, 13) == 1
    assert (lf.A, lf.B, lf.C, lf.D) == (F(13, 14), F(2), F(0), F(1))


def test_local_factors_at_two():
    lf = cn.local_factors(2, 12)
    # f_2 = 2, D = -3, (-3|2) = -1
    assert lf.C == 2
    assert lf.D == 3 + 1  # sigma(2) - (-1)*sigma(1)
    assert lf.B == F(2 * 2 * 2 - 2 - 1 - (-1) * (2 * 2 - 2 - 1), 1)
    with pytest.raises(ValueError):
        cn.local_factors(5, 6)


def test_local_factor_linear_relations():
    for p in (2, 3, 5, 7, 11, 13, 17):
        for n in range(1, 500):
            if (-n) % 4 not in (0, 1):
                continue
            lf = cn.local_factors(p, n)
            assert lf.B == (p + 1) * (F(2, p) * lf.A + F(1, 1 - p) * lf.C)
            assert lf.A == F(p, 2 * (p + 1)) * lf.B + F(p, 2 * (p - 1)) * lf.C
            assert lf.D == F(p + 1, p) * lf.A + F(1, 1 - p) * lf.C
            assert lf.D == (lf.B + lf.C) / 2


def test_ell_local_factors_reduce_at_one():
    for p in (2, 3, 5, 7):
        for n in (3, 4, 8, 12, 75, 100):
            e = cn.ell_local_factors(p, 1, n)
            lf = cn.local_factors(p, n)
            assert (e.A, e.C, e.D) == (lf.A, lf.C, lf.D)


def test_ell_local_factor_relations():
    # C_p(ell, ell*n) = C_p(n); for p not dividing N, D_p(ell, ell*n) = D_p(n)
    for ell in (3, 5, 7, 15):
        for n in range(1, 501):
            if (-n) % 4 not in (0, 1):
                continue
            for p in (2, 13, 17, 19):
                if ell % p == 0:
                    continue
                e = cn.ell_local_factors(p, ell, ell * n)
                lf = cn.local_factors(p, n)
                assert e.C == lf.C, (ell, n, p)
                assert e.D == lf.D, (ell, n, p)


def test_twisted_split_relations():
    # the change of variables n -> ell*n: D'_{ell, ell n} = D_n,
    # D_{ell, ell n} = eps * ell * D_n / gcd(ell, D_n)^2,
    # and the conductor picks up gcd(ell, D_n)
    for ell in (3, 5, 7, 15, 21, 35):
        eps = -1 if ell % 4 == 3 else 1
        for n in range(1, 400):
            split = disc_split(n)
            if split is None:
                continue
            parts = cn._twisted_splits(ell, ell * n)
            assert parts is not None, (ell, n)
            _, big_d, f, big_d2, f2 = parts
            g = math.gcd(ell, split.D)
            assert big_d2 == split.D, (ell, n)
            assert big_d == eps * ell * split.D // (g * g), (ell, n)
            assert f == g * split.f, (ell, n)


def test_twisted_a_product_relation():
    # prod over p | N/m of A_p(ell, ell n) = gcd(ell, D_n, N/m) * prod A_p(n)
    from fractions import Fraction as FF
    for big_n, ell, m in ((15, 3, 5), (15, 5, 3), (35, 7, 5), (105, 15, 7)):
        co = big_n // m
        for n in range(1, 300):
            split = disc_split(n)
            if split is None:
                continue
            lhs = FF(1)
            rhs = FF(1)
            for p, _ in factorize(co):
                lhs *= cn.ell_local_factors(p, ell, ell * n).A
                rhs *= cn.local_factors(p, n).A
            g = math.gcd(math.gcd(ell, split.D), co)
            assert lhs == g * rhs, (big_n, ell, m, n)


def test_pw_params_validation():
    with pytest.raises(ValueError):
        PWParams(1, 2, 6)  # even N
    with pytest.raises(ValueError):
        PWParams(1, 3, 9)  # not squarefree
    with pytest.raises(ValueError):
        PWParams(3, 5, 5)  # ell does not divide N
    with pytest.raises(ValueError):
        PWParams(1, 7, 5)  # m does not divide N


def test_pw_class_number_examples():
    assert cn.pw_class_number(PWParams(1, 5, 5), 3) == F(2, 3)
    assert cn.pw_class_number(PWParams(1, 7, 7), 0) == F(1, 2)
    assert cn.pw_class_number(PWParams(1, 5, 5), 1) == 0
    assert cn.pw_class_number(PWParams(1, 1, 5), 0) == 0  # m < N at n = 0
    assert cn.pw_class_number(PWParams(1, 1, 1), 23) == 3


def test_pw_local_examples():
    assert cn.pw_class_number_local(PWParams(1, 5, 5), 3) == F(2, 3)
    assert cn.pw_class_number_local(PWParams(1, 1, 1), 23) == 3
    assert cn.pw_class_number_local(PWParams(1, 1, 5), 3) == F(5, 12)
    with pytest.raises(ValueError):
        cn.pw_class_number_local(PWParams(1, 5, 5), 5)  # -5 not a discriminant
    with pytest.raises(ValueError):
        cn.pw_class_number_local(PWParams(5, 5, 5), 3)  # needs ell = 1


def test_lsz_examples():
    assert cn.lsz_class_number(1, 1, 23) == 3
    assert cn.lsz_class_number(5, 1, 0) == F(1, 3)
    assert cn.lsz_class_number(5, 1, 3) == F(2, 3)
    assert cn.lsz_class_number(1, 5, 0) == F(-1, 2)
    assert cn.lsz_class_number(5, 1, 2) == 0  # no admissible conductor
    with pytest.raises(ValueError):
        cn.lsz_class_number(15, 3, 4)  # gcd > 1
    with pytest.raises(ValueError):
        cn.lsz_class_number(9, 1, 4)  # not squarefree
    with pytest.raises(ValueError):
        cn.lsz_class_number(1, 2, 4)  # N2 must be odd


def test_lsz_even_extension():
    # H^(2,1)(4n) carries r_3(n)/12; a couple of hand values
    assert cn.lsz_class_number(2, 1, 4) == F(1, 2)
    assert cn.lsz_class_number(2, 1, 12) == F(2, 3)
    assert cn.lsz_class_number(2, 1, 8) == 1
    with pytest.raises(ValueError):
        cn.lsz_class_number_local(2, 1, 4)  # local route stays odd


def test_lsz_local_examples():
    assert cn.lsz_class_number_local(5, 1, 3) == F(2, 3)
    assert cn.lsz_class_number_local(1, 5, 3) == 0
    assert cn.lsz_class_number_local(1, 1, 23) == 3


def test_hurwitz_local_matches_oracle():
    for n in range(1, 1200):
        if (-n) % 4 in (0, 1):
            assert cn.hurwitz_local(n) == binary_forms.hurwitz_H(n), n


def test_definitional_equals_local_product():
    for big_n in (5, 7, 11, 15, 21, 33, 35, 105):
        for m in divisors(big_n):
            for n in range(1, 1001):
                if (-n) % 4 not in (0, 1):
                    continue
                p = PWParams(1, m, big_n)
                assert cn.pw_class_number(p, n) == cn.pw_class_number_local(p, n)
                assert (cn.lsz_class_number(m, big_n // m, n)
                        == cn.lsz_class_number_local(m, big_n // m, n))


def test_moebius_twisted_divisor_sum_lemma():
    # sum_{d | f, (d,N)=1} mu(d) (D|d) sigma_{m,N,1}(f/d)
    #   = prod_{p | N/m} f_p * prod_{p not | N} D_p(n)
    for big_n in (5, 7, 15, 21, 35, 105):
        for m in divisors(big_n):
            for n in range(1, 1001):
                split = disc_split(n)
                if split is None:
                    continue
                lhs = 0
                for d in divisors(split.f):
                    if math.gcd(d, big_n) != 1 or moebius(d) == 0:
                        continue
                    lhs += (moebius(d) * kronecker(split.D, d)
                            * sigma_lns(m, big_n, 1, split.f // d))
                rhs = F(1)
                for p, _ in factorize(split.f):
                    if (big_n // m) % p == 0:
                        e = 0
                        fp = 1
                        while split.f % (p ** (e + 1)) == 0:
                            e += 1
                            fp *= p
                        rhs *= fp
                    if big_n % p:
                        rhs *= cn.local_factors(p, n).D
                assert lhs == rhs, (big_n, m, n)


def test_constant_terms():
    for big_n in (5, 7, 15, 35, 105):
        assert (cn.pw_class_number(PWParams(1, big_n, big_n), 0)
                == cn.l_n_value(big_n)
                == cn.lsz_class_number(big_n, 1, 0))
