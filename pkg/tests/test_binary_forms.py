import math
from fractions import Fraction

import pytest

from hcn import binary_forms as bf
from hcn.binary_forms import BinaryForm


def test_reduce_examples():
    assert bf.reduce_sl2(BinaryForm(1, 1, 1)) == BinaryForm(1, 1, 1)
    assert bf.reduce_sl2(BinaryForm(11, -89, 181)) == BinaryForm(1, 1, 11)
    assert bf.reduce_sl2(BinaryForm(2, 2, 3)) == BinaryForm(2, 2, 3)
    with pytest.raises(ValueError):
        bf.reduce_sl2(BinaryForm(1, 5, 1))  # indefinite


def test_reduce_lands_in_reduced_domain():
    import random
    rng = random.Random(3)
    for _ in range(300):
        a = rng.randint(1, 30)
        b = rng.randint(-30, 30)
        cmin = (b * b) // (4 * a) + 1
        c = rng.randint(cmin, cmin + 40)
        f = BinaryForm(a, b, c)
        if f.disc >= 0:
            continue
        red = bf.reduce_sl2(f)
        assert red.disc == f.disc
        assert abs(red.b) <= red.a <= red.c
        if abs(red.b) == red.a or red.a == red.c:
            assert red.b >= 0


def test_class_numbers():
    assert bf.class_number_h(-3) == 1
    assert bf.class_number_h(-4) == 1
    assert bf.class_number_h(-23) == 3
    known = {-7: 1, -8: 1, -11: 1, -15: 2, -19: 1, -20: 2, -24: 2,
             -43: 1, -67: 1, -163: 1, -47: 5, -71: 7}
    for d, h in known.items():
        assert bf.class_number_h(d) == h, d
    with pytest.raises(ValueError):
        bf.class_number_h(-6)
    with pytest.raises(ValueError):
        bf.class_number_h(5)


def test_hurwitz_values():
    assert bf.hurwitz_H(0) == Fraction(-1, 12)
    assert bf.hurwitz_H(3) == Fraction(1, 3)
    assert bf.hurwitz_H(4) == Fraction(1, 2)
    assert bf.hurwitz_H(23) == 3
    assert bf.hurwitz_H(1) == 0 and bf.hurwitz_H(2) == 0
    assert bf.hurwitz_H(-8) == 0
    classical = {7: 1, 8: 1, 11: 1, 12: Fraction(4, 3), 15: 2,
                 16: Fraction(3, 2), 19: 1, 20: 2, 24: 2, 27: Fraction(4, 3)}
    for n, v in classical.items():
        assert bf.hurwitz_H(n) == v, n


def test_gamma0_equivalent_basics():
    f = BinaryForm(31, 5, 7)  # disc 25 - 868 < 0
    assert bf.gamma0_equivalent(f, f, 31)
    shear = BinaryForm(31, 5 + 2 * 31, 31 + 5 + 7)  # f o [[1,1],[0,1]]
    assert bf.gamma0_equivalent(f, shear, 31)
    with pytest.raises(ValueError):
        bf.gamma0_equivalent(f, BinaryForm(31, 5, 8), 31)


def test_gamma0_orbits_paper_counts():
    o43 = bf.gamma0_orbits(31, 43)
    o172 = bf.gamma0_orbits(31, 172)
    assert o43.orbit_count == 4
    assert o172.orbit_count == 16
    assert all(s == 2 for _, s in o43.representatives)
    assert all(s == 2 for _, s in o172.representatives)
    assert bf.gamma0_orbits(41, 35).orbit_count == 0
    assert bf.gamma0_orbits(41, 140).orbit_count == 0
    assert bf.gamma0_orbits(31, 35).orbit_count == 0
    assert bf.weighted_orbit_sum(31, 172) == 16
    assert bf.weighted_orbit_sum(31, 43) == 4
    assert bf.weighted_orbit_sum(41, 35) == 0


def test_orbit_representatives_consistency():
    # doubling, membership, direct-stabilizer agreement, pairwise inequivalence
    for p, n in ((3, 195), (3, 200), (5, 84), (7, 75), (13, 111), (3, 36),
                 (3, 3), (5, 75), (3, 108), (11, 47)):
        orbits = bf.gamma0_orbits(p, n)
        pos = [(f, s) for f, s in orbits.representatives if f.a > 0]
        assert orbits.orbit_count == 2 * len(pos)
        for f, s in pos:
            assert f.a % p == 0
            assert f.disc == -n
            assert bf.stabilizer_order(f, p) == s
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                assert not bf.gamma0_equivalent(pos[i][0], pos[j][0], p)


def test_gamma0_equivalence_relation_properties():
    orbits = bf.gamma0_orbits(3, 200)
    pos = [f for f, _ in orbits.representatives if f.a > 0]
    shears = [BinaryForm(f.a, f.b + 2 * f.a, f.a + f.b + f.c) for f in pos]
    sample = pos + shears
    for f in sample:
        assert bf.gamma0_equivalent(f, f, 3)
    for f, g in zip(pos, shears):
        assert bf.gamma0_equivalent(f, g, 3) and bf.gamma0_equivalent(g, f, 3)
    # transitivity on a found-equivalent triple
    f = pos[0]
    g = shears[0]
    h = BinaryForm(g.a, g.b + 2 * g.a, g.a + g.b + g.c)
    assert bf.gamma0_equivalent(f, g, 3)
    assert bf.gamma0_equivalent(g, h, 3)
    assert bf.gamma0_equivalent(f, h, 3)


def _brute_stabilizer(f, p, box=24):
    # independent oracle: scan all integer matrices in a box with
    # al*de - be*ga = 1 and p | ga, and count those fixing f
    count = 0
    for al in range(-box, box + 1):
        for be in range(-box, box + 1):
            for ga in range(-box, box + 1):
                if ga % p:
                    continue
                num = 1 + be * ga
                if al == 0 or num % al:
                    continue
                de = num // al
                if abs(de) > box:
                    continue
                a2 = f(al, ga)
                b2 = (2 * f.a * al * be + f.b * (al * de + be * ga)
                      + 2 * f.c * ga * de)
                c2 = f(be, de)
                if (a2, b2, c2) == (f.a, f.b, f.c):
                    count += 1
    return count


def test_stabilizer_orders():
    # fundamental discriminant below -4: only +-I survive
    assert bf.stabilizer_order(BinaryForm(31, 5, 7), 31) == 2
    # the disc -3 class: full order-6 automorphism group fixes the line at p=3
    assert bf.stabilizer_order(BinaryForm(3, 3, 1), 3) == 6
    assert bf.stabilizer_order(BinaryForm(3, 3, 1), 3) == _brute_stabilizer(
        BinaryForm(3, 3, 1), 3
    )
    # disc -16-type form: order divides 4
    assert bf.stabilizer_order(BinaryForm(4, 4, 5), 2) == _brute_stabilizer(
        BinaryForm(4, 4, 5), 2
    )
    for p, n in ((5, 75), (7, 84)):
        for f, s in bf.gamma0_orbits(p, n).representatives:
            if f.a > 0:
                assert s == _brute_stabilizer(f, p), (p, n, f)


def test_kronecker_hurwitz():
    for n, both in ((1, 2), (4, 14)):
        rep = bf.kronecker_hurwitz_check(n)
        assert rep.passed and rep.lhs == both and rep.rhs == both
    assert bf.kronecker_hurwitz_check(100).passed
    with pytest.raises(ValueError):
        bf.kronecker_hurwitz_check(0)
