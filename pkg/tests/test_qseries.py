from fractions import Fraction

import pytest

from hcn import qseries as qs
from hcn.qseries import QSeries

F = Fraction


def test_ring_operations():
    a = QSeries(2, {0: 1, 1: 1})
    b = QSeries(2, {0: 1, 1: -1})
    assert (a * b).items() == [(0, F(1)), (2, F(-1))]
    assert (a + b).items() == [(0, F(2))]
    assert (a - a).items() == []
    assert a.scale(0) == QSeries(2)
    th = qs.unary_theta(50)
    assert th.scale(1) == th


def test_truncation_semantics():
    a = QSeries(10, {0: 1, 10: 5})
    b = QSeries(4, {0: 1})
    assert (a * b).truncation == 4
    assert (a + b).truncation == 4
    with pytest.raises(ValueError):
        a.coeff(11)
    with pytest.raises(ValueError):
        QSeries(3, {5: 1})


def test_theta_cube_is_r3():
    th = qs.unary_theta(500)
    cube = th * th * th
    assert cube == qs.r3_series(500)
    assert cube.coeff(43) == 24


def test_r3_values():
    assert qs.r3(0) == 1
    assert qs.r3(35) == 48
    assert qs.r3(43 * 31 * 31) == 744
    assert qs.r3(41 * 41 * 35) == 2064
    with pytest.raises(ValueError):
        qs.r3(-1)


def test_u4():
    assert qs.u4(QSeries(4, {0: 1, 4: 1})).items() == [(0, F(1)), (1, F(1))]
    cube = qs.r3_series(64)
    assert qs.u4(cube).coeff(1) == qs.r3(4) == 6
    one = QSeries(8, {0: 1})
    assert qs.u4(one) == QSeries(2, {0: 1})
    # linearity: u4 commutes with scaling
    s = qs.unary_theta(80)
    assert qs.u4(s.scale(F(3, 7))) == qs.u4(s).scale(F(3, 7))


def test_unary_theta():
    th = qs.unary_theta(20)
    assert th.coeff(0) == 1 and th.coeff(1) == 2 and th.coeff(2) == 0
    assert qs.unary_theta_scaled(11, 20).coeff(11) == 2


def test_eta_prefactor():
    e = qs.eta_product([(2, 1), (22, 1)], 20)
    assert e.coeff(0) == 0 and e.coeff(1) == 1  # prefactor q^(24/24)
    assert qs.eta_product([], 10) == QSeries(10, {0: 1})
    assert qs.eta_product([(2, 0), (3, 0)], 10) == QSeries(10, {0: 1})


def test_eta_newform_level11():
    # eta(tau)^2 eta(11 tau)^2, the weight-2 level-11 newform
    nf = qs.eta_product([(1, 2), (11, 2)], 12)
    got = {n: int(v) for n, v in nf.items()}
    assert got == {1: 1, 2: -2, 3: -1, 4: 2, 5: 1, 6: 2, 7: -2, 9: -2,
                   10: -2, 11: 1, 12: -2}


def test_eta_fractional_power_rejected():
    with pytest.raises(ValueError):
        qs.eta_product([(2, 2), (11, 2)], 10)  # sum d*e = 26
    with pytest.raises(ValueError):
        qs.eta_product([(24, -1)], 10)  # pole at q = 0


def test_eta_inverse_exponents():
    # eta quotient with zero net prefactor: eta(12)^2 / eta(24)
    a = qs.eta_product([(12, 2), (24, -1)], 40)
    b = qs.eta_product([(24, 1), (12, -2)], 40)
    assert a * b == QSeries(40, {0: 1})
    assert a.coeff(0) == 1


def test_cusp_form_f_printed_coefficients():
    m_in = 224
    full = qs.u4(qs.unary_theta_scaled(11, m_in)
                 * qs.eta_product([(2, 1), (22, 1)], m_in))
    f = full.scale(F(1, 2))
    printed = {3: 1, 4: -1, 11: -1, 12: -1, 15: 1, 16: 2, 20: 1, 23: -1,
               27: -1, 31: -1, 44: 1, 55: 1}
    for n in range(56):
        assert f.coeff(n) == printed.get(n, 0), n


def test_json_round_trip():
    th = qs.unary_theta(30).scale(F(5, 6))
    data = th.to_dict()
    back = QSeries.from_dict(data)
    assert back == th
    assert data["coeffs"][0] == [0, "5/6"]


def test_inverse():
    s = QSeries(20, {0: 2, 1: 3, 7: F(1, 5)})
    assert s * s.inverse() == QSeries(20, {0: 1})
    with pytest.raises(ValueError):
        QSeries(5, {1: 1}).inverse()
