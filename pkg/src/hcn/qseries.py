"""Truncated q-series over exact rationals.

A series is a sparse coefficient map together with a truncation order M;
arithmetic never reads beyond the smaller truncation of its operands.
Includes r_3, the unary theta function, Dedekind eta products (with the
q^(sum d_i e_i / 24) prefactor bookkeeping) and the U_4 operator.
"""

from __future__ import annotations

from fractions import Fraction

from hcn import kernels
from hcn.arith import rational_str

__all__ = [
    "QSeries",
    "eta_product",
    "r3",
    "r3_series",
    "u4",
    "unary_theta",
    "unary_theta_scaled",
]

_R3_SERIES_CAP = 10**6
_R3_POINT_CAP = 10**8


class QSeries:
    """Power series in q with Fraction coefficients, truncated at order M."""

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation: int, coeffs=None):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        self.truncation = truncation
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for n, v in dict(coeffs).items():
                v = Fraction(v)
                if v:
                    if not 0 <= n <= truncation:
                        raise ValueError(f"coefficient index {n} out of range")
                    self.coeffs[n] = v

    @classmethod
    def constant(cls, value, truncation: int) -> "QSeries":
        return cls(truncation, {0: Fraction(value)})

    def coeff(self, n: int) -> Fraction:
        if n > self.truncation:
            raise ValueError(f"coefficient {n} beyond truncation {self.truncation}")
        return self.coeffs.get(n, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.truncation, tuple(sorted(self.coeffs.items()))))

    def agrees_with(self, other: "QSeries", through: int | None = None) -> bool:
        """Coefficient-wise equality up to the common truncation."""
        m = min(self.truncation, other.truncation)
        if through is not None:
            if through > m:
                raise ValueError("comparison beyond common truncation")
            m = through
        return all(self.coeff(n) == other.coeff(n) for n in range(m + 1))

    def __add__(self, other):
        if isinstance(other, QSeries):
            m = min(self.truncation, other.truncation)
            out = {}
            for n in range(m + 1):
                v = self.coeffs.get(n, 0) + other.coeffs.get(n, 0)
                if v:
                    out[n] = v
            return QSeries(m, out)
        return self + QSeries.constant(other, self.truncation)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.truncation, {n: -v for n, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self + (-other)
        return self + QSeries.constant(-Fraction(other), self.truncation)

    def __rsub__(self, other):
        return QSeries.constant(other, self.truncation) - self

    def scale(self, factor) -> "QSeries":
        factor = Fraction(factor)
        if not factor:
            return QSeries(self.truncation)
        return QSeries(
            self.truncation, {n: factor * v for n, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        if isinstance(other, QSeries):
            m = min(self.truncation, other.truncation)
            out: dict[int, Fraction] = {}
            for i, vi in self.coeffs.items():
                if i > m:
                    continue
                for j, vj in other.coeffs.items():
                    n = i + j
                    if n > m:
                        continue
                    out[n] = out.get(n, Fraction(0)) + vi * vj
            return QSeries(m, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QSeries.constant(1, self.truncation)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be nonzero."""
        c0 = self.coeffs.get(0, Fraction(0))
        if not c0:
            raise ValueError("series with zero constant term has no inverse")
        inv = {0: 1 / c0}
        for n in range(1, self.truncation + 1):
            acc = Fraction(0)
            for k, v in self.coeffs.items():
                if 1 <= k <= n:
                    acc += v * inv.get(n - k, Fraction(0))
            if acc:
                inv[n] = -acc / c0
        return QSeries(self.truncation, inv)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0); truncation is unchanged."""
        if k < 0:
            raise ValueError("only nonnegative shifts")
        return QSeries(
            self.truncation,
            {n + k: v for n, v in self.coeffs.items() if n + k <= self.truncation},
        )

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        head = " + ".join(f"{rational_str(v)}*q^{n}" for n, v in self.items()[:8])
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"QSeries(M={self.truncation}: {head or '0'}{more})"

    def to_dict(self) -> dict:
        return {
            "truncation": self.truncation,
            "coeffs": [[n, rational_str(v)] for n, v in self.items()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QSeries":
        coeffs = {int(n) : Fraction(v) for n, v in data["coeffs"]}
        return cls(int(data["truncation"]), coeffs)


def r3(n: int) -> int:
    """Number of representations of n as x^2 + y^2 + z^2, by direct counting."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > _R3_POINT_CAP:
        raise ValueError(f"r3 point evaluation capped at {_R3_POINT_CAP}")
    return kernels.r3_point(n)


def r3_series(m: int) -> QSeries:
    """Generating series of r_3 through q^m."""
    if m > _R3_SERIES_CAP:
        raise ValueError(f"r3 series capped at {_R3_SERIES_CAP}")
    table = kernels.r3_table(m)
    return QSeries(m, {n: int(v) for n, v in enumerate(table) if v})


def unary_theta(m: int) -> QSeries:
    """theta(tau) = sum_{n in Z} q^(n^2), through q^m."""
    return unary_theta_scaled(1, m)


def unary_theta_scaled(d: int, m: int) -> QSeries:
    """sum_{n in Z} q^(d n^2), through q^m."""
    coeffs = {0: Fraction(1)}
    k = 1
    while d * k * k <= m:
        coeffs[d * k * k] = Fraction(2)
        k += 1
    return QSeries(m, coeffs)


def _euler_factor(d: int, m: int) -> QSeries:
    """prod_{k>=1} (1 - q^(dk)) via the pentagonal number expansion."""
    coeffs = {0: Fraction(1)}
    j = 1
    while True:
        e1 = d * j * (3 * j - 1) // 2
        e2 = d * j * (3 * j + 1) // 2
        if e1 > m and e2 > m:
            break
        sign = -1 if j % 2 else 1
        if e1 <= m:
            coeffs[e1] = Fraction(sign)
        if e2 <= m:
            coeffs[e2] = Fraction(sign)
        j += 1
    return QSeries(m, coeffs)


def eta_product(factors, m: int) -> QSeries:
    """prod_i eta(d_i tau)^(e_i) through q^m.

    The prefactor exponent sum(d_i e_i)/24 must be a nonnegative integer;
    fractional powers of q are not representable here and a genuine pole
    would not be a power series.
    """
    factors = [(int(d), int(e)) for d, e in factors]
    if any(d <= 0 for d, _ in factors):
        raise ValueError("eta arguments must be positive multiples of tau")
    pre = sum(d * e for d, e in factors)
    if pre % 24:
        raise ValueError(
            f"sum d*e = {pre} is not divisible by 24; fractional q-power unsupported"
        )
    shift_by = pre // 24
    if shift_by < 0:
        raise ValueError("eta product with a pole at q=0 is not a power series")
    series = QSeries.constant(1, m)
    for d, e in factors:
        if e == 0:
            continue
        series = series * _euler_factor(d, m) ** e
    return series.shift(shift_by)


def u4(series: QSeries) -> QSeries:
    """Coefficient extraction a(n) -> a(4n); truncation M -> floor(M/4)."""
    m = series.truncation // 4
    return QSeries(
        m, {n: series.coeffs[4 * n] for n in range(m + 1) if 4 * n in series.coeffs}
    )
