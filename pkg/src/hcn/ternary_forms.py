"""Positive definite integral ternary quadratic forms.

Gram matrices, discriminant and level, p-adic anisotropy via exact Hilbert
symbols, class enumeration by reduced-box search, Z-equivalence and
automorphism groups by isometry backtracking, genus contents and theta
series.  All arithmetic is exact; the lattice-point and box-search inner
loops run in ``hcn.kernels``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hcn import kernels
from hcn.arith import factorize, is_squarefree, kronecker, omega
from hcn.qseries import QSeries

__all__ = [
    "GenusContents",
    "GenusDescriptor",
    "TernaryForm",
    "anisotropy_set",
    "aut_order",
    "enumerate_classes",
    "genus_contents",
    "hilbert_symbol",
    "is_anisotropic",
    "is_equivalent",
    "theta_series",
    "weighted_genus_theta",
]

_ENUM_DISC_CAP = 25000
_THETA_PREC_CAP = 10**4
_INT64_SAFE = 1 << 62


@dataclass(frozen=True, order=True)
class TernaryForm:
    """a x^2 + b y^2 + c z^2 + r yz + s xz + t xy."""

    a: int
    b: int
    c: int
    r: int
    s: int
    t: int

    def coeffs(self):
        return (self.a, self.b, self.c, self.r, self.s, self.t)

    def gram(self):
        a, b, c, r, s, t = self.coeffs()
        return ((2 * a, t, s), (t, 2 * b, r), (s, r, 2 * c))

    @property
    def disc(self) -> int:
        a, b, c, r, s, t = self.coeffs()
        return (4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t)

    def is_positive_definite(self) -> bool:
        return self.a > 0 and 4 * self.a * self.b - self.t**2 > 0 and self.disc > 0

    def __call__(self, x: int, y: int, z: int) -> int:
        a, b, c, r, s, t = self.coeffs()
        return (a * x * x + b * y * y + c * z * z
                + r * y * z + s * x * z + t * x * y)

    def to_dict(self):
        return list(self.coeffs())


def discriminant(q: TernaryForm) -> int:
    """det(M_Q)/2 = 4abc + rst - ar^2 - bs^2 - ct^2."""
    _require_pos_def(q)
    return q.disc


def level(q: TernaryForm) -> int:
    """Least N with N * M_Q^(-1) integral and even on the diagonal."""
    _require_pos_def(q)
    g = q.gram()
    adj = _adjugate(g)
    det = 2 * q.disc
    n = 1
    for i in range(3):
        for j in range(3):
            need = 2 * det if i == j else det
            n = _lcm(n, need // math.gcd(adj[i][j], need))
    return n


def _require_pos_def(q: TernaryForm):
    if not q.is_positive_definite():
        raise ValueError(f"{q} is not positive definite")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _adjugate(g):
    def cof(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        m = [[g[r][c] for c in cols] for r in rows]
        sign = -1 if (i + j) % 2 else 1
        return sign * (m[0][0] * m[1][1] - m[0][1] * m[1][0])

    # adjugate = transposed cofactor matrix; Gram is symmetric so adj is too
    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


# ---------------------------------------------------------------------------
# p-adic anisotropy
# ---------------------------------------------------------------------------

def hilbert_symbol(a: int, b: int, p: int) -> int:
    """(a, b)_p for nonzero integers, exact tame/wild formulas."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    alpha, u = _val_unit(a, p)
    beta, v = _val_unit(b, p)
    if p == 2:
        e = ((u - 1) // 2) * ((v - 1) // 2)
        e += alpha * ((v * v - 1) // 8) + beta * ((u * u - 1) // 8)
        return -1 if e % 2 else 1
    out = 1
    if alpha % 2 and beta % 2:
        out *= kronecker(-1, p)
    if beta % 2:
        out *= kronecker(u, p)
    if alpha % 2:
        out *= kronecker(v, p)
    return out


def _val_unit(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _diagonalized(q: TernaryForm):
    """Integers (d1, d2, d3) with Q ~ <d1, d2, d3> over the rationals."""
    m = [[Fraction(v, 2) for v in row] for row in q.gram()]  # Q(v) = v^T (M/2) v
    # symmetric Gaussian elimination; pivots stay positive by definiteness
    diag = []
    for k in range(3):
        pivot = m[k][k]
        diag.append(pivot)
        for i in range(k + 1, 3):
            factor = m[i][k] / pivot
            for j in range(k, 3):
                m[i][j] -= factor * m[k][j]
    out = []
    for d in diag:
        n = d.numerator * d.denominator  # scale by the square denominator^2
        out.append(n)
    return tuple(out)


def is_anisotropic(q: TernaryForm, p: int) -> bool:
    """No nontrivial zero over Q_p: rational diagonalization plus the
    Hasse-invariant criterion (<d1,d2,d3> isotropic iff (-1,-d)_p = eps)."""
    _require_pos_def(q)
    d1, d2, d3 = _diagonalized(q)
    eps = (hilbert_symbol(d1, d2, p) * hilbert_symbol(d1, d3, p)
           * hilbert_symbol(d2, d3, p))
    isotropic = hilbert_symbol(-1, -d1 * d2 * d3, p) == eps
    return not isotropic


def anisotropy_set(q: TernaryForm) -> frozenset:
    """Primes where q is anisotropic (all divide 2*disc)."""
    return frozenset(
        p for p, _ in factorize(2 * q.disc) if is_anisotropic(q, p)
    )


# ---------------------------------------------------------------------------
# theta series
# ---------------------------------------------------------------------------

def _guard_theta_scale(q: TernaryForm, m: int):
    if m > _THETA_PREC_CAP:
        raise ValueError(f"theta truncation {m} beyond cap {_THETA_PREC_CAP}")
    a, b, c, r, s, t = q.coeffs()
    d = q.disc
    a11 = 4 * b * c - r * r
    a22 = 4 * a * c - s * s
    xmax = math.isqrt(m * a11 // d) + 1
    ymax = math.isqrt(m * a22 // d) + 1
    beta = abs(4 * c * t - 2 * r * s) * xmax
    worst = max(
        beta * beta + 4 * a11 * (4 * c * m + (4 * a * c + s * s) * xmax * xmax),
        (abs(r) * ymax + abs(s) * xmax) ** 2
        + 4 * c * (m + a * xmax * xmax + b * ymax * ymax + abs(t) * xmax * ymax),
        m * a11,
    )
    if worst >= _INT64_SAFE:
        raise ValueError(
            f"theta enumeration for {q} at M={m} would overflow int64"
        )


def theta_series(q: TernaryForm, m: int) -> QSeries:
    """Representation numbers R_Q(n) for 0 <= n <= m; R_Q(0) = 1."""
    _require_pos_def(q)
    _guard_theta_scale(q, m)
    counts = kernels.theta_counts(q.coeffs(), m)
    return QSeries(m, {n: int(v) for n, v in enumerate(counts) if v})


# ---------------------------------------------------------------------------
# equivalence and automorphisms
# ---------------------------------------------------------------------------

def _vectors_with_value(q: TernaryForm, value: int):
    """All v in Z^3 with Q(v) = value, via the exact ellipsoid bounds."""
    if value < 0:
        return []
    if value == 0:
        return [(0, 0, 0)]
    out = []
    a, b, c, r, s, t = q.coeffs()
    d = q.disc
    xmax = math.isqrt(value * (4 * b * c - r * r) // d)
    ymax = math.isqrt(value * (4 * a * c - s * s) // d)
    zmax = math.isqrt(value * (4 * a * b - t * t) // d)
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            for z in range(-zmax, zmax + 1):
                if q(x, y, z) == value:
                    out.append((x, y, z))
    return out


def _gram_dot(g, v, w):
    return sum(v[i] * g[i][j] * w[j] for i in range(3) for j in range(3))


def _isometries(q1: TernaryForm, q2: TernaryForm, count_all: bool):
    """M in GL_3(Z) with M M_{q2} M^t = M_{q1}: rows found by backtracking
    over vectors of the right norms and pairwise inner products."""
    g1 = q1.gram()
    g2 = q2.gram()
    cands = [_vectors_with_value(q2, g1[i][i] // 2) for i in range(3)]
    found = 0
    for v1 in cands[0]:
        for v2 in cands[1]:
            if _gram_dot(g2, v1, v2) != g1[0][1]:
                continue
            for v3 in cands[2]:
                if (_gram_dot(g2, v1, v3) == g1[0][2]
                        and _gram_dot(g2, v2, v3) == g1[1][2]):
                    if not count_all:
                        return 1
                    found += 1
    return found


def is_equivalent(q1: TernaryForm, q2: TernaryForm) -> bool:
    """Z-equivalence (GL_3(Z) isometry of the Gram matrices)."""
    _require_pos_def(q1)
    _require_pos_def(q2)
    if q1 == q2:
        return True
    if q1.disc != q2.disc:
        return False
    return _isometries(q1, q2, count_all=False) > 0


@lru_cache(maxsize=None)
def aut_order(q: TernaryForm) -> int:
    """|Aut(Q)| = #{M in GL_3(Z) : M M_Q M^t = M_Q}; always even (-I)."""
    _require_pos_def(q)
    n = _isometries(q, q, count_all=True)
    assert n % 2 == 0 and n > 0
    return n


# ---------------------------------------------------------------------------
# class and genus enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_classes(lvl: int, disc: int, aniso: int | None = None):
    """Z-class representatives with the given level and discriminant.

    Exhaustive reduced-box search (Minkowski-reduced forms satisfy
    0 < a <= b <= c, |t| <= a, |s| <= a, |r| <= b, abc <= disc/2; the
    kernel searches abc <= disc), filtered by level and, optionally, by
    exact anisotropy set, then deduplicated by the isometry test.
    Representatives are the lexicographically least candidates, sorted.
    """
    if disc > _ENUM_DISC_CAP:
        raise ValueError(f"disc {disc} beyond enumeration cap {_ENUM_DISC_CAP}")
    target = None
    if aniso is not None:
        target = frozenset(p for p, _ in factorize(aniso)) if aniso > 1 else frozenset()
    forms = []
    for row in kernels.ternary_candidates(disc):
        f = TernaryForm(*(int(v) for v in row))
        if level(f) != lvl:
            continue
        if target is not None and anisotropy_set(f) != target:
            continue
        forms.append(f)
    forms.sort()
    # bucket by theta head before the expensive pairwise isometry tests
    heads = {}
    for f in forms:
        key = tuple(int(v) for v in kernels.theta_counts(f.coeffs(), 12))
        heads.setdefault(key, []).append(f)
    reps = []
    for group in heads.values():
        group_reps: list[TernaryForm] = []
        for f in group:
            if not any(is_equivalent(f, g) for g in group_reps):
                group_reps.append(f)
        reps.extend(group_reps)
    reps.sort()
    return tuple(reps)


@dataclass(frozen=True)
class GenusDescriptor:
    """Level 4N, discriminant 16N^2, anisotropic exactly at primes | aniso."""

    N: int
    level: int
    disc: int
    aniso: int

    def to_dict(self):
        return {"N": self.N, "level": self.level, "disc": self.disc,
                "aniso": self.aniso}


@dataclass(frozen=True)
class GenusContents:
    descriptor: GenusDescriptor
    classes: tuple  # of (TernaryForm, aut order)

    def mass(self) -> Fraction:
        return sum((Fraction(1, a) for _, a in self.classes), Fraction(0))

    def to_dict(self):
        return {
            "descriptor": self.descriptor.to_dict(),
            "classes": [
                {"form": f.to_dict(), "aut": a} for f, a in self.classes
            ],
        }


@lru_cache(maxsize=None)
def genus_contents(n_level: int, n_aniso: int, q: int | None = None) -> GenusContents:
    """The genus of level-4N forms with discriminant 16N^2, anisotropic
    exactly at the primes dividing n_aniso (which needs an odd number of
    prime factors).

    With ``q`` (a prime dividing both N and gcd with the even-anisotropy
    construction) the genus at the shrunken level 4N/q with discriminant
    16(N/q)^2 is returned instead; this is the resolved reading of the
    two-genus combination, validated against the n = 0 masses.
    """
    if n_level < 1 or n_level % 2 == 0 or not is_squarefree(n_level):
        raise ValueError(f"N={n_level} must be odd squarefree")
    if n_aniso < 1 or n_level % n_aniso:
        raise ValueError(f"anisotropy set {n_aniso} must divide N={n_level}")
    if q is not None:
        if n_level % q or not _is_prime_divisor(q, n_level):
            raise ValueError(f"q={q} must be a prime divisor of N={n_level}")
        if (n_level // q) % n_aniso:
            raise ValueError("anisotropy set must divide the shrunken level")
        return genus_contents(n_level // q, n_aniso)
    if omega(n_aniso) % 2 == 0:
        raise ValueError(
            f"direct genus needs an odd number of anisotropic primes, got {n_aniso}"
        )
    reps = enumerate_classes(4 * n_level, 16 * n_level * n_level, n_aniso)
    classes = tuple((f, aut_order(f)) for f in reps)
    return GenusContents(
        descriptor=GenusDescriptor(
            N=n_level, level=4 * n_level, disc=16 * n_level * n_level,
            aniso=n_aniso,
        ),
        classes=classes,
    )


def _is_prime_divisor(q: int, n: int) -> bool:
    return any(p == q for p, _ in factorize(n))


def weighted_genus_theta(contents: GenusContents, m: int) -> QSeries:
    """sum over the genus classes of theta_Q / |Aut(Q)|."""
    total = QSeries(m)
    for f, aut in contents.classes:
        total = total + theta_series(f, m).scale(Fraction(1, aut))
    return total
