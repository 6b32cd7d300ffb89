"""Hot counting kernels, compiled with numba or vectorized with numpy.

The backend is chosen once at import time from the ``HCN_BACKEND``
environment variable: ``numba`` (the default whenever numba imports) or
``numpy``.  Both backends implement the same kernels and return
identical int64 results:

    hurwitz6_table(limit)   -- 6*H(n) for 0 <= n <= limit (reduced-form count)
    r3_table(limit)         -- r_3(n) for 0 <= n <= limit
    r3_point(n)             -- r_3(n) for a single n
    theta_counts(f, limit)  -- representation numbers of a ternary form
    ternary_candidates(d)   -- reduced ternary forms of discriminant d

Everything here is exact integer arithmetic on int64; the wrapping modules
enforce scale bounds so no intermediate can overflow.  ``benchmarks/``
compares the two backends.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "hurwitz6_table",
    "r3_table",
    "r3_point",
    "theta_counts",
    "ternary_candidates",
    "IMPLS",
]


# ---------------------------------------------------------------------------
# loop implementations (plain Python functions, compiled by numba below)
# ---------------------------------------------------------------------------

def _isqrt_loop(n):
    # exact floor(sqrt(n)) for 0 <= n < 2**62; float seed, integer correction
    if n <= 0:
        return 0
    x = int(math.sqrt(float(n)))
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def _hurwitz6_loop(limit):
    # 6*H(n) by enumerating reduced forms |b| <= a <= c of disc b^2-4ac = -n.
    # Reduced domain counts b and -b separately unless b=0, b=a or a=c.
    table = np.zeros(limit + 1, dtype=np.int64)
    amax = _isqrt_loop(limit // 3) + 1
    for a in range(1, amax + 1):
        for b in range(0, a + 1):
            c = a
            while True:
                n = 4 * a * c - b * b
                if n > limit:
                    break
                if n >= 1:
                    if b == a and c == a:
                        w = 2          # multiples of x^2+xy+y^2: weight 1/3
                    elif b == 0 and c == a:
                        w = 3          # multiples of x^2+y^2: weight 1/2
                    elif b == 0 or b == a or a == c:
                        w = 6
                    else:
                        w = 12         # both signs of b are reduced
                    table[n] += w
                c += 1
    return table


def _r3_table_loop(limit):
    # r_3 via two staged convolutions with the square-counting sequence.
    kmax = _isqrt_loop(limit)
    r2 = np.zeros(limit + 1, dtype=np.int64)
    for i in range(0, kmax + 1):
        wi = 1 if i == 0 else 2
        ii = i * i
        jmax = _isqrt_loop(limit - ii)
        for j in range(0, jmax + 1):
            wj = 1 if j == 0 else 2
            r2[ii + j * j] += wi * wj
    r3 = np.zeros(limit + 1, dtype=np.int64)
    for k in range(0, kmax + 1):
        wk = 1 if k == 0 else 2
        kk = k * k
        for m in range(0, limit + 1 - kk):
            r3[kk + m] += wk * r2[m]
    return r3


def _r3_point_loop(n):
    count = 0
    xmax = _isqrt_loop(n)
    for x in range(0, xmax + 1):
        wx = 1 if x == 0 else 2
        m = n - x * x
        ymax = _isqrt_loop(m)
        for y in range(0, ymax + 1):
            wy = 1 if y == 0 else 2
            t = m - y * y
            z = _isqrt_loop(t)
            if z * z == t:
                wz = 1 if z == 0 else 2
                count += wx * wy * wz
    return count


def _theta_counts_loop(a, b, c, r, s, t, limit):
    # Representation numbers of ax^2+by^2+cz^2+ryz+sxz+txy up to `limit`,
    # by exact integer completion of squares (no floating-point Cholesky):
    #   x^2 * disc <= limit * (4bc - r^2)
    #   (4bc-r^2) y^2 + (4ct-2rs) x y + (4ac-s^2) x^2 - 4c*limit <= 0
    #   c z^2 + (ry+sx) z + (ax^2+by^2+txy) - limit <= 0
    counts = np.zeros(limit + 1, dtype=np.int64)
    disc = 4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t
    a11 = 4 * b * c - r * r
    xmax = _isqrt_loop((limit * a11) // disc)
    for x in range(-xmax, xmax + 1):
        alpha = a11
        beta = (4 * c * t - 2 * r * s) * x
        gamma = (4 * a * c - s * s) * x * x - 4 * c * limit
        delta = beta * beta - 4 * alpha * gamma
        if delta < 0:
            continue
        sd = _isqrt_loop(delta)
        ylo = (-beta - sd) // (2 * alpha)
        yhi = (-beta + sd) // (2 * alpha)
        while alpha * ylo * ylo + beta * ylo + gamma > 0:
            ylo += 1
            if ylo > yhi:
                break
        while alpha * yhi * yhi + beta * yhi + gamma > 0:
            yhi -= 1
            if yhi < ylo:
                break
        for y in range(ylo, yhi + 1):
            bz = r * y + s * x
            cz = a * x * x + b * y * y + t * x * y - limit
            dz = bz * bz - 4 * c * cz
            if dz < 0:
                continue
            sz = _isqrt_loop(dz)
            zlo = (-bz - sz) // (2 * c)
            zhi = (-bz + sz) // (2 * c)
            base = a * x * x + b * y * y + t * x * y
            for z in range(zlo, zhi + 1):
                n = base + c * z * z + r * y * z + s * x * z
                if 0 <= n <= limit:
                    counts[n] += 1
    return counts


def _ternary_candidates_loop(disc):
    # Reduced-box search: 0 < a <= b <= c, |t| <= a, |s| <= a, |r| <= b,
    # abc <= disc (Minkowski-reduced forms satisfy abc <= disc/2; factor-2
    # safety).  c is solved from the discriminant equation
    #   disc = c*(4ab - t^2) + rst - ar^2 - bs^2.
    cap = 1024
    out = np.empty((cap, 6), dtype=np.int64)
    k = 0
    amax = 1
    while (amax + 1) ** 3 <= disc:
        amax += 1
    for a in range(1, amax + 1):
        bmax = _isqrt_loop(disc // a)
        for b in range(a, bmax + 1):
            for t in range(-a, a + 1):
                den = 4 * a * b - t * t
                if den <= 0:
                    continue
                for s in range(-a, a + 1):
                    for r in range(-b, b + 1):
                        num = disc - r * s * t + a * r * r + b * s * s
                        if num <= 0 or num % den != 0:
                            continue
                        c = num // den
                        if c < b or a * b * c > disc:
                            continue
                        if k == cap:
                            cap *= 2
                            grown = np.empty((cap, 6), dtype=np.int64)
                            grown[:k] = out[:k]
                            out = grown
                        out[k, 0] = a
                        out[k, 1] = b
                        out[k, 2] = c
                        out[k, 3] = r
                        out[k, 4] = s
                        out[k, 5] = t
                        k += 1
    return out[:k].copy()


# ---------------------------------------------------------------------------
# numpy backend (vectorized over the innermost ranges)
# ---------------------------------------------------------------------------

def _hurwitz6_numpy(limit):
    table = np.zeros(limit + 1, dtype=np.int64)
    amax = math.isqrt(limit // 3) + 1
    for a in range(1, amax + 1):
        for b in range(0, a + 1):
            n0 = 4 * a * a - b * b          # c = a term
            if n0 <= limit and n0 >= 1:
                table[n0] += 2 if b == a else (3 if b == 0 else 6)
            cmax = (limit + b * b) // (4 * a)
            if cmax <= a:
                continue
            ns = 4 * a * np.arange(a + 1, cmax + 1, dtype=np.int64) - b * b
            ns = ns[(ns >= 1) & (ns <= limit)]
            w = 6 if (b == 0 or b == a) else 12
            np.add.at(table, ns, w)
    return table


def _r3_table_numpy(limit):
    kmax = math.isqrt(limit)
    sq = np.arange(0, kmax + 1, dtype=np.int64) ** 2
    w = np.full(kmax + 1, 2, dtype=np.int64)
    w[0] = 1
    r2 = np.zeros(limit + 1, dtype=np.int64)
    for i in range(0, kmax + 1):
        rest = limit - sq[i]
        jmax = math.isqrt(rest)
        np.add.at(r2, sq[i] + sq[: jmax + 1], w[i] * w[: jmax + 1])
    r3 = np.zeros(limit + 1, dtype=np.int64)
    for k in range(0, kmax + 1):
        kk = int(sq[k])
        r3[kk:] += w[k] * r2[: limit + 1 - kk]
    return r3


def _r3_point_numpy(n):
    r2 = _r2_counts_numpy(n)
    total = int(r2[n])
    for x in range(1, math.isqrt(n) + 1):
        total += 2 * int(r2[n - x * x])
    return total


def _r2_counts_numpy(limit):
    kmax = math.isqrt(limit)
    sq = np.arange(0, kmax + 1, dtype=np.int64) ** 2
    w = np.full(kmax + 1, 2, dtype=np.int64)
    w[0] = 1
    r2 = np.zeros(limit + 1, dtype=np.int64)
    for i in range(0, kmax + 1):
        jmax = math.isqrt(limit - int(sq[i]))
        np.add.at(r2, sq[i] + sq[: jmax + 1], w[i] * w[: jmax + 1])
    return r2


def _theta_counts_numpy(a, b, c, r, s, t, limit):
    counts = np.zeros(limit + 1, dtype=np.int64)
    disc = 4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t
    a11 = 4 * b * c - r * r
    a22 = 4 * a * c - s * s
    xmax = math.isqrt((limit * a11) // disc)
    ymax = math.isqrt((limit * a22) // disc)
    ys = np.arange(-ymax, ymax + 1, dtype=np.int64)
    for x in range(-xmax, xmax + 1):
        # z range from the exact one-variable bound at (x, y)
        bz = r * ys + s * x
        cz = a * x * x + b * ys * ys + t * x * ys - limit
        dz = bz * bz - 4 * c * cz
        keep = dz >= 0
        if not keep.any():
            continue
        yk = ys[keep]
        bzk = bz[keep]
        dzk = dz[keep]
        sz = np.sqrt(dzk.astype(np.float64)).astype(np.int64)
        # exact correction of the float isqrt
        sz = np.where(sz * sz > dzk, sz - 1, sz)
        sz = np.where((sz + 1) * (sz + 1) <= dzk, sz + 1, sz)
        zlo = -(bzk + sz) // (2 * c) - 1
        zhi = (-bzk + sz) // (2 * c) + 1
        width = int((zhi - zlo).max()) + 1
        zoff = np.arange(width, dtype=np.int64)
        zz = zlo[:, None] + zoff[None, :]
        base = a * x * x + b * yk * yk + t * x * yk
        nvals = (base[:, None] + c * zz * zz + r * yk[:, None] * zz
                 + s * x * zz)
        good = (zz <= zhi[:, None]) & (nvals >= 0) & (nvals <= limit)
        np.add.at(counts, nvals[good], 1)
    return counts


def _ternary_candidates_numpy(disc):
    rows = []
    amax = 1
    while (amax + 1) ** 3 <= disc:
        amax += 1
    for a in range(1, amax + 1):
        bmax = math.isqrt(disc // a)
        for b in range(a, bmax + 1):
            tt, ss, rr = np.meshgrid(
                np.arange(-a, a + 1, dtype=np.int64),
                np.arange(-a, a + 1, dtype=np.int64),
                np.arange(-b, b + 1, dtype=np.int64),
                indexing="ij",
            )
            den = 4 * a * b - tt * tt
            num = disc - rr * ss * tt + a * rr * rr + b * ss * ss
            ok = (den > 0) & (num > 0) & (num % np.where(den > 0, den, 1) == 0)
            cc = np.where(ok, num // np.where(den > 0, den, 1), 0)
            ok &= (cc >= b) & (a * b * cc <= disc)
            if not ok.any():
                continue
            cs = cc[ok]
            rs_ = rr[ok]
            ssel = ss[ok]
            tsel = tt[ok]
            block = np.empty((cs.size, 6), dtype=np.int64)
            block[:, 0] = a
            block[:, 1] = b
            block[:, 2] = cs
            block[:, 3] = rs_
            block[:, 4] = ssel
            block[:, 5] = tsel
            rows.append(block)
    if not rows:
        return np.empty((0, 6), dtype=np.int64)
    return np.concatenate(rows, axis=0)


_NUMPY_IMPL = {
    "hurwitz6_table": _hurwitz6_numpy,
    "r3_table": _r3_table_numpy,
    "r3_point": _r3_point_numpy,
    "theta_counts": _theta_counts_numpy,
    "ternary_candidates": _ternary_candidates_numpy,
}


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

def _build_numba_impl():
    # rebinds _isqrt_loop to its compiled form so the other kernels, whose
    # globals are resolved lazily at first call, link against it
    global _isqrt_loop
    from numba import njit

    _isqrt_loop = njit(cache=True)(_isqrt_loop)
    return {
        "hurwitz6_table": njit(cache=True)(_hurwitz6_loop),
        "r3_table": njit(cache=True)(_r3_table_loop),
        "r3_point": njit(cache=True)(_r3_point_loop),
        "theta_counts": njit(cache=True)(_theta_counts_loop),
        "ternary_candidates": njit(cache=True)(_ternary_candidates_loop),
    }


_requested = os.environ.get("HCN_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"HCN_BACKEND={_requested!r} not understood (use 'numba' or 'numpy')"
    )

_NUMBA_IMPL = None
if _requested in ("", "numba"):
    try:
        _NUMBA_IMPL = _build_numba_impl()
    except ImportError:
        if _requested == "numba":
            raise RuntimeError("HCN_BACKEND=numba but numba is not importable")

if _NUMBA_IMPL is not None:
    BACKEND = "numba"
    _ACTIVE = _NUMBA_IMPL
else:
    BACKEND = "numpy"
    _ACTIVE = _NUMPY_IMPL

IMPLS = {"numpy": _NUMPY_IMPL}
if _NUMBA_IMPL is not None:
    IMPLS["numba"] = _NUMBA_IMPL


def hurwitz6_table(limit):
    """int64 table of 6*H(n), 0 <= n <= limit (H(0) excluded: entry is 0)."""
    return _ACTIVE["hurwitz6_table"](limit)


def r3_table(limit):
    """int64 table of r_3(n) = #{x^2+y^2+z^2 = n}, 0 <= n <= limit."""
    return _ACTIVE["r3_table"](limit)


def r3_point(n):
    """r_3(n) for a single n."""
    return int(_ACTIVE["r3_point"](n))


def theta_counts(coeffs, limit):
    """Representation counts of the positive definite ternary form.

    ``coeffs`` is the sextuple (a, b, c, r, s, t) of
    a x^2 + b y^2 + c z^2 + r yz + s xz + t xy.
    """
    a, b, c, r, s, t = (int(v) for v in coeffs)
    return _ACTIVE["theta_counts"](a, b, c, r, s, t, int(limit))


def ternary_candidates(disc):
    """All reduced-box positive definite ternary forms of discriminant disc.

    Returns an int64 array of rows (a, b, c, r, s, t); every equivalence
    class of that discriminant is represented at least once.
    """
    return _ACTIVE["ternary_candidates"](int(disc))
