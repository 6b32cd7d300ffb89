"""Parameter grids for the smoke and desk verification suites.

The desk suite is the machine-checkable content of the acceptance
criteria; the smoke suite is a fast subset.  Both are driven by
``hcn.relations.verify_range`` and shared between the CLI and the tests.
"""

from __future__ import annotations

import math

from hcn.arith import divisors, is_prime, is_squarefree, omega

__all__ = ["desk_suite", "run_suite", "smoke_suite"]


def _discs(limit, start=1):
    return [n for n in range(start, limit + 1) if (-n) % 4 in (0, 1)]


def _n03(limit):
    return [n for n in range(1, limit + 1) if n % 4 in (0, 3)]


def _odd_squarefree(limit):
    return [n for n in range(1, limit + 1, 2) if is_squarefree(n)]


def _coprime_pairs(limit):
    vals = _odd_squarefree(limit)
    return [(a, b) for a in vals for b in vals if math.gcd(a, b) == 1]


def _pw_grid(n_values, n_by_level):
    grid = []
    for big_n in n_values:
        cap = n_by_level(big_n)
        for m in divisors(big_n):
            grid.extend({"N": big_n, "m": m, "n": n} for n in range(cap + 1))
    return grid


def _ape3_grid(n_values, n_by_level):
    grid = []
    for big_n in n_values:
        cap = n_by_level(big_n)
        for ell in (d for d in divisors(big_n) if d > 1):
            for m in divisors(big_n):
                grid.extend(
                    {"N": big_n, "ell": ell, "m": m, "n": n}
                    for n in range(cap + 1)
                )
    return grid


def smoke_suite():
    """Fast spot checks across every identity; about a minute."""
    suite = []
    suite.append(("hurwitz_oracle_vs_local",
                  [{"n": n} for n in _discs(300)], None))
    suite.append(("local_factor_relations",
                  [{"p": p, "n": n} for p in (2, 3, 5, 7, 11, 13)
                   for n in _discs(150)], None))
    suite.append(("kronecker_hurwitz", [{"n": n} for n in range(1, 61)], None))
    suite.append(("gauss_three_squares", [{"n": n} for n in range(0, 61)], None))
    suite.append(("r3_is_lsz", [{"n": n} for n in range(0, 61)], None))
    suite.append(("pw_to_lsz", _pw_grid((5, 7, 15), lambda n: 50), None))
    suite.append(("lsz_to_pw", _pw_grid((5, 7, 15), lambda n: 50), None))
    suite.append(("classical_to_pw",
                  [{"N": N, "n": n} for N in (5, 15) for n in range(0, 51)], None))
    suite.append(("classical_to_lsz",
                  [{"N": N, "n": n} for N in (5, 15) for n in range(0, 51)], None))
    suite.append(("ape3", _ape3_grid((15,), lambda n: 25), None))
    suite.append(("nontrivial_char", _ape3_grid((15,), lambda n: 25), None))
    suite.append(("lsz_shift_lemma",
                  [{"N1": a, "N2": b, "q": q, "n": n}
                   for (a, b, q) in ((15, 1, 3), (15, 1, 5), (21, 1, 7), (15, 7, 3))
                   for n in range(0, 41)], None))
    suite.append(("gauss_general",
                  [{"N1": a, "N2": b, "p": p, "n": n, "variant": var}
                   for (a, b) in ((1, 1), (3, 1), (1, 3), (5, 3), (7, 5))
                   for p in (2, 3, 5)
                   for var in ("p2n", "n")
                   for n in range(0, 31)
                   if math.gcd(p, a * b) == 1
                   and (var == "p2n" or p != 2 or (n > 0 and (-n) % 4 in (0, 1)))],
                  None))
    suite.append(("cor_4_9",
                  [{"p": p, "N2": b, "n": n}
                   for p in (3, 5) for b in (1, 7, 11)
                   for n in range(0, 26) if math.gcd(b, 2 * p) == 1], None))
    suite.append(("bm4",
                  [{"p": p, "n": n} for p in (3, 5) for n in _n03(40)], None))
    suite.append(("main4",
                  [{"p": 31, "n": 43}, {"p": 41, "n": 35}]
                  + [{"p": p, "n": n} for p in (3, 5) for n in (3, 4, 7, 8, 11, 12)],
                  None))
    suite.append(("lz_genus_theta",
                  [{"N": 5, "aniso": 5}, {"N": 7, "aniso": 7},
                   {"N": 11, "aniso": 11}], 30))
    suite.append(("even_genus",
                  [{"N": 15, "Neven": 15, "q": 3},
                   {"N": 15, "Neven": 15, "q": 5}], 30))
    suite.append(("main_theta",
                  [{"N": 5, "m": 5}, {"N": 7, "m": 7}, {"N": 11, "m": 11}], 30))
    suite.append(("cusp_p11", [{}], 48))
    suite.append(("basis_dimension", [{"N": N} for N in (5, 7, 15)], 60))
    return suite


def desk_suite():
    """The acceptance-criteria grids; well under half an hour."""
    levels7 = (5, 7, 11, 15, 21, 33, 35, 105)
    cap7 = lambda n: 200 if n == 105 else 500  # noqa: E731
    pairs = _coprime_pairs(35)
    suite = []
    # criteria 1-2: the worked examples of the level-p Gauss analogue
    suite.append(("main4", [{"p": 41, "n": 35}, {"p": 31, "n": 43}], None))
    # criterion 3: the N=5 and N=7 single-class genus examples
    suite.append(("main_theta", [{"N": 5, "m": 5}, {"N": 7, "m": 7}], 19))
    # criterion 4: the p=11 cusp form example
    suite.append(("cusp_p11", [{}], 48))
    # criterion 5: oracle vs local product, and the class number relation
    suite.append(("hurwitz_oracle_vs_local", [{"n": n} for n in _discs(2000)], None))
    suite.append(("kronecker_hurwitz", [{"n": n} for n in range(1, 501)], None))
    # criterion 6: the four linear local-factor relations
    suite.append(("local_factor_relations",
                  [{"p": p, "n": n} for p in range(2, 51) if is_prime(p)
                   for n in _discs(2000)], None))
    # criterion 7: the class-number transition theorems
    suite.append(("pw_to_lsz", _pw_grid(levels7, cap7), None))
    suite.append(("lsz_to_pw", _pw_grid(levels7, cap7), None))
    suite.append(("classical_to_pw",
                  [{"N": N, "n": n} for N in levels7 for n in range(0, cap7(N) + 1)],
                  None))
    suite.append(("classical_to_lsz",
                  [{"N": N, "n": n} for N in levels7 for n in range(0, cap7(N) + 1)],
                  None))
    suite.append(("ape3", _ape3_grid(levels7, cap7), None))
    suite.append(("nontrivial_char",
                  _ape3_grid((15, 21, 35), lambda n: 100), None))
    # criterion 8: genus enumeration against the Eisenstein coefficients
    suite.append(("lz_genus_theta",
                  [{"N": N, "aniso": a} for N in (5, 7, 11, 15, 21, 35)
                   for a in divisors(N) if a > 1 and omega(a) % 2 == 1], 50))
    suite.append(("even_genus",
                  [{"N": N, "Neven": N, "q": q} for N in (15, 21, 35)
                   for q in divisors(N) if is_prime(q)], 50))
    # criterion 9: both q choices at N = m = 35
    suite.append(("main_theta",
                  [{"N": 35, "m": 35, "q": 5}, {"N": 35, "m": 35, "q": 7}]
                  + [{"N": 35, "m": m} for m in (5, 7)], 50))
    # criterion 10: the Gauss-formula generalizations
    suite.append(("gauss_general",
                  [{"N1": a, "N2": b, "p": p, "n": n, "variant": var}
                   for (a, b) in pairs
                   for p in (3, 5, 7, 11, 13)
                   for var in ("p2n", "n")
                   for n in range(0, 301)
                   if math.gcd(p, a * b) == 1], None))
    suite.append(("cor_4_9",
                  [{"p": p, "N2": b, "n": n}
                   for p in (3, 5, 7, 11, 13)
                   for b in _odd_squarefree(35)
                   for n in range(0, 301) if math.gcd(b, 2 * p) == 1], None))
    suite.append(("r3_is_lsz", [{"n": n} for n in range(0, 1001)], None))
    suite.append(("gauss_three_squares", [{"n": n} for n in range(0, 1001)], None))
    # criterion 11: the orbit-weighted class number relation
    suite.append(("bm4",
                  [{"p": p, "n": n} for p in (3, 5, 7, 11, 13)
                   for n in _n03(200)], None))
    # criterion 12: dimension, rank and triangular change of basis
    suite.append(("basis_dimension",
                  [{"N": N} for N in (5, 7, 11, 15, 35, 105)], 100))
    return suite


def run_suite(suite, progress=None, early_exit=False):
    """Run (identity, grid, truncation) blocks; returns (summaries, all_ok)."""
    from hcn.relations import verify_range

    summaries = []
    all_ok = True
    for identity, grid, truncation in suite:
        reports, summary = verify_range(identity, grid, truncation,
                                        early_exit=early_exit)
        summary["truncation"] = truncation
        failures = [r for r in reports if not r.passed]
        if failures:
            all_ok = False
            summary["first_failure"] = failures[0].to_dict()
        summaries.append(summary)
        if progress is not None:
            status = "ok" if summary["all_passed"] else "FAIL"
            progress(f"{identity}: {summary['passed']}/{summary['total']} {status}")
        if failures and early_exit:
            break
    return summaries, all_ok
