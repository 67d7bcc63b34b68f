"""Multiprecision evaluator: single series, double sums, Witten sums,
harmonic sums, oracles and the error-bound contract."""
import numpy as np
import pytest
from mpmath import mp, mpf

from mzv.errors import DomainError
from mzv.numerics import (
    CHAR_IDS,
    EvalContext,
    L_num,
    brute_force_oracle,
    char_dzeta_num,
    char_product,
    dzeta_num,
    generator_num,
    harmonic_sum_num,
    periodic_tail_num,
    witten_num,
    zeta_num,
)


def tol(ctx, k=1):
    return mpf(10) ** (-ctx.prec) * k


# ---------------------------------------------------------------------------
# single series
# ---------------------------------------------------------------------------


def test_zeta_closed_forms(ctx40):
    with mp.workdps(60):
        assert abs(zeta_num(2, ctx40) - mp.pi**2 / 6) < tol(ctx40)
        assert abs(zeta_num(4, ctx40) - mp.pi**4 / 90) < tol(ctx40)


def test_zeta3_brute_force(ctx40):
    # truncated oracle with integral tail bound: sum_{n<=1e6} n^-3 + tail in [0, N^-2/2]
    n = np.arange(1, 10**6 + 1, dtype=np.float64)
    partial = float(np.sum(n**-3.0))
    bound = 0.5 * 1e-12 + 3e-10  # tail + float roundoff allowance
    with mp.workdps(60):
        assert abs(zeta_num(3, ctx40) - partial) < bound


def test_zeta_domain(ctx40):
    with pytest.raises(DomainError):
        zeta_num(1, ctx40)


def test_L_values(ctx40):
    with mp.workdps(60):
        assert abs(L_num("2a", 4, ctx40) - (1 - mpf(2) ** -4) * zeta_num(4, ctx40)) < tol(ctx40, 2)
        assert abs(L_num("m4", 1, ctx40) - mp.pi / 4) < tol(ctx40)
        assert abs(L_num("2b", 1, ctx40) - mp.log(2)) < tol(ctx40)
        assert abs(L_num("2b", 2, ctx40) - mp.pi**2 / 12) < tol(ctx40)
    with pytest.raises(DomainError):
        L_num("2a", 1, ctx40)


def test_periodic_tail_partitions_zeta(ctx40):
    with mp.workdps(60):
        for s, N in ((2, 10), (5, 37)):
            head = sum(mpf(n) ** -s for n in range(1, N + 1))
            assert abs(head + periodic_tail_num("1", s, N, ctx40) - zeta_num(s, ctx40)) < tol(ctx40, 2)


def test_periodic_tail_alternating_brute(ctx40):
    # sum_{10 < n <= 1e7} (-1)^(n-1)/n^2 compared within the alternating tail bound
    n = np.arange(11, 10**7 + 1, dtype=np.float64)
    signs = np.where(n % 2 == 1, 1.0, -1.0)
    brute = float(np.sum(signs * n**-2.0))
    alt_bound = (1e7) ** -2.0 + 1e-11  # first omitted term + roundoff allowance
    with mp.workdps(60):
        assert abs(periodic_tail_num("2b", 2, 10, ctx40) - brute) < alt_bound


def test_periodic_tail_full_series_is_beta(ctx40):
    with mp.workdps(60):
        assert abs(periodic_tail_num("m4", 3, 0, ctx40) - L_num("m4", 3, ctx40)) < tol(ctx40, 2)


# ---------------------------------------------------------------------------
# double sums
# ---------------------------------------------------------------------------


def test_dzeta_examples(ctx40):
    with mp.workdps(60):
        assert abs(dzeta_num(2, 1, ctx40) - zeta_num(3, ctx40)) < tol(ctx40, 2)
        assert abs(dzeta_num(2, 2, ctx40) - mp.pi**4 / 120) < tol(ctx40)
        want = 3 * zeta_num(2, ctx40) * zeta_num(3, ctx40) - mpf(11) / 2 * zeta_num(5, ctx40)
        assert abs(dzeta_num(3, 2, ctx40) - want) < tol(ctx40, 4)


def test_dzeta_brute_force_low_precision(ctx40):
    value, bound = brute_force_oracle("dzeta", (3, 2), 10**5)
    with mp.workdps(60):
        assert abs(dzeta_num(3, 2, ctx40) - value) < bound


def test_dzeta_domain(ctx40):
    with pytest.raises(DomainError):
        dzeta_num(1, 1, ctx40)
    with pytest.raises(DomainError):
        dzeta_num(2, 0, ctx40)


def test_char_dzeta_small_values(ctx40):
    with mp.workdps(60):
        z3 = zeta_num(3, ctx40)
        assert abs(char_dzeta_num("2b", "1", 2, 1, ctx40) + z3 / 8) < tol(ctx40, 2)
        want = mp.pi**2 * mp.log(2) / 4 - z3
        assert abs(char_dzeta_num("1", "2b", 2, 1, ctx40) - want) < tol(ctx40, 2)
        assert abs(
            char_dzeta_num("2b", "2b", 2, 2, ctx40) + mpf(3) / 16 * zeta_num(4, ctx40)
        ) < tol(ctx40, 2)


def test_char_dzeta_specializes_to_dzeta(ctx40):
    with mp.workdps(60):
        for a, b in ((2, 2), (3, 2), (4, 3)):
            assert abs(char_dzeta_num("1", "1", a, b, ctx40) - dzeta_num(a, b, ctx40)) < tol(ctx40, 2)


def test_char_dzeta_domain(ctx40):
    with pytest.raises(DomainError):
        char_dzeta_num("1", "1", 1, 2, ctx40)  # outer s=1 needs a mean-zero character
    with pytest.raises(DomainError):
        char_dzeta_num("2a", "1", 1, 2, ctx40)


def test_reflection_formula_sweep(ctx40):
    # [p,q](s,t) + [q,p](t,s) = L_p(s) L_q(t) - L_pq(s+t), all 16 pairs, 2<=s,t<=5
    with mp.workdps(60):
        for p in CHAR_IDS:
            for q in CHAR_IDS:
                pq = char_product(p, q)
                for s in range(2, 6):
                    for t in range(2, 6):
                        lhs = char_dzeta_num(p, q, s, t, ctx40) + char_dzeta_num(q, p, t, s, ctx40)
                        rhs = L_num(p, s, ctx40) * L_num(q, t, ctx40) - L_num(pq, s + t, ctx40)
                        assert abs(lhs - rhs) < 4 * tol(ctx40), (p, q, s, t)


def test_char_oracle_agreement(ctx40):
    value, bound = brute_force_oracle("char_dzeta", ("2b", "2b", 2, 2), 10**4)
    with mp.workdps(60):
        want = -mpf(3) / 16 * zeta_num(4, ctx40)
        assert abs(want - value) < bound


# ---------------------------------------------------------------------------
# Witten sums
# ---------------------------------------------------------------------------


def test_witten_boundaries(ctx40):
    with mp.workdps(60):
        assert abs(witten_num(3, 2, 0, ctx40) - zeta_num(3, ctx40) * zeta_num(2, ctx40)) < tol(ctx40, 2)
        assert abs(witten_num(0, 2, 3, ctx40) - dzeta_num(3, 2, ctx40)) < tol(ctx40, 2)
        assert abs(witten_num(1, 1, 1, ctx40) - 2 * zeta_num(3, ctx40)) < tol(ctx40, 2)


def test_witten_recursion_and_symmetry(ctx40):
    with mp.workdps(60):
        triples = [
            (r, s, t)
            for r in range(0, 4)
            for s in range(0, 4)
            for t in range(1, 5)
            if r + s + t <= 8 and r + t >= 2 and s + t >= 2 and r + s + t >= 3
        ]
        for r, s, t in triples:
            assert abs(witten_num(r, s, t, ctx40) - witten_num(s, r, t, ctx40)) < 2 * tol(ctx40)
            if r >= 1 and s >= 1:
                rec = witten_num(r - 1, s, t + 1, ctx40) + witten_num(r, s - 1, t + 1, ctx40)
                assert abs(witten_num(r, s, t, ctx40) - rec) < 4 * tol(ctx40), (r, s, t)


def test_witten_oracle(ctx40):
    value, bound = brute_force_oracle("witten", (1, 1, 2), 10**4)
    with mp.workdps(60):
        assert abs(witten_num(1, 1, 2, ctx40) - value) < bound


def test_witten_domain(ctx40):
    with pytest.raises(DomainError):
        witten_num(1, 2, 0, ctx40)
    with pytest.raises(DomainError):
        witten_num(0, 0, 2, ctx40)


# ---------------------------------------------------------------------------
# harmonic sums
# ---------------------------------------------------------------------------


def test_harmonic_sum_known_closed_forms(ctx40):
    with mp.workdps(60):
        z3, z5 = zeta_num(3, ctx40), zeta_num(5, ctx40)
        ln2, pi = mp.log(2), +mp.pi
        want = (372 * z5 - 21 * pi**2 * z3 - 2 * pi**4 * ln2) / 96
        assert abs(harmonic_sum_num("odd_denom", 4, ctx40) - want) < tol(ctx40, 4)
        want = (pi**6 - 294 * z3**2 - 744 * ln2 * z5) / 384
        assert abs(harmonic_sum_num("odd_denom", 5, ctx40) - want) < tol(ctx40, 4)
        want = mpf(37) / 4 * z5 - mpf(2) / 3 * pi**2 * z3
        assert abs(harmonic_sum_num("half_index", 2, ctx40) - want) < tol(ctx40, 4)


def test_harmonic_sum_brute_force(ctx40):
    for kind, s in (("odd_denom", 4), ("half_index", 2)):
        value, bound = brute_force_oracle("harmonic", (kind, s), 10**5)
        with mp.workdps(60):
            assert abs(harmonic_sum_num(kind, s, ctx40) - value) < bound, (kind, s)


# ---------------------------------------------------------------------------
# generators, determinism, telescoping lemmas
# ---------------------------------------------------------------------------


def test_generators(ctx40):
    with mp.workdps(60):
        # Li4(1/2) against a directly truncated series with geometric tail bound
        acc = mp.zero
        for n in range(1, 200):
            acc += mpf(2) ** -n / mpf(n) ** 4
        geom_bound = mpf(2) ** -199
        assert abs(generator_num("li4h", ctx40) - acc) < geom_bound + tol(ctx40)
        assert abs(generator_num("pi", ctx40) - mp.sqrt(6 * zeta_num(2, ctx40))) < tol(ctx40, 2)
        assert abs(generator_num("log2", ctx40) - L_num("2b", 1, ctx40)) < tol(ctx40, 2)


def test_determinism(ctx40):
    import mzv.numerics as numerics

    a = char_dzeta_num("2b", "2a", 3, 2, ctx40)
    b = char_dzeta_num("2b", "2a", 3, 2, ctx40)
    assert a == b
    numerics.clear_caches()
    c = char_dzeta_num("2b", "2a", 3, 2, ctx40)
    assert a == c  # bit-identical after recomputation


def test_telescoping_lemma():
    # partial sums of sum_{m != n} 1/(m^2-n^2) approach 3/(4n^2) at rate O(1/M)
    M = 10**5
    m = np.arange(1, M + 1, dtype=np.float64)
    for n in (1, 2, 5):
        mask = m != n
        partial = float(np.sum(1.0 / (m[mask] ** 2 - n**2)))
        assert abs(partial - 3.0 / (4 * n * n)) < 10.0 / M, n


def test_alternating_telescoping_lemma():
    # sum_{m != n} (-1)^m/(m^2-n^2) = (2+(-1)^n)/(4n^2)
    M = 10**6
    m = np.arange(1, M + 1, dtype=np.float64)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    for n in (1, 2, 5):
        mask = m != n
        partial = float(np.sum(signs[mask] / (m[mask] ** 2 - n**2)))
        want = (2.0 + (-1.0) ** n) / (4 * n * n)
        assert abs(partial - want) < 10.0 / M, n


def test_oracle_randomized_agreement(ctx30):
    import random

    rng = random.Random(20260809)
    with mp.workdps(50):
        for _ in range(6):
            a, b = rng.randint(2, 5), rng.randint(2, 4)
            value, bound = brute_force_oracle("dzeta", (a, b), 10**4)
            assert abs(dzeta_num(a, b, ctx30) - value) < bound + tol(ctx30)
        for _ in range(6):
            p, q = rng.choice(CHAR_IDS), rng.choice(CHAR_IDS)
            s, t = rng.randint(2, 4), rng.randint(2, 4)
            value, bound = brute_force_oracle("char_dzeta", (p, q, s, t), 10**4)
            assert abs(char_dzeta_num(p, q, s, t, ctx30) - value) < bound + tol(ctx30)


def test_eval_context_validation():
    with pytest.raises(DomainError):
        EvalContext(5)
