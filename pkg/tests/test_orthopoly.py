"""Three-term recurrences, Motzkin/J-fraction moments, orthogonality, limits."""

from fractions import Fraction

import pytest

from qtmoments.orthopoly import (
    InsufficientMoments,
    binomial,
    charlier_strict,
    charlier_strict_specialized,
    charlier_t_gauge,
    check_charlier_fock_identity,
    check_orthogonality,
    ejsmont,
    hankel_determinants,
    jfraction_series,
    moment_by_motzkin,
    moment_functional,
    moments_by_motzkin,
    poisson_limit_check,
    three_term_polys,
)
from qtmoments.partitions import NestingMode, moment_by_partitions
from qtmoments.qtnum import qt_number
from qtmoments.ring import LAMBDA, Poly, Q, T, X

from oracles import (
    bell_numbers,
    catalan_numbers,
    classical_binomial_moments,
    tridiagonal_moment,
)


def test_first_charlier_polynomials_match_printed_forms():
    seq = three_term_polys(charlier_strict(), 3)
    assert seq.polys[0] == Poly.one()
    assert seq.polys[1] == X - LAMBDA
    assert seq.polys[2] == X**2 - (2 * LAMBDA + 1) * X + LAMBDA**2
    expected_c3 = (
        X**3
        - (3 * LAMBDA + T + Q + 1) * X**2
        + (3 * LAMBDA**2 + (T + Q) * (LAMBDA + 1) + LAMBDA) * X
        - LAMBDA**3
    )
    assert seq.polys[3] == expected_c3


def test_polynomials_are_monic_and_satisfy_recurrence():
    j = charlier_strict()
    seq = three_term_polys(j, 8).polys
    for k, p in enumerate(seq):
        assert p.coefficient_of("x", k) == Poly.one()
        assert p.degree("x") == k
    for n in range(1, 8):
        lhs = seq[n + 1]
        rhs = (X - j.alpha(n)) * seq[n] - j.omega(n) * seq[n - 1]
        assert lhs == rhs


def test_ejsmont_recurrence():
    seq = three_term_polys(ejsmont(), 3).polys
    assert seq[1] == X
    assert seq[2] == X**2 - X - 1  # alpha_1 = omega_1 = [1] = 1
    # (x - [n]) P_n = P_{n+1} + [n] P_{n-1}
    j = ejsmont()
    for n in range(1, 3):
        assert (X - j.alpha(n)) * seq[n] == seq[n + 1] + j.omega(n) * seq[n - 1]


def test_motzkin_moments_basic():
    j = charlier_strict()
    assert moment_by_motzkin(j, 0) == Poly.one()
    assert moment_by_motzkin(j, 1) == LAMBDA
    assert moment_by_motzkin(j, 2) == LAMBDA**2 + LAMBDA


def test_motzkin_matches_tridiagonal_power_oracle():
    for preset in (charlier_strict, charlier_t_gauge, ejsmont):
        j = preset()
        for n in range(7):
            assert moment_by_motzkin(j, n) == tridiagonal_moment(j.alpha, j.omega, n)


def test_motzkin_matches_partition_sum():
    assert moment_by_motzkin(charlier_strict(), 4) == moment_by_partitions(
        4, NestingMode.STRICT
    )
    assert moment_by_motzkin(charlier_t_gauge(), 4) == moment_by_partitions(
        4, NestingMode.COVERED_SINGLETON
    )


def test_moment_functional_values():
    j = charlier_strict()
    moments = moments_by_motzkin(j, 8)
    seq = three_term_polys(j, 2).polys
    assert moment_functional(seq[1], moments) == Poly.zero()
    assert moment_functional(seq[2] * seq[2], moments) == LAMBDA**2 * (T + Q)
    assert moment_functional(seq[2] * seq[1], moments) == Poly.zero()


def test_moment_functional_requires_enough_moments():
    with pytest.raises(InsufficientMoments):
        moment_functional(X**3, [Poly.one(), LAMBDA])


def test_orthogonality_both_pairings():
    strict = charlier_strict()
    report = check_orthogonality(strict, 6, moments_by_motzkin(strict, 12))
    assert report.passed, report.failures[:3]

    tgauge = charlier_t_gauge()
    report = check_orthogonality(tgauge, 6, moments_by_motzkin(tgauge, 12))
    assert report.passed, report.failures[:3]


def test_orthogonality_norm_is_omega_product():
    j = charlier_strict()
    moments = moments_by_motzkin(j, 12)
    seq = three_term_polys(j, 6).polys
    for n in range(1, 7):
        norm = Poly.one()
        for i in range(1, n + 1):
            norm = norm * (LAMBDA * qt_number(i))
        assert moment_functional(seq[n] * seq[n], moments) == norm


def test_mismatched_pairing_fails_at_one_two():
    strict = charlier_strict()
    wrong_moments = moments_by_motzkin(charlier_t_gauge(), 4)
    report = check_orthogonality(strict, 2, wrong_moments)
    assert not report.passed
    assert any("L(P_1 P_2)" in msg for msg in report.failures)
    # the discrepancy is exactly (t - 1) lambda^2
    seq = three_term_polys(strict, 2).polys
    value = moment_functional(seq[1] * seq[2], wrong_moments)
    assert value == (T - 1) * LAMBDA**2


def test_charlier_fock_identity():
    report = check_charlier_fock_identity(8)
    assert report.passed, report.failures[:3]


def test_q_charlier_specialization_at_t_equal_one():
    # at t = 1 the Jacobi data must collapse to the q-number forms
    j = charlier_strict()
    for n in range(8):
        q_num = qt_number(n).substitute("t", 1)
        assert j.alpha(n).substitute("t", 1) == LAMBDA + q_num
        if n >= 1:
            assert j.omega(n).substitute("t", 1) == LAMBDA * q_num
    # and the moments, symbolically in q and lambda
    for n in range(7):
        lhs = moment_by_motzkin(j, n).substitute("t", 1)
        rhs = tridiagonal_moment(
            lambda k: LAMBDA + qt_number(k).substitute("t", 1),
            lambda k: LAMBDA * qt_number(k).substitute("t", 1),
            n,
        )
        assert lhs == rhs


def test_free_and_classical_specializations():
    cat = catalan_numbers(8)
    bell = bell_numbers(8)
    j = charlier_strict_specialized(Fraction(1), Fraction(0), Fraction(1))
    free = moments_by_motzkin(j, 8)
    assert free == [Fraction(c) for c in cat[:9]]
    j = charlier_strict_specialized(Fraction(1), Fraction(1), Fraction(1))
    classical = moments_by_motzkin(j, 8)
    assert classical == [Fraction(b) for b in bell[:9]]


def test_binomial_preset_values():
    q, t = Fraction(1, 3), Fraction(2, 3)
    j = binomial(Fraction(10), Fraction(1, 10), q, t)
    assert j.alpha(0) == 1  # m p
    one = qt_number(1).eval({"q": q, "t": t})
    assert j.omega(1) == one * 10 * Fraction(1, 10) * Fraction(9, 10)


def test_binomial_clamp_gives_finite_support():
    # q = t = 1 collapses to the classical binomial: [n] = n, and the clamp
    # coincides with the natural zero of omega at n = m + 1
    m, p = 3, Fraction(1, 4)
    j = binomial(Fraction(m), p, Fraction(1), Fraction(1))
    assert j.omega(m) != 0
    assert j.omega(m + 1) == 0
    assert j.omega(m + 2) == 0  # clamped; unclamped it would go negative
    moments = moments_by_motzkin(j, 8)
    assert moments == classical_binomial_moments(m, p, 8)
    # finite support of size <= m+1 forces a vanishing Hankel determinant
    hankel = hankel_determinants(moments, m + 1)
    assert all(h > 0 for h in hankel[: m + 1])
    assert hankel[m + 1] == 0


def test_binomial_clamp_at_deformed_sample():
    # with q = 1/2, t = 1 and m = [2] the clamp bites from n = 3 on
    q, t = Fraction(1, 2), Fraction(1)
    m = qt_number(2).eval({"q": q, "t": t})
    j = binomial(m, Fraction(1, 5), q, t)
    assert j.omega(2) != 0
    assert j.omega(3) == 0
    moments = moments_by_motzkin(j, 6)
    hankel = hankel_determinants(moments, 3)
    assert hankel[3] == 0


def test_poisson_limit_check():
    report = poisson_limit_check(6, Fraction(1), [10, 100, 1000])
    assert report.symbolic.passed, report.symbolic.failures[:3]
    assert report.numeric_ok
    assert report.passed
    # deviations visibly shrink about linearly in 1/m
    for order in (2, 3, 4):
        devs = [d for _m, d in report.deviations[order]]
        assert devs[0] > devs[1] > devs[2] > 0


def test_poisson_limit_rational_lambda():
    report = poisson_limit_check(4, Fraction(3, 2), [10, 100, 1000])
    assert report.passed


def test_poisson_limit_rejects_small_m():
    with pytest.raises(ValueError):
        poisson_limit_check(4, Fraction(12), [10, 100])


def test_jfraction_series_basics():
    j = charlier_strict()
    assert jfraction_series(j, 0) == [Poly.one()]
    assert jfraction_series(j, 2) == [Poly.one(), LAMBDA, LAMBDA**2 + LAMBDA]


def test_jfraction_matches_motzkin_for_all_presets():
    for preset in (charlier_strict, charlier_t_gauge, ejsmont):
        j = preset()
        series = jfraction_series(j, 12)
        moments = moments_by_motzkin(j, 12)
        assert series == moments


def test_jfraction_rational_data():
    j = binomial(Fraction(10), Fraction(1, 10), Fraction(1, 3), Fraction(2, 3))
    assert jfraction_series(j, 8) == moments_by_motzkin(j, 8)


def test_hankel_positivity_samples():
    samples = [
        (Fraction(1, 3), Fraction(2, 3), Fraction(1)),
        (Fraction(-1, 4), Fraction(1, 2), Fraction(2)),
        (Fraction(0), Fraction(1), Fraction(1)),
    ]
    for q, t, lam in samples:
        j = charlier_strict_specialized(lam, q, t)
        hankel = hankel_determinants(moments_by_motzkin(j, 10), 5)
        assert all(h > 0 for h in hankel), (q, t, lam)
