import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from brieskorn_wrt import (
    PrecisionContext,
    UnimodularMatrix,
    bernoulli_number,
    bernoulli_polynomial,
    dedekind_sum,
    dedekind_sum_cotangent,
    erfc,
    gauss_reciprocity_sides,
    gauss_sum,
    rademacher_phi,
    sawtooth,
    solve_seifert_q,
    stirling_first,
)


# ---------------------------------------------------------------------- sawtooth


def test_sawtooth_integers_vanish():
    assert sawtooth(3) == 0
    assert sawtooth(Fraction(-7)) == 0


def test_sawtooth_half_and_third():
    assert sawtooth(Fraction(1, 2)) == 0
    assert sawtooth(Fraction(1, 3)) == Fraction(-1, 6)


@given(st.fractions(max_denominator=1000))
def test_sawtooth_is_odd_and_periodic(x):
    assert sawtooth(x + 1) == sawtooth(x)
    assert sawtooth(-x) == -sawtooth(x)


# ------------------------------------------------------------------- dedekind sum


def test_dedekind_small_values():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(-1, 3) == Fraction(-1, 18)
    assert dedekind_sum(7, 1) == 0


def test_dedekind_rejects_zero():
    with pytest.raises(ValueError):
        dedekind_sum(1, 0)


@given(st.integers(-40, 40), st.integers(2, 40))
def test_dedekind_odd_in_first_argument(b, a):
    assert dedekind_sum(-b, a) == -dedekind_sum(b, a)


def test_dedekind_inverse_argument_symmetry():
    # s(b, a) = s(b', a) whenever b b' = 1 mod a
    for a in range(2, 61):
        for b in range(1, a):
            if math.gcd(b, a) != 1:
                continue
            b_inv = pow(b, -1, a)
            if b_inv < b:
                continue
            assert dedekind_sum(b, a) == dedekind_sum(b_inv, a)


def test_dedekind_matches_cotangent_form(ctx50):
    with ctx50.workdps():
        for a in range(2, 40):
            for b in range(1, a):
                if math.gcd(b, a) != 1:
                    continue
                exact = dedekind_sum(b, a)
                numeric = dedekind_sum_cotangent(b, a, ctx50)
                diff = abs(numeric - mp.mpf(exact.numerator) / exact.denominator)
                assert diff < ctx50.tolerance


# ---------------------------------------------------------------- Rademacher Phi


def test_rademacher_examples():
    assert rademacher_phi(UnimodularMatrix(2, 1, 1, 1)) == 3
    assert rademacher_phi(UnimodularMatrix(1, 1, 0, 1)) == 1
    assert rademacher_phi(UnimodularMatrix(-1, -1, 2, 1)) == 0


def test_unimodular_determinant_enforced():
    with pytest.raises(ValueError):
        UnimodularMatrix(2, 1, 2, 1)


def _random_unimodular(rng):
    while True:
        p = rng.randint(-30, 30)
        q = rng.randint(-30, 30)
        if q != 0 and p != 0 and math.gcd(p, q) == 1:
            break
    # solve p*s - q*r = 1
    g, s, neg_r = _egcd(p, q)
    if g < 0:
        g, s, neg_r = -g, -s, -neg_r
    assert g == 1
    r = -neg_r
    shift = rng.randint(-5, 5)  # (r, s) -> (r + shift*p, s + shift*q)
    return UnimodularMatrix(p, r + shift * p, q, s + shift * q)


def _egcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def test_rademacher_s_multiplication_rule():
    # Phi(S U) = Phi(U) - 3 sign(p q) over 200 random determinant-one matrices
    import random

    rng = random.Random(1618)
    checked = 0
    while checked < 200:
        u = _random_unimodular(rng)
        if u.p * u.q == 0:
            continue
        lhs = rademacher_phi(u.left_multiply_s())
        rhs = rademacher_phi(u) - 3 * (1 if u.p * u.q > 0 else -1)
        assert lhs == rhs
        checked += 1


def test_rademacher_branch_equivalence():
    # (p+s)/q - 12 s(p, q) equals (p+s)/q - 12 s(s, q): p s = 1 mod q
    import random

    rng = random.Random(99)
    for _ in range(100):
        u = _random_unimodular(rng)
        if u.q == 0:
            continue
        via_p = Fraction(u.p + u.s, u.q) - 12 * dedekind_sum(u.p, u.q)
        via_s = Fraction(u.p + u.s, u.q) - 12 * dedekind_sum(u.s, u.q)
        assert via_p == via_s == rademacher_phi(u)


# ------------------------------------------------------- Bernoulli and Stirling


def test_bernoulli_polynomial_values():
    assert bernoulli_polynomial(0, Fraction(7, 3)) == 1
    assert bernoulli_polynomial(1, Fraction(2, 5)) == Fraction(-1, 10)
    assert bernoulli_polynomial(3, Fraction(1, 2)) == 0


def test_bernoulli_generating_function():
    # t e^{xt}/(e^t - 1) = sum B_n(x) t^n/n!, checked through t^12 at x = 3/7
    order = 12
    x = Fraction(3, 7)
    # e^{xt} and (e^t - 1)/t as exact truncated series
    exp_x = [x**n / math.factorial(n) for n in range(order + 1)]
    expm1_over_t = [Fraction(1, math.factorial(n + 1)) for n in range(order + 1)]
    # want series W with W * expm1_over_t = exp_x
    w = []
    for n in range(order + 1):
        acc = exp_x[n]
        for j in range(n):
            acc -= w[j] * expm1_over_t[n - j]
        w.append(acc)  # expm1_over_t[0] = 1
    for n in range(order + 1):
        assert w[n] == bernoulli_polynomial(n, x) / math.factorial(n)


def test_stirling_examples():
    assert stirling_first(4, 4) == 1
    assert stirling_first(3, 2) == -3
    assert stirling_first(3, 1) == 2


def test_stirling_out_of_range():
    with pytest.raises(ValueError):
        stirling_first(3, 4)
    with pytest.raises(ValueError):
        stirling_first(3, -1)


@pytest.mark.parametrize("n", range(1, 21))
def test_stirling_polynomial_identity(n):
    # sum_m S_n^(m) x^m = prod_{j<n} (x - j), compared at n+1 sample points
    for i in range(n + 1):
        x = Fraction(2 * i + 1, 3)
        direct = math.prod((x - j) for j in range(n))
        via_coeffs = sum(stirling_first(n, m) * x**m for m in range(n + 1))
        assert direct == via_coeffs


def test_stirling_log_series_identity():
    # (log q)^m / m! = sum_{n>=m} S_n^(m) (q-1)^n / n!, checked through (q-1)^12
    order = 12
    log_u = [Fraction(0)] + [Fraction((-1) ** (j + 1), j) for j in range(1, order + 1)]
    power = [Fraction(1)] + [Fraction(0)] * order
    for m in range(0, 7):
        if m:
            nxt = [Fraction(0)] * (order + 1)
            for i, a in enumerate(power):
                for j, b in enumerate(log_u):
                    if i + j <= order:
                        nxt[i + j] += a * b
            power = nxt
        for n in range(order + 1):
            expected = (
                Fraction(stirling_first(n, m), math.factorial(n))
                if m <= n
                else Fraction(0)
            )
            assert power[n] == expected * math.factorial(m)


# -------------------------------------------------------------------- Gauss sums


def test_gauss_sum_one():
    g = gauss_sum(1)
    assert abs(g - (1 - 1j)) < 1e-45


def test_gauss_sum_closed_form(ctx50):
    with ctx50.workdps():
        target = mp.expjpi(mp.mpf(-0.25))
        for n in range(1, 51):
            residual = abs(gauss_sum(n, ctx50) - mp.sqrt(2 * mp.mpf(n)) * target)
            assert residual < ctx50.tolerance


def test_gauss_reciprocity_example(ctx50):
    left, right = gauss_reciprocity_sides(3, 2, 1, ctx50)
    assert abs(left - right) < ctx50.tolerance


def test_gauss_reciprocity_validation():
    with pytest.raises(ValueError):
        gauss_reciprocity_sides(3, 3, 1)  # n*m odd
    with pytest.raises(ValueError):
        gauss_reciprocity_sides(4, 2, Fraction(1, 3))  # n*k not integral
    with pytest.raises(ValueError):
        gauss_reciprocity_sides(4, 0, 1)


# -------------------------------------------------------------------------- erfc


def test_erfc_endpoints(ctx50):
    assert abs(erfc(0, ctx50) - 1) < ctx50.tolerance
    previous = None
    with ctx50.workdps():
        for x in (1, 2, 4, 8, 16):
            value = erfc(x, ctx50)
            assert value > 0
            if previous is not None:
                assert value < previous
            previous = value
        assert erfc(30, ctx50) < mp.mpf("1e-300")


def test_erfc_against_quadrature(ctx30):
    # independent oracle: 2/sqrt(pi) * integral_x^inf exp(-t^2) dt by quadrature
    with ctx30.workdps():
        for x in (mp.mpf(1), mp.mpf("0.25"), mp.mpf(2)):
            oracle = 2 / mp.sqrt(mp.pi) * mp.quad(lambda t: mp.exp(-t * t), [x, mp.inf])
            assert abs(erfc(x, ctx30) - oracle) < mp.mpf("1e-28")


# -------------------------------------------------------------- surgery integers


def test_seifert_q_defining_constraint():
    for ps in [(2, 3, 5), (2, 3, 7), (3, 4, 5), (2, 5, 7), (5, 7, 9)]:
        q1, q2, q3 = solve_seifert_q(*ps)
        p1, p2, p3 = ps
        assert q1 * p2 * p3 + q2 * p1 * p3 + q3 * p1 * p2 == 1
        assert 0 <= q1 < p1 and 0 <= q2 < p2


def test_seifert_q_canonical_values():
    assert solve_seifert_q(2, 3, 5) == (1, 1, -4)
    # reduction rule puts q1, q2 in range with q3 absorbing the remainder
    assert solve_seifert_q(2, 3, 7) == (1, 2, -8)


def test_bernoulli_numbers_known():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
