import math
from fractions import Fraction

import pytest

from hypermatch import binomial_tail_bound, binomial_upper_tail, chernoff_bounds, mcdiarmid_bound

import oracles


def test_chernoff_example_values():
    lower, upper = chernoff_bounds(1.0, 10)
    assert lower.value == pytest.approx(math.exp(-5))
    assert lower.value == pytest.approx(6.7379e-3, rel=1e-4)
    assert upper.value == pytest.approx(math.exp(-10 / 3))
    assert upper.value == pytest.approx(3.5674e-2, rel=1e-4)


def test_chernoff_upper_only_below_three_halves():
    _, upper = chernoff_bounds(0.3, 100)
    assert upper.value == pytest.approx(4.9787e-2, rel=1e-4)
    _, absent = chernoff_bounds(2.0, 10)
    assert absent is None
    _, boundary = chernoff_bounds(1.5, 10)
    assert boundary is None  # the range is strict


def test_chernoff_rejects_bad_deviation():
    with pytest.raises(ValueError):
        chernoff_bounds(0.0, 10)
    with pytest.raises(ValueError):
        chernoff_bounds(-1.0, 10)
    with pytest.raises(ValueError):
        chernoff_bounds(0.5, -1)


def test_chernoff_vacuous_flag():
    lower, upper = chernoff_bounds(0.01, 1)
    assert not lower.vacuous and not upper.vacuous
    assert lower.value < 1.0
    # tiny mean, tiny a: the bound is ~1 but still below it
    lower2, _ = chernoff_bounds(1e-9, 0.0)
    assert lower2.value == 1.0 and not lower2.vacuous


def test_binomial_bound_example_values():
    # (e * 10 * 0.1 / 5)^5 = (e/5)^5 = 4.74922e-2
    assert binomial_tail_bound(10, 0.1, 5).value == pytest.approx((math.e / 5) ** 5)
    assert binomial_tail_bound(10, 0.1, 5).value == pytest.approx(4.7492e-2, rel=1e-4)
    zero = binomial_tail_bound(10, 0.0, 1)
    assert zero.value == 0.0
    assert binomial_upper_tail(10, 0.0, 1) == 0.0


def test_binomial_bound_vacuous_unclamped():
    big = binomial_tail_bound(20, 0.5, 15, self_test=True)
    assert big.vacuous and big.value > 1.0
    exact = oracles.exact_binomial_upper(20, Fraction(1, 2), 15)
    assert float(exact) <= big.value


def test_binomial_bound_rejects_bad_arguments():
    with pytest.raises(ValueError):
        binomial_tail_bound(10, 0.5, 0)
    with pytest.raises(ValueError):
        binomial_tail_bound(-1, 0.5, 2)
    with pytest.raises(ValueError):
        binomial_tail_bound(10, 1.5, 2)


def test_binomial_self_test_grid():
    for trials in (5, 12, 30):
        for tenths in range(1, 10):
            for threshold in range(1, trials + 1):
                binomial_tail_bound(trials, tenths / 10, threshold, self_test=True)


def test_mcdiarmid_example_values():
    assert mcdiarmid_bound(0, 1, 1, 100).value == 2.0
    assert mcdiarmid_bound(0, 1, 1, 100).vacuous
    assert mcdiarmid_bound(40, 1, 1, 100).value == pytest.approx(2 * math.exp(-1))
    assert mcdiarmid_bound(80, 1, 1, 100).value == pytest.approx(2 * math.exp(-4))
    assert mcdiarmid_bound(80, 1, 1, 100).value == pytest.approx(3.6631e-2, rel=1e-4)


def test_mcdiarmid_rejects_bad_arguments():
    with pytest.raises(ValueError):
        mcdiarmid_bound(-1, 1, 1, 100)
    for bad in ((1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)):
        with pytest.raises(ValueError):
            mcdiarmid_bound(*bad)


def test_monotonicity_grids():
    mus = [1, 5, 20]
    for mu in mus:
        lowers = [chernoff_bounds(a / 10, mu)[0].value for a in range(1, 30)]
        assert lowers == sorted(lowers, reverse=True)
        uppers = [chernoff_bounds(a / 10, mu)[1].value for a in range(1, 15)]
        assert uppers == sorted(uppers, reverse=True)
    mcd = [mcdiarmid_bound(t, 1, 1, 50).value for t in range(0, 100, 5)]
    assert mcd == sorted(mcd, reverse=True)


def test_exact_tail_helper_matches_fraction_oracle():
    for trials in (8, 16, 25):
        for tenths in (1, 5, 9):
            q = tenths / 10
            for threshold in range(0, trials + 2):
                exact = oracles.exact_binomial_upper(trials, Fraction(tenths, 10), threshold)
                assert binomial_upper_tail(trials, q, threshold) == pytest.approx(float(exact), abs=1e-12)


def test_chernoff_dominates_hypergeometric_spot_checks():
    # same bounds for hypergeometric X (population N, K successes, n draws)
    cases = [(20, 10, 8), (15, 6, 5), (24, 12, 10)]
    for population, successes, draws in cases:
        pmf = oracles.exact_hypergeometric_pmf(population, successes, draws)
        mu = Fraction(draws * successes, population)
        for tenths in range(1, 15):
            a = tenths / 10
            lower, upper = chernoff_bounds(a, float(mu))
            below = sum((p for j, p in enumerate(pmf) if j < (1 - a) * mu), Fraction(0))
            assert float(below) <= lower.value * (1 + 1e-12)
            if upper is not None:
                above = sum((p for j, p in enumerate(pmf) if j > (1 + a) * mu), Fraction(0))
                assert float(above) <= upper.value * (1 + 1e-12)
