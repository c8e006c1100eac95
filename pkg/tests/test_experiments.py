import math
from fractions import Fraction

import pytest

from freefill.experiments import (
    CSV_COLUMNS,
    Z95,
    DensityRow,
    ball_density,
    bench_linear_membership,
    cross_validate_filling,
    estimate_density,
    exact_ts_prime_sphere_count,
    fit_decay,
    monotone_violations,
    rows_to_csv,
    sphere_count,
    ts_class_census,
    wilson_interval,
)
from freefill.genericity import in_TS_prime
from freefill.words import sphere_size


def row(n, hits, samples=1000):
    lo, hi = wilson_interval(hits, samples)
    return DensityRow("TS'", 2, n, samples, hits, hits / samples, lo, hi, 0)


class TestWilson:
    def test_zero_hits_closed_form(self):
        lo, hi = wilson_interval(0, 10)
        assert lo == 0.0
        assert hi == pytest.approx(Z95**2 / (10 + Z95**2), rel=1e-12)

    def test_symmetry_and_bracketing(self):
        lo, hi = wilson_interval(50, 100)
        assert lo + hi == pytest.approx(1.0)
        for hits in (0, 1, 37, 99, 100):
            lo, hi = wilson_interval(hits, 100)
            assert lo <= hits / 100 <= hi
        assert wilson_interval(0, 0) == (0.0, 1.0)


class TestFit:
    def test_recovers_exponential(self):
        rows = [(n, 1 - math.exp(-0.05 * n)) for n in range(10, 110, 10)]
        fit = fit_decay(rows)
        assert fit.beta == pytest.approx(0.05, abs=1e-6)
        assert fit.alpha == pytest.approx(0.0, abs=1e-6)
        assert fit.r_squared == pytest.approx(1.0)

    def test_constant_density(self):
        fit = fit_decay([(n, 0.5) for n in (10, 20, 30, 40)])
        assert fit.beta == pytest.approx(0.0, abs=1e-12)

    def test_saturated_rows_excluded(self):
        rows = [(n, 1 - math.exp(-0.1 * n)) for n in (5, 10, 15)] + [(200, 1.0), (1, 0.0)]
        fit = fit_decay(rows)
        assert fit.rows_used == 3 and fit.beta == pytest.approx(0.1, abs=1e-9)

    def test_too_few_rows(self):
        with pytest.raises(ValueError):
            fit_decay([(10, 0.5), (20, 1.0), (30, 0.7)][:2])


class TestDensity:
    def test_single_letters_never_in_ts(self):
        assert sphere_count(1, 2, lambda w: in_TS_prime(w, 2)) == 0
        rows = estimate_density("TS'", [1], 100, seed=1)
        assert rows[0].hits == 0

    @pytest.mark.parametrize("n", range(0, 9))
    def test_census_formula_matches_enumeration(self, n):
        census = ts_class_census(8, 2)
        assert exact_ts_prime_sphere_count(n, 2, census) == sphere_count(n, 2, lambda w: in_TS_prime(w, 2))

    def test_census_values(self):
        census = ts_class_census(7, 2)
        assert [census[m] for m in range(6)] == [0] * 6
        assert census[6] > 0

    def test_worker_independence(self):
        a = estimate_density("TS'", [8, 12], 2500, seed=5, workers=1)
        b = estimate_density("TS'", [8, 12], 2500, seed=5, workers=2)
        assert rows_to_csv(a) == rows_to_csv(b)
        assert rows_to_csv(a) == rows_to_csv(estimate_density("TS'", [8, 12], 2500, seed=5))
        assert rows_to_csv(a) != rows_to_csv(estimate_density("TS'", [8, 12], 2500, seed=6))

    def test_csv_header(self):
        text = rows_to_csv([row(10, 500)])
        assert text.splitlines()[0].split(",") == CSV_COLUMNS

    def test_l_eps_monotone_in_epsilon(self):
        lo = estimate_density("L(eps)", [60], 500, epsilon=Fraction(1, 30), seed=2)[0]
        hi = estimate_density("L(eps)", [60], 500, epsilon=Fraction(1, 5), seed=2)[0]
        assert hi.hits >= lo.hits

    def test_input_validation(self):
        with pytest.raises(ValueError):
            estimate_density("TS'", [20, 10], 100)
        with pytest.raises(ValueError):
            estimate_density("TS'", [10], 50)
        with pytest.raises(ValueError):
            estimate_density("nope", [10], 100)

    def test_monotone_violations(self):
        rows = [row(10, 300), row(20, 600), row(30, 400)]
        assert monotone_violations(rows) == [(20, 30)]
        assert monotone_violations(rows[:2]) == []

    def test_ball_density_weights(self):
        rows = [row(1, 0, 100), row(2, 100, 100)]
        expected = Fraction(sphere_size(2, 2), sphere_size(1, 2) + sphere_size(2, 2))
        assert ball_density(rows, 2) == expected


def test_bench_handles_zero_length():
    table = bench_linear_membership([0, 50], reps=3, seed=1)
    assert table.row(0).ns_per_letter == 0.0
    assert 50 in table.ratios and 0 not in table.ratios
    assert "ratio median(100)/median(50)" in table.describe()


def test_cross_validation_small():
    rep = cross_validate_filling(30, 40, 3, seed=3)
    assert rep.ok and rep.ts_samples == 30 and rep.vertex_samples == 30
    rep3 = cross_validate_filling(20, 40, 2, seed=3, rank=3)
    assert rep3.ok
