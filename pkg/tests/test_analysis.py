import io
import math

import numpy as np
import pytest

from ghzlattice.analysis import (
    decade_exponents,
    fit_loglog_slope,
    fit_sqrtlog_slope,
    fitted_exponent,
    gate_bound_table,
    scaling_sweep,
    speedup_crossover,
    speedup_report,
    write_gate_bound_csv,
    write_scaling_csv,
)
from ghzlattice.errors import UnreachableTargetError, UnsupportedRegimeError
from ghzlattice.scheduler import plan, protocol_time, table1_curves


class TestScalingSweep:
    def test_power_tail_slope(self):
        rows = scaling_sweep([2.5], 1, [2.0**k for k in range(2, 11)])
        tail = [row for row in rows if row.r >= 128]
        slope = fit_loglog_slope([r.r for r in tail], [r.t_protocol for r in tail])
        assert abs(slope - 0.5) <= 0.05

    def test_row_fields(self):
        rows = scaling_sweep([2.5], 1, [20, 24])
        by_r = {row.r: row for row in rows}
        assert by_r[20.0].mode == "integer-exact"  # 20 = 2 * 10 is reachable
        assert by_r[20.0].certified
        assert by_r[24.0].mode == "continuous-analytic"
        assert not by_r[24.0].certified
        for row in rows:
            assert row.regime == "power"
            assert row.t_protocol <= row.t_bound * (1 + 1e-9)
            assert row.t_lightcone is not None and row.t_prev_best is not None

    def test_base_rows(self):
        rows = scaling_sweep([1.5, 2.5], 1, [2])
        for row in rows:
            p = plan(row.alpha, 1, 2)
            assert row.t_protocol == p.params.t_base

    def test_alpha_at_2dp1_has_no_table_columns(self):
        rows = scaling_sweep([3.0], 1, [8])
        assert rows[0].t_prev_best is None and rows[0].t_lightcone is None
        assert rows[0].t_protocol > 0

    def test_polylog_ratio_decay(self):
        # t(r) / r**eps falls toward zero for every sampled eps > 0
        for eps in (0.1, 0.05):
            ratios = [
                protocol_time(1.5, 1, r) / r**eps for r in (1e50, 1e150, 1e300)
            ]
            assert ratios[0] > ratios[1] > ratios[2]
            assert ratios[2] < 1.0

    def test_integer_exact_mode_raises_on_unreachable(self):
        with pytest.raises(UnreachableTargetError):
            scaling_sweep([2.5], 1, [24], mode="integer-exact")

    def test_csv_emission(self):
        rows = scaling_sweep([2.5], 1, [20, 24])
        buf = io.StringIO()
        write_scaling_csv(rows, buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0].startswith("alpha,d,r,")
        assert len(lines) == 3


class TestExponentFits:
    @pytest.mark.parametrize("alpha", [2.2, 2.5, 2.8])
    def test_power_exponent(self, alpha):
        slope = fitted_exponent(alpha, 1, 128, 131072, n_points=24)
        assert abs(slope - (alpha - 2)) <= 0.05

    def test_stretched_sqrtlog_slope(self):
        rs = np.logspace(3, 15, 40)
        ts = [protocol_time(2.0, 1, r) for r in rs]
        slope = fit_sqrtlog_slope(rs, ts)
        assert abs(slope - 3.0) <= 0.3  # within 10% of gamma = 3*sqrt(1)

    def test_polylog_decades_decreasing(self):
        exps = decade_exponents(1.5, 1, 2, 8)
        assert all(b < a for a, b in zip(exps, exps[1:]))
        assert exps[-1] < 0.2


class TestSpeedupReport:
    def test_power_polynomial(self):
        report = speedup_report(2.5, 1, 1e8)
        assert report["classification"] == "polynomial"
        assert report["prev_best_exponent"] == 1.0
        for exp in report["window_exponents"]:
            assert exp == pytest.approx(0.5, abs=0.02)
        assert report["ratio"] == pytest.approx(
            1e8 / protocol_time(2.5, 1, 1e8), rel=1e-12
        )

    def test_polylog_superpolynomial(self):
        report = speedup_report(1.5, 1, 1e6)
        assert report["classification"] == "superpolynomial"
        exps = report["window_exponents"]
        assert all(b < a for a, b in zip(exps, exps[1:]))
        assert all(b > a for a, b in zip(report["window_ratios"],
                                         report["window_ratios"][1:]))

    def test_stretched_superpolynomial(self):
        assert speedup_report(2.0, 1, 1e6)["classification"] == "superpolynomial"

    def test_r1_convention(self):
        assert speedup_report(2.5, 1, 1)["ratio"] == 1.0

    def test_domain(self):
        with pytest.raises(UnsupportedRegimeError):
            speedup_report(3.0, 1, 100)

    def test_crossover_grid(self):
        # ratio stays >= 1 beyond the reported crossover on a 0.1 alpha grid
        for alpha in [round(1.1 + 0.1 * k, 1) for k in range(19)]:
            r_star = speedup_crossover(alpha, 1)
            assert r_star is not None, alpha
            for factor in (1.0, 1e3, 1e6):
                r = r_star * factor
                ratio = table1_curves(alpha, 1, r)["encode_prev_best"] / \
                    protocol_time(alpha, 1, r)
                assert ratio >= 1.0 - 1e-9, (alpha, r)

    def test_crossover_d2_spots(self):
        for alpha in (2.2, 3.0, 4.0, 4.4):
            r_star = speedup_crossover(alpha, 2)
            assert r_star is not None, alpha
            ratio = table1_curves(alpha, 2, 10 * r_star)["encode_prev_best"] / \
                protocol_time(alpha, 2, 10 * r_star)
            assert ratio >= 1.0 - 1e-9, alpha


class TestGateBoundTable:
    def test_power_row(self):
        row = gate_bound_table(2.5, 1, [10**4])[0]
        assert row["t_star"] == pytest.approx(100.0, rel=1e-12)
        assert row["lower"] == 10**4
        assert row["upper"] == pytest.approx(1e10, rel=1e-12)
        assert row["gap_factor"] == pytest.approx(1e6, rel=1e-12)

    def test_polylog_row(self):
        row = gate_bound_table(1.5, 1, [math.e])[0]
        assert row["upper"] == pytest.approx(math.e**2, rel=1e-12)
        assert row["lower"] == pytest.approx(math.e, rel=1e-15)

    def test_unit_row(self):
        row = gate_bound_table(1.5, 1, [1])[0]
        assert row["t_star"] == 0.0
        assert row["lower"] == 1.0 and row["upper"] == 1.0

    def test_csv(self):
        buf = io.StringIO()
        write_gate_bound_csv(gate_bound_table(2.5, 1, [10, 100]), buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "n,t_star,lower,upper,gap_factor"
        assert len(lines) == 3
