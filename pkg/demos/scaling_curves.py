"""Scaling of the protocol time across the three regimes, with comparisons.

Samples t(r) in continuous-analytic mode, fits the growth exponents, and
tabulates the known light cones and previous-best protocol curves alongside.

  d < alpha < 2d    polylog time: the fitted power-law exponent drains to 0
  alpha = 2d        stretched exponential exp(gamma sqrt(log r)), gamma = 3 sqrt(d)
  2d < alpha <= 2d+1  power law r**(alpha - 2d)
"""
import numpy as np

from ghzlattice import (
    decade_exponents,
    fit_sqrtlog_slope,
    fitted_exponent,
    protocol_time,
    scaling_sweep,
    speedup_report,
    table1_curves,
)

print("== power regime (alpha = 2.5, d = 1): t ~ r**0.5 ==")
rows = scaling_sweep([2.5], 1, [2.0**k for k in range(2, 12)])
print(f"{'r':>8} {'t_protocol':>14} {'t_bound':>14} {'lightcone':>12} {'prev best':>12}")
for row in rows:
    print(f"{row.r:8.0f} {row.t_protocol:14.4f} {row.t_bound:14.4f} "
          f"{row.t_lightcone:12.4f} {row.t_prev_best:12.1f}")
slope = fitted_exponent(2.5, 1, 128, 131072)
print(f"fitted exponent on the tail: {slope:.4f}  (alpha - 2d = 0.5)\n")

print("== stretched regime (alpha = 2d = 2, d = 1) ==")
rs = np.logspace(3, 15, 30)
ts = [protocol_time(2.0, 1, r) for r in rs]
print(f"slope of log t vs sqrt(log r): {fit_sqrtlog_slope(rs, ts):.4f}  (gamma = 3)\n")

print("== polylog regime (alpha = 1.5, d = 1) ==")
exps = decade_exponents(1.5, 1, first_decade=2, n_decades=8)
print("per-decade fitted exponents (10^2..10^10):",
      [round(e, 4) for e in exps])
print("drains toward zero: superpolynomial speedup over the r**0.5 previous best\n")

print("== speedup classification ==")
for alpha in (1.5, 2.0, 2.5):
    rep = speedup_report(alpha, 1, 1e6)
    print(f"alpha={alpha}: {rep['classification']:>16}  "
          f"ratio at r=1e6: {rep['ratio']:.3g}")

print("\n== comparison table at alpha = 2.5, d = 1, r = 4096 ==")
for key, value in table1_curves(2.5, 1, 4096).items():
    print(f"  {key:24s} {value if value is not None else 'not applicable'}")
