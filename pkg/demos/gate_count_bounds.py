"""Gate-count bounds for digital simulation of power-law systems.

Past the threshold time t*, simulating n sites needs Omega(n) elementary
gates (otherwise one could undercut the GHZ preparation cost).  The best
known Trotter upper bound at t = t* is n**2 (alpha <= 2d) or n**(alpha/d)
(above), leaving a polynomial gap.
"""
from ghzlattice import gate_bound_table, t_star

print("alpha = 2.5, d = 1  (t* = n**0.5, upper = n**2.5)")
print(f"{'n':>10} {'t*':>12} {'lower':>12} {'upper':>14} {'gap':>10}")
for row in gate_bound_table(2.5, 1, [10**2, 10**3, 10**4, 10**5]):
    print(f"{row['n']:10.0f} {row['t_star']:12.4f} {row['lower']:12.0f} "
          f"{row['upper']:14.4g} {row['gap_factor']:10.4g}")

print("\nalpha = 1.5, d = 1  (t* polylog, upper = n**2)")
print(f"{'n':>10} {'t*':>12} {'lower':>12} {'upper':>14} {'gap':>10}")
for row in gate_bound_table(1.5, 1, [10**2, 10**4, 10**6]):
    print(f"{row['n']:10.0f} {row['t_star']:12.4f} {row['lower']:12.0f} "
          f"{row['upper']:14.4g} {row['gap_factor']:10.4g}")

print("\nthreshold times across regimes at n = 10**6:")
for alpha, d in [(1.5, 1), (2.0, 1), (2.5, 1), (3.0, 1)]:
    print(f"  alpha={alpha}, d={d}: t* = {t_star(alpha, d, 10**6):.4f}")
