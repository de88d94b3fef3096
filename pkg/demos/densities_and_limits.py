"""
Where densities and rectangles disagree
=======================================

Prefix attachment has rectangle integrals that match the ratio kernel
min(x,y)/max(x,y), yet its triangle density tends to 1/6, not 5/36.  The
true limit is a 0-1 kernel on the unit square.
"""
import math

import numpy as np

from graphlimits import (Seed, builtin_kernel, expected_tinj_pag, grow_pag, grow_prefix, limit_tinj_pag,
                         rect_integral, t_density, t_hom_multi, t_inj, t_kernel_mc, t_kernel_quad)

ratio = builtin_kernel("prefix-ratio")
print("t(K3, ratio kernel) by quadrature:", round(t_kernel_quad("K3", ratio, grid=128), 5), "vs 5/36 =",
      round(5 / 36, 5))
est, se = t_kernel_mc("K3", builtin_kernel("prefix-limit"), samples=10**6, seed=Seed(1))
print(f"t(K3, prefix limit) by Monte Carlo: {est:.5f} +- {se:.5f} vs 1/6 = {1 / 6:.5f}")

for n in (100, 400, 1600):
    g, _ = grow_prefix(n, Seed(n))
    rect = rect_integral(g, ratio, (0, 0.5), (0, 0.5), grid=512)
    print(f"n={n:5d}  t(K3, G_n) = {t_density('K3', g):.4f}  rectangle [0,1/2]^2 gap = {rect:+.4f}")

# Preferential attachment: injective densities approach c^l prod r_i! when m = c n^2 / 2
c = 0.5
for n in (50, 100, 200):
    m = round(c * n * n / 2)
    vals = [t_inj("K3", grow_pag(n, m, Seed(3, r))) for r in range(20)]
    print(f"PAG n={n}: mean t_inj(K3) {np.mean(vals):.3f}, exact expectation {expected_tinj_pag('K3', n, m):.3f}, "
          f"limit {limit_tinj_pag('K3', c):.0f}")

# Double edges: t(K2(2)) is close to t_inj(K2(2)) + t_inj(K2)
for n in (20, 40, 80):
    g = grow_pag(n, n * n // 4, Seed(5))
    hom = t_hom_multi("K2(2)", g)
    approx = t_inj("K2(2)", g) + t_inj("K2", g)
    print(f"n={n}: t(K2(2)) {hom:.4f}  sum of injective densities {approx:.4f}  rel. error {abs(approx / hom - 1):.4f}")
