"""Tour of the closed-form laws.

Evaluates the exact formulas for the first hit of the horizontal ray at
offset rho by planar Brownian motion: the joint Laplace transform of the
hitting time and place, the three densities, the radial-distance laws, and
the heavy right tail.  A few consistency identities are recomputed by
quadrature on the spot.
"""

import numpy as np
from scipy import integrate

from starhull import (
    bb_radial_moment,
    bm_radial_moment,
    erfc,
    expected_hull_area,
    hit_place_cdf,
    hit_place_density,
    hit_time_density,
    hit_time_tail_asymptotic,
    ray_hit_density,
    ray_hit_laplace,
)

RHO = 1.0

print("joint Laplace transform E[exp(-lam*T - mu*X)] at rho = 1:")
for lam, mu in ((0.0, 0.0), (0.5, 0.0), (0.0, 1.0), (1.0, 1.0)):
    print(f"  lam={lam:3.1f} mu={mu:3.1f} -> {ray_hit_laplace(RHO, lam, mu):.10f}")
print(f"  (at lam=0, mu=1 this is erfc(1) = {erfc(1.0):.10f})")

print("\nhitting place X: median is exactly 2*rho")
print(f"  cdf(2*rho) = {hit_place_cdf(RHO, 2 * RHO):.10f}")
total = integrate.quad(lambda u: hit_place_density(RHO, u * u + RHO) * 2 * u, 0, np.inf)[0]
print(f"  density integrates to {total:.10f}")

print("\nhitting time T: density at a few points, with the t^(-5/4) falloff")
for t in (0.5, 2.0, 8.0, 32.0):
    print(f"  f_T({t:4.1f}) = {hit_time_density(RHO, t):.6f}")
print("  right tail P(T > t) ~ asymptotic:")
for t in (1e2, 1e4, 1e6):
    print(f"    t = {t:8.0f}: {hit_time_tail_asymptotic(RHO, t):.6f}")

print("\njoint density and its time marginal agree (quadrature over x):")
t = 1.5
marg = integrate.quad(lambda u: ray_hit_density(RHO, t, u * u + RHO) * 2 * u, 0, np.inf)[0]
print(f"  integral over x at t={t}: {marg:.10f}")
print(f"  closed-form marginal    : {hit_time_density(RHO, t):.10f}")

print("\nradial distance moments give the star-hull areas:")
print(f"  E[R^2] for the motion  = {bm_radial_moment(2):.6f}  -> area 3*pi/8 = {np.pi * bm_radial_moment(2):.6f}")
print(f"  E[R^2] for the bridge  = {bb_radial_moment(2):.6f}  -> area pi/4   = {np.pi * bb_radial_moment(2):.6f}")

print("\nexpected hull areas (unit time):")
for process in ("bm", "bb"):
    for hull in ("topological", "star", "convex"):
        v = expected_hull_area(process, hull)
        shown = "open problem" if v is None else f"{v:.6f}"
        print(f"  {process} {hull:12s}: {shown}")
