"""The round sphere S^11: coordinate functions are sub-Laplacian eigenfunctions.

Run:  python3 demos/04_sphere_eigenvalue.py
"""
import numpy as np

from qcverify.sphere import (all_coordinates, build_sphere_model, equality_hessian_residual,
                             random_points, sphere_ratios_mc, sub_laplacian_routes)

m = build_sphere_model(2)
x = random_points(m, 1, np.random.default_rng(0))[0]
a, b = sub_laplacian_routes(m, all_coordinates, x)
print("max |Lap x_A - 8 x_A| via Riemannian route:", np.abs(a - 8 * x).max())
print("max |Lap x_A - 8 x_A| via Biquard route:   ", np.abs(b - 8 * x).max())
print("equality-case Hessian residual:", equality_hessian_residual(m, all_coordinates, x))

r = sphere_ratios_mc(m, 0, 1_000_000, seed=0)
print(f"vertical energy {r.vertical_energy_ratio:.4f} (3), horizontal Rayleigh "
      f"{r.rayleigh_quotient:.4f} (8), Riemannian Rayleigh {r.riemannian_rayleigh:.4f} (11)")
