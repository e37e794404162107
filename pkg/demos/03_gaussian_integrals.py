"""Integral identities on the Heisenberg group, exactly and by Monte Carlo.

Test functions are p * exp(-a rho).  Their integrals reduce to Gaussian
moments, so each identity is checked as an equality of rationals; Monte Carlo
serves as an independent cross-check.

Run:  python3 demos/03_gaussian_integrals.py
"""
from qcverify.gaussian import (_FnData, hessian_laplacian_integrals, integrate_exact, mc_integrate,
                               random_gauss_family, verify_hessian_split_lemma, verify_vertical_energy_lemma)
from qcverify.heisenberg import build_group_model

m = build_group_model(2)
for f in random_gauss_family(m, 4, degree=3, seed=0):
    d = _FnData(m, f)
    h2, l2 = hessian_laplacian_integrals(m, f, d)
    exact = integrate_exact(m, f * f)
    est = mc_integrate(m, f * f, 100_000, seed=1)
    print(f"a={f.a}: lemma residuals {verify_vertical_energy_lemma(m, f, d).coeff}, "
          f"{verify_hessian_split_lemma(m, f, d).coeff}; "
          f"int|Hess|^2 / int(Lap)^2 = {h2.coeff / l2.coeff} (bound 3/2); "
          f"int f^2 exact {exact.value:.4g}, MC {est.value:.4g} +- {est.stderr * exact.value / float(exact.coeff):.2g}")
