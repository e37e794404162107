"""Exact bookkeeping of the constants in the eigenvalue and Hessian estimates.

The U coefficient that comes out of substituting the curvature identities is
twice the closed form usually quoted for beta_n; the report shows both.

Run:  python3 demos/05_constants.py
"""
from qcverify.constants import bochner_coefficient_check, lichnerowicz_bound, qc_constants

for n in (2, 3):
    k = qc_constants(n)
    print(f"n={n}: c={k.c}, alpha={k.alpha_n}, beta={k.beta_n}, p_max={k.p_max:.6f}, "
          f"bound with k0=4(n+2): {lichnerowicz_bound(n, 4 * (n + 2))}")
    r = bochner_coefficient_check(n)
    for ch in r.checks:
        print(f"   ({ch.identity}) {ch.name:28s} {'ok' if ch.passed else 'MISMATCH'}  {ch.lhs} vs {ch.rhs}")
    print("   beta implied by substitution:", r.notes["beta_from_substitution"])
