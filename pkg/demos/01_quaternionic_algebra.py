"""Quaternionic structure on H^n and the Sp(n)Sp(1) splitting of bilinear forms.

Run:  python3 demos/01_quaternionic_algebra.py
"""
import numpy as np

from qcverify.decomposition import casimir_apply, projector_trace, sp_decompose
from qcverify.quaternion import I, J, K, frob2, make_hypercomplex_triple, quat_mul, random_rational_matrix

print("i*j =", quat_mul(I, J).as_tuple(), " j*k =", quat_mul(J, K).as_tuple())

n = 2
t = make_hypercomplex_triple(n)
print(f"hypercomplex triple on R^{4 * n}: first violated relation = {t.check()}")

# the Casimir operator has eigenvalue 3 on the metric and -1 on each fundamental 2-form
print("Upsilon g == 3 g:", (casimir_apply(t, t.g) == 3 * t.g).all())
print("Upsilon omega_1 == -omega_1:", (casimir_apply(t, t.omega[0]) == -t.omega[0]).all())

# split a random rational form and check orthogonality of the parts
P = random_rational_matrix(np.random.default_rng(0), 4 * n)
d = sp_decompose(t, P)
print("|P|^2 =", frob2(P), " = |P_[3]|^2 + |P_[-1]|^2 =", frob2(d.part3) + frob2(d.partm1))
print("dimensions of [3] and [-1]:", projector_trace(t, "3"), projector_trace(t, "-1"))
