"""
Dual systems
============

Regular weight: the dual generator is g = sum_k d_k phi(. + k) with d the
Fourier coefficients of 1/Phi.  For the hat they decay like (2 - sqrt 3)^|k|.

Singular weight: the dual functions are eta_n^ = phi^ (e_n - T_n) / Phi.
Here T_n is the Hermite interpolant of e_n supported on the removed block
Omega.  GF coefficients reduce to c_n = h_n - <h, T_n> on the symbol.
"""

import numpy as np

from sispace import autocorrelation, build_dual, gf_coefficients, hat, psi1, regular_dual
from sispace.dual import biorthogonality_check, regular_biorthogonality
from sispace.trigpoly import TrigPoly, sin_power

phi = autocorrelation(hat())
d = regular_dual(phi, 32)
print("d_0..d_5:", np.round(d.coeffs.window(0, 5).real, 6))
print("decay ratio", d.ratio, "vs 2 - sqrt 3 =", 2 - np.sqrt(3))
print("biorthogonality", regular_biorthogonality(phi, d, 8))

ds = build_dual(autocorrelation(psi1()))
print("psi1: Omega =", ds.omega, " T_7 =", ds.interpolant(7))
h = TrigPoly.from_dict({3: 1.0, -2: 0.5, 0: 2.0})
c = gf_coefficients(h, ds, 4)
print("c_n:", {n: complex(np.round(v, 12)) for n, v in sorted(c.values.items())})
print("biorthogonality", biorthogonality_check(ds, 8))

# Two zeros, orders 1 and 2: a 3-point confluent Vandermonde system
w = sin_power(0.0, 2) * sin_power(0.5, 4) * TrigPoly.from_dict({0: 3.0, 1: 1.0, -1: 1.0})
ds2 = build_dual(w)
print("Omega =", ds2.omega, " condition number", round(ds2.condition_number, 3))
print("biorthogonality", biorthogonality_check(ds2, 8))
