"""
Which shift systems are bases?
==============================

A zero-free weight gives a Riesz basis with constants (min Phi, max Phi).
A zero of order 2*lambda breaks the Schauder property.  Removing a block of
sum(lambda) consecutive shifts leaves an M-basis.  The Cesaro means of
order alpha then converge iff alpha > lambda0 - 1/2.
"""

import numpy as np

from sispace import autocorrelation, classify, factorize, hat, psi1
from sispace.analysis import a2_scan, singularity_integrals
from sispace.trigpoly import TrigPoly, sin_power

print(classify(autocorrelation(hat())).summary())
print(classify(autocorrelation(psi1())).summary())

# A weight with a fourth-order zero at 1/4: lambda = 2, threshold 3/2
w = sin_power(0.25, 4) * TrigPoly.from_dict({0: 2.0, 1: 0.5, -1: 0.5})
report = classify(w)
print(report.summary())
fact = factorize(w)
print("factored as", fact.describe(), "times P with min", round(fact.P_min, 6))

# The definition of singularity order, checked numerically: the lower
# integral blows up as eps -> 0 and the upper one settles
s = singularity_integrals(fact, 0)
print("lower:", np.round(s.lower, 2))
print("upper:", np.round(s.upper, 6))

# Muckenhoupt A2 by dyadic averages (heuristic)
for label, f in [("1", lambda t: np.ones_like(t)),
                 ("|sin|^0.5", lambda t: np.abs(np.sin(np.pi * t)) ** 0.5),
                 ("sin^2", lambda t: np.sin(np.pi * t) ** 2)]:
    scan = a2_scan(f)
    print(f"{label:10s} {scan.verdict:20s} bounds {np.round(scan.bounds, 3)}")
