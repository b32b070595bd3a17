"""
Orthonormalizing and prescribing weights
========================================

phi_0^ = phi^ / sqrt(Phi) has orthonormal shifts.  Conversely, starting from
a function with orthonormal shifts, phi = sum h_k psi(. + k) has weight
exactly |h|^2.
"""

import numpy as np

from sispace import OrthoGenerator, autocorrelation, check_onb, classify, hat, prescribe_phi, psi1
from sispace.piecewise import box
from sispace.trigpoly import TrigPoly

grid = (np.arange(32) + 0.5) / 32
for gen in (hat(), psi1()):
    dev, s = check_onb(OrthoGenerator.from_generator(gen), grid, K=10_000)
    print("max |sum |phi_0^(t+k)|^2 - 1| =", dev)

# psi1's weight vanishes at 0 but phi_0^ stays bounded there
print("phi_0^(0) =", OrthoGenerator.from_generator(psi1())(0.0))

h = TrigPoly.from_dict({0: 1.0, 1: -1.0})  # |h|^2 = 4 sin^2 pi t
phi = prescribe_phi(h, box())
print(phi)
print(autocorrelation(phi))
print(classify(autocorrelation(phi)).summary())
