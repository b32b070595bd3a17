"""
Summing GF series
=================

f has symbol h = e_3 + 0.5 e_{-2} in S(psi1).  The L2 error of an
approximant equals the weighted norm of the symbol difference, so every
number below is exact up to rounding.
"""

import numpy as np

from sispace import autocorrelation, build_dual, operator_growth_scan, psi1
from sispace.summation import abel_sweep, cesaro_sweep
from sispace.trigpoly import TrigPoly

phi = autocorrelation(psi1())
ds = build_dual(phi)
h = TrigPoly.from_dict({3: 1.0, -2: 0.5})

rs = [0.5, 0.9, 0.99, 0.999]
print("Abel   ", {r: round(e, 5) for r, e in zip(rs, abel_sweep(h, phi, ds, rs))})
ns = [16, 64, 256, 1024]
for alpha in (0.0, 1.0):
    errs = cesaro_sweep(h, phi, ds, alpha, ns)
    print(f"(C,{alpha:g})  ", {n: round(e, 5) for n, e in zip(ns, errs)})
# partial sums are exact once n passes the degree of h; (C,1) on a
# trigonometric polynomial converges exactly like 1/n
print("n * error:", [round(e * (n + 1), 4) for e, n in zip(cesaro_sweep(h, phi, ds, 1.0, ns), ns)])

# Operator norms below and above the threshold 1/2
for alpha in (0.25, 0.5, 1.0):
    scan = operator_growth_scan(phi, ds, alpha, [16, 32, 64, 128, 256])
    print(f"alpha={alpha:<5g}", np.round(scan.bounds, 4))
