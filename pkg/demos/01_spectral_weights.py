"""
Spectral weights of the standard generators
===========================================

The periodization Phi(t) = sum_k |phi^(t + k)|^2 of a compactly supported
generator is a trigonometric polynomial.  Its Fourier coefficients are the
shift autocorrelations c_k = int phi(t) phi(t + k) dt, which we get exactly.
"""

import numpy as np

from sispace import autocorrelation, autocorrelation_exact, box, bspline, hat, psi1
from sispace.bracket import generator_bracket
from sispace.generators import compare_published

# Exact rational autocorrelations
for name, gen in [("box", box()), ("hat", hat()), ("psi1", psi1()), ("cubic", bspline(4))]:
    ac = autocorrelation_exact(gen)
    print(f"{name:6s}", {k: str(v) for k, v in sorted(ac.items())})

# The same weight summed on the frequency side: truncate at |k| <= K,
# add the asymptotic tail, and compare with the trigonometric polynomial.
t = np.linspace(0.05, 0.95, 7)
for gen in (hat(), psi1()):
    s = generator_bracket(gen, t, K=2000)
    exact = autocorrelation(gen).real_values(t)
    print("max |bracket - Phi| =", np.max(np.abs(s.value - exact)), " tail bound", s.tail_bound)

# psi1 has Phi = a sin^2(pi t).  The commonly quoted a = 16/3 does not
# survive the exact inner products, which give a = 4/3.
print(compare_published("psi1", autocorrelation(psi1())))
