"""
Two lattice-sum identities
==========================

sum_k 1/(xi + k)^2 = pi^2 / sin^2(pi xi), and
sum_k 1/(xi + k)^4 = pi^4 (2 + cos 2 pi xi) / (3 sin^4 pi xi),
the second being 1/6 of the second derivative of the first.
"""

import numpy as np

from sispace.bracket import second_derivative_relation, verify_identity_kar1, verify_identity_kar2

for xi in (0.5, 0.25, 0.01):
    a, b = verify_identity_kar1(xi, 10_000), verify_identity_kar2(xi, 10_000)
    print(f"xi={xi:<5} inverse-square rel err {a.rel_error:.1e}   fourth-power rel err {b.rel_error:.1e}")

rel = [second_derivative_relation(x)[2] for x in np.linspace(0.05, 0.95, 10)]
print("second-derivative relation, worst rel err", max(rel))
