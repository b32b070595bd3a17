"""Biorthogonal dual systems and generalized Fourier (GF) coefficients.

Functions ``f`` of ``S(phi)`` are handled through their symbol ``h``
(``f^ = phi^ h``); for finite shift combinations ``h`` is a trigonometric
polynomial and every pairing below is exact coefficient algebra.  The dual
functions ``eta_n^ = phi^ Phi^-1 (e_n - T_n)`` are never materialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
import scipy.linalg

from .analysis import SingularityProfile, default_omega, profile as _profile
from .trigpoly import TrigPoly, pair

INTERP_TOL = 1e-9


class InterpolationError(ArithmeticError):
    """The confluent Vandermonde system is singular or its residual too large."""


# -- regular case ---------------------------------------------------------------

@dataclass(frozen=True)
class RegularDual:
    """``g = sum_k d_k phi(. + k)`` with ``g^ = phi^ / Phi``."""

    coeffs: TrigPoly
    K: int
    fft_size: int
    aliasing: float
    ratio: float
    tail_bound: float


def regular_dual(phi: TrigPoly, K: int, aliasing_tol: float = 1e-10) -> RegularDual:
    """Fourier coefficients ``d_k`` (``|k| <= K``) of ``1/Phi`` by trapezoid rule.

    The grid doubles until the coefficients at the Nyquist band fall below
    ``aliasing_tol`` (they decay geometrically because ``1/Phi`` is analytic).
    """
    lo = min(phi.real_values(np.arange(4096) / 4096))
    if lo <= 1e-12 * phi.l1():
        raise ValueError("weight has zeros; use a DualSystem with an excluded block")
    m = max(6, int(np.ceil(np.log2(4 * K + 8))))
    while True:
        n = 2 ** m
        t = np.arange(n) / n
        d = np.fft.fft(1.0 / phi.real_values(t)) / n  # d[k] ~ int (1/Phi) e^{-2 pi i k t}
        alias = float(np.max(np.abs(d[n // 2 - n // 8:n // 2 + n // 8])))
        if alias < aliasing_tol or m >= 22:
            break
        m += 1
    ks = np.arange(-K, K + 1)
    vals = d[ks % n]
    mags = np.abs(d[np.arange(1, min(n // 4, K + 16))])
    # fit the geometric rate above the rounding floor only
    idx = np.flatnonzero(mags > 1e-12 * abs(d[0]))
    idx = idx[:np.argmax(np.diff(np.append(idx, -1)) != 1) + 1] if idx.size else idx
    ratio = float(np.exp(np.polyfit(idx, np.log(mags[idx]), 1)[0])) if idx.size > 2 else 0.0
    ratio = min(ratio, 1.0 - 1e-12)
    tail = 2 * abs(d[(K + 1) % n]) / (1 - ratio) + 2 * alias if K + 1 < n // 2 else 2 * alias
    return RegularDual(TrigPoly(-K, vals), K, n, alias, ratio, float(tail))


def regular_biorthogonality(phi: TrigPoly, dual: RegularDual, rng: int) -> float:
    """``max_{|j|, |n| <= rng} |<phi(. + j), g(. + n)> - delta_jn|`` via the
    isometry ``<f1, f2> = int h1 conj(h2) Phi``."""
    worst = 0.0
    for j in range(-rng, rng + 1):
        hp = TrigPoly.monomial(j) * phi
        for n in range(-rng, rng + 1):
            val = pair(hp, dual.coeffs.modulate(n))
            worst = max(worst, abs(val - (1.0 if j == n else 0.0)))
    return worst


# -- Hermite trigonometric interpolation -----------------------------------------

def _conditions(prof: SingularityProfile):
    return [(x, d) for x, lam in prof.points for d in range(lam)]


def _vandermonde(prof: SingularityProfile, omega: tuple) -> np.ndarray:
    # row (x_j, d): k^d e^{2 pi i k x_j}; the common factor (2 pi i)^d is dropped
    rows = _conditions(prof)
    ks = np.array(omega, dtype=float)
    V = np.empty((len(rows), len(omega)), dtype=complex)
    for r, (x, d) in enumerate(rows):
        V[r] = ks ** d * np.exp(2j * np.pi * ks * x)
    return V


def _rhs(prof: SingularityProfile, ns: np.ndarray) -> np.ndarray:
    rows = _conditions(prof)
    ns = np.asarray(ns, dtype=float)
    B = np.empty((len(rows), ns.size), dtype=complex)
    for r, (x, d) in enumerate(rows):
        B[r] = ns ** d * np.exp(2j * np.pi * ns * x)
    return B


@dataclass(frozen=True)
class DualSystem:
    """Excluded block ``omega`` and the interpolants ``T_n`` of ``e_n``."""

    phi: TrigPoly
    profile: SingularityProfile
    omega: tuple
    condition_number: float
    _lu: object = field(repr=False, default=None)

    def interpolant_coeffs(self, ns: Iterable[int]) -> np.ndarray:
        """Rows ``c^(n)`` (indexed like ``omega``) for each ``n`` in ``ns``."""
        ns = np.atleast_1d(np.asarray(list(ns) if not isinstance(ns, np.ndarray) else ns, dtype=int))
        if not self.omega:
            return np.zeros((ns.size, 0), dtype=complex)
        B = _rhs(self.profile, ns)
        C = scipy.linalg.lu_solve(self._lu, B)
        V = _vandermonde(self.profile, self.omega)
        res = np.abs(V @ C - B).max(axis=0) / np.maximum(1.0, np.abs(B).max(axis=0))
        if np.any(res > INTERP_TOL):
            raise InterpolationError(f"interpolation residual {res.max():.3g}")
        C = C.T
        pos = {k: i for i, k in enumerate(self.omega)}
        for row, n in enumerate(ns):
            if int(n) in pos:
                C[row] = 0
                C[row, pos[int(n)]] = 1.0
        return C

    def interpolant(self, n: int) -> TrigPoly:
        if not self.omega:
            return TrigPoly.zero()
        return TrigPoly(self.omega[0], self.interpolant_coeffs([n])[0])

    def coefficients(self, h: TrigPoly, ns: Iterable[int]) -> np.ndarray:
        """GF coefficients ``c_n = h_n - <h, T_n>`` for every ``n`` in ``ns``."""
        ns = np.atleast_1d(np.asarray(list(ns) if not isinstance(ns, np.ndarray) else ns, dtype=int))
        out = np.array([h.coeff(int(n)) for n in ns], dtype=complex)
        if self.omega:
            C = self.interpolant_coeffs(ns)
            hw = np.array([h.coeff(k) for k in self.omega])
            out = out - C.conj() @ hw
        in_omega = np.isin(ns, self.omega)
        out[in_omega] = 0
        return out


def hermite_interpolant(n: int, omega: tuple, prof: SingularityProfile) -> TrigPoly:
    """``T_n`` supported on ``omega`` matching ``e^{2 pi i n t}`` and its first
    ``lambda_j - 1`` derivatives at every ``x_j``."""
    return build_dual(None, prof, omega).interpolant(n)


def build_dual(phi: Optional[TrigPoly], prof: Optional[SingularityProfile] = None,
               omega: Optional[tuple] = None, omega_start: Optional[int] = None) -> DualSystem:
    """Assemble and factor the confluent Vandermonde system once."""
    if prof is None:
        prof = _profile(phi)
    if omega is None:
        omega = default_omega(prof.total, omega_start)
    omega = tuple(int(k) for k in omega)
    if len(omega) != prof.total:
        raise ValueError(f"|Omega| = {len(omega)} must equal sum of orders {prof.total}")
    if omega and list(omega) != list(range(omega[0], omega[0] + len(omega))):
        raise ValueError("Omega must be a block of consecutive integers")
    if len(set(prof.locations)) != len(prof.locations):
        raise InterpolationError("duplicate interpolation points")
    if not omega:
        return DualSystem(phi, prof, (), 1.0, None)
    V = _vandermonde(prof, omega)
    cond = float(np.linalg.cond(V))
    if not np.isfinite(cond) or cond > 1e14:
        raise InterpolationError(f"confluent Vandermonde system singular (cond {cond:.3g})")
    lu = scipy.linalg.lu_factor(V)
    return DualSystem(phi, prof, omega, cond, lu)


# -- GF coefficients ------------------------------------------------------------

@dataclass(frozen=True)
class GFCoefficients:
    """``n -> c_n(f)`` on ``-n_max..n_max`` minus ``omega``."""

    n_max: int
    omega: tuple
    values: dict

    def __getitem__(self, n: int) -> complex:
        if n in self.omega:
            return 0j
        if abs(n) > self.n_max:
            raise KeyError(f"coefficient {n} outside declared range {self.n_max}")
        return self.values[n]

    def dense(self, n: int) -> np.ndarray:
        """``c_{-n..n}`` with zeros on ``omega``."""
        if n > self.n_max:
            raise KeyError(f"need coefficients up to {n}, have {self.n_max}")
        return np.array([self[k] for k in range(-n, n + 1)], dtype=complex)


def gf_coefficient(h: TrigPoly, n: int, dual: DualSystem) -> complex:
    """``c_n(f) = int h (e_{-n} - conj T_n) = h_n - <h, T_n>``."""
    if n in dual.omega:
        return 0j
    return h.coeff(n) - pair(h, dual.interpolant(n))


def gf_coefficients(h: TrigPoly, dual: DualSystem, n_max: int) -> GFCoefficients:
    ns = np.array([n for n in range(-n_max, n_max + 1) if n not in dual.omega], dtype=int)
    vals = dual.coefficients(h, ns)
    return GFCoefficients(n_max, dual.omega, {int(n): complex(v) for n, v in zip(ns, vals)})


def biorthogonality_check(dual: DualSystem, rng: int) -> float:
    """``max |c_n(phi(. + k)) - delta_kn|`` over ``k, n`` in ``[-rng, rng]``
    minus ``omega``."""
    ns = np.array([n for n in range(-rng, rng + 1) if n not in dual.omega], dtype=int)
    worst = 0.0
    for k in ns:
        c = dual.coefficients(TrigPoly.monomial(int(k)), ns)
        worst = max(worst, float(np.max(np.abs(c - (ns == k)))))
    return worst


def completeness_probe(dual: DualSystem, h: TrigPoly, tol: float = 1e-9) -> bool:
    """Check ``c_n(h) = 0`` for all probed ``n``  implies ``h = 0``.

    The probe range ``degree(h) + |omega| + 1`` reaches past the support of
    ``h`` so a nonzero ``h`` cannot hide.  Returns whether the implication
    held (vacuously true when some coefficient is nonzero).
    """
    if h.is_zero:
        return True
    r = h.degree + len(dual.omega) + 1 + max((abs(k) for k in dual.omega), default=0)
    ns = np.array([n for n in range(-r, r + 1) if n not in dual.omega], dtype=int)
    c = dual.coefficients(h, ns)
    if np.max(np.abs(c)) > tol:
        return True
    return h.max_abs() <= tol
