"""Orthonormalized generator ``phi_0^ = phi^ / sqrt(Phi)`` and the
construction of a generator with prescribed ``Phi = |h|^2``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analysis import SingularityProfile, profile as _profile
from .bracket import BracketSample, bracket_numeric
from .piecewise import (PiecewiseFn, combine, decay_order, fourier, ft_bound_constant,
                        period_of_spectrum)
from .trigpoly import TrigPoly

SINGULAR_TOL = 1e-8


class NotOrthonormalError(ValueError):
    """The integer shifts of the given function are not orthonormal."""


@dataclass(frozen=True)
class OrthoGenerator:
    """Frequency-side handle on ``phi_0``; ``phi`` is the weight used as
    normalizer (normally ``autocorrelation(base)``)."""

    base: PiecewiseFn
    phi: TrigPoly
    profile: SingularityProfile

    @classmethod
    def from_generator(cls, base: PiecewiseFn, phi: Optional[TrigPoly] = None) -> "OrthoGenerator":
        from .bracket import autocorrelation
        if phi is None:
            phi = autocorrelation(base)
        return cls(base, phi, _profile(phi))

    def _near_singular(self, xi: np.ndarray):
        """Nearest singular point (lifted to the real line) and distance."""
        if self.profile.is_empty:
            return None, None, None
        best_d = np.full(xi.shape, np.inf)
        best_c = np.zeros(xi.shape)
        best_l = np.zeros(xi.shape, dtype=int)
        for x, lam in self.profile.points:
            c = x + np.round(xi - x)
            d = np.abs(xi - c)
            m = d < best_d
            best_d[m], best_c[m], best_l[m] = d[m], c[m], lam
        return best_c, best_d, best_l

    def __call__(self, xi):
        return ortho_hat(self, xi)


def ortho_hat(g: OrthoGenerator, xi):
    """``phi^(xi) / sqrt(Phi(xi mod 1))``.

    Within ``SINGULAR_TOL`` of a zero ``x_j`` of ``Phi`` the quotient is
    replaced by its right-hand limit, which exists when ``phi^`` vanishes to
    order at least ``lambda_j`` at that point; otherwise ``ValueError``.
    """
    xi = np.asarray(xi, dtype=float)
    flat = np.ravel(xi).astype(float)
    out = np.empty(flat.shape, dtype=complex)
    regular = np.ones(flat.shape, dtype=bool)
    if not g.profile.is_empty:
        centre, dist, lam = g._near_singular(flat)
        close = dist < SINGULAR_TOL
        regular = ~close
        for i in np.flatnonzero(close):
            out[i] = _limit_at(g, centre[i], int(lam[i]))
    if np.any(regular):
        x = flat[regular]
        w = g.phi.real_values(np.mod(x, 1.0))
        out[regular] = fourier(g.base, x) / np.sqrt(np.maximum(w, 0.0))
    out = out.reshape(np.shape(xi))
    return out[()] if out.ndim == 0 else out


def _limit_at(g: OrthoGenerator, c: float, lam: int) -> complex:
    # phi^ must vanish to order >= lam at c for the quotient to stay bounded
    d1, d2 = 1e-3, 5e-4
    a1, a2 = abs(fourier(g.base, c + d1)), abs(fourier(g.base, c + d2))
    if a1 == 0 and a2 == 0:
        return 0j
    order = np.log(a1 / a2) / np.log(d1 / d2) if a2 > 0 else np.inf
    if order < lam - 0.25:
        raise ValueError(f"phi^ vanishes to order {order:.2f} < {lam} at xi={c:.6g}; "
                         "phi_0^ is unbounded there")

    def q(d):
        w = float(np.asarray(g.phi.real_values(np.mod(c + d, 1.0))).ravel()[0])
        return complex(fourier(g.base, c + d)) / np.sqrt(w)

    h = 1e-5
    return 2 * q(h / 2) - q(h)


def check_onb(g: OrthoGenerator, grid, K: int = 10_000) -> tuple[float, BracketSample]:
    """``max_t |sum_{|k| <= K} |phi_0^(t + k)|^2 - 1|`` (tail corrected) and
    the sample carrying the certified tail bound."""
    grid = np.asarray(grid, dtype=float)
    lo = float(np.min(g.phi.real_values(np.arange(4096) / 4096)))
    # phi_0^ inherits the decay of phi^ up to the factor 1/sqrt(min Phi)
    const = ft_bound_constant(g.base)
    if lo > 0:
        const = const / np.sqrt(lo)
    s = bracket_numeric(lambda x: ortho_hat(g, x), grid, K, decay=decay_order(g.base),
                        bound_const=const, period=period_of_spectrum(g.base))
    return float(np.max(np.abs(s.value - 1.0))), s


def shifts_orthonormal(psi: PiecewiseFn, tol: float = 1e-12) -> bool:
    from .bracket import autocorrelation_exact
    ac = autocorrelation_exact(psi)
    for k, v in ac.items():
        target = 1 if k == 0 else 0
        if abs(complex(v) - target) > tol:
            return False
    return 0 in ac


def prescribe_phi(h: TrigPoly, psi: PiecewiseFn, tol: float = 1e-12) -> PiecewiseFn:
    """``phi = sum_k h_k psi(. + k)``; for orthonormal shifts of ``psi`` the
    result has ``Phi_phi = |h|^2``."""
    from .bracket import autocorrelation
    if not shifts_orthonormal(psi, tol):
        raise NotOrthonormalError("integer shifts of psi are not orthonormal")
    ks = list(h.frequencies)
    coeffs = [_exactish(c) for c in h.coeffs]
    phi = combine(coeffs, [psi.shift(int(k)) for k in ks])
    got = autocorrelation(phi)
    want = h.abs2()
    scale = max(1.0, want.max_abs())
    if (got - want).max_abs() > 1e-10 * scale:
        raise ArithmeticError("autocorrelation of the constructed generator differs from |h|^2")
    return phi


def _exactish(c: complex):
    c = complex(c)
    return c.real if c.imag == 0 else c
