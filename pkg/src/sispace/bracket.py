"""Periodization ``Phi_phi(t) = sum_k |phi^(t + k)|^2``, exactly and numerically."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .piecewise import (PiecewiseFn, decay_order, fourier, ft_bound_constant,
                        inner_product, period_of_spectrum)
from .trigpoly import TrigPoly

INTEGER_GUARD = 1e-9


def autocorrelation_exact(phi: PiecewiseFn) -> dict:
    """``k -> int phi(t) conj(phi(t + k)) dt`` for every ``k`` with overlap.

    Values are exact (Fractions) for rational generators.
    """
    if phi.is_zero:
        return {}
    a, b = phi.support
    reach = math.ceil(float(b - a))
    out = {}
    for k in range(-reach, reach + 1):
        c = inner_product(phi, phi, k)
        if c != 0:
            out[k] = c
    return out


def autocorrelation(phi: PiecewiseFn) -> TrigPoly:
    """Fourier coefficients of ``Phi_phi`` from shift autocorrelations."""
    return TrigPoly.from_dict({k: complex(v) for k, v in autocorrelation_exact(phi).items()})


def hurwitz_tail(s: float, q):
    """``sum_{j >= 0} (q + j)^-s`` for ``q > 0``, ``s > 1``.

    Twelve terms summed directly, the rest by Euler-Maclaurin with four
    Bernoulli corrections; relative error below 1e-13 for ``2 <= s <= 8``.
    """
    q = np.asarray(q, dtype=float)
    head = sum((q + j) ** -s for j in range(12))
    x = q + 12
    tail = (x ** (1 - s) / (s - 1) + 0.5 * x ** -s + s / 12 * x ** (-s - 1)
            - s * (s + 1) * (s + 2) / 720 * x ** (-s - 3)
            + s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240 * x ** (-s - 5)
            - math.prod(s + i for i in range(7)) / 1209600 * x ** (-s - 7))
    return head + tail


def integral_tail_bound(K: int, decay: float, bound_const: float = 1.0) -> float:
    """Bound on ``sum_{|k| > K} |fhat(t + k)|^2`` for ``t in [0, 1)`` given
    ``|fhat(xi)| <= C |xi|^-p``:  ``C^2 * 2 (K - 1)^(1 - 2p) / (2p - 1)``."""
    s = 2 * decay
    return bound_const ** 2 * 2 * (K - 1) ** (1 - s) / (s - 1)


@dataclass(frozen=True)
class BracketSample:
    t: np.ndarray
    value: np.ndarray
    tail_bound: float
    truncation_K: int


def bracket_numeric(fhat: Callable, t, K: int, decay: float, bound_const: float = 1.0,
                    period: int = 1, tail_correction: bool = True, chunk: int = 64) -> BracketSample:
    """Truncated ``sum_{|k| <= K} |fhat(t + k)|^2`` with a certified tail bound.

    ``decay`` and ``bound_const`` declare ``|fhat(xi)| <= C |xi|^-decay``.
    With ``tail_correction`` the asymptotic tail is added: beyond ``K`` the
    product ``|fhat(xi)|^2 |xi|^(2 decay)`` is (to leading order) periodic in
    ``xi`` with period ``period``, so each residue class contributes its last
    in-window value times a Hurwitz zeta tail.  The correction lies in
    ``[0, tail_bound]``, hence ``|value - exact| <= tail_bound`` either way.
    """
    if decay <= 0.5:
        raise ValueError("decay order must exceed 1/2 for a summable tail")
    if K < 1:
        raise ValueError("K must be >= 1")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tr = np.mod(t, 1.0)
    ks = np.arange(-K, K + 1)
    s = 2 * decay
    bound = integral_tail_bound(K, decay, bound_const) if K > 1 else math.inf
    values = np.empty(tr.shape)
    P = max(1, int(period))
    for start in range(0, tr.size, chunk):
        tt = tr[start:start + chunk]
        xi = tt[:, None] + ks[None, :]
        sq = np.abs(fhat(xi)) ** 2
        total = np.sum(sq, axis=1)
        if tail_correction and K > P:
            corr = np.zeros(tt.shape)
            for j in range(P):
                kr = K - j
                # right tail: k = kr + P m, m >= 1
                amp = sq[:, K + kr] * np.abs(tt + kr) ** s
                corr += amp * P ** -s * hurwitz_tail(s, (tt + kr) / P + 1)
                # left tail: k = -kr - P m, m >= 1
                amp = sq[:, K - kr] * np.abs(tt - kr) ** s
                corr += amp * P ** -s * hurwitz_tail(s, (kr - tt) / P + 1)
            total = total + np.clip(corr, 0.0, bound)
        values[start:start + chunk] = total
    return BracketSample(t=t, value=values, tail_bound=bound, truncation_K=K)


def generator_bracket(phi: PiecewiseFn, t, K: int, tail_correction: bool = True) -> BracketSample:
    """:func:`bracket_numeric` for ``phi^`` with decay, constant and period
    read off the generator."""
    return bracket_numeric(lambda x: fourier(phi, x), t, K, decay=decay_order(phi),
                           bound_const=ft_bound_constant(phi), period=period_of_spectrum(phi),
                           tail_correction=tail_correction)


# -- series identities ----------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    xi: float
    K: int
    lhs: float
    rhs: float

    @property
    def rel_error(self) -> float:
        return abs(self.lhs - self.rhs) / abs(self.rhs)


def _check_xi(xi: float):
    if abs(xi - round(xi)) < INTEGER_GUARD:
        raise ValueError(f"xi={xi} is within {INTEGER_GUARD} of an integer")


def _power_sum(xi: float, K: int, s: int) -> float:
    ks = np.arange(-K, K + 1)
    head = float(np.sum(np.abs(xi + ks) ** -float(s)))
    right = float(hurwitz_tail(s, xi + K + 1))
    left = float(hurwitz_tail(s, K + 1 - xi))
    return head + right + left


def kar1_rhs(xi):
    return np.pi ** 2 / np.sin(np.pi * np.asarray(xi, dtype=float)) ** 2


def kar2_rhs(xi):
    xi = np.asarray(xi, dtype=float)
    return np.pi ** 4 * (2 + np.cos(2 * np.pi * xi)) / (3 * np.sin(np.pi * xi) ** 4)


def verify_identity_kar1(xi: float, K: int = 10_000) -> IdentityCheck:
    """``sum_k |xi + k|^-2`` (truncated at ``K`` plus tail) against
    ``pi^2 / sin^2(pi xi)``."""
    _check_xi(xi)
    return IdentityCheck("inverse_square", float(xi), K, _power_sum(xi, K, 2), float(kar1_rhs(xi)))


def verify_identity_kar2(xi: float, K: int = 10_000) -> IdentityCheck:
    """``sum_k |xi + k|^-4`` against ``pi^4 (2 + cos 2 pi xi) / (3 sin^4 pi xi)``."""
    _check_xi(xi)
    return IdentityCheck("inverse_fourth_power", float(xi), K, _power_sum(xi, K, 4), float(kar2_rhs(xi)))


def second_derivative_relation(xi: float) -> tuple[float, float, float]:
    """Compare ``kar2_rhs`` with ``(1/6) d^2/dxi^2 kar1_rhs`` (central
    differences, one Richardson step).  Returns ``(fd, rhs, rel_error)``."""
    _check_xi(xi)
    dist = abs(xi - round(xi))
    h = 1e-3 * dist

    def d2(step):
        return (kar1_rhs(xi + step) - 2 * kar1_rhs(xi) + kar1_rhs(xi - step)) / step ** 2

    fd = (4 * d2(h / 2) - d2(h)) / 3 / 6
    rhs = float(kar2_rhs(xi))
    return float(fd), rhs, float(abs(fd - rhs) / abs(rhs))
