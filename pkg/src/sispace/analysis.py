"""Singularity profile, factorization ``Phi = |omega|^2 P`` and basis
classification of the integer shifts of a generator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate, optimize

from .trigpoly import TrigPoly, divide_out, roots_on_torus, sin_power

GRID = 4096


class NotNonnegativeError(ValueError):
    """The weight is not a real, nonnegative, nonzero trigonometric polynomial."""


@dataclass(frozen=True)
class SingularityProfile:
    """Zeros ``x_j`` of the weight with singularity orders ``lambda_j``
    (zero multiplicity ``2 lambda_j``)."""

    points: tuple = ()

    @property
    def locations(self) -> tuple:
        return tuple(x for x, _ in self.points)

    @property
    def orders(self) -> tuple:
        return tuple(lam for _, lam in self.points)

    @property
    def total(self) -> int:
        return sum(self.orders)

    @property
    def lambda0(self) -> int:
        return max(self.orders, default=0)

    @property
    def is_empty(self) -> bool:
        return not self.points

    def to_json(self) -> dict:
        return {"points": [{"x": x, "lambda": lam} for x, lam in self.points],
                "total": self.total, "lambda0": self.lambda0}


def _check_weight(phi: TrigPoly):
    if phi.is_zero:
        raise NotNonnegativeError("weight is identically zero")
    if not phi.is_real_valued(1e-10):
        raise NotNonnegativeError("weight is not real valued")
    t = np.arange(GRID) / GRID
    vals = phi.real_values(t)
    if vals.min() < -1e-10 * max(1.0, phi.l1()):
        raise NotNonnegativeError(f"weight takes negative value {vals.min():.3g}")


def profile(phi: TrigPoly, tol: float = 1e-8) -> SingularityProfile:
    """Zeros of a nonnegative trigonometric polynomial and their orders."""
    _check_weight(phi)
    pts = []
    for r in roots_on_torus(phi, tol):
        if r.multiplicity % 2:
            raise NotNonnegativeError(
                f"odd zero multiplicity {r.multiplicity} at {r.location:.6g}")
        pts.append((r.location, r.multiplicity // 2))
    return SingularityProfile(tuple(pts))


@dataclass(frozen=True)
class Factorization:
    """``Phi(t) = prod_j sin^{2 lambda_j} pi(t - x_j) * P(t)`` with ``P > 0``."""

    profile: SingularityProfile
    P: TrigPoly
    residual: float
    P_min: float

    def omega(self, t):
        t = np.asarray(t, dtype=float)
        out = np.ones(t.shape)
        for x, lam in self.profile.points:
            out = out * np.abs(np.sin(np.pi * (t - x))) ** lam
        return out

    def weight(self, t):
        """Evaluate ``Phi`` through the factored form (accurate near zeros)."""
        return self.omega(t) ** 2 * self.P.real_values(t)

    def describe(self) -> str:
        if self.profile.is_empty:
            return "1"
        return " * ".join(f"|sin pi(t - {x:.6g})|^{lam}" for x, lam in self.profile.points)


def factorize(phi: TrigPoly, prof: Optional[SingularityProfile] = None,
              tol: float = 1e-9) -> Factorization:
    """Divide the zeros of ``prof`` out of ``phi``."""
    if prof is None:
        prof = profile(phi)
    P = phi
    for x, lam in prof.points:
        P = divide_out(P, x, 2 * lam, tol=tol)
    back = P
    for x, lam in prof.points:
        back = back * sin_power(x, 2 * lam)
    residual = (back - phi).max_abs()
    if residual > tol * max(1.0, phi.max_abs()):
        raise ArithmeticError(f"factorization residual {residual:.3g} above {tol}")
    lo, _ = extrema(P)
    if lo <= 0 or roots_on_torus(P):
        raise ArithmeticError("quotient P still vanishes on the torus")
    return Factorization(prof, P, float(residual), lo)


def extrema(phi: TrigPoly) -> tuple[float, float]:
    """Minimum and maximum of a real trigonometric polynomial on the torus."""
    t = np.arange(GRID) / GRID
    vals = phi.real_values(t)
    h = 1.0 / GRID

    def polish(i, sign):
        res = optimize.minimize_scalar(lambda x: sign * float(phi.real_values(x)),
                                       bounds=(t[i] - h, t[i] + h), method="bounded",
                                       options={"xatol": 1e-12})
        return min(sign * vals[i], float(res.fun)) * sign

    lo = polish(int(np.argmin(vals)), 1.0)
    hi = polish(int(np.argmax(vals)), -1.0)
    return lo, hi


def default_omega(total: int, start: Optional[int] = None) -> tuple:
    """Block of ``total`` consecutive integers, centred unless ``start`` is given."""
    if total == 0:
        return ()
    if start is None:
        start = -(total // 2)
    return tuple(range(start, start + total))


@dataclass(frozen=True)
class BasisReport:
    riesz: bool
    riesz_bounds: tuple
    schauder: bool
    m_basis_full: bool
    omega: tuple
    m_basis_after_removal: bool
    cesaro_threshold: Optional[float]
    abel_summable: bool
    profile: SingularityProfile
    notes: tuple = field(default_factory=tuple)

    def summary(self) -> str:
        if self.riesz:
            lo, hi = self.riesz_bounds
            return f"Riesz basis, constants ({lo:.6g},{hi:.6g})"
        return (f"not a basis in any enumeration; M-basis after removing "
                f"{list(self.omega)}; (C,alpha) basis iff alpha > {self.cesaro_threshold:g}")

    def to_json(self) -> dict:
        return {
            "riesz": self.riesz,
            "riesz_bounds": list(self.riesz_bounds),
            "schauder": self.schauder,
            "m_basis_full": self.m_basis_full,
            "omega": list(self.omega),
            "m_basis_after_removal": self.m_basis_after_removal,
            "cesaro_threshold": self.cesaro_threshold,
            "abel_summable": self.abel_summable,
            "profile": self.profile.to_json(),
            "summary": self.summary(),
            "notes": list(self.notes),
        }


def classify(phi: TrigPoly, omega_start: Optional[int] = None, tol: float = 1e-8) -> BasisReport:
    """Basis properties of the shifts of a generator with weight ``phi``.

    Zero orders alone decide: a zero-free weight gives a Riesz basis; a zero
    of order ``2 lambda >= 2`` makes ``1/phi`` non-integrable and the weight
    non-A2, so only the reduced system over ``Z minus Omega`` is an M-basis
    and the ``(C, alpha)`` threshold is ``lambda_0 - 1/2``.
    """
    prof = profile(phi, tol)
    lo, hi = extrema(phi)
    if prof.is_empty:
        return BasisReport(
            riesz=True, riesz_bounds=(lo, hi), schauder=True, m_basis_full=True,
            omega=(), m_basis_after_removal=True, cesaro_threshold=None,
            abel_summable=True, profile=prof,
            notes=("weight bounded above and below: Riesz basis in natural enumeration",))
    omega = default_omega(prof.total, omega_start)
    notes = (
        "weight vanishes: no Riesz basis, weight not in A2, 1/Phi not integrable",
        f"remove |Omega| = {prof.total} consecutive shifts {list(omega)} for an M-basis",
        "Abel-Poisson means of the GF series converge for every f",
    )
    return BasisReport(
        riesz=False, riesz_bounds=(max(lo, 0.0), hi), schauder=False, m_basis_full=False,
        omega=omega, m_basis_after_removal=True, cesaro_threshold=prof.lambda0 - 0.5,
        abel_summable=True, profile=prof, notes=notes)


# -- numerical checks -------------------------------------------------------------

@dataclass(frozen=True)
class SingularityIntegrals:
    eps: tuple
    lower: tuple
    upper: tuple
    diverges: bool
    converges: bool


def singularity_integrals(fact: Factorization, j: int, eps=(1e-2, 1e-3, 1e-4, 1e-5),
                          radius: float = 0.1) -> SingularityIntegrals:
    """Integrability test for the singularity at ``x_j``.

    ``int (x - x_j)^{2(lambda-1)} / Phi`` over ``eps < |x - x_j| < r`` must
    blow up as ``eps -> 0`` while ``int (x - x_j)^{2 lambda} / Phi`` settles.
    """
    x0, lam = fact.profile.points[j]
    others = [x for i, x in enumerate(fact.profile.locations) if i != j]
    for x in others:
        d = min(abs(x - x0), 1 - abs(x - x0))
        radius = min(radius, d / 2)

    def integral(power, e):
        f = lambda u: abs(u) ** power / fact.weight(x0 + u)  # noqa: E731
        a = integrate.quad(f, e, radius, limit=200, epsrel=1e-10)[0]
        b = integrate.quad(f, -radius, -e, limit=200, epsrel=1e-10)[0]
        return a + b

    lower = tuple(integral(2 * (lam - 1), e) for e in eps)
    upper = tuple(integral(2 * lam, e) for e in eps)
    diverges = lower[-1] > 10 * lower[0] and all(b > a for a, b in zip(lower, lower[1:]))
    converges = abs(upper[-1] - upper[-2]) <= 1e-3 * abs(upper[-1])
    return SingularityIntegrals(tuple(eps), lower, upper, diverges, converges)


@dataclass(frozen=True)
class A2Scan:
    levels: tuple
    bounds: tuple
    lower_bound: float
    fails: bool

    @property
    def verdict(self) -> str:
        return "fails" if self.fails else "passes (heuristic)"


def a2_scan(w: Callable, depth: int = 6, base: int = 4, growth_tol: float = 0.02) -> A2Scan:
    """Heuristic Muckenhoupt A2 scan of a 1-periodic weight.

    At level ``d`` the weight is sampled at cell midpoints on ``2^(base+2d)``
    cells and ``avg(w) * avg(1/w)`` is maximised over dyadic intervals of
    length ``2^-j``, ``j <= d`` (aligned and half-shifted).  The resolution
    refines faster than the intervals shrink, so a non-integrable ``1/w``
    shows up as a bound that keeps growing; the verdict is "fails" when the
    last three level-to-level ratios all exceed ``1 + growth_tol``.
    This is a finite family of intervals: a pass is heuristic only.
    """
    bounds = []
    for d in range(depth + 1):
        n = 2 ** (base + 2 * d)
        t = (np.arange(n) + 0.5) / n
        v = np.asarray(w(t), dtype=float)
        if np.any(~np.isfinite(v)) or np.any(v < 0):
            raise ValueError("weight samples must be finite and nonnegative")
        with np.errstate(divide="ignore"):
            inv = np.where(v > 0, 1.0 / np.where(v > 0, v, 1.0), np.inf)
        best = 0.0
        for j in range(d + 1):
            cells = n >> j
            for shift in (0, cells // 2):
                a = np.roll(v, -shift).reshape(-1, cells).mean(axis=1)
                b = np.roll(inv, -shift).reshape(-1, cells).mean(axis=1)
                best = max(best, float(np.max(a * b)))
        bounds.append(best)
    fails = False
    if any(np.isinf(bounds)):
        fails = True
    elif len(bounds) >= 4:
        ratios = [b / a for a, b in zip(bounds[-4:], bounds[-3:])]
        fails = all(r > 1 + growth_tol for r in ratios)
    return A2Scan(tuple(range(depth + 1)), tuple(bounds), bounds[-1], fails)
