"""1-periodic trigonometric (Laurent) polynomials ``t -> sum_k c_k e^{2 pi i k t}``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np


class RootConditioningError(ArithmeticError):
    """Root locations or multiplicities could not be resolved within tolerance."""


class DivisionRemainderError(ArithmeticError):
    """Laurent division left a remainder above tolerance."""


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Dense Laurent coefficients; ``coeffs[i]`` is the amplitude of
    frequency ``offset + i``.  The zero polynomial has empty ``coeffs``."""

    offset: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c = np.zeros(0, dtype=complex)
            off = 0
        else:
            off = int(self.offset) + int(nz[0])
            c = c[nz[0]:nz[-1] + 1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offset", off)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex]) -> "TrigPoly":
        coeffs = {int(k): v for k, v in coeffs.items()}
        if not coeffs:
            return cls.zero()
        lo, hi = min(coeffs), max(coeffs)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in coeffs.items():
            arr[k - lo] += complex(v)
        return cls(lo, arr)

    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls(0, np.zeros(0, dtype=complex))

    @classmethod
    def constant(cls, c) -> "TrigPoly":
        return cls(0, np.array([c], dtype=complex))

    @classmethod
    def monomial(cls, k: int, c=1.0) -> "TrigPoly":
        return cls(int(k), np.array([c], dtype=complex))

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def kmin(self) -> int:
        return self.offset

    @property
    def kmax(self) -> int:
        return self.offset + self.coeffs.size - 1

    @property
    def degree(self) -> int:
        """``max |k|`` over the support; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(abs(self.kmin), abs(self.kmax))

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.coeffs.size)

    def coeff(self, k: int) -> complex:
        i = k - self.offset
        if 0 <= i < self.coeffs.size:
            return complex(self.coeffs[i])
        return 0j

    def as_dict(self) -> dict:
        return {int(k): complex(c) for k, c in zip(self.frequencies, self.coeffs) if c != 0}

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of frequencies ``lo..hi`` as a dense array."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        if self.is_zero:
            return out
        a, b = max(lo, self.kmin), min(hi, self.kmax)
        if a <= b:
            out[a - lo:b - lo + 1] = self.coeffs[a - self.offset:b - self.offset + 1]
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def l1(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def is_real_valued(self, tol: float = 0.0) -> bool:
        """``c_{-k} == conj(c_k)`` for all ``k`` (to ``tol``)."""
        return bool(np.all(np.abs(self.coeffs_map_diff()) <= tol * max(1.0, self.max_abs())))

    def coeffs_map_diff(self) -> np.ndarray:
        if self.is_zero:
            return np.zeros(0)
        d = self.degree
        w = self.window(-d, d)
        return w - np.conj(w[::-1])

    def allclose(self, other: "TrigPoly", atol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= atol

    # -- evaluation --------------------------------------------------------

    def __call__(self, t, derivative: int = 0):
        t = np.asarray(t, dtype=float)
        if self.is_zero:
            out = np.zeros(t.shape, dtype=complex)
        else:
            ks = self.frequencies
            c = self.coeffs * (2j * np.pi * ks) ** derivative if derivative else self.coeffs
            # reduce t mod 1 so large arguments keep full phase accuracy
            tt = np.mod(t, 1.0)
            out = np.exp(2j * np.pi * np.multiply.outer(tt, ks)) @ c
        return out[()] if out.ndim == 0 else out

    def real_values(self, t):
        return np.real(self(t))

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.constant(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = min(self.kmin, other.kmin), max(self.kmax, other.kmax)
        return TrigPoly(lo, self.window(lo, hi) + other.window(lo, hi))

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(self.offset, -self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            if self.is_zero or other.is_zero:
                return TrigPoly.zero()
            return TrigPoly(self.offset + other.offset, np.convolve(self.coeffs, other.coeffs))
        return TrigPoly(self.offset, self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, s):
        return TrigPoly(self.offset, self.coeffs / complex(s))

    def __pow__(self, n: int):
        out = TrigPoly.constant(1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    def conj(self) -> "TrigPoly":
        """The polynomial ``t -> conj(p(t))``."""
        if self.is_zero:
            return self
        return TrigPoly(-self.kmax, np.conj(self.coeffs[::-1]))

    def abs2(self) -> "TrigPoly":
        """``|p|^2`` as a trigonometric polynomial."""
        return self * self.conj()

    def derivative(self, order: int = 1) -> "TrigPoly":
        if self.is_zero or order == 0:
            return self
        return TrigPoly(self.offset, self.coeffs * (2j * np.pi * self.frequencies) ** order)

    def modulate(self, m: int) -> "TrigPoly":
        """Multiply by ``e^{2 pi i m t}``."""
        return TrigPoly(self.offset + int(m), self.coeffs)

    def real_part(self) -> "TrigPoly":
        """Symmetrise so the result is exactly real valued."""
        return (self + self.conj()) / 2

    def chop(self, tol: float) -> "TrigPoly":
        c = self.coeffs.copy()
        c[np.abs(c) <= tol] = 0
        return TrigPoly(self.offset, c)

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": {str(k): [c.real, c.imag] for k, c in self.as_dict().items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "TrigPoly":
        raw = data["coeffs"]
        out = {}
        for k, v in raw.items():
            if isinstance(v, (list, tuple)):
                if len(v) != 2:
                    raise ValueError(f"coefficient for {k} must be [re, im]")
                out[int(k)] = complex(float(v[0]), float(v[1]))
            else:
                out[int(k)] = complex(v)
        return cls.from_dict(out)

    def __repr__(self):
        terms = ", ".join(f"{k}: {c:.6g}" for k, c in self.as_dict().items())
        return f"TrigPoly({{{terms}}})"


def pair(p: TrigPoly, q: TrigPoly) -> complex:
    """``int_0^1 p(t) conj(q(t)) dt = sum_k p_k conj(q_k)``."""
    if p.is_zero or q.is_zero:
        return 0j
    lo, hi = max(p.kmin, q.kmin), min(p.kmax, q.kmax)
    if lo > hi:
        return 0j
    return complex(np.vdot(q.window(lo, hi), p.window(lo, hi)))


def weighted_norm2(h: TrigPoly, weight: TrigPoly) -> float:
    """``int |h|^2 w`` for a real valued weight trigonometric polynomial."""
    return float(pair(h * weight, h).real)


def sin2(x0: float) -> TrigPoly:
    """``sin^2 pi (t - x0)`` as a trigonometric polynomial."""
    z0 = np.exp(2j * np.pi * x0)
    return TrigPoly(-1, np.array([-z0 / 4, 0.5, -np.conj(z0) / 4]))


def sin_power(x0: float, m: int) -> TrigPoly:
    """``sin^m pi (t - x0)`` for even ``m``."""
    if m % 2:
        raise ValueError("only even powers have integer frequencies")
    return sin2(x0) ** (m // 2)


class RootOnTorus(NamedTuple):
    location: float
    multiplicity: int


def _derivative_scales(p: TrigPoly, order: int) -> float:
    ks = p.frequencies
    return float(np.sum(np.abs(p.coeffs) * np.abs(2 * np.pi * ks) ** order))


def zero_order(p: TrigPoly, x0: float, tol: float = 1e-8, max_order: int | None = None) -> int:
    """Order of the zero of ``p`` at ``x0`` by derivative counting.

    The first ``m`` with ``|p^(m)(x0)| > tol * sum_k |c_k| |2 pi k|^m`` is the
    multiplicity.
    """
    if max_order is None:
        max_order = p.kmax - p.kmin
    for m in range(max_order + 1):
        scale = _derivative_scales(p, m)
        if scale == 0:
            continue
        if abs(p(x0, derivative=m)) > tol * scale:
            return m
    return max_order + 1


def _refine(p: TrigPoly, x: float, m: int, steps: int = 8) -> float:
    # Newton on p^(m-1), whose zero at x is simple
    if m == 0:
        return x
    for _ in range(steps):
        f = p(x, derivative=m - 1)
        g = p(x, derivative=m)
        if g == 0:
            break
        dx = (f / g).real
        if not np.isfinite(dx) or abs(dx) > 1e-3:
            break
        x_new = x - dx
        if abs(p(x_new, derivative=m - 1)) >= abs(f):
            break
        x = x_new
        if abs(dx) < 1e-16:
            break
    return x


def roots_on_torus(p: TrigPoly, tol: float = 1e-8, cluster_radius: float = 0.02) -> list[RootOnTorus]:
    """Zeros of ``p`` on [0, 1) with multiplicities.

    Roots of the algebraic polynomial ``z^{-kmin} p(z)`` (``z = e^{2 pi i t}``)
    are found from the companion matrix.  Roots near the unit circle are
    clustered (a multiplicity ``m`` root splits into ``m`` nearby roots of
    size ``eps^(1/m)``), each cluster centroid is refined by Newton's method
    on ``p^(m-1)`` and its multiplicity re-counted from derivatives.
    A disagreement between cluster size and derivative count raises
    :class:`RootConditioningError`.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    # end coefficients at rounding level would send companion roots to 0 or inf
    c = p.coeffs
    keep = np.flatnonzero(np.abs(c) > 4 * np.finfo(float).eps * p.l1())
    c = c[keep[0]:keep[-1] + 1]
    if c.size == 1:
        return []
    roots = np.roots(c[::-1])
    near = roots[np.abs(np.abs(roots) - 1.0) < cluster_radius]
    clusters: list[list[complex]] = []
    for z in near:
        for cl in clusters:
            if min(abs(z - w) for w in cl) < cluster_radius:
                cl.append(z)
                break
        else:
            clusters.append([z])
    # merge clusters chained through later members
    merged = True
    while merged:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                if min(abs(a - b) for a in clusters[i] for b in clusters[j]) < cluster_radius:
                    clusters[i].extend(clusters.pop(j))
                    merged = True
                    break
            if merged:
                break

    out = []
    for cl in clusters:
        c = np.mean(cl)
        x = float(np.mod(np.angle(c) / (2 * np.pi), 1.0))
        size = len(cl)
        x = _refine(p, x, size)
        m = zero_order(p, x, tol, max_order=size + 1)
        if m == 0:
            continue  # off-circle pair, p stays away from zero
        if m != size:
            # a pair of off-circle roots r e^{i theta}, e^{i theta}/r counts twice
            # but only evaluates as a near-zero; accept the derivative count if
            # the cluster is not centred on the circle
            if abs(abs(c) - 1.0) < 1e-6 or m > size:
                raise RootConditioningError(
                    f"cluster of {size} roots near t={x:.6g} but derivative count gives {m}")
        x = float(np.mod(x, 1.0))
        if x > 1.0 - 1e-15:
            x = 0.0
        out.append(RootOnTorus(x, m))
    out.sort(key=lambda r: r.location)
    return out


def divide_out(p: TrigPoly, x0: float, m: int, tol: float = 1e-9) -> TrigPoly:
    """Return ``q`` with ``p = sin^m pi(. - x0) * q``.

    ``sin^m pi(t - x0) = (-1/4)^{m/2} conj(z0)^{m/2} z^{-m/2} (z - z0)^m``
    with ``z0 = e^{2 pi i x0}``, so the division is ``m`` synthetic divisions
    by ``(z - z0)``.  Each remainder must stay below ``tol * sum |c_k|``.
    """
    if m < 0 or m % 2:
        raise ValueError("m must be a non-negative even integer")
    if m == 0:
        return p
    if p.is_zero:
        return p
    z0 = np.exp(2j * np.pi * x0)
    scale = p.l1()
    a = p.coeffs[::-1].copy()  # descending powers of z
    for _ in range(m):
        if a.size <= 1:
            raise DivisionRemainderError("polynomial degree smaller than divisor")
        out = np.empty(a.size - 1, dtype=complex)
        acc = 0j
        for i in range(a.size - 1):
            acc = acc * z0 + a[i]
            out[i] = acc
        rem = acc * z0 + a[-1]
        if abs(rem) > tol * scale:
            raise DivisionRemainderError(
                f"remainder {abs(rem):.3g} at x0={x0:.6g}: zero of order < {m}")
        a = out
    half = m // 2
    factor = (-0.25) ** half * np.conj(z0) ** half
    q = TrigPoly(p.offset + half, a[::-1] / factor)
    if p.is_real_valued(1e-12):
        q = q.real_part()
    return q
