"""Exact calculus for compactly supported piecewise polynomials.

A :class:`PiecewiseFn` stores strictly increasing breakpoints and, for each
interval ``[b_i, b_{i+1})``, the coefficients of a polynomial in the *local*
variable ``x = t - b_i`` (ascending powers).  Local coordinates keep shifts
free and dilations exact, and avoid the conditioning problems of a global
monomial basis far from the origin.

Breakpoints and coefficients are kept as :class:`fractions.Fraction` whenever
the inputs are rational, so the fixtures built from ``box`` are exact; float
or complex inputs silently fall back to floating point arithmetic.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Number, Rational
from typing import Iterable, Sequence

import numpy as np

D_MAX = 16
FLOAT_MERGE_TOL = 1e-12


class DegreeOverflowError(ValueError):
    """A piece polynomial exceeds the configured degree cap."""


def as_exact(x):
    """Convert ``x`` to a Fraction when it is rational, otherwise leave it."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        return x.real if x.imag == 0 else x
    if isinstance(x, np.integer):
        return Fraction(int(x))
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


def _conj(c):
    return c.conjugate()


# -- polynomial helpers on plain lists (ascending powers) ---------------------

def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pscale(a: Sequence, s) -> list:
    return [s * c for c in a]


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _prebase(a: Sequence, d) -> list:
    """Coefficients of ``x -> p(x + d)``."""
    if d == 0 or len(a) <= 1:
        return list(a)
    n = len(a)
    out = [0] * n
    for j in range(n):
        s = 0
        dp = 1
        for m in range(j, n):
            s += a[m] * math.comb(m, j) * dp
            dp *= d
        out[j] = s
    return out


def _pdilate(a: Sequence, s) -> list:
    """Coefficients of ``x -> p(s * x)``."""
    out = []
    sp = 1
    for c in a:
        out.append(c * sp)
        sp *= s
    return out


def _pintegral(a: Sequence, length) -> object:
    """``int_0^length p(x) dx``."""
    total = 0
    lp = length
    for n, c in enumerate(a):
        if c != 0:
            total += c * lp / (n + 1)
        lp *= length
    return total


def _ppow_linear(alpha, beta, k: int) -> list:
    """Coefficients of ``(alpha + beta * tau) ** k`` in ``tau``."""
    out = [0] * (k + 1)
    for j in range(k + 1):
        out[j] = math.comb(k, j) * alpha ** (k - j) * beta ** j
    return out


def _merge_points(points: Iterable) -> list:
    pts = sorted(set(points), key=float)
    if not pts:
        return []
    merged = [pts[0]]
    for p in pts[1:]:
        prev = merged[-1]
        if _is_exact(p) and _is_exact(prev):
            if p != prev:
                merged.append(p)
        elif abs(float(p) - float(prev)) > FLOAT_MERGE_TOL * max(1.0, abs(float(p))):
            merged.append(p)
    return merged


def _zero_tol(pieces: Sequence[Sequence]) -> float:
    scale = 0.0
    for p in pieces:
        for c in p:
            if not _is_exact(c):
                scale = max(scale, abs(c))
    return 1e-14 * scale


def _is_zero_poly(p: Sequence, atol: float) -> bool:
    return all((c == 0) if _is_exact(c) else abs(c) <= atol for c in p)


@dataclass(frozen=True)
class PiecewiseFn:
    """Compactly supported piecewise polynomial on the real line.

    Use :meth:`make` rather than the raw constructor; it converts inputs,
    prunes zero pieces at the ends of the support and merges adjacent pieces
    carrying the same polynomial.
    """

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        if len(self.breakpoints) == 0:
            if self.pieces:
                raise ValueError("pieces given without breakpoints")
            return
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("need exactly one piece per interval")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not b > a:
                raise ValueError("breakpoints must be strictly increasing")
        for p in self.pieces:
            if len(p) - 1 > D_MAX:
                raise DegreeOverflowError(
                    f"piece degree {len(p) - 1} exceeds D_MAX={D_MAX}")

    @classmethod
    def make(cls, breakpoints: Sequence, pieces: Sequence[Sequence]) -> "PiecewiseFn":
        bps = [as_exact(b) for b in breakpoints]
        for b in bps:
            if isinstance(b, complex):
                raise TypeError("breakpoints must be real")
        polys = [_trim([as_exact(c) for c in p]) for p in pieces]
        if len(bps) and len(polys) != len(bps) - 1:
            raise ValueError("need exactly one piece per interval")
        for p in polys:
            if len(p) - 1 > D_MAX:
                raise DegreeOverflowError(
                    f"piece degree {len(p) - 1} exceeds D_MAX={D_MAX}")
        return cls._normalized(bps, polys)

    @classmethod
    def zero(cls) -> "PiecewiseFn":
        return cls((), ())

    @classmethod
    def _normalized(cls, bps: list, polys: list) -> "PiecewiseFn":
        atol = _zero_tol(polys)
        polys = [[] if _is_zero_poly(p, atol) else _trim(p) for p in polys]
        lo, hi = 0, len(polys)
        while lo < hi and not polys[lo]:
            lo += 1
        while hi > lo and not polys[hi - 1]:
            hi -= 1
        if lo == hi:
            return cls.zero()
        bps = bps[lo:hi + 1]
        polys = polys[lo:hi]
        # merge neighbours that continue the same polynomial
        out_b, out_p = [bps[0]], [polys[0]]
        for i in range(1, len(polys)):
            prev = out_p[-1]
            cont = _prebase(prev, bps[i] - out_b[-1])
            cur = polys[i]
            if _is_zero_poly(_padd(cont, _pscale(cur, -1)), atol):
                continue
            out_b.append(bps[i])
            out_p.append(cur)
        out_b.append(bps[-1])
        return cls(tuple(out_b), tuple(tuple(p) for p in out_p))

    # -- basic properties ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def support(self):
        if self.is_zero:
            return None
        return (self.breakpoints[0], self.breakpoints[-1])

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.pieces), default=-1)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(c, complex) for p in self.pieces for c in p)

    @cached_property
    def _float_breaks(self) -> np.ndarray:
        return np.array([float(b) for b in self.breakpoints])

    @cached_property
    def _complex_pieces(self) -> list:
        return [np.array([complex(c) for c in p] or [0j]) for p in self.pieces]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        if not self.is_zero:
            bks = self._float_breaks
            idx = np.searchsorted(bks, t, side="right") - 1
            inside = (idx >= 0) & (idx < len(self.pieces))
            for i, coeffs in enumerate(self._complex_pieces):
                mask = inside & (idx == i)
                if np.any(mask):
                    x = t[mask] - bks[i]
                    out[mask] = np.polynomial.polynomial.polyval(x, coeffs)
        if self.is_real:
            out = out.real
        return out[()] if out.ndim == 0 else out

    def integral(self):
        """Exact ``int f``."""
        total = 0
        for i, p in enumerate(self.pieces):
            total += _pintegral(p, self.breakpoints[i + 1] - self.breakpoints[i])
        return total

    def restrict(self, grid: Sequence) -> list:
        """Local polynomials of ``self`` on each interval of ``grid``.

        ``grid`` must refine the breakpoints of ``self`` on its support.
        """
        out = []
        for u in grid[:-1]:
            i = bisect.bisect_right(self._float_breaks, float(u)) - 1
            # guard against float merges that land a hair below a breakpoint
            if 0 <= i + 1 < len(self.breakpoints) and abs(
                    float(self.breakpoints[i + 1]) - float(u)) <= FLOAT_MERGE_TOL * max(1.0, abs(float(u))):
                i += 1
            if i < 0 or i >= len(self.pieces):
                out.append([])
            else:
                out.append(_prebase(list(self.pieces[i]), u - self.breakpoints[i]))
        return out

    def __add__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return combine([1, 1], [self, other])

    def __sub__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return combine([1, -1], [self, other])

    def __neg__(self) -> "PiecewiseFn":
        return combine([-1], [self])

    def __mul__(self, s) -> "PiecewiseFn":
        if isinstance(s, PiecewiseFn):
            return NotImplemented
        return combine([s], [self])

    __rmul__ = __mul__

    def shift(self, k) -> "PiecewiseFn":
        """``t -> f(t + k)``."""
        return shift_dilate(self, 1, -as_exact(k))

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else int(c)
            if isinstance(c, complex):
                return [c.real, c.imag]
            return c
        return {"breakpoints": [enc(b) for b in self.breakpoints],
                "pieces": [[enc(c) for c in p] for p in self.pieces]}


# -- builders -----------------------------------------------------------------

def box() -> PiecewiseFn:
    """Indicator function of [0, 1]."""
    return PiecewiseFn.make([0, 1], [[1]])


def hat() -> PiecewiseFn:
    """``box * box``: the linear B-spline supported on [0, 2]."""
    return convolve(box(), box())


def psi1() -> PiecewiseFn:
    """``hat(2t) - hat(2t - 2)``."""
    h = hat()
    return combine([1, -1], [shift_dilate(h, 2, 0), shift_dilate(h, 2, 2)])


def bspline(order: int) -> PiecewiseFn:
    """``order``-fold convolution of the box; ``bspline(2) == hat()``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    f = box()
    for _ in range(order - 1):
        f = convolve(f, box())
    return f


# -- operations ---------------------------------------------------------------

def shift_dilate(f: PiecewiseFn, scale, shift) -> PiecewiseFn:
    """Return ``t -> f(scale * t - shift)``."""
    scale = as_exact(scale)
    shift = as_exact(shift)
    if isinstance(scale, complex) or isinstance(shift, complex):
        raise TypeError("scale and shift must be real")
    if not scale > 0:
        raise ValueError("scale must be positive")
    if f.is_zero:
        return f
    bps = [(b + shift) / scale for b in f.breakpoints]
    polys = [_pdilate(p, scale) for p in f.pieces]
    return PiecewiseFn(tuple(bps), tuple(tuple(p) for p in polys))


def combine(coeffs: Sequence, fns: Sequence[PiecewiseFn]) -> PiecewiseFn:
    """Exact linear combination ``sum_i coeffs[i] * fns[i]``."""
    if len(coeffs) != len(fns):
        raise ValueError("coeffs and fns must have equal length")
    coeffs = [as_exact(c) for c in coeffs]
    grid = _merge_points(b for f, c in zip(fns, coeffs) if c != 0 for b in f.breakpoints)
    if len(grid) < 2:
        return PiecewiseFn.zero()
    polys = [[] for _ in range(len(grid) - 1)]
    for c, f in zip(coeffs, fns):
        if c == 0 or f.is_zero:
            continue
        for i, p in enumerate(f.restrict(grid)):
            if p:
                polys[i] = _padd(polys[i], _pscale(p, c))
    return PiecewiseFn._normalized(grid, polys)


def _convolve_pieces(p: list, q: list, l1, l2):
    """Convolution of ``p`` on [0, l1] with ``q`` on [0, l2].

    Returns ``(taus, polys)``: sub-interval endpoints in ``tau`` (offset from
    the sum of the left endpoints) and local polynomials on each.
    """
    taus = _merge_points([0, min(l1, l2), max(l1, l2), l1 + l2])
    # integrand p(x) q(tau - x) = sum_{n,m,r} p_n q_m C(m,r) (-1)^r tau^(m-r) x^(n+r)
    terms = {}
    for n, pn in enumerate(p):
        if pn == 0:
            continue
        for m, qm in enumerate(q):
            if qm == 0:
                continue
            for r in range(m + 1):
                c = pn * qm * math.comb(m, r) * (-1) ** r
                key = (m - r, n + r)
                terms[key] = terms.get(key, 0) + c
    polys = []
    for a, b in zip(taus, taus[1:]):
        mid = (a + b) / 2
        # limits x in [lo, hi], each linear in tau: (alpha, beta)
        lo = (0, 0) if mid <= l2 else (-l2, 1)
        hi = (0, 1) if mid <= l1 else (l1, 0)
        poly = []
        for (tp, xp), c in terms.items():
            up = _ppow_linear(hi[0], hi[1], xp + 1)
            dn = _ppow_linear(lo[0], lo[1], xp + 1)
            diff = _padd(up, _pscale(dn, -1))
            contrib = _pmul([0] * tp + [1], _pscale(diff, c / (xp + 1)))
            poly = _padd(poly, contrib)
        polys.append(_prebase(poly, a))
    return taus, polys


def convolve(f: PiecewiseFn, g: PiecewiseFn) -> PiecewiseFn:
    """Exact convolution ``(f * g)(t) = int f(s) g(t - s) ds``."""
    if f.is_zero or g.is_zero:
        return PiecewiseFn.zero()
    if f.degree + g.degree + 1 > D_MAX:
        raise DegreeOverflowError(
            f"convolution degree {f.degree + g.degree + 1} exceeds D_MAX={D_MAX}")
    chunks = []
    for i, p in enumerate(f.pieces):
        a0, a1 = f.breakpoints[i], f.breakpoints[i + 1]
        for j, q in enumerate(g.pieces):
            b0, b1 = g.breakpoints[j], g.breakpoints[j + 1]
            taus, polys = _convolve_pieces(list(p), list(q), a1 - a0, b1 - b0)
            base = a0 + b0
            bps = [base + t for t in taus]
            chunks.append(PiecewiseFn(tuple(bps), tuple(tuple(x) for x in polys)))
    return combine([1] * len(chunks), chunks)


def inner_product(f: PiecewiseFn, g: PiecewiseFn, k=0):
    """Exact ``int f(t) * conj(g(t + k)) dt``."""
    gk = g.shift(k)
    if f.is_zero or gk.is_zero:
        return 0
    lo = max(float(f.breakpoints[0]), float(gk.breakpoints[0]))
    hi = min(float(f.breakpoints[-1]), float(gk.breakpoints[-1]))
    if hi <= lo:
        return 0
    grid = _merge_points(list(f.breakpoints) + list(gk.breakpoints))
    pf = f.restrict(grid)
    pg = gk.restrict(grid)
    total = 0
    for i in range(len(grid) - 1):
        if pf[i] and pg[i]:
            prod = _pmul(pf[i], [_conj(c) for c in pg[i]])
            total += _pintegral(prod, grid[i + 1] - grid[i])
    return total


# -- Fourier transform --------------------------------------------------------

_SERIES_TERMS = 90


def _piece_ft_closed(coeffs: np.ndarray, length: float, omega: np.ndarray) -> np.ndarray:
    # int_0^L p(x) e^{-i w x} dx = sum_j [p^(j)(0) - e^{-i w L} p^(j)(L)] / (i w)^(j+1)
    e = np.exp(-1j * omega * length)
    total = np.zeros(omega.shape, dtype=complex)
    d = coeffs.copy()
    iw = 1j * omega
    denom = iw.copy()
    P = np.polynomial.polynomial
    for _ in range(len(coeffs)):
        total += (d[0] - e * P.polyval(length, d)) / denom
        d = P.polyder(d) if len(d) > 1 else np.zeros(1, dtype=complex)
        if not np.any(d):
            break
        denom = denom * iw
    return total


def _piece_ft_series(coeffs: np.ndarray, length: float, omega: np.ndarray) -> np.ndarray:
    # sum_n p_n L^(n+1) sum_m (-i w L)^m / m! / (n+m+1)
    z = -1j * omega * length
    total = np.zeros(omega.shape, dtype=complex)
    term = np.ones(omega.shape, dtype=complex)
    lp = np.array([length ** (n + 1) for n in range(len(coeffs))])
    weights = coeffs * lp
    for m in range(_SERIES_TERMS):
        s = sum(w / (n + m + 1) for n, w in enumerate(weights))
        total += term * s
        term = term * z / (m + 1)
        if m > 8 and np.all(np.abs(term) < 1e-18):
            break
    return total


def fourier(f: PiecewiseFn, xi):
    """Fourier transform ``int f(x) exp(-2 pi i x xi) dx`` in closed form.

    Each piece is integrated by repeated integration by parts.  When
    ``|2 pi xi| * length`` is small the closed form cancels badly, so a
    Taylor series in ``xi`` is used there instead (always for ``|xi| < 1e-3``).
    """
    xi = np.asarray(xi, dtype=float)
    out = np.zeros(xi.shape, dtype=complex)
    omega = 2 * np.pi * xi
    bks = f._float_breaks if not f.is_zero else ()
    for i, coeffs in enumerate(f._complex_pieces):
        a = bks[i]
        length = bks[i + 1] - a
        deg = len(coeffs) - 1
        radius = max(2.0, deg + 2.0)
        small = (np.abs(omega) * length < radius) | (np.abs(xi) < 1e-3)
        val = np.empty(xi.shape, dtype=complex)
        if np.any(small):
            val[small] = _piece_ft_series(coeffs, length, omega[small])
        if np.any(~small):
            val[~small] = _piece_ft_closed(coeffs, length, omega[~small])
        out += np.exp(-1j * omega * a) * val
    return out[()] if out.ndim == 0 else out


def decay_order(f: PiecewiseFn) -> int:
    """Smallest ``p`` with ``|f^(xi)| = O(|xi|^-p)``: one plus the order of
    the first derivative with a jump."""
    if f.is_zero:
        return 10 ** 6
    grid = list(f.breakpoints)
    n = D_MAX + 1
    for d in range(n):
        for i, b in enumerate(grid):
            left = _deriv_at(f, i - 1, b, d, from_left=True)
            right = _deriv_at(f, i, b, d, from_left=False)
            if abs(complex(left - right)) > 1e-12:
                return d + 1
    return n


def _deriv_at(f: PiecewiseFn, i: int, b, d: int, from_left: bool):
    if i < 0 or i >= len(f.pieces):
        return 0
    p = list(f.pieces[i])
    x = b - f.breakpoints[i]
    val = 0
    for n in range(d, len(p)):
        val += p[n] * math.perm(n, d) * x ** (n - d)
    return val


def ft_bound_constant(f: PiecewiseFn) -> float:
    """Constant ``C`` with ``|f^(xi)| <= C |xi|^-p`` for all ``xi != 0``.

    With ``p = decay_order(f)``, integrating by parts ``p`` times gives
    ``|f^(xi)| <= V / (2 pi |xi|)^p`` where ``V`` is the total variation of
    ``f^(p-1)`` (jumps plus the integral of ``|f^(p)|``).
    """
    p = decay_order(f)
    var = 0.0
    for i, b in enumerate(f.breakpoints):
        left = _deriv_at(f, i - 1, b, p - 1, from_left=True)
        right = _deriv_at(f, i, b, p - 1, from_left=False)
        var += abs(complex(left - right))
    for i, piece in enumerate(f.pieces):
        coeffs = np.array([complex(c) for c in piece])
        dp = np.polynomial.polynomial.polyder(coeffs, p) if len(coeffs) > p else np.zeros(1)
        length = float(f.breakpoints[i + 1] - f.breakpoints[i])
        xs = np.linspace(0.0, length, 257)
        vals = np.abs(np.polynomial.polynomial.polyval(xs, dp))
        var += float(np.trapezoid(vals, xs)) * 1.01 + 1e-300
    return var / (2 * np.pi) ** p


def period_of_spectrum(f: PiecewiseFn) -> int:
    """Period ``q`` of the oscillating factors ``exp(-2 pi i xi b)`` in ``f^``:
    the common denominator of the breakpoints, or 1 for float breakpoints."""
    q = 1
    for b in f.breakpoints:
        if isinstance(b, Fraction):
            q = q * b.denominator // math.gcd(q, b.denominator)
        else:
            return 1
    return q
