"""Generator specification files and builtin generators.

A generator file is JSON, either explicit::

    {"breakpoints": [0, "1/2", 1], "pieces": [[0, 2], [1, -2]]}

(piece coefficients in ascending powers of ``t - breakpoint``; complex
numbers as ``[re, im]``; strings such as ``"1/3"`` are exact rationals) or a
builtin::

    {"builtin": "bspline", "order": 3}
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Union

from .piecewise import PiecewiseFn, box, bspline, hat, psi1
from .trigpoly import TrigPoly

BSPLINE_MAX_ORDER = 8

# Closed forms of the weights of the builtin fixtures as commonly quoted:
# Phi = a * (trig polynomial shape); used to cross-check derived constants.
PUBLISHED_WEIGHTS = {
    "box": {"shape": {0: 1.0}, "a": 1.0, "form": "1"},
    "hat": {"shape": {0: 2.0, 1: 0.5, -1: 0.5}, "a": 1.0 / 3.0, "form": "(2 + cos 2 pi t) / 3"},
    "psi1": {"shape": {0: 0.5, 1: -0.25, -1: -0.25}, "a": 16.0 / 3.0, "form": "16/3 sin^2 pi t"},
}


class GeneratorSpecError(ValueError):
    """Malformed generator specification."""


def builtin(name: str, order: int | None = None) -> PiecewiseFn:
    """``box``, ``hat``, ``psi1`` or ``bspline`` (also ``"bspline:m"``)."""
    if ":" in name:
        name, _, rest = name.partition(":")
        try:
            order = int(rest)
        except ValueError as exc:
            raise GeneratorSpecError(f"bad bspline order {rest!r}") from exc
    if name == "box":
        return box()
    if name == "hat":
        return hat()
    if name == "psi1":
        return psi1()
    if name == "bspline":
        if order is None or not 1 <= order <= BSPLINE_MAX_ORDER:
            raise GeneratorSpecError(f"bspline order must be in 1..{BSPLINE_MAX_ORDER}")
        return bspline(order)
    raise GeneratorSpecError(f"unknown builtin generator {name!r}")


def _number(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise GeneratorSpecError("complex numbers are written [re, im]")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError as exc:
            raise GeneratorSpecError(f"not a rational number: {v!r}") from exc
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise GeneratorSpecError(f"not a number: {v!r}")
    return Fraction(v) if isinstance(v, int) else float(v)


def generator_from_dict(spec: Mapping) -> PiecewiseFn:
    if not isinstance(spec, Mapping):
        raise GeneratorSpecError("generator spec must be a JSON object")
    if "builtin" in spec:
        extra = set(spec) - {"builtin", "order"}
        if extra:
            raise GeneratorSpecError(f"unknown keys {sorted(extra)}")
        return builtin(str(spec["builtin"]), spec.get("order"))
    extra = set(spec) - {"breakpoints", "pieces"}
    if extra:
        raise GeneratorSpecError(f"unknown keys {sorted(extra)}")
    try:
        bps = [_number(b) for b in spec["breakpoints"]]
        pieces = [[_number(c) for c in p] for p in spec["pieces"]]
    except KeyError as exc:
        raise GeneratorSpecError(f"missing key {exc}") from exc
    if len(bps) < 2:
        raise GeneratorSpecError("need at least two breakpoints")
    try:
        return PiecewiseFn.make(bps, pieces)
    except (ValueError, TypeError) as exc:
        raise GeneratorSpecError(str(exc)) from exc


def load_generator(path: Union[str, Path]) -> PiecewiseFn:
    try:
        spec = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GeneratorSpecError(f"{path}: {exc}") from exc
    return generator_from_dict(spec)


def load_symbol(path: Union[str, Path]) -> TrigPoly:
    try:
        return TrigPoly.from_json(json.loads(Path(path).read_text()))
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise GeneratorSpecError(f"{path}: bad symbol file ({exc})") from exc


def compare_published(name: str, phi: TrigPoly, tol: float = 1e-9) -> dict | None:
    """Fit ``phi = a * shape`` for a builtin with a quoted closed form and
    report whether the derived ``a`` agrees with the quoted one."""
    ref = PUBLISHED_WEIGHTS.get(name)
    if ref is None:
        return None
    shape = TrigPoly.from_dict(ref["shape"])
    a = phi.coeff(0).real / shape.coeff(0).real
    same_form = (phi - shape * a).max_abs() <= tol * max(1.0, abs(a))
    return {
        "quoted_form": ref["form"],
        "quoted_constant": ref["a"],
        "derived_constant": a,
        "same_functional_form": bool(same_form),
        "constant_agrees": bool(same_form and abs(a - ref["a"]) <= tol * max(1.0, abs(a))),
    }
