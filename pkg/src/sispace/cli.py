"""``sispace`` command line: generator specs in, JSON/CSV/markdown out.

Exit codes: 0 ok, 1 bad configuration, 2 bad generator spec, 3 a numeric
check exceeded its tolerance, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .analysis import NotNonnegativeError, classify, factorize, profile
from .bracket import (autocorrelation, autocorrelation_exact, second_derivative_relation,
                      verify_identity_kar1, verify_identity_kar2)
from .dual import (biorthogonality_check, build_dual, regular_biorthogonality, regular_dual)
from .generators import (GeneratorSpecError, builtin, compare_published, load_generator,
                         load_symbol)
from .orthonorm import OrthoGenerator, check_onb
from .piecewise import DegreeOverflowError, PiecewiseFn
from .summation import (ReconstructionReport, abel_sweep, cesaro_sweep, operator_growth_scan)
from .trigpoly import TrigPoly

SCHEMA_VERSION = "1"
COMMANDS = ("analyze", "dual", "reconstruct", "identities", "orthonormalize", "report")

EXIT_OK, EXIT_CONFIG, EXIT_SPEC, EXIT_NUMERIC, EXIT_INTERNAL = 0, 1, 2, 3, 4

log = logging.getLogger("sispace")


class ConfigError(ValueError):
    pass


class ToleranceFailure(ArithmeticError):
    """Outputs were written but a check exceeded ``--tol``."""


# symbol h = e_3 + 0.5 e_{-2}, the default test function for reconstruction
DEFAULT_SYMBOL = {"coeffs": {"3": [1.0, 0.0], "-2": [0.5, 0.0]}}


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    builtin: Optional[str] = None
    f: Optional[str] = None
    out_dir: Optional[str] = None
    format: str = "json"
    seed: int = 42
    tol: float = 1e-6
    K: Optional[int] = None  # per-command default: 10^4 for sums, 64 for the dual
    range: int = 8
    alpha: list = field(default_factory=lambda: [1.0])
    r_list: list = field(default_factory=lambda: [0.5, 0.9, 0.99, 0.999])
    n_max: int = 256
    n_list: Optional[list] = None
    method: str = "cesaro"
    omega_start: Optional[int] = None
    xi: Optional[list] = None
    samples: int = 100
    grid: int = 64

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.method not in ("cesaro", "abel", "partial"):
            raise ConfigError("method must be cesaro, abel or partial")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        for name in ("K", "range", "n_max", "samples", "grid"):
            v = getattr(self, name)
            if v is not None and int(v) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if not self.alpha or any(a <= -1 for a in self.alpha):
            raise ConfigError("alpha list must be nonempty with every alpha > -1")
        if not self.r_list or any(not 0 < r < 1 for r in self.r_list):
            raise ConfigError("r list must be nonempty with every r in (0, 1)")
        if self.n_list is not None and (not self.n_list or min(self.n_list) < 0):
            raise ConfigError("n list must be nonempty and nonnegative")
        if self.input and self.builtin:
            raise ConfigError("give either an input file or --builtin, not both")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)

    def ns(self) -> list:
        if self.n_list is not None:
            return sorted(set(int(n) for n in self.n_list))
        out, n = [], 4
        while n < self.n_max:
            out.append(n)
            n *= 4
        return out + [self.n_max]


# -- helpers --------------------------------------------------------------------------

def _generator(cfg: RunConfig) -> tuple[str, PiecewiseFn]:
    if cfg.builtin:
        return cfg.builtin, builtin(cfg.builtin)
    if cfg.input:
        return Path(cfg.input).stem, load_generator(cfg.input)
    raise ConfigError("no generator: pass a generator file or --builtin")


def _num(x):
    """JSON-safe scalar: reals as floats, complex as ``[re, im]``."""
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        return x.real if x.imag == 0 else [x.real, x.imag]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def _dumps(payload: dict) -> str:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version", *columns])
    for r in rows:
        w.writerow([SCHEMA_VERSION, *(_cell(r.get(c)) for c in columns)])
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _emit(cfg: RunConfig, stem: str, text: str, suffix: str, stdout: bool = True):
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{stem}.{suffix}"
        path.write_text(text)
        log.info("wrote %s", path)
    elif stdout:
        sys.stdout.write(text)


def _ac_json(phi: PiecewiseFn) -> dict:
    exact = autocorrelation_exact(phi)
    return {str(k): str(v) if not isinstance(v, (float, complex)) else _num(v)
            for k, v in sorted(exact.items())}


# -- commands ---------------------------------------------------------------------------

def cmd_analyze(cfg: RunConfig) -> int:
    name, gen = _generator(cfg)
    phi = autocorrelation(gen)
    rep = classify(phi, cfg.omega_start)
    payload = {"command": "analyze", "generator": name, "autocorrelation": _ac_json(gen),
               "basis_report": rep.to_json()}
    if not rep.profile.is_empty:
        fact = factorize(phi, rep.profile)
        payload["factorization"] = {"omega": fact.describe(), "P": fact.P.to_json()["coeffs"],
                                    "residual": fact.residual, "P_min": fact.P_min}
    ref = compare_published(name, phi)
    if ref is not None:
        payload["published_weight_check"] = ref
    if cfg.format == "csv":
        rows = [{"key": k, "value": json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else v}
                for k, v in sorted(rep.to_json().items())]
        _emit(cfg, "analyze", _csv(rows, ["key", "value"]), "csv")
    else:
        _emit(cfg, "analyze", _dumps(payload), "json")
    return EXIT_OK


def cmd_dual(cfg: RunConfig) -> int:
    name, gen = _generator(cfg)
    phi = autocorrelation(gen)
    prof = profile(phi)
    N = cfg.range
    payload = {"command": "dual", "generator": name, "range": N}
    if prof.is_empty:
        rd = regular_dual(phi, cfg.K or 64)
        dev = regular_biorthogonality(phi, rd, N)
        payload.update({
            "omega": [], "regular": True, "K": rd.K, "fft_size": rd.fft_size,
            "aliasing": rd.aliasing, "decay_ratio": rd.ratio, "tail_bound": rd.tail_bound,
            "dual_coeffs": {str(k): _num(rd.coeffs.coeff(k)) for k in range(-min(rd.K, 16), min(rd.K, 16) + 1)},
            "condition_number": 1.0, "biorthogonality_max_deviation": dev,
        })
        rows = [{"k": k, "d_k": _num(rd.coeffs.coeff(k).real)} for k in range(-min(rd.K, 16), min(rd.K, 16) + 1)]
        cols = ["k", "d_k"]
    else:
        ds = build_dual(phi, prof, omega_start=cfg.omega_start)
        dev = biorthogonality_check(ds, N)
        ns = list(range(-N, N + 1))
        C = ds.interpolant_coeffs(ns)
        payload.update({
            "omega": list(ds.omega), "regular": False, "profile": prof.to_json(),
            "interpolants": {str(n): {str(k): _num(C[i, j]) for j, k in enumerate(ds.omega)}
                             for i, n in enumerate(ns)},
            "condition_number": ds.condition_number, "biorthogonality_max_deviation": dev,
        })
        rows = [{"n": n, "k": k, "re": float(C[i, j].real), "im": float(C[i, j].imag)}
                for i, n in enumerate(ns) for j, k in enumerate(ds.omega)]
        cols = ["n", "k", "re", "im"]
    if cfg.format == "csv":
        _emit(cfg, "dual", _csv(rows, cols), "csv")
    else:
        _emit(cfg, "dual", _dumps(payload), "json")
    if dev > cfg.tol:
        raise ToleranceFailure(f"biorthogonality deviation {dev:.3g} above tol {cfg.tol:g}")
    return EXIT_OK


def _reconstruct(cfg: RunConfig, name: str, gen: PiecewiseFn) -> tuple[ReconstructionReport, TrigPoly]:
    h = load_symbol(cfg.f) if cfg.f else TrigPoly.from_json(DEFAULT_SYMBOL)
    phi = autocorrelation(gen)
    ds = build_dual(phi, omega_start=cfg.omega_start)
    rep = ReconstructionReport(name, h.to_json())
    if cfg.method == "abel":
        abel_sweep(h, phi, ds, cfg.r_list, rep)
    else:
        alphas = [0.0] if cfg.method == "partial" else cfg.alpha
        for a in alphas:
            cesaro_sweep(h, phi, ds, a, cfg.ns(), rep)
    return rep, h


def cmd_reconstruct(cfg: RunConfig) -> int:
    name, gen = _generator(cfg)
    rep, _ = _reconstruct(cfg, name, gen)
    payload = {"command": "reconstruct", "generator": name, "f": rep.f, "method": cfg.method,
               "rows": rep.rows}
    csv_text = _csv(rep.rows, ["method", "param", "n", "error"])
    if cfg.out_dir:
        _emit(cfg, "reconstruct", _dumps(payload), "json")
        _emit(cfg, "reconstruct", csv_text, "csv")
    else:
        sys.stdout.write(csv_text if cfg.format == "csv" else _dumps(payload))
    return EXIT_OK


def _xi_list(cfg: RunConfig) -> list:
    if cfg.xi:
        return [float(x) for x in cfg.xi]
    rng = np.random.default_rng(cfg.seed)
    return [float(x) for x in rng.uniform(1e-3, 1 - 1e-3, cfg.samples)]


def cmd_identities(cfg: RunConfig) -> int:
    rows, worst = [], 0.0
    K = cfg.K or 10_000
    for xi in _xi_list(cfg):
        for check in (verify_identity_kar1(xi, K), verify_identity_kar2(xi, K)):
            rows.append({"identity": check.name, "xi": check.xi, "K": check.K, "lhs": check.lhs,
                         "rhs": check.rhs, "rel_error": check.rel_error})
            worst = max(worst, check.rel_error)
        lhs, rhs, rel = second_derivative_relation(xi)
        rows.append({"identity": "second_derivative", "xi": xi, "K": None, "lhs": lhs, "rhs": rhs,
                     "rel_error": rel})
    cols = ["identity", "xi", "K", "lhs", "rhs", "rel_error"]
    if cfg.format == "json":
        _emit(cfg, "identities", _dumps({"command": "identities", "rows": rows,
                                         "max_rel_error": worst}), "json")
    else:
        _emit(cfg, "identities", _csv(rows, cols), "csv")
    if worst > cfg.tol:
        raise ToleranceFailure(f"identity rel_error {worst:.3g} above tol {cfg.tol:g}")
    return EXIT_OK


def cmd_orthonormalize(cfg: RunConfig) -> int:
    name, gen = _generator(cfg)
    g = OrthoGenerator.from_generator(gen)
    grid = (np.arange(cfg.grid) + 0.5) / cfg.grid
    K = cfg.K or 10_000
    dev, sample = check_onb(g, grid, K)
    rows = [{"t": float(t), "bracket": float(v), "deviation": float(abs(v - 1.0))}
            for t, v in zip(grid, sample.value)]
    if cfg.format == "json":
        _emit(cfg, "orthonormalize", _dumps({
            "command": "orthonormalize", "generator": name, "K": K, "max_deviation": dev,
            "tail_bound": float(np.max(sample.tail_bound)), "rows": rows}), "json")
    else:
        _emit(cfg, "orthonormalize", _csv(rows, ["t", "bracket", "deviation"]), "csv")
    if dev > cfg.tol:
        raise ToleranceFailure(f"ONB deviation {dev:.3g} above tol {cfg.tol:g}")
    return EXIT_OK


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def cmd_report(cfg: RunConfig) -> int:
    name, gen = _generator(cfg)
    phi = autocorrelation(gen)
    rep = classify(phi, cfg.omega_start)
    lines = [f"# Shift system report: {name}", "", f"schema_version: {SCHEMA_VERSION}", "",
             "## Spectral weight", "",
             "Autocorrelation coefficients c_k (exact):", ""]
    lines += [f"- c_{k} = {v}" for k, v in _ac_json(gen).items()]
    ref = compare_published(name, phi)
    if ref is not None:
        verdict = "agrees" if ref["constant_agrees"] else "DISAGREES"
        lines += ["", f"Quoted closed form `Phi = {ref['quoted_form']}`: functional form "
                  f"{'matches' if ref['same_functional_form'] else 'does not match'}; derived "
                  f"constant {_fmt(ref['derived_constant'])} {verdict} with quoted "
                  f"{_fmt(ref['quoted_constant'])}."]
    lines += ["", "## Classification", "", f"**{rep.summary()}**", ""]
    lines += [f"- {n}" for n in rep.notes]
    if rep.riesz:
        # identically 1 means orthonormal shifts
        if abs(rep.riesz_bounds[0] - 1) < 1e-12 and abs(rep.riesz_bounds[1] - 1) < 1e-12:
            lines += ["- shifts are orthonormal"]
        K = cfg.K or 64
        rd = regular_dual(phi, K)
        dev = regular_biorthogonality(phi, rd, cfg.range)
        lines += ["", "## Dual generator", "",
                  f"g = sum_k d_k phi(. + k), truncated at |k| <= {K}; geometric decay ratio "
                  f"{_fmt(rd.ratio)}; biorthogonality deviation {dev:.3g} over |j|, |n| <= {cfg.range}.",
                  "", "| k | d_k | abs(d_k) |", "|---|---|---|"]
        for k in range(0, 9):
            d = rd.coeffs.coeff(k).real
            lines.append(f"| {k} | {_fmt(d)} | {abs(d):.3e} |")
    else:
        ds = build_dual(phi, rep.profile, rep.omega)
        dev = biorthogonality_check(ds, cfg.range)
        lines += ["", "## Dual system", "",
                  f"- Omega = {list(rep.omega)}, Vandermonde condition number "
                  f"{_fmt(ds.condition_number)}",
                  f"- biorthogonality deviation {dev:.3g} over |k|, |n| <= {cfg.range}",
                  f"- (C, alpha) summation basis iff alpha > {rep.cesaro_threshold:g}"]
        sub = dataclasses.replace(cfg, method="cesaro", alpha=[1.0])
        rc, h = _reconstruct(sub, name, gen)
        sub = dataclasses.replace(cfg, method="abel")
        ra, _ = _reconstruct(sub, name, gen)
        lines += ["", "## Convergence", "", f"Test symbol h = {h!r}.", "",
                  "| method | parameter | n | L2 error |", "|---|---|---|---|"]
        for r in rc.rows + ra.rows:
            lines.append(f"| {r['method']} | {r['param']:g} | {r['n']} | {r['error']:.4e} |")
        ns = [n for n in (16, 64, 256) if n <= max(cfg.n_max, 16)]
        lines += ["", "Lower bounds on the (C, alpha) operator norms:", "",
                  "| alpha | " + " | ".join(f"n={n}" for n in ns) + " |",
                  "|---|" + "---|" * len(ns)]
        for a in sorted({0.25, 1.0, rep.cesaro_threshold}):
            scan = operator_growth_scan(phi, ds, a, ns, seed=cfg.seed)
            lines.append(f"| {a:g} | " + " | ".join(_fmt(b) for b in scan.bounds) + " |")
    text = "\n".join(lines) + "\n"
    _emit(cfg, "report", text, "md")
    return EXIT_OK


HANDLERS = {"analyze": cmd_analyze, "dual": cmd_dual, "reconstruct": cmd_reconstruct,
            "identities": cmd_identities, "orthonormalize": cmd_orthonormalize,
            "report": cmd_report}


def run(cfg: RunConfig) -> int:
    """Execute one command, mapping failures to exit codes."""
    try:
        return HANDLERS[cfg.command](cfg)
    except (ConfigError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (GeneratorSpecError, DegreeOverflowError, NotNonnegativeError) as exc:
        log.error("generator spec: %s", exc)
        return EXIT_SPEC
    except ArithmeticError as exc:
        log.error("numeric tolerance: %s", exc)
        return EXIT_NUMERIC
    except Exception as exc:  # noqa: BLE001
        log.exception("internal invariant breach: %s", exc)
        return EXIT_INTERNAL


# -- argument parsing -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from exc


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("generator", nargs="?", help="generator JSON file")
    common.add_argument("--input", help="generator JSON file (same as the positional)")
    common.add_argument("--builtin", help="box | hat | psi1 | bspline:m")
    common.add_argument("--config", help="JSON file of RunConfig keys; flags override it")
    common.add_argument("--out-dir")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--K", type=int)
    common.add_argument("--omega-start", type=int)

    p = _Parser(prog="sispace", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="basis classification as JSON")
    d = sub.add_parser("dual", parents=[common], help="dual system and biorthogonality")
    d.add_argument("--range", type=int)
    r = sub.add_parser("reconstruct", parents=[common], help="Cesaro/Abel reconstruction errors")
    r.add_argument("--f", help="symbol JSON {\"coeffs\": {k: [re, im]}}")
    r.add_argument("--method", choices=("cesaro", "abel", "partial"))
    r.add_argument("--alpha", type=_floats)
    r.add_argument("--r-list", type=_floats)
    r.add_argument("--n-max", type=int)
    r.add_argument("--n-list", type=_ints)
    i = sub.add_parser("identities", parents=[common], help="series identity checks as CSV")
    i.add_argument("--xi", type=_floats)
    i.add_argument("--samples", type=int)
    o = sub.add_parser("orthonormalize", parents=[common], help="ONB check of phi_0 on a grid")
    o.add_argument("--grid", type=int)
    rp = sub.add_parser("report", parents=[common], help="markdown summary")
    rp.add_argument("--range", type=int)
    rp.add_argument("--n-max", type=int)
    rp.add_argument("--r-list", type=_floats)
    rp.add_argument("--f")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    data = {}
    if ns.config:
        try:
            data = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config {ns.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    flags = {k: v for k, v in vars(ns).items() if v is not None and k not in ("config", "generator")}
    if ns.generator:
        if ns.input:
            raise ConfigError("generator given twice")
        flags["input"] = ns.generator
    data.update(flags)
    return RunConfig.from_dict(data)


def _setup_logging():
    level = os.environ.get("SISPACE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ConfigError, TypeError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
