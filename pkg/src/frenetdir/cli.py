"""Command line front end.

Subcommands: catalog, frenet, direct, classify, od, verify.  Curve input
is either a catalog name (--curve) or a CSV file (--input); grids,
phases, construction constants and tolerances come from flags, from a
config file (--config, or the file named by FD_CONFIG), or from the
defaults, in that order of increasing precedence (flags win).

Config files are line oriented `key = value` text; keys match the long
flag names with either - or _ and # starts a comment line.  The config
file applies to the frenet, direct, classify and od commands; catalog
and verify take only their own flags.

Exit codes are stable: 0 success, 1 usage or configuration error, 2
domain precondition violated by the data, 3 numerical failure (including
a verify run whose displayed rows do not all pass).

Output files are deterministic: CSV numbers are written at 17
significant digits and JSON objects with sorted keys, so identical
configuration yields byte-identical files.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import verify as verify_suite
from .classify import classify, slant_helix_test
from .curves import (
    CurveSamples,
    arclength_reparametrize,
    catalog_entry,
    catalog_names,
    evaluate_catalog,
    load_csv,
    save_csv,
    unit_speed_deviation,
)
from .direction import (
    binormal_direction_curve,
    compare_predicted,
    direction_field,
    integrate_direction_curve,
    mannheim_check,
    osculating_coefficients,
    predicted_bar_data,
    principal_direction_curve,
)
from .errors import DomainError, NumericalError
from .frenet import frenet_apparatus
from .numerics import BOUNDARY_MARGIN, uniform_grid
from .od import ODParameters, od_osculating_curve, verify_od_properties

# short factual description per catalog entry, shown by `catalog`
_ABOUT = {
    "circular_helix": "circular helix with curvature = torsion = 1/2",
    "helix_12_5": "circular helix with curvature 12/169 and torsion 5/169",
    "root_curve": "unit-speed curve on (0,1) with curvature = torsion = sqrt(2)/(4 sqrt(s(1-s)))",
    "spherical_helix": "spherical general helix with torsion = -2 curvature",
}

_DEFAULTS = {
    "curve": None,
    "input": None,
    "params": "",
    "s_min": None,
    "s_max": None,
    "n": 2001,
    "phase_c": 0.0,
    "a": 1.0,
    "b": 1.0,
    "family": "osculating",
    "tol_rel": 1e-3,
    "tol_frame": 1e-6,
    "tol_od": 2e-2,
    "output": None,
    "format": "csv",
}

_FLOAT_KEYS = {"s_min", "s_max", "phase_c", "a", "b", "tol_rel", "tol_frame", "tol_od"}
_INT_KEYS = {"n"}
_FAMILIES = ("osculating", "principal", "binormal")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved options of one command invocation."""

    curve: object
    input: object
    params: dict
    s_min: object
    s_max: object
    n: int
    phase_c: float
    a: float
    b: float
    family: str
    tol_rel: float
    tol_frame: float
    tol_od: float
    output: object
    format: str


def _coerce(key, value):
    if isinstance(value, str):
        try:
            if key in _FLOAT_KEYS:
                return float(value)
            if key in _INT_KEYS:
                return int(value)
        except ValueError:
            raise ValueError(f"config key {key}: cannot parse {value!r}") from None
    return value


def _read_config(path):
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}: line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _DEFAULTS:
            raise ValueError(f"{path}: line {lineno}: unknown config key {key!r}")
        out[key] = _coerce(key, value.strip())
    return out


def _parse_params(text):
    params = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise ValueError(f"--params entries are k=v, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ValueError(f"--params {key.strip()}: cannot parse {value!r}") from None
    return params


def _resolve_config(args):
    cfg = dict(_DEFAULTS)
    env_path = os.environ.get("FD_CONFIG")
    if env_path:
        cfg.update(_read_config(env_path))
    if getattr(args, "config", None):
        cfg.update(_read_config(args.config))
    for key in _DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    cfg["params"] = _parse_params(cfg["params"])
    if cfg["format"] not in ("csv", "json"):
        raise ValueError(f"--format must be csv or json, got {cfg['format']!r}")
    if cfg["family"] not in _FAMILIES:
        raise ValueError(f"--family must be one of {', '.join(_FAMILIES)}")
    for key in ("tol_rel", "tol_frame", "tol_od"):
        if cfg[key] <= 0:
            raise ValueError(f"--{key.replace('_', '-')} must be positive")
    return RunConfig(**cfg)


def _source_curve(cfg):
    if (cfg.curve is None) == (cfg.input is None):
        raise ValueError("exactly one of --curve or --input is required")
    if cfg.curve is not None:
        entry = catalog_entry(cfg.curve, cfg.params or None)
        lo = entry.domain[0] if cfg.s_min is None else cfg.s_min
        hi = entry.domain[1] if cfg.s_max is None else cfg.s_max
        grid = uniform_grid(lo, hi, cfg.n)
        return evaluate_catalog(cfg.curve, cfg.params or None, grid)
    if cfg.params:
        raise ValueError("--params only applies to catalog curves")
    return load_csv(cfg.input)


def _unit_speed(c):
    return c if c.unit_speed else arclength_reparametrize(c, c.grid.n)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _dump_json(payload, path=None):
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _write_curve(c, cfg):
    if cfg.output is None:
        return
    if cfg.format == "csv":
        save_csv(c, cfg.output)
    else:
        _dump_json(
            {
                "s": c.grid.values,
                "x": c.points[:, 0],
                "y": c.points[:, 1],
                "z": c.points[:, 2],
                "unit_speed": bool(c.unit_speed),
            },
            cfg.output,
        )


def _write_frenet(f, cfg):
    if cfg.output is None:
        return
    if cfg.format == "json":
        _dump_json(
            {
                "s": f.grid.values,
                "T": f.T,
                "N": f.N,
                "B": f.B,
                "kappa": f.kappa,
                "tau": f.tau,
                "valid": f.frenet_valid.astype(int),
            },
            cfg.output,
        )
        return
    cols = ("s", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau", "valid")
    with open(cfg.output, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for i in range(f.grid.n):
            values = [
                f.grid.values[i],
                *f.T[i],
                *f.N[i],
                *f.B[i],
                f.kappa[i],
                f.tau[i],
            ]
            fh.write(
                ",".join("%.17g" % v for v in values)
                + ",%d\n" % int(f.frenet_valid[i])
            )


def _orthonormality(f):
    m = f.frenet_valid
    if not np.any(m):
        return float("nan")
    frames = np.stack([f.T[m], f.N[m], f.B[m]], axis=1)
    gram = np.einsum("nij,nkj->nik", frames, frames)
    return float(np.max(np.abs(gram - np.eye(3))))


def cmd_catalog(args):
    entries = []
    for name in catalog_names():
        entry = catalog_entry(name)
        entries.append(
            {
                "name": name,
                "parameters": entry.parameters,
                "domain": [entry.domain[0], entry.domain[1]],
                "about": _ABOUT.get(name, ""),
            }
        )
    if args.json:
        _dump_json(entries)
        return 0
    for e in entries:
        params = ", ".join(f"{k}={v:g}" for k, v in sorted(e["parameters"].items()))
        print(f"{e['name']:16s} domain [{e['domain'][0]:g}, {e['domain'][1]:g}]"
              f"  params: {params or '-'}")
        print(f"{'':16s} {e['about']}")
    return 0


def cmd_frenet(args):
    cfg = _resolve_config(args)
    c = _unit_speed(_source_curve(cfg))
    f = frenet_apparatus(c)
    mask = np.zeros(f.grid.n, dtype=bool)
    mask[f.grid.interior(BOUNDARY_MARGIN)] = True
    mask &= f.frenet_valid
    if not np.any(mask):
        raise DomainError("frenet: curvature below floor at every interior sample")
    kappa, tau = f.kappa[mask], f.tau[mask]
    ortho = _orthonormality(f)
    print(f"samples: {f.grid.n} on [{f.grid.values[0]:g}, {f.grid.values[-1]:g}]"
          f" ({int(mask.sum())} interior with frame)")
    print(f"kappa: mean={kappa.mean():.7g} min={kappa.min():.7g} max={kappa.max():.7g}")
    print(f"tau:   mean={tau.mean():.7g} min={tau.min():.7g} max={tau.max():.7g}")
    verdict = "ok" if ortho <= cfg.tol_frame else "FAIL"
    print(f"frame orthonormality: max deviation {ortho:.3e} (tol {cfg.tol_frame:g}) {verdict}")
    _write_frenet(f, cfg)
    if ortho > cfg.tol_frame:
        raise NumericalError(f"frame orthonormality {ortho:.3e} exceeds {cfg.tol_frame:g}")
    return 0


def cmd_direct(args):
    cfg = _resolve_config(args)
    c = _unit_speed(_source_curve(cfg))
    f = frenet_apparatus(c)
    if cfg.family == "principal":
        gamma = principal_direction_curve(f)
    elif cfg.family == "binormal":
        gamma = binormal_direction_curve(f)
    else:
        dc = osculating_coefficients(f, cfg.phase_c)
        gamma = integrate_direction_curve(direction_field(f, dc))
    print(f"family: {cfg.family}  phase: {cfg.phase_c:g}")
    print(f"speed deviation: {unit_speed_deviation(gamma):.3e}")
    if cfg.family == "osculating":
        g = frenet_apparatus(gamma)
        mann = mannheim_check(g, f)
        agree = compare_predicted(g, predicted_bar_data(f, dc), dc, cos_floor=0.05)
        print(f"normal/binormal alignment: min {mann.min_alignment:.6f}"
              f" ({'pass' if mann.passed else 'FAIL'})")
        print(f"predicted curvature/torsion agreement: dev_kappa={agree.dev_kappa:.3e}"
              f" dev_tau={agree.dev_tau:.3e} ({'pass' if agree.passed else 'FAIL'})")
        slant = slant_helix_test(g, rel_tol=cfg.tol_rel)
        print(f"sigma: mean={slant.mean:.6g} rel_variation={slant.rel_variation:.3e}"
              f" constant={'yes' if slant.is_constant else 'no'}")
    _write_curve(gamma, cfg)
    return 0


def _constancy_payload(rep):
    if rep is None:
        return None
    return {
        "mean": rep.mean,
        "min": rep.min,
        "max": rep.max,
        "rel_variation": rep.rel_variation,
        "is_constant": rep.is_constant,
        "degenerate_zero": rep.degenerate_zero,
    }


def cmd_classify(args):
    cfg = _resolve_config(args)
    # reports are json only; the shared --format flag exists for the
    # curve-writing commands and its csv default does not apply here
    if getattr(args, "format", None) == "csv":
        raise ValueError("classify reports are json only; drop --format csv")
    c = _source_curve(cfg)
    rep = classify(c, rel_tol=cfg.tol_rel, rect_tol=cfg.tol_od)
    rect = None
    if rep.rectifying is not None:
        rect = {
            "normal_component": rep.rectifying.normal_component,
            "fit": {
                "slope": rep.rectifying.fit.slope,
                "intercept": rep.rectifying.fit.intercept,
                "max_residual": rep.rectifying.fit.max_residual,
            },
            "is_rectifying": rep.rectifying.is_rectifying,
        }
    _dump_json(
        {
            "is_line": rep.is_line,
            "is_plane": rep.is_plane,
            "is_general_helix": rep.is_general_helix,
            "is_slant_helix": rep.is_slant_helix,
            "is_rectifying": rep.is_rectifying,
            "helix_ratio": _constancy_payload(rep.helix_ratio),
            "sigma_it": _constancy_payload(rep.sigma_it),
            "rectifying": rect,
        },
        cfg.output,
    )
    return 0


def cmd_od(args):
    cfg = _resolve_config(args)
    c = _unit_speed(_source_curve(cfg))
    lo = c.grid.values[0]
    if lo != 0.0:
        # arc length is measured from the first sample; shift the grid so
        # the written output and the reports agree on s = 0 there
        c = CurveSamples(
            grid=uniform_grid(0.0, c.grid.values[-1] - lo, c.grid.n),
            points=c.points,
            unit_speed=c.unit_speed,
        )
    f = frenet_apparatus(c)
    p = ODParameters(cfg.a, cfg.b, cfg.phase_c)
    gamma = od_osculating_curve(f, p)
    rep = verify_od_properties(gamma, p, tol=cfg.tol_od)
    print(f"parameters: a={cfg.a:g} b={cfg.b:g} phase={cfg.phase_c:g}")
    print(f"unit speed: {'yes' if gamma.unit_speed else 'no'}"
          f" (max deviation {rep.speed_deviation:.3e})")
    print(f"rectifying: normal component {rep.rectifying.normal_component:.3e}"
          f" ({'pass' if rep.rectifying.is_rectifying else 'FAIL'})")
    print(f"ratio line: slope {rep.ratio_fit.slope:.6g}"
          f" intercept {rep.ratio_fit.intercept:.6g}"
          f" max residual {rep.ratio_fit.max_residual:.3e}")
    print(f"parameter agreement: slope error {rep.slope_error:.3e}"
          f" intercept error {rep.intercept_error:.3e}")
    print(f"axis alignment: max cross ratio {rep.cross_ratio:.3e}")
    print(f"all checks passed: {'yes' if rep.passed else 'no'} (tol {cfg.tol_od:g})")
    _write_curve(gamma, cfg)
    return 0


def cmd_verify(args):
    rows = verify_suite.run_checks(only=args.only, curve=args.curve, tol=args.tol)
    header = f"{'check':10s} {'curve':16s} {'deviation':>12s} {'tolerance':>10s}  result"
    print(header)
    print("-" * len(header))
    for r in rows:
        op = ">=" if r.exceeds else "< "
        status = "pass" if r.passed else "FAIL"
        print(f"{r.check:10s} {r.curve:16s} {r.deviation:12.4e} {op}{r.tolerance:8g}  {status}")
    passed = sum(r.passed for r in rows)
    print(f"{passed}/{len(rows)} checks passed")
    return 0 if passed == len(rows) else 3


def _add_source_flags(p):
    p.add_argument("--curve", help="catalog curve name")
    p.add_argument("--input", help="CSV file with s,x,y,z or x,y,z rows")
    p.add_argument("--params", help="catalog parameter overrides k=v,...")
    p.add_argument("--s-min", dest="s_min", type=float, help="grid start (default: catalog domain)")
    p.add_argument("--s-max", dest="s_max", type=float, help="grid end")
    p.add_argument("--n", type=int, help="sample count, odd (default 2001)")
    p.add_argument("--config", help="config file (key = value lines)")
    p.add_argument("--output", help="write sampled data here")
    p.add_argument("--format", choices=("csv", "json"), help="output file format (default csv)")
    p.add_argument("--tol-rel", dest="tol_rel", type=float, help="constancy tolerance (default 1e-3)")
    p.add_argument("--tol-frame", dest="tol_frame", type=float, help="frame tolerance (default 1e-6)")
    p.add_argument("--tol-od", dest="tol_od", type=float, help="companion-check tolerance (default 2e-2)")


def _build_parser():
    parser = _Parser(prog="frenetdir", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("catalog", help="list built-in curves")
    p.add_argument("--json", action="store_true", help="machine-readable listing")

    p = sub.add_parser("frenet", help="frame, curvature and torsion of a curve")
    _add_source_flags(p)

    p = sub.add_parser("direct", help="construct a direction curve and check it")
    _add_source_flags(p)
    p.add_argument("--family", choices=_FAMILIES, help="direction family (default osculating)")
    p.add_argument("--phase-c", dest="phase_c", type=float, help="phase constant (default 0)")

    p = sub.add_parser("classify", help="line/plane/helix/slant/rectifying verdicts as json")
    _add_source_flags(p)

    p = sub.add_parser("od", help="osculating-plane companion curve and its checks")
    _add_source_flags(p)
    p.add_argument("--phase-c", dest="phase_c", type=float, help="phase constant (default 0)")
    p.add_argument("--a", type=float, help="binormal-component constant, nonzero (default 1)")
    p.add_argument("--b", type=float, help="arc-length offset, nonzero (default 1)")

    p = sub.add_parser("verify", help="run the whole verification table")
    p.add_argument("--only", help="restrict to one check id")
    p.add_argument("--curve", help="restrict to one curve")
    p.add_argument("--tol", type=float, help="override every row tolerance")

    return parser


_COMMANDS = {
    "catalog": cmd_catalog,
    "frenet": cmd_frenet,
    "direct": cmd_direct,
    "classify": cmd_classify,
    "od": cmd_od,
    "verify": cmd_verify,
}


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
