"""Command-line front end: ``ncqm {verify,oscillator,landau,well,spectrum}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .errors import CriticalRegion, NCQMError, ValidationError
from .irreps import IrrepLabel, admissible_irreps, check_irrep_region, half_integer
from .params import NCParams

SCHEMA_VERSION = 1

log = logging.getLogger("ncqm")

_LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}

# Fallbacks applied after flags and the --config file.
DEFAULTS = {
    "hbar": 1.0,
    "mu": 1.0,
    "cutoff": 20,
    "truncation": 64,
    "tol": 1e-9,
    "format": "json",
    "out": None,
    "jobs": 1,
    "levels": 6,
    "e": 1.0,
    "s": 1,
}

COLUMNS = {
    "verify": ["check", "region", "cutoff", "residual", "tolerance", "pass"],
    "oscillator": ["region", "irrep", "m", "n_plus", "n_minus", "energy"],
    "landau": ["n", "energy", "degeneracy"],
    "landau-dos": ["kappa", "rho", "divergent"],
    "well": ["region", "k_or_j", "s", "l", "level", "energy", "kind"],
    "spectrum": ["region", "k_or_j", "s", "l", "level", "energy", "converged"],
}


# --- argument parsing ---------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters")
    g.add_argument("--theta", type=float)
    g.add_argument("--kappa", type=float)
    g.add_argument("--hbar", type=float)
    g.add_argument("--mu", type=float)
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=["json", "csv", "table"])
    o.add_argument("--out", metavar="PATH")
    o.add_argument("--config", metavar="FILE", help="JSON file of option values; flags take precedence")
    o.add_argument("--jobs", type=int, metavar="N")


def _labels(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", help="Sl2 label, e.g. 1/2")
    g.add_argument("--j", help="Su2 label, e.g. 3/2")
    g.add_argument("--max-label", dest="max_label", help="all admissible irreps up to this label")
    p.add_argument("--s", type=int, choices=[1, -1], help="sign of l for --k (default +1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncqm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="operator-algebra residuals in a truncated Fock space")
    _common(p)
    p.add_argument("--cutoff", type=int)

    p = sub.add_parser("oscillator", help="isotropic oscillator levels")
    _common(p)
    p.add_argument("--omega", type=float)
    p.add_argument("--levels", type=int)

    p = sub.add_parser("landau", help="Landau levels and density of states")
    _common(p)
    p.add_argument("--B", dest="B", type=float)
    p.add_argument("--e", type=float)
    p.add_argument("--levels", type=int)
    p.add_argument("--dos-sweep", dest="dos_sweep", metavar="LO:HI:N",
                   help="density of states over N kappa values in [LO, HI]; write as --dos-sweep=LO:HI:N")

    p = sub.add_parser("well", help="cylindrical well spectra")
    _common(p)
    depth = p.add_mutually_exclusive_group()
    depth.add_argument("--V0", dest="V0", type=float)
    depth.add_argument("--infinite", action="store_true", default=None)
    p.add_argument("--A2-over-theta", dest="A2_over_theta", type=float)
    _labels(p)

    p = sub.add_parser("spectrum", help="central potential in one or more irreps")
    _common(p)
    p.add_argument("--potential", help="quadratic:C0,C1 | oscillator:OMEGA | step:V0,A2_OVER_THETA | table:PATH")
    p.add_argument("--levels", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--tol", type=float)
    _labels(p)
    return parser


def resolve_config(ns: argparse.Namespace) -> dict:
    """Merge flags over the ``--config`` file over :data:`DEFAULTS`."""
    cfg = dict(DEFAULTS)
    if ns.config:
        try:
            with open(ns.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValidationError("config file must hold a JSON object")
        cfg.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, value in vars(ns).items():
        if value is not None and key != "config":
            cfg[key] = value
    return cfg


def _params(cfg: dict) -> NCParams:
    for key in ("theta", "kappa"):
        if cfg.get(key) is None:
            raise ValidationError(f"--{key} is required")
    return NCParams(float(cfg["theta"]), float(cfg["kappa"]), float(cfg["hbar"]), float(cfg["mu"]))


def _require(cfg: dict, key: str, flag: str | None = None):
    if cfg.get(key) is None:
        raise ValidationError(f"--{flag or key} is required")
    return cfg[key]


def _irreps(cfg: dict, params: NCParams) -> list[IrrepLabel]:
    region = params.region
    if cfg.get("k") is not None:
        irrep = IrrepLabel.sl2(half_integer(cfg["k"]), int(cfg.get("s", 1)))
    elif cfg.get("j") is not None:
        irrep = IrrepLabel.su2(half_integer(cfg["j"]))
    elif cfg.get("max_label") is not None:
        return admissible_irreps(region, half_integer(cfg["max_label"]))
    else:
        raise ValidationError("one of --k, --j or --max-label is required")
    check_irrep_region(irrep, region)
    return [irrep]


def _fmt_label(irrep: IrrepLabel) -> str:
    return str(irrep.label)


# --- commands -----------------------------------------------------------------


def cmd_verify(cfg: dict) -> tuple[dict, list[dict], int]:
    from .fock import verify_all

    params = _params(cfg)
    rows = [r.to_dict() for r in verify_all(params, int(cfg["cutoff"]))]
    ok = all(r["pass"] for r in rows)
    return {"all_pass": ok}, rows, 0 if ok else 1


def cmd_oscillator(cfg: dict) -> tuple[dict, list[dict], int]:
    from .models import OscillatorSpec, oscillator_frequencies, oscillator_spectrum

    params = _params(cfg)
    spec = OscillatorSpec(float(_require(cfg, "omega")))
    levels = int(cfg["levels"])
    if levels < 1:
        raise ValidationError("--levels must be >= 1")
    wp, wm = oscillator_frequencies(params, spec)
    # the lowest N levels all carry at most N-1 quanta
    entries = oscillator_spectrum(params, spec, levels - 1)
    entries.sort(key=lambda e: (round(e.energy, 12), e.quanta.n_plus + e.quanta.n_minus, -e.quanta.n_minus))
    rows = [e.to_dict(params.region) for e in entries[:levels]]
    return {"omega_plus": wp, "omega_minus": wm}, rows, 0


def _parse_sweep(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise ValidationError(f"--dos-sweep expects LO:HI:N, got {text!r}") from exc
    if n < 2 or not hi > lo:
        raise ValidationError("--dos-sweep needs HI > LO and N >= 2")
    return lo, hi, n


def cmd_landau(cfg: dict) -> tuple[dict, list[dict], int]:
    from .models import LandauSpec, landau_density_of_states, landau_effective_field, landau_spectrum

    spec = LandauSpec(float(_require(cfg, "B")), float(cfg["e"]))
    if cfg.get("dos_sweep"):
        lo, hi, n = _parse_sweep(cfg["dos_sweep"])
        theta = float(_require(cfg, "theta"))
        rows = []
        for kappa in np.linspace(lo, hi, n):
            p = NCParams(theta, float(kappa), float(cfg["hbar"]), float(cfg["mu"]))
            d = landau_density_of_states(p, spec)
            rows.append({"kappa": float(kappa), "rho": math.inf if d.divergent else d.value, "divergent": d.divergent})
        return {"plot": "density_of_states", "x": "kappa", "y": "rho"}, rows, 0
    params = _params(cfg)
    dos = landau_density_of_states(params, spec)
    summary = {"B_eff": landau_effective_field(params, spec), "density_of_states": dos.to_dict()}
    rows = [lv.to_dict() for lv in landau_spectrum(params, spec, int(cfg["levels"]))]
    return summary, rows, 0


def _well_rows(args) -> list[dict]:
    from .wells import WellSpec, finite_well_bound_states, infinite_well_spectrum

    params, irrep, V0, ratio = args
    well = WellSpec.from_ratio(V0, ratio, params.theta)
    if well.infinite:
        energies, kinds = infinite_well_spectrum(params, irrep, well), "bound"
    else:
        energies, kinds = finite_well_bound_states(params, irrep, well), "bound"
    rows = [_level_row(params, irrep, i, float(e), kind=kinds) for i, e in enumerate(energies)]
    if not well.infinite and not irrep.is_su2:
        rows.append(_level_row(params, irrep, len(rows), well.V0, kind="continuum-marker"))
    return rows


def _level_row(params, irrep, index, energy, **extra) -> dict:
    return {
        "region": str(params.region),
        "k_or_j": _fmt_label(irrep),
        "s": irrep.s,
        "l": irrep.l,
        "level": index,
        "energy": energy,
        **extra,
    }


def _map(fn, items, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # preserves input order


def cmd_well(cfg: dict) -> tuple[dict, list[dict], int]:
    params = _params(cfg)
    ratio = float(_require(cfg, "A2_over_theta", "A2-over-theta"))
    if cfg.get("infinite"):
        V0 = math.inf
    else:
        V0 = float(_require(cfg, "V0", "V0 or --infinite"))
    irreps = _irreps(cfg, params)
    chunks = _map(_well_rows, [(params, ir, V0, ratio) for ir in irreps], int(cfg["jobs"]))
    rows = [r for chunk in chunks for r in chunk]
    return {"V0": "inf" if math.isinf(V0) else V0, "A2_over_theta": ratio}, rows, 0


def parse_potential(text: str, params: NCParams):
    from .solver import QuadraticPotential, RadialPotential, StepPotential

    kind, _, arg = text.partition(":")
    try:
        if kind == "quadratic":
            c0, c1 = (float(x) for x in arg.split(","))
            return QuadraticPotential(c0, c1)
        if kind == "oscillator":
            return QuadraticPotential.oscillator(params.mu, float(arg))
        if kind == "step":
            v0, ratio = (float(x) for x in arg.split(","))
            return StepPotential(v0, ratio)
        if kind == "table":
            data = np.loadtxt(arg, delimiter=",", comments="#", ndmin=2)
            r2, v = data[:, 0], data[:, 1]
            if np.any(np.diff(r2) <= 0):
                raise ValidationError("potential table must have increasing r^2")
            return RadialPotential(lambda x: float(np.interp(x, r2, v)), "table")
    except (ValueError, OSError) as exc:
        raise ValidationError(f"bad --potential {text!r}: {exc}") from exc
    raise ValidationError(f"unknown potential kind {kind!r}")


def _spectrum_rows(args) -> list[dict]:
    from .errors import NoBoundStates
    from .solver import solve_converged

    params, irrep, potential_text, levels, start, tol = args
    V = parse_potential(potential_text, params)
    try:
        res = solve_converged(params, irrep, V, levels, tol=tol, start=start)
    except NoBoundStates:
        return []
    return [
        _level_row(params, irrep, i, float(e), converged=bool(c))
        for i, (e, c) in enumerate(zip(res.eigenvalues, res.converged))
    ]


def cmd_spectrum(cfg: dict) -> tuple[dict, list[dict], int]:
    params = _params(cfg)
    text = _require(cfg, "potential")
    parse_potential(text, params)  # validate before fanning out
    irreps = _irreps(cfg, params)
    work = [(params, ir, text, int(cfg["levels"]), int(cfg["truncation"]), float(cfg["tol"])) for ir in irreps]
    chunks = _map(_spectrum_rows, work, int(cfg["jobs"]))
    rows = [r for chunk in chunks for r in chunk]
    return {"potential": text}, rows, 0


COMMANDS = {
    "verify": cmd_verify,
    "oscillator": cmd_oscillator,
    "landau": cmd_landau,
    "well": cmd_well,
    "spectrum": cmd_spectrum,
}


# --- output -------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, (np.floating,)):
        return _jsonable(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render(command: str, cfg: dict, summary: dict, rows: list[dict], fmt: str) -> str:
    columns = COLUMNS["landau-dos" if command == "landau" and cfg.get("dos_sweep") else command]
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": {k: cfg.get(k) for k in ("theta", "kappa", "hbar", "mu")},
            "summary": summary,
            "rows": rows,
        }
        return json.dumps(_jsonable(doc), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in columns})
        return buf.getvalue()
    return _table(columns, rows)


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("inf" if v > 0 else "nan")
    return v


def _table(columns: list[str], rows: list[dict]) -> str:
    cells = [[str(_csv_cell(r.get(c, ""))) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=_LOG_LEVELS.get(os.environ.get("NCQM_LOG", ""), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        summary, rows, code = COMMANDS[ns.command](cfg)
        text = render(ns.command, cfg, summary, rows, cfg["format"])
        emit(text, cfg.get("out"))
        if ns.command == "verify" and cfg.get("out") is not None:
            sys.stderr.write(_table(COLUMNS["verify"], rows))
    except CriticalRegion as exc:
        print(f"ncqm: critical region: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"ncqm: invalid input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ncqm: I/O error: {exc}", file=sys.stderr)
        return 2
    except NCQMError as exc:
        print(f"ncqm: {exc}", file=sys.stderr)
        return 1
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
