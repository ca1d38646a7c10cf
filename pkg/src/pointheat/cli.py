"""Batch command-line front end: scenario configs in, CSV curves out.

Config schema (JSON, SI units throughout; see README for the field-by-field
reference):

    mode          "hr" | "ht" | "sweep" | "convergence"
    quantity      for mode "sweep": "hr" or "ht"
    particles     list of {material, radius, position, temperature}
    environment   {type: vacuum|sphere|plate|mirror_cavity, ...}
    sweep         {parameter, scale, min, max, count, gap?}
    quadrature    {x_min, x_max, rel_tol, max_panels}
    multipole     {rel_tol, l_cap, block}
    output        default CSV path
"""

import hashlib
import json
import os
import sys
import time

import click
import numpy as np

from . import __version__
from .backend import active_backend
from .constants import CONSTANTS_VERSION
from .errors import AccuracyError, PointheatError
from .greens import MirrorCavity, MultipoleConfig, Plate, PointSphere, Sphere, Vacuum
from .materials import (
    GOLD,
    SIC,
    DielectricModel,
    ParticleSpec,
    dipole_validity,
)
from .presets import PRESETS
from .transport import (
    QuadratureConfig,
    _check_geometry,
    _env_distances,
    convergence_study,
    hr,
    ht,
)


class ConfigError(PointheatError, ValueError):
    pass


def _parse_material(node) -> DielectricModel:
    if not isinstance(node, dict) or "type" not in node:
        raise ConfigError("material must be an object with a 'type' field")
    kind = node["type"]
    if kind == "vacuum":
        return DielectricModel.vacuum()
    if kind == "mirror":
        return DielectricModel.mirror()
    if kind == "constant":
        return DielectricModel.constant(complex(node.get("re", 1.0), node.get("im", 0.0)))
    if kind == "sic":
        return SIC
    if kind == "gold":
        return GOLD
    if kind == "sic_lorentz":
        return DielectricModel.sic_lorentz(node["eps_inf"], node["omega_lo"],
                                           node["omega_to"], node["gamma"])
    if kind == "drude":
        return DielectricModel.drude(node["omega_p"], node["omega_tau"])
    raise ConfigError(f"unknown material type {kind!r}")


def _parse_particle(node) -> ParticleSpec:
    try:
        return ParticleSpec(_parse_material(node["material"]), float(node["radius"]),
                            tuple(node["position"]), float(node["temperature"]))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad particle spec: {exc}") from exc


def _parse_environment(node):
    kind = node.get("type", "vacuum") if isinstance(node, dict) else "vacuum"
    if kind == "vacuum":
        return Vacuum()
    if kind == "sphere":
        cls = PointSphere if node.get("dipole_approx", False) else Sphere
        kwargs = {"radius": float(node["radius"]),
                  "material": _parse_material(node["material"]),
                  "center": tuple(node.get("center", (0.0, 0.0, 0.0)))}
        if cls is Sphere:
            kwargs["mu"] = float(node.get("mu", 1.0))
        return cls(**kwargs)
    if kind == "plate":
        return Plate(_parse_material(node["material"]), float(node.get("mu", 1.0)))
    if kind == "mirror_cavity":
        return MirrorCavity(float(node["radius"]), tuple(node.get("center", (0, 0, 0))))
    raise ConfigError(f"unknown environment type {kind!r}")


def _parse_sweep(node):
    if node is None:
        return None
    for key in ("parameter", "min", "max", "count"):
        if key not in node:
            raise ConfigError(f"sweep needs field {key!r}")
    param = node["parameter"]
    if param not in ("sphere_radius", "separation", "distance", "l_max"):
        raise ConfigError(f"unknown sweep parameter {param!r}")
    scale = node.get("scale", "log")
    lo, hi, count = float(node["min"]), float(node["max"]), int(node["count"])
    if not (hi > lo and count >= 2):
        raise ConfigError("sweep grid must be strictly increasing with count >= 2")
    if param == "l_max":
        grid = np.unique(np.round(np.linspace(lo, hi, count)).astype(int))
    elif scale == "log":
        if lo <= 0:
            raise ConfigError("log grid needs min > 0")
        grid = np.geomspace(lo, hi, count)
    elif scale == "linear":
        grid = np.linspace(lo, hi, count)
    else:
        raise ConfigError(f"unknown sweep scale {scale!r}")
    return {"parameter": param, "grid": grid, "gap": float(node.get("gap", 1e-7))}


def parse_config(doc: dict):
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    mode = doc.get("mode")
    if mode not in ("hr", "ht", "sweep", "convergence"):
        raise ConfigError("mode must be one of hr, ht, sweep, convergence")
    quantity = doc.get("quantity", mode if mode in ("hr", "ht") else "ht")
    if quantity not in ("hr", "ht"):
        raise ConfigError("quantity must be 'hr' or 'ht'")
    particles = [_parse_particle(p) for p in doc.get("particles", [])]
    need = 1 if quantity == "hr" else 2
    if len(particles) < need:
        raise ConfigError(f"mode {mode!r} needs at least {need} particle(s)")
    env = _parse_environment(doc.get("environment", {"type": "vacuum"}))
    sweep = _parse_sweep(doc.get("sweep"))
    if mode in ("sweep", "convergence") and sweep is None:
        raise ConfigError(f"mode {mode!r} requires a sweep block")
    if sweep is not None:
        param = sweep["parameter"]
        if param == "sphere_radius" and not isinstance(env, (Sphere, PointSphere)):
            raise ConfigError("sphere_radius sweep needs a sphere environment")
        if param == "separation" and quantity != "ht":
            raise ConfigError("separation sweep applies to transfer runs")
        if param == "distance" and not isinstance(env, Plate):
            raise ConfigError("distance sweep needs a plate environment")
        if mode == "convergence" and param != "l_max":
            raise ConfigError("convergence mode sweeps l_max")
    qnode = doc.get("quadrature", {})
    quad = QuadratureConfig(
        x_min=float(qnode.get("x_min", 1e-4)), x_max=float(qnode.get("x_max", 40.0)),
        rel_tol=float(qnode.get("rel_tol", 1e-6)),
        refine_windows=tuple(tuple(w) for w in qnode.get("refine_windows", ())),
        max_panels=int(qnode.get("max_panels", 4000)))
    mnode = doc.get("multipole", {})
    mp = MultipoleConfig(rel_tol=float(mnode.get("rel_tol", 1e-8)),
                         l_cap=int(mnode.get("l_cap", 5000)),
                         block=int(mnode.get("block", 8)))
    return {"mode": mode, "quantity": quantity, "particles": particles,
            "environment": env, "sweep": sweep, "quad": quad, "mp": mp,
            "output": doc.get("output", "pointheat.csv")}


def _reposition(cfg, value):
    """Particles and environment for one sweep point."""
    env = cfg["environment"]
    p1 = cfg["particles"][0]
    p2 = cfg["particles"][1] if len(cfg["particles"]) > 1 else None
    sweep = cfg["sweep"]
    if sweep is None:
        return p1, p2, env
    param = sweep["parameter"]
    if param == "sphere_radius":
        gap = sweep["gap"]
        z = value + gap
        c = np.asarray(env.center)
        p1 = ParticleSpec(p1.material, p1.radius, tuple(c + (0, 0, -z)), p1.temperature)
        p2 = ParticleSpec(p2.material, p2.radius, tuple(c + (0, 0, z)), p2.temperature)
        if isinstance(env, Sphere):
            env = Sphere(value, env.material, env.mu, env.center)
        else:
            env = PointSphere(value, env.material, env.center)
    elif param == "separation":
        p1 = ParticleSpec(p1.material, p1.radius, (0, 0, -value / 2), p1.temperature)
        p2 = ParticleSpec(p2.material, p2.radius, (0, 0, value / 2), p2.temperature)
    elif param == "distance":
        p1 = ParticleSpec(p1.material, p1.radius, (0, 0, value), p1.temperature)
    return p1, p2, env


def _run_point(args):
    cfg, value = args
    p1, p2, env = _reposition(cfg, value)
    t0 = time.perf_counter()
    if cfg["quantity"] == "hr":
        res = hr(p1, env, quad=cfg["quad"], mp=cfg["mp"])
    else:
        res = ht(p1, p2, env, quad=cfg["quad"], mp=cfg["mp"])
    wall = time.perf_counter() - t0
    return [value, res.power, res.normalized, res.quad_error, res.max_l, wall]


def run_config(cfg, threads=1):
    """Evaluate a parsed config; returns (header, rows)."""
    if cfg["mode"] == "convergence":
        sweep = cfg["sweep"]
        p1, p2 = cfg["particles"][0], cfg["particles"][1]
        t0 = time.perf_counter()
        pairs, full = convergence_study(p1, p2, cfg["environment"], list(sweep["grid"]),
                                        quad=cfg["quad"], mp=cfg["mp"], with_value=True)
        wall = time.perf_counter() - t0
        header = ["l_max", "value_w", "normalized_value", "quad_error", "max_l",
                  "wall_time_s"]
        vol = p1.volume * p2.volume
        rows = [[l, ratio * full, ratio * full / vol, 0.0, l, wall / len(pairs)]
                for l, ratio in pairs]
        return header, rows
    values = list(cfg["sweep"]["grid"]) if cfg["sweep"] else [0.0]
    param = cfg["sweep"]["parameter"] if cfg["sweep"] else "single"
    header = [param, "value_w", "normalized_value", "quad_error", "max_l", "wall_time_s"]
    tasks = [(cfg, v) for v in values]
    if threads <= 1:
        rows = []
        try:
            for t in tasks:
                rows.append(_run_point(t))
        except AccuracyError as exc:
            exc.partial_rows = (header, rows)
            raise
    else:
        import multiprocessing as mp_mod
        with mp_mod.get_context("fork").Pool(threads) as pool:
            rows = pool.map(_run_point, tasks)
    return header, rows


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header, rows, meta):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _config_hash(doc) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _meta(doc, partial=False):
    meta = {
        "pointheat": __version__,
        "config_sha256": _config_hash(doc),
        "constants": CONSTANTS_VERSION,
        "backend": active_backend(),
    }
    if partial:
        meta["partial"] = "true"
    return meta


def validate_config(doc):
    """Schema, dipole-validity and geometry report for a config document."""
    report = {"schema": "ok", "dipole": [], "geometry": [], "status": "ok"}
    try:
        cfg = parse_config(doc)
    except (ConfigError, PointheatError) as exc:
        report["schema"] = str(exc)
        report["status"] = "schema_error"
        return report
    values = list(cfg["sweep"]["grid"]) if cfg["sweep"] else [0.0]
    probe = [values[0], values[len(values) // 2], values[-1]] if cfg["sweep"] else [0.0]
    worst = "pass"
    for v in probe:
        p1, p2, env = _reposition(cfg, v)
        parts = [p for p in (p1, p2) if p is not None]
        for i, p in enumerate(parts):
            others = [float(np.linalg.norm(np.subtract(q.position, p.position)))
                      for q in parts if q is not p]
            dists = tuple(_env_distances(env, p.position)) + tuple(others)
            for chk in dipole_validity(p, dists):
                if chk.verdict != "pass":
                    report["dipole"].append(
                        {"point": v, "particle": i, "check": chk.name,
                         "ratio": chk.ratio, "verdict": chk.verdict})
                    worst = chk.verdict if worst != "fail" else worst
            try:
                _check_geometry(env, p.position)
            except PointheatError as exc:
                report["geometry"].append({"point": v, "particle": i, "error": str(exc)})
    if report["geometry"]:
        report["status"] = "geometry_violation"
    elif report["dipole"]:
        report["status"] = f"dipole_{worst}"
    return report


def _default_threads() -> int:
    env = os.environ.get("POINTHEAT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@click.group()
@click.version_option(__version__)
def main():
    """Thermal radiation and transfer of point particles near structured bodies."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", "preset_name", type=click.Choice(sorted(PRESETS)))
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.option("--threads", type=int, default=None, help="worker processes "
              "(default: POINTHEAT_THREADS or CPU count)")
@click.option("--tolerance", type=float, default=None, help="override quadrature rel_tol")
def run(config_path, preset_name, out_path, threads, tolerance):
    """Evaluate a scenario config or a named preset and write a CSV."""
    threads = threads if threads is not None else _default_threads()
    if (config_path is None) == (preset_name is None):
        click.echo("error: provide exactly one of --config or --preset", err=True)
        sys.exit(2)
    if preset_name:
        runner, _ = PRESETS[preset_name]
        quad = QuadratureConfig(rel_tol=tolerance) if tolerance else None
        out = out_path or f"{preset_name}.csv"
        try:
            header, rows = runner(threads=threads, quad=quad)
        except AccuracyError as exc:
            click.echo(f"accuracy error: {exc}", err=True)
            sys.exit(4)
        except PointheatError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        write_csv(out, header, rows, _meta({"preset": preset_name}))
        click.echo(f"wrote {out} ({len(rows)} rows)")
        return
    try:
        doc = json.loads(open(config_path, encoding="utf-8").read())
        cfg = parse_config(doc)
    except (json.JSONDecodeError, ConfigError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    if tolerance:
        cfg["quad"] = QuadratureConfig(cfg["quad"].x_min, cfg["quad"].x_max,
                                       tolerance, cfg["quad"].refine_windows,
                                       cfg["quad"].max_panels)
    out = out_path or cfg["output"]
    try:
        header, rows = run_config(cfg, threads=threads)
    except AccuracyError as exc:
        p_header, p_rows = getattr(exc, "partial_rows", (["error"], [[str(exc)]]))
        write_csv(out, p_header, p_rows, _meta(doc, partial=True))
        click.echo(f"accuracy not met: {exc} "
                   f"(partial CSV with {len(p_rows)} rows written)", err=True)
        sys.exit(4)
    except PointheatError as exc:
        click.echo(f"physics/geometry error: {exc}", err=True)
        sys.exit(3)
    write_csv(out, header, rows, _meta(doc))
    click.echo(f"wrote {out} ({len(rows)} rows)")


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def validate(config_path):
    """Schema, dipole-validity and geometry report (always exits 0)."""
    try:
        doc = json.loads(open(config_path, encoding="utf-8").read())
    except json.JSONDecodeError as exc:
        click.echo(json.dumps({"schema": f"invalid JSON: {exc}",
                               "status": "schema_error"}, indent=2))
        return
    click.echo(json.dumps(validate_config(doc), indent=2))


@main.command()
def presets():
    """List the built-in figure presets."""
    for name in sorted(PRESETS):
        click.echo(f"{name}: {PRESETS[name][1]}")


if __name__ == "__main__":
    main()
