"""Batch experiment runner.

Subcommands::

    idtlab run <config>        generate ensembles, run the configured tests,
                               write one report JSON per test plus a summary;
                               exit 0 iff everything passed, 1 on failure,
                               2 on a usage or config error
    idtlab calibrate <config>  build a threshold table from true-null replays
    idtlab export <config>     write ensemble CSV / binary files
    idtlab report <dir>        pretty-print report files written by `run`

Configs are flat ``key = value`` text with dotted sections; see the
``demos`` directory for worked examples.  ``--threads`` (or the
IDTLAB_THREADS environment variable) only sets the worker count: results
are bit-identical for any thread count because every unit of work draws
from its own substream.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

import numpy as np

from . import io as ensio
from .processes import (
    AdditiveTimeChange,
    Brownian,
    CompoundPoisson,
    GammaSubordinator,
    GaussianKernel,
    Mixture,
    PowerLine,
    StableLine,
    StableMotion,
    Subordinated,
    TimeGrid,
    WeightedSubordinator,
    generate,
)
from .kernels import FBmKernel, SpectralKernel, SpectralMeasure
from .randkit import RngState
from .statlab import (
    association_test,
    calibrate,
    idt_test,
    selfsimilarity_test,
    stability_test,
    stationarity_test,
    temporal_sd_test,
)
from .thresholds import ThresholdTable, entry_key
from .transforms import lamperti_apply

_STREAM_TESTS = 1000
_STREAM_EXPORT = 1
_STREAM_CALIBRATE = 2000


class ConfigError(Exception):
    """Invalid or missing configuration; maps to exit code 2."""


# ---------------------------------------------------------------------------
# Config parsing: flat `key = value` lines with dotted sections
# ---------------------------------------------------------------------------


def parse_config_text(text: str) -> dict:
    tree: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected `key = value`, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        node = tree
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"line {lineno}: {key!r} conflicts with a scalar key")
        if isinstance(node.get(parts[-1]), dict):
            raise ConfigError(f"line {lineno}: {key!r} conflicts with a section")
        node[parts[-1]] = value
    return tree


def load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _flatten(tree: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in tree.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, dotted + "."))
        else:
            out[dotted] = value
    return out


def _get(tree: dict, dotted: str, default=None, required: bool = False):
    node = tree
    for part in dotted.split("."):
        if not isinstance(node, dict) or part not in node:
            if required:
                raise ConfigError(f"missing required config field {dotted!r}")
            return default
        node = node[part]
    return node


def _as_float(raw, field: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"field {field!r}: expected a number, got {raw!r}") from None


def _as_int(raw, field: str) -> int:
    try:
        return int(str(raw), 0)
    except (TypeError, ValueError):
        raise ConfigError(f"field {field!r}: expected an integer, got {raw!r}") from None


def _as_floats(raw, field: str) -> list:
    if isinstance(raw, (list, tuple)):
        return [float(v) for v in raw]
    text = str(raw).replace(",", " ")
    out = []
    for token in text.split():
        out.append(_as_float(token, field))
    if not out:
        raise ConfigError(f"field {field!r}: expected a list of numbers")
    return out


def _as_bool(raw, field: str) -> bool:
    text = str(raw).strip().lower()
    if text in ("true", "yes", "1", "on"):
        return True
    if text in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"field {field!r}: expected a boolean, got {raw!r}")


# ---------------------------------------------------------------------------
# Spec construction
# ---------------------------------------------------------------------------

_FAMILY_KINDS = ("brownian", "stable_motion", "gamma", "compound_poisson")
_SPEC_KINDS = (
    "stable_line",
    "power_line",
    "fbm",
    "spectral",
    "additive",
    "subordinated",
    "mixture",
    "weighted_subordinator",
)


def build_family(node: dict, path: str):
    if not isinstance(node, dict):
        raise ConfigError(f"section {path!r} must hold family fields")
    kind = _get(node, "kind", required=True)
    if kind == "brownian":
        return Brownian(
            volatility=_as_float(_get(node, "volatility", 1.0), f"{path}.volatility"),
            drift=_as_float(_get(node, "drift", 0.0), f"{path}.drift"),
        )
    if kind == "stable_motion":
        return StableMotion(
            index=_as_float(_get(node, "index", required=True), f"{path}.index"),
            skew=_as_float(_get(node, "skew", 0.0), f"{path}.skew"),
        )
    if kind == "gamma":
        return GammaSubordinator(
            shape=_as_float(_get(node, "shape", 1.0), f"{path}.shape"),
            rate=_as_float(_get(node, "rate", 1.0), f"{path}.rate"),
        )
    if kind == "compound_poisson":
        return CompoundPoisson(
            intensity=_as_float(_get(node, "intensity", required=True), f"{path}.intensity"),
            jump_mean=_as_float(_get(node, "jump_mean", 0.0), f"{path}.jump_mean"),
            jump_sd=_as_float(_get(node, "jump_sd", 1.0), f"{path}.jump_sd"),
        )
    raise ConfigError(f"field {path}.kind: unknown family kind {kind!r}; expected one of {_FAMILY_KINDS}")


def build_spec(node: dict, path: str):
    if not isinstance(node, dict):
        raise ConfigError(f"section {path!r} must hold spec fields")
    kind = _get(node, "kind", required=True)
    if kind == "stable_line":
        return StableLine(alpha=_as_float(_get(node, "alpha", required=True), f"{path}.alpha"))
    if kind == "power_line":
        return PowerLine(alpha=_as_float(_get(node, "alpha", required=True), f"{path}.alpha"))
    if kind == "fbm":
        return GaussianKernel(
            FBmKernel(hurst=_as_float(_get(node, "hurst", required=True), f"{path}.hurst"))
        )
    if kind == "spectral":
        locations = _as_floats(_get(node, "locations", required=True), f"{path}.locations")
        weights = _as_floats(_get(node, "weights", required=True), f"{path}.weights")
        if len(locations) != len(weights):
            raise ConfigError(f"{path}: locations and weights must have equal length")
        measure = SpectralMeasure.symmetric(tuple(zip(locations, weights)))
        return GaussianKernel(
            SpectralKernel(
                alpha=_as_float(_get(node, "alpha", required=True), f"{path}.alpha"),
                measure=measure,
            )
        )
    if kind == "additive":
        return AdditiveTimeChange(
            family=build_family(_get(node, "family", required=True), f"{path}.family"),
            alpha=_as_float(_get(node, "alpha", required=True), f"{path}.alpha"),
        )
    if kind == "subordinated":
        return Subordinated(
            family=build_family(_get(node, "family", required=True), f"{path}.family"),
            chrono=build_spec(_get(node, "chrono", required=True), f"{path}.chrono"),
        )
    if kind == "mixture":
        dilations = _as_floats(_get(node, "dilations", required=True), f"{path}.dilations")
        weights = _as_floats(_get(node, "weights", required=True), f"{path}.weights")
        if len(dilations) != len(weights):
            raise ConfigError(f"{path}: dilations and weights must have equal length")
        return Mixture(
            base=build_spec(_get(node, "base", required=True), f"{path}.base"),
            atoms=tuple(zip(dilations, weights)),
        )
    if kind == "weighted_subordinator":
        dilations = _as_floats(_get(node, "dilations", required=True), f"{path}.dilations")
        weights = _as_floats(_get(node, "weights", required=True), f"{path}.weights")
        if len(dilations) != len(weights):
            raise ConfigError(f"{path}: dilations and weights must have equal length")
        return WeightedSubordinator(
            family=build_family(_get(node, "family", required=True), f"{path}.family"),
            atoms=tuple(zip(dilations, weights)),
            alpha=_as_float(_get(node, "alpha", required=True), f"{path}.alpha"),
        )
    raise ConfigError(f"field {path}.kind: unknown spec kind {kind!r}; expected one of {_SPEC_KINDS}")


# ---------------------------------------------------------------------------
# Threshold keys shared by `run` lookups and `calibrate` writes
# ---------------------------------------------------------------------------

_TEST_KINDS = ("idt", "selfsimilarity", "stability", "temporal_sd", "stationarity", "association")


def threshold_key_for(kind, spec, n_paths, quantile, grid, times, params) -> str:
    """Canonical table key.

    Hypothesis exponents (the idt/temporal alpha, the selfsimilarity h,
    the stability beta) are deliberately excluded: under the null they do
    not shape the statistic's distribution, and excluding them lets a
    negative control share the threshold of its positive twin.
    """
    if kind == "idt":
        extra = {"grid": grid, "times": times, "n": params["n"], "mode": params.get("mode", "power")}
    elif kind == "selfsimilarity":
        extra = {"grid": grid, "times": times, "a": params["a"]}
    elif kind == "stability":
        extra = {"grid": grid, "times": times, "n": params["n"]}
    elif kind == "temporal_sd":
        extra = {"grid": grid, "times": times, "b": params["b"]}
    elif kind == "stationarity":
        extra = {
            "y_grid": params["y_grid"],
            "window": params["window"],
            "shift": params["shift"],
        }
    else:
        raise ConfigError(f"test kind {kind!r} does not use calibrated thresholds")
    return entry_key(kind, spec, n_paths, quantile, **extra)


def _load_table(raw: str, config_dir: str):
    if raw == "default":
        return ThresholdTable.default()
    path = raw if os.path.isabs(raw) else os.path.join(config_dir, raw)
    try:
        return ThresholdTable.load(path)
    except OSError as exc:
        raise ConfigError(f"cannot read threshold table {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def _test_params(kind: str, node: dict, name: str, spec, grid_list) -> dict:
    times = _as_floats(_get(node, "times", grid_list), f"test.{name}.times")
    params: dict = {"times": times}
    if kind == "idt":
        params["n"] = _as_int(_get(node, "n", required=True), f"test.{name}.n")
        params["alpha"] = _as_float(_get(node, "alpha", spec.idt_exponent), f"test.{name}.alpha")
        params["mode"] = str(_get(node, "mode", "power"))
    elif kind == "selfsimilarity":
        params["h"] = _as_float(_get(node, "h", required=True), f"test.{name}.h")
        params["a"] = _as_float(_get(node, "a", required=True), f"test.{name}.a")
    elif kind == "stability":
        params["beta"] = _as_float(_get(node, "beta", required=True), f"test.{name}.beta")
        params["n"] = _as_int(_get(node, "n", required=True), f"test.{name}.n")
    elif kind == "temporal_sd":
        params["b"] = _as_float(_get(node, "b", required=True), f"test.{name}.b")
        params["alpha"] = _as_float(_get(node, "alpha", spec.idt_exponent), f"test.{name}.alpha")
    elif kind == "stationarity":
        params["y_grid"] = _as_floats(_get(node, "y_grid", required=True), f"test.{name}.y_grid")
        params["window"] = _as_int(_get(node, "window", 2), f"test.{name}.window")
        params["shift"] = _as_int(_get(node, "shift", 1), f"test.{name}.shift")
        params["alpha"] = _as_float(_get(node, "alpha", spec.idt_exponent), f"test.{name}.alpha")
        params.pop("times")
    elif kind == "association":
        params["alpha"] = _as_float(_get(node, "alpha", required=True), f"test.{name}.alpha")
        params["level"] = _as_float(_get(node, "level", 0.01), f"test.{name}.level")
        params["family"] = build_family(_get(node, "family", required=True), f"test.{name}.family")
    else:
        raise ConfigError(
            f"field test.{name}.kind: unknown test kind {kind!r}; expected one of {_TEST_KINDS}"
        )
    return params


def _resolve_threshold(kind, node, name, spec, n_paths, quantile, grid_list, params, cfg, config_dir, rng, threads):
    if kind == "association":
        return None
    explicit = _get(node, "threshold")
    if explicit is not None:
        return _as_float(explicit, f"test.{name}.threshold")
    source = str(_get(cfg, "threshold_table", "default"))
    if source == "calibrate":
        n_reps = _as_int(_get(cfg, "calibration.n_reps", 200), "calibration.n_reps")
        cal_params = {k: v for k, v in params.items() if k not in ("alpha", "times")}
        if kind != "stationarity":
            cal_params["grid"] = grid_list
            cal_params["times"] = params["times"]
        return calibrate(
            spec, kind, n_reps, quantile, rng, n_paths, threads=threads, **cal_params
        )
    table = _load_table(source, config_dir)
    return table.lookup(threshold_key_for(kind, spec, n_paths, quantile, grid_list, params.get("times"), params))


def _execute_test(kind, spec, grid, params, n_paths, rng, threshold):
    if kind == "idt":
        return idt_test(
            spec, params["alpha"], params["n"], grid, params["times"],
            n_paths, rng, threshold, mode=params["mode"],
        )
    if kind == "selfsimilarity":
        return selfsimilarity_test(
            spec, params["h"], params["a"], grid, params["times"], n_paths, rng, threshold
        )
    if kind == "stability":
        return stability_test(
            spec, params["beta"], params["n"], grid, params["times"], n_paths, rng, threshold
        )
    if kind == "temporal_sd":
        return temporal_sd_test(
            spec, params["alpha"], params["b"], grid, params["times"], n_paths, rng, threshold
        )
    if kind == "stationarity":
        y = np.asarray(params["y_grid"], dtype=np.float64)
        ens = generate(spec, TimeGrid(np.exp(y)), n_paths, rng)
        lam = lamperti_apply(ens, params["alpha"], y)
        return stationarity_test(lam, params["window"], params["shift"], threshold)
    if kind == "association":
        return association_test(
            spec, params["family"], params["alpha"], params["times"], n_paths, rng,
            level=params["level"],
        )
    raise ConfigError(f"unknown test kind {kind!r}")


def _require_run_basics(cfg):
    seed = _as_int(_get(cfg, "seed", required=True), "seed")
    n_paths = _as_int(_get(cfg, "n_paths", required=True), "n_paths")
    if n_paths < 100:
        raise ConfigError(f"field 'n_paths': must be at least 100, got {n_paths}")
    grid_list = _as_floats(_get(cfg, "grid", required=True), "grid")
    spec = build_spec(_get(cfg, "spec", required=True), "spec")
    return seed, n_paths, grid_list, spec


def _write_json(path, doc) -> None:
    payload = json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
    ensio.atomic_write_bytes(path, payload.encode("utf-8"))


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    config_dir = os.path.dirname(os.path.abspath(args.config))
    if args.seed is not None:
        cfg["seed"] = str(args.seed)
    if args.paths is not None:
        cfg["n_paths"] = str(args.paths)
    if args.out is not None:
        cfg["output_dir"] = args.out

    seed, n_paths, grid_list, spec = _require_run_basics(cfg)
    out_dir = str(_get(cfg, "output_dir", "out"))
    quantile = _as_float(_get(cfg, "quantile", 0.99), "quantile")
    grid = TimeGrid(grid_list)
    tests_node = _get(cfg, "test", {})
    if not isinstance(tests_node, dict):
        raise ConfigError("section 'test' must hold named test subsections")

    os.makedirs(out_dir, exist_ok=True)
    root = RngState(seed)
    resolved = _flatten(cfg)
    reports = {}
    jobs = []
    for index, name in enumerate(sorted(tests_node)):
        node = tests_node[name]
        if not isinstance(node, dict):
            raise ConfigError(f"section test.{name} must hold test fields")
        kind = str(_get(node, "kind", required=True))
        params = _test_params(kind, node, name, spec, grid_list)
        rng = root.split(_STREAM_TESTS + index)
        threshold = _resolve_threshold(
            kind, node, name, spec, n_paths, quantile, grid_list, params,
            cfg, config_dir, root.split(_STREAM_CALIBRATE + index), args.threads,
        )
        jobs.append((name, kind, params, rng, threshold))

    def run_one(job):
        name, kind, params, rng, threshold = job
        return name, _execute_test(kind, spec, grid, params, n_paths, rng, threshold)

    if args.threads and args.threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(run_one, jobs))
    else:
        results = [run_one(job) for job in jobs]

    for number, (name, report) in enumerate(results, start=1):
        reports[name] = report
        print(report.to_tap(number))
        _write_json(
            os.path.join(out_dir, f"report_{name}.json"),
            {
                "report": report.to_dict(),
                "config": resolved,
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            },
        )

    if _as_bool(_get(cfg, "export_csv", "false"), "export_csv"):
        ensemble = generate(spec, grid, n_paths, root.split(_STREAM_EXPORT))
        ensio.write_csv(ensemble, os.path.join(out_dir, "paths.csv"))

    all_pass = all(r.passed for r in reports.values())
    _write_json(
        os.path.join(out_dir, "summary.json"),
        {
            "all_pass": all_pass,
            "config": resolved,
            "reports": {k: v.to_dict() for k, v in reports.items()},
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    )
    print(f"# {sum(r.passed for r in reports.values())}/{len(reports)} tests passed")
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# calibrate
# ---------------------------------------------------------------------------


def cmd_calibrate(args) -> int:
    cfg = load_config(args.config)
    config_dir = os.path.dirname(os.path.abspath(args.config))
    if args.seed is not None:
        cfg["seed"] = str(args.seed)
    if args.paths is not None:
        cfg["n_paths"] = str(args.paths)

    seed = _as_int(_get(cfg, "seed", required=True), "seed")
    n_paths_default = _as_int(_get(cfg, "n_paths", required=True), "n_paths")
    grid_default = _as_floats(_get(cfg, "grid", required=True), "grid")
    quantile_default = _as_float(_get(cfg, "quantile", 0.99), "quantile")
    n_reps_default = _as_int(_get(cfg, "n_reps", 200), "n_reps")
    out_name = str(_get(cfg, "output", "thresholds.json"))
    out_path = out_name if os.path.isabs(out_name) else os.path.join(
        args.out or config_dir, out_name
    )

    entries_node = _get(cfg, "entry", required=True)
    if not isinstance(entries_node, dict):
        raise ConfigError("section 'entry' must hold named calibration subsections")

    root = RngState(seed)
    table = ThresholdTable(
        {},
        meta={
            "seed": seed,
            "n_reps": n_reps_default,
            "quantile": quantile_default,
            "tool": "idtlab calibrate",
        },
    )
    for index, name in enumerate(sorted(entries_node)):
        node = entries_node[name]
        kind = str(_get(node, "test", required=True))
        spec = build_spec(_get(node, "spec", required=True), f"entry.{name}.spec")
        n_paths = _as_int(_get(node, "n_paths", n_paths_default), f"entry.{name}.n_paths")
        quantile = _as_float(_get(node, "quantile", quantile_default), f"entry.{name}.quantile")
        n_reps = _as_int(_get(node, "n_reps", n_reps_default), f"entry.{name}.n_reps")
        grid_list = _as_floats(_get(node, "grid", grid_default), f"entry.{name}.grid")
        params = _test_params(kind, node, name, spec, grid_list)
        if kind == "association":
            raise ConfigError(f"entry.{name}: association uses p-values, not calibrated thresholds")
        # replay under the true null: the spec's own exponent, never a probe value
        cal_params = {k: v for k, v in params.items() if k != "alpha"}
        if kind != "stationarity":
            cal_params["grid"] = grid_list
        rng = root.split(_STREAM_CALIBRATE + index)
        threshold = calibrate(
            spec, kind, n_reps, quantile, rng, n_paths,
            threads=args.threads, **cal_params,
        )
        key = threshold_key_for(kind, spec, n_paths, quantile, grid_list, params.get("times"), params)
        table.set(key, threshold)
        print(f"# calibrated {name}: {threshold:.6g}")

    table.save(out_path)
    print(f"# wrote {out_path} ({len(table.entries)} entries)")
    return 0


# ---------------------------------------------------------------------------
# export / report
# ---------------------------------------------------------------------------


def cmd_export(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = str(args.seed)
    if args.paths is not None:
        cfg["n_paths"] = str(args.paths)
    if args.out is not None:
        cfg["output_dir"] = args.out
    seed, n_paths, grid_list, spec = _require_run_basics(cfg)
    out_dir = str(_get(cfg, "output_dir", "out"))
    formats_raw = str(_get(cfg, "export.formats", "csv"))
    formats = formats_raw.replace(",", " ").split()
    for fmt in formats:
        if fmt not in ("csv", "bin"):
            raise ConfigError(f"field 'export.formats': unknown format {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    ensemble = generate(spec, TimeGrid(grid_list), n_paths, RngState(seed).split(_STREAM_EXPORT))
    written = []
    if "csv" in formats:
        path = os.path.join(out_dir, "paths.csv")
        ensio.write_csv(ensemble, path)
        written.append(path)
    if "bin" in formats:
        path = os.path.join(out_dir, "paths.bin")
        ensio.write_binary(ensemble, path)
        written.append(path)
    for path in written:
        print(f"# wrote {path}")
    return 0


def cmd_report(args) -> int:
    directory = args.dir
    if not os.path.isdir(directory):
        raise ConfigError(f"{directory} is not a directory")
    names = sorted(
        f for f in os.listdir(directory) if f.startswith("report_") and f.endswith(".json")
    )
    if not names:
        print(f"# no report files in {directory}")
        return 0
    n_pass = 0
    for number, fname in enumerate(names, start=1):
        with open(os.path.join(directory, fname), "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        rep = doc["report"]
        status = "ok" if rep["pass"] else "not ok"
        n_pass += bool(rep["pass"])
        print(
            f"{status} {number} - {rep['name']} statistic={rep['statistic']:.6g} "
            f"threshold={rep['threshold']:.6g} n={rep['n_samples']}"
        )
    print(f"# {n_pass}/{len(names)} tests passed")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _default_threads() -> int:
    env = os.environ.get("IDTLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idtlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--paths", type=int, default=None, help="override n_paths")
        if with_out:
            p.add_argument("--out", default=None, help="override the output directory")
        p.add_argument(
            "--threads",
            type=int,
            default=_default_threads(),
            help="worker threads (never affects results)",
        )

    p_run = sub.add_parser("run", help="run the experiment config")
    p_run.add_argument("config")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cal = sub.add_parser("calibrate", help="build a threshold table")
    p_cal.add_argument("config")
    common(p_cal)
    p_cal.set_defaults(func=cmd_calibrate)

    p_exp = sub.add_parser("export", help="write ensemble CSV/binary files")
    p_exp.add_argument("config")
    common(p_exp)
    p_exp.set_defaults(func=cmd_export)

    p_rep = sub.add_parser("report", help="pretty-print reports in a directory")
    p_rep.add_argument("dir")
    p_rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
