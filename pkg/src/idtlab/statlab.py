"""Statistical verification of distributional identities between ensembles.

Every identity is checked in characteristic-function space: empirical
characteristic functions (ECFs) are bounded by 1 regardless of tails, so
the same machinery covers Gaussian and heavy-tailed families alike.  A
test statistic is the maximum modulus of an ECF discrepancy over a fixed
grid of frequency vectors; its acceptance threshold comes from
``calibrate``, which replays the test under a true-null configuration
and returns an empirical quantile of the statistic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .processes import (
    PathEnsemble,
    TimeGrid,
    additive_paths,
    generate,
    spec_label,
)
from .randkit import RngState
from .report import TestReport
from .transforms import lamperti_apply, scale_paths, sum_independent

THETA_COMPONENTS = (0.25, 0.5, 1.0, 2.0)
DEFAULT_THETA_ID = "m12:0.25-2"


@dataclass(frozen=True)
class EcfEvaluation:
    """Empirical characteristic function values on a frequency grid."""

    times: tuple
    theta_points: np.ndarray
    values: np.ndarray
    n_samples: int

    def __post_init__(self):
        if self.theta_points.shape[0] != self.values.shape[0]:
            raise ValueError("one value per frequency vector required")
        if np.any(np.abs(self.values) > 1.0 + 1e-12):
            raise ValueError("ECF modulus exceeded 1")


def _ecf_block(values_sub: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """ECF of the column-subset matrix at each row of ``thetas``."""
    phases = values_sub @ thetas.T
    return np.cos(phases).mean(axis=0) + 1j * np.sin(phases).mean(axis=0)


def ecf(ensemble: PathEnsemble, time_indices, thetas) -> EcfEvaluation:
    """ECF of the ensemble at a subset of at most three grid times.

    ``thetas`` is a (K, m) array of frequency vectors, one component per
    selected time.  The value at the zero vector is exactly 1, and
    conjugating the frequencies conjugates the value.
    """
    idx = [int(i) for i in time_indices]
    if not 1 <= len(idx) <= 3:
        raise ValueError("time subset must have between 1 and 3 entries")
    thetas = np.atleast_2d(np.asarray(thetas, dtype=np.float64))
    if thetas.size == 0:
        raise ValueError("need at least one frequency vector")
    if thetas.shape[1] != len(idx):
        raise ValueError(
            f"frequency vectors have {thetas.shape[1]} components, expected {len(idx)}"
        )
    sub = ensemble.values[:, idx]
    return EcfEvaluation(
        times=tuple(float(ensemble.grid.times[i]) for i in idx),
        theta_points=thetas,
        values=_ecf_block(sub, thetas),
        n_samples=ensemble.n_paths,
    )


def default_theta_groups(m_total: int):
    """Frequency groups: all single times and all time pairs.

    Components come from ``THETA_COMPONENTS``; the leading component is
    kept positive because ensembles are real, so the ECF at ``-theta`` is
    the conjugate and carries no extra information.
    """
    groups = []
    single = np.array(THETA_COMPONENTS).reshape(-1, 1)
    for k in range(m_total):
        groups.append(((k,), single))
    comps = np.array(THETA_COMPONENTS)
    signed = np.concatenate([comps, -comps])
    pair = np.array([(a, b) for a in comps for b in signed])
    for k in range(m_total):
        for l in range(k + 1, m_total):
            groups.append(((k, l), pair))
    return groups


def _time_indices(grid: TimeGrid, times) -> list:
    out = []
    for t in times:
        hits = np.nonzero(np.abs(grid.times - t) <= 1e-12 * max(1.0, abs(t)))[0]
        if hits.size == 0:
            raise ValueError(f"time {t} is not on the grid {grid.times.tolist()}")
        out.append(int(hits[0]))
    return out


def _group_ecfs(values: np.ndarray, col_of, groups):
    out = []
    for cols, thetas in groups:
        sub = values[:, [col_of[c] for c in cols]]
        out.append(_ecf_block(sub, thetas))
    return out


def _resolve_groups(n_times: int, thetas):
    if thetas is None:
        return default_theta_groups(n_times), DEFAULT_THETA_ID
    return thetas, "custom"


# ---------------------------------------------------------------------------
# Kolmogorov-Smirnov machinery
# ---------------------------------------------------------------------------


def _kolmogorov_sf(x: float) -> float:
    """Survival function of the Kolmogorov distribution."""
    if x <= 0:
        return 1.0
    if x < 0.4:
        # theta-function form; the alternating series converges too slowly here
        total = 0.0
        for k in range(1, 20):
            total += math.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8.0 * x * x))
        return float(min(max(1.0 - math.sqrt(2.0 * math.pi) / x * total, 0.0), 1.0))
    total = 0.0
    for k in range(1, 200):
        term = math.exp(-2.0 * (k * x) ** 2)
        total += -term if k % 2 == 0 else term
        if term < 1e-18:
            break
    return float(min(max(2.0 * total, 0.0), 1.0))


def ks_two_sample(a, b):
    """Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value."""
    a = np.sort(np.asarray(a, dtype=np.float64).ravel())
    b = np.sort(np.asarray(b, dtype=np.float64).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    d = float(np.abs(cdf_a - cdf_b).max())
    en = math.sqrt(a.size * b.size / (a.size + b.size))
    return d, _kolmogorov_sf(en * d)


def ks_one_sample(x, cdf):
    """One-sample Kolmogorov-Smirnov test against a callable CDF."""
    xs = np.sort(np.asarray(x, dtype=np.float64).ravel())
    if xs.size == 0:
        raise ValueError("sample must be nonempty")
    n = xs.size
    f = np.asarray(cdf(xs), dtype=np.float64)
    d_plus = float((np.arange(1, n + 1) / n - f).max())
    d_minus = float((f - np.arange(0, n) / n).max())
    d = max(d_plus, d_minus)
    return d, _kolmogorov_sf(math.sqrt(n) * d)


# ---------------------------------------------------------------------------
# Distance tests in characteristic-function space
# ---------------------------------------------------------------------------


def idt_test(
    spec,
    alpha: float,
    n: int,
    grid: TimeGrid,
    times,
    n_paths: int,
    rng: RngState,
    threshold: float,
    thetas=None,
    mode: str = "power",
) -> TestReport:
    """Check the dividing-time identity at exponent ``alpha``.

    Compares the ECF of a fresh ensemble on the grid dilated by
    ``n**(1/alpha)`` against the n-th power of the ECF on the base grid
    (the power of a characteristic function is the n-fold convolution).
    ``mode="sum"`` replaces the power by the ECF of an actual pointwise
    sum of ``n`` independent ensembles, as a cross-check.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if mode not in ("power", "sum"):
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(grid, TimeGrid):
        grid = TimeGrid(grid)
    idx = _time_indices(grid, times)
    if len(idx) > 3:
        raise ValueError("at most three comparison times")
    groups, theta_id = _resolve_groups(len(idx), thetas)

    dilated = generate(spec, grid.scale(n ** (1.0 / alpha)), n_paths, rng.split(1))
    if mode == "power":
        base = generate(spec, grid, n_paths, rng.split(0))
        ref = [e**n for e in _group_ecfs(base.values, idx, groups)]
    else:
        summed = sum_independent(spec, n, grid, n_paths, rng.split(0))
        ref = _group_ecfs(summed.values, idx, groups)
    got = _group_ecfs(dilated.values, idx, groups)
    statistic = max(float(np.abs(g - r).max()) for g, r in zip(got, ref))
    return TestReport.from_distance(
        name=f"idt[{spec_label(spec)}]",
        statistic=statistic,
        threshold=threshold,
        n_samples=n_paths,
        seed=rng.seed,
        details={
            "alpha": float(alpha),
            "n": n,
            "mode": mode,
            "times": [float(t) for t in times],
            "theta_grid": theta_id,
            "stream": rng.stream,
        },
    )


def selfsimilarity_test(
    spec,
    h: float,
    a: float,
    grid: TimeGrid,
    times,
    n_paths: int,
    rng: RngState,
    threshold: float,
    thetas=None,
) -> TestReport:
    """Check ``X(a*t) = a**h * X(t)`` in law via ECF distance."""
    if not a > 0 or a == 1.0:
        raise ValueError(f"dilation must be positive and != 1, got {a}")
    if not isinstance(grid, TimeGrid):
        grid = TimeGrid(grid)
    idx = _time_indices(grid, times)
    groups, theta_id = _resolve_groups(len(idx), thetas)
    dilated = generate(spec, grid.scale(a), n_paths, rng.split(0))
    scaled = scale_paths(generate(spec, grid, n_paths, rng.split(1)), a**h)
    got = _group_ecfs(dilated.values, idx, groups)
    ref = _group_ecfs(scaled.values, idx, groups)
    statistic = max(float(np.abs(g - r).max()) for g, r in zip(got, ref))
    return TestReport.from_distance(
        name=f"selfsimilarity[{spec_label(spec)}]",
        statistic=statistic,
        threshold=threshold,
        n_samples=n_paths,
        seed=rng.seed,
        details={
            "h": float(h),
            "a": float(a),
            "times": [float(t) for t in times],
            "theta_grid": theta_id,
            "stream": rng.stream,
        },
    )


def stability_test(
    spec,
    beta_index: float,
    n: int,
    grid: TimeGrid,
    times,
    n_paths: int,
    rng: RngState,
    threshold: float,
    thetas=None,
) -> TestReport:
    """Check strict stability: n-fold sum matches ``n**(1/beta) * X`` in law."""
    n = int(n)
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not isinstance(grid, TimeGrid):
        grid = TimeGrid(grid)
    idx = _time_indices(grid, times)
    groups, theta_id = _resolve_groups(len(idx), thetas)
    summed = sum_independent(spec, n, grid, n_paths, rng.split(0))
    scaled = scale_paths(
        generate(spec, grid, n_paths, rng.split(1)), n ** (1.0 / beta_index)
    )
    got = _group_ecfs(summed.values, idx, groups)
    ref = _group_ecfs(scaled.values, idx, groups)
    statistic = max(float(np.abs(g - r).max()) for g, r in zip(got, ref))
    return TestReport.from_distance(
        name=f"stability[{spec_label(spec)}]",
        statistic=statistic,
        threshold=threshold,
        n_samples=n_paths,
        seed=rng.seed,
        details={
            "beta": float(beta_index),
            "n": n,
            "times": [float(t) for t in times],
            "theta_grid": theta_id,
            "stream": rng.stream,
        },
    )


def stationarity_test(
    ensemble: PathEnsemble,
    window: int,
    shift: int,
    threshold: float,
    thetas=None,
) -> TestReport:
    """Compare ECFs over two windows of a (log-time transformed) ensemble."""
    window = int(window)
    shift = int(shift)
    if not 1 <= window <= 3:
        raise ValueError(f"window must have 1 to 3 points, got {window}")
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    if window + shift > ensemble.n_times:
        raise ValueError(
            f"window {window} + shift {shift} exceeds grid size {ensemble.n_times}"
        )
    groups, theta_id = _resolve_groups(window, thetas)
    idx_a = list(range(window))
    idx_b = [i + shift for i in idx_a]
    got = _group_ecfs(ensemble.values, idx_a, groups)
    ref = _group_ecfs(ensemble.values, idx_b, groups)
    statistic = max(float(np.abs(g - r).max()) for g, r in zip(got, ref))
    return TestReport.from_distance(
        name="stationarity",
        statistic=statistic,
        threshold=threshold,
        n_samples=ensemble.n_paths,
        seed=ensemble.seed,
        details={
            "window": window,
            "shift": shift,
            "theta_grid": theta_id,
        },
    )


def temporal_sd_test(
    spec,
    alpha: float,
    b: float,
    grid: TimeGrid,
    times,
    n_paths: int,
    rng: RngState,
    threshold: float,
    thetas=None,
) -> TestReport:
    """Check the time-scale factorization of the joint CF.

    For a process dividing time at exponent ``alpha``, the CF at times t
    equals the product of the CFs at ``b**(1/alpha) * t`` and
    ``(1-b)**(1/alpha) * t``.  Three independent ensembles estimate the
    three factors; passing exhibits the scaled-copy-plus-residual
    decomposition with ratio ``b**(1/alpha)``.
    """
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must be inside (0, 1), got {b}")
    if not isinstance(grid, TimeGrid):
        grid = TimeGrid(grid)
    idx = _time_indices(grid, times)
    groups, theta_id = _resolve_groups(len(idx), thetas)
    whole = generate(spec, grid, n_paths, rng.split(0))
    part = generate(spec, grid.scale(b ** (1.0 / alpha)), n_paths, rng.split(1))
    rest = generate(spec, grid.scale((1.0 - b) ** (1.0 / alpha)), n_paths, rng.split(2))
    f0 = _group_ecfs(whole.values, idx, groups)
    f1 = _group_ecfs(part.values, idx, groups)
    f2 = _group_ecfs(rest.values, idx, groups)
    statistic = max(
        float(np.abs(a - p * r).max()) for a, p, r in zip(f0, f1, f2)
    )
    return TestReport.from_distance(
        name=f"temporal_sd[{spec_label(spec)}]",
        statistic=statistic,
        threshold=threshold,
        n_samples=n_paths,
        seed=rng.seed,
        details={
            "alpha": float(alpha),
            "b": float(b),
            "times": [float(t) for t in times],
            "theta_grid": theta_id,
            "stream": rng.stream,
        },
    )


def association_test(
    spec,
    family,
    alpha: float,
    t_list,
    n_paths: int,
    rng: RngState,
    level: float = 0.01,
) -> TestReport:
    """Marginal match between the spec and the clock-deformed Levy process.

    Two-sample KS at every requested time, Bonferroni-corrected: passes
    iff each p-value is at least ``level / len(t_list)``.
    """
    grid = TimeGrid(t_list)
    left = generate(spec, grid, n_paths, rng.split(0))
    right = additive_paths(family, alpha, grid, n_paths, rng.split(1))
    p_values = []
    for j in range(len(grid)):
        _, p = ks_two_sample(left.values[:, j], right.values[:, j])
        p_values.append(p)
    p_min = min(p_values)
    return TestReport.from_pvalue(
        name=f"association[{spec_label(spec)}]",
        p_value=p_min,
        level=level / len(p_values),
        n_samples=n_paths,
        seed=rng.seed,
        details={
            "alpha": float(alpha),
            "times": [float(t) for t in t_list],
            "p_values": p_values,
            "level": level,
            "stream": rng.stream,
        },
    )


def cov_estimate(ensemble: PathEnsemble) -> np.ndarray:
    """Uncentered sample covariance (the processes are centered by design)."""
    if ensemble.n_paths < 2:
        raise ValueError("need at least 2 paths to estimate a covariance")
    v = ensemble.values
    m = v.T @ v / ensemble.n_paths
    return (m + m.T) / 2.0


# ---------------------------------------------------------------------------
# Threshold calibration
# ---------------------------------------------------------------------------

_DISTANCE_TESTS = ("idt", "selfsimilarity", "stability", "temporal_sd", "stationarity")


def _run_statistic(kind: str, null_spec, n_paths, rng, params) -> float:
    inf = float("inf")
    if kind == "idt":
        report = idt_test(
            null_spec,
            alpha=params.get("alpha", null_spec.idt_exponent),
            n=params["n"],
            grid=params["grid"],
            times=params["times"],
            n_paths=n_paths,
            rng=rng,
            threshold=inf,
            mode=params.get("mode", "power"),
        )
    elif kind == "selfsimilarity":
        report = selfsimilarity_test(
            null_spec,
            h=params["h"],
            a=params["a"],
            grid=params["grid"],
            times=params["times"],
            n_paths=n_paths,
            rng=rng,
            threshold=inf,
        )
    elif kind == "stability":
        report = stability_test(
            null_spec,
            beta_index=params["beta"],
            n=params["n"],
            grid=params["grid"],
            times=params["times"],
            n_paths=n_paths,
            rng=rng,
            threshold=inf,
        )
    elif kind == "temporal_sd":
        report = temporal_sd_test(
            null_spec,
            alpha=params.get("alpha", null_spec.idt_exponent),
            b=params["b"],
            grid=params["grid"],
            times=params["times"],
            n_paths=n_paths,
            rng=rng,
            threshold=inf,
        )
    elif kind == "stationarity":
        y = np.asarray(params["y_grid"], dtype=np.float64)
        alpha = params.get("alpha", null_spec.idt_exponent)
        ens = generate(null_spec, TimeGrid(np.exp(y)), n_paths, rng)
        lam = lamperti_apply(ens, alpha, y)
        report = stationarity_test(lam, params["window"], params["shift"], inf)
    else:
        raise ValueError(f"unknown test kind {kind!r}")
    return report.statistic


def calibrate(
    null_spec,
    kind: str,
    n_reps: int,
    quantile: float,
    rng: RngState,
    n_paths: int,
    threads: int = 1,
    **params,
) -> float:
    """Empirical null quantile of a test statistic, used as its threshold.

    Replays the named test ``n_reps`` times under the true-null
    configuration with fresh substreams and returns the requested
    empirical quantile (``method="higher"``: never below the nominal
    coverage, monotone in the quantile).
    """
    n_reps = int(n_reps)
    if not 0.0 < quantile <= 1.0:
        raise ValueError(f"quantile must be in (0, 1], got {quantile}")
    if quantile < 1.0 and n_reps < 1.0 / (1.0 - quantile):
        raise ValueError(
            f"{n_reps} repetitions cannot resolve the {quantile} quantile"
        )
    if kind not in _DISTANCE_TESTS:
        raise ValueError(f"unknown test kind {kind!r}")

    def one(rep: int) -> float:
        return _run_statistic(kind, null_spec, n_paths, rng.split(rep), params)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            stats = list(pool.map(one, range(n_reps)))
    else:
        stats = [one(rep) for rep in range(n_reps)]
    return float(np.quantile(np.asarray(stats), quantile, method="higher"))
