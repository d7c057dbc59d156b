"""Monte Carlo estimators of spectral and regular heat contents.

All one-dimensional estimation is Rao-Blackwellized: a path of the time change
is drawn, then the exact interval heat content at that clock value replaces
the Brownian indicator. Deep-time subordinator runs (leading index <= 1/2)
additionally use importance sampling on the Kanter representation, because
plain draws almost never land in the region where the deficit |Omega| - Q is
nonzero once t is of order 1e-8.

Work is blocked in fixed chunks with one counter-based stream per block, and
block results are combined by a pairwise tree in block order, so estimates are
bit-identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import samplers
from .heat_oracles import Disk, Interval, disk_survival_block, exact_H_interval, exact_Q_interval
from .levy_exponents import MixedStable, Regime, Stable, TemperedStable, regime
from .samplers import Kind, RandomStream, TimeChangeSpec, UnsupportedConfigurationError

BLOCK = 32768


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    n_paths: int
    seed: int
    wall_time: float


def combine_blocks(parts):
    """Pairwise-tree reduction of per-block (sum, sum of squares, count).

    The tree shape depends only on the block count, so the combined mean and
    stderr are bit-identical however the blocks were scheduled.
    """
    items = list(parts)
    if not items:
        raise ValueError("no blocks to combine")
    while len(items) > 1:
        merged = [
            (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            for a, b in zip(items[0::2], items[1::2])
        ]
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    s, q, n = items[0]
    mean = s / n
    var = max(q / n - mean * mean, 0.0)
    if n > 1:
        var *= n / (n - 1.0)
    return mean, float(np.sqrt(var / n))


def _moments(x):
    return float(x.sum()), float((x * x).sum()), x.size


def _is_stable_draws(beta, t, L, n, stream):
    """Importance-sampled stable subordinator draws and their weights.

    Proposals are log-uniform in the Kanter angle complement v = 1 - u and in
    the exponential variate e, tuned so the draws cover the full range of
    clock values u where the interval deficit L - Q(u) is appreciably nonzero
    (up to u_cap = pi L^2 / 4, beyond which Q has decayed).
    """
    u_cap = np.pi * L * L / 4.0
    s_cap = u_cap / t ** (1.0 / beta)
    A0 = (beta**beta * (1.0 - beta) ** (1.0 - beta)) ** (1.0 / (1.0 - beta))
    sig_b = np.sin(beta * np.pi) ** beta * np.sin((1.0 - beta) * np.pi) ** (1.0 - beta)
    e_sat = A0 * s_cap ** (-beta / (1.0 - beta))
    e_min = max(e_sat * 1e-6, 1e-300)
    e_max = 50.0
    A_need = s_cap ** (beta / (1.0 - beta)) * e_max
    v_sat = (sig_b / np.pi) * A_need ** (-(1.0 - beta))
    v_min = max(min(v_sat * 1e-6, 1e-4), 1e-290)
    log_v = np.log(1.0 / v_min)
    log_e = np.log(e_max / e_min)
    v = v_min * np.exp(log_v * stream.uniforms(n))
    e = e_min * np.exp(log_e * stream.uniforms(n))
    w = (log_v * v) * (log_e * e * np.exp(-e))
    a = samplers.kanter_angle_tail(v, beta)
    with np.errstate(over="ignore"):
        d = np.minimum(t ** (1.0 / beta) * (a / e) ** ((1.0 - beta) / beta), 1e300)
    return d, w


def _deficit_is_draws(exp, t, dom, n, stream):
    """Weighted draws of the spectral deficit |Omega| - Q(D_t) via importance
    sampling; tempered exponents ride the stable proposal through an exact
    exponential tilt of the marginal density."""
    L = dom.length
    if isinstance(exp, Stable):
        d, w = _is_stable_draws(exp.beta, t, L, n, stream)
    elif isinstance(exp, TemperedStable):
        d, w = _is_stable_draws(exp.beta, t, L, n, stream)
        with np.errstate(under="ignore"):
            w = w * np.exp(-exp.theta * d + t * exp.theta**exp.beta)
    elif isinstance(exp, MixedStable):
        # Telescope the deficit over components: with partial sums
        # S_j = D_1 + ... + D_j, write |Omega| - Q(S_N) as the sum over j of
        # Q(S_{j-1}) - Q(S_{j-1} + D_j), importance-sample D_j only, and draw
        # S_{j-1} plainly with exact Kanter marginals.  Each increment is
        # nonnegative and pointwise below the weighted single-component
        # deficit (Q is convex decreasing in the clock), so every term's
        # variance is dominated by ordinary single-component importance
        # sampling.  Multiplying the component weights instead degrades badly
        # once t is deep in the short-time regime.
        out = np.zeros(n)
        s_prev = np.zeros(n)
        for i, (b, wt) in enumerate(exp.components):
            di, wi = _is_stable_draws(b, wt * t, L, n, stream.spawn(1 + 2 * i))
            q_lo = exact_Q_interval(dom, s_prev)
            q_hi = exact_Q_interval(dom, np.minimum(s_prev + di, 1e300))
            out = out + (q_lo - q_hi) * wi
            if i + 1 < len(exp.components):
                plain = samplers.sample_stable(b, wt * t, stream.spawn(2 + 2 * i), n)
                s_prev = np.minimum(s_prev + plain, 1e300)
        return out
    else:
        raise TypeError(f"unknown exponent type {type(exp).__name__}")
    return (dom.volume - exact_Q_interval(dom, d)) * w


def _block_spectral_sub(args):
    exp, dom, t, use_is, seed, base_key, lo, size, _n_total = args
    stream = RandomStream(seed, base_key + lo)
    if use_is:
        x = _deficit_is_draws(exp, t, dom, size, stream)
    else:
        d = samplers.sample_subordinator(exp, t, stream, size)
        x = dom.volume - exact_Q_interval(dom, d)
    return _moments(x)


def _block_spectral_inv(args):
    spec, dom, t, seed, base_key, lo, size, _n_total = args
    stream = RandomStream(seed, base_key + lo)
    d = samplers.sample_inverse(spec, t, stream, size)
    x = dom.volume - exact_Q_interval(dom, d)
    return _moments(x)


def _block_regular(args):
    spec, dom, t, seed, base_key, lo, size, _n_total = args
    stream = RandomStream(seed, base_key + lo)
    if spec.kind is Kind.SUBORDINATOR:
        d = samplers.sample_subordinator(spec.exponent, t, stream, size)
    else:
        d = samplers.sample_inverse(spec, t, stream, size)
    x = exact_H_interval(dom, d)
    return _moments(x)


def _block_disk(args):
    spec, dom, t, seed, base_key, lo, size, n_total = args
    stream = RandomStream(seed, base_key + lo)
    if spec.kind is Kind.SUBORDINATOR:
        d = samplers.sample_subordinator(spec.exponent, t, stream, size)
    else:
        d = samplers.sample_inverse(spec, t, stream, size)
    surv = disk_survival_block(
        dom.radius, d, stream, strat_index=lo, strat_total=n_total, n=size
    )
    return _moments(dom.volume * surv)


def _run_blocks(task, common, n, stream, workers):
    blocks = [(lo, min(BLOCK, n - lo)) for lo in range(0, n, BLOCK)]
    argset = [common + (stream.seed, stream.stream_key, lo, size, n) for lo, size in blocks]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(task, argset))
    else:
        parts = [task(a) for a in argset]
    return combine_blocks(parts)


def _check_common(dom, want, t, n):
    if not isinstance(dom, want):
        other = "estimate_spectral_disk" if want is Interval else "the interval estimators"
        raise UnsupportedConfigurationError(
            f"domain {type(dom).__name__} not supported here; use {other}"
        )
    if not t > 0.0:
        raise ValueError("t must be positive")
    if n < 2:
        raise ValueError("need at least 2 paths")


def _clamp(value, vol):
    return min(max(value, 0.0), vol)


def estimate_spectral_subordinate(exp, dom, t, n, stream, *, workers=1):
    """Spectral heat content of Brownian motion subordinated by exp at time t.

    Conditioning on the clock D_t reduces each path to the exact interval heat
    content Q(D_t); deep-time low-index runs switch to importance sampling.
    """
    _check_common(dom, Interval, t, n)
    start = time.perf_counter()
    use_is = regime(exp) is not Regime.HIGH_INDEX
    mean, se = _run_blocks(_block_spectral_sub, (exp, dom, t, use_is), n, stream, workers)
    # importance sampling estimates the deficit directly; both paths return
    # deficit draws, so the content is volume minus the combined mean
    value = _clamp(dom.volume - mean, dom.volume)
    return Estimate(value, se, n, stream.seed, time.perf_counter() - start)


def estimate_spectral_inverse(
    exp, dom, t, n, stream, *, grid_step=None, refine_bisections=20, workers=1
):
    """Spectral heat content under an inverse subordinator clock.

    The inverse clock is continuous, so the killed and time-changed-then-
    killed contents coincide and one estimator serves both.
    """
    _check_common(dom, Interval, t, n)
    start = time.perf_counter()
    spec = TimeChangeSpec(exp, Kind.INVERSE, grid_step, refine_bisections)
    mean, se = _run_blocks(_block_spectral_inv, (spec, dom, t), n, stream, workers)
    value = _clamp(dom.volume - mean, dom.volume)
    return Estimate(value, se, n, stream.seed, time.perf_counter() - start)


def estimate_regular(
    exp, dom, t, n, stream, kind, *, grid_step=None, refine_bisections=20, workers=1
):
    """Regular heat content: expected heat mass in the complement at time t."""
    _check_common(dom, Interval, t, n)
    kind = Kind(kind) if isinstance(kind, str) else kind
    start = time.perf_counter()
    spec = TimeChangeSpec(exp, kind, grid_step, refine_bisections)
    mean, se = _run_blocks(_block_regular, (spec, dom, t), n, stream, workers)
    return Estimate(_clamp(mean, dom.volume), se, n, stream.seed, time.perf_counter() - start)


def estimate_spectral_disk(
    exp, dom, t, n, stream, kind, *, grid_step=None, refine_bisections=20, workers=1
):
    """Two-stage disk estimate: draw the clock, then one killed walk per clock."""
    _check_common(dom, Disk, t, n)
    kind = Kind(kind) if isinstance(kind, str) else kind
    start = time.perf_counter()
    spec = TimeChangeSpec(exp, kind, grid_step, refine_bisections)
    mean, se = _run_blocks(_block_disk, (spec, dom, t), n, stream, workers)
    return Estimate(_clamp(mean, dom.volume), se, n, stream.seed, time.perf_counter() - start)
