"""Sampling of subordinator marginals D_t and inverse marginals E_t.

All variates derive from counter-based Philox streams keyed by (seed,
stream_key), so any draw sequence is reproducible bit-for-bit regardless of
scheduling. Stable variates use Kanter's representation (exact, no rejection);
tempered variates use exponential-tilt rejection; inverse variates use the
exact first-passage identity for stable exponents and a grid first-passage
walk with conditional bisection refinement otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .levy_exponents import LaplaceExponent, MixedStable, Stable, TemperedStable, phi_prime

_OPEN_EPS = 2.0**-54  # keeps uniforms strictly inside (0,1)


class RunawaySamplerError(RuntimeError):
    """Grid first-passage walk exceeded its step budget without crossing."""


class UnsupportedConfigurationError(ValueError):
    """Requested combination of exponent, domain, and kind is out of scope."""


class Kind(enum.Enum):
    SUBORDINATOR = "sub"
    INVERSE = "inv"


@dataclass(frozen=True)
class RandomStream:
    """Deterministic stream of variates, a pure function of (seed, stream_key).

    Distinct stream_keys give statistically independent streams; estimator
    drivers key them by path index so parallel schedules cannot change
    results.
    """

    seed: int
    stream_key: int = 0

    def __post_init__(self):
        key = np.array([self.seed & (2**64 - 1), self.stream_key & (2**64 - 1)], dtype=np.uint64)
        object.__setattr__(self, "_gen", np.random.Generator(np.random.Philox(key=key)))

    def uniforms(self, size=None):
        return self._gen.random(size)

    def exponentials(self, size=None):
        return self._gen.standard_exponential(size)

    def normals(self, size=None):
        return self._gen.standard_normal(size)

    def spawn(self, offset: int) -> "RandomStream":
        """Fresh stream for the path block starting at index offset."""
        return RandomStream(self.seed, self.stream_key + int(offset))


@dataclass(frozen=True)
class TimeChangeSpec:
    """A subordinator or inverse-subordinator clock plus sampling strategy.

    grid_step is only consulted for grid-based inverse sampling; None means
    the default t * 1e-3 chosen at sampling time.
    """

    exponent: LaplaceExponent
    kind: Kind
    grid_step: float | None = None
    refine_bisections: int = 20

    def __post_init__(self):
        if self.grid_step is not None and not self.grid_step > 0.0:
            raise ValueError("grid_step must be positive")
        if self.refine_bisections < 0:
            raise ValueError("refine_bisections must be nonnegative")


def kanter_angle(u, beta: float):
    """Kanter's angle function A(u) on (0,1).

    A(u) = [sin(beta pi u)^beta sin((1-beta) pi u)^(1-beta) / sin(pi u)]
    raised to 1/(1-beta); S_1 = (A(U)/E)^((1-beta)/beta) for U uniform and E
    unit exponential (Kanter 1975).
    """
    b = beta
    num = np.sin(b * np.pi * u) ** b * np.sin((1.0 - b) * np.pi * u) ** (1.0 - b)
    return (num / np.sin(np.pi * u)) ** (1.0 / (1.0 - b))


def kanter_angle_tail(v, beta: float):
    """A(1-v) evaluated without cancellation, valid down to v ~ 1e-300.

    Double precision loses sin(pi(1-v)) entirely for v below ~1e-16, so the
    sine arguments are expanded exactly around u = 1; importance-sampled
    estimators probe this corner.
    """
    b = beta
    sb, cb = np.sin(b * np.pi), np.cos(b * np.pi)
    s1b, c1b = np.sin((1.0 - b) * np.pi), np.cos((1.0 - b) * np.pi)
    n1 = sb * np.cos(b * np.pi * v) - cb * np.sin(b * np.pi * v)
    n2 = s1b * np.cos((1.0 - b) * np.pi * v) - c1b * np.sin((1.0 - b) * np.pi * v)
    den = np.sin(np.pi * v)
    return (n1**b * n2 ** (1.0 - b) / den) ** (1.0 / (1.0 - b))


def _stable_block(beta: float, t: float, stream: RandomStream, shape):
    """iid S_t variates of the given shape via Kanter's representation."""
    u = np.maximum(stream.uniforms(shape), _OPEN_EPS)
    e = np.maximum(stream.exponentials(shape), 1e-300)
    with np.errstate(over="ignore"):
        s = t ** (1.0 / beta) * (kanter_angle(u, beta) / e) ** ((1.0 - beta) / beta)
    return np.minimum(s, 1e300)


def _tempered_block(beta: float, theta: float, t: float, stream: RandomStream, shape):
    """iid tempered-stable variates by chunked tilt rejection.

    Each chunk proposes a stable draw and accepts with probability e^(-theta X);
    the time axis is split so every chunk keeps acceptance >= 1/e.
    """
    n_chunks = max(1, math.ceil(t * theta**beta))
    tau = t / n_chunks
    total = np.zeros(shape, dtype=float).ravel()
    for _ in range(n_chunks):
        pending = np.arange(total.size)
        while pending.size:
            prop = _stable_block(beta, tau, stream, pending.size)
            acc = stream.uniforms(pending.size) <= np.exp(-theta * prop)
            total[pending[acc]] += prop[acc]
            pending = pending[~acc]
    return total.reshape(shape)


def _increment_block(exp: LaplaceExponent, h: float, stream: RandomStream, shape):
    """iid increments of D over time steps of length h, any catalog exponent.

    Tempered increments are accepted a whole row at a time with probability
    e^(-theta * row sum): the accepted joint density is proportional to the
    product of tempered densities, so rows are exact, and for the tiny h of a
    grid walk the rejection rate is ~h * len(row) * theta^beta.
    """
    if isinstance(exp, Stable):
        return _stable_block(exp.beta, h, stream, shape)
    if isinstance(exp, MixedStable):
        inc = np.zeros(shape, dtype=float)
        for b, w in exp.components:
            inc += _stable_block(b, w * h, stream, shape)
        return inc
    beta, theta = exp.beta, exp.theta
    row_time = h * (shape[1] if len(shape) > 1 else 1)
    if row_time * theta**beta > 0.5:
        return _tempered_block(beta, theta, h, stream, shape)
    inc = _stable_block(beta, h, stream, shape)
    if inc.ndim == 1:
        inc = inc[None, :]
    acc = stream.uniforms(inc.shape[0]) <= np.exp(-theta * inc.sum(axis=1))
    while not acc.all():
        bad = np.flatnonzero(~acc)
        prop = _stable_block(beta, h, stream, (bad.size, inc.shape[1]))
        inc[bad] = prop
        acc[bad] = stream.uniforms(bad.size) <= np.exp(-theta * prop.sum(axis=1))
    return inc.reshape(shape)


def sample_stable(beta: float, t: float, stream: RandomStream, size=None):
    """Stable subordinator marginal S_t with E[e^(-s S_t)] = e^(-t s^beta)."""
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0,1)")
    if not t > 0.0:
        raise ValueError("t must be positive")
    out = _stable_block(beta, t, stream, size if size is not None else 1)
    return float(out[0]) if size is None else out


def sample_tempered(beta: float, theta: float, t: float, stream: RandomStream, size=None):
    """Tempered stable marginal for phi(s) = (s+theta)^beta - theta^beta."""
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0,1)")
    if not theta > 0.0:
        raise ValueError("theta must be positive")
    if not t > 0.0:
        raise ValueError("t must be positive")
    out = _tempered_block(beta, theta, t, stream, size if size is not None else 1)
    return float(out[0]) if size is None else out


def sample_mixed(components, t: float, stream: RandomStream, size=None):
    """Sum of independent stable marginals, one per (beta_i, w_i) component."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    comps = tuple(components)
    if not comps:
        raise ValueError("need at least one component")
    shape = size if size is not None else 1
    out = np.zeros(shape, dtype=float)
    for b, w in comps:
        out += _stable_block(b, w * t, stream, shape)
    return float(out[0]) if size is None else out


def sample_subordinator(exp: LaplaceExponent, t: float, stream: RandomStream, size=None):
    """Marginal D_t for any catalog exponent (dispatch over the family)."""
    if isinstance(exp, Stable):
        return sample_stable(exp.beta, t, stream, size)
    if isinstance(exp, TemperedStable):
        return sample_tempered(exp.beta, exp.theta, t, stream, size)
    return sample_mixed(exp.components, t, stream, size)


_STEP_GUARD = 10**9
_REFINE_TRIES = 64


def _refine_crossing(exp, gap, h, levels, stream, tries=_REFINE_TRIES):
    """Bisection refinement of first-passage positions inside a crossing step.

    Each halving resamples the step as two half-step increments conditioned on
    the step still crossing the remaining gap (redraw until the pair sum
    exceeds the gap; for tempered exponents the tilt acceptance is folded into
    the same test, which is a valid rejection sampler for the conditional
    pair). The crossing half is kept and recursed into. When the conditioning
    event is too rare to hit within the try budget (jump-dominated crossings)
    refinement stops and the current left endpoint stands, so the position
    error is at most the current half-width.
    """
    n = gap.size
    offset = np.zeros(n)
    active = np.arange(n)
    g = gap.copy()
    hh = float(h)
    theta = exp.theta if isinstance(exp, TemperedStable) else None
    for _ in range(levels):
        if active.size == 0:
            break
        hh *= 0.5
        m = active.size
        if isinstance(exp, TemperedStable):
            x1 = _stable_block(exp.beta, hh, stream, (m, tries))
            x2 = _stable_block(exp.beta, hh, stream, (m, tries))
            tot = x1 + x2
            ok = (tot > g[active, None]) & (stream.uniforms((m, tries)) <= np.exp(-theta * tot))
        else:
            x1 = _increment_block(exp, hh, stream, (m, tries))
            x2 = _increment_block(exp, hh, stream, (m, tries))
            ok = x1 + x2 > g[active, None]
        hit = ok.any(axis=1)
        first = np.argmax(ok, axis=1)
        x1_sel = x1[np.arange(m), first]
        keep = active[hit]
        x1_keep = x1_sel[hit]
        second_half = x1_keep <= g[keep]
        moved = keep[second_half]
        offset[moved] += hh
        g[moved] -= x1_keep[second_half]
        active = keep
    return offset


def _grid_inverse_block(exp, t, grid_step, refine, stream, n):
    """First-passage positions E_t for n paths by a grid walk at grid_step.

    The walk accumulates iid increments until the running sum exceeds t and
    returns the (refined) left endpoint of the crossing step. All paths in the
    block advance in lockstep waves so the draw sequence is deterministic.
    """
    h = float(grid_step)
    # predicted crossing takes about t / (h phi'(0+)) steps; when the clock
    # has finite mean rate that estimate is sharp, so refuse upfront instead
    # of crawling to the in-loop guard
    mean_rate = phi_prime(exp, 1e-300)
    if np.isfinite(mean_rate) and t / (h * mean_rate) > _STEP_GUARD:
        raise RunawaySamplerError(
            f"crossing t={t:g} needs about {t / (h * mean_rate):.1e} steps of "
            f"size {h:g}; the guard is {_STEP_GUARD:.0e}"
        )
    result = np.zeros(n)
    gap_left = np.zeros(n)
    d = np.zeros(n)
    alive = np.arange(n)
    steps_done = 0
    while alive.size:
        k = int(max(64, min(4096, 4_000_000 // alive.size)))
        if isinstance(exp, TemperedStable):
            k = max(1, min(k, int(0.5 / (h * exp.theta**exp.beta)) or 1))
        if steps_done + k > _STEP_GUARD:
            raise RunawaySamplerError(
                f"no crossing of t={t:g} within {_STEP_GUARD:.0e} steps of size {h:g}"
            )
        inc = _increment_block(exp, h, stream, (alive.size, k))
        cs = d[alive, None] + np.cumsum(inc, axis=1)
        crossed = cs[:, -1] > t
        first = np.argmax(cs > t, axis=1)
        rows = np.flatnonzero(crossed)
        if rows.size:
            paths = alive[rows]
            j = first[rows]
            result[paths] = (steps_done + j) * h
            left_val = np.where(j > 0, cs[rows, np.maximum(j - 1, 0)], d[paths])
            gap_left[paths] = t - left_val
        d[alive] = cs[:, -1]
        alive = alive[~crossed]
        steps_done += k
    if refine > 0:
        result += _refine_crossing(exp, gap_left, h, refine, stream)
    return result


def sample_inverse(spec: TimeChangeSpec, t: float, stream: RandomStream, size=None):
    """Inverse-subordinator marginal E_t = inf{u : D_u > t}.

    Exact for stable exponents via E_t = (t / S_1)^beta; grid first passage
    with conditional bisection refinement otherwise. Raises
    RunawaySamplerError if a walk exceeds 1e9 steps without crossing.
    """
    if spec.kind is not Kind.INVERSE:
        raise ValueError("sample_inverse requires an InverseSubordinator spec")
    if not t > 0.0:
        raise ValueError("t must be positive")
    n = 1 if size is None else int(size)
    exp = spec.exponent
    if isinstance(exp, Stable):
        s = _stable_block(exp.beta, 1.0, stream, n)
        out = (t / s) ** exp.beta
    else:
        h = spec.grid_step if spec.grid_step is not None else t * 1e-3
        out = _grid_inverse_block(exp, t, h, spec.refine_bisections, stream, n)
    return float(out[0]) if size is None else out
