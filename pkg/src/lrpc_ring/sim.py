"""Monte Carlo estimation of decoding failure rates.

Each trial plants a random error whose support is a uniformly random free
module of dimension ``t``, decodes, and records which of the product,
syndrome and intersection conditions held. Condition violations are
attributed in that order: a trial counts toward ``fer2`` only if the product
condition held, and toward ``fer3`` only if the first two held. This matches
the conditioning of the corresponding bounds and makes
``fer <= fer1 + fer2 + fer3`` hold whenever every all-conditions trial
decodes.

Trials are processed in chunks of consecutive indices. Every trial seeds its
own generator from ``(seed, t, index)``, and the stop rule is applied in index
order, so the output does not depend on the number of worker processes.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.stats import binomtest

from .bounds import BoundInputs, IntermediateRingWarning, bound_components, bound_overall_failure
from .code import CodeParams, LrpcCode, dumps, generate, loads, random_codeword
from .decoder import Conditions, FailureReason, check_conditions, decode
from .errors import ConfigError, LrpcError, PreconditionViolated
from .submodule import random_free_submodule, random_vector_with_support

log = logging.getLogger(__name__)

CSV_HEADER = ("t", "fer", "bound", "fer1", "bound1", "fer2", "bound2", "fer3", "bound3",
              "trials", "fer_ci", "fer1_ci", "fer2_ci", "fer3_ci")
WORKERS_ENV = "LRPC_SIM_WORKERS"
DEFAULT_CHUNK = 4096

_REASON_CODES = {None: 0, **{r: i + 1 for i, r in enumerate(FailureReason)}}
_REASONS = {v: k for k, v in _REASON_CODES.items()}


@dataclass(frozen=True)
class SimConfig:
    p: int = 2
    r: int = 2
    m: int = 20
    lam: int = 2
    n: int = 20
    k: int = 8
    t_min: int = 1
    t_max: int = 7
    target_failures: int = 1000
    max_trials: int = 10**7
    seed: int = 42
    out_path: str | None = None
    random_codeword: bool = False
    h: tuple[int, ...] | None = None
    code_path: str | None = None
    workers: int | None = None
    chunk_size: int = DEFAULT_CHUNK

    def validate(self) -> None:
        if self.p < 2 or self.r < 1 or self.m < 1:
            raise ConfigError("need p >= 2, r >= 1, m >= 1")
        if not 0 < self.k < self.n:
            raise ConfigError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.lam * (self.n - self.k) < self.n:
            raise ConfigError(f"lambda={self.lam} is below n/(n-k) = {self.n / (self.n - self.k):.3f}")
        if not 0 <= self.t_min <= self.t_max:
            raise ConfigError(f"invalid t range {self.t_min}:{self.t_max}")
        if self.t_max * self.lam > self.m:
            raise ConfigError(f"t_max * lambda = {self.t_max * self.lam} exceeds m = {self.m}")
        if self.target_failures < 1 or self.max_trials < 1 or self.chunk_size < 1:
            raise ConfigError("target_failures, max_trials and chunk_size must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    @property
    def t_values(self) -> range:
        return range(self.t_min, self.t_max + 1)


class TrialResult(NamedTuple):
    success: bool
    conditions: Conditions
    reason: FailureReason | None


@dataclass
class SimRow:
    t: int
    trials: int = 0
    failures: int = 0
    # violations attributed in condition order (see module docstring)
    product_fail: int = 0
    syndrome_fail: int = 0
    intersection_fail: int = 0
    # unconditional violation counts, for analysis
    product_any: int = 0
    syndrome_any: int = 0
    intersection_any: int = 0
    erasure_fail: int = 0
    # failures although all three conditions held; always 0 for a correct decoder
    unexplained: int = 0
    reasons: dict[str, int] = field(default_factory=dict)
    bound: float | None = None
    bound1: float | None = None
    bound2: float | None = None
    bound3: float | None = None

    def _rate(self, count: int) -> float | None:
        return count / self.trials if self.trials else None

    def _half_width(self, count: int) -> float | None:
        return wilson_half_width(count, self.trials) if self.trials else None

    @property
    def fer(self):
        return self._rate(self.failures)

    @property
    def fer1(self):
        return self._rate(self.product_fail)

    @property
    def fer2(self):
        return self._rate(self.syndrome_fail)

    @property
    def fer3(self):
        return self._rate(self.intersection_fail)

    @property
    def fer_ci(self):
        return self._half_width(self.failures)

    @property
    def fer1_ci(self):
        return self._half_width(self.product_fail)

    @property
    def fer2_ci(self):
        return self._half_width(self.syndrome_fail)

    @property
    def fer3_ci(self):
        return self._half_width(self.intersection_fail)

    def csv_fields(self) -> list[str]:
        empirical = self.trials > 0
        out = []
        for name in CSV_HEADER:
            if name == "t":
                out.append(str(self.t))
            elif name == "trials":
                out.append(str(self.trials) if empirical else "")
            else:
                out.append(_fmt(getattr(self, name)))
        return out


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def wilson_half_width(successes: int, trials: int) -> float:
    """Half the width of the 95% Wilson score interval."""
    lo, hi = wilson_interval(successes, trials)
    return (hi - lo) / 2


def trial_rng(seed: int, t: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, t, index])


def run_trial(code: LrpcCode, t: int, rng: np.random.Generator, *, codeword=None) -> TrialResult:
    """Plant an error of free rank ``t`` on ``codeword`` (zero by default) and decode."""
    ring = code.ring
    E = random_free_submodule(ring, t, rng)
    e = random_vector_with_support(E, code.n, rng)
    c = ring.zeros(code.n) if codeword is None else np.asarray(codeword, dtype=ring.dtype) % ring.q
    out = decode(code, (c + e) % ring.q, t)
    success = out.success and np.array_equal(out.codeword, c)
    # decode already formed span(syndrome of c + e), which equals that of e
    s = out.syndrome_space.gens if out.syndrome_space is not None else code.syndrome(e)
    cond = check_conditions(code, E, s, syndrome_space=out.syndrome_space, support=out.support)
    return TrialResult(success, cond, out.reason)


def _encode_trial(res: TrialResult) -> int:
    c = res.conditions
    return (int(res.success) | int(c.product) << 1 | int(c.syndrome) << 2 | int(c.intersection) << 3
            | _REASON_CODES[res.reason] << 4)


def _run_chunk(code: LrpcCode, t: int, seed: int, start: int, stop: int, random_cw: bool) -> np.ndarray:
    out = np.empty(stop - start, dtype=np.int16)
    for i, idx in enumerate(range(start, stop)):
        rng = trial_rng(seed, t, idx)
        cw = random_codeword(code, rng) if random_cw else None
        out[i] = _encode_trial(run_trial(code, t, rng, codeword=cw))
    return out


_WORKER_CODE: LrpcCode | None = None


def _init_worker(code_text: str) -> None:
    global _WORKER_CODE
    _WORKER_CODE = loads(code_text)


def _worker_chunk(args) -> np.ndarray:
    return _run_chunk(_WORKER_CODE, *args)


def _accumulate(row: SimRow, codes: np.ndarray, target: int) -> bool:
    """Add trials in order; returns True once ``target`` failures are reached."""
    for v in codes.tolist():
        success = bool(v & 1)
        product, synd, inter = bool(v & 2), bool(v & 4), bool(v & 8)
        reason = _REASONS[v >> 4]
        row.trials += 1
        row.product_any += not product
        row.syndrome_any += not synd
        row.intersection_any += not inter
        if not product:
            row.product_fail += 1
        elif not synd:
            row.syndrome_fail += 1
        elif not inter:
            row.intersection_fail += 1
        if not success:
            row.failures += 1
            key = reason.value if reason is not None else "WrongCodeword"
            row.reasons[key] = row.reasons.get(key, 0) + 1
            if reason is FailureReason.ERASURE_INCONSISTENT:
                row.erasure_fail += 1
            if product and synd and inter:
                row.unexplained += 1
            if row.failures >= target:
                return True
    return False


def attach_bounds(row: SimRow, cfg: SimConfig) -> SimRow:
    inp = BoundInputs(cfg.p, cfg.r, cfg.m, cfg.lam, cfg.n, cfg.k, row.t)
    if row.t == 0:
        row.bound = row.bound1 = row.bound2 = row.bound3 = 0.0
        return row
    if cfg.lam * row.t >= cfg.m:
        # the product bound is undefined here; leave the analytic columns empty
        return row
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntermediateRingWarning)
        row.bound1, row.bound2, row.bound3 = bound_components(inp)
        row.bound = bound_overall_failure(inp)
    return row


def worker_count(cfg: SimConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


def build_code(cfg: SimConfig) -> LrpcCode:
    if cfg.code_path:
        from .code import load

        code = load(cfg.code_path)
        ring = code.ring
        if (ring.p, ring.r, ring.m, code.lam, code.n, code.k) != (cfg.p, cfg.r, cfg.m, cfg.lam, cfg.n, cfg.k):
            raise ConfigError("code file parameters do not match the configuration")
        return code
    params = CodeParams(cfg.p, cfg.r, cfg.m, cfg.lam, cfg.n, cfg.k, h=cfg.h, seed=cfg.seed)
    try:
        return generate(params, np.random.default_rng(cfg.seed))
    except (PreconditionViolated, LrpcError) as exc:
        raise ConfigError(f"could not build a code: {exc}") from exc


def simulate_t(code: LrpcCode, cfg: SimConfig, t: int, pool: ProcessPoolExecutor | None = None,
               workers: int = 1) -> SimRow:
    row = SimRow(t)
    start = 0
    while start < cfg.max_trials:
        if pool is None:
            stop = min(start + cfg.chunk_size, cfg.max_trials)
            batches = [_run_chunk(code, t, cfg.seed, start, stop, cfg.random_codeword)]
        else:
            spans = []
            s = start
            for _ in range(workers):
                if s >= cfg.max_trials:
                    break
                spans.append((t, cfg.seed, s, min(s + cfg.chunk_size, cfg.max_trials), cfg.random_codeword))
                s = spans[-1][3]
            batches = list(pool.map(_worker_chunk, spans))
            stop = s
        done = False
        for batch in batches:
            if _accumulate(row, batch, cfg.target_failures):
                done = True
                break
        if done:
            break
        start = stop
        log.debug("t=%d: %d trials, %d failures", t, row.trials, row.failures)
    return attach_bounds(row, cfg)


def run_sweep(cfg: SimConfig, code: LrpcCode | None = None) -> list[SimRow]:
    """One code, then trials for every ``t`` in the range until the stop rule fires."""
    cfg.validate()
    if code is None:
        code = build_code(cfg)
    workers = worker_count(cfg)
    rows = []
    if workers == 1:
        for t in cfg.t_values:
            rows.append(simulate_t(code, cfg, t))
            log.info("t=%d done: %d trials, %d failures", t, rows[-1].trials, rows[-1].failures)
        return rows
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(dumps(code),)) as pool:
        for t in cfg.t_values:
            rows.append(simulate_t(code, cfg, t, pool, workers))
            log.info("t=%d done: %d trials, %d failures", t, rows[-1].trials, rows[-1].failures)
    return rows


def bound_rows(cfg: SimConfig) -> list[SimRow]:
    """Rows carrying only the analytic columns."""
    cfg.validate()
    return [attach_bounds(SimRow(t), cfg) for t in cfg.t_values]


def rows_to_csv(rows: list[SimRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def write_csv(rows: list[SimRow], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))
