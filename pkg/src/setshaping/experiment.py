"""Monte-Carlo comparison of Huffman-coded shaped sequences against Lc(x).

Each trial draws ``x`` uniformly from ``{1..ns}^N``, shapes it to length
``N + K``, Huffman-codes the result with its own frequencies and counts a
success when the coded length is strictly below the coding limit of ``x``.

Trial ``i`` draws from its own PCG64 stream seeded with
``SeedSequence(seed, spawn_key=(i,))``, so records do not depend on the
order in which trials run.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError
from .huffman import self_encoded_length
from .seqcore import Sequence, coding_limit
from .shaping import ShapingParams, shape, unshape
from .typespace import ShapedIndex, default_budget


class RoundTripError(RuntimeError):
    """The inverse transform did not return the original sequence."""


@dataclass(frozen=True)
class ExperimentConfig:
    ns: int
    N: int | None = None  # defaults to 2 * ns
    K: int = 1
    history: int = 1000
    seed: int = 0
    budget: int = field(default_factory=default_budget)

    def __post_init__(self):
        if self.N is None:
            object.__setattr__(self, "N", 2 * self.ns)
        if self.history < 1:
            raise DomainError(f"history must be >= 1, got {self.history}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")

    @property
    def params(self) -> ShapingParams:
        return ShapingParams(self.ns, self.N, self.K, self.budget)


@dataclass(frozen=True)
class TrialRecord:
    lc: float
    tlc: float
    code_len: int
    success: bool


@dataclass(frozen=True)
class ExperimentReport:
    ns: int
    N: int
    K: int
    history: int
    seed: int
    medlc: float
    medtlc: float
    medcodel: float
    cs: int
    pcs: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def draw_sequence(rng: np.random.Generator, n: int, ns: int) -> Sequence:
    return Sequence(tuple(rng.integers(1, ns + 1, size=n).tolist()), ns)


def evaluate(x: Sequence, params: ShapingParams, index: ShapedIndex) -> TrialRecord:
    """Shape ``x``, code the result and compare against ``Lc(x)``."""
    lc = coding_limit(x)
    y = shape(x, params, index)
    tlc = coding_limit(y)
    code_len = self_encoded_length(y)
    if unshape(y, params, index) != x:
        raise RoundTripError(f"sequence not equal to the initial sequence: {x}")
    return TrialRecord(lc, tlc, code_len, code_len < lc)


def run_trial(config: ExperimentConfig, rng: np.random.Generator,
              index: ShapedIndex | None = None) -> TrialRecord:
    params = config.params
    if index is None:
        index = params.index()
    return evaluate(draw_sequence(rng, config.N, config.ns), params, index)


def run_trials(config: ExperimentConfig) -> list[TrialRecord]:
    index = config.params.index()
    return [run_trial(config, trial_rng(config.seed, i), index) for i in range(config.history)]


def summarize(config: ExperimentConfig, records: list[TrialRecord]) -> ExperimentReport:
    if not records:
        raise DomainError("no trials to summarize")
    h = len(records)
    cs = sum(r.success for r in records)
    return ExperimentReport(
        ns=config.ns,
        N=config.N,
        K=config.K,
        history=h,
        seed=config.seed,
        medlc=math.fsum(r.lc for r in records) / h,
        medtlc=math.fsum(r.tlc for r in records) / h,
        medcodel=math.fsum(r.code_len for r in records) / h,
        cs=cs,
        pcs=100.0 * cs / h,
    )


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    return summarize(config, run_trials(config))


def write_report(report: ExperimentReport, path) -> None:
    """JSON when the suffix is ``.json``, otherwise a one-row CSV."""
    path = Path(path)
    row = report.to_dict()
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(row, indent=2) + "\n")
        return
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(row))
        w.writeheader()
        w.writerow(row)


def write_trials_csv(records: list[TrialRecord], path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "lc", "tlc", "code_len", "success"])
        for i, r in enumerate(records):
            w.writerow([i, repr(r.lc), repr(r.tlc), r.code_len, int(r.success)])
