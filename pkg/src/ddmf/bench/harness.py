"""Benchmark harness: node counts and build times of random semi-classical circuits."""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
from tqdm import tqdm

from ddmf.bench.generator import BenchConfig, random_scqc
from ddmf.config import AppConfig
from ddmf.verify.verifier import build, make_manager

LOGGER = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "g", "trial", "seed", "nodes", "peak_nodes", "millis", "retries")


@dataclass(slots=True)
class BenchRecord:
    n: int
    g: int
    trial: int
    seed: int
    nodes: int
    peak_nodes: int
    millis: float
    retries: int = 0

    def row(self) -> list[str]:
        return [
            str(self.n),
            str(self.g),
            str(self.trial),
            str(self.seed),
            str(self.nodes),
            str(self.peak_nodes),
            f"{self.millis:.3f}",
            str(self.retries),
        ]


@dataclass(frozen=True, slots=True)
class BenchSummary:
    n: int
    g: int
    trials: int
    mean_nodes: float
    mean_peak_nodes: float
    mean_millis: float


@dataclass(slots=True)
class BenchResult:
    config: BenchConfig
    records: list[BenchRecord] = field(default_factory=list)

    @property
    def summary(self) -> BenchSummary:
        return summarize(self.config, self.records)


def _run_trial(args: tuple[BenchConfig, int, int | None]) -> BenchRecord:
    """Generate and build one trial in a fresh manager (top-level so workers can pickle it)."""
    config, trial, node_limit = args
    circuit = random_scqc(config, trial)
    manager = make_manager(circuit, config=AppConfig(node_limit=node_limit))
    result = build(circuit, manager)
    if not result.ok:
        # generator only draws classical controls, so this is a bug
        raise RuntimeError(f"generated circuit rejected: {result.violation}")
    stats = result.stats
    return BenchRecord(
        n=config.n,
        g=config.g,
        trial=trial,
        seed=config.seed,
        nodes=stats.nodes,
        peak_nodes=stats.peak_nodes,
        millis=stats.millis,
    )


def _compute_parallel_workers(trials: int, requested: int | None) -> int:
    """Worker count for parallel trials, leaving one CPU free when there are several."""
    if requested is not None and requested > 0:
        return min(requested, trials)
    cpu_count = os.cpu_count() or 1
    workers = min(cpu_count, max(1, trials))
    if workers > 2:
        workers -= 1
    return workers


def run_bench(
    config: BenchConfig,
    *,
    workers: int | None = 1,
    progress: bool = False,
    node_limit: int | None = None,
) -> BenchResult:
    """Run every trial of ``config``; records come back in trial order.

    ``workers=None`` picks a worker count from the CPU count.
    """
    args = [(config, trial, node_limit) for trial in range(config.trials)]
    num_workers = _compute_parallel_workers(config.trials, workers)
    result = BenchResult(config)
    if num_workers > 1:
        LOGGER.info("Running %d trials with %d workers", config.trials, num_workers)
        with ProcessPoolExecutor(max_workers=num_workers) as executor:
            result.records.extend(executor.map(_run_trial, args))
    else:
        for item in tqdm(args, desc=f"n={config.n} g={config.g}", disable=not progress):
            result.records.append(_run_trial(item))

    for record in result.records:
        LOGGER.info(
            "Trial %d: %d nodes, %d peak, %.1f ms",
            record.trial,
            record.nodes,
            record.peak_nodes,
            record.millis,
        )
    return result


def summarize(config: BenchConfig, records: list[BenchRecord]) -> BenchSummary:
    if not records:
        return BenchSummary(config.n, config.g, 0, 0.0, 0.0, 0.0)
    nodes = np.array([r.nodes for r in records], dtype=float)
    peaks = np.array([r.peak_nodes for r in records], dtype=float)
    millis = np.array([r.millis for r in records], dtype=float)
    return BenchSummary(
        config.n,
        config.g,
        len(records),
        float(nodes.mean()),
        float(peaks.mean()),
        float(millis.mean()),
    )


def write_csv(result: BenchResult, stream: TextIO) -> None:
    """CSV with a ``#`` config echo before the header and ``#`` summary lines after the rows."""
    stream.write(f"# {result.config.describe()}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in result.records:
        writer.writerow(record.row())
    summary = result.summary
    stream.write(
        f"# mean_nodes={summary.mean_nodes:.1f} mean_peak_nodes={summary.mean_peak_nodes:.1f} "
        f"mean_millis={summary.mean_millis:.3f}\n"
    )
