"""Random semi-classical circuit generation."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ddmf.arith.cyclotomic import RingContext
from ddmf.diagram.manager import DdmfManager
from ddmf.models import Circuit, Gate, GateSpec
from ddmf.verify.verifier import apply_gate, init_state

RNG_ALGORITHM = "PCG64"

BENCH_GATES: dict[str, GateSpec] = {
    "X": GateSpec("X"),
    "V": GateSpec("V"),
    "V+": GateSpec("V+"),
    "R(1/2)": GateSpec("R", Fraction(1, 2)),
    "R(1/4)": GateSpec("R", Fraction(1, 4)),
}


def _default_gate_mix() -> dict[str, float]:
    return {name: 1.0 for name in BENCH_GATES}


class BenchConfigError(ValueError):
    """Raised for invalid benchmark configurations."""


@dataclass(frozen=True)
class BenchConfig:
    n: int
    g: int
    trials: int = 10
    seed: int = 0
    gate_mix: Mapping[str, float] = field(default_factory=_default_gate_mix)
    max_controls: int = 2

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BenchConfigError(f"qubit count must be >= 1, got {self.n}")
        if self.g < 0:
            raise BenchConfigError(f"gate count must be >= 0, got {self.g}")
        if self.trials < 1:
            raise BenchConfigError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 1 << 64:
            raise BenchConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if self.max_controls < 0:
            raise BenchConfigError(f"max_controls must be >= 0, got {self.max_controls}")
        unknown = set(self.gate_mix) - set(BENCH_GATES)
        if unknown:
            raise BenchConfigError(f"unknown gates in mix: {sorted(unknown)}")
        weights = list(self.gate_mix.values())
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise BenchConfigError("gate weights must be finite and nonnegative")
        if not any(w > 0 for w in weights):
            raise BenchConfigError("gate weights must not all be zero")

    def gate_choices(self) -> tuple[list[GateSpec], np.ndarray]:
        names = [name for name in BENCH_GATES if self.gate_mix.get(name, 0.0) > 0]
        weights = np.array([self.gate_mix[name] for name in names], dtype=float)
        return [BENCH_GATES[name] for name in names], weights / weights.sum()

    def ring(self) -> RingContext:
        specs, _ = self.gate_choices()
        return RingContext.for_angles(s.angle for s in specs if s.angle is not None)

    def describe(self) -> str:
        mix = ",".join(f"{name}={self.gate_mix[name]:g}" for name in self.gate_mix)
        return (
            f"n={self.n} g={self.g} trials={self.trials} seed={self.seed} rng={RNG_ALGORITHM} "
            f"gate_mix={mix} max_controls={self.max_controls} "
            f"controls=uniform(0..{self.max_controls})"
        )


def trial_rng(config: BenchConfig, trial: int) -> np.random.Generator:
    """Independent stream per trial, spawned from the config seed."""
    sequence = np.random.SeedSequence(config.seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(sequence))


def random_scqc(config: BenchConfig, trial: int) -> Circuit:
    """Random circuit of exactly ``config.g`` gates that satisfies the semi-classical rule.

    Controls are drawn only from qubits whose current DDMF is Boolean, so every draw is
    valid and no retries are needed.
    """
    rng = trial_rng(config, trial)
    specs, probabilities = config.gate_choices()
    manager = DdmfManager(config.n, config.ring())
    state = init_state(config.n, manager)
    gates: list[Gate] = []
    for _ in range(config.g):
        target = int(rng.integers(1, config.n + 1))
        eligible = [
            q
            for q in range(1, config.n + 1)
            if q != target and manager.is_boolean(state.function(q))
        ]
        count = min(int(rng.integers(0, config.max_controls + 1)), len(eligible))
        controls = sorted(int(q) for q in rng.choice(eligible, size=count, replace=False))
        polarities = rng.integers(0, 2, size=count)
        positive = frozenset(q for q, p in zip(controls, polarities, strict=True) if p)
        negative = frozenset(q for q, p in zip(controls, polarities, strict=True) if not p)
        spec = specs[int(rng.choice(len(specs), p=probabilities))]
        gate = Gate(spec, target, positive, negative)
        state = apply_gate(state, gate)
        gates.append(gate)
    return Circuit(config.n, tuple(gates))
