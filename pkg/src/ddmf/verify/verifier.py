"""Gate-by-gate DDMF construction and equivalence checking of semi-classical circuits.

Each qubit i carries a DDMF D_i over the inputs x1..xn, starting as the Boolean function
x_i. A gate with controls builds the Boolean guard g (AND of positive controls and of the
complements of negative controls), forms D_gate = g ∗ CM(U), and updates its target as
D_gate ⊕ D_target, so that U multiplies the accumulated matrix on the left. A control whose
DDMF is not Boolean breaks the semi-classical restriction and stops the build.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field, replace

from ddmf.arith.unitary import Unitary2
from ddmf.config import AppConfig
from ddmf.diagram.manager import DdmfManager, DdmfRef
from ddmf.models import Circuit, Gate
from ddmf.oracle.assignment import simulate_assignment

LOGGER = logging.getLogger(__name__)


class NotScqcError(Exception):
    """Raised when a gate's control qubit does not hold a classical value for every input."""

    def __init__(self, gate_index: int, qubit: int, label: str | None = None) -> None:
        name = label or f"x{qubit}"
        super().__init__(f"gate {gate_index}: control qubit {name} is not classical")
        self.gate_index = gate_index
        self.qubit = qubit
        self.label = name


class CircuitMismatchError(ValueError):
    """Raised when two circuits to compare have different qubit counts."""


class Verdict(str, enum.Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    NOT_SCQC = "not-scqc"

    @property
    def exit_code(self) -> int:
        return {Verdict.EQUIVALENT: 0, Verdict.INEQUIVALENT: 1, Verdict.NOT_SCQC: 2}[self]


@dataclass(slots=True)
class CircuitState:
    """Per-qubit DDMFs D_1..D_n right after ``gate_cursor`` gates."""

    manager: DdmfManager
    qubits: list[DdmfRef]
    gate_cursor: int = 0

    @property
    def n(self) -> int:
        return len(self.qubits)

    def function(self, qubit: int) -> DdmfRef:
        return self.qubits[qubit - 1]

    def node_count(self) -> int:
        return self.manager.node_count_many(self.qubits)


@dataclass(frozen=True, slots=True)
class ScqcViolation:
    gate_index: int
    qubit: int
    label: str
    circuit: int = 1

    def __str__(self) -> str:
        return f"gate {self.gate_index}: control qubit {self.label} is not classical"


@dataclass(frozen=True, slots=True)
class BuildStats:
    gates: int
    nodes: int
    peak_nodes: int
    millis: float


@dataclass(slots=True)
class BuildResult:
    state: CircuitState
    stats: BuildStats
    violation: ScqcViolation | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def raise_for_violation(self) -> None:
        if self.violation is not None:
            v = self.violation
            raise NotScqcError(v.gate_index, v.qubit, v.label)


@dataclass(frozen=True, slots=True)
class Counterexample:
    assignment: tuple[int, ...]
    qubit: int
    left: Unitary2
    right: Unitary2
    confirmed: bool


@dataclass(slots=True)
class VerificationReport:
    verdict: Verdict
    qubits_equal: list[bool] = field(default_factory=list)
    violation: ScqcViolation | None = None
    counterexample: Counterexample | None = None
    builds: list[BuildStats] = field(default_factory=list)
    nodes: int = 0
    peak_nodes: int = 0
    millis: float = 0.0

    @property
    def first_difference(self) -> int | None:
        for qubit, same in enumerate(self.qubits_equal, start=1):
            if not same:
                return qubit
        return None

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code


def make_manager(
    *circuits: Circuit, n: int | None = None, config: AppConfig | None = None
) -> DdmfManager:
    """Manager whose ring holds every rotation angle of ``circuits``."""
    config = config or AppConfig()
    num_vars = n if n is not None else max((c.n for c in circuits), default=0)
    return DdmfManager(num_vars, config.ring_for(*circuits), node_limit=config.node_limit)


def init_state(n: int, manager: DdmfManager | None = None) -> CircuitState:
    """D_i^0 = x_i for every qubit."""
    manager = manager or DdmfManager(n)
    if manager.num_vars != n:
        raise CircuitMismatchError(f"manager has {manager.num_vars} variables, circuit has {n}")
    return CircuitState(manager, [manager.variable(i) for i in range(1, n + 1)])


def control_function(
    state: CircuitState, gate: Gate, *, labels: tuple[str, ...] | None = None
) -> DdmfRef:
    """Boolean guard g of ``gate``; constant-true when the gate has no controls.

    Raises:
        NotScqcError: if a control qubit's DDMF is not Boolean.
    """
    manager = state.manager
    gate_index = state.gate_cursor + 1
    guard = manager.true()
    for qubit in sorted(gate.controls):
        func = state.function(qubit)
        if not manager.is_boolean(func):
            label = labels[qubit - 1] if labels else None
            raise NotScqcError(gate_index, qubit, label)
        literal = func if qubit in gate.positive_controls else manager.bool_not(func)
        guard = manager.bool_and(guard, literal)
    return guard


def gate_function(
    state: CircuitState, gate: Gate, *, labels: tuple[str, ...] | None = None
) -> DdmfRef:
    """D_gate = g ∗ CM(U): U where the gate fires, I elsewhere."""
    manager = state.manager
    guard = control_function(state, gate, labels=labels)
    return manager.select(guard, manager.constant(gate.unitary.matrix(manager.ring)))


def apply_gate(
    state: CircuitState, gate: Gate, *, labels: tuple[str, ...] | None = None
) -> CircuitState:
    """Return the state after ``gate``; only the target's DDMF changes."""
    d_gate = gate_function(state, gate, labels=labels)
    qubits = list(state.qubits)
    qubits[gate.target - 1] = state.manager.compose(d_gate, qubits[gate.target - 1])
    return replace(state, qubits=qubits, gate_cursor=state.gate_cursor + 1)


def build(
    circuit: Circuit,
    manager: DdmfManager | None = None,
    *,
    config: AppConfig | None = None,
    circuit_index: int = 1,
) -> BuildResult:
    """Fold :func:`apply_gate` over ``circuit``; stops at the first non-classical control."""
    manager = manager or make_manager(circuit, config=config)
    start = time.perf_counter()
    state = init_state(circuit.n, manager)
    violation: ScqcViolation | None = None
    for gate in circuit.gates:
        try:
            state = apply_gate(state, gate, labels=circuit.labels)
        except NotScqcError as exc:
            violation = ScqcViolation(exc.gate_index, exc.qubit, exc.label, circuit_index)
            LOGGER.warning("Circuit %d is not semi-classical: %s", circuit_index, violation)
            break
    millis = (time.perf_counter() - start) * 1000.0
    stats = BuildStats(state.gate_cursor, state.node_count(), manager.live_nodes, millis)
    LOGGER.info(
        "Built circuit %d: %d gates, %d nodes, %.1f ms",
        circuit_index,
        stats.gates,
        stats.nodes,
        stats.millis,
    )
    return BuildResult(state, stats, violation)


def find_counterexample(left: DdmfRef, right: DdmfRef) -> tuple[int, ...] | None:
    """Assignment where ``left`` and ``right`` differ, or None when they are equal.

    Descends one variable at a time, preferring the 1-cofactor while it still differs.
    Variables that are never decided stay 0.
    """
    manager = left.manager
    if manager.equal(left, right):
        return None
    bits = [0] * manager.num_vars
    while not manager.equal(left, right):
        var = min(manager.top_var(left), manager.top_var(right))
        if var > manager.num_vars:
            break
        one_left = manager.cofactor(left, var, 1)
        one_right = manager.cofactor(right, var, 1)
        if manager.equal(one_left, one_right):
            left = manager.cofactor(left, var, 0)
            right = manager.cofactor(right, var, 0)
        else:
            bits[var - 1] = 1
            left, right = one_left, one_right
    return tuple(bits)


def check_equivalence(
    first: Circuit,
    second: Circuit,
    *,
    config: AppConfig | None = None,
    counterexample: bool = False,
) -> VerificationReport:
    """Build both circuits in one manager and compare each qubit's DDMF by handle.

    Raises:
        CircuitMismatchError: if the circuits have different qubit counts.
    """
    if first.n != second.n:
        raise CircuitMismatchError(f"circuits have {first.n} and {second.n} qubits")
    start = time.perf_counter()
    manager = make_manager(first, second, config=config)
    builds: list[BuildResult] = []
    for index, circuit in enumerate((first, second), start=1):
        result = build(circuit, manager, circuit_index=index)
        builds.append(result)
        if not result.ok:
            return VerificationReport(
                Verdict.NOT_SCQC,
                violation=result.violation,
                builds=[b.stats for b in builds],
                peak_nodes=manager.live_nodes,
                millis=(time.perf_counter() - start) * 1000.0,
            )

    left_state, right_state = builds[0].state, builds[1].state
    flags = [
        manager.equal(a, b) for a, b in zip(left_state.qubits, right_state.qubits, strict=True)
    ]
    report = VerificationReport(
        Verdict.EQUIVALENT if all(flags) else Verdict.INEQUIVALENT,
        qubits_equal=flags,
        builds=[b.stats for b in builds],
        nodes=manager.node_count_many(left_state.qubits + right_state.qubits),
        peak_nodes=manager.live_nodes,
    )
    qubit = report.first_difference
    if counterexample and qubit is not None:
        report.counterexample = _counterexample(first, second, left_state, right_state, qubit)
    report.millis = (time.perf_counter() - start) * 1000.0
    return report


def _counterexample(
    first: Circuit,
    second: Circuit,
    left_state: CircuitState,
    right_state: CircuitState,
    qubit: int,
) -> Counterexample:
    manager = left_state.manager
    left, right = left_state.function(qubit), right_state.function(qubit)
    bits = find_counterexample(left, right)
    if bits is None:
        raise RuntimeError(f"qubit {qubit} differs by handle but no witness was found")
    left_value = manager.evaluate(left, bits)
    right_value = manager.evaluate(right, bits)
    # confirm against per-assignment simulation, independent of the diagrams
    trace_a = simulate_assignment(first, bits, manager.ring)
    trace_b = simulate_assignment(second, bits, manager.ring)
    confirmed = (
        trace_a.scqc_ok
        and trace_b.scqc_ok
        and trace_a.matrix(qubit) == left_value
        and trace_b.matrix(qubit) == right_value
        and left_value != right_value
    )
    if not confirmed:
        LOGGER.warning("Counterexample %s for qubit %d not confirmed by simulation", bits, qubit)
    return Counterexample(bits, qubit, left_value, right_value, confirmed)
