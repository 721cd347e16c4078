"""Per-assignment reference simulation.

For one classical input the controls of a semi-classical circuit are classical at every
gate, so each qubit can be tracked as a single 2x2 matrix acting on |0>.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from ddmf.arith.cyclotomic import RingContext
from ddmf.arith.unitary import QubitState, Unitary2, apply_to_ket0, mat_mul
from ddmf.models import Circuit


@dataclass(slots=True)
class AssignmentTrace:
    """Accumulated matrix per qubit for one input; qubit i starts as I or X by ``a_i``."""

    assignment: tuple[int, ...]
    per_qubit_matrix: list[Unitary2]
    per_qubit_history: list[list[str]] = field(default_factory=list)
    scqc_ok: bool = True
    failed_gate: int | None = None
    failed_qubit: int | None = None

    def matrix(self, qubit: int) -> Unitary2:
        return self.per_qubit_matrix[qubit - 1]

    def history(self, qubit: int) -> list[str]:
        """Gates that acted on ``qubit``, in order; an input of 1 counts as an initial X."""
        return self.per_qubit_history[qubit - 1]

    def state(self, qubit: int) -> QubitState:
        return apply_to_ket0(self.matrix(qubit))

    def states(self) -> list[QubitState]:
        return [apply_to_ket0(m) for m in self.per_qubit_matrix]


def _classical_bit(matrix: Unitary2, identity: Unitary2, not_gate: Unitary2) -> int | None:
    if matrix == identity:
        return 0
    if matrix == not_gate:
        return 1
    return None


def simulate_assignment(
    circuit: Circuit, assignment: Sequence[int], ring: RingContext | None = None
) -> AssignmentTrace:
    """Run ``circuit`` on one classical input.

    The trace stops with ``scqc_ok = False`` at the first gate whose control is not
    exactly I or X.
    """
    if len(assignment) != circuit.n:
        raise ValueError(f"assignment has {len(assignment)} bits, circuit has {circuit.n}")
    ring = ring or RingContext.for_angles(circuit.angles())
    identity = Unitary2.identity(ring)
    not_gate = Unitary2.not_gate(ring)
    bits = tuple(1 if b else 0 for b in assignment)
    matrices = [not_gate if b else identity for b in bits]
    history: list[list[str]] = [["X"] if b else [] for b in bits]
    trace = AssignmentTrace(bits, matrices, history)

    for index, gate in enumerate(circuit.gates, start=1):
        fires = True
        for qubit in sorted(gate.controls):
            value = _classical_bit(matrices[qubit - 1], identity, not_gate)
            if value is None:
                trace.scqc_ok = False
                trace.failed_gate = index
                trace.failed_qubit = qubit
                return trace
            wanted = 1 if qubit in gate.positive_controls else 0
            fires = fires and value == wanted
        if fires:
            target = gate.target - 1
            matrices[target] = mat_mul(gate.unitary.matrix(ring), matrices[target])
            history[target].append(str(gate.unitary))
    return trace
