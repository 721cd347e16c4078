"""Machine-readable report documents for the CLI's ``--json`` output."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel

from ddmf.models import Circuit
from ddmf.oracle.assignment import AssignmentTrace
from ddmf.utils.render import format_bits, format_matrix, format_state, history_word
from ddmf.verify.verifier import BuildStats, VerificationReport


class ViolationModel(BaseModel):
    circuit: int
    gate: int
    qubit: int
    label: str


class CounterexampleModel(BaseModel):
    assignment: str
    qubit: int
    label: str
    left: str
    right: str
    confirmed: bool


class BuildStatsModel(BaseModel):
    gates: int
    nodes: int
    peak_nodes: int
    millis: float

    @classmethod
    def from_stats(cls, stats: BuildStats) -> BuildStatsModel:
        return cls(
            gates=stats.gates, nodes=stats.nodes, peak_nodes=stats.peak_nodes, millis=stats.millis
        )


class VerificationReportModel(BaseModel):
    verdict: Literal["equivalent", "inequivalent", "not-scqc"]
    exit_code: int
    qubits_equal: dict[str, bool] = {}
    first_difference: str | None = None
    violation: ViolationModel | None = None
    counterexample: CounterexampleModel | None = None
    builds: list[BuildStatsModel] = []
    nodes: int = 0
    peak_nodes: int = 0
    millis: float = 0.0

    @classmethod
    def from_report(
        cls, report: VerificationReport, circuit: Circuit, max_word_length: int = 3
    ) -> VerificationReportModel:
        violation = None
        if report.violation is not None:
            v = report.violation
            violation = ViolationModel(
                circuit=v.circuit, gate=v.gate_index, qubit=v.qubit, label=v.label
            )
        witness = None
        if report.counterexample is not None:
            c = report.counterexample
            witness = CounterexampleModel(
                assignment=format_bits(c.assignment),
                qubit=c.qubit,
                label=circuit.label(c.qubit),
                left=format_matrix(c.left, max_word_length),
                right=format_matrix(c.right, max_word_length),
                confirmed=c.confirmed,
            )
        first = report.first_difference
        return cls(
            verdict=report.verdict.value,
            exit_code=report.exit_code,
            qubits_equal={
                circuit.label(q): same for q, same in enumerate(report.qubits_equal, start=1)
            },
            first_difference=circuit.label(first) if first is not None else None,
            violation=violation,
            counterexample=witness,
            builds=[BuildStatsModel.from_stats(s) for s in report.builds],
            nodes=report.nodes,
            peak_nodes=report.peak_nodes,
            millis=report.millis,
        )


class QubitResultModel(BaseModel):
    qubit: int
    label: str
    matrix: str
    product: str
    state: str
    classical: int | None = None


class SimulationReportModel(BaseModel):
    input: str
    scqc_ok: bool
    failed_gate: int | None = None
    failed_qubit: int | None = None
    qubits: list[QubitResultModel] = []

    @classmethod
    def from_trace(
        cls, trace: AssignmentTrace, circuit: Circuit, max_word_length: int = 3
    ) -> SimulationReportModel:
        qubits = []
        for qubit in range(1, circuit.n + 1):
            state = trace.state(qubit)
            qubits.append(
                QubitResultModel(
                    qubit=qubit,
                    label=circuit.label(qubit),
                    matrix=format_matrix(trace.matrix(qubit), max_word_length),
                    product=history_word(trace.history(qubit)),
                    state=format_state(state),
                    classical=state.classical_value(),
                )
            )
        return cls(
            input=format_bits(trace.assignment),
            scqc_ok=trace.scqc_ok,
            failed_gate=trace.failed_gate,
            failed_qubit=trace.failed_qubit,
            qubits=qubits,
        )
