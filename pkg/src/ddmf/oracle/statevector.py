"""Exact 2^n state-vector simulation and the product-state crosscheck."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from ddmf.arith.cyclotomic import CycNumber, RingContext
from ddmf.arith.unitary import QubitState
from ddmf.models import Circuit, Gate
from ddmf.oracle.assignment import simulate_assignment

LOGGER = logging.getLogger(__name__)

DEFAULT_CAP = 12


class StateVectorCapError(ValueError):
    """Raised when a circuit has more qubits than the simulation cap allows."""


@dataclass(slots=True)
class StateVector:
    """Amplitudes over basis states; qubit x1 is the most significant index bit."""

    n: int
    amplitudes: np.ndarray

    def amplitude(self, bits: Sequence[int]) -> CycNumber:
        return self.amplitudes[basis_index(bits)]

    def norm_squared(self) -> CycNumber:
        total = self.amplitudes[0].abs_squared()
        for amp in self.amplitudes[1:]:
            total = total + amp.abs_squared()
        return total

    def is_normalized(self) -> bool:
        return self.norm_squared() == 1

    def support(self) -> list[int]:
        return [i for i, amp in enumerate(self.amplitudes) if not amp.is_zero()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.n == other.n and all(
            a == b for a, b in zip(self.amplitudes, other.amplitudes, strict=True)
        )


def basis_index(bits: Sequence[int]) -> int:
    index = 0
    for bit in bits:
        index = (index << 1) | (1 if bit else 0)
    return index


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise StateVectorCapError(f"{n} qubits exceed the state-vector cap of {cap}")


def basis_state(n: int, bits: Sequence[int], ring: RingContext) -> StateVector:
    if len(bits) != n:
        raise ValueError(f"input has {len(bits)} bits, circuit has {n}")
    amplitudes = np.empty(1 << n, dtype=object)
    amplitudes[:] = [ring.zero()] * (1 << n)
    amplitudes[basis_index(bits)] = ring.one()
    return StateVector(n, amplitudes)


def product_state(states: Sequence[QubitState], ring: RingContext) -> StateVector:
    """Tensor product of single-qubit states, first state most significant."""
    amplitudes = np.empty(1, dtype=object)
    amplitudes[0] = ring.one()
    for state in states:
        pair = np.empty(2, dtype=object)
        pair[0], pair[1] = state.amp0, state.amp1
        amplitudes = np.outer(amplitudes, pair).ravel()
    return StateVector(len(states), amplitudes)


def _apply(vector: StateVector, gate: Gate, ring: RingContext) -> None:
    n = vector.n
    indices = np.arange(1 << n)
    mask = np.ones(1 << n, dtype=bool)
    for qubit in gate.positive_controls:
        mask &= ((indices >> (n - qubit)) & 1) == 1
    for qubit in gate.negative_controls:
        mask &= ((indices >> (n - qubit)) & 1) == 0
    target_bit = 1 << (n - gate.target)
    zeros = indices[mask & ((indices & target_bit) == 0)]
    ones = zeros | target_bit

    a, b, c, d = gate.unitary.matrix(ring).entries
    amps = vector.amplitudes
    for i0, i1 in zip(zeros, ones, strict=True):
        v0, v1 = amps[i0], amps[i1]
        amps[i0] = a * v0 + b * v1
        amps[i1] = c * v0 + d * v1


def iter_statevector(
    circuit: Circuit,
    bits: Sequence[int],
    ring: RingContext | None = None,
    *,
    cap: int = DEFAULT_CAP,
) -> Iterator[StateVector]:
    """Yield the state after each gate, starting from |bits>; the vector is updated in place."""
    _check_cap(circuit.n, cap)
    ring = ring or RingContext.for_angles(circuit.angles())
    vector = basis_state(circuit.n, bits, ring)
    for gate in circuit.gates:
        _apply(vector, gate, ring)
        yield vector


def statevector_simulate(
    circuit: Circuit,
    bits: Sequence[int],
    ring: RingContext | None = None,
    *,
    cap: int = DEFAULT_CAP,
) -> StateVector:
    _check_cap(circuit.n, cap)
    ring = ring or RingContext.for_angles(circuit.angles())
    vector = basis_state(circuit.n, bits, ring)
    for gate in circuit.gates:
        _apply(vector, gate, ring)
    return vector


@dataclass(slots=True)
class CrosscheckReport:
    checked: int = 0
    skipped: list[tuple[int, ...]] = field(default_factory=list)
    mismatches: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def crosscheck_report(
    circuit: Circuit, ring: RingContext | None = None, *, cap: int = DEFAULT_CAP
) -> CrosscheckReport:
    """Compare the per-qubit product prediction with full simulation on every basis input.

    Inputs on which a control is not classical are skipped and reported.
    """
    _check_cap(circuit.n, cap)
    ring = ring or RingContext.for_angles(circuit.angles())
    report = CrosscheckReport()
    for index in range(1 << circuit.n):
        bits = tuple((index >> (circuit.n - q)) & 1 for q in range(1, circuit.n + 1))
        trace = simulate_assignment(circuit, bits, ring)
        if not trace.scqc_ok:
            LOGGER.warning(
                "Skipping input %s: control qubit %s of gate %s is not classical",
                "".join(map(str, bits)),
                trace.failed_qubit,
                trace.failed_gate,
            )
            report.skipped.append(bits)
            continue
        predicted = product_state(trace.states(), ring)
        actual = statevector_simulate(circuit, bits, ring, cap=cap)
        report.checked += 1
        if predicted != actual:
            report.mismatches.append(bits)
    return report


def crosscheck(
    circuit: Circuit, ring: RingContext | None = None, *, cap: int = DEFAULT_CAP
) -> bool:
    """True iff every classical-control input agrees with full simulation."""
    return crosscheck_report(circuit, ring, cap=cap).ok
