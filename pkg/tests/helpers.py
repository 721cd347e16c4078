"""Shared netlists and randomized builders for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ddmf.arith.cyclotomic import RingContext
from ddmf.arith.unitary import Unitary2, builtin_gate
from ddmf.bench.generator import BenchConfig, random_scqc
from ddmf.diagram.manager import DdmfManager, DdmfRef
from ddmf.models import Circuit, Gate, GateSpec
from ddmf.oracle.assignment import simulate_assignment
from ddmf.verify.verifier import Verdict

TOFFOLI_PAIR_NETLIST = """\
# NOT on x3 when x1 = x2
.qubits 3
X +x1 +x2 -> x3
X -x1 -x2 -> x3
"""

TOFFOLI_PAIR_FLIPPED_NETLIST = """\
.qubits 3
X +x1 +x2 -> x3
X +x1 -x2 -> x3
"""

MIXED_POLARITY_NETLIST = """\
.qubits 3
V -x1 +x3 -> x2
"""

HALF_ADDER_GATE1_NETLIST = """\
.qubits 3
V+ +x2 -> x3
"""

NON_SCQC_NETLIST = """\
.qubits 3
V +x1 -> x3
X +x3 -> x2
"""


def gate_pool(ring: RingContext) -> list[Unitary2]:
    pool = [builtin_gate(name, ring=ring) for name in ("I", "X", "V", "V+")]
    pool.append(builtin_gate("R", Fraction(1, 2), ring=ring))
    if ring.order >= 16:
        pool.append(builtin_gate("R", Fraction(1, 4), ring=ring))
    return pool


def random_ddmfs(manager: DdmfManager, rng: random.Random, count: int) -> list[DdmfRef]:
    """DDMFs produced by random sequences of the manager's operators."""
    matrices = gate_pool(manager.ring)
    pool: list[DdmfRef] = [manager.terminal()]
    pool.extend(manager.variable(i) for i in range(1, manager.num_vars + 1))
    pool.extend(manager.constant(m) for m in matrices)
    while len(pool) < count:
        op = rng.randrange(6)
        a, b = rng.choice(pool), rng.choice(pool)
        if op == 0:
            pool.append(manager.compose(a, b))
        elif op == 1:
            booleans = [f for f in pool if manager.is_boolean(f)]
            pool.append(manager.select(rng.choice(booleans), b))
        elif op == 2 and manager.num_vars:
            var = rng.randint(1, manager.num_vars)
            pool.append(manager.cofactor(a, var, rng.randint(0, 1)))
        elif op == 3 and manager.num_vars:
            var = rng.randint(1, manager.num_vars)
            guard = manager.variable(var)
            gated = manager.select(guard, manager.constant(rng.choice(matrices)))
            pool.append(manager.compose(gated, a))
        elif op == 4:
            booleans = [f for f in pool if manager.is_boolean(f)]
            f, g = rng.choice(booleans), rng.choice(booleans)
            pool.append(manager.bool_and(manager.bool_not(f), g))
        else:
            pool.append(manager.compose(manager.constant(rng.choice(matrices)), a))
    return pool


def random_scqc_circuits(
    count: int, *, max_qubits: int, max_gates: int, seed: int
) -> list[Circuit]:
    rng = random.Random(seed)
    circuits = []
    for index in range(count):
        config = BenchConfig(
            n=rng.randint(1, max_qubits),
            g=rng.randint(0, max_gates),
            trials=1,
            seed=seed + index,
            max_controls=rng.randint(0, 3),
        )
        circuits.append(random_scqc(config, 0))
    return circuits


def with_inserted_pair(circuit: Circuit, position: int, gate: Gate) -> Circuit:
    """Insert ``gate`` followed by its adjoint before gate ``position``."""
    gates = list(circuit.gates)
    gates[position:position] = [gate, gate.adjoint()]
    return Circuit(circuit.n, tuple(gates), circuit.labels)


def flip_polarity(gate: Gate, qubit: int) -> Gate:
    positive, negative = set(gate.positive_controls), set(gate.negative_controls)
    if qubit in positive:
        positive.remove(qubit)
        negative.add(qubit)
    else:
        negative.remove(qubit)
        positive.add(qubit)
    return Gate(gate.unitary, gate.target, frozenset(positive), frozenset(negative))


def replace_gate(circuit: Circuit, position: int, gate: Gate) -> Circuit:
    gates = list(circuit.gates)
    gates[position] = gate
    return Circuit(circuit.n, tuple(gates), circuit.labels)


def swap_unitary(gate: Gate, spec: GateSpec) -> Gate:
    return Gate(spec, gate.target, gate.positive_controls, gate.negative_controls)


def swap_adjacent(circuit: Circuit, position: int) -> Circuit:
    """Exchange gates ``position`` and ``position + 1``."""
    gates = list(circuit.gates)
    gates[position], gates[position + 1] = gates[position + 1], gates[position]
    return Circuit(circuit.n, tuple(gates), circuit.labels)


def simulated_verdict(first: Circuit, second: Circuit) -> Verdict:
    """Verdict from per-assignment simulation of both circuits on every input."""
    ring = RingContext.for_angles(first.angles() + second.angles())
    same = True
    for bits in itertools.product((0, 1), repeat=first.n):
        left = simulate_assignment(first, bits, ring)
        right = simulate_assignment(second, bits, ring)
        if not (left.scqc_ok and right.scqc_ok):
            return Verdict.NOT_SCQC
        same = same and left.per_qubit_matrix == right.per_qubit_matrix
    return Verdict.EQUIVALENT if same else Verdict.INEQUIVALENT
