"""Core circuit data models."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ddmf.arith.cyclotomic import RingContext, dyadic_exponent
from ddmf.arith.unitary import Unitary2, builtin_gate


@dataclass(frozen=True, slots=True)
class GateSpec:
    """Named 2x2 unitary; ``angle`` is the R rotation in units of pi."""

    name: str
    angle: Fraction | None = None

    def matrix(self, ring: RingContext) -> Unitary2:
        return builtin_gate(self.name, self.angle, ring=ring)

    def adjoint(self) -> GateSpec:
        if self.name == "V":
            return GateSpec("V+")
        if self.name == "V+":
            return GateSpec("V")
        if self.name == "R" and self.angle is not None:
            return GateSpec("R", -self.angle)
        return self

    def __str__(self) -> str:
        if self.name == "R" and self.angle is not None:
            return f"R({self.angle})"
        return self.name


@dataclass(frozen=True, slots=True)
class Gate:
    """Controlled-U gate with signed controls and one target (qubits are 1-based)."""

    unitary: GateSpec
    target: int
    positive_controls: frozenset[int] = frozenset()
    negative_controls: frozenset[int] = frozenset()

    @property
    def controls(self) -> frozenset[int]:
        return self.positive_controls | self.negative_controls

    @property
    def support(self) -> frozenset[int]:
        return self.controls | {self.target}

    def adjoint(self) -> Gate:
        return Gate(
            self.unitary.adjoint(), self.target, self.positive_controls, self.negative_controls
        )


@dataclass(frozen=True, slots=True)
class Circuit:
    """Ordered gate list over ``n`` qubits, executed left to right."""

    n: int
    gates: tuple[Gate, ...] = ()
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(self.n))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    def label(self, qubit: int) -> str:
        return self.labels[qubit - 1]

    def angles(self) -> list[Fraction]:
        return [g.unitary.angle for g in self.gates if g.unitary.angle is not None]

    def max_angle_exponent(self) -> int:
        """Largest ``m`` over all R angles ``p/2^m`` (0 without rotations)."""
        return max((dyadic_exponent(a) for a in self.angles()), default=0)

    def has_default_labels(self) -> bool:
        return self.labels == default_labels(self.n)

    def prefix(self, count: int) -> Circuit:
        return Circuit(self.n, self.gates[:count], self.labels)

    def __len__(self) -> int:
        return len(self.gates)


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))
