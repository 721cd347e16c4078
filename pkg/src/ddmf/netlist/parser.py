"""Line-oriented netlist format for controlled-U circuits.

::

    # comments run to the end of the line
    .qubits 3
    .labels a b c          (optional, defaults to x1..xn)
    X +a +b -> c           positive controls a, b; target c
    V -a +c -> b           negative control a
    R(3/8) -> a            rotation by 3/8 pi, uncontrolled
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ddmf.arith.cyclotomic import UnsupportedAngleError, dyadic_exponent
from ddmf.models import Circuit, Gate, GateSpec, default_labels

LOGGER = logging.getLogger(__name__)

PARSE_GATES = ("X", "V", "V+", "R")

_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_GATE_LINE = re.compile(
    r"(?P<gate>\S+?(?:\([^)]*\))?)(?P<controls>(?:\s+\S+)*?)\s*->\s*(?P<target>\S+)\s*\Z"
)
_ANGLE = re.compile(r"\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>\d+)\s*)?\Z")


class CircuitParseError(ValueError):
    """Raised for malformed netlists; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """Structural problem found by :func:`validate`; ``gate`` is 1-based, 0 for the header."""

    gate: int
    message: str

    def __str__(self) -> str:
        where = f"gate {self.gate}" if self.gate else "header"
        return f"{where}: {self.message}"


def _strip_comment(raw: str) -> str:
    index = raw.find("#")
    return raw if index < 0 else raw[:index]


def _parse_gate_spec(token: str, line: int, column: int) -> GateSpec:
    if token.startswith("R"):
        if len(token) < 3 or token[1] != "(" or token[-1] != ")":
            raise CircuitParseError(f"malformed rotation {token!r}, expected R(p/q)", line, column)
        match = _ANGLE.match(token[2:-1])
        if match is None:
            raise CircuitParseError(f"malformed angle in {token!r}", line, column + 2)
        den = int(match["den"]) if match["den"] is not None else 1
        if den == 0:
            raise CircuitParseError("angle denominator is zero", line, column + 2)
        angle = Fraction(int(match["num"]), den)
        try:
            dyadic_exponent(angle)
        except UnsupportedAngleError as exc:
            raise CircuitParseError(str(exc), line, column + 2) from None
        return GateSpec("R", angle)
    if token not in PARSE_GATES:
        raise CircuitParseError(f"unknown gate {token!r}", line, column)
    return GateSpec(token)


class _Reader:
    def __init__(self) -> None:
        self.n: int | None = None
        self.labels: tuple[str, ...] | None = None
        self.gates: list[Gate] = []
        self.gate_lines: list[int] = []

    def index_of(self, n: int) -> dict[str, int]:
        labels = self.labels or default_labels(n)
        return {label: i for i, label in enumerate(labels, start=1)}

    def directive(self, body: str, line: int, offset: int) -> None:
        keyword, _, rest = body.partition(" ")
        args = rest.split()
        if keyword == ".qubits":
            if self.n is not None:
                raise CircuitParseError("duplicate .qubits header", line, offset)
            if len(args) != 1 or not args[0].isdigit():
                raise CircuitParseError(".qubits expects one non-negative integer", line, offset)
            self.n = int(args[0])
        elif keyword == ".labels":
            if self.n is None:
                raise CircuitParseError(".labels must follow .qubits", line, offset)
            if self.labels is not None:
                raise CircuitParseError("duplicate .labels header", line, offset)
            if self.gates:
                raise CircuitParseError(".labels must precede the first gate", line, offset)
            if len(args) != self.n:
                raise CircuitParseError(
                    f".labels names {len(args)} qubits, circuit has {self.n}", line, offset
                )
            for label in args:
                if not _LABEL.match(label):
                    raise CircuitParseError(f"invalid label {label!r}", line, offset)
            if len(set(args)) != len(args):
                raise CircuitParseError("duplicate qubit label", line, offset)
            self.labels = tuple(args)
        else:
            raise CircuitParseError(f"unknown directive {keyword!r}", line, offset)

    def gate(self, body: str, line: int, offset: int) -> None:
        if self.n is None:
            raise CircuitParseError("gate before .qubits header", line, offset)
        match = _GATE_LINE.match(body)
        if match is None:
            raise CircuitParseError("expected '<GATE> [+c|-c ...] -> <target>'", line, offset)
        spec = _parse_gate_spec(match["gate"], line, offset)
        qubits = self.index_of(self.n)

        positive: set[int] = set()
        negative: set[int] = set()
        for control in re.finditer(r"\S+", match["controls"]):
            token = control.group()
            column = offset + match.start("controls") + control.start()
            sign, label = token[0], token[1:]
            if sign not in "+-" or not label:
                raise CircuitParseError(f"control {token!r} needs a + or - prefix", line, column)
            if label not in qubits:
                raise CircuitParseError(f"unknown qubit {label!r}", line, column + 1)
            qubit = qubits[label]
            if qubit in positive or qubit in negative:
                raise CircuitParseError(f"qubit {label!r} listed twice as control", line, column)
            (positive if sign == "+" else negative).add(qubit)

        target_label = match["target"]
        column = offset + match.start("target")
        if target_label not in qubits:
            raise CircuitParseError(f"unknown qubit {target_label!r}", line, column)
        target = qubits[target_label]
        if target in positive or target in negative:
            raise CircuitParseError(f"target {target_label!r} is also a control", line, column)
        self.gates.append(Gate(spec, target, frozenset(positive), frozenset(negative)))
        self.gate_lines.append(line)


def parse(text: str) -> Circuit:
    """Parse netlist text into a validated :class:`Circuit`.

    Raises:
        CircuitParseError: on syntax errors or structural violations.
    """
    reader = _Reader()
    last_line = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        content = _strip_comment(raw)
        body = content.strip()
        if not body:
            continue
        offset = len(content) - len(content.lstrip()) + 1
        if body.startswith("."):
            reader.directive(" ".join(body.split()), line_no, offset)
        else:
            reader.gate(body, line_no, offset)

    if reader.n is None:
        raise CircuitParseError("missing .qubits header", last_line)
    circuit = Circuit(reader.n, tuple(reader.gates), reader.labels or ())
    problems = validate(circuit)
    if problems:
        first = problems[0]
        line = reader.gate_lines[first.gate - 1] if first.gate else 1
        raise CircuitParseError(first.message, line)
    LOGGER.debug("Parsed circuit: %d qubits, %d gates", circuit.n, len(circuit))
    return circuit


def parse_file(path: Path | str) -> Circuit:
    return parse(Path(path).read_text(encoding="utf-8"))


def serialize(circuit: Circuit) -> str:
    """Canonical text form: controls sorted by qubit, labels only when not default."""
    lines = [f".qubits {circuit.n}"]
    if not circuit.has_default_labels():
        lines.append(".labels " + " ".join(circuit.labels))
    for gate in circuit.gates:
        signed = sorted(
            [(q, "+") for q in gate.positive_controls] + [(q, "-") for q in gate.negative_controls]
        )
        parts = [str(gate.unitary)]
        parts.extend(f"{sign}{circuit.label(q)}" for q, sign in signed)
        parts.extend(["->", circuit.label(gate.target)])
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def validate(circuit: Circuit) -> list[Diagnostic]:
    """Every structural violation in ``circuit``; never raises."""
    problems: list[Diagnostic] = []
    n = circuit.n
    if n < 0:
        problems.append(Diagnostic(0, f"qubit count {n} is negative"))
    if len(circuit.labels) != max(n, 0):
        problems.append(Diagnostic(0, f"{len(circuit.labels)} labels for {n} qubits"))
    if len(set(circuit.labels)) != len(circuit.labels):
        problems.append(Diagnostic(0, "duplicate qubit label"))
    for label in circuit.labels:
        if not _LABEL.match(label):
            problems.append(Diagnostic(0, f"invalid label {label!r}"))

    for index, gate in enumerate(circuit.gates, start=1):
        spec = gate.unitary
        if spec.name not in PARSE_GATES:
            problems.append(Diagnostic(index, f"unknown gate {spec.name!r}"))
        elif spec.name == "R":
            if spec.angle is None:
                problems.append(Diagnostic(index, "R requires an angle"))
            else:
                try:
                    dyadic_exponent(spec.angle)
                except UnsupportedAngleError as exc:
                    problems.append(Diagnostic(index, str(exc)))
        elif spec.angle is not None:
            problems.append(Diagnostic(index, f"gate {spec.name} takes no angle"))

        for qubit in sorted(gate.support):
            if not 1 <= qubit <= n:
                problems.append(Diagnostic(index, f"qubit {qubit} outside 1..{n}"))
        if gate.target in gate.controls:
            problems.append(Diagnostic(index, f"target qubit {gate.target} is also a control"))
        both = gate.positive_controls & gate.negative_controls
        if both:
            problems.append(
                Diagnostic(index, f"qubits {sorted(both)} are both positive and negative controls")
            )
    return problems
