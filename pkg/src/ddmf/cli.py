"""Command line interface for ddmf."""

from __future__ import annotations

import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ddmf.arith.unitary import apply_to_ket0
from ddmf.bench.generator import BENCH_GATES, BenchConfig, BenchConfigError
from ddmf.bench.harness import run_bench, write_csv
from ddmf.config import AppConfig
from ddmf.diagram.dot import dot_export
from ddmf.diagram.manager import NodeLimitExceeded
from ddmf.models import Circuit
from ddmf.netlist.parser import CircuitParseError, parse_file
from ddmf.oracle.assignment import simulate_assignment
from ddmf.oracle.statevector import StateVectorCapError, crosscheck_report
from ddmf.utils.render import format_bits, format_matrix, format_state, history_word
from ddmf.verify.report import SimulationReportModel, VerificationReportModel
from ddmf.verify.verifier import (
    CircuitMismatchError,
    NotScqcError,
    Verdict,
    build as build_circuit,
    check_equivalence,
    gate_function,
    make_manager,
)

console = Console()
app = typer.Typer(help="ddmf - decision diagrams for semi-classical quantum circuits")

EXIT_USAGE = 2
EXIT_NODE_LIMIT = 3


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s")


def _fail(message: str, code: int = EXIT_USAGE) -> typer.Exit:
    console.print(f"[red]{escape(message)}[/red]")
    return typer.Exit(code)


def _load(path: Path) -> Circuit:
    try:
        return parse_file(path)
    except CircuitParseError as exc:
        raise _fail(f"{path}: {exc}") from None
    except OSError as exc:
        raise _fail(f"Cannot read {path}: {exc.strerror or exc}") from None


@contextmanager
def _exit_on_node_limit() -> Iterator[None]:
    try:
        yield
    except NodeLimitExceeded as exc:
        raise _fail(f"Aborted: {exc}", EXIT_NODE_LIMIT) from None


def _resolve_qubit(circuit: Circuit, name: str) -> int:
    if name in circuit.labels:
        return circuit.labels.index(name) + 1
    if name.isdigit() and 1 <= int(name) <= circuit.n:
        return int(name)
    raise _fail(f"Unknown qubit {name!r}")


def _parse_bits(text: str, n: int) -> tuple[int, ...]:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise _fail(f"--input must be {n} bits of 0/1, got {text!r}")
    return tuple(int(ch) for ch in text)


def _parse_gate_mix(text: str) -> dict[str, float]:
    mix: dict[str, float] = {}
    for item in text.split(","):
        name, sep, weight = item.strip().partition("=")
        if not sep:
            raise typer.BadParameter(f"expected NAME=WEIGHT, got {item!r}")
        try:
            mix[name.strip()] = float(weight)
        except ValueError:
            raise typer.BadParameter(f"weight of {name!r} is not a number") from None
    return mix


@app.command()
def verify(
    first: Path = typer.Argument(..., help="First circuit netlist"),
    second: Path = typer.Argument(..., help="Second circuit netlist"),
    json_output: bool = typer.Option(False, "--json", help="Print a JSON report"),
    counterexample: bool = typer.Option(
        False, "--counterexample", help="Find an input on which the circuits differ"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Check two circuits for per-qubit functional equivalence."""
    _setup_logging(verbose)
    config = AppConfig()
    left, right = _load(first), _load(second)
    with _exit_on_node_limit():
        try:
            report = check_equivalence(left, right, config=config, counterexample=counterexample)
        except CircuitMismatchError as exc:
            raise _fail(str(exc)) from None

    if json_output:
        model = VerificationReportModel.from_report(report, left, config.max_word_length)
        typer.echo(model.model_dump_json(indent=2))
        raise typer.Exit(report.exit_code)

    if report.verdict is Verdict.NOT_SCQC:
        source = first if report.violation.circuit == 1 else second
        console.print(f"[red]Not semi-classical[/red] ({source}): {report.violation}")
        raise typer.Exit(report.exit_code)

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Qubit")
    table.add_column("Equal")
    for qubit, same in enumerate(report.qubits_equal, start=1):
        table.add_row(left.label(qubit), "yes" if same else "[red]no[/red]")
    console.print(table)

    if report.verdict is Verdict.EQUIVALENT:
        console.print("[green]Equivalent[/green]")
    else:
        differs = left.label(report.first_difference)
        console.print(f"[yellow]Inequivalent[/yellow] at qubit {differs}")
    witness = report.counterexample
    if witness is not None:
        status = "confirmed" if witness.confirmed else "[red]NOT confirmed[/red]"
        console.print(
            f"Counterexample input {format_bits(witness.assignment)}: qubit "
            f"{left.label(witness.qubit)} is {format_matrix(witness.left, config.max_word_length)}"
            f" vs {format_matrix(witness.right, config.max_word_length)} ({status})"
        )
    console.print(
        f"Nodes: {report.nodes}, peak: {report.peak_nodes}, time: {report.millis:.1f} ms"
    )
    raise typer.Exit(report.exit_code)


@app.command()
def build(
    path: Path = typer.Argument(..., help="Circuit netlist"),
    stats: bool = typer.Option(False, "--stats", help="Show peak nodes, time and cache sizes"),
    dot: Optional[Path] = typer.Option(None, "--dot", help="Directory for per-qubit DOT files"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Build the per-qubit DDMFs of a circuit and report their sizes."""
    _setup_logging(verbose)
    config = AppConfig()
    circuit = _load(path)
    with _exit_on_node_limit():
        result = build_circuit(circuit, make_manager(circuit, config=config))
    if not result.ok:
        raise _fail(f"Not semi-classical: {result.violation}")

    manager = result.state.manager
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Qubit")
    table.add_column("Nodes", justify="right")
    table.add_column("Boolean")
    for qubit, func in enumerate(result.state.qubits, start=1):
        table.add_row(
            circuit.label(qubit),
            str(manager.node_count(func)),
            "yes" if manager.is_boolean(func) else "no",
        )
    console.print(table)
    console.print(f"Total nodes (shared): {result.stats.nodes}")
    if stats:
        console.print(f"Peak nodes: {result.stats.peak_nodes}")
        console.print(f"Build time: {result.stats.millis:.1f} ms")
        console.print(f"Ring order: {manager.ring.order}")
        caches = ", ".join(f"{name}={size}" for name, size in manager.cache_sizes().items())
        console.print(f"Caches: {caches}")

    if dot is not None:
        dot.mkdir(parents=True, exist_ok=True)
        for qubit, func in enumerate(result.state.qubits, start=1):
            label = circuit.label(qubit)
            target = dot / f"{label}.dot"
            target.write_text(dot_export(func, circuit.labels, name=label), encoding="utf-8")
        console.print(f"Wrote {circuit.n} DOT files to [bold]{dot}[/bold]")


@app.command()
def simulate(
    path: Path = typer.Argument(..., help="Circuit netlist"),
    bits: str = typer.Option(..., "--input", help="Classical input, one bit per qubit"),
    json_output: bool = typer.Option(False, "--json", help="Print a JSON report"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Report each qubit's final matrix and state for one classical input."""
    _setup_logging(verbose)
    config = AppConfig()
    circuit = _load(path)
    assignment = _parse_bits(bits, circuit.n)
    trace = simulate_assignment(circuit, assignment, config.ring_for(circuit))
    exit_code = 0 if trace.scqc_ok else EXIT_USAGE

    if json_output:
        model = SimulationReportModel.from_trace(trace, circuit, config.max_word_length)
        typer.echo(model.model_dump_json(indent=2))
        raise typer.Exit(exit_code)

    if not trace.scqc_ok:
        raise _fail(
            f"Not semi-classical on input {bits}: gate {trace.failed_gate} control qubit "
            f"{circuit.label(trace.failed_qubit)} is not classical"
        )
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Qubit")
    table.add_column("Matrix")
    table.add_column("Product")
    table.add_column("State")
    for qubit in range(1, circuit.n + 1):
        table.add_row(
            circuit.label(qubit),
            format_matrix(trace.matrix(qubit), config.max_word_length),
            history_word(trace.history(qubit)),
            format_state(trace.state(qubit)),
        )
    console.print(table)


@app.command()
def check(
    path: Path = typer.Argument(..., help="Circuit netlist"),
    crosscheck_flag: bool = typer.Option(
        False, "--crosscheck", help="Also compare against full state-vector simulation"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Check that every control is classical at the time its gate fires."""
    _setup_logging(verbose)
    config = AppConfig()
    circuit = _load(path)
    with _exit_on_node_limit():
        result = build_circuit(circuit, config=config)
    if not result.ok:
        raise _fail(f"Not semi-classical: {result.violation}")
    console.print(f"[green]Semi-classical[/green]: {len(circuit)} gates on {circuit.n} qubits")
    if not crosscheck_flag:
        return
    try:
        report = crosscheck_report(circuit, config.ring_for(circuit), cap=config.statevector_cap)
    except StateVectorCapError as exc:
        raise _fail(str(exc)) from None
    if not report.ok:
        bad = ", ".join(format_bits(bits) for bits in report.mismatches)
        raise _fail(f"State-vector mismatch on inputs {bad}", 1)
    console.print(f"State-vector crosscheck: {report.checked} inputs agree")


@app.command()
def table(
    path: Path = typer.Argument(..., help="Circuit netlist"),
    qubit: Optional[str] = typer.Option(None, "--qubit", help="Qubit label or 1-based index"),
    gate: Optional[int] = typer.Option(
        None, "--gate", help="Tabulate after this many gates (default: all)"
    ),
    gate_function_flag: bool = typer.Option(
        False, "--gate-function", help="Tabulate the gate's own matrix function instead"
    ),
    ket0: bool = typer.Option(False, "--ket0", help="Show states value|0> instead of matrices"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Print a truth table of one qubit's matrix function."""
    _setup_logging(verbose)
    config = AppConfig()
    circuit = _load(path)
    count = len(circuit) if gate is None else gate
    if not 0 <= count <= len(circuit):
        raise _fail(f"--gate must be between 0 and {len(circuit)}")
    if gate_function_flag and count < 1:
        raise _fail("--gate-function needs --gate of at least 1")
    if not gate_function_flag and qubit is None:
        raise _fail("--qubit is required unless --gate-function is given")

    prefix = circuit.prefix(count - 1 if gate_function_flag else count)
    with _exit_on_node_limit():
        result = build_circuit(prefix, make_manager(circuit, config=config))
        if not result.ok:
            raise _fail(f"Not semi-classical: {result.violation}")
        manager = result.state.manager
        if gate_function_flag:
            try:
                func = gate_function(result.state, circuit.gates[count - 1], labels=circuit.labels)
            except NotScqcError as exc:
                raise _fail(f"Not semi-classical: {exc}") from None
            title = f"gate {count}"
        else:
            func = result.state.function(_resolve_qubit(circuit, qubit))
            title = f"{qubit} after {count} gates"

    out = Table(title=title, show_header=True, header_style="bold magenta")
    for label in circuit.labels:
        out.add_column(label)
    out.add_column("value")
    for bits, matrix in manager.truth_table(func):
        value = (
            format_state(apply_to_ket0(matrix))
            if ket0
            else format_matrix(matrix, config.max_word_length)
        )
        out.add_row(*(str(b) for b in bits), value)
    console.print(out)


@app.command()
def bench(
    qubits: int = typer.Option(..., "--qubits", help="Number of qubits"),
    gates: int = typer.Option(..., "--gates", help="Gates per circuit"),
    trials: int = typer.Option(10, "--trials", help="Random circuits to build"),
    seed: int = typer.Option(0, "--seed", help="64-bit seed"),
    csv_path: Optional[Path] = typer.Option(None, "--csv", help="CSV path (default: stdout)"),
    max_controls: int = typer.Option(2, "--max-controls", help="Largest control count"),
    gate_mix: Optional[str] = typer.Option(
        None, "--gate-mix", help=f"Weights NAME=W,... over {', '.join(BENCH_GATES)}"
    ),
    workers: int = typer.Option(1, "--workers", help="Parallel trials (0 = automatic)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """Build random semi-classical circuits and record node counts and times."""
    _setup_logging(verbose)
    mix = _parse_gate_mix(gate_mix) if gate_mix else None
    try:
        config = BenchConfig(
            n=qubits,
            g=gates,
            trials=trials,
            seed=seed,
            max_controls=max_controls,
            **({"gate_mix": mix} if mix is not None else {}),
        )
    except BenchConfigError as exc:
        raise _fail(str(exc)) from None

    with _exit_on_node_limit():
        result = run_bench(
            config,
            workers=workers or None,
            progress=csv_path is not None,
            node_limit=AppConfig().node_limit,
        )

    if csv_path is None:
        write_csv(result, sys.stdout)
        return
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        write_csv(result, handle)

    summary = result.summary
    out = Table(show_header=True, header_style="bold magenta")
    for column in ("n", "g", "trials", "mean nodes", "mean peak", "mean ms"):
        out.add_column(column, justify="right")
    out.add_row(
        str(summary.n),
        str(summary.g),
        str(summary.trials),
        f"{summary.mean_nodes:.1f}",
        f"{summary.mean_peak_nodes:.1f}",
        f"{summary.mean_millis:.1f}",
    )
    console.print(out)
    console.print(f"Wrote {len(result.records)} records to [bold]{csv_path}[/bold]")


if __name__ == "__main__":  # pragma: no cover
    app()
