"""Tests for DOT export."""

from __future__ import annotations

from ddmf.arith.cyclotomic import RingContext
from ddmf.arith.unitary import builtin_gate
from ddmf.diagram.dot import dot_export
from ddmf.diagram.manager import DdmfManager
from ddmf.models import Circuit
from ddmf.verify.verifier import build


class TestDotExport:
    """Shape of the generated digraph."""

    def test_constant(self, ring8: RingContext) -> None:
        """A constant is the root edge straight into the terminal."""
        manager = DdmfManager(2, ring8)
        text = dot_export(manager.constant(builtin_gate("V", ring=ring8)))
        assert text.startswith('digraph "ddmf" {')
        assert 'n0 [label="I", shape=box];' in text
        assert 'root -> n0 [style=solid, label="V"];' in text
        assert "rank = same" not in text

    def test_variable(self, ring8: RingContext) -> None:
        """x1 has one node with a solid X edge and a dashed I edge."""
        manager = DdmfManager(2, ring8)
        x1 = manager.variable(1)
        text = dot_export(x1)
        node = f"n{x1.node}"
        assert f'{node} [label="x1", shape=circle];' in text
        assert f'{node} -> n0 [style=solid, label="N"];' in text
        assert f"{node} -> n0 [style=dashed];" in text
        assert f"root -> {node} [style=solid];" in text

    def test_custom_labels_and_name(self, ring8: RingContext) -> None:
        """Variables are named by the supplied labels."""
        manager = DdmfManager(2, ring8)
        text = dot_export(manager.variable(2), ["a", "b"], name="qubit b")
        assert 'digraph "qubit b" {' in text
        assert 'label="b"' in text

    def test_one_rank_per_variable(self, toffoli_pair: Circuit) -> None:
        """Nodes are grouped by variable."""
        result = build(toffoli_pair)
        text = dot_export(result.state.function(3), toffoli_pair.labels)
        assert text.count("rank = same;") == 3
        assert text.rstrip().endswith("}")

    def test_custom_weight_label(self, ring8: RingContext) -> None:
        """Edge weights go through the supplied formatter."""
        manager = DdmfManager(1, ring8)
        text = dot_export(manager.variable(1), weight_label=lambda _: "W")
        assert 'label="W"' in text
