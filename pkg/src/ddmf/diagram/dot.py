"""Graphviz DOT export for DDMFs.

Nodes are ranked by variable. 1-edges are solid, 0-edges dashed, and any edge whose weight
is not I carries the weight as its label. The single terminal is a box labeled I.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

from ddmf.arith.unitary import Unitary2
from ddmf.diagram.manager import IDENTITY, TERMINAL, DdmfRef
from ddmf.models import default_labels
from ddmf.utils.render import format_matrix


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def dot_export(
    ref: DdmfRef,
    labels: Sequence[str] | None = None,
    *,
    name: str = "ddmf",
    weight_label: Callable[[Unitary2], str] = format_matrix,
) -> str:
    """Render ``ref`` as a DOT digraph; ``labels`` names x1..xn."""
    manager = ref.manager
    names = list(labels) if labels is not None else list(default_labels(manager.num_vars))

    layers: dict[int, list[int]] = {}
    for node_id in sorted(manager.reachable([ref])):
        layers.setdefault(manager.node(node_id).var, []).append(node_id)

    lines = [f'digraph "{_escape(name)}" {{', "\troot [shape=point];"]
    for var in sorted(layers):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for node_id in layers[var]:
            lines.append(f'\t\tn{node_id} [label="{_escape(names[var - 1])}", shape=circle];')
        lines.append("\t}")
    lines.append(f'\tn{TERMINAL} [label="I", shape=box];')

    def edge(src: str, dst: int, weight: int, style: str) -> str:
        attrs = [f"style={style}"]
        if weight != IDENTITY:
            attrs.append(f'label="{_escape(weight_label(manager.matrix(weight)))}"')
        return f"\t{src} -> n{dst} [{', '.join(attrs)}];"

    lines.append(edge("root", ref.node, ref.weight, "solid"))
    for var in sorted(layers):
        for node_id in layers[var]:
            view = manager.node(node_id)
            lines.append(edge(f"n{node_id}", view.one_child, view.one_weight, "solid"))
            lines.append(edge(f"n{node_id}", view.zero_child, IDENTITY, "dashed"))
    lines.append("}")
    return "\n".join(lines) + "\n"
