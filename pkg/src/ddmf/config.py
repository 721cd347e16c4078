"""Application configuration defaults."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

from ddmf.arith.cyclotomic import RingContext, required_order
from ddmf.models import Circuit

LOGGER = logging.getLogger(__name__)

NODE_LIMIT_ENV = "DDMF_NODE_LIMIT"


def _get_default_node_limit() -> int | None:
    """Read the unique-table cap from the environment; unset means unlimited."""
    raw = os.environ.get(NODE_LIMIT_ENV, "").strip()
    if not raw:
        return None
    try:
        limit = int(raw)
    except ValueError:
        LOGGER.warning("Ignoring %s=%r: not an integer", NODE_LIMIT_ENV, raw)
        return None
    if limit <= 0:
        LOGGER.warning("Ignoring %s=%r: must be positive", NODE_LIMIT_ENV, raw)
        return None
    return limit


@dataclass(slots=True)
class AppConfig:
    node_limit: int | None = field(default_factory=_get_default_node_limit)
    statevector_cap: int = 12
    max_word_length: int = 3
    min_ring_order: int = 8

    def ring_order_for(self, *circuits: Circuit) -> int:
        angles = [angle for circuit in circuits for angle in circuit.angles()]
        order = required_order(angles, self.min_ring_order)
        LOGGER.debug("Ring order %d for %d rotation angles", order, len(angles))
        return order

    def ring_for(self, *circuits: Circuit) -> RingContext:
        return RingContext(self.ring_order_for(*circuits))
