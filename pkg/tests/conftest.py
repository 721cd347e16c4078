"""Test configuration for the ddmf package."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_PATH = PROJECT_ROOT / "src"
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from ddmf.arith.cyclotomic import RingContext  # noqa: E402
from ddmf.models import Circuit  # noqa: E402
from ddmf.netlist.parser import parse  # noqa: E402
from tests.helpers import (  # noqa: E402
    HALF_ADDER_GATE1_NETLIST,
    MIXED_POLARITY_NETLIST,
    NON_SCQC_NETLIST,
    TOFFOLI_PAIR_NETLIST,
)


@pytest.fixture
def ring8() -> RingContext:
    return RingContext(8)


@pytest.fixture
def ring16() -> RingContext:
    return RingContext(16)


@pytest.fixture
def toffoli_pair() -> Circuit:
    return parse(TOFFOLI_PAIR_NETLIST)


@pytest.fixture
def mixed_polarity() -> Circuit:
    return parse(MIXED_POLARITY_NETLIST)


@pytest.fixture
def half_adder_gate1() -> Circuit:
    return parse(HALF_ADDER_GATE1_NETLIST)


@pytest.fixture
def non_scqc() -> Circuit:
    return parse(NON_SCQC_NETLIST)


@pytest.fixture
def write_netlist(tmp_path: Path):
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
