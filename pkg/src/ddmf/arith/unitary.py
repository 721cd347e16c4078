"""Exact 2x2 unitary matrices and single-qubit states."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ddmf.arith.cyclotomic import CycNumber, RingContext, RingMismatchError, UnsupportedAngleError

GATE_NAMES: frozenset[str] = frozenset({"I", "X", "V", "V+", "R"})


class UnknownGateError(ValueError):
    """Raised for gate names outside the built-in gate set."""


class Unitary2:
    """2x2 matrix over one cyclotomic ring, stored row-major as (a, b, c, d)."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, a: CycNumber, b: CycNumber, c: CycNumber, d: CycNumber) -> None:
        order = a.order
        if any(x.order != order for x in (b, c, d)):
            raise RingMismatchError("matrix entries come from different rings")
        self._entries = (a, b, c, d)
        self._hash: int | None = None

    @classmethod
    def identity(cls, ring: RingContext) -> Unitary2:
        return cls(ring.one(), ring.zero(), ring.zero(), ring.one())

    @classmethod
    def not_gate(cls, ring: RingContext) -> Unitary2:
        return cls(ring.zero(), ring.one(), ring.one(), ring.zero())

    @property
    def entries(self) -> tuple[CycNumber, CycNumber, CycNumber, CycNumber]:
        return self._entries

    @property
    def order(self) -> int:
        return self._entries[0].order

    def rows(self) -> tuple[tuple[CycNumber, CycNumber], tuple[CycNumber, CycNumber]]:
        a, b, c, d = self._entries
        return ((a, b), (c, d))

    def __matmul__(self, other: object) -> Unitary2:
        if not isinstance(other, Unitary2):
            return NotImplemented
        return mat_mul(self, other)

    def adjoint(self) -> Unitary2:
        return mat_adjoint(self)

    def det(self) -> CycNumber:
        a, b, c, d = self._entries
        return a * d - b * c

    def is_unitary(self) -> bool:
        ring = RingContext(self.order)
        return mat_mul(self, mat_adjoint(self)) == Unitary2.identity(ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Unitary2):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._entries)
        return self._hash

    def __repr__(self) -> str:
        a, b, c, d = (str(x) for x in self._entries)
        return f"Unitary2([[{a}, {b}], [{c}, {d}]])"


@dataclass(frozen=True, slots=True)
class QubitState:
    """Single-qubit state amp0|0> + amp1|1>."""

    amp0: CycNumber
    amp1: CycNumber

    def norm_squared(self) -> CycNumber:
        return self.amp0.abs_squared() + self.amp1.abs_squared()

    def is_normalized(self) -> bool:
        return self.norm_squared() == 1

    def classical_value(self) -> int | None:
        """0 or 1 for exactly |0> or |1>, otherwise None."""
        if self.amp1.is_zero() and self.amp0 == 1:
            return 0
        if self.amp0.is_zero() and self.amp1 == 1:
            return 1
        return None


@lru_cache(maxsize=1 << 16)
def mat_mul(left: Unitary2, right: Unitary2) -> Unitary2:
    """Ordinary matrix product ``left · right``."""
    if left.order != right.order:
        raise RingMismatchError(f"cannot multiply ring orders {left.order} and {right.order}")
    a, b, c, d = left.entries
    e, f, g, h = right.entries
    return Unitary2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_adjoint(matrix: Unitary2) -> Unitary2:
    """Conjugate transpose, which is the inverse of a unitary."""
    a, b, c, d = matrix.entries
    return Unitary2(a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())


def mat_eq(left: Unitary2, right: Unitary2) -> bool:
    if left.order != right.order:
        raise RingMismatchError(f"cannot compare ring orders {left.order} and {right.order}")
    return left == right


def is_classical(matrix: Unitary2) -> bool:
    """True iff ``matrix`` is exactly I or X."""
    ring = RingContext(matrix.order)
    return matrix == Unitary2.identity(ring) or matrix == Unitary2.not_gate(ring)


def apply_to_ket0(matrix: Unitary2) -> QubitState:
    """First column of ``matrix``: the state ``matrix |0>``."""
    a, _, c, _ = matrix.entries
    return QubitState(a, c)


@lru_cache(maxsize=256)
def builtin_gate(name: str, angle: Fraction | None = None, *, ring: RingContext) -> Unitary2:
    """Return the exact matrix of a built-in gate.

    Conventions: X = [[0,1],[1,0]], V = 1/2 [[1+i, 1-i], [1-i, 1+i]], V+ = adjoint(V),
    R(angle) = diag(1, exp(i*pi*angle)) with ``angle`` a dyadic rational.
    """
    if name not in GATE_NAMES:
        raise UnknownGateError(f"unknown gate {name!r}")
    if name == "R":
        if angle is None:
            raise UnsupportedAngleError("R requires an angle")
        return Unitary2(ring.one(), ring.zero(), ring.zero(), ring.exp_i_pi(angle))
    if angle is not None:
        raise UnsupportedAngleError(f"gate {name} takes no angle")
    if name == "I":
        return Unitary2.identity(ring)
    if name == "X":
        return Unitary2.not_gate(ring)
    half = Fraction(1, 2)
    plus = (ring.one() + ring.i()) * half
    minus = (ring.one() - ring.i()) * half
    v = Unitary2(plus, minus, minus, plus)
    return v if name == "V" else mat_adjoint(v)
