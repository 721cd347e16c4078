"""Human-readable rendering of exact matrices and states."""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache, reduce

import mpmath

from ddmf.arith.cyclotomic import CycNumber, RingContext
from ddmf.arith.unitary import QubitState, Unitary2, builtin_gate, mat_mul

DEFAULT_WORD_LENGTH = 3

# letter order for ties: V, V+, R(angle) by ascending angle, N
_SHAPE_LETTERS = ("V", "V+", "R", "N")
_FIXED_GATES = {"V": "V", "V+": "V+", "N": "X"}
_INVERSE_LETTER = {"V": "V+", "V+": "V", "N": "N"}


def angle_label(angle: Fraction) -> str:
    if angle.denominator == 1:
        return f"R({angle.numerator})"
    return f"R({angle.numerator}/{angle.denominator})"


@lru_cache(maxsize=8)
def _shapes(length: int) -> tuple[tuple[str, ...], ...]:
    # adjacent rotations merge into one, so such words are never shortest
    return tuple(
        shape
        for shape in itertools.product(_SHAPE_LETTERS, repeat=length)
        if ("R", "R") not in zip(shape, shape[1:])
    )


@lru_cache(maxsize=1024)
def _product(names: tuple[str, ...], order: int) -> Unitary2:
    ring = RingContext(order)
    matrices = [builtin_gate(_FIXED_GATES[name], ring=ring) for name in names]
    return reduce(mat_mul, matrices, Unitary2.identity(ring))


def _inverse(names: Sequence[str]) -> tuple[str, ...]:
    return tuple(_INVERSE_LETTER[name] for name in reversed(names))


def _phase_angle(matrix: Unitary2) -> Fraction | None:
    """Angle theta in (0, 2) with ``matrix == R(theta)``, or None."""
    a, b, c, d = matrix.entries
    if b or c or a != 1:
        return None
    terms = [(k, value) for k, value in enumerate(d.coeffs) if value]
    if len(terms) != 1:
        return None
    k, value = terms[0]
    if value == -1:
        k += matrix.order // 2
    elif value != 1:
        return None
    if k == 0:
        return None
    return Fraction(2 * k, matrix.order)


def _unphase(matrix: Unitary2, k: int) -> Unitary2:
    """diag(1, zeta^-k) · matrix."""
    a, b, c, d = matrix.entries
    inverse = CycNumber.zeta(matrix.order, -k)
    return Unitary2(a, b, c * inverse, d * inverse)


def _solve(shape: tuple[str, ...], target: Unitary2) -> list[str] | None:
    """Letters spelling ``target`` in ``shape``, with the smallest rotation angles first."""
    order = target.order
    if "R" not in shape:
        return list(shape) if _product(shape, order) == target else None
    slot = shape.index("R")
    prefix, rest = shape[:slot], shape[slot + 1 :]
    remainder = mat_mul(_product(_inverse(prefix), order), target)
    if "R" not in rest:
        angle = _phase_angle(mat_mul(remainder, _product(_inverse(rest), order)))
        return None if angle is None else [*prefix, angle_label(angle), *rest]
    for k in range(1, order):
        tail = _solve(rest, _unphase(remainder, k))
        if tail is not None:
            return [*prefix, angle_label(Fraction(2 * k, order)), *tail]
    return None


@lru_cache(maxsize=4096)
def matrix_word(matrix: Unitary2, max_length: int = DEFAULT_WORD_LENGTH) -> str | None:
    """Shortest product of built-in gates equal to ``matrix``, or None.

    Words are read as matrix products, so "VN" is V·X. Rotation angles are solved for,
    not enumerated.
    """
    if matrix == Unitary2.identity(RingContext(matrix.order)):
        return "I"
    for length in range(1, max_length + 1):
        for shape in _shapes(length):
            letters = _solve(shape, matrix)
            if letters is not None:
                return "".join(letters)
    return None


def history_word(names: Sequence[str]) -> str:
    """Product of gates applied in order ``names``, written latest first as ``A·B``."""
    return "·".join(reversed(names)) if names else "I"


def format_entries(matrix: Unitary2) -> str:
    (a, b), (c, d) = matrix.rows()
    return f"[[{a}, {b}], [{c}, {d}]]"


def format_matrix(matrix: Unitary2, max_length: int = DEFAULT_WORD_LENGTH) -> str:
    """Symbolic name when one exists, exact entries otherwise."""
    word = matrix_word(matrix, max_length)
    return word if word is not None else format_entries(matrix)


def format_amplitude(value: CycNumber, digits: int = 6) -> str:
    return mpmath.nstr(value.to_mpc(), digits)


def format_state(state: QubitState, digits: int = 6) -> str:
    classical = state.classical_value()
    if classical is not None:
        return f"|{classical}>"
    amp0 = format_amplitude(state.amp0, digits)
    amp1 = format_amplitude(state.amp1, digits)
    return f"{amp0}|0> + {amp1}|1>"


def format_bits(bits: tuple[int, ...] | list[int]) -> str:
    return "".join(str(b) for b in bits)
