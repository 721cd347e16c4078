"""Tests for symbolic matrix and state rendering."""

from __future__ import annotations

from fractions import Fraction

from ddmf.arith.cyclotomic import RingContext
from ddmf.arith.unitary import Unitary2, apply_to_ket0, builtin_gate
from ddmf.utils.render import (
    angle_label,
    format_bits,
    format_entries,
    format_matrix,
    format_state,
    history_word,
    matrix_word,
)


class TestMatrixWords:
    """Shortest words over the built-in gates."""

    def test_single_letters(self, ring8: RingContext) -> None:
        """Built-in gates print as their own names, X as N."""
        assert matrix_word(Unitary2.identity(ring8)) == "I"
        assert matrix_word(Unitary2.not_gate(ring8)) == "N"
        assert matrix_word(builtin_gate("V", ring=ring8)) == "V"
        assert matrix_word(builtin_gate("V+", ring=ring8)) == "V+"
        assert matrix_word(builtin_gate("R", Fraction(1), ring=ring8)) == "R(1)"
        assert matrix_word(builtin_gate("R", Fraction(1, 2), ring=ring8)) == "R(1/2)"

    def test_v_after_not_is_v_plus(self, ring8: RingContext) -> None:
        """V·X = V^3 = V+, so the shortest word has one letter."""
        v = builtin_gate("V", ring=ring8)
        assert matrix_word(v @ Unitary2.not_gate(ring8)) == "V+"

    def test_two_letter_word(self, ring8: RingContext) -> None:
        """R(1/2)·X has no one-letter name."""
        product = builtin_gate("R", Fraction(1, 2), ring=ring8) @ Unitary2.not_gate(ring8)
        assert matrix_word(product) == "R(1/2)N"

    def test_word_length_limit(self, ring8: RingContext) -> None:
        """Words longer than the limit are not found."""
        product = builtin_gate("R", Fraction(1, 2), ring=ring8) @ Unitary2.not_gate(ring8)
        assert matrix_word(product, max_length=1) is None

    def test_finer_ring_labels(self, ring16: RingContext) -> None:
        """Order 16 adds quarter-pi rotations."""
        assert matrix_word(builtin_gate("R", Fraction(1, 4), ring=ring16)) == "R(1/4)"
        assert matrix_word(builtin_gate("R", Fraction(-1, 4), ring=ring16)) == "R(7/4)"

    def test_every_ring_rotation_has_its_label(self) -> None:
        """Each rotation a ring can hold prints as its own angle."""
        for order in (8, 16, 32):
            ring = RingContext(order)
            for k in range(1, order // 2):
                angle = Fraction(4 * k, order)
                assert matrix_word(builtin_gate("R", angle, ring=ring)) == angle_label(angle)

    def test_fine_ring_words(self) -> None:
        """Rotations are found on rings far finer than the default."""
        ring = RingContext(256)
        r = builtin_gate("R", Fraction(1, 64), ring=ring)
        assert matrix_word(r @ Unitary2.not_gate(ring)) == "R(1/64)N"
        assert format_matrix(builtin_gate("V", ring=ring)) == "V"

    def test_rotation_on_both_sides(self, ring8: RingContext) -> None:
        """Words with a rotation on each side are found."""
        r = builtin_gate("R", Fraction(1, 2), ring=ring8)
        n = Unitary2.not_gate(ring8)
        target = r @ n @ builtin_gate("R", Fraction(1), ring=ring8)
        assert matrix_word(target) == "R(1/2)NR(1)"

    def test_format_matrix_falls_back_to_entries(self, ring8: RingContext) -> None:
        """Matrices without a short word print their entries."""
        product = builtin_gate("R", Fraction(1, 2), ring=ring8) @ Unitary2.not_gate(ring8)
        text = format_matrix(product, max_length=1)
        assert text == format_entries(product)
        assert text.startswith("[[0, ")


class TestFormatting:
    """Angles, states and bit strings."""

    def test_angle_label(self) -> None:
        """Integer angles drop the denominator."""
        assert angle_label(Fraction(2)) == "R(2)"
        assert angle_label(Fraction(3, 4)) == "R(3/4)"

    def test_classical_states(self, ring8: RingContext) -> None:
        """|0> and |1> print as kets."""
        assert format_state(apply_to_ket0(Unitary2.identity(ring8))) == "|0>"
        assert format_state(apply_to_ket0(Unitary2.not_gate(ring8))) == "|1>"

    def test_superposed_state(self, ring8: RingContext) -> None:
        """Other states print both amplitudes."""
        text = format_state(apply_to_ket0(builtin_gate("V", ring=ring8)), digits=3)
        assert "|0> + " in text
        assert text.endswith("|1>")
        assert "0.5" in text

    def test_format_bits(self) -> None:
        """Bits concatenate."""
        assert format_bits((0, 1, 1)) == "011"
        assert format_bits([]) == ""

    def test_history_word(self) -> None:
        """Gate history prints latest first."""
        assert history_word(["X", "V"]) == "V·X"
        assert history_word(["R(1/2)"]) == "R(1/2)"
        assert history_word([]) == "I"
