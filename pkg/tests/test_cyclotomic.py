"""Tests for exact cyclotomic arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest

from ddmf.arith.cyclotomic import (
    CycNumber,
    RingContext,
    RingMismatchError,
    UnsupportedAngleError,
    dyadic_exponent,
    required_order,
)


def _random_number(rng: random.Random, order: int) -> CycNumber:
    coeffs = [Fraction(rng.randint(-4, 4), 2 ** rng.randint(0, 3)) for _ in range(order // 2)]
    return CycNumber(order, coeffs)


class TestCycNumber:
    """Ring operations in Q(zeta_N)."""

    def test_zeta_squared_is_i(self, ring8: RingContext) -> None:
        """zeta_8 * zeta_8 has a single coefficient at index 2."""
        z = ring8.zeta()
        assert (z * z).coeffs == (0, 0, 1, 0)
        assert z * z == ring8.i()

    def test_reduction_by_half_order(self, ring8: RingContext) -> None:
        """zeta^(N/2) reduces to -1."""
        assert ring8.zeta(4) == -1
        assert ring8.zeta(8) == 1
        assert ring8.zeta(-1) == -ring8.zeta(3)

    def test_conjugate_of_eighth_root(self, ring8: RingContext) -> None:
        """conj(e^{i pi/4}) = e^{-i pi/4}."""
        assert ring8.zeta(1).conjugate() == ring8.zeta(-1)
        assert ring8.i().conjugate() == -ring8.i()

    def test_half_one_plus_i_times_half_one_minus_i(self, ring8: RingContext) -> None:
        """(1+i)/2 * (1-i)/2 = 1/2."""
        plus = (ring8.one() + ring8.i()) * Fraction(1, 2)
        minus = (ring8.one() - ring8.i()) * Fraction(1, 2)
        assert plus * minus == Fraction(1, 2)

    def test_conjugate_is_involution(self) -> None:
        """conj(conj(z)) = z on random values."""
        rng = random.Random(3)
        for order in (8, 16, 32):
            for _ in range(20):
                z = _random_number(rng, order)
                assert z.conjugate().conjugate() == z

    def test_ring_axioms_on_random_values(self) -> None:
        """Multiplication distributes over addition and commutes."""
        rng = random.Random(11)
        for _ in range(30):
            a, b, c = (_random_number(rng, 16) for _ in range(3))
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a - a == 0

    def test_abs_squared_is_real(self) -> None:
        """|z|^2 is its own conjugate."""
        rng = random.Random(5)
        w = _random_number(rng, 16).abs_squared()
        assert w == w.conjugate()

    def test_abs_squared_of_unit_is_one(self, ring16: RingContext) -> None:
        """zeta has modulus one."""
        assert ring16.zeta(3).abs_squared() == 1

    def test_mismatched_orders_raise(self) -> None:
        """Combining rings of different order is an error."""
        with pytest.raises(RingMismatchError):
            CycNumber.zeta(8) + CycNumber.zeta(16)

    def test_invalid_order_rejected(self) -> None:
        """Orders must be powers of two >= 8."""
        with pytest.raises(ValueError):
            CycNumber.zero(12)
        with pytest.raises(ValueError):
            RingContext(4)

    def test_hash_matches_equality(self, ring8: RingContext) -> None:
        """Equal values hash equally."""
        a = ring8.zeta(2) + ring8.one()
        b = ring8.one() + ring8.i()
        assert a == b
        assert hash(a) == hash(b)

    def test_to_mpc(self, ring8: RingContext) -> None:
        """Numeric view of zeta_8 is e^{i pi/4}."""
        value = ring8.zeta().to_mpc(30)
        with mpmath.workdps(30):
            assert abs(value - mpmath.expjpi(mpmath.mpf(1) / 4)) < mpmath.mpf(10) ** -20

    def test_str(self, ring8: RingContext) -> None:
        """Debug text form."""
        assert str(ring8.zero()) == "0"
        assert "ζ^1" in str(ring8.zeta())


class TestAngles:
    """Dyadic angles and ring-order selection."""

    def test_dyadic_exponent(self) -> None:
        """Exponent of the reduced denominator."""
        assert dyadic_exponent(Fraction(3, 8)) == 3
        assert dyadic_exponent(Fraction(2, 4)) == 1
        assert dyadic_exponent(1) == 0

    def test_non_dyadic_rejected(self) -> None:
        """Denominators that are not powers of two are unsupported."""
        with pytest.raises(UnsupportedAngleError):
            dyadic_exponent(Fraction(1, 3))

    def test_required_order(self) -> None:
        """N >= 8 and N >= 2^(m+2)."""
        assert required_order([]) == 8
        assert required_order([Fraction(1, 2)]) == 8
        assert required_order([Fraction(1, 4)]) == 16
        assert required_order([Fraction(3, 8), Fraction(1, 2)]) == 32

    def test_exp_i_pi(self, ring16: RingContext) -> None:
        """exp(i pi/2) = i and exp(i pi) = -1."""
        assert ring16.exp_i_pi(Fraction(1, 2)) == ring16.i()
        assert ring16.exp_i_pi(1) == -1
        assert ring16.exp_i_pi(Fraction(1, 4)) == ring16.zeta(2)

    def test_exp_i_pi_ring_too_small(self, ring8: RingContext) -> None:
        """R(1/4) needs order 16."""
        with pytest.raises(UnsupportedAngleError):
            ring8.exp_i_pi(Fraction(1, 4))
