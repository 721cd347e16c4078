"""Exact arithmetic in power-of-two cyclotomic rings."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath

Rational = int | Fraction


class RingMismatchError(ValueError):
    """Raised when values from rings of different order are combined."""


class UnsupportedAngleError(ValueError):
    """Raised for rotation angles the ring cannot represent exactly."""


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def dyadic_exponent(angle: Rational) -> int:
    """Return ``m`` for an angle ``p/2^m`` (in units of pi).

    Raises:
        UnsupportedAngleError: if the reduced denominator is not a power of two.
    """
    denominator = Fraction(angle).denominator
    if not is_power_of_two(denominator):
        raise UnsupportedAngleError(f"angle {angle} is not a dyadic multiple of pi")
    return denominator.bit_length() - 1


def required_order(angles: Iterable[Rational], minimum: int = 8) -> int:
    """Smallest power-of-two ring order >= ``minimum`` holding every angle.

    An angle ``p/2^m`` needs ``N >= 2^(m+2)``; ``minimum`` (8) already covers I, X, V and V+.
    """
    order = minimum
    for angle in angles:
        order = max(order, 1 << (dyadic_exponent(angle) + 2))
    return order


class CycNumber:
    """Element of Q(zeta_N) with zeta_N = exp(2*pi*i/N), N a power of two.

    Stored as N/2 rational coefficients over 1, zeta, ..., zeta^(N/2 - 1). The basis is
    reduced by zeta^(N/2) = -1, so structural equality is semantic equality.
    """

    __slots__ = ("_order", "_coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence[Rational]) -> None:
        if order < 8 or not is_power_of_two(order):
            raise ValueError(f"ring order must be a power of two >= 8, got {order}")
        if len(coeffs) != order // 2:
            raise ValueError(f"expected {order // 2} coefficients, got {len(coeffs)}")
        self._order = order
        self._coeffs: tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)
        self._hash: int | None = None

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @classmethod
    def zero(cls, order: int) -> CycNumber:
        return cls(order, [0] * (order // 2))

    @classmethod
    def from_rational(cls, order: int, value: Rational) -> CycNumber:
        coeffs: list[Rational] = [0] * (order // 2)
        coeffs[0] = value
        return cls(order, coeffs)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> CycNumber:
        """Return zeta_N^k, reduced into the power basis."""
        half = order // 2
        k %= order
        coeffs: list[Rational] = [0] * half
        if k < half:
            coeffs[k] = 1
        else:
            coeffs[k - half] = -1
        return cls(order, coeffs)

    def _coerce(self, other: object) -> CycNumber | None:
        if isinstance(other, CycNumber):
            if other._order != self._order:
                raise RingMismatchError(
                    f"cannot combine ring orders {self._order} and {other._order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self._order, other)
        return None

    def __add__(self, other: object) -> CycNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CycNumber(self._order, [a + b for a, b in zip(self._coeffs, rhs._coeffs)])

    def __radd__(self, other: object) -> CycNumber:
        return self.__add__(other)

    def __neg__(self) -> CycNumber:
        return CycNumber(self._order, [-c for c in self._coeffs])

    def __sub__(self, other: object) -> CycNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> CycNumber:
        return (-self).__add__(other)

    def __mul__(self, other: object) -> CycNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        half = self._order // 2
        out = [Fraction(0)] * half
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(rhs._coeffs):
                if not b:
                    continue
                k = i + j
                if k < half:
                    out[k] += a * b
                else:
                    out[k - half] -= a * b
        return CycNumber(self._order, out)

    def __rmul__(self, other: object) -> CycNumber:
        return self.__mul__(other)

    def conjugate(self) -> CycNumber:
        """Complex conjugate: zeta^k -> zeta^-k = -zeta^(N/2 - k)."""
        half = self._order // 2
        out = [Fraction(0)] * half
        out[0] = self._coeffs[0]
        for k in range(1, half):
            out[half - k] = -self._coeffs[k]
        return CycNumber(self._order, out)

    def abs_squared(self) -> CycNumber:
        return self * self.conjugate()

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNumber):
            return self._order == other._order and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._coeffs))
        return self._hash

    def to_mpc(self, dps: int = 30) -> mpmath.mpc:
        """Numeric approximation, for display only."""
        with mpmath.workdps(dps):
            total = mpmath.mpc(0)
            for k, c in enumerate(self._coeffs):
                if c:
                    term = mpmath.mpf(c.numerator) / c.denominator
                    total += term * mpmath.expjpi(mpmath.mpf(2 * k) / self._order)
            return total

    def __repr__(self) -> str:
        return f"CycNumber({self._order}, {[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        terms = [f"{c}·ζ^{k}" for k, c in enumerate(self._coeffs) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True, slots=True)
class RingContext:
    """Fixed cyclotomic ring Q(zeta_N) shared by every value of one run."""

    order: int = 8

    def __post_init__(self) -> None:
        if self.order < 8 or not is_power_of_two(self.order):
            raise ValueError(f"ring order must be a power of two >= 8, got {self.order}")

    @classmethod
    def for_angles(cls, angles: Iterable[Rational], minimum: int = 8) -> RingContext:
        return cls(required_order(angles, minimum))

    def zero(self) -> CycNumber:
        return CycNumber.zero(self.order)

    def one(self) -> CycNumber:
        return CycNumber.from_rational(self.order, 1)

    def rational(self, value: Rational) -> CycNumber:
        return CycNumber.from_rational(self.order, value)

    def zeta(self, k: int = 1) -> CycNumber:
        return CycNumber.zeta(self.order, k)

    def i(self) -> CycNumber:
        return CycNumber.zeta(self.order, self.order // 4)

    def exp_i_pi(self, angle: Rational) -> CycNumber:
        """Return exp(i*pi*angle) for a dyadic ``angle``.

        Raises:
            UnsupportedAngleError: non-dyadic angle, or ring order below 2^(m+2).
        """
        m = dyadic_exponent(angle)
        if self.order < 1 << (m + 2):
            raise UnsupportedAngleError(
                f"angle {angle} needs ring order >= {1 << (m + 2)}, ring has {self.order}"
            )
        k = Fraction(angle) * self.order / 2
        return CycNumber.zeta(self.order, int(k))
