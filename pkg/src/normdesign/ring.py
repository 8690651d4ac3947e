"""Exact arithmetic in the nine imaginary quadratic rings of class number 1.

Elements of O_D are stored in the integral basis {1, w} where w = sqrt(-D)
for D = 1, 2 and w = (1 + sqrt(-D))/2 for the seven admissible D that are
3 mod 4. Every operation is exact over Python integers; floats appear only
in ``embed``, the bridge used by the quadrature cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

#: The square-free D > 0 whose ring of integers has class number 1.
ADMISSIBLE_D = (1, 2, 3, 7, 11, 19, 43, 67, 163)

_ADMISSIBLE_SET = frozenset(ADMISSIBLE_D)


class SplitType(Enum):
    """Behavior of a rational prime in O_D."""

    RAMIFIED = "ramified"
    SPLIT = "split"
    INERT = "inert"


def require_admissible(D: int) -> None:
    """Raise ValueError unless D is one of the nine admissible values."""
    if D not in _ADMISSIBLE_SET:
        raise ValueError(f"D must be one of {ADMISSIBLE_D}, got {D!r}")


def _y_coeff(D: int) -> int:
    # y^2 coefficient of the norm form in the D = 3 mod 4 case.
    return (1 + D) // 4


def norm_form(D: int, x: int, y: int) -> int:
    """The norm of x + y*w as a binary quadratic form in lattice coordinates.

    x^2 + D*y^2 for D = 1, 2 and x^2 + x*y + ((1+D)/4)*y^2 otherwise.
    Nonnegative, zero only at the origin.
    """
    require_admissible(D)
    if D % 4 in (1, 2):
        return x * x + D * y * y
    return x * x + x * y + _y_coeff(D) * y * y


def discriminant(D: int) -> int:
    """Field discriminant: -4D for D = 1, 2 and -D for D = 3 mod 4."""
    require_admissible(D)
    if D % 4 in (1, 2):
        return -4 * D
    return -D


def unit_count(D: int) -> int:
    """Order of the unit group: 4 for D=1, 6 for D=3, 2 otherwise."""
    require_admissible(D)
    if D == 1:
        return 4
    if D == 3:
        return 6
    return 2


@dataclass(frozen=True)
class QuadInt:
    """Element a + b*w of O_D in the integral basis {1, w}."""

    D: int
    a: int
    b: int

    def __post_init__(self) -> None:
        require_admissible(self.D)

    def norm(self) -> int:
        return norm_form(self.D, self.a, self.b)

    def conj(self) -> QuadInt:
        # w + conj(w) = 0 for D = 1, 2 and 1 for D = 3 mod 4.
        if self.D % 4 in (1, 2):
            return QuadInt(self.D, self.a, -self.b)
        return QuadInt(self.D, self.a + self.b, -self.b)

    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __neg__(self) -> QuadInt:
        return QuadInt(self.D, -self.a, -self.b)

    def __add__(self, other: QuadInt) -> QuadInt:
        if not isinstance(other, QuadInt):
            return NotImplemented
        self._check_same_ring(other)
        return QuadInt(self.D, self.a + other.a, self.b + other.b)

    def __sub__(self, other: QuadInt) -> QuadInt:
        if not isinstance(other, QuadInt):
            return NotImplemented
        self._check_same_ring(other)
        return QuadInt(self.D, self.a - other.a, self.b - other.b)

    def __mul__(self, other: QuadInt) -> QuadInt:
        if not isinstance(other, QuadInt):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            raise ValueError("negative powers are not defined in O_D")
        result = QuadInt(self.D, 1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _check_same_ring(self, other: QuadInt) -> None:
        if self.D != other.D:
            raise ValueError(f"mixed rings: D={self.D} and D={other.D}")


def mul(u: QuadInt, v: QuadInt) -> QuadInt:
    """Product in O_D, expressed in the integral basis.

    Uses w^2 = -D for D = 1, 2 and w^2 = w - (1+D)/4 otherwise.
    """
    if u.D != v.D:
        raise ValueError(f"mixed rings: D={u.D} and D={v.D}")
    D = u.D
    if D % 4 in (1, 2):
        return QuadInt(D, u.a * v.a - D * u.b * v.b, u.a * v.b + u.b * v.a)
    c = _y_coeff(D)
    return QuadInt(
        D,
        u.a * v.a - c * u.b * v.b,
        u.a * v.b + u.b * v.a + u.b * v.b,
    )


def unit_group(D: int) -> tuple[QuadInt, ...]:
    """All units of O_D, in sorted coordinate order.

    {+-1, +-i} for D=1, the six sixth roots of unity for D=3, {+-1} otherwise.
    """
    require_admissible(D)
    if D == 1:
        coords = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    elif D == 3:
        coords = [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)]
    else:
        coords = [(-1, 0), (1, 0)]
    return tuple(QuadInt(D, a, b) for a, b in sorted(coords))


def omega_components(D: int) -> tuple[float, float]:
    """(Re w, Im w) in double precision."""
    require_admissible(D)
    if D % 4 in (1, 2):
        return 0.0, math.sqrt(D)
    return 0.5, math.sqrt(D) / 2.0


def embed(u: QuadInt) -> tuple[float, float]:
    """Complex embedding of u as (real part, imaginary part) floats."""
    re_w, im_w = omega_components(u.D)
    return (u.a + u.b * re_w, u.b * im_w)
