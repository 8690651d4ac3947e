"""Theta coefficients over the norm lattices and Hecke identity checks.

The coefficient of q^r in the theta series of a polynomial P over O_D is
the exact sum of P over the norm r shell. Basis-polynomial sums are also
available through a faster route: summing (x + w*y)^j in the integral
basis and reading off real and imaginary parts, which the tests pin
against the generic polynomial evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import is_prime, kronecker, splitting_type
from .harmonic import BivarPoly, _omega_rational_parts, format_poly
from .ring import QuadInt, SplitType, discriminant, require_admissible, unit_count
from .shells import Shell, enumerate_shell


@dataclass(frozen=True)
class ThetaSeries:
    """Coefficient table r -> sum of P over the norm r shell, r <= r_max."""

    D: int
    descriptor: str
    r_max: int
    coeffs: tuple[Fraction, ...]
    weight: int

    def coefficient(self, r: int) -> Fraction:
        return self.coeffs[r]


@dataclass(frozen=True)
class HeckeCheck:
    identity: str
    inputs: tuple[int, ...]
    left: Fraction
    right: Fraction
    passed: bool


@dataclass(frozen=True)
class HeckeReport:
    D: int
    j: int
    checks: tuple[HeckeCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def shell_sum(D: int, P: BivarPoly, r: int) -> Fraction:
    """Exact sum of P over the norm r shell; 0 on an empty shell."""
    shell = enumerate_shell(D, r)
    total = Fraction(0)
    for x, y in shell.points:
        total += P.evaluate(x, y)
    return total


def power_sums(shell: Shell, j_max: int) -> list[tuple[int, int]]:
    """Integral-basis coordinates of sum z^j over the shell, j = 1..j_max.

    Entry j-1 holds (sum of a, sum of b) where z^j = a + b*w for the shell
    point z = x + w*y.
    """
    sums = [[0, 0] for _ in range(j_max)]
    for x, y in shell.points:
        z = QuadInt(shell.D, x, y)
        w = z
        for j in range(j_max):
            sums[j][0] += w.a
            sums[j][1] += w.b
            if j + 1 < j_max:
                w = w * z
    return [(sa, sb) for sa, sb in sums]


def _split_real_imag(D: int, sa: int, sb: int) -> tuple[Fraction, Fraction]:
    # a + b*w has real part a + b*rho and imaginary part b*sigma*sqrt(D).
    rho, sigma = _omega_rational_parts(D)
    return Fraction(sa) + sb * rho, sb * sigma


def basis_shell_sums(D: int, j: int, r: int) -> tuple[Fraction, Fraction]:
    """(sum of R_{D,j}, sum of I_{D,j}/sqrt(D)) over the norm r shell."""
    require_admissible(D)
    if j < 1:
        raise ValueError(f"basis degree must be >= 1, got {j}")
    shell = enumerate_shell(D, r)
    sa, sb = power_sums(shell, j)[j - 1]
    return _split_real_imag(D, sa, sb)


def basis_shell_sums_upto(
    shell: Shell, j_max: int
) -> list[tuple[Fraction, Fraction]]:
    """Basis sums of every degree 1..j_max over one shell, in one pass."""
    return [
        _split_real_imag(shell.D, sa, sb) for sa, sb in power_sums(shell, j_max)
    ]


def _lattice_norms_upto(D: int, bound: int):
    """Yield (x, y, norm) over every lattice point with norm <= bound."""
    if D % 4 in (1, 2):
        ymax = isqrt(bound // D)
        for y in range(-ymax, ymax + 1):
            rem = bound - D * y * y
            xmax = isqrt(rem)
            for x in range(-xmax, xmax + 1):
                yield x, y, x * x + D * y * y
    else:
        c = (1 + D) // 4
        ymax = isqrt(4 * bound // D)
        for y in range(-ymax, ymax + 1):
            t = 4 * bound - D * y * y
            s = isqrt(t)
            lo = -((s + y) // 2)
            hi = (s - y) // 2
            for x in range(lo, hi + 1):
                yield x, y, x * x + x * y + c * y * y


def theta_series(D: int, P: BivarPoly, r_max: int) -> ThetaSeries:
    """Coefficients of the theta series of P up to r_max in one lattice sweep."""
    require_admissible(D)
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    coeffs = [Fraction(0)] * (r_max + 1)
    for x, y, n in _lattice_norms_upto(D, r_max):
        coeffs[n] += P.evaluate(x, y)
    degree = max(P.degree, 0)
    return ThetaSeries(
        D=D,
        descriptor=format_poly(P),
        r_max=r_max,
        coeffs=tuple(coeffs),
        weight=degree + 1,
    )


def a_norm(D: int, j: int, r: int) -> Fraction:
    """Normalized theta coefficient: the R_{D,j} shell sum divided by u_D.

    Integer-valued whenever j is a multiple of u_D, where the underlying
    series is a Hecke eigenform with a(1) = 1.
    """
    if r < 0:
        raise ValueError(f"norm must be nonnegative, got {r}")
    if r == 0:
        # single point at the origin, where every degree >= 1 form vanishes
        require_admissible(D)
        if j < 1:
            raise ValueError(f"basis degree must be >= 1, got {j}")
        return Fraction(0)
    r_sum, _ = basis_shell_sums(D, j, r)
    return r_sum / unit_count(D)


def _real_part_at(D: int, j: int, x: int, y: int) -> Fraction:
    z = QuadInt(D, x, y) ** j
    re, _ = _split_real_imag(D, z.a, z.b)
    return re


def a_prime_closed_form(D: int, j: int, p: int) -> Fraction:
    """Eigenform coefficient at a prime with a nonempty shell, closed form.

    R_{D,j} at any shell point for ramified p, twice that for split p;
    valid only for j a multiple of u_D, where the value is orbit-invariant.
    """
    require_admissible(D)
    if not is_prime(p):
        raise ValueError(f"a_prime_closed_form requires a prime, got {p}")
    if j < 1 or j % unit_count(D) != 0:
        raise ValueError(
            f"closed form requires j to be a positive multiple of u_D={unit_count(D)}"
        )
    split = splitting_type(D, p)
    if split is SplitType.INERT:
        raise ValueError(f"the norm {p} shell is empty for D={D}")
    shell = enumerate_shell(D, p)
    x, y = shell.points[0]
    value = _real_part_at(D, j, x, y)
    return value if split is SplitType.RAMIFIED else 2 * value


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} = {value} is not an integer")
    return value.numerator


def hecke_verify(
    D: int,
    j: int,
    p: int,
    alpha_max: int,
    coprime_pairs: list[tuple[int, int]] | tuple[tuple[int, int], ...] = (),
) -> HeckeReport:
    """Check the eigenform identities against direct shell sums.

    Verifies multiplicativity over the given coprime pairs, the prime
    power recursion with character value kronecker(discriminant(D), p),
    and the mod p congruence a(p^alpha) = a(p)^alpha. Every quantity on
    either side is an independently computed shell sum.
    """
    require_admissible(D)
    if j < 1 or j % unit_count(D) != 0:
        raise ValueError(
            f"Hecke identities hold for j a multiple of u_D={unit_count(D)}"
        )
    if not is_prime(p):
        raise ValueError(f"hecke_verify requires a prime, got {p}")
    if alpha_max < 2:
        raise ValueError(f"alpha_max must be >= 2, got {alpha_max}")
    checks: list[HeckeCheck] = []

    for r1, r2 in coprime_pairs:
        if math.gcd(r1, r2) != 1:
            raise ValueError(f"pair ({r1}, {r2}) is not coprime")
        left = a_norm(D, j, r1 * r2)
        right = a_norm(D, j, r1) * a_norm(D, j, r2)
        checks.append(
            HeckeCheck("multiplicativity", (r1, r2), left, right, left == right)
        )

    chi = kronecker(discriminant(D), p)
    a_cache = {alpha: a_norm(D, j, p**alpha) for alpha in range(alpha_max + 1)}
    for alpha in range(2, alpha_max + 1):
        left = a_cache[alpha]
        right = a_cache[1] * a_cache[alpha - 1] - chi * Fraction(p) ** j * a_cache[
            alpha - 2
        ]
        checks.append(
            HeckeCheck("prime-power-recursion", (p, alpha), left, right, left == right)
        )

    a_p = _as_int(a_cache[1], f"a({D},{j},{p})")
    for alpha in range(1, alpha_max + 1):
        value = _as_int(a_cache[alpha], f"a({D},{j},{p}^{alpha})")
        left = Fraction(value % p)
        right = Fraction(pow(a_p, alpha, p))
        checks.append(
            HeckeCheck(
                "prime-power-congruence", (p, alpha), left, right, left == right
            )
        )

    return HeckeReport(D=D, j=j, checks=tuple(checks))


def theta_series_to_json_dict(series: ThetaSeries, j: int | None = None) -> dict:
    """Documented JSON shape; rationals as "num/den" strings."""
    out: dict = {"D": series.D, "rmax": series.r_max}
    if j is not None:
        out["j"] = j
    else:
        out["poly"] = series.descriptor
    out["coeffs"] = [format_rational(c) for c in series.coeffs]
    return out


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
