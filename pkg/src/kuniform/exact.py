"""Exact arithmetic primitives shared by every other module.

All quantities in this package are rational and are kept as
`fractions.Fraction` values end to end; no float ever enters a computation.
`Rat` aliases Fraction so signatures read like the math they implement.
Amplitudes of explicit states use `GaussianRational`, an exact complex
number with rational real and imaginary parts.

Binomials are arbitrary-precision integers (`math.comb` underneath) with
the combinatorial conventions C(0,0) = 1 and C(n,k) = 0 outside
0 <= k <= n.  `falling_binom` extends the upper index to negative
integers, which is the power-series coefficient convention needed by the
hypergeometric sums in `bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rat = Fraction

RatLike = Union[Fraction, int, str]


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero whenever k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_binom(a: int, k: int) -> int:
    """Generalized binomial C(a, k) = a (a-1) ... (a-k+1) / k! for integer a.

    Agrees with binom on a >= 0 and extends it to negative upper index;
    zero for k < 0.  The product of k consecutive integers is divisible by
    k!, so the division below is exact.
    """
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= a - t
    return num // math.factorial(k)


def elem_sym_prefix(values: Sequence[Fraction], k_max: int) -> list[Fraction]:
    """All elementary symmetric polynomials e_0 .. e_k_max of `values`.

    O(len(values) * k_max) dynamic programming over the product expansion
    of prod(1 + v_i x); subset enumeration is never materialised.
    """
    if not 0 <= k_max <= len(values):
        raise ValueError(
            f"k_max={k_max} out of range for {len(values)} values"
        )
    e = [Fraction(0)] * (k_max + 1)
    e[0] = Fraction(1)
    for m, v in enumerate(values, start=1):
        for j in range(min(m, k_max), 0, -1):
            e[j] += v * e[j - 1]
    return e


def elem_sym(values: Sequence[Fraction], k: int) -> Fraction:
    """Sum over all k-subsets of `values` of the product of chosen entries."""
    return elem_sym_prefix(values, k)[k]


def rat_from_str(text: str) -> Fraction:
    """Parse a decimal-free "p/q" (or bare integer "p") rational string."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational strings must be decimal-free, got {text!r}")
    return Fraction(text)


def rat_to_str(value: Fraction) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re: RatLike, im: RatLike = 0) -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus |z|^2, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


GAUSS_ZERO = GaussianRational()
GAUSS_ONE = GaussianRational(Fraction(1), Fraction(0))
