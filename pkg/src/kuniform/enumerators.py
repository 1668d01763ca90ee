"""Weight-enumerator algebra over exact rationals.

A homogeneous degree-N polynomial A(x, y) = sum_j a_j x^(N-j) y^j is stored
as its coefficient vector (a_0 .. a_N).  Three changes of representation
are implemented here, all by exact expansion (binomial expansion of linear
forms plus convolution), never by evaluation or interpolation:

  * the duality substitution x -> (x + (d^2-1) y) / d, y -> (x - y) / d,
    under which enumerators of pure states are invariant;
  * the shadow substitution x -> ((d-1) x + (d+1) y) / d, y -> (y - x) / d;
  * the invariant basis (x + (d-1) y)^(N-2i) (y (x - y))^i, whose
    coordinates c_0 .. c_(floor(N/2)) determine A completely.

The a <-> c conversion solves a unitriangular linear system by forward
substitution and is therefore exact; c <-> b (the compressed shadow, with
b_j = s_(2j+t) and t = N mod 2) is a pair of mutually inverse closed-form
linear maps.

`validate_state_constraints` evaluates every coefficient inequality and
identity a pure-state enumerator must satisfy, returning a report rather
than raising on violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import binom, rat_from_str, rat_to_str


def _coerce_coeffs(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class WeightEnumerator:
    """Coefficients a_0 .. a_N of A(x, y) for an N-party, dimension-d system."""

    n_parties: int
    local_dim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs))
        if self.n_parties < 1:
            raise ValueError("n_parties must be >= 1")
        if self.local_dim < 2:
            raise ValueError("local_dim must be >= 2")
        if len(self.coeffs) != self.n_parties + 1:
            raise ValueError(
                f"need {self.n_parties + 1} coefficients, got {len(self.coeffs)}"
            )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n_parties,
            "d": self.local_dim,
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "WeightEnumerator":
        return cls(
            int(doc["n"]),
            int(doc["d"]),
            tuple(rat_from_str(str(c)) for c in doc["coeffs"]),
        )


@dataclass(frozen=True)
class ShadowEnumerator:
    """Coefficients s_0 .. s_N of the shadow polynomial S(x, y)."""

    n_parties: int
    local_dim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs))
        if len(self.coeffs) != self.n_parties + 1:
            raise ValueError(
                f"need {self.n_parties + 1} coefficients, got {len(self.coeffs)}"
            )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n_parties,
            "d": self.local_dim,
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ShadowEnumerator":
        return cls(
            int(doc["n"]),
            int(doc["d"]),
            tuple(rat_from_str(str(c)) for c in doc["coeffs"]),
        )


@dataclass(frozen=True)
class InvariantBasisCoeffs:
    """Coordinates c_0 .. c_(floor(N/2)) in the duality-invariant basis."""

    n_parties: int
    local_dim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs))
        if len(self.coeffs) != self.n_parties // 2 + 1:
            raise ValueError(
                f"need {self.n_parties // 2 + 1} coefficients, got {len(self.coeffs)}"
            )


@dataclass(frozen=True)
class ShadowCompressed:
    """Nonvanishing shadow coefficients b_j = s_(2j+t), t = N mod 2."""

    n_parties: int
    parity: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _coerce_coeffs(self.coeffs))
        if self.parity != self.n_parties % 2:
            raise ValueError("parity must equal n_parties mod 2")
        if len(self.coeffs) != self.n_parties // 2 + 1:
            raise ValueError(
                f"need {self.n_parties // 2 + 1} coefficients, got {len(self.coeffs)}"
            )


# ---------------------------------------------------------------------------
# exact substitution of linear forms
# ---------------------------------------------------------------------------


def _linear_powers(cx: Fraction, cy: Fraction, k_max: int) -> list[list[Fraction]]:
    """Coefficient vectors (in the y-power index) of (cx x + cy y)^k, k <= k_max."""
    rows: list[list[Fraction]] = [[Fraction(1)]]
    for _ in range(k_max):
        prev = rows[-1]
        cur = [Fraction(0)] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i] += c * cx
            cur[i + 1] += c * cy
        rows.append(cur)
    return rows


def _convolve(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            out[i + j] += a * b
    return out


def _substitute(
    coeffs: Sequence[Fraction],
    sub_x: tuple[Fraction, Fraction],
    sub_y: tuple[Fraction, Fraction],
) -> tuple[Fraction, ...]:
    """Coefficients of A(sub_x, sub_y) for homogeneous A given by `coeffs`."""
    n = len(coeffs) - 1
    pow_x = _linear_powers(*sub_x, n)
    pow_y = _linear_powers(*sub_y, n)
    out = [Fraction(0)] * (n + 1)
    for j, aj in enumerate(coeffs):
        if aj == 0:
            continue
        term = _convolve(pow_x[n - j], pow_y[j])
        for idx, c in enumerate(term):
            out[idx] += aj * c
    return tuple(out)


def macwilliams_transform(enum: WeightEnumerator) -> WeightEnumerator:
    """A((x + (d^2-1) y) / d, (x - y) / d), expanded exactly."""
    d = enum.local_dim
    coeffs = _substitute(
        enum.coeffs,
        (Fraction(1, d), Fraction(d * d - 1, d)),
        (Fraction(1, d), Fraction(-1, d)),
    )
    return WeightEnumerator(enum.n_parties, d, coeffs)


def shadow_transform(enum: WeightEnumerator) -> ShadowEnumerator:
    """S(x, y) = A(((d-1) x + (d+1) y) / d, (y - x) / d), expanded exactly."""
    d = enum.local_dim
    coeffs = _substitute(
        enum.coeffs,
        (Fraction(d - 1, d), Fraction(d + 1, d)),
        (Fraction(-1, d), Fraction(1, d)),
    )
    return ShadowEnumerator(enum.n_parties, d, coeffs)


# ---------------------------------------------------------------------------
# invariant-basis conversions
# ---------------------------------------------------------------------------


def basis_matrix_entry(n_parties: int, local_dim: int, row: int, col: int) -> int:
    """Coefficient of c_col in a_row when A is expanded in the invariant basis.

    Valid for 0 <= col <= row <= floor(N/2); the matrix is unitriangular.
    """
    n, d, j, i = n_parties, local_dim, row, col
    total = 0
    for ell in range(j - i + 1):
        total += (
            binom(n - 2 * i, ell)
            * (d - 1) ** ell
            * binom(i, j - i - ell)
            * (-1) ** (j - i - ell)
        )
    return total


def a_to_c(enum: WeightEnumerator) -> InvariantBasisCoeffs:
    """Invariant-basis coordinates from a_0 .. a_(floor(N/2)), by forward solve."""
    n, d = enum.n_parties, enum.local_dim
    half = n // 2
    c: list[Fraction] = []
    for j in range(half + 1):
        acc = enum.coeffs[j]
        for i in range(j):
            acc -= basis_matrix_entry(n, d, j, i) * c[i]
        c.append(acc)  # diagonal entry is 1
    return InvariantBasisCoeffs(n, d, tuple(c))


def c_to_a(inv: InvariantBasisCoeffs) -> WeightEnumerator:
    """Expand sum_i c_i (x + (d-1) y)^(N-2i) (y (x - y))^i into a_0 .. a_N."""
    n, d = inv.n_parties, inv.local_dim
    out = [Fraction(0)] * (n + 1)
    base = _linear_powers(Fraction(1), Fraction(d - 1), n)
    mix = _linear_powers(Fraction(1), Fraction(-1), n // 2)
    for i, ci in enumerate(inv.coeffs):
        if ci == 0:
            continue
        # (y (x - y))^i shifts the y-degree of (x - y)^i up by i
        term = _convolve(base[n - 2 * i], mix[i])
        for idx, coeff in enumerate(term):
            out[idx + i] += ci * coeff
    return WeightEnumerator(n, d, tuple(out))


def c_to_b(inv: InvariantBasisCoeffs) -> ShadowCompressed:
    """Compressed shadow coefficients b_j from the invariant coordinates."""
    n, d = inv.n_parties, inv.local_dim
    half, t = n // 2, n % 2
    b: list[Fraction] = []
    for j in range(half + 1):
        acc = Fraction(0)
        for m in range(j + 1):
            acc += (
                Fraction(2 ** (2 * m + t))
                * Fraction(1, d ** (half - m))
                * binom(half - m, half - j)
                * (-1) ** (half - j)
                * inv.coeffs[half - m]
            )
        b.append(acc)
    return ShadowCompressed(n, t, tuple(b))


def b_to_c(compressed: ShadowCompressed, local_dim: int) -> InvariantBasisCoeffs:
    """Exact inverse of c_to_b."""
    n = compressed.n_parties
    half = n // 2
    c: list[Fraction] = []
    for i in range(half + 1):
        acc = Fraction(0)
        for j in range(half - i + 1):
            acc += binom(half - j, i) * compressed.coeffs[j]
        c.append((-1) ** i * Fraction(2 ** (2 * i), 2 ** n) * local_dim ** i * acc)
    return InvariantBasisCoeffs(n, local_dim, tuple(c))


def shadow_compress(shadow: ShadowEnumerator) -> ShadowCompressed:
    """Extract b_j = s_(2j+t); the remaining entries vanish for valid shadows."""
    n = shadow.n_parties
    t = n % 2
    return ShadowCompressed(
        n, t, tuple(shadow.coeffs[2 * j + t] for j in range(n // 2 + 1))
    )


# ---------------------------------------------------------------------------
# pure-state constraint validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateConstraintReport:
    """Pass/fail record for each pure-state enumerator constraint."""

    a0_is_one: bool
    coeffs_nonnegative: bool
    duality_invariant: bool
    shadow_nonnegative: bool
    shadow_odd_tail_zero: bool
    uniform_prefix_zero: Optional[bool]  # None when no k was supplied

    @property
    def ok(self) -> bool:
        checks = [
            self.a0_is_one,
            self.coeffs_nonnegative,
            self.duality_invariant,
            self.shadow_nonnegative,
            self.shadow_odd_tail_zero,
        ]
        if self.uniform_prefix_zero is not None:
            checks.append(self.uniform_prefix_zero)
        return all(checks)

    def failed_checks(self) -> tuple[str, ...]:
        names = {
            "a0_is_one": self.a0_is_one,
            "coeffs_nonnegative": self.coeffs_nonnegative,
            "duality_invariant": self.duality_invariant,
            "shadow_nonnegative": self.shadow_nonnegative,
            "shadow_odd_tail_zero": self.shadow_odd_tail_zero,
        }
        if self.uniform_prefix_zero is not None:
            names["uniform_prefix_zero"] = self.uniform_prefix_zero
        return tuple(name for name, passed in names.items() if not passed)

    def to_json_dict(self) -> dict:
        doc: dict = {
            "a0_is_one": self.a0_is_one,
            "coeffs_nonnegative": self.coeffs_nonnegative,
            "duality_invariant": self.duality_invariant,
            "shadow_nonnegative": self.shadow_nonnegative,
            "shadow_odd_tail_zero": self.shadow_odd_tail_zero,
            "ok": self.ok,
        }
        if self.uniform_prefix_zero is not None:
            doc["uniform_prefix_zero"] = self.uniform_prefix_zero
        return doc


def validate_state_constraints(
    enum: WeightEnumerator, k: Optional[int] = None
) -> StateConstraintReport:
    """Check every constraint a pure-state enumerator must satisfy.

    With k supplied, additionally checks the k-uniformity prefix
    a_1 = ... = a_k = 0.  Violations are report entries, never exceptions.
    """
    n = enum.n_parties
    shadow = shadow_transform(enum)
    uniform: Optional[bool] = None
    if k is not None:
        uniform = all(enum.coeffs[j] == 0 for j in range(1, k + 1))
    return StateConstraintReport(
        a0_is_one=enum.coeffs[0] == 1,
        coeffs_nonnegative=all(c >= 0 for c in enum.coeffs),
        duality_invariant=macwilliams_transform(enum).coeffs == enum.coeffs,
        shadow_nonnegative=all(s >= 0 for s in shadow.coeffs),
        shadow_odd_tail_zero=all(
            shadow.coeffs[n - j] == 0 for j in range(1, n + 1, 2)
        ),
        uniform_prefix_zero=uniform,
    )
